//! Exact-arithmetic kernels for enumerative predictions: truncated rational
//! power series, Frobenius bases of fourth-order theta-operators, the mirror
//! map and coupling pipeline, an integer monodromy lab, and cone subdivision.
//!
//! Everything is computed over arbitrary-precision rationals; no floating
//! point is used anywhere. The crate is `no_std` (with `alloc`) so the
//! kernels can be embedded; IO and file formats live in the companion CLI
//! crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cone;
pub mod matrix;
pub mod mirror;
pub mod monodromy;
pub mod picard_fuchs;
pub mod rat;
pub mod series;

pub use rat::Rat;
