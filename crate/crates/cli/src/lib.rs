//! Command-line frontend: file formats and report rendering on top of
//! the exact kernel in `mirror_count_core`.

pub mod matrices;
pub mod model;
pub mod output;
