//! Truncated power series over exact rationals, and their log-graded
//! extension used for Frobenius solutions.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::min;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rat::{format_rat, rat, Rat};

/// Errors from partial series operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesError {
    /// Inversion of a series with zero constant term.
    ZeroConstantTerm,
    /// Composition with an inner series whose constant term is nonzero.
    NonzeroInnerConstant,
    /// Reversion of a series without a simple zero at the origin.
    NotReversible,
    /// exp requires constant term 0; log requires constant term 1.
    BadConstantTerm { required: i64, found: Rat },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::ZeroConstantTerm => {
                write!(f, "cannot invert a series with zero constant term")
            }
            SeriesError::NonzeroInnerConstant => {
                write!(f, "inner series of a composition must have constant term 0")
            }
            SeriesError::NotReversible => {
                write!(f, "reversion needs a(0) = 0 and a'(0) != 0")
            }
            SeriesError::BadConstantTerm { required, found } => {
                write!(
                    f,
                    "constant term must be {required}, found {}",
                    format_rat(found)
                )
            }
        }
    }
}

impl core::error::Error for SeriesError {}

/// Power series known exactly through z^T: coefficients c_0 .. c_T plus an
/// implicit O(z^{T+1}) tail.
///
/// Operations on two series truncate to the smaller T; no operation ever
/// extends a truncation.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    trunc: usize,
    coeffs: Vec<Rat>, // length trunc + 1
}

impl TruncSeries {
    /// Zero series truncated at z^trunc.
    pub fn zero(trunc: usize) -> Self {
        TruncSeries {
            trunc,
            coeffs: vec![Rat::zero(); trunc + 1],
        }
    }

    /// Constant series 1.
    pub fn one(trunc: usize) -> Self {
        Self::monomial(trunc, 0, rat(1))
    }

    /// Constant series.
    pub fn constant(trunc: usize, c: Rat) -> Self {
        Self::monomial(trunc, 0, c)
    }

    /// The series z.
    pub fn variable(trunc: usize) -> Self {
        Self::monomial(trunc, 1, rat(1))
    }

    /// c * z^k, or zero if k exceeds the truncation.
    pub fn monomial(trunc: usize, k: usize, c: Rat) -> Self {
        let mut s = Self::zero(trunc);
        if k <= trunc {
            s.coeffs[k] = c;
        }
        s
    }

    /// Series from low-order coefficients, zero-padded up to the truncation.
    ///
    /// Panics if more than trunc + 1 coefficients are supplied.
    pub fn from_coeffs(trunc: usize, mut coeffs: Vec<Rat>) -> Self {
        assert!(
            coeffs.len() <= trunc + 1,
            "{} coefficients exceed truncation {}",
            coeffs.len(),
            trunc
        );
        coeffs.resize(trunc + 1, Rat::zero());
        TruncSeries { trunc, coeffs }
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(trunc: usize, ints: &[i64]) -> Self {
        Self::from_coeffs(trunc, ints.iter().map(|&n| rat(n)).collect())
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    /// Coefficient of z^k. Panics beyond the truncation: that coefficient is
    /// not known.
    pub fn coeff(&self, k: usize) -> &Rat {
        assert!(k <= self.trunc, "coefficient {k} beyond truncation {}", self.trunc);
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &Rat {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Copy truncated at min(t, T).
    pub fn truncated(&self, t: usize) -> Self {
        let t = min(t, self.trunc);
        TruncSeries {
            trunc: t,
            coeffs: self.coeffs[..=t].to_vec(),
        }
    }

    fn pad_to(&self, t: usize) -> Self {
        // Internal only: the appended zeros are NOT known coefficients, so
        // callers must not let them reach a result.
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(t + 1, Rat::zero());
        TruncSeries { trunc: t, coeffs }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        TruncSeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by a polynomial given by its coefficients, exact in the
    /// low orders; truncation is unchanged.
    pub fn mul_poly(&self, poly: &[Rat]) -> Self {
        let mut out = Self::zero(self.trunc);
        for (m, p) in poly.iter().enumerate() {
            if p.is_zero() || m > self.trunc {
                continue;
            }
            for k in m..=self.trunc {
                out.coeffs[k] += p * &self.coeffs[k - m];
            }
        }
        out
    }

    /// Multiplication by z^k (drops the top k known coefficients).
    pub fn mul_z_pow(&self, k: usize) -> Self {
        let mut out = Self::zero(self.trunc);
        for i in k..=self.trunc {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    /// Division by z^k. Panics unless the first k coefficients vanish; the
    /// truncation drops to T - k since nothing is known past z^{T-k}.
    pub fn div_z_pow(&self, k: usize) -> Self {
        assert!(k <= self.trunc);
        assert!(
            self.coeffs[..k].iter().all(Zero::is_zero),
            "division by z^{k} of a series with a lower-order term"
        );
        TruncSeries {
            trunc: self.trunc - k,
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// theta = z d/dz: multiplies c_k by k.
    pub fn theta(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * rat(k as i64))
            .collect();
        TruncSeries {
            trunc: self.trunc,
            coeffs,
        }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0].is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let c0_inv = self.coeffs[0].recip();
        let mut out = Self::zero(self.trunc);
        out.coeffs[0] = c0_inv.clone();
        for n in 1..=self.trunc {
            let mut acc = Rat::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &out.coeffs[n - k];
            }
            out.coeffs[n] = -acc * &c0_inv;
        }
        Ok(out)
    }

    /// Composition self(inner); the inner series must vanish at 0.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        let t = min(self.trunc, inner.trunc);
        let inner = inner.truncated(t);
        let mut out = TruncSeries::constant(t, self.coeffs[t].clone());
        for k in (0..t).rev() {
            out = &out * &inner;
            out.coeffs[0] += &self.coeffs[k];
        }
        Ok(out)
    }

    /// Compositional inverse b with self(b) = b(self) = z; requires a simple
    /// zero at the origin. Newton iteration, doubling the valid order.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        let t = self.trunc;
        if t < 1 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(SeriesError::NotReversible);
        }
        let deriv = self.derivative();
        let z = Self::variable(t);
        let mut b = Self::monomial(t, 1, self.coeffs[1].recip());
        loop {
            let err = &self.compose(&b)? - &z;
            if err.is_zero() {
                return Ok(b);
            }
            // err = O(z^{g+1}) with g >= 1, so the top coefficient of the
            // padded derivative never contributes below z^{t+1}.
            let slope = deriv.pad_to(t).compose(&b)?;
            b = &b - &(&err * &slope.inv()?);
        }
    }

    /// d/dz, known through z^{T-1}.
    pub fn derivative(&self) -> Self {
        if self.trunc == 0 {
            return Self::zero(0);
        }
        let coeffs = (1..=self.trunc)
            .map(|k| &self.coeffs[k] * rat(k as i64))
            .collect();
        TruncSeries {
            trunc: self.trunc - 1,
            coeffs,
        }
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::BadConstantTerm {
                required: 0,
                found: self.coeffs[0].clone(),
            });
        }
        // E' = a'E gives k E_k = sum_{j=1}^{k} j a_j E_{k-j}.
        let mut out = Self::one(self.trunc);
        for k in 1..=self.trunc {
            let mut acc = Rat::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * rat(j as i64) * &out.coeffs[k - j];
            }
            out.coeffs[k] = acc / rat(k as i64);
        }
        Ok(out)
    }

    /// log of a series with constant term 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::BadConstantTerm {
                required: 1,
                found: self.coeffs[0].clone(),
            });
        }
        // theta(log a) = theta(a)/a, then divide coefficient k by k.
        let g = self.theta() * &self.inv()?;
        let mut out = Self::zero(self.trunc);
        for k in 1..=self.trunc {
            out.coeffs[k] = &g.coeffs[k] / rat(k as i64);
        }
        Ok(out)
    }

    /// Small positive power by repeated multiplication.
    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.trunc);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let shown = !mag.is_one() || k == 0;
            if shown {
                write!(f, "{}", format_rat(&mag))?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}z", if shown { "*" } else { "" })?,
                _ => write!(f, "{}z^{}", if shown { "*" } else { "" }, k)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " (O(z^{}))", self.trunc + 1)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries[{self}]")
    }
}

fn aligned(a: &TruncSeries, b: &TruncSeries) -> (TruncSeries, TruncSeries) {
    let t = min(a.trunc, b.trunc);
    (a.truncated(t), b.truncated(t))
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let (mut a, b) = aligned(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        let (mut a, b) = aligned(self, rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        TruncSeries {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let (a, b) = aligned(self, rhs);
        let t = a.trunc;
        let mut out = TruncSeries::zero(t);
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().take(t + 1 - i).enumerate() {
                if !bj.is_zero() {
                    out.coeffs[i + j] += ai * bj;
                }
            }
        }
        out
    }
}

impl Mul<&TruncSeries> for TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        &self * rhs
    }
}

/// Series with log-gradation: parts[j] multiplies (log z)^j / j!, j = 0..3.
/// All four parts share one truncation.
#[derive(Clone, PartialEq, Eq)]
pub struct LogSeries {
    parts: [TruncSeries; 4],
}

impl LogSeries {
    /// Builds from the four graded parts, aligning to the smallest truncation.
    pub fn from_parts(parts: [TruncSeries; 4]) -> Self {
        let t = parts.iter().map(TruncSeries::truncation).min().unwrap();
        LogSeries {
            parts: parts.map(|p| p.truncated(t)),
        }
    }

    /// A log-free series.
    pub fn from_series(s: TruncSeries) -> Self {
        let t = s.truncation();
        LogSeries {
            parts: [s, TruncSeries::zero(t), TruncSeries::zero(t), TruncSeries::zero(t)],
        }
    }

    pub fn zero(trunc: usize) -> Self {
        Self::from_series(TruncSeries::zero(trunc))
    }

    pub fn part(&self, j: usize) -> &TruncSeries {
        &self.parts[j]
    }

    pub fn parts(&self) -> &[TruncSeries; 4] {
        &self.parts
    }

    pub fn truncation(&self) -> usize {
        self.parts[0].truncation()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(TruncSeries::is_zero)
    }

    /// theta = z d/dz. Uses theta((log z)^j / j!) = (log z)^{j-1} / (j-1)!,
    /// so part j picks up theta(f_j) + f_{j+1}.
    pub fn theta(&self) -> Self {
        let t = self.truncation();
        let mut parts = [
            TruncSeries::zero(t),
            TruncSeries::zero(t),
            TruncSeries::zero(t),
            TruncSeries::zero(t),
        ];
        for j in 0..4 {
            let mut p = self.parts[j].theta();
            if j + 1 < 4 {
                p = &p + &self.parts[j + 1];
            }
            parts[j] = p;
        }
        LogSeries { parts }
    }

    /// Multiplies every graded part by a plain series.
    pub fn mul_series(&self, s: &TruncSeries) -> Self {
        Self::from_parts([
            &self.parts[0] * s,
            &self.parts[1] * s,
            &self.parts[2] * s,
            &self.parts[3] * s,
        ])
    }

    /// Multiplies every graded part by a polynomial.
    pub fn mul_poly(&self, poly: &[Rat]) -> Self {
        LogSeries {
            parts: [
                self.parts[0].mul_poly(poly),
                self.parts[1].mul_poly(poly),
                self.parts[2].mul_poly(poly),
                self.parts[3].mul_poly(poly),
            ],
        }
    }
}

impl Add for &LogSeries {
    type Output = LogSeries;
    fn add(self, rhs: &LogSeries) -> LogSeries {
        LogSeries::from_parts([
            &self.parts[0] + &rhs.parts[0],
            &self.parts[1] + &rhs.parts[1],
            &self.parts[2] + &rhs.parts[2],
            &self.parts[3] + &rhs.parts[3],
        ])
    }
}

impl Sub for &LogSeries {
    type Output = LogSeries;
    fn sub(self, rhs: &LogSeries) -> LogSeries {
        LogSeries::from_parts([
            &self.parts[0] - &rhs.parts[0],
            &self.parts[1] - &rhs.parts[1],
            &self.parts[2] - &rhs.parts[2],
            &self.parts[3] - &rhs.parts[3],
        ])
    }
}

impl fmt::Debug for LogSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LogSeries[{}; {}; {}; {}]",
            self.parts[0], self.parts[1], self.parts[2], self.parts[3]
        )
    }
}

/// Formats a series for display; helper shared with the CLI crate.
pub fn format_series(s: &TruncSeries) -> String {
    format!("{s}")
}
