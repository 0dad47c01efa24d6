//! Exact dense linear algebra over the integers and rationals.
//!
//! Everything here is small and square-ish (4x4 in practice), so the
//! implementations favor clarity over asymptotics: Bareiss for integer
//! determinants, Gauss-Jordan for rational elimination, Euclid-style
//! column reduction for Hermite form.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{as_integer, BigInt, Rat};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    a: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        IntMatrix {
            rows,
            cols,
            a: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        assert!(!rows.is_empty());
        let cols = rows[0].len();
        let mut m = Self::zero(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(*v));
            }
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, a: Vec<BigInt>) -> Self {
        assert_eq!(a.len(), rows * cols);
        IntMatrix { rows, cols, a }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.a[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(|v| v * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn trace(&self) -> BigInt {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.at(i, i).clone()).sum()
    }

    /// M^k by repeated squaring; requires a square matrix.
    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Fraction-free Bareiss determinant.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square());
        let n = self.rows;
        let mut b = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if b.at(k, k).is_zero() {
                match (k + 1..n).find(|&i| !b.at(i, k).is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            let tmp = b.at(k, j).clone();
                            b.set(k, j, b.at(i, j).clone());
                            b.set(i, j, tmp);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = b.at(i, j) * b.at(k, k) - b.at(i, k) * b.at(k, j);
                    // Exact by the Desnanot-Jacobi identity.
                    b.set(i, j, num / &prev);
                }
                b.set(i, k, BigInt::zero());
            }
            prev = b.at(k, k).clone();
        }
        sign * b.at(n - 1, n - 1).clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(|v| Rat::from_integer(v.clone())).collect(),
        }
    }

    /// Integer inverse, which exists exactly when det = +-1.
    pub fn inverse(&self) -> Option<IntMatrix> {
        if !self.is_unimodular() {
            return None;
        }
        let inv = self.to_rat().inverse().expect("unimodular");
        Some(inv.to_int().expect("unimodular inverse is integral"))
    }

    /// Column Hermite reduction: returns (H, U) with self * U = H, U
    /// unimodular, and H in column echelon form with nonnegative pivots.
    pub fn column_hermite(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.cols);
        let mut frontier = 0usize;
        for row in 0..self.rows {
            if frontier == self.cols {
                break;
            }
            // Euclid on the row tail until at most one nonzero survives.
            loop {
                let nonzero: Vec<usize> = (frontier..self.cols)
                    .filter(|&j| !h.at(row, j).is_zero())
                    .collect();
                if nonzero.len() <= 1 {
                    break;
                }
                let pivot = *nonzero
                    .iter()
                    .min_by_key(|&&j| h.at(row, j).abs())
                    .unwrap();
                let m = h.at(row, pivot).clone();
                for &j in &nonzero {
                    if j == pivot {
                        continue;
                    }
                    let q = h.at(row, j).div_floor(&m);
                    h.col_sub_mul(j, pivot, &q);
                    u.col_sub_mul(j, pivot, &q);
                }
            }
            let Some(j) = (frontier..self.cols).find(|&j| !h.at(row, j).is_zero()) else {
                continue;
            };
            if j != frontier {
                h.col_swap(j, frontier);
                u.col_swap(j, frontier);
            }
            if h.at(row, frontier).is_negative() {
                h.col_negate(frontier);
                u.col_negate(frontier);
            }
            // Reduce everything left of the pivot into [0, pivot).
            let m = h.at(row, frontier).clone();
            for j in 0..frontier {
                let q = h.at(row, j).div_floor(&m);
                if !q.is_zero() {
                    h.col_sub_mul(j, frontier, &q);
                    u.col_sub_mul(j, frontier, &q);
                }
            }
            frontier += 1;
        }
        (h, u)
    }

    /// Basis of the integer kernel. Because it comes from a unimodular
    /// transform the basis spans the full lattice ker \cap Z^n, not a
    /// finite-index sublattice.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let (h, u) = self.column_hermite();
        let mut rank = self.cols;
        while rank > 0 && (0..self.rows).all(|i| h.at(i, rank - 1).is_zero()) {
            rank -= 1;
        }
        (rank..self.cols).map(|j| u.column(j)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    fn col_sub_mul(&mut self, j: usize, k: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.at(i, j) - q * self.at(i, k);
            self.set(i, j, v);
        }
    }

    fn col_swap(&mut self, j: usize, k: usize) {
        for i in 0..self.rows {
            let tmp = self.at(i, j).clone();
            let other = self.at(i, k).clone();
            self.set(i, j, other);
            self.set(i, k, tmp);
        }
    }

    fn col_negate(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().zip(&rhs.a).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().zip(&rhs.a).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().map(|x| -x).collect(),
        }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lik = self.at(i, k);
                if lik.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.at(i, j) + lik * rhs.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

/// Dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    a: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        RatMatrix {
            rows,
            cols,
            a: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix::identity(n).to_rat()
    }

    pub fn from_vec(rows: usize, cols: usize, a: Vec<Rat>) -> Self {
        assert_eq!(a.len(), rows * cols);
        RatMatrix { rows, cols, a }
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(rows).to_rat()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.a[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn trace(&self) -> Rat {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.at(i, i).clone()).sum()
    }

    /// M^k by repeated multiplication; requires a square matrix.
    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Unique-solution solve of self * x = rhs; None when inconsistent.
    /// Free coordinates, if any, are set to zero.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = RatMatrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// All entries integral?
    pub fn to_int(&self) -> Option<IntMatrix> {
        let mut a = Vec::with_capacity(self.a.len());
        for v in &self.a {
            a.push(as_integer(v)?);
        }
        Some(IntMatrix::from_vec(self.rows, self.cols, a))
    }

    /// Reduced row echelon form with its pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let tmp = m.at(r, j).clone();
                    let other = m.at(p, j).clone();
                    m.set(r, j, other);
                    m.set(p, j, tmp);
                }
            }
            let inv = Rat::one() / m.at(r, c).clone();
            for j in 0..m.cols {
                let v = m.at(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c).clone();
                for j in 0..m.cols {
                    let v = m.at(i, j) - &f * m.at(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> Rat {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                for j in 0..n {
                    let tmp = m.at(c, j).clone();
                    let other = m.at(p, j).clone();
                    m.set(c, j, other);
                    m.set(p, j, tmp);
                }
                det = -det;
            }
            det *= m.at(c, c).clone();
            let inv = Rat::one() / m.at(c, c).clone();
            for i in c + 1..n {
                if m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c) * &inv;
                for j in c..n {
                    let v = m.at(i, j) - &f * m.at(c, j);
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = RatMatrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = RatMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.at(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for c in 0..self.cols {
            if pivots.contains(&c) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[c] = Rat::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.at(row, c).clone();
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().zip(&rhs.a).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().zip(&rhs.a).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = RatMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lik = self.at(i, k);
                if lik.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.at(i, j) + lik * rhs.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

/// Canonical basis (rref rows) of the span of some vectors in Q^n.
pub fn span_basis(n: usize, vectors: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = RatMatrix::zero(vectors.len(), n);
    for (i, v) in vectors.iter().enumerate() {
        assert_eq!(v.len(), n);
        for (j, x) in v.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    let (r, pivots) = m.rref();
    (0..pivots.len())
        .map(|i| (0..n).map(|j| r.at(i, j).clone()).collect())
        .collect()
}

pub fn span_dim(n: usize, vectors: &[Vec<Rat>]) -> usize {
    span_basis(n, vectors).len()
}

pub fn span_contains(n: usize, vectors: &[Vec<Rat>], v: &[Rat]) -> bool {
    assert_eq!(v.len(), n);
    let d = span_dim(n, vectors);
    let mut extended: Vec<Vec<Rat>> = vectors.to_vec();
    extended.push(v.to_vec());
    span_dim(n, &extended) == d
}

pub fn sum_spans(n: usize, a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    span_basis(n, &all)
}

/// Intersection of two spans: solve sum x_i a_i = sum y_j b_j and read off
/// the left-hand combinations.
pub fn intersect_spans(n: usize, a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let a = span_basis(n, a);
    let b = span_basis(n, b);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut m = RatMatrix::zero(n, a.len() + b.len());
    for (k, v) in a.iter().enumerate() {
        for i in 0..n {
            m.set(i, k, v[i].clone());
        }
    }
    for (k, v) in b.iter().enumerate() {
        for i in 0..n {
            m.set(i, a.len() + k, -v[i].clone());
        }
    }
    let mut members = Vec::new();
    for w in m.kernel() {
        let mut vec = vec![Rat::zero(); n];
        for (k, v) in a.iter().enumerate() {
            for i in 0..n {
                vec[i] += &w[k] * &v[i];
            }
        }
        members.push(vec);
    }
    span_basis(n, &members)
}

/// Basis of the functionals vanishing on the span.
pub fn annihilator(n: usize, vectors: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if vectors.is_empty() {
        return (0..n)
            .map(|i| {
                let mut e = vec![Rat::zero(); n];
                e[i] = Rat::one();
                e
            })
            .collect();
    }
    let mut m = RatMatrix::zero(vectors.len(), n);
    for (i, v) in vectors.iter().enumerate() {
        assert_eq!(v.len(), n);
        for (j, x) in v.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m.kernel()
}

/// Z-basis of (span of the given rational vectors) intersected with Z^n.
/// The span is cut out by its annihilator, and the integer kernel of an
/// integer matrix is saturated, so no finite-index defect can sneak in.
pub fn saturate_span(n: usize, vectors: &[Vec<Rat>]) -> Vec<Vec<BigInt>> {
    if span_dim(n, vectors) == 0 {
        return Vec::new();
    }
    let ann = annihilator(n, vectors);
    if ann.is_empty() {
        return (0..n)
            .map(|i| {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::one();
                e
            })
            .collect();
    }
    let mut m = IntMatrix::zero(ann.len(), n);
    for (i, row) in ann.iter().enumerate() {
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        for (j, x) in row.iter().enumerate() {
            let cleared = x * Rat::from_integer(lcm.clone());
            m.set(i, j, as_integer(&cleared).expect("cleared denominator"));
        }
    }
    m.kernel()
}

/// gcd of the entries is 1 (and the vector is nonzero).
pub fn is_primitive(v: &[BigInt]) -> bool {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    g.is_one()
}

/// Extends a primitive vector to a unimodular matrix having it as the
/// first column.
pub fn complete_primitive(v: &[BigInt]) -> IntMatrix {
    assert!(is_primitive(v), "vector must be primitive");
    let n = v.len();
    let mut row = IntMatrix::zero(1, n);
    for (j, x) in v.iter().enumerate() {
        row.set(0, j, x.clone());
    }
    let (h, u) = row.column_hermite();
    debug_assert!(h.at(0, 0).is_one());
    // v^T U = e_1^T, so (U^-1)^T sends e_1 to v.
    u.inverse().expect("hermite transform is unimodular").transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, rat};
    use proptest::prelude::*;

    fn rv(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    fn iv(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn bareiss_on_known_matrices() {
        let m = IntMatrix::from_rows(&[
            &[2, 0, -1, 0],
            &[0, 1, 0, 0],
            &[-5, 0, 3, 0],
            &[0, 0, 0, 1],
        ]);
        assert_eq!(m.det(), BigInt::one());
        assert!(m.is_unimodular());
        let singular = IntMatrix::from_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.det(), BigInt::zero());
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn integer_inverse_of_unimodular() {
        let m = IntMatrix::from_rows(&[
            &[2, 0, -1, 0],
            &[0, 1, 0, 0],
            &[-5, 0, 3, 0],
            &[0, 0, 0, 1],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, IntMatrix::identity(4));
        assert_eq!(&inv * &m, IntMatrix::identity(4));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let m = IntMatrix::from_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(m.pow(0), IntMatrix::identity(2));
        assert_eq!(m.pow(5), IntMatrix::from_rows(&[&[1, 5], &[0, 1]]));
    }

    #[test]
    fn rref_and_rank() {
        let m = RatMatrix::from_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(m.rank(), 2);
        assert_eq!(r.at(0, 1), &rat(2));
        assert_eq!(r.at(0, 2), &rat(0));
    }

    #[test]
    fn rational_kernel_annihilates() {
        let m = RatMatrix::from_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn rational_inverse_round_trips() {
        let m = RatMatrix::from_rows(&[&[1, 2], &[3, 5]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RatMatrix::identity(2));
        assert_eq!(inv.at(0, 0), &rat(-5));
    }

    #[test]
    fn hermite_factorization_invariants() {
        let m = IntMatrix::from_rows(&[&[4, 6, 2], &[2, 2, 0]]);
        let (h, u) = m.column_hermite();
        assert!(u.is_unimodular());
        assert_eq!(&m * &u, h);
    }

    #[test]
    fn integer_kernel_is_saturated() {
        // Over Q the kernel of [2 2] is spanned by (1, -1); the integer
        // kernel must give the primitive generator, not a multiple.
        let m = IntMatrix::from_rows(&[&[2, 2]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(is_primitive(&k[0]));
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let m = IntMatrix::zero(2, 3);
        assert_eq!(m.kernel().len(), 3);
    }

    #[test]
    fn span_operations_on_coordinate_planes() {
        let e = |i: usize| {
            let mut v = rv(&[0, 0, 0]);
            v[i] = rat(1);
            v
        };
        let a = [e(0), e(1)];
        let b = [e(1), e(2)];
        let meet = intersect_spans(3, &a, &b);
        assert_eq!(meet, vec![e(1)]);
        let join = sum_spans(3, &a, &b);
        assert_eq!(join.len(), 3);
        assert!(span_contains(3, &a, &rv(&[3, -7, 0])));
        assert!(!span_contains(3, &a, &rv(&[0, 0, 1])));
    }

    #[test]
    fn saturation_clears_denominators_and_index() {
        let half = vec![frac(1, 2), frac(1, 2)];
        let sat = saturate_span(2, &[half]);
        assert_eq!(sat, vec![iv(&[1, 1])]);
        let stretched = vec![rat(2), rat(4)];
        let sat = saturate_span(2, &[stretched]);
        assert_eq!(sat.len(), 1);
        assert!(is_primitive(&sat[0]));
        let full = saturate_span(2, &[rv(&[1, 0]), rv(&[0, 1])]);
        assert_eq!(full.len(), 2);
    }

    #[test]
    fn complete_primitive_builds_unimodular_basis() {
        for v in [iv(&[2, 3]), iv(&[0, 1, 0]), iv(&[6, 10, 15])] {
            let b = complete_primitive(&v);
            assert!(b.is_unimodular());
            assert_eq!(b.column(0), v);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bareiss_agrees_with_rational_elimination(
            entries in proptest::collection::vec(-9i64..=9, 16)
        ) {
            let m = IntMatrix::from_vec(4, 4, entries.iter().map(|&x| BigInt::from(x)).collect());
            prop_assert_eq!(Rat::from_integer(m.det()), m.to_rat().det());
        }

        #[test]
        fn determinant_is_multiplicative(
            xs in proptest::collection::vec(-5i64..=5, 9),
            ys in proptest::collection::vec(-5i64..=5, 9),
        ) {
            let a = IntMatrix::from_vec(3, 3, xs.iter().map(|&x| BigInt::from(x)).collect());
            let b = IntMatrix::from_vec(3, 3, ys.iter().map(|&x| BigInt::from(x)).collect());
            prop_assert_eq!((&a * &b).det(), a.det() * b.det());
        }

        #[test]
        fn hermite_always_factors(
            entries in proptest::collection::vec(-9i64..=9, 12)
        ) {
            let m = IntMatrix::from_vec(3, 4, entries.iter().map(|&x| BigInt::from(x)).collect());
            let (h, u) = m.column_hermite();
            prop_assert!(u.is_unimodular());
            prop_assert_eq!(&m * &u, h);
            for v in m.kernel() {
                prop_assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn span_dimension_formula(
            xs in proptest::collection::vec(-4i64..=4, 8),
            ys in proptest::collection::vec(-4i64..=4, 8),
        ) {
            let a: Vec<Vec<Rat>> = xs.chunks(4).map(rv).collect();
            let b: Vec<Vec<Rat>> = ys.chunks(4).map(rv).collect();
            let da = span_dim(4, &a);
            let db = span_dim(4, &b);
            let dsum = sum_spans(4, &a, &b).len();
            let dmeet = intersect_spans(4, &a, &b).len();
            prop_assert_eq!(da + db, dsum + dmeet);
        }

        #[test]
        fn saturated_lattice_lies_in_span(
            xs in proptest::collection::vec(-4i64..=4, 8),
        ) {
            let vs: Vec<Vec<Rat>> = xs.chunks(4).map(rv).collect();
            let sat = saturate_span(4, &vs);
            prop_assert_eq!(sat.len(), span_dim(4, &vs));
            for w in &sat {
                let wr: Vec<Rat> = w.iter().map(|x| Rat::from_integer(x.clone())).collect();
                prop_assert!(span_contains(4, &vs, &wr));
            }
        }
    }
}
