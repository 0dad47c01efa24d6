//! Fourth-order differential operators in theta = z d/dz form and their
//! Frobenius bases at a maximally unipotent point at the origin.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::rat::{rat, Rat};
use crate::series::{LogSeries, TruncSeries};

/// Errors from operator construction and the Frobenius solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorError {
    /// The theta^4 coefficient polynomial is identically zero.
    NotFourthOrder,
    /// The origin is not a maximally unipotent point of the operator.
    NotMum,
    /// The indicial recursion denominator vanished at step n. Unreachable for
    /// an operator that passes the maximal-unipotence check, kept as a guard.
    DegenerateIndicialStep { n: usize },
}

impl fmt::Display for OperatorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorError::NotFourthOrder => {
                write!(f, "operator must have order exactly 4 (theta^4 coefficient nonzero)")
            }
            OperatorError::NotMum => {
                write!(f, "operator is not maximally unipotent at z = 0")
            }
            OperatorError::DegenerateIndicialStep { n } => {
                write!(f, "indicial recursion degenerates at step {n}")
            }
        }
    }
}

impl core::error::Error for OperatorError {}

/// L = sum_{i=0}^{4} P_i(z) theta^i with rational polynomial coefficients and
/// P_4 not identically zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaOperator {
    // coeffs[i] holds P_i low-to-high with trailing zeros trimmed.
    coeffs: [Vec<Rat>; 5],
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().map_or(false, Zero::is_zero) {
        p.pop();
    }
    p
}

impl ThetaOperator {
    pub fn new(coeffs: [Vec<Rat>; 5]) -> Result<Self, OperatorError> {
        let coeffs = coeffs.map(trim);
        if coeffs[4].is_empty() {
            return Err(OperatorError::NotFourthOrder);
        }
        Ok(ThetaOperator { coeffs })
    }

    pub fn from_ints(coeffs: [&[i64]; 5]) -> Result<Self, OperatorError> {
        Self::new(coeffs.map(|p| p.iter().map(|&c| rat(c)).collect()))
    }

    /// Coefficient polynomial of theta^i, low-to-high.
    pub fn coeff_poly(&self, i: usize) -> &[Rat] {
        &self.coeffs[i]
    }

    fn p_at_zero(&self, i: usize) -> Rat {
        self.coeffs[i].first().cloned().unwrap_or_else(Rat::zero)
    }

    /// Largest z-degree appearing in any coefficient polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.iter().map(|p| p.len().saturating_sub(1)).max().unwrap()
    }

    /// Maximal unipotence at the origin: P_i(0) = 0 for i < 4 and P_4(0) != 0,
    /// so the indicial polynomial is P_4(0) sigma^4.
    pub fn is_mum_at_origin(&self) -> bool {
        (0..4).all(|i| self.p_at_zero(i).is_zero()) && !self.p_at_zero(4).is_zero()
    }

    /// Substitutes z -> s z in every coefficient polynomial.
    pub fn scale_variable(&self, s: &Rat) -> Self {
        let coeffs = self.coeffs.clone().map(|p| {
            let mut pw = Rat::from_integer(1.into());
            p.into_iter()
                .map(|c| {
                    let out = c * &pw;
                    pw *= s;
                    out
                })
                .collect()
        });
        ThetaOperator { coeffs }
    }

    /// Applies the operator to a log-graded series. Exact through the input
    /// truncation: polynomial coefficients reach only upward in z.
    pub fn apply(&self, y: &LogSeries) -> LogSeries {
        let mut out = y.mul_poly(&self.coeffs[0]);
        let mut power = y.clone();
        for i in 1..=4 {
            power = power.theta();
            out = &out + &power.mul_poly(&self.coeffs[i]);
        }
        out
    }

    /// True when the operator kills the series through its truncation.
    pub fn annihilates(&self, y: &LogSeries) -> bool {
        self.apply(y).is_zero()
    }

    /// Frobenius basis at the origin through z^trunc.
    ///
    /// Solves L[z^sigma sum a_n(sigma) z^n] = 0 with a_0 = 1 over 3-jets in
    /// sigma; f_j is the sigma^j part, so the degree-j log solution is
    /// y_j = sum_{l<=j} (log z)^l / l! * f_{j-l}.
    pub fn frobenius_mum(&self, trunc: usize) -> Result<FrobeniusBasis, OperatorError> {
        if !self.is_mum_at_origin() {
            return Err(OperatorError::NotMum);
        }
        // q_m(x) = sum_i p_{i,m} x^i, the operator side of the recursion at
        // z-degree m.
        let degree = self.degree();
        let q: Vec<Vec<Rat>> = (0..=degree)
            .map(|m| {
                trim((0..=4)
                    .map(|i| self.coeffs[i].get(m).cloned().unwrap_or_else(Rat::zero))
                    .collect())
            })
            .collect();

        let mut a: Vec<TruncSeries> = Vec::with_capacity(trunc + 1);
        a.push(TruncSeries::one(JET));
        for n in 1..=trunc {
            let mut acc = TruncSeries::zero(JET);
            for m in 1..=n.min(degree) {
                if q[m].is_empty() {
                    continue;
                }
                let term = poly_at_jet(&q[m], rat((n - m) as i64)) * &a[n - m];
                acc = &acc + &term;
            }
            let ind = poly_at_jet(&q[0], rat(n as i64));
            if ind.constant_term().is_zero() {
                return Err(OperatorError::DegenerateIndicialStep { n });
            }
            let next = -&(acc * &ind.inv().expect("nonzero constant term"));
            a.push(next);
        }

        let f = [0, 1, 2, 3].map(|j| {
            TruncSeries::from_coeffs(trunc, a.iter().map(|an| an.coeff(j).clone()).collect())
        });
        Ok(FrobeniusBasis { f })
    }
}

/// Jets in sigma of order 3 reuse the truncated-series arithmetic.
const JET: usize = 3;

/// Evaluates a polynomial at c + sigma by Horner in the jet ring.
fn poly_at_jet(poly: &[Rat], c: Rat) -> TruncSeries {
    let x = {
        let mut s = TruncSeries::monomial(JET, 1, rat(1));
        s = &s + &TruncSeries::constant(JET, c);
        s
    };
    let mut out = TruncSeries::zero(JET);
    for coeff in poly.iter().rev() {
        out = out * &x;
        out = &out + &TruncSeries::constant(JET, coeff.clone());
    }
    out
}

/// The four Frobenius series parts at a maximally unipotent origin:
/// f_0(0) = 1 and f_1, f_2, f_3 vanish at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusBasis {
    f: [TruncSeries; 4],
}

impl FrobeniusBasis {
    pub fn f(&self, j: usize) -> &TruncSeries {
        &self.f[j]
    }

    pub fn f0(&self) -> &TruncSeries {
        &self.f[0]
    }

    pub fn f1(&self) -> &TruncSeries {
        &self.f[1]
    }

    pub fn truncation(&self) -> usize {
        self.f[0].truncation()
    }

    /// The solution with log-degree k.
    pub fn period(&self, k: usize) -> LogSeries {
        assert!(k < 4);
        let t = self.truncation();
        let mut parts = [
            TruncSeries::zero(t),
            TruncSeries::zero(t),
            TruncSeries::zero(t),
            TruncSeries::zero(t),
        ];
        for l in 0..=k {
            parts[l] = self.f[k - l].clone();
        }
        LogSeries::from_parts(parts)
    }
}
