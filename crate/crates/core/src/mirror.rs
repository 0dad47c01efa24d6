//! Mirror map, Yukawa coupling, and instanton-number extraction for a
//! fourth-order operator with a maximally unipotent origin.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::picard_fuchs::{FrobeniusBasis, OperatorError, ThetaOperator};
use crate::rat::{as_integer, format_rat, frac, rat, BigInt, Rat};
use crate::series::TruncSeries;

/// Errors from the coupling and extraction stages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MirrorError {
    /// The algebraic Yukawa normalization needs a maximally unipotent origin.
    NotMum,
    /// The first-order coupling recursion lost its leading coefficient.
    /// Unreachable once maximal unipotence holds, kept as a guard.
    SingularYukawaOde,
    /// A curve count came out non-integral; carries the exact offender.
    NonIntegralInstanton { degree: u32, value: Rat },
}

impl fmt::Display for MirrorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MirrorError::NotMum => {
                write!(f, "coupling normalization requires a maximally unipotent origin")
            }
            MirrorError::SingularYukawaOde => {
                write!(f, "coupling recursion is singular at z = 0")
            }
            MirrorError::NonIntegralInstanton { degree, value } => {
                write!(
                    f,
                    "count at degree {degree} is not an integer: {}",
                    format_rat(value)
                )
            }
        }
    }
}

impl core::error::Error for MirrorError {}

/// The coordinate change q = z g(z) and its inverse z = q h(q), both stored
/// through the factor series with g(0) = h(0) = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorMap {
    q_over_z: TruncSeries,
    z_over_q: TruncSeries,
}

impl MirrorMap {
    /// g(z) = q/z.
    pub fn q_over_z(&self) -> &TruncSeries {
        &self.q_over_z
    }

    /// h(q) = z/q.
    pub fn z_over_q(&self) -> &TruncSeries {
        &self.z_over_q
    }

    pub fn truncation(&self) -> usize {
        self.q_over_z.truncation()
    }

    /// q as a series in z, exact one order past the stored factor.
    pub fn q_series(&self) -> TruncSeries {
        shift_up_exact(&self.q_over_z)
    }

    /// z as a series in q, exact one order past the stored factor.
    pub fn z_series(&self) -> TruncSeries {
        shift_up_exact(&self.z_over_q)
    }
}

/// z * s as a series truncated one order higher; every coefficient of the
/// result is determined by s, so this does not fabricate knowledge.
fn shift_up_exact(s: &TruncSeries) -> TruncSeries {
    let mut coeffs = Vec::with_capacity(s.truncation() + 2);
    coeffs.push(Rat::zero());
    coeffs.extend(s.coeffs().iter().cloned());
    TruncSeries::from_coeffs(s.truncation() + 1, coeffs)
}

/// Builds the mirror map q = z exp(f_1/f_0) from a Frobenius basis and
/// reverts it. The basis normalization makes every step total.
pub fn build_mirror_map(basis: &FrobeniusBasis) -> MirrorMap {
    let f0_inv = basis.f0().inv().expect("f0(0) = 1");
    let ratio = basis.f1() * &f0_inv;
    let g = ratio.exp().expect("f1(0) = 0");
    let q_full = shift_up_exact(&g);
    let z_full = q_full.revert().expect("q'(0) = 1");
    let h = z_full.div_z_pow(1);
    MirrorMap {
        q_over_z: g,
        z_over_q: h,
    }
}

/// Solves for the algebraic coupling factor W with W(0) = 1.
///
/// Writing the operator in d/dz form, the triple coupling satisfies
/// W' = -(1/2)(a_3/a_4) W; stripping the z^-3 pole leaves
/// theta(W)/W = -P_3/(2 P_4), which integrates to an exp of a known series.
pub fn algebraic_yukawa(op: &ThetaOperator, trunc: usize) -> Result<TruncSeries, MirrorError> {
    if !op.is_mum_at_origin() {
        return Err(MirrorError::NotMum);
    }
    let p3 = TruncSeries::one(trunc).mul_poly(op.coeff_poly(3));
    let p4 = TruncSeries::one(trunc).mul_poly(op.coeff_poly(4));
    let p4_inv = p4.inv().map_err(|_| MirrorError::SingularYukawaOde)?;
    let h = p3.scale(&frac(-1, 2)) * &p4_inv;
    debug_assert!(h.constant_term().is_zero());
    // theta(W) = h W with W(0) = 1: integrate theta-wise and exponentiate.
    let mut integrated = TruncSeries::zero(trunc);
    for k in 1..=trunc {
        let c = h.coeff(k) / rat(k as i64);
        integrated = &integrated + &TruncSeries::monomial(trunc, k, c);
    }
    Ok(integrated.exp().expect("zero constant term"))
}

/// Coupling K(q) = kappa + corrections(q) with corrections(0) = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CouplingSeries {
    kappa: Rat,
    corrections: TruncSeries,
}

impl CouplingSeries {
    pub fn new(kappa: Rat, corrections: TruncSeries) -> Self {
        assert!(
            corrections.constant_term().is_zero(),
            "corrections must vanish at q = 0"
        );
        CouplingSeries { kappa, corrections }
    }

    pub fn kappa(&self) -> &Rat {
        &self.kappa
    }

    pub fn corrections(&self) -> &TruncSeries {
        &self.corrections
    }

    pub fn truncation(&self) -> usize {
        self.corrections.truncation()
    }

    /// The full series kappa + corrections.
    pub fn series(&self) -> TruncSeries {
        &TruncSeries::constant(self.truncation(), self.kappa.clone()) + &self.corrections
    }
}

/// Canonical coupling from the mirror map, the algebraic factor W, and the
/// holomorphic period: K(q) = kappa (dlog z/dlog q)^3 W(z(q)) / f_0(z(q))^2.
pub fn canonical_coupling(
    map: &MirrorMap,
    w: &TruncSeries,
    f0: &TruncSeries,
    kappa: &Rat,
) -> CouplingSeries {
    let h = map.z_over_q();
    let t = h.truncation();
    // dlog z/dlog q = theta_q(q h)/(q h) = 1 + theta(h)/h.
    let ratio = &TruncSeries::one(t) + &(h.theta() * &h.inv().expect("h(0) = 1"));
    // z(q) through q^t; the dropped top factor coefficient only feeds q^{t+1}.
    let z_of_q = h.mul_z_pow(1);
    let w_q = w.compose(&z_of_q).expect("z(0) = 0");
    let f0_q = f0.compose(&z_of_q).expect("z(0) = 0");
    let b = ratio.pow(3) * &(f0_q.pow(2).inv().expect("f0(0) = 1")) * &w_q;
    debug_assert!(b.constant_term().is_one());
    let corrections = (&b - &TruncSeries::one(b.truncation())).scale(kappa);
    CouplingSeries::new(kappa.clone(), corrections)
}

/// Integral curve counts per degree. Only nonzero counts are stored; degrees
/// are strictly increasing, starting from 1, bounded by max_degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictionTable {
    kappa: Rat,
    max_degree: u32,
    entries: Vec<(u32, BigInt)>,
}

impl PredictionTable {
    pub fn new(kappa: Rat, max_degree: u32, entries: Vec<(u32, BigInt)>) -> Self {
        let mut last = 0u32;
        for (d, n) in &entries {
            assert!(*d >= 1 && *d > last && *d <= max_degree, "degrees must increase");
            assert!(!n.is_zero(), "zero counts are implied by absence");
            last = *d;
        }
        PredictionTable {
            kappa,
            max_degree,
            entries,
        }
    }

    pub fn empty(kappa: Rat, max_degree: u32) -> Self {
        Self::new(kappa, max_degree, Vec::new())
    }

    pub fn kappa(&self) -> &Rat {
        &self.kappa
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn entries(&self) -> &[(u32, BigInt)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Count at a degree; absent degrees count zero.
    pub fn n_at(&self, degree: u32) -> BigInt {
        self.entries
            .iter()
            .find(|(d, _)| *d == degree)
            .map(|(_, n)| n.clone())
            .unwrap_or_else(BigInt::zero)
    }
}

/// K(q) = kappa + sum_d n_d d^3 q^d / (1 - q^d), truncated at q^trunc.
pub fn multiple_cover_sum(table: &PredictionTable, trunc: usize) -> CouplingSeries {
    let mut corrections = TruncSeries::zero(trunc);
    for (d, n) in table.entries() {
        let d = *d as usize;
        let weight = Rat::from_integer(n * BigInt::from(d).pow(3));
        let mut m = d;
        while m <= trunc {
            corrections = &corrections + &TruncSeries::monomial(trunc, m, weight.clone());
            m += d;
        }
    }
    CouplingSeries::new(table.kappa().clone(), corrections)
}

/// Exact inversion of the multiple-cover sum: returns every degree up to
/// max_degree with its (possibly non-integral) count.
pub fn invert_multiple_cover(k: &CouplingSeries, max_degree: u32) -> Vec<(u32, Rat)> {
    assert!(
        (max_degree as usize) <= k.truncation(),
        "coupling truncated below the requested degree"
    );
    let mut counts: Vec<(u32, Rat)> = Vec::with_capacity(max_degree as usize);
    for d in 1..=max_degree {
        let mut c = k.corrections().coeff(d as usize).clone();
        for (e, n) in &counts {
            if d % e == 0 {
                c -= n * Rat::from_integer(BigInt::from(*e).pow(3));
            }
        }
        let cube = Rat::from_integer(BigInt::from(d).pow(3));
        counts.push((d, c / cube));
    }
    counts
}

/// Integral prediction table from a coupling, or the first non-integral
/// count as a diagnostic. Nothing is rounded.
pub fn extract_instantons(
    k: &CouplingSeries,
    max_degree: u32,
) -> Result<PredictionTable, MirrorError> {
    let counts = invert_multiple_cover(k, max_degree);
    let mut entries = Vec::new();
    for (d, value) in counts {
        match as_integer(&value) {
            Some(n) => {
                if !n.is_zero() {
                    entries.push((d, n));
                }
            }
            None => {
                return Err(MirrorError::NonIntegralInstanton { degree: d, value });
            }
        }
    }
    Ok(PredictionTable::new(k.kappa().clone(), max_degree, entries))
}

/// Pipeline stages, for error reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PredictError {
    Frobenius(OperatorError),
    Yukawa(MirrorError),
}

impl fmt::Display for PredictError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredictError::Frobenius(e) => write!(f, "frobenius stage: {e}"),
            PredictError::Yukawa(e) => write!(f, "yukawa stage: {e}"),
        }
    }
}

impl core::error::Error for PredictError {}

/// Everything the prediction pipeline produces before integrality screening.
#[derive(Clone, Debug)]
pub struct Prediction {
    pub coupling: CouplingSeries,
    /// Exact count per degree 1..=max_degree from the cover inversion.
    pub counts: Vec<(u32, Rat)>,
    pub max_degree: u32,
}

impl Prediction {
    /// The screened table; fails on the first non-integral count.
    pub fn table(&self) -> Result<PredictionTable, MirrorError> {
        extract_instantons(&self.coupling, self.max_degree)
    }

    pub fn non_integral(&self) -> Vec<(u32, Rat)> {
        self.counts
            .iter()
            .filter(|(_, v)| !v.is_integer())
            .cloned()
            .collect()
    }
}

/// Full chain: Frobenius basis, mirror map, algebraic coupling, canonical
/// coupling, cover inversion.
pub fn predict(
    op: &ThetaOperator,
    kappa: &Rat,
    trunc: usize,
    max_degree: u32,
) -> Result<Prediction, PredictError> {
    assert!(trunc >= max_degree as usize, "truncation below requested degree");
    let basis = op.frobenius_mum(trunc).map_err(PredictError::Frobenius)?;
    let map = build_mirror_map(&basis);
    let w = algebraic_yukawa(op, trunc).map_err(PredictError::Yukawa)?;
    let coupling = canonical_coupling(&map, &w, basis.f0(), kappa);
    let counts = invert_multiple_cover(&coupling, max_degree);
    Ok(Prediction {
        coupling,
        counts,
        max_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    fn quintic() -> ThetaOperator {
        ThetaOperator::from_ints([
            &[0, -120],
            &[0, -1250],
            &[0, -4375],
            &[0, -6250],
            &[1, -3125],
        ])
        .unwrap()
    }

    fn theta4() -> ThetaOperator {
        ThetaOperator::from_ints([&[], &[], &[], &[], &[1]]).unwrap()
    }

    #[test]
    fn quintic_mirror_map_leading_corrections() {
        let basis = quintic().frobenius_mum(6).unwrap();
        let map = build_mirror_map(&basis);
        assert_eq!(map.q_over_z().coeff(0), &rat(1));
        assert_eq!(map.q_over_z().coeff(1), &rat(770));
        assert_eq!(map.z_over_q().coeff(0), &rat(1));
        assert_eq!(map.z_over_q().coeff(1), &rat(-770));
    }

    #[test]
    fn mirror_map_round_trips() {
        let basis = quintic().frobenius_mum(8).unwrap();
        let map = build_mirror_map(&basis);
        let q = map.q_series();
        let z = map.z_series();
        let back = q.compose(&z).unwrap();
        assert_eq!(back, TruncSeries::variable(back.truncation()));
        let forth = z.compose(&q).unwrap();
        assert_eq!(forth, TruncSeries::variable(forth.truncation()));
    }

    #[test]
    fn theta4_mirror_map_is_identity() {
        let basis = theta4().frobenius_mum(5).unwrap();
        let map = build_mirror_map(&basis);
        assert_eq!(map.q_over_z(), &TruncSeries::one(5));
        assert_eq!(map.z_over_q(), &TruncSeries::one(5));
    }

    #[test]
    fn quintic_algebraic_coupling_is_geometric() {
        let w = algebraic_yukawa(&quintic(), 5).unwrap();
        for k in 0..=5u32 {
            assert_eq!(w.coeff(k as usize), &Rat::from_integer(BigInt::from(3125).pow(k)));
        }
    }

    #[test]
    fn theta4_algebraic_coupling_is_constant() {
        assert_eq!(algebraic_yukawa(&theta4(), 4).unwrap(), TruncSeries::one(4));
    }

    #[test]
    fn algebraic_coupling_satisfies_its_recursion() {
        // 2 P4 theta(W) + P3 W = 0 for an assortment of operators with a
        // maximally unipotent origin.
        let ops = [
            quintic(),
            theta4(),
            ThetaOperator::from_ints([&[0, 7], &[0, -3], &[0, 1, 4], &[0, 2, -6], &[3, 5]]).unwrap(),
            ThetaOperator::from_ints([&[0, 0, 2], &[0, 1], &[0, -1], &[0, 9, 9], &[-2, 0, 11]])
                .unwrap(),
        ];
        for op in &ops {
            let w = algebraic_yukawa(op, 9).unwrap();
            let lhs = w.theta().mul_poly(op.coeff_poly(4)).scale(&rat(2));
            let rhs = w.mul_poly(op.coeff_poly(3));
            assert!((&lhs + &rhs).is_zero());
        }
    }

    #[test]
    fn yukawa_requires_mum() {
        let bad = ThetaOperator::from_ints([&[1], &[], &[], &[], &[1]]).unwrap();
        assert_eq!(algebraic_yukawa(&bad, 4).unwrap_err(), MirrorError::NotMum);
    }

    #[test]
    fn quintic_coupling_frozen_coefficients() {
        let p = predict(&quintic(), &rat(5), 8, 5).unwrap();
        assert_eq!(p.coupling.kappa(), &rat(5));
        let c = p.coupling.corrections();
        assert_eq!(c.coeff(1), &rat(2875));
        assert_eq!(c.coeff(2), &rat(4876875));
        assert_eq!(c.coeff(3), &rat(8564575000));
    }

    #[test]
    fn quintic_low_degree_counts() {
        let p = predict(&quintic(), &rat(5), 8, 3).unwrap();
        let table = p.table().unwrap();
        assert_eq!(table.n_at(1), BigInt::from(2875));
        assert_eq!(table.n_at(2), BigInt::from(609250));
        assert_eq!(table.n_at(3), BigInt::from(317206375u64));
    }

    #[test]
    fn theta4_pipeline_is_trivial() {
        let p = predict(&theta4(), &frac(7, 3), 6, 4).unwrap();
        assert!(p.coupling.corrections().is_zero());
        let table = p.table().unwrap();
        assert!(table.is_empty());
        assert_eq!(table.kappa(), &frac(7, 3));
    }

    #[test]
    fn cover_sum_forward_example() {
        let table = PredictionTable::new(
            rat(5),
            4,
            vec![(1, BigInt::from(2)), (2, BigInt::from(1))],
        );
        let k = multiple_cover_sum(&table, 4);
        assert_eq!(k.series(), TruncSeries::from_ints(4, &[5, 2, 10, 2, 10]));
    }

    #[test]
    fn cover_sum_inverts_exactly() {
        let table = PredictionTable::new(
            rat(5),
            4,
            vec![(1, BigInt::from(2)), (2, BigInt::from(1))],
        );
        let k = multiple_cover_sum(&table, 4);
        let out = extract_instantons(&k, 4).unwrap();
        assert_eq!(out, table);
        assert_eq!(out.n_at(3), BigInt::zero());
        assert_eq!(out.n_at(4), BigInt::zero());
    }

    #[test]
    fn constant_coupling_extracts_empty_table() {
        let k = CouplingSeries::new(rat(5), TruncSeries::zero(6));
        let table = extract_instantons(&k, 6).unwrap();
        assert!(table.is_empty());
    }

    #[test]
    fn non_integral_count_is_diagnosed_not_rounded() {
        let k = CouplingSeries::new(rat(1), TruncSeries::from_coeffs(3, vec![rat(0), frac(1, 2)]));
        let err = extract_instantons(&k, 3).unwrap_err();
        assert_eq!(
            err,
            MirrorError::NonIntegralInstanton {
                degree: 1,
                value: frac(1, 2)
            }
        );
        // The exact inversion still reports every degree.
        let counts = invert_multiple_cover(&k, 3);
        assert_eq!(counts[0], (1, frac(1, 2)));
        assert_eq!(counts[1], (2, frac(-1, 16)));
    }

    #[test]
    fn predictions_stable_under_deeper_truncation() {
        let short = predict(&quintic(), &rat(5), 8, 5).unwrap();
        let long = predict(&quintic(), &rat(5), 12, 5).unwrap();
        assert_eq!(short.counts, long.counts);
    }

    #[test]
    fn variable_rescale_scales_coupling_coefficients() {
        // q -> 2q is operator z -> z/2; coupling coefficients pick up 2^-d.
        let op = quintic().scale_variable(&frac(1, 2));
        let p = predict(&op, &rat(5), 6, 2).unwrap();
        assert_eq!(p.coupling.corrections().coeff(1), &frac(2875, 2));
        assert_eq!(p.coupling.corrections().coeff(2), &frac(4876875, 4));
        // Integrality is convention-dependent, and the diagnostic says so.
        assert_eq!(
            p.table().unwrap_err(),
            MirrorError::NonIntegralInstanton {
                degree: 1,
                value: frac(2875, 2)
            }
        );
    }
}
