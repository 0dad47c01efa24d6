//! Integer monodromy laboratory.
//!
//! Works with the 4x4 boundary data of one-parameter families: conjugation
//! into normal form, the monodromy around infinity and its nilpotent
//! logarithm, the rank-one cube test, and a general classifier for
//! maximally unipotent boundary points over exact rationals.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{
    complete_primitive, intersect_spans, is_primitive, saturate_span, span_basis, sum_spans,
    IntMatrix, RatMatrix,
};
use crate::rat::{as_integer, BigInt, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonodromyError {
    /// Conjugation and inversion need determinant +-1.
    NotUnimodular,
    /// Logarithms only exist here for unipotent matrices.
    NotUnipotent,
    /// The classifier input matrices must be nilpotent.
    NotNilpotent,
    /// Mixed sizes, or weight count disagreeing with matrix count.
    DimensionMismatch,
    /// Weights must be positive.
    NonPositiveWeight,
    /// The cube is not a rank-one matrix concentrated at row 4, column 2;
    /// carries the cube for inspection.
    WrongShape { cube: RatMatrix },
}

impl fmt::Display for MonodromyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonodromyError::NotUnimodular => write!(f, "matrix is not invertible over the integers"),
            MonodromyError::NotUnipotent => write!(f, "matrix is not unipotent"),
            MonodromyError::NotNilpotent => write!(f, "matrix is not nilpotent"),
            MonodromyError::DimensionMismatch => write!(f, "matrix and weight shapes disagree"),
            MonodromyError::NonPositiveWeight => write!(f, "weights must be positive"),
            MonodromyError::WrongShape { cube } => {
                write!(f, "cube is not concentrated at row 4, column 2: {cube:?}")
            }
        }
    }
}

impl core::error::Error for MonodromyError {}

/// The fixed integral twist: identity plus a single 1 at row 2, column 4.
pub fn boundary_twist() -> IntMatrix {
    let mut t = IntMatrix::identity(4);
    t.set(1, 3, BigInt::one());
    t
}

/// Normal form of the boundary monodromy, parametrized by (lambda, mu).
pub fn a_prime_template(lambda: &BigInt, mu: &BigInt) -> IntMatrix {
    let mut m = IntMatrix::from_rows(&[
        &[1, -1, 0, 1],
        &[0, 1, 0, -1],
        &[0, 0, 1, 0],
        &[0, 0, 1, 0],
    ]);
    m.set(2, 0, -lambda);
    m.set(3, 0, -lambda);
    m.set(3, 1, mu.clone());
    m.set(3, 3, BigInt::one() - mu);
    m
}

/// Closed form of the monodromy around infinity for the same parameters.
pub fn t_infinity_template(lambda: &BigInt, mu: &BigInt) -> IntMatrix {
    let mut m = IntMatrix::from_rows(&[
        &[1, 1, 0, 0],
        &[0, 1, 0, 0],
        &[0, 0, 1, 0],
        &[0, 0, -1, 1],
    ]);
    m.set(2, 0, lambda.clone());
    m.set(2, 1, lambda.clone());
    m.set(3, 1, -mu);
    m
}

/// Reads (lambda, mu) off a matrix in normal form; None when the entries
/// do not fit the template for any parameters.
pub fn match_a_prime_template(m: &IntMatrix) -> Option<(BigInt, BigInt)> {
    if !m.is_square() || m.rows() != 4 {
        return None;
    }
    let lambda = -m.at(2, 0);
    let mu = m.at(3, 1).clone();
    if *m == a_prime_template(&lambda, &mu) {
        Some((lambda, mu))
    } else {
        None
    }
}

/// m' A m'^-1 over the integers.
pub fn conjugate(a: &IntMatrix, m_prime: &IntMatrix) -> Result<IntMatrix, MonodromyError> {
    let inv = m_prime.inverse().ok_or(MonodromyError::NotUnimodular)?;
    Ok(&(m_prime * a) * &inv)
}

/// T^-1 (A')^-1 with the fixed twist T.
pub fn monodromy_at_infinity(a_prime: &IntMatrix) -> Result<IntMatrix, MonodromyError> {
    if a_prime.rows() != 4 || !a_prime.is_square() {
        return Err(MonodromyError::DimensionMismatch);
    }
    let a_inv = a_prime.inverse().ok_or(MonodromyError::NotUnimodular)?;
    let t_inv = boundary_twist().inverse().expect("twist is unimodular");
    Ok(&t_inv * &a_inv)
}

/// (M - I)^n = 0?
pub fn is_unipotent(m: &IntMatrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let shifted = m - &IntMatrix::identity(m.rows());
    shifted.pow(m.rows() as u32).is_zero()
}

/// -log M = sum_{k>=1} (-1)^k (M - I)^k / k, a finite sum on unipotents.
pub fn nilpotent_log(m: &IntMatrix) -> Result<RatMatrix, MonodromyError> {
    if !is_unipotent(m) {
        return Err(MonodromyError::NotUnipotent);
    }
    let n = m.rows();
    let shifted = (m - &IntMatrix::identity(n)).to_rat();
    let mut acc = RatMatrix::zero(n, n);
    let mut power = RatMatrix::identity(n);
    for k in 1..n {
        power = &power * &shifted;
        let term = k as i64;
        let coeff = if k % 2 == 0 {
            Rat::new(BigInt::one(), BigInt::from(term))
        } else {
            Rat::new(-BigInt::one(), BigInt::from(term))
        };
        let mut scaled = power.clone();
        for i in 0..n {
            for j in 0..n {
                scaled.set(i, j, scaled.at(i, j) * &coeff);
            }
        }
        acc = &acc + &scaled;
    }
    Ok(acc)
}

/// exp X = sum X^k / k!, exact when X is nilpotent.
pub fn nilpotent_exp(x: &RatMatrix) -> Result<RatMatrix, MonodromyError> {
    let n = x.rows();
    if !x.is_square() {
        return Err(MonodromyError::DimensionMismatch);
    }
    if !x.pow(n as u32).is_zero() {
        return Err(MonodromyError::NotNilpotent);
    }
    let mut acc = RatMatrix::identity(n);
    let mut power = RatMatrix::identity(n);
    let mut factorial = BigInt::one();
    for k in 1..n {
        power = &power * x;
        factorial *= BigInt::from(k as i64);
        let coeff = Rat::new(BigInt::one(), factorial.clone());
        let mut scaled = power.clone();
        for i in 0..n {
            for j in 0..n {
                scaled.set(i, j, scaled.at(i, j) * &coeff);
            }
        }
        acc = &acc + &scaled;
    }
    Ok(acc)
}

/// Extracts lambda from N^3 when the cube is the single-entry matrix
/// lambda * E_{4,2}; otherwise reports the cube itself.
pub fn lambda_check(n: &RatMatrix) -> Result<Rat, MonodromyError> {
    if !n.is_square() || n.rows() != 4 {
        return Err(MonodromyError::DimensionMismatch);
    }
    if !n.pow(4).is_zero() {
        return Err(MonodromyError::NotNilpotent);
    }
    let cube = n.pow(3);
    let lambda = cube.at(3, 1).clone();
    let mut expected = RatMatrix::zero(4, 4);
    expected.set(3, 1, lambda.clone());
    if lambda.is_zero() || cube != expected {
        return Err(MonodromyError::WrongShape { cube });
    }
    Ok(lambda)
}

/// Primitive integral rank-one matrix: integer entries, rank 1, content 1.
pub fn primitivity_check(m: &RatMatrix) -> bool {
    let Some(int) = m.to_int() else {
        return false;
    };
    if m.rank() != 1 {
        return false;
    }
    let mut content = BigInt::zero();
    for i in 0..int.rows() {
        for j in 0..int.cols() {
            content = content.gcd(int.at(i, j));
        }
    }
    content.is_one()
}

/// Classifier verdict for a boundary point given the nilpotent logarithms
/// of its local monodromies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MumReport {
    pub dim_w0: usize,
    pub dim_w1: usize,
    pub dim_w2: usize,
    /// Coefficients m^{jk} of N^{(j)} g^k against the generator of W0.
    pub m_matrix: RatMatrix,
    pub invertible: bool,
    pub invertible_over_z: bool,
    pub is_mum: bool,
}

/// Tests the maximally unipotent conditions for N = sum a_j N^{(j)}:
/// dim W0 = dim W1 = 1, dim W2 = 1 + r, and invertibility of (m^{jk}).
///
/// W0 = Im N^3, W1 = Im N^2 \cap Ker N,
/// W2 = (Im N \cap Ker N) + (Im N^2 \cap Ker N^2).
/// The g-basis is taken integral and saturated so that the verdict over Z
/// is a statement about the full lattice, not a finite-index sublattice.
pub fn mum_classify(
    nilpotents: &[RatMatrix],
    weights: &[Rat],
) -> Result<MumReport, MonodromyError> {
    let r = nilpotents.len();
    if r == 0 || weights.len() != r {
        return Err(MonodromyError::DimensionMismatch);
    }
    let n = nilpotents[0].rows();
    for m in nilpotents {
        if !m.is_square() || m.rows() != n {
            return Err(MonodromyError::DimensionMismatch);
        }
        if !m.pow(n as u32).is_zero() {
            return Err(MonodromyError::NotNilpotent);
        }
    }
    for w in weights {
        if !w.is_positive() {
            return Err(MonodromyError::NonPositiveWeight);
        }
    }

    let mut big_n = RatMatrix::zero(n, n);
    for (m, w) in nilpotents.iter().zip(weights) {
        let mut scaled = m.clone();
        for i in 0..n {
            for j in 0..n {
                scaled.set(i, j, scaled.at(i, j) * w);
            }
        }
        big_n = &big_n + &scaled;
    }
    let n2 = big_n.pow(2);
    let n3 = big_n.pow(3);

    let image = |m: &RatMatrix| -> Vec<Vec<Rat>> {
        span_basis(n, &(0..m.cols()).map(|j| m.column(j)).collect::<Vec<_>>())
    };
    let w0 = image(&n3);
    let w1 = intersect_spans(n, &image(&n2), &big_n.kernel());
    let w2 = sum_spans(
        n,
        &intersect_spans(n, &image(&big_n), &big_n.kernel()),
        &intersect_spans(n, &image(&n2), &n2.kernel()),
    );
    let dim_w0 = w0.len();
    let dim_w1 = w1.len();
    let dim_w2 = w2.len();

    let dims_ok = dim_w0 == 1 && dim_w1 == 1 && dim_w2 == 1 + r;
    let (m_matrix, solvable) = if dims_ok {
        coefficient_matrix(n, r, nilpotents, &w0, &w2)
    } else {
        (RatMatrix::zero(r, r), false)
    };
    let invertible = solvable && !m_matrix.det().is_zero();
    let invertible_over_z = invertible
        && match m_matrix.to_int() {
            Some(int) => int.det().abs().is_one(),
            None => false,
        };
    Ok(MumReport {
        dim_w0,
        dim_w1,
        dim_w2,
        m_matrix,
        invertible,
        invertible_over_z,
        is_mum: dims_ok && invertible,
    })
}

/// Builds a saturated integral basis g^0, g^1..g^r of W2 with g^0
/// generating W0 \cap Z^n, then reads off N^{(j)} g^k = m^{jk} g^0.
fn coefficient_matrix(
    n: usize,
    r: usize,
    nilpotents: &[RatMatrix],
    w0: &[Vec<Rat>],
    w2: &[Vec<Rat>],
) -> (RatMatrix, bool) {
    let fail = (RatMatrix::zero(r, r), false);
    let g0_lattice = saturate_span(n, w0);
    let w2_lattice = saturate_span(n, w2);
    if g0_lattice.len() != 1 || w2_lattice.len() != 1 + r {
        return fail;
    }
    let g0 = canonical_sign(g0_lattice.into_iter().next().unwrap());

    // Coordinates of g0 in the W2 lattice basis; integral and primitive
    // because g0 is a primitive lattice vector.
    let mut basis = RatMatrix::zero(n, 1 + r);
    for (k, v) in w2_lattice.iter().enumerate() {
        for i in 0..n {
            basis.set(i, k, Rat::from_integer(v[i].clone()));
        }
    }
    let g0_rat: Vec<Rat> = g0.iter().map(|x| Rat::from_integer(x.clone())).collect();
    let Some(coords) = basis.solve(&g0_rat) else {
        return fail;
    };
    let mut coords_int = Vec::with_capacity(1 + r);
    for c in &coords {
        match as_integer(c) {
            Some(x) => coords_int.push(x),
            None => return fail,
        }
    }
    if !is_primitive(&coords_int) {
        return fail;
    }
    let change = complete_primitive(&coords_int);
    let mut w2_cols = IntMatrix::zero(n, 1 + r);
    for (k, v) in w2_lattice.iter().enumerate() {
        for i in 0..n {
            w2_cols.set(i, k, v[i].clone());
        }
    }
    let adapted = &w2_cols * &change;
    debug_assert_eq!(adapted.column(0), g0);

    let mut m = RatMatrix::zero(r, r);
    for j in 0..r {
        for k in 0..r {
            let gk: Vec<Rat> = adapted
                .column(k + 1)
                .iter()
                .map(|x| Rat::from_integer(x.clone()))
                .collect();
            let v = nilpotents[j].mul_vec(&gk);
            match ratio_against(&v, &g0_rat) {
                Some(c) => m.set(j, k, c),
                None => return fail,
            }
        }
    }
    (m, true)
}

/// v = c * w for a scalar c; None when v is not proportional to w.
fn ratio_against(v: &[Rat], w: &[Rat]) -> Option<Rat> {
    let i = w.iter().position(|x| !x.is_zero())?;
    let c = &v[i] / &w[i];
    for (a, b) in v.iter().zip(w) {
        if *a != &c * b {
            return None;
        }
    }
    Some(c)
}

fn canonical_sign(v: Vec<BigInt>) -> Vec<BigInt> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.into_iter().map(|x| -x).collect(),
        _ => v,
    }
}

/// Stage at which a normal-form verification fails, with what was seen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowFailure {
    /// m' A m'^-1 disagreed with the expected normal form.
    Conjugation { computed: IntMatrix },
    /// An input was not invertible over the integers.
    Unimodularity,
    /// The normal form does not fit the two-parameter template.
    TemplateShape,
    /// T^-1 (A')^-1 disagreed with its closed form.
    InfinityForm { computed: IntMatrix },
    /// The monodromy around infinity is not unipotent.
    Unipotence,
    /// The cube of the logarithm is misshapen.
    CubeShape { cube: RatMatrix },
    /// lambda from the cube disagreed with the expected value.
    Lambda { found: Rat },
    /// N^3 / lambda is not a primitive integral rank-one matrix.
    Primitivity,
    /// mu read off the normal form disagreed with the expected value.
    Mu { found: BigInt },
}

impl fmt::Display for RowFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowFailure::Conjugation { .. } => write!(f, "conjugation stage: normal form mismatch"),
            RowFailure::Unimodularity => write!(f, "conjugation stage: input not unimodular"),
            RowFailure::TemplateShape => write!(f, "template stage: not in normal form"),
            RowFailure::InfinityForm { .. } => {
                write!(f, "infinity stage: closed form mismatch")
            }
            RowFailure::Unipotence => write!(f, "unipotence stage: not unipotent"),
            RowFailure::CubeShape { .. } => write!(f, "lambda stage: cube misshapen"),
            RowFailure::Lambda { found } => write!(f, "lambda stage: found {found}"),
            RowFailure::Primitivity => write!(f, "primitivity stage: not primitive"),
            RowFailure::Mu { found } => write!(f, "parameter stage: mu found {found}"),
        }
    }
}

/// Full verification chain for one family: conjugate into normal form,
/// match the template, form the monodromy at infinity, check unipotence,
/// take the logarithm, and test the cube against (lambda, mu).
pub fn verify_table_row(
    a: &IntMatrix,
    m_prime: &IntMatrix,
    expected_a_prime: &IntMatrix,
    expected_lambda: i64,
    expected_mu: i64,
) -> Result<(), RowFailure> {
    let a_prime = conjugate(a, m_prime).map_err(|_| RowFailure::Unimodularity)?;
    if &a_prime != expected_a_prime {
        return Err(RowFailure::Conjugation { computed: a_prime });
    }
    let Some((_, mu_found)) = match_a_prime_template(&a_prime) else {
        return Err(RowFailure::TemplateShape);
    };
    let t_inf = monodromy_at_infinity(&a_prime).map_err(|_| RowFailure::Unimodularity)?;
    if !is_unipotent(&t_inf) {
        return Err(RowFailure::Unipotence);
    }
    // Structural check: T_infinity must equal its closed form for the
    // parameters carried by the normal form.
    let lam_shape = t_inf.at(2, 0).clone();
    let mu_shape = -t_inf.at(3, 1);
    if t_inf != t_infinity_template(&lam_shape, &mu_shape) {
        return Err(RowFailure::InfinityForm { computed: t_inf });
    }
    let log = nilpotent_log(&t_inf).map_err(|_| RowFailure::Unipotence)?;
    let lambda = match lambda_check(&log) {
        Ok(l) => l,
        Err(MonodromyError::WrongShape { cube }) => return Err(RowFailure::CubeShape { cube }),
        Err(_) => return Err(RowFailure::Unipotence),
    };
    if lambda != Rat::from_integer(BigInt::from(expected_lambda)) {
        return Err(RowFailure::Lambda { found: lambda });
    }
    let mut primitive_part = log.pow(3);
    let inv = Rat::one() / lambda;
    for i in 0..4 {
        for j in 0..4 {
            primitive_part.set(i, j, primitive_part.at(i, j) * &inv);
        }
    }
    if !primitivity_check(&primitive_part) {
        return Err(RowFailure::Primitivity);
    }
    if mu_found != BigInt::from(expected_mu) {
        return Err(RowFailure::Mu { found: mu_found });
    }
    Ok(())
}


#[cfg(test)]
mod tests {
    use super::table::{matrix, ROWS};
    use super::*;
    use crate::rat::{frac, rat};
    use proptest::prelude::*;

    fn quintic_t_infinity() -> IntMatrix {
        monodromy_at_infinity(&matrix(&ROWS[0].a_prime)).unwrap()
    }

    #[test]
    fn conjugation_by_identity_is_identity_map() {
        let a = matrix(&ROWS[1].a);
        assert_eq!(conjugate(&a, &IntMatrix::identity(4)).unwrap(), a);
    }

    #[test]
    fn conjugation_requires_unimodular_frame() {
        let a = matrix(&ROWS[1].a);
        let double = IntMatrix::identity(4).scale(&BigInt::from(2));
        assert_eq!(conjugate(&a, &double).unwrap_err(), MonodromyError::NotUnimodular);
    }

    #[test]
    fn conjugation_reaches_published_normal_forms() {
        for row in &ROWS {
            let got = conjugate(&matrix(&row.a), &matrix(&row.m_prime)).unwrap();
            assert_eq!(got, matrix(&row.a_prime), "{}", row.name);
        }
    }

    #[test]
    fn conjugation_preserves_det_and_trace() {
        for row in &ROWS {
            let a = matrix(&row.a);
            let got = conjugate(&a, &matrix(&row.m_prime)).unwrap();
            assert_eq!(got.det(), a.det());
            assert_eq!(got.trace(), a.trace());
        }
    }

    #[test]
    fn infinity_of_inverse_twist_is_identity() {
        let t_inv = boundary_twist().inverse().unwrap();
        assert_eq!(monodromy_at_infinity(&t_inv).unwrap(), IntMatrix::identity(4));
    }

    #[test]
    fn infinity_matches_closed_form() {
        for row in &ROWS {
            let t_inf = monodromy_at_infinity(&matrix(&row.a_prime)).unwrap();
            let expected =
                t_infinity_template(&BigInt::from(row.lambda), &BigInt::from(row.mu));
            assert_eq!(t_inf, expected, "{}", row.name);
        }
    }

    #[test]
    fn unipotence_of_table_monodromies() {
        assert!(is_unipotent(&IntMatrix::identity(4)));
        for row in &ROWS {
            let t_inf = monodromy_at_infinity(&matrix(&row.a_prime)).unwrap();
            assert!(is_unipotent(&t_inf), "{}", row.name);
            let shifted = &t_inf - &IntMatrix::identity(4);
            assert!(shifted.pow(4).is_zero());
            assert!(!shifted.pow(3).is_zero(), "index must be exactly 4");
        }
        let mut diag = IntMatrix::identity(4);
        diag.set(0, 0, BigInt::from(2));
        assert!(!is_unipotent(&diag));
    }

    #[test]
    fn log_of_identity_is_zero() {
        assert!(nilpotent_log(&IntMatrix::identity(4)).unwrap().is_zero());
    }

    #[test]
    fn log_rejects_non_unipotent() {
        let mut diag = IntMatrix::identity(4);
        diag.set(0, 0, BigInt::from(2));
        assert_eq!(nilpotent_log(&diag).unwrap_err(), MonodromyError::NotUnipotent);
    }

    #[test]
    fn exp_inverts_log_on_table_monodromies() {
        for row in &ROWS {
            let t_inf = monodromy_at_infinity(&matrix(&row.a_prime)).unwrap();
            let n = nilpotent_log(&t_inf).unwrap();
            // n = -log T, so exp(-n) must reproduce T.
            let minus_n = {
                let mut m = n.clone();
                for i in 0..4 {
                    for j in 0..4 {
                        m.set(i, j, -n.at(i, j));
                    }
                }
                m
            };
            assert_eq!(nilpotent_exp(&minus_n).unwrap(), t_inf.to_rat(), "{}", row.name);
        }
    }

    #[test]
    fn cube_of_log_concentrates_at_lambda() {
        for row in &ROWS {
            let n = nilpotent_log(&monodromy_at_infinity(&matrix(&row.a_prime)).unwrap()).unwrap();
            let cube = n.pow(3);
            let mut expected = RatMatrix::zero(4, 4);
            expected.set(3, 1, rat(row.lambda));
            assert_eq!(cube, expected, "{}", row.name);
            assert_eq!(lambda_check(&n).unwrap(), rat(row.lambda), "{}", row.name);
        }
    }

    #[test]
    fn lambda_check_rejects_zero_cube() {
        let zero = RatMatrix::zero(4, 4);
        match lambda_check(&zero).unwrap_err() {
            MonodromyError::WrongShape { cube } => assert!(cube.is_zero()),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn primitivity_of_single_entry_matrices() {
        let mut e42 = RatMatrix::zero(4, 4);
        e42.set(3, 1, rat(1));
        assert!(primitivity_check(&e42));
        let mut doubled = RatMatrix::zero(4, 4);
        doubled.set(3, 1, rat(2));
        assert!(!primitivity_check(&doubled));
        let mut fractional = RatMatrix::zero(4, 4);
        fractional.set(3, 1, frac(1, 2));
        assert!(!primitivity_check(&fractional));
        assert!(!primitivity_check(&RatMatrix::identity(4)));
    }

    #[test]
    fn zero_log_is_not_maximally_unipotent() {
        let report = mum_classify(&[RatMatrix::zero(4, 4)], &[rat(1)]).unwrap();
        assert_eq!((report.dim_w0, report.dim_w1, report.dim_w2), (0, 0, 0));
        assert!(!report.is_mum);
    }

    #[test]
    fn quintic_boundary_is_maximally_unipotent() {
        let n = nilpotent_log(&quintic_t_infinity()).unwrap();
        let report = mum_classify(&[n], &[rat(1)]).unwrap();
        assert_eq!((report.dim_w0, report.dim_w1, report.dim_w2), (1, 1, 2));
        assert!(report.invertible);
        assert!(report.invertible_over_z);
        assert!(report.is_mum);
        assert_eq!(report.m_matrix.rows(), 1);
        let entry = report.m_matrix.at(0, 0);
        assert!(entry.abs() == rat(1), "unit coefficient, got {entry}");
    }

    #[test]
    fn all_table_boundaries_classify_as_mum() {
        for row in &ROWS {
            let n =
                nilpotent_log(&monodromy_at_infinity(&matrix(&row.a_prime)).unwrap()).unwrap();
            let report = mum_classify(&[n], &[rat(1)]).unwrap();
            assert!(report.is_mum, "{}", row.name);
            assert!(report.invertible_over_z, "{}", row.name);
        }
    }

    #[test]
    fn classification_ignores_weight_choice() {
        let n = nilpotent_log(&quintic_t_infinity()).unwrap();
        let a = mum_classify(&[n.clone()], &[rat(1)]).unwrap();
        let b = mum_classify(&[n.clone()], &[rat(7)]).unwrap();
        let c = mum_classify(&[n], &[frac(3, 2)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn classification_ignores_integral_frame_choice() {
        // Conjugating by a unimodular frame moves the filtration but not
        // the verdict.
        let frames = [
            IntMatrix::from_rows(&[&[1, 2, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 3, 1]]),
            IntMatrix::from_rows(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[5, 0, -1, 0]]),
        ];
        let n = nilpotent_log(&quintic_t_infinity()).unwrap();
        let base = mum_classify(&[n.clone()], &[rat(1)]).unwrap();
        for p in &frames {
            assert!(p.is_unimodular());
            let p_rat = p.to_rat();
            let p_inv = p_rat.inverse().unwrap();
            let moved = &(&p_rat * &n) * &p_inv;
            let report = mum_classify(&[moved], &[rat(1)]).unwrap();
            assert_eq!(
                (report.dim_w0, report.dim_w1, report.dim_w2),
                (base.dim_w0, base.dim_w1, base.dim_w2)
            );
            assert_eq!(report.invertible, base.invertible);
            assert_eq!(report.invertible_over_z, base.invertible_over_z);
            assert_eq!(report.is_mum, base.is_mum);
        }
    }

    #[test]
    fn classify_rejects_bad_inputs() {
        assert_eq!(
            mum_classify(&[], &[]).unwrap_err(),
            MonodromyError::DimensionMismatch
        );
        assert_eq!(
            mum_classify(&[RatMatrix::zero(4, 4)], &[]).unwrap_err(),
            MonodromyError::DimensionMismatch
        );
        assert_eq!(
            mum_classify(&[RatMatrix::zero(4, 4)], &[rat(-1)]).unwrap_err(),
            MonodromyError::NonPositiveWeight
        );
        assert_eq!(
            mum_classify(&[RatMatrix::identity(4)], &[rat(1)]).unwrap_err(),
            MonodromyError::NotNilpotent
        );
    }

    #[test]
    fn full_verification_of_all_rows() {
        for row in &ROWS {
            let result = verify_table_row(
                &matrix(&row.a),
                &matrix(&row.m_prime),
                &matrix(&row.a_prime),
                row.lambda,
                row.mu,
            );
            assert_eq!(result, Ok(()), "{}", row.name);
        }
    }

    #[test]
    fn tampered_lambda_fails_at_lambda_stage() {
        let row = &ROWS[0];
        let result = verify_table_row(
            &matrix(&row.a),
            &matrix(&row.m_prime),
            &matrix(&row.a_prime),
            4,
            row.mu,
        );
        assert_eq!(result, Err(RowFailure::Lambda { found: rat(5) }));
    }

    #[test]
    fn tampered_matrix_fails_at_conjugation_stage() {
        let row = &ROWS[0];
        let mut a = matrix(&row.a);
        a.set(0, 0, BigInt::from(-8));
        let result = verify_table_row(
            &a,
            &matrix(&row.m_prime),
            &matrix(&row.a_prime),
            row.lambda,
            row.mu,
        );
        assert!(matches!(result, Err(RowFailure::Conjugation { .. })));
    }

    #[test]
    fn tampered_mu_fails_at_parameter_stage() {
        let row = &ROWS[0];
        let result = verify_table_row(
            &matrix(&row.a),
            &matrix(&row.m_prime),
            &matrix(&row.a_prime),
            row.lambda,
            6,
        );
        assert_eq!(
            result,
            Err(RowFailure::Mu {
                found: BigInt::from(5)
            })
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn log_and_exp_invert_on_random_unipotents(
            upper in proptest::collection::vec(-6i64..=6, 6)
        ) {
            // I plus a strictly upper triangular part is always unipotent.
            let mut m = IntMatrix::identity(4);
            let mut it = upper.into_iter();
            for i in 0..4 {
                for j in (i + 1)..4 {
                    m.set(i, j, BigInt::from(it.next().unwrap()));
                }
            }
            let n = nilpotent_log(&m).unwrap();
            let minus_n = {
                let mut x = n.clone();
                for i in 0..4 {
                    for j in 0..4 {
                        x.set(i, j, -n.at(i, j));
                    }
                }
                x
            };
            prop_assert_eq!(nilpotent_exp(&minus_n).unwrap(), m.to_rat());
        }
    }
}
