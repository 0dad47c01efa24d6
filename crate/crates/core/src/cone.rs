//! Integral subdivision of a planar cone whose walls have quadratic
//! irrational slopes, and the cone automorphism identifying its rays.
//!
//! Rays live in the upper half-plane (y > 0, with (1, 0) as the one
//! horizontal exception). The wall quadratic a s^2 + b s + c = 0 carries
//! slopes s = y/x; membership never divides, it evaluates the associated
//! integer form Q(x, y) = a y^2 + b x y + c x^2 and tests signs.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rat::{BigInt, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeError {
    /// (0, 0) spans nothing.
    ZeroRay,
    /// The discriminant is a perfect square, so the walls are rational
    /// and the subdivision would terminate at a wall ray.
    RationalWalls,
    /// Negative discriminant: no real walls at all.
    NoRealWalls,
}

impl fmt::Display for ConeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeError::ZeroRay => write!(f, "ray must be nonzero"),
            ConeError::RationalWalls => write!(f, "wall slopes are rational"),
            ConeError::NoRealWalls => write!(f, "wall quadratic has no real roots"),
        }
    }
}

impl core::error::Error for ConeError {}

/// Primitive integral direction, sign-normalized into the upper
/// half-plane (or pointing right when horizontal).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    x: BigInt,
    y: BigInt,
}

impl Ray {
    pub fn new(x: BigInt, y: BigInt) -> Result<Ray, ConeError> {
        if x.is_zero() && y.is_zero() {
            return Err(ConeError::ZeroRay);
        }
        let g = x.gcd(&y);
        let mut x = x / &g;
        let mut y = y / &g;
        if y.is_negative() || (y.is_zero() && x.is_negative()) {
            x = -x;
            y = -y;
        }
        Ok(Ray { x, y })
    }

    pub fn from_ints(x: i64, y: i64) -> Result<Ray, ConeError> {
        Ray::new(BigInt::from(x), BigInt::from(y))
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    /// Slope y/x in lowest terms; the vertical ray prints as 1/0.
    pub fn slope_string(&self) -> alloc::string::String {
        use alloc::format;
        let mut num = self.y.clone();
        let mut den = self.x.clone();
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if den.is_one() {
            format!("{num}")
        } else {
            format!("{num}/{den}")
        }
    }
}

/// |x1 y2 - x2 y1| = 1: the pair is a lattice basis.
pub fn unimodular_pair(a: &Ray, b: &Ray) -> bool {
    (&a.x * &b.y - &b.x * &a.y).abs().is_one()
}

/// Walls with slopes the two real irrational roots of a s^2 + b s + c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallQuadratic {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl WallQuadratic {
    pub fn new(a: i64, b: i64, c: i64) -> Result<WallQuadratic, ConeError> {
        let (a, b, c) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
        let disc = &b * &b - BigInt::from(4) * &a * &c;
        if disc.is_negative() {
            return Err(ConeError::NoRealWalls);
        }
        let root = disc.sqrt();
        if &root * &root == disc {
            return Err(ConeError::RationalWalls);
        }
        Ok(WallQuadratic { a, b, c })
    }

    /// Q(x, y) = a y^2 + b x y + c x^2, the homogenized wall form.
    pub fn form(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * y * y + &self.b * x * y + &self.c * x * x
    }

    /// Strictly between the walls, on the y > 0 side. In the ratio
    /// t = x/y the walls are the roots of c t^2 + b t + a, and a point is
    /// between them exactly when c * Q < 0.
    pub fn is_inside(&self, ray: &Ray) -> bool {
        ray.y.is_positive() && (&self.c * self.form(&ray.x, &ray.y)).is_negative()
    }

    fn is_inside_raw(&self, x: &BigInt, y: &BigInt) -> bool {
        y.is_positive() && (&self.c * self.form(x, y)).is_negative()
    }

    /// t = p/q (q > 0) lies left of both walls.
    fn below(&self, p: &BigInt, q: &BigInt) -> bool {
        if self.is_inside_raw(p, q) {
            return false;
        }
        let vertex = Rat::new(-&self.b, BigInt::from(2) * &self.c);
        Rat::new(p.clone(), q.clone()) < vertex
    }
}

/// The distinguished ray: the one whose ratio t = x/y is the simplest
/// fraction strictly between the walls (smallest integer by absolute
/// value if one fits, Stern-Brocot mediant refinement otherwise).
fn central_ray(walls: &WallQuadratic) -> Ray {
    // Cauchy bound on the wall ratios.
    let scale = walls.a.abs().max(walls.b.abs());
    let bound: i64 = 2 + i64::try_from(scale / walls.c.abs()).unwrap_or(i64::MAX - 2);
    for k in 0..=bound {
        for m in [k, -k] {
            let (p, q) = (BigInt::from(m), BigInt::one());
            if walls.is_inside_raw(&p, &q) {
                return Ray { x: p, y: q };
            }
        }
    }
    // No integer ratio inside: the whole interval sits between two
    // consecutive integers; refine by mediants.
    for m in -bound - 1..=bound {
        let p = BigInt::from(m);
        let succ = BigInt::from(m + 1);
        if walls.below(&p, &BigInt::one()) && !walls.below(&succ, &BigInt::one()) {
            let (mut lp, mut lq) = (p, BigInt::one());
            let (mut rp, mut rq) = (succ, BigInt::one());
            loop {
                let mp = &lp + &rp;
                let mq = &lq + &rq;
                if walls.is_inside_raw(&mp, &mq) {
                    return Ray { x: mp, y: mq };
                }
                if walls.below(&mp, &mq) {
                    (lp, lq) = (mp, mq);
                } else {
                    (rp, rq) = (mp, mq);
                }
            }
        }
    }
    unreachable!("valid walls enclose an open slope interval");
}

/// First subdivision ray on one side of the center: the unimodular
/// neighbor x0 y - y0 x = sign closest to the wall while staying inside.
fn bootstrap_neighbor(walls: &WallQuadratic, center: &Ray, sign: i64) -> Ray {
    let e = center.x.extended_gcd(&center.y);
    debug_assert!(e.gcd.is_one());
    // x0 (u s) - y0 (-v s) = s for u x0 + v y0 = 1.
    let s = BigInt::from(sign);
    let mut x = -&e.y * &s;
    let mut y = &e.x * &s;
    // Slide along the center direction until inside the upper half cone.
    while !y.is_positive() {
        x += &center.x;
        y += &center.y;
    }
    while !walls.is_inside_raw(&x, &y) {
        x += &center.x;
        y += &center.y;
    }
    Ray { x, y }
}

/// Hull step: the next ray is t * cur - prev for the least t >= 2 that
/// stays strictly inside.
fn march(walls: &WallQuadratic, prev: &Ray, cur: &Ray) -> Ray {
    let mut x = BigInt::from(2) * &cur.x - &prev.x;
    let mut y = BigInt::from(2) * &cur.y - &prev.y;
    while !walls.is_inside_raw(&x, &y) {
        x += &cur.x;
        y += &cur.y;
    }
    Ray { x, y }
}

/// 2*count + 1 consecutive primitive rays centered on the distinguished
/// ray, ordered by increasing ratio x/y; consecutive pairs are lattice
/// bases and the ends approach the two walls.
pub fn subdivide_cone(walls: &WallQuadratic, count: usize) -> Vec<Ray> {
    assert!(count >= 1, "need at least one ray per side");
    let center = central_ray(walls);
    let mut right = Vec::with_capacity(count);
    right.push(bootstrap_neighbor(walls, &center, -1));
    let mut left = Vec::with_capacity(count);
    left.push(bootstrap_neighbor(walls, &center, 1));
    for _ in 1..count {
        let prev = if right.len() == 1 { &center } else { &right[right.len() - 2] };
        let next = march(walls, prev, right.last().unwrap());
        right.push(next);
        let prev = if left.len() == 1 { &center } else { &left[left.len() - 2] };
        let next = march(walls, prev, left.last().unwrap());
        left.push(next);
    }
    let mut rays = Vec::with_capacity(2 * count + 1);
    rays.extend(left.into_iter().rev());
    rays.push(center);
    rays.extend(right);
    rays
}

/// The fixed cone automorphism (x, y) -> (2x + 3y, 3x + 5y), with the
/// image renormalized to a primitive upper-half-plane ray.
pub fn apply_automorphism(r: &Ray) -> Ray {
    let x = BigInt::from(2) * &r.x + BigInt::from(3) * &r.y;
    let y = BigInt::from(3) * &r.x + BigInt::from(5) * &r.y;
    Ray::new(x, y).expect("unimodular image of a nonzero ray")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn golden() -> WallQuadratic {
        WallQuadratic::new(1, -1, -1).unwrap()
    }

    fn sqrt2() -> WallQuadratic {
        WallQuadratic::new(2, 0, -1).unwrap()
    }

    fn rays(pairs: &[(i64, i64)]) -> Vec<Ray> {
        pairs.iter().map(|&(x, y)| Ray::from_ints(x, y).unwrap()).collect()
    }

    #[test]
    fn ray_normalization() {
        assert_eq!(Ray::from_ints(-2, -4).unwrap(), Ray::from_ints(1, 2).unwrap());
        assert_eq!(Ray::from_ints(-3, 0).unwrap(), Ray::from_ints(1, 0).unwrap());
        assert_eq!(Ray::from_ints(4, -6).unwrap(), Ray::from_ints(-2, 3).unwrap());
        assert_eq!(Ray::from_ints(0, 0).unwrap_err(), ConeError::ZeroRay);
    }

    #[test]
    fn golden_slope_strings_are_reduced_fractions() {
        let expected = ["-5/8", "-2/3", "-1", "1/0", "2", "5/3", "13/8"];
        let got: Vec<_> = subdivide_cone(&golden(), 3)
            .iter()
            .map(Ray::slope_string)
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn golden_subdivision_exact_rays() {
        let expected = rays(&[(-8, 5), (-3, 2), (-1, 1), (0, 1), (1, 2), (3, 5), (8, 13)]);
        assert_eq!(subdivide_cone(&golden(), 3), expected);
    }

    #[test]
    fn sqrt2_subdivision_exact_rays() {
        // Independent chain: marching strides alternate 4, 2, 4, ...
        let expected = rays(&[
            (-24, 17),
            (-7, 5),
            (-4, 3),
            (-1, 1),
            (0, 1),
            (1, 1),
            (4, 3),
            (7, 5),
            (24, 17),
        ]);
        assert_eq!(subdivide_cone(&sqrt2(), 4), expected);
    }

    #[test]
    fn non_integer_central_ray_via_mediants() {
        // Walls (10 - sqrt 2)/7 and (10 + sqrt 2)/7 in the ratio t = x/y:
        // no integer fits, the simplest fraction between them is 3/2.
        let walls = WallQuadratic::new(14, -20, 7).unwrap();
        let expected = rays(&[(4, 3), (3, 2), (8, 5)]);
        assert_eq!(subdivide_cone(&walls, 1), expected);
    }

    #[test]
    fn consecutive_pairs_are_lattice_bases() {
        for (walls, count) in [(golden(), 6), (sqrt2(), 5), (WallQuadratic::new(14, -20, 7).unwrap(), 4)] {
            let rays = subdivide_cone(&walls, count);
            assert_eq!(rays.len(), 2 * count + 1);
            for pair in rays.windows(2) {
                assert!(unimodular_pair(&pair[0], &pair[1]), "{pair:?}");
            }
        }
    }

    #[test]
    fn emitted_rays_lie_strictly_inside_with_increasing_ratio() {
        for (walls, count) in [(golden(), 6), (sqrt2(), 5), (WallQuadratic::new(1, 1, -1).unwrap(), 5)] {
            let rays = subdivide_cone(&walls, count);
            for r in &rays {
                assert!(walls.is_inside(r), "{r:?}");
            }
            for pair in rays.windows(2) {
                // x1/y1 < x2/y2 with positive y.
                assert!(pair[0].x() * pair[1].y() < pair[1].x() * pair[0].y());
            }
        }
    }

    #[test]
    fn golden_rays_all_represent_one() {
        let walls = golden();
        for r in subdivide_cone(&walls, 6) {
            assert_eq!(walls.form(r.x(), r.y()), BigInt::one());
        }
    }

    #[test]
    fn extending_count_preserves_the_interior() {
        for walls in [golden(), sqrt2()] {
            let small = subdivide_cone(&walls, 3);
            let big = subdivide_cone(&walls, 4);
            assert_eq!(&big[1..8], small.as_slice());
        }
    }

    #[test]
    fn automorphism_on_basis_ray() {
        let image = apply_automorphism(&Ray::from_ints(1, 0).unwrap());
        assert_eq!(image, Ray::from_ints(2, 3).unwrap());
    }

    #[test]
    fn automorphism_shifts_golden_subdivision_by_two() {
        let rays = subdivide_cone(&golden(), 5);
        for i in 0..rays.len() - 2 {
            assert_eq!(apply_automorphism(&rays[i]), rays[i + 2], "index {i}");
        }
    }

    #[test]
    fn automorphism_preserves_unimodularity() {
        let rays = subdivide_cone(&golden(), 4);
        for pair in rays.windows(2) {
            let (a, b) = (apply_automorphism(&pair[0]), apply_automorphism(&pair[1]));
            assert!(unimodular_pair(&a, &b));
        }
    }

    #[test]
    fn degenerate_walls_are_rejected() {
        assert_eq!(WallQuadratic::new(1, 0, -1).unwrap_err(), ConeError::RationalWalls);
        assert_eq!(WallQuadratic::new(0, 1, -1).unwrap_err(), ConeError::RationalWalls);
        assert_eq!(WallQuadratic::new(3, 0, 0).unwrap_err(), ConeError::RationalWalls);
        assert_eq!(WallQuadratic::new(1, 2, 1).unwrap_err(), ConeError::RationalWalls);
        assert_eq!(WallQuadratic::new(1, 0, 1).unwrap_err(), ConeError::NoRealWalls);
    }
}
