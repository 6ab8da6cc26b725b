//! Octonion arithmetic built by the Cayley–Dickson doubling of the quaternions.
//!
//! Coordinates are stored in the basis order `(1, i, j, ij, k, ik, jk, (ij)k)`.
//! The first four coordinates form the quaternion subalgebra `H = <1, i, j>`;
//! an octonion `x = x1 + x2 k` with `x1, x2 in H` is stored as `[x1, x2]`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::RealPoly;
use crate::tolerance::Tolerances;

/// Quaternion in the basis `(1, i, j, ij)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct Quaternion(pub(crate) [f64; 4]);

impl Quaternion {
    #[inline]
    pub(crate) fn conj(self) -> Self {
        let [a, b, c, d] = self.0;
        Quaternion([a, -b, -c, -d])
    }

    /// Hamilton product with `k_H = ij`.
    #[inline]
    pub(crate) fn mul(self, o: Self) -> Self {
        let [a1, b1, c1, d1] = self.0;
        let [a2, b2, c2, d2] = o.0;
        Quaternion([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])
    }

    #[inline]
    fn add(self, o: Self) -> Self {
        let mut r = self.0;
        for (x, y) in r.iter_mut().zip(o.0) {
            *x += y;
        }
        Quaternion(r)
    }

    #[inline]
    fn sub(self, o: Self) -> Self {
        let mut r = self.0;
        for (x, y) in r.iter_mut().zip(o.0) {
            *x -= y;
        }
        Quaternion(r)
    }
}

/// An element of the octonion algebra.
#[derive(Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "[f64; 8]", into = "[f64; 8]")]
pub struct Octonion([f64; 8]);

/// Labels of the basis elements, in storage order.
pub const BASIS_LABELS: [&str; 8] = ["1", "i", "j", "ij", "k", "ik", "jk", "ijk"];

impl Octonion {
    pub const ZERO: Octonion = Octonion([0.0; 8]);
    pub const ONE: Octonion = Octonion::basis(0);
    pub const I: Octonion = Octonion::basis(1);
    pub const J: Octonion = Octonion::basis(2);
    pub const IJ: Octonion = Octonion::basis(3);
    pub const K: Octonion = Octonion::basis(4);
    pub const IK: Octonion = Octonion::basis(5);
    pub const JK: Octonion = Octonion::basis(6);
    pub const IJK: Octonion = Octonion::basis(7);

    #[inline]
    pub const fn new(coords: [f64; 8]) -> Self {
        Octonion(coords)
    }

    /// Like [`Octonion::new`] but rejects NaN and infinite coordinates.
    pub fn try_new(coords: [f64; 8]) -> Result<Self> {
        if coords.iter().all(|c| c.is_finite()) {
            Ok(Octonion(coords))
        } else {
            Err(Error::NonFinite)
        }
    }

    /// The `n`-th basis element, `0 <= n < 8`.
    pub const fn basis(n: usize) -> Self {
        let mut c = [0.0; 8];
        c[n] = 1.0;
        Octonion(c)
    }

    #[inline]
    pub const fn real(r: f64) -> Self {
        Octonion([r, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
    }

    /// Quaternion `a + b i + c j + d ij`.
    #[inline]
    pub const fn quaternion(a: f64, b: f64, c: f64, d: f64) -> Self {
        Octonion([a, b, c, d, 0.0, 0.0, 0.0, 0.0])
    }

    #[inline]
    pub fn coords(&self) -> &[f64; 8] {
        &self.0
    }

    #[inline]
    pub fn re(&self) -> f64 {
        self.0[0]
    }

    /// Imaginary part `x - re(x)`.
    #[inline]
    pub fn im(&self) -> Octonion {
        let mut c = self.0;
        c[0] = 0.0;
        Octonion(c)
    }

    #[inline]
    pub(crate) fn halves(&self) -> (Quaternion, Quaternion) {
        let c = &self.0;
        (
            Quaternion([c[0], c[1], c[2], c[3]]),
            Quaternion([c[4], c[5], c[6], c[7]]),
        )
    }

    #[inline]
    pub(crate) fn from_halves(x1: Quaternion, x2: Quaternion) -> Self {
        let (a, b) = (x1.0, x2.0);
        Octonion([a[0], a[1], a[2], a[3], b[0], b[1], b[2], b[3]])
    }

    /// `(x1 + x2 k)(y1 + y2 k) = (x1 y1 - conj(y2) x2) + (x2 conj(y1) + y2 x1) k`.
    pub fn mul(&self, y: &Octonion) -> Octonion {
        let (x1, x2) = self.halves();
        let (y1, y2) = y.halves();
        let first = x1.mul(y1).sub(y2.conj().mul(x2));
        let second = x2.mul(y1.conj()).add(y2.mul(x1));
        Octonion::from_halves(first, second)
    }

    #[inline]
    pub fn conj(&self) -> Octonion {
        let c = &self.0;
        Octonion([c[0], -c[1], -c[2], -c[3], -c[4], -c[5], -c[6], -c[7]])
    }

    /// `x + conj(x) = 2 re(x)`.
    #[inline]
    pub fn trace(&self) -> f64 {
        2.0 * self.0[0]
    }

    #[inline]
    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// `conj(x) / n_x`; fails when `n_x <= tol.abs`.
    pub fn inverse_with(&self, tol: &Tolerances) -> Result<Octonion> {
        let n = self.norm_sq();
        if n <= tol.abs {
            return Err(Error::DivisionByZero(n));
        }
        Ok(self.conj() / n)
    }

    pub fn inverse(&self) -> Result<Octonion> {
        self.inverse_with(&Tolerances::default())
    }

    /// `x^n` by repeated multiplication; powers of a single element associate.
    pub fn powi(&self, n: usize) -> Octonion {
        let mut acc = Octonion::ONE;
        for _ in 0..n {
            acc = acc * *self;
        }
        acc
    }

    /// `(xy)z - x(yz)`.
    pub fn associator(x: &Octonion, y: &Octonion, z: &Octonion) -> Octonion {
        (*x * *y) * *z - *x * (*y * *z)
    }

    /// Quaternion sub-case: the last four coordinates are exactly zero.
    pub fn is_quaternion(&self) -> bool {
        self.0[4..].iter().all(|&c| c == 0.0)
    }

    pub fn is_real_within(&self, tol: &Tolerances) -> bool {
        tol.is_negligible(self.im().norm(), self.norm())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    /// Exact `(trace, squared norm)` without the nearly-real merge.
    pub fn class(&self) -> ConjugacyClass {
        ConjugacyClass {
            t: self.trace(),
            n: self.norm_sq(),
        }
    }

    /// Unit imaginary direction `im(x)/|im(x)|`, or `None` for real `x`.
    pub fn imaginary_unit(&self) -> Option<Octonion> {
        let im = self.im();
        let m = im.norm();
        (m > 0.0).then(|| im / m)
    }

    /// Largest coordinate-wise absolute difference.
    pub fn max_abs_diff(&self, other: &Octonion) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Octonion, tol: &Tolerances) -> bool {
        let scale = self.norm().max(other.norm());
        tol.is_negligible((*self - *other).norm(), scale)
    }
}

impl TryFrom<[f64; 8]> for Octonion {
    type Error = Error;
    fn try_from(c: [f64; 8]) -> Result<Self> {
        Octonion::try_new(c)
    }
}

impl From<Octonion> for [f64; 8] {
    fn from(x: Octonion) -> Self {
        x.0
    }
}

impl From<f64> for Octonion {
    fn from(r: f64) -> Self {
        Octonion::real(r)
    }
}

impl Index<usize> for Octonion {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl fmt::Debug for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Octonion({:?})", self.0)
    }
}

impl Add for Octonion {
    type Output = Octonion;
    #[inline]
    fn add(self, o: Octonion) -> Octonion {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(o.0) {
            *x += y;
        }
        Octonion(c)
    }
}

impl AddAssign for Octonion {
    #[inline]
    fn add_assign(&mut self, o: Octonion) {
        *self = *self + o;
    }
}

impl Sub for Octonion {
    type Output = Octonion;
    #[inline]
    fn sub(self, o: Octonion) -> Octonion {
        let mut c = self.0;
        for (x, y) in c.iter_mut().zip(o.0) {
            *x -= y;
        }
        Octonion(c)
    }
}

impl SubAssign for Octonion {
    #[inline]
    fn sub_assign(&mut self, o: Octonion) {
        *self = *self - o;
    }
}

impl Neg for Octonion {
    type Output = Octonion;
    #[inline]
    fn neg(self) -> Octonion {
        Octonion(self.0.map(|c| -c))
    }
}

impl Mul for Octonion {
    type Output = Octonion;
    #[inline]
    fn mul(self, o: Octonion) -> Octonion {
        Octonion::mul(&self, &o)
    }
}

impl Mul<f64> for Octonion {
    type Output = Octonion;
    #[inline]
    fn mul(self, s: f64) -> Octonion {
        Octonion(self.0.map(|c| c * s))
    }
}

impl Mul<Octonion> for f64 {
    type Output = Octonion;
    #[inline]
    fn mul(self, x: Octonion) -> Octonion {
        x * self
    }
}

impl Div<f64> for Octonion {
    type Output = Octonion;
    #[inline]
    fn div(self, s: f64) -> Octonion {
        Octonion(self.0.map(|c| c / s))
    }
}

impl std::iter::Sum for Octonion {
    fn sum<I: Iterator<Item = Octonion>>(iter: I) -> Octonion {
        iter.fold(Octonion::ZERO, |a, b| a + b)
    }
}

/// A conjugacy class `S_alpha`, identified by trace `t` and squared norm `n`.
///
/// Non-real classes are 6-spheres `t/2 + sqrt(n - t^2/4) I`, `I^2 = -1`;
/// real classes are single points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub t: f64,
    pub n: f64,
}

impl ConjugacyClass {
    pub fn new(t: f64, n: f64) -> Self {
        ConjugacyClass { t, n }
    }

    /// The class of a real point `r`.
    pub fn real_point(r: f64) -> Self {
        ConjugacyClass { t: 2.0 * r, n: r * r }
    }

    /// `4n - t^2`, four times the squared radius of the sphere.
    #[inline]
    pub fn discriminant(&self) -> f64 {
        4.0 * self.n - self.t * self.t
    }

    pub fn is_real(&self, tol: &Tolerances) -> bool {
        self.discriminant() < tol.class * self.n.max(1.0)
    }

    pub fn validate(&self, tol: &Tolerances) -> Result<()> {
        if !(self.t.is_finite() && self.n.is_finite())
            || self.n < 0.0
            || self.discriminant() < -tol.class * self.n.max(1.0)
        {
            return Err(Error::InvalidClass {
                t: self.t,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Real part `t/2` shared by every element of the class.
    #[inline]
    pub fn center(&self) -> f64 {
        self.t / 2.0
    }

    /// Radius `|im(alpha)|` of the sphere, clamped at zero.
    #[inline]
    pub fn radius(&self) -> f64 {
        (self.discriminant().max(0.0) / 4.0).sqrt()
    }

    /// `Delta(w) = w^2 - t w + n`.
    pub fn char_poly(&self) -> RealPoly {
        RealPoly::new(vec![self.n, -self.t, 1.0])
    }

    /// Canonical representative `t/2 + sqrt(n - t^2/4) i` on the slice `C_i`.
    pub fn representative(&self, tol: &Tolerances) -> Result<Octonion> {
        self.validate(tol)?;
        if self.is_real(tol) {
            return Ok(Octonion::real(self.center()));
        }
        Ok(self.point_on(&Octonion::I))
    }

    /// The point `t/2 + radius * unit` for an imaginary unit `unit`.
    pub fn point_on(&self, unit: &Octonion) -> Octonion {
        Octonion::real(self.center()) + *unit * self.radius()
    }

    /// Whether `other` describes the same class within `tol.class`.
    pub fn matches(&self, other: &ConjugacyClass, tol: &Tolerances) -> bool {
        let scale = self.n.abs().max(other.n.abs()).max(1.0);
        (self.t - other.t).abs() <= tol.class * scale.sqrt().max(1.0)
            && (self.n - other.n).abs() <= tol.class * scale
    }

    /// Total order used to make class listings deterministic.
    pub fn cmp_key(&self, other: &ConjugacyClass) -> std::cmp::Ordering {
        self.t
            .total_cmp(&other.t)
            .then_with(|| self.n.total_cmp(&other.n))
    }
}

/// `(trace, squared norm)` of `x`, snapped to a real class when
/// `4n - t^2 < tol.class * max(1, n)`.
pub fn class_of(x: &Octonion, tol: &Tolerances) -> ConjugacyClass {
    let c = x.class();
    if c.is_real(tol) {
        ConjugacyClass::real_point(c.center())
    } else {
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(c: [f64; 8]) -> Octonion {
        Octonion::new(c)
    }

    #[test]
    fn identity_and_basis_products() {
        let x = o([0.3, -1.0, 2.0, 0.5, -0.25, 4.0, 1.5, -3.0]);
        assert_eq!(Octonion::ONE * x, x);
        assert_eq!(x * Octonion::ONE, x);
        assert_eq!(Octonion::I * Octonion::J, Octonion::IJ);
        assert_eq!(Octonion::I * Octonion::K, Octonion::IK);
        assert_eq!(Octonion::J * Octonion::K, Octonion::JK);
        assert_eq!(Octonion::IJ * Octonion::K, Octonion::IJK);
    }

    #[test]
    fn cayley_dickson_is_not_associative() {
        let left = (Octonion::I * Octonion::J) * Octonion::K;
        let right = Octonion::I * (Octonion::J * Octonion::K);
        assert_eq!(left, Octonion::IJK);
        assert_eq!(right, -Octonion::IJK);
    }

    #[test]
    fn every_imaginary_basis_element_squares_to_minus_one() {
        for n in 1..8 {
            let e = Octonion::basis(n);
            assert_eq!(e * e, -Octonion::ONE, "e{n}");
        }
    }

    #[test]
    fn conjugation() {
        assert_eq!(Octonion::ONE.conj(), Octonion::ONE);
        assert_eq!(Octonion::I.conj(), -Octonion::I);
        let x = Octonion::real(2.0) + Octonion::I * 3.0 - Octonion::K;
        assert_eq!(
            x.conj(),
            Octonion::real(2.0) - Octonion::I * 3.0 + Octonion::K
        );
    }

    #[test]
    fn trace_and_norm() {
        let x = Octonion::real(3.0) + Octonion::I;
        assert_eq!(x.trace(), 6.0);
        assert_eq!(x.norm_sq(), 10.0);
        assert_eq!((Octonion::I + Octonion::J).norm_sq(), 2.0);
    }

    #[test]
    fn inverses() {
        assert_eq!(Octonion::real(2.0).inverse().unwrap(), Octonion::real(0.5));
        assert_eq!(Octonion::I.inverse().unwrap(), -Octonion::I);
        let x = Octonion::I + Octonion::J;
        assert_eq!(x.inverse().unwrap(), -(Octonion::I + Octonion::J) / 2.0);
        assert!(matches!(
            Octonion::ZERO.inverse(),
            Err(Error::DivisionByZero(_))
        ));
        assert!(Octonion::real(1e-10).inverse().is_err());
    }

    #[test]
    fn classes_and_representatives() {
        let tol = Tolerances::default();
        assert_eq!(class_of(&Octonion::I, &tol), ConjugacyClass::new(0.0, 1.0));
        let beta = Octonion::real(0.5) + Octonion::I * (3f64.sqrt() / 2.0);
        let c = class_of(&beta, &tol);
        assert!((c.t - 1.0).abs() < 1e-15 && (c.n - 1.0).abs() < 1e-15);
        assert_eq!(class_of(&beta.conj(), &tol), c);

        assert_eq!(
            ConjugacyClass::new(0.0, 1.0).representative(&tol).unwrap(),
            Octonion::I
        );
        let rep = ConjugacyClass::new(1.0, 1.0).representative(&tol).unwrap();
        assert!(rep.max_abs_diff(&beta) < 1e-15);
        assert_eq!(
            ConjugacyClass::new(6.0, 9.0).representative(&tol).unwrap(),
            Octonion::real(3.0)
        );
        assert!(matches!(
            ConjugacyClass::new(4.0, 1.0).representative(&tol),
            Err(Error::InvalidClass { .. })
        ));
    }

    #[test]
    fn nearly_real_classes_are_snapped() {
        let tol = Tolerances::default();
        let x = Octonion::real(2.0) + Octonion::J * 1e-6;
        let c = class_of(&x, &tol);
        assert_eq!(c, ConjugacyClass::real_point(2.0));
        assert!(c.is_real(&tol));
    }

    #[test]
    fn char_poly_coefficients() {
        assert_eq!(
            ConjugacyClass::new(0.0, 1.0).char_poly().coeffs(),
            &[1.0, 0.0, 1.0]
        );
        assert_eq!(
            ConjugacyClass::new(1.0, 1.0).char_poly().coeffs(),
            &[1.0, -1.0, 1.0]
        );
        // real class: (w - 3)^2
        assert_eq!(
            ConjugacyClass::real_point(3.0).char_poly().coeffs(),
            &[9.0, -6.0, 1.0]
        );
    }

    #[test]
    fn quaternion_closure_is_exact() {
        let a = Octonion::quaternion(0.3, -1.2, 0.7, 2.5);
        let b = Octonion::quaternion(-0.9, 0.4, 1.1, -0.6);
        assert!((a * b).is_quaternion());
        assert!(!(a * Octonion::K).is_quaternion());
    }
}
