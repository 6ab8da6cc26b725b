//! Regular octonionic polynomials `f(w) = sum w^i a_i` (coefficients on the
//! right) and real polynomials.

use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::octonion::Octonion;
use crate::tolerance::Tolerances;

/// Which side a constant multiplies a polynomial from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Polynomial with right octonionic coefficients, lowest degree first.
///
/// The coefficient vector never ends in an exact zero; the zero polynomial
/// has no coefficients.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct OctPoly {
    coeffs: Vec<Octonion>,
}

impl OctPoly {
    pub fn new(mut coeffs: Vec<Octonion>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Octonion::ZERO) {
            coeffs.pop();
        }
        OctPoly { coeffs }
    }

    pub fn zero() -> Self {
        OctPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Octonion) -> Self {
        OctPoly::new(vec![c])
    }

    /// `w - alpha`.
    pub fn linear(alpha: Octonion) -> Self {
        OctPoly::new(vec![-alpha, Octonion::ONE])
    }

    /// `w^n c`.
    pub fn monomial(n: usize, c: Octonion) -> Self {
        let mut coeffs = vec![Octonion::ZERO; n + 1];
        coeffs[n] = c;
        OctPoly::new(coeffs)
    }

    pub fn from_real(p: &RealPoly) -> Self {
        OctPoly::new(p.coeffs.iter().map(|&c| Octonion::real(c)).collect())
    }

    pub fn coeffs(&self) -> &[Octonion] {
        &self.coeffs
    }

    /// Coefficient of `w^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Octonion {
        self.coeffs.get(i).copied().unwrap_or(Octonion::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// All coefficients real (exactly).
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im() == Octonion::ZERO)
    }

    pub fn is_quaternionic(&self) -> bool {
        self.coeffs.iter().all(Octonion::is_quaternion)
    }

    /// Largest coefficient norm.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(Octonion::norm).fold(0.0, f64::max)
    }

    /// `sum |a_i| rho^i`, the natural magnitude of `f` on the ball of radius `rho`.
    pub fn magnitude_at(&self, rho: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * rho + c.norm())
    }

    /// Drops trailing coefficients with norm `<= tol.abs + tol.rel * scale`.
    pub fn trimmed(mut self, tol: &Tolerances, scale: f64) -> Self {
        while self
            .coeffs
            .last()
            .is_some_and(|c| tol.is_negligible(c.norm(), scale))
        {
            self.coeffs.pop();
        }
        self
    }

    /// `(f * g)_k = sum_{i+j=k} a_i b_j`: the product with `w` commuting
    /// with the coefficients.
    pub fn star_mul(&self, g: &OctPoly) -> OctPoly {
        if self.is_zero() || g.is_zero() {
            return OctPoly::zero();
        }
        let mut out = vec![Octonion::ZERO; self.coeffs.len() + g.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in g.coeffs.iter().enumerate() {
                out[i + j] += *a * *b;
            }
        }
        OctPoly::new(out)
    }

    /// `conj(f)(w) = sum w^i conj(a_i)`.
    pub fn conj(&self) -> OctPoly {
        OctPoly {
            coeffs: self.coeffs.iter().map(Octonion::conj).collect(),
        }
    }

    /// `f(x) = sum x^i a_i` with the powers of `x` multiplied by each
    /// coefficient on the right.
    pub fn evaluate(&self, x: &Octonion) -> Octonion {
        let mut power = Octonion::ONE;
        let mut acc = Octonion::ZERO;
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power * *x;
            }
            acc += power * *a;
        }
        acc
    }

    /// Normal polynomial `N(f) = f * conj(f)`.
    ///
    /// Both `f * conj(f)` and `conj(f) * f` are formed; each must be real and
    /// the two must agree, coefficient by coefficient, to within
    /// `tol.abs + tol.rel * sum_{i+j=k} |a_i||a_j|`.
    pub fn normal(&self, tol: &Tolerances) -> Result<RealPoly> {
        let fc = self.conj();
        let left = self.star_mul(&fc);
        let right = fc.star_mul(self);
        let norms: Vec<f64> = self.coeffs.iter().map(Octonion::norm).collect();
        let mut out = Vec::with_capacity(left.coeffs.len());
        for k in 0..left.coeffs.len() {
            let scale: f64 = (0..=k)
                .filter(|&i| i < norms.len() && k - i < norms.len())
                .map(|i| norms[i] * norms[k - i])
                .sum();
            let l = left.coeff(k);
            let r = right.coeff(k);
            let residual = l.im().norm().max(r.im().norm()).max((l - r).norm());
            if !tol.is_negligible(residual, scale) {
                return Err(Error::RealityViolation {
                    degree: k,
                    residual,
                });
            }
            out.push(0.5 * (l.re() + r.re()));
        }
        Ok(RealPoly::new(out))
    }

    /// Multiplies every coefficient by `c` from the given side.
    pub fn scale(&self, c: &Octonion, side: Side) -> OctPoly {
        OctPoly::new(
            self.coeffs
                .iter()
                .map(|a| match side {
                    Side::Left => *c * *a,
                    Side::Right => *a * *c,
                })
                .collect(),
        )
    }

    pub fn scale_real(&self, s: f64) -> OctPoly {
        OctPoly::new(self.coeffs.iter().map(|a| *a * s).collect())
    }

    /// Coefficientwise sum, trailing near-zero coefficients dropped
    /// relative to the larger operand.
    pub fn add_with(&self, g: &OctPoly, tol: &Tolerances) -> OctPoly {
        let scale = self.max_coeff_norm().max(g.max_coeff_norm());
        let n = self.coeffs.len().max(g.coeffs.len());
        OctPoly::new((0..n).map(|i| self.coeff(i) + g.coeff(i)).collect()).trimmed(tol, scale)
    }

    pub fn sub_with(&self, g: &OctPoly, tol: &Tolerances) -> OctPoly {
        self.add_with(&-g.clone(), tol)
    }

    /// Multiplies by the real polynomial `p`; this equals both `p * f` and
    /// `f * p` since real coefficients are central.
    pub fn mul_real(&self, p: &RealPoly) -> OctPoly {
        self.star_mul(&OctPoly::from_real(p))
    }

    /// Real part of every coefficient, for polynomials known to be real.
    pub fn real_parts(&self) -> RealPoly {
        RealPoly::new(self.coeffs.iter().map(Octonion::re).collect())
    }

    /// Formal derivative in the real variable.
    pub fn derivative(&self) -> OctPoly {
        OctPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| *c * i as f64)
                .collect(),
        )
    }

    /// Coefficientwise max-norm distance.
    pub fn max_coeff_distance(&self, other: &OctPoly) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|i| (self.coeff(i) - other.coeff(i)).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for &OctPoly {
    type Output = OctPoly;
    fn add(self, g: &OctPoly) -> OctPoly {
        self.add_with(g, &Tolerances::default())
    }
}

impl Sub for &OctPoly {
    type Output = OctPoly;
    fn sub(self, g: &OctPoly) -> OctPoly {
        self.sub_with(g, &Tolerances::default())
    }
}

impl Neg for OctPoly {
    type Output = OctPoly;
    fn neg(self) -> OctPoly {
        OctPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

/// Polynomial with real coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RealPoly {
    coeffs: Vec<f64>,
}

impl RealPoly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last().is_some_and(|&c| c == 0.0) {
            coeffs.pop();
        }
        RealPoly { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        RealPoly::new(vec![c])
    }

    pub fn one() -> Self {
        RealPoly::constant(1.0)
    }

    /// `prod (w - r)` over the given real roots.
    pub fn from_real_roots(roots: &[f64]) -> Self {
        roots.iter().fold(RealPoly::one(), |acc, &r| {
            acc.mul(&RealPoly::new(vec![-r, 1.0]))
        })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn mul(&self, other: &RealPoly) -> RealPoly {
        if self.is_zero() || other.is_zero() {
            return RealPoly::default();
        }
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> RealPoly {
        (0..e).fold(RealPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn add(&self, other: &RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RealPoly::new(
            (0..n)
                .map(|i| self.coeff(i) + other.coeff(i))
                .collect(),
        )
    }

    pub fn coeff(&self, i: usize) -> f64 {
        self.coeffs.get(i).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `sum |p_i| rho^i`.
    pub fn magnitude_at(&self, rho: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * rho + c.abs())
    }

    pub fn derivative(&self) -> RealPoly {
        RealPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| i as f64 * c)
                .collect(),
        )
    }

    /// Euclidean division `self = divisor * q + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &RealPoly) -> Result<(RealPoly, RealPoly)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZeroPoly);
        };
        let lead = divisor.leading();
        let Some(pd) = self.degree().filter(|&pd| pd >= dd) else {
            return Ok((RealPoly::default(), self.clone()));
        };
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0.0; pd - dd + 1];
        for k in (0..=pd - dd).rev() {
            let q = rem[k + dd] / lead;
            quot[k] = q;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= q * d;
            }
            rem[k + dd] = 0.0;
        }
        rem.truncate(dd);
        Ok((RealPoly::new(quot), RealPoly::new(rem)))
    }

    pub fn max_coeff_distance(&self, other: &RealPoly) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|i| (self.coeff(i) - other.coeff(i)).abs())
            .fold(0.0, f64::max)
    }
}

/// Free-function forms of the polynomial operations.
pub fn star_mul(f: &OctPoly, g: &OctPoly) -> OctPoly {
    f.star_mul(g)
}

pub fn conj_poly(f: &OctPoly) -> OctPoly {
    f.conj()
}

pub fn normal(f: &OctPoly, tol: &Tolerances) -> Result<RealPoly> {
    f.normal(tol)
}

pub fn evaluate(f: &OctPoly, x: &Octonion) -> Octonion {
    f.evaluate(x)
}

pub fn real_div_rem(p: &RealPoly, d: &RealPoly) -> Result<(RealPoly, RealPoly)> {
    p.div_rem(d)
}
