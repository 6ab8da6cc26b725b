//! Truncated power series `sum_{n <= N} w^n a_n` with a declared radius of
//! convergence, and division by `w - alpha`.
//!
//! The quotient coefficients are
//! `b_n = alpha^(-1-n) (f(alpha) - sum_{j<=n} alpha^j a_j) = sum_{j>n} alpha^(j-1-n) a_j`.
//! They are evaluated in the second (tail) form, which is a backward Horner
//! recurrence `b_n = a_{n+1} + alpha b_{n+1}` and does not amplify rounding
//! by `|alpha|^-n`. `f(alpha)` is the partial sum over every stored
//! coefficient, so a series stored to order `M` yields quotient coefficients
//! with truncation error of order `|alpha / R|^(M - n)`.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::octonion::Octonion;
use crate::poly::OctPoly;

pub const DEFAULT_ORDER: usize = 64;

/// Declared convergence radius `R` (possibly infinite).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Radius(pub f64);

impl Radius {
    pub const INFINITE: Radius = Radius(f64::INFINITY);
}

impl Serialize for Radius {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Radius {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = Radius;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a positive number or \"inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Radius, E> {
                if v > 0.0 {
                    Ok(Radius(v))
                } else {
                    Err(E::custom("radius must be positive"))
                }
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Radius, E> {
                self.visit_f64(v as f64)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Radius, E> {
                self.visit_f64(v as f64)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Radius, E> {
                match v {
                    "inf" | "infinity" => Ok(Radius::INFINITE),
                    _ => Err(E::custom(format!("unknown radius {v:?}"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// Coefficients `a_0..a_N` of a power series truncated at order `N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SeriesJson")]
pub struct TruncatedSeries {
    coeffs: Vec<Octonion>,
    order: usize,
    radius: Radius,
}

#[derive(Deserialize)]
struct SeriesJson {
    coeffs: Vec<Octonion>,
    order: usize,
    radius: Radius,
}

impl TryFrom<SeriesJson> for TruncatedSeries {
    type Error = String;
    fn try_from(j: SeriesJson) -> std::result::Result<Self, String> {
        if j.coeffs.len() > j.order + 1 {
            return Err(format!(
                "{} coefficients exceed order {}",
                j.coeffs.len(),
                j.order
            ));
        }
        Ok(TruncatedSeries::new(j.coeffs, j.order, j.radius.0))
    }
}

impl TruncatedSeries {
    /// Pads (or truncates) `coeffs` to exactly `order + 1` entries.
    pub fn new(mut coeffs: Vec<Octonion>, order: usize, radius: f64) -> Self {
        assert!(radius > 0.0, "radius must be positive");
        coeffs.resize(order + 1, Octonion::ZERO);
        TruncatedSeries {
            coeffs,
            order,
            radius: Radius(radius),
        }
    }

    /// A polynomial viewed as an entire series.
    pub fn from_poly(f: &OctPoly, order: usize) -> Self {
        TruncatedSeries::new(f.coeffs().to_vec(), order, f64::INFINITY)
    }

    /// `sum_n w^n a(n)` truncated at `order`.
    pub fn from_fn(order: usize, radius: f64, a: impl Fn(usize) -> Octonion) -> Self {
        TruncatedSeries::new((0..=order).map(a).collect(), order, radius)
    }

    /// `1 + w + w^2 + ...`, radius 1.
    pub fn geometric(order: usize) -> Self {
        TruncatedSeries::from_fn(order, 1.0, |_| Octonion::ONE)
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries::new(Vec::new(), order, f64::INFINITY)
    }

    pub fn coeffs(&self) -> &[Octonion] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Octonion {
        self.coeffs.get(n).copied().unwrap_or(Octonion::ZERO)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn radius(&self) -> f64 {
        self.radius.0
    }

    /// Same coefficients, cut (or zero-padded) to another order.
    pub fn truncate(&self, order: usize) -> Self {
        TruncatedSeries::new(self.coeffs.clone(), order, self.radius.0)
    }

    /// Partial sum `sum_{n <= N} x^n a_n`.
    pub fn evaluate(&self, x: &Octonion) -> Octonion {
        let mut power = Octonion::ONE;
        let mut acc = Octonion::ZERO;
        for (n, a) in self.coeffs.iter().enumerate() {
            if n > 0 {
                power = power * *x;
            }
            acc += power * *a;
        }
        acc
    }

    /// Cauchy product up to the smaller of the two orders.
    pub fn star_mul(&self, g: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(g.order);
        let mut out = vec![Octonion::ZERO; order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            for (j, b) in g.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += *a * *b;
            }
        }
        TruncatedSeries::new(out, order, self.radius.0.min(g.radius.0))
    }

    /// Coefficientwise sum, order the smaller of the two.
    pub fn add(&self, g: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(g.order);
        TruncatedSeries::new(
            (0..=order).map(|n| self.coeff(n) + g.coeff(n)).collect(),
            order,
            self.radius.0.min(g.radius.0),
        )
    }

    /// Largest coefficient distance over degrees `0..=upto`.
    pub fn max_coeff_distance(&self, other: &TruncatedSeries, upto: usize) -> f64 {
        (0..=upto)
            .map(|n| (self.coeff(n) - other.coeff(n)).norm())
            .fold(0.0, f64::max)
    }
}

/// Quotient and remainder of `f = (w - alpha) * g + r` with `g` truncated
/// at `order`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesDivision {
    pub quotient: TruncatedSeries,
    pub remainder: Octonion,
}

pub fn series_star_mul(f: &TruncatedSeries, g: &TruncatedSeries) -> TruncatedSeries {
    f.star_mul(g)
}

/// Divides `f` by `w - alpha`, producing `b_0..b_order`.
pub fn series_divide_linear(
    f: &TruncatedSeries,
    alpha: &Octonion,
    order: usize,
) -> Result<SeriesDivision> {
    let alpha_norm = alpha.norm();
    if alpha_norm >= f.radius() {
        return Err(Error::RadiusViolation {
            alpha_norm,
            radius: f.radius(),
        });
    }
    let m = f.order;
    let a = &f.coeffs;
    // tail[n] = sum_{j > n} alpha^(j-1-n) a_j, for n = m-1 down to 0
    let mut b = vec![Octonion::ZERO; order + 1];
    let mut acc = Octonion::ZERO;
    for n in (0..m).rev() {
        acc = a[n + 1] + *alpha * acc;
        if n <= order {
            b[n] = acc;
        }
    }
    let remainder = a[0] + *alpha * acc;
    Ok(SeriesDivision {
        quotient: TruncatedSeries::new(b, order, f.radius()),
        remainder,
    })
}

/// Quotient coefficients from the forward recurrence
/// `b_n = alpha^-1 (b_{n-1} - a_n)`, `b_{-1} = f(alpha)`. Algebraically equal
/// to [`series_divide_linear`]; rounding grows like `|alpha|^-n` for
/// `|alpha| < 1`.
pub fn series_divide_linear_forward(
    f: &TruncatedSeries,
    alpha: &Octonion,
    order: usize,
) -> Result<SeriesDivision> {
    let alpha_norm = alpha.norm();
    if alpha_norm >= f.radius() {
        return Err(Error::RadiusViolation {
            alpha_norm,
            radius: f.radius(),
        });
    }
    let value = f.evaluate(alpha);
    if alpha_norm == 0.0 {
        let shifted = (1..=order + 1).map(|n| f.coeff(n)).collect();
        return Ok(SeriesDivision {
            quotient: TruncatedSeries::new(shifted, order, f.radius()),
            remainder: value,
        });
    }
    let inv = alpha.inverse_with(&crate::tolerance::Tolerances {
        abs: 0.0,
        ..Default::default()
    })?;
    let mut prev = value;
    let mut b = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let next = inv * (prev - f.coeff(n));
        b.push(next);
        prev = next;
    }
    Ok(SeriesDivision {
        quotient: TruncatedSeries::new(b, order, f.radius()),
        remainder: value,
    })
}

/// Outcome of checking `|x^n b_n| <= (|x|/rho)^n / (rho - |alpha|)` for
/// `n_rho <= n <= N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailBoundReport {
    pub rho: f64,
    pub x_norm: f64,
    /// `max(|alpha|, |x|) < rho < R`
    pub admissible: bool,
    /// smallest `n` with `|a_j| <= rho^-j` for every stored `j > n`
    pub n_rho: usize,
    pub checked: usize,
    pub violations: usize,
    /// largest `|x^n b_n| / bound` over the checked range
    pub max_ratio: f64,
}

impl TailBoundReport {
    pub fn passed(&self) -> bool {
        self.admissible && self.violations == 0
    }
}

/// Divides `f` by `w - alpha` at `f`'s own order and checks the majorant of
/// the quotient coefficients.
pub fn tail_bound_check(
    f: &TruncatedSeries,
    alpha: &Octonion,
    x_norm: f64,
    rho: f64,
) -> Result<TailBoundReport> {
    let div = series_divide_linear(f, alpha, f.order())?;
    Ok(tail_bound_check_quotient(
        f,
        alpha,
        div.quotient.coeffs(),
        x_norm,
        rho,
    ))
}

/// The same check for caller-supplied quotient coefficients.
pub fn tail_bound_check_quotient(
    f: &TruncatedSeries,
    alpha: &Octonion,
    quotient: &[Octonion],
    x_norm: f64,
    rho: f64,
) -> TailBoundReport {
    let alpha_norm = alpha.norm();
    let admissible = alpha_norm.max(x_norm) < rho && rho < f.radius();
    let n_rho = (0..=f.order())
        .rev()
        .find(|&j| f.coeff(j).norm() > rho.powi(-(j as i32)) * (1.0 + 1e-12))
        .unwrap_or(0);
    let mut checked = 0;
    let mut violations = 0;
    let mut max_ratio: f64 = 0.0;
    for (n, b) in quotient.iter().enumerate().skip(n_rho) {
        let lhs = x_norm.powi(n as i32) * b.norm();
        let bound = (x_norm / rho).powi(n as i32) / (rho - alpha_norm);
        let ratio = if bound > 0.0 {
            lhs / bound
        } else if lhs == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        checked += 1;
        max_ratio = max_ratio.max(ratio);
        if ratio > 1.0 + 1e-12 {
            violations += 1;
        }
    }
    TailBoundReport {
        rho,
        x_norm,
        admissible,
        n_rho,
        checked,
        violations,
        max_ratio,
    }
}
