//! Comparison thresholds shared by every module.

use serde::{Deserialize, Serialize};

/// Thresholds used wherever an exact identity is tested in floating point.
///
/// * `abs`, `rel`: generic "is zero" / "are equal" tests; a quantity `v`
///   with natural magnitude `scale` is zero when `|v| <= abs + rel * scale`.
/// * `root`: target residual of the polynomial root finder. Roots closer
///   than `sqrt(root) * scale` are merged into one multiple root.
/// * `class`: conjugacy-class comparisons on `(t, n)`, and the nearly-real
///   test `4n - t^2 < class * max(1, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub abs: f64,
    pub rel: f64,
    pub root: f64,
    pub class: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            abs: 1e-9,
            rel: 1e-9,
            root: 1e-10,
            class: 1e-8,
        }
    }
}

impl Tolerances {
    /// `|value| <= abs + rel * scale`.
    #[inline]
    pub fn is_negligible(&self, value: f64, scale: f64) -> bool {
        value.abs() <= self.abs + self.rel * scale.abs()
    }

    /// Same test with the class tolerance in place of `rel`; used for
    /// quantities that inherit the error of a numerically located class.
    #[inline]
    pub fn is_negligible_class(&self, value: f64, scale: f64) -> bool {
        value.abs() <= self.abs + self.class * scale.abs()
    }
}
