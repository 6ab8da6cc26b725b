//! Division with remainder, zero classification and counting.
//!
//! For a non-real class the remainder `w a + b` of `f` decides everything:
//! `a = b = 0` means the whole sphere is a zero, `a != 0` with `-b a^-1` on
//! the sphere means exactly that point is a zero, and otherwise `f` has no
//! zero on the sphere. The classes to inspect are read off the root
//! spectrum of the normal polynomial `N(f)`, and multiplicities are powers of
//! the characteristic polynomial dividing `N(f)`.

use nalgebra::{SMatrix, SVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::octonion::{ConjugacyClass, Octonion};
use crate::poly::{OctPoly, RealPoly};
use crate::roots::{class_spectrum, complex_roots, quadratic_multiplicity};
use crate::tolerance::Tolerances;

/// `r_alpha(f)`: a constant for real classes, `w a + b` otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Remainder {
    Constant(Octonion),
    Linear { a: Octonion, b: Octonion },
}

impl Remainder {
    /// `(a, b)` with a constant read as `w 0 + r`.
    pub fn parts(&self) -> (Octonion, Octonion) {
        match *self {
            Remainder::Constant(r) => (Octonion::ZERO, r),
            Remainder::Linear { a, b } => (a, b),
        }
    }

    pub fn to_poly(&self) -> OctPoly {
        let (a, b) = self.parts();
        OctPoly::new(vec![b, a])
    }

    pub fn evaluate(&self, x: &Octonion) -> Octonion {
        let (a, b) = self.parts();
        *x * a + b
    }

    /// Largest coordinate difference between the two remainders.
    pub fn max_abs_diff(&self, other: &Remainder) -> f64 {
        let (a1, b1) = self.parts();
        let (a2, b2) = other.parts();
        a1.max_abs_diff(&a2).max(b1.max_abs_diff(&b2))
    }
}

/// How `f` vanishes on a conjugacy class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroKind {
    Real(f64),
    Isolated(Octonion),
    Spherical,
}

impl ZeroKind {
    pub fn label(&self) -> &'static str {
        match self {
            ZeroKind::Real(_) => "real",
            ZeroKind::Isolated(_) => "isolated",
            ZeroKind::Spherical => "spherical",
        }
    }

    /// The zero itself; `None` for a whole sphere.
    pub fn point(&self) -> Option<Octonion> {
        match *self {
            ZeroKind::Real(x) => Some(Octonion::real(x)),
            ZeroKind::Isolated(p) => Some(p),
            ZeroKind::Spherical => None,
        }
    }
}

/// One conjugacy class meeting `V(f)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "ZeroRecordJson", try_from = "ZeroRecordJson")]
pub struct ZeroRecord {
    pub class: ConjugacyClass,
    pub kind: ZeroKind,
    pub multiplicity: usize,
}

impl ZeroRecord {
    pub fn point(&self) -> Option<Octonion> {
        self.kind.point()
    }

    pub fn is_spherical(&self) -> bool {
        matches!(self.kind, ZeroKind::Spherical)
    }

    pub fn is_isolated(&self) -> bool {
        matches!(self.kind, ZeroKind::Isolated(_))
    }

    pub fn is_real(&self) -> bool {
        matches!(self.kind, ZeroKind::Real(_))
    }
}

#[derive(Serialize, Deserialize)]
struct ClassJson {
    t: f64,
    n: f64,
}

#[derive(Serialize, Deserialize)]
struct ZeroRecordJson {
    class: ClassJson,
    kind: String,
    point: Option<Octonion>,
    multiplicity: usize,
}

impl From<ZeroRecord> for ZeroRecordJson {
    fn from(r: ZeroRecord) -> Self {
        ZeroRecordJson {
            class: ClassJson {
                t: r.class.t,
                n: r.class.n,
            },
            kind: r.kind.label().to_string(),
            point: r.point(),
            multiplicity: r.multiplicity,
        }
    }
}

impl TryFrom<ZeroRecordJson> for ZeroRecord {
    type Error = String;
    fn try_from(j: ZeroRecordJson) -> std::result::Result<Self, String> {
        let kind = match (j.kind.as_str(), j.point) {
            ("real", Some(p)) => ZeroKind::Real(p.re()),
            ("isolated", Some(p)) => ZeroKind::Isolated(p),
            ("spherical", None) => ZeroKind::Spherical,
            (k, p) => return Err(format!("bad zero record: kind {k:?}, point {p:?}")),
        };
        Ok(ZeroRecord {
            class: ConjugacyClass::new(j.class.t, j.class.n),
            kind,
            multiplicity: j.multiplicity,
        })
    }
}

/// Zero counts of a polynomial of positive degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FtaSummary {
    /// distinct real zeros
    pub r: usize,
    /// distinct isolated (non-real) zeros
    pub i: usize,
    /// spherical classes
    pub s: usize,
    /// `r + i + s`
    pub k: usize,
    pub total_multiplicity: usize,
    pub degree: usize,
}

/// `f = (w - alpha) * g + r` by synthetic division; `r = f(alpha)`.
pub fn divide_linear(f: &OctPoly, alpha: &Octonion) -> (OctPoly, Octonion) {
    let a = f.coeffs();
    let Some(n) = f.degree() else {
        return (OctPoly::zero(), Octonion::ZERO);
    };
    if n == 0 {
        return (OctPoly::zero(), a[0]);
    }
    // a_k = b_{k-1} - alpha b_k
    let mut b = vec![Octonion::ZERO; n];
    b[n - 1] = a[n];
    for k in (1..n).rev() {
        b[k - 1] = a[k] + *alpha * b[k];
    }
    let r = a[0] + *alpha * b[0];
    (OctPoly::new(b), r)
}

/// `f = Delta_alpha h + w a + b` for non-real `alpha`, obtained from two
/// linear divisions by `w - alpha` and `w - conj(alpha)`.
pub fn divide_quadratic(f: &OctPoly, alpha: &Octonion) -> (OctPoly, Octonion, Octonion) {
    let (g, r) = divide_linear(f, alpha);
    let (h, s) = divide_linear(&g, &alpha.conj());
    (h, s, r - *alpha * s)
}

/// Remainder of `f` with respect to the point `alpha`.
pub fn remainder_at_point(f: &OctPoly, alpha: &Octonion) -> Remainder {
    if alpha.im() == Octonion::ZERO {
        Remainder::Constant(f.evaluate(alpha))
    } else {
        let (_, a, b) = divide_quadratic(f, alpha);
        Remainder::Linear { a, b }
    }
}

/// Remainder of `f` with respect to a class, computed from the canonical
/// representative `t/2 + sqrt(n - t^2/4) i`.
pub fn remainder_at(f: &OctPoly, c: &ConjugacyClass, tol: &Tolerances) -> Result<Remainder> {
    let alpha = c.representative(tol)?;
    Ok(remainder_at_point(f, &alpha))
}

/// Shape of `V(f)` on one class, without the multiplicity.
pub fn classify_kind(f: &OctPoly, c: &ConjugacyClass, tol: &Tolerances) -> Result<Option<ZeroKind>> {
    let alpha = c.representative(tol)?;
    let rho = alpha.norm();
    let scale = f.magnitude_at(rho);
    match remainder_at_point(f, &alpha) {
        Remainder::Constant(r) => {
            Ok(tol.is_negligible(r.norm(), scale).then_some(ZeroKind::Real(alpha.re())))
        }
        Remainder::Linear { a, b } => {
            if tol.is_negligible(a.norm() * rho + b.norm(), scale) {
                return Ok(Some(ZeroKind::Spherical));
            }
            let Ok(inv) = a.inverse_with(&Tolerances { abs: 0.0, ..*tol }) else {
                return Ok(None);
            };
            let p = -(b * inv);
            let pc = p.class();
            if pc.matches(c, tol) && !pc.is_real(tol) {
                Ok(Some(ZeroKind::Isolated(p)))
            } else {
                Ok(None)
            }
        }
    }
}

/// Classifies `f` on `c`; the multiplicity is read off `N(f)`.
pub fn classify_at(f: &OctPoly, c: &ConjugacyClass, tol: &Tolerances) -> Result<Option<ZeroRecord>> {
    let Some(kind) = classify_kind(f, c, tol)? else {
        return Ok(None);
    };
    let normal = f.normal(tol)?;
    Ok(Some(ZeroRecord {
        class: snap(c, tol),
        kind,
        multiplicity: quadratic_multiplicity(&normal, c, tol),
    }))
}

fn snap(c: &ConjugacyClass, tol: &Tolerances) -> ConjugacyClass {
    if c.is_real(tol) {
        ConjugacyClass::real_point(c.center())
    } else {
        *c
    }
}

fn require_positive_degree(f: &OctPoly) -> Result<usize> {
    match f.degree() {
        Some(d) if d >= 1 => Ok(d),
        _ => Err(Error::NotPositiveDegree),
    }
}

/// Gauss-Newton on `x -> f(x)` over the reals. A real zero of `f` is a
/// double root of `N(f)`, so its position in `N(f)` is only good to about
/// `eps / |f'(x)|^2`; on `f` itself it is good to `eps / |f'(x)|`.
fn refine_real_zero(f: &OctPoly, x0: f64) -> f64 {
    let coeffs = f.coeffs();
    let value_and_slope = |x: f64| {
        let mut v = Octonion::ZERO;
        let mut dv = Octonion::ZERO;
        for a in coeffs.iter().rev() {
            dv = dv * x + v;
            v = v * x + *a;
        }
        (v, dv)
    };
    let mut x = x0;
    let (mut v, mut dv) = value_and_slope(x);
    for _ in 0..8 {
        let slope = dv.norm_sq();
        if slope == 0.0 || v.norm() == 0.0 {
            break;
        }
        let dot: f64 = v.coords().iter().zip(dv.coords()).map(|(a, b)| a * b).sum();
        let next = x - dot / slope;
        let (nv, ndv) = value_and_slope(next);
        if !next.is_finite() || nv.norm() >= v.norm() {
            break;
        }
        (x, v, dv) = (next, nv, ndv);
    }
    x
}

/// All zeros of `f`, one record per conjugacy class, ordered by `(t, n)`.
pub fn zero_set(f: &OctPoly, tol: &Tolerances) -> Result<Vec<ZeroRecord>> {
    require_positive_degree(f)?;
    let normal = f.normal(tol)?;
    zero_set_with_normal(f, &normal, tol)
}

pub(crate) fn zero_set_with_normal(
    f: &OctPoly,
    normal: &RealPoly,
    tol: &Tolerances,
) -> Result<Vec<ZeroRecord>> {
    if let Some(r) = real_profile(f) {
        return real_polynomial_zeros(&r, tol);
    }
    let spectrum = class_spectrum(normal, tol)?;
    let mut records = real_zeros(f, tol)?;

    // a real zero of multiplicity s is a 2s-fold real root of N(f)
    let mut real_mass = 0;
    let mut first_real = None;
    // near-axis classes with no zero of their own, accepted as split real
    // mass only if the real-mass identity balances with them
    let mut loose_mass = 0;
    for entry in spectrum.iter() {
        let class = entry.class();
        if class.is_real(tol) {
            if class.discriminant() == 0.0 {
                real_mass += entry.mult;
                first_real.get_or_insert(class);
                continue;
            }
            // a conjugate pair this close to the axis is either a split real
            // root or an isolated zero just off the axis
            if split_real_root(&class, &records, tol) {
                real_mass += 2 * entry.mult;
                first_real.get_or_insert(class);
                continue;
            }
            match near_axis_candidate(f, &class, tol) {
                Some((class, kind)) => records.push(ZeroRecord {
                    class,
                    kind,
                    multiplicity: entry.mult,
                }),
                None if loosely_real(&class, &records, tol) => {
                    loose_mass += 2 * entry.mult;
                }
                None => {
                    return Err(Error::ClassificationMismatch {
                        t: class.t,
                        n: class.n,
                    })
                }
            }
            continue;
        }
        let mismatch = Error::ClassificationMismatch {
            t: class.t,
            n: class.n,
        };
        let (class, kind) = match classify_kind(f, &class, tol)? {
            Some(ZeroKind::Isolated(p)) => {
                let p = refine_isolated(f, p);
                (p.class(), ZeroKind::Isolated(p))
            }
            Some(kind) => (class, kind),
            None => match isolated_candidate(f, &class, tol)? {
                Some(found) => found,
                None if split_real_root(&class, &records, tol) => {
                    real_mass += 2 * entry.mult;
                    continue;
                }
                None if loosely_real(&class, &records, tol) => {
                    loose_mass += 2 * entry.mult;
                    continue;
                }
                None => return Err(mismatch),
            },
        };
        if let Some(p) = kind.point() {
            let residual = f.evaluate(&p).norm();
            if !tol.is_negligible_class(residual, f.magnitude_at(p.norm())) {
                return Err(mismatch);
            }
        }
        records.push(ZeroRecord {
            class,
            kind,
            multiplicity: entry.mult,
        });
    }

    let found: usize = records
        .iter()
        .filter(|r| r.is_real())
        .map(|r| r.multiplicity)
        .sum();
    if 2 * found != real_mass && 2 * found != real_mass + loose_mass {
        let c = first_real.unwrap_or(ConjugacyClass::real_point(0.0));
        return Err(Error::ClassificationMismatch { t: c.t, n: c.n });
    }
    records.sort_by(|a, b| a.class.cmp_key(&b.class));
    Ok(records)
}

/// `r` when `f = r c` for a real polynomial `r` and a constant `c`.
fn real_profile(f: &OctPoly) -> Option<RealPoly> {
    let d = f.degree()?;
    let c = f.coeff(d);
    let dot = |a: &Octonion| -> f64 { a.coords().iter().zip(c.coords()).map(|(x, y)| x * y).sum() };
    let slack = 16.0 * f64::EPSILON * f.max_coeff_norm();
    let mut coeffs = Vec::with_capacity(d + 1);
    for a in f.coeffs() {
        let s = dot(a) / c.norm_sq();
        if (*a - c * s).norm() > slack {
            return None;
        }
        coeffs.push(s);
    }
    Some(RealPoly::new(coeffs))
}

/// Zeros of `r c` read off the complex roots of `r`: real roots are real
/// zeros and each conjugate pair is a spherical class. Going through `N = r^2`
/// would double every multiplicity and square the conditioning.
fn real_polynomial_zeros(r: &RealPoly, tol: &Tolerances) -> Result<Vec<ZeroRecord>> {
    let mut records: Vec<ZeroRecord> = complex_roots(r, tol)?
        .into_iter()
        .filter(|root| root.z.im >= 0.0)
        .map(|root| {
            if root.z.im == 0.0 {
                ZeroRecord {
                    class: ConjugacyClass::real_point(root.z.re),
                    kind: ZeroKind::Real(root.z.re),
                    multiplicity: root.multiplicity,
                }
            } else {
                ZeroRecord {
                    class: ConjugacyClass::new(2.0 * root.z.re, root.z.norm_sqr()),
                    kind: ZeroKind::Spherical,
                    multiplicity: 2 * root.multiplicity,
                }
            }
        })
        .collect();
    records.sort_by(|a, b| a.class.cmp_key(&b.class));
    Ok(records)
}

fn real_reach(x: f64, tol: &Tolerances) -> f64 {
    tol.root.powf(0.25) * x.abs().max(1.0)
}

/// Wider version of [`split_real_root`] for clusters of several nearby real
/// zeros, whose roots in `N(f)` spread further than a single multiple root.
fn loosely_real(c: &ConjugacyClass, records: &[ZeroRecord], tol: &Tolerances) -> bool {
    let bound = tol.root.powf(0.125) * c.center().abs().max(1.0);
    c.radius() <= bound
        && records.iter().any(|r| match r.kind {
            ZeroKind::Real(x) => (x - c.center()).abs() <= bound,
            _ => false,
        })
}

/// A real root cluster of `N(f)` of size `m` may be split by rounding into
/// conjugate pairs at distance up to about `tol.root^(1/m)`. Such a pair is
/// recognised when it sits within `tol.root^(1/4)` of a real zero of `f`.
fn split_real_root(c: &ConjugacyClass, records: &[ZeroRecord], tol: &Tolerances) -> bool {
    let bound = real_reach(c.center(), tol);
    c.radius() <= bound
        && records.iter().any(|r| match r.kind {
            ZeroKind::Real(x) => (x - c.center()).abs() <= bound,
            _ => false,
        })
}

/// Fixed direction with no special relation to the basis.
const GENERIC_DIRECTION: [f64; 8] = [
    0.387_131, -0.291_374, 0.412_908, 0.226_541, -0.368_204, 0.317_716, -0.254_083, 0.490_612,
];

fn project(f: &OctPoly, u: &[f64; 8]) -> RealPoly {
    let dot = |a: &Octonion| -> f64 { a.coords().iter().zip(u).map(|(x, y)| x * y).sum() };
    RealPoly::new(f.coeffs().iter().map(dot).collect())
}

struct Candidate {
    x: f64,
    residual: f64,
    multiplicity: usize,
}

/// Real zeros of `f` with their multiplicities.
///
/// Every real zero of `f` is a root of each projection `<f(w), u>`. With
/// `u` the direction of the leading coefficient the projection keeps the
/// degree, and unlike `N(f)` simple zeros of `f` stay simple roots, so they
/// are located accurately. That projection may vanish to higher order than
/// `f` (as `w^3` does for `w^3 + w i`) or have extra roots right next to a
/// multiple zero, so the root count of a second, generic projection over
/// the same stretch of the line caps the multiplicity found there.
fn real_zeros(f: &OctPoly, tol: &Tolerances) -> Result<Vec<ZeroRecord>> {
    let d = require_positive_degree(f)?;
    let lead = f.coeff(d);
    let u = *(lead / lead.norm()).coords();
    let h = project(f, &u);

    let mut candidates: Vec<Candidate> = Vec::new();
    for r in complex_roots(&h, tol)? {
        // a multiple root may come back as a slightly complex pair
        if r.z.im < 0.0 || r.z.im > real_reach(r.z.re, tol) {
            continue;
        }
        let multiplicity = if r.z.im > 0.0 { 2 * r.multiplicity } else { r.multiplicity };
        // test before refining, which can carry any point downhill onto a zero
        let start = f.evaluate(&Octonion::real(r.z.re)).norm();
        if !tol.is_negligible_class(start, f.magnitude_at(r.z.re.abs())) {
            continue;
        }
        let x = refine_real_zero(f, r.z.re);
        let residual = f.evaluate(&Octonion::real(x)).norm();
        // refinement only reaches about sqrt(eps) at a multiple zero
        let merge = tol.root.sqrt() * x.abs().max(1.0);
        match candidates.iter_mut().find(|c| (c.x - x).abs() <= merge) {
            Some(c) => {
                c.multiplicity += multiplicity;
                if residual < c.residual {
                    (c.x, c.residual) = (x, residual);
                }
            }
            None => candidates.push(Candidate {
                x,
                residual,
                multiplicity,
            }),
        }
    }
    candidates.sort_by(|a, b| a.x.total_cmp(&b.x));

    let generic = project(f, &GENERIC_DIRECTION);
    let generic_roots = match generic.degree() {
        Some(k) if k >= 1 => complex_roots(&generic, tol)?,
        _ => Vec::new(),
    };
    let mut out = Vec::new();
    let mut rest = candidates.as_mut_slice();
    while !rest.is_empty() {
        let mut len = 1;
        while len < rest.len() && rest[len].x - rest[len - 1].x <= real_reach(rest[len].x, tol) {
            len += 1;
        }
        let (chain, tail) = rest.split_at_mut(len);
        rest = tail;
        if !generic_roots.is_empty() {
            let lo = chain[0].x - real_reach(chain[0].x, tol);
            let hi = chain[len - 1].x + real_reach(chain[len - 1].x, tol);
            let budget: usize = generic_roots
                .iter()
                .filter(|g| g.z.im.abs() <= real_reach(g.z.re, tol) && (lo..=hi).contains(&g.z.re))
                .map(|g| g.multiplicity)
                .sum();
            let mut total: usize = chain.iter().map(|c| c.multiplicity).sum();
            chain.sort_by(|a, b| b.residual.total_cmp(&a.residual));
            for c in chain.iter_mut() {
                let cut = total.saturating_sub(budget).min(c.multiplicity);
                c.multiplicity -= cut;
                total -= cut;
            }
        }
        for c in chain.iter().filter(|c| c.multiplicity > 0) {
            let x = sharpen_multiple_zero(f, c.x, c.multiplicity, tol);
            out.push(ZeroRecord {
                class: ConjugacyClass::real_point(x),
                kind: ZeroKind::Real(x),
                multiplicity: c.multiplicity,
            });
        }
    }
    Ok(out)
}

/// A real zero of multiplicity `m` is a simple zero of the `(m-1)`-th
/// derivative, where refinement converges to full precision instead of
/// stalling near `sqrt(eps)`.
fn sharpen_multiple_zero(f: &OctPoly, x: f64, m: usize, tol: &Tolerances) -> f64 {
    if m < 2 {
        return x;
    }
    let mut d = f.clone();
    for _ in 1..m {
        d = d.derivative();
    }
    let y = refine_real_zero(&d, x);
    let residual = f.evaluate(&Octonion::real(y)).norm();
    if (y - x).abs() <= tol.root.sqrt() * x.abs().max(1.0)
        && tol.is_negligible_class(residual, f.magnitude_at(y.abs()))
    {
        y
    } else {
        x
    }
}

/// Newton's method for `f(x) = 0` in all eight coordinates, with a
/// central-difference Jacobian. Steps that do not reduce `|f(x)|` are
/// rejected, so a multiple zero (singular Jacobian) is left where it is.
fn refine_isolated(f: &OctPoly, x0: Octonion) -> Octonion {
    let mut x = x0;
    let mut value = f.evaluate(&x);
    for _ in 0..6 {
        if value.norm() == 0.0 {
            break;
        }
        let h = 1e-6 * x.norm().max(1.0);
        let jac = SMatrix::<f64, 8, 8>::from_fn(|row, col| {
            let step = Octonion::basis(col) * h;
            let up = f.evaluate(&(x + step));
            let down = f.evaluate(&(x - step));
            (up.coords()[row] - down.coords()[row]) / (2.0 * h)
        });
        let rhs = SVector::<f64, 8>::from_column_slice(value.coords());
        let Some(delta) = jac.lu().solve(&rhs) else {
            break;
        };
        let next = x - Octonion::new(std::array::from_fn(|k| delta[k]));
        let next_value = f.evaluate(&next);
        if !next.is_finite() || next_value.norm() >= value.norm() {
            break;
        }
        x = next;
        value = next_value;
    }
    x
}

/// Second attempt at a non-real class whose candidate point `-b a^-1` misses
/// the class by more than `tol.class`: refine the point on `f` and accept it
/// if it then lies within `sqrt(tol.class)` of the class and is a zero.
fn isolated_candidate(
    f: &OctPoly,
    c: &ConjugacyClass,
    tol: &Tolerances,
) -> Result<Option<(ConjugacyClass, ZeroKind)>> {
    let (a, b) = remainder_at(f, c, tol)?.parts();
    if a.norm_sq() == 0.0 {
        return Ok(None);
    }
    let p = refine_isolated(f, -(b * (a.conj() / a.norm_sq())));
    let pc = p.class();
    let loose = Tolerances {
        class: tol.class.sqrt(),
        ..*tol
    };
    let residual = f.evaluate(&p).norm();
    if pc.matches(c, &loose)
        && !pc.is_real(tol)
        && tol.is_negligible_class(residual, f.magnitude_at(p.norm()))
    {
        Ok(Some((pc, ZeroKind::Isolated(p))))
    } else {
        Ok(None)
    }
}

/// Isolated zero on a class too close to the axis for the canonical
/// representative, which rounds such a class to a real point.
fn near_axis_candidate(
    f: &OctPoly,
    c: &ConjugacyClass,
    tol: &Tolerances,
) -> Option<(ConjugacyClass, ZeroKind)> {
    let (a, b) = remainder_at_point(f, &c.point_on(&Octonion::I)).parts();
    if a.norm_sq() == 0.0 {
        return None;
    }
    let p = refine_isolated(f, -(b * (a.conj() / a.norm_sq())));
    let residual = f.evaluate(&p).norm();
    let loose = Tolerances {
        class: tol.class.sqrt(),
        ..*tol
    };
    (p.im().norm() > 0.0
        && p.class().matches(c, &loose)
        && tol.is_negligible_class(residual, f.magnitude_at(p.norm())))
    .then(|| (p.class(), ZeroKind::Isolated(p)))
}

/// Counts real, isolated and spherical zeros and checks that the
/// multiplicities add up to the degree.
pub fn verify_fta(f: &OctPoly, tol: &Tolerances) -> Result<FtaSummary> {
    let records = zero_set(f, tol)?;
    summarize(f, &records)
}

/// [`verify_fta`] for an already computed zero set.
pub fn summarize(f: &OctPoly, records: &[ZeroRecord]) -> Result<FtaSummary> {
    let degree = require_positive_degree(f)?;
    let r = records.iter().filter(|z| z.is_real()).count();
    let i = records.iter().filter(|z| z.is_isolated()).count();
    let s = records.iter().filter(|z| z.is_spherical()).count();
    let total: usize = records.iter().map(|z| z.multiplicity).sum();
    if records.is_empty() {
        return Err(Error::FtaViolation("empty zero set".into()));
    }
    if let Some(z) = records.iter().find(|z| z.is_spherical() && z.multiplicity < 2) {
        return Err(Error::FtaViolation(format!(
            "spherical class ({}, {}) has multiplicity {}",
            z.class.t, z.class.n, z.multiplicity
        )));
    }
    if total != degree {
        return Err(Error::FtaViolation(format!(
            "multiplicities sum to {total}, degree is {degree}"
        )));
    }
    if r + i + 2 * s > degree {
        return Err(Error::FtaViolation(format!(
            "r + i + 2s = {} exceeds degree {degree}",
            r + i + 2 * s
        )));
    }
    Ok(FtaSummary {
        r,
        i,
        s,
        k: r + i + s,
        total_multiplicity: total,
        degree,
    })
}

/// `f = (w - a_1) * ((w - a_2) * ( ... * ((w - a_n) * c)))`.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub roots: Vec<Octonion>,
    pub constant: Octonion,
}

impl Factorization {
    /// Re-expands the nested star product.
    pub fn expand(&self) -> OctPoly {
        self.roots
            .iter()
            .rev()
            .fold(OctPoly::constant(self.constant), |acc, alpha| {
                OctPoly::linear(*alpha).star_mul(&acc)
            })
    }
}

/// Splits off one linear factor at a time. At each step the zero taken is
/// the one of the current quotient whose class has the largest multiplicity
/// (ties: smallest `t`, then smallest `n`); spherical classes contribute
/// their canonical representative.
pub fn factorize(f: &OctPoly, tol: &Tolerances) -> Result<Factorization> {
    let n = require_positive_degree(f)?;
    let mut current = f.clone();
    let mut roots = Vec::with_capacity(n);
    for step in 0..n {
        let degree = n - step;
        let records = zero_set(&current, tol).map_err(|e| match e {
            Error::ClassificationMismatch { .. } | Error::RootFinding(_) => {
                Error::NoZeroFound(degree)
            }
            other => other,
        })?;
        let chosen = records
            .iter()
            .max_by(|x, y| {
                x.multiplicity
                    .cmp(&y.multiplicity)
                    .then_with(|| y.class.cmp_key(&x.class))
            })
            .ok_or(Error::NoZeroFound(degree))?;
        let alpha = match chosen.kind {
            ZeroKind::Spherical => chosen.class.representative(tol)?,
            ref k => k.point().expect("point zero"),
        };
        let (quotient, _) = divide_linear(&current, &alpha);
        roots.push(alpha);
        current = quotient;
    }
    let constant = current.coeff(0);
    if constant.norm() == 0.0 {
        return Err(Error::NoZeroFound(0));
    }
    Ok(Factorization { roots, constant })
}

/// Special coefficient patterns whose zero structure is known in advance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureForm {
    /// all coefficients real: zeros are real or spherical
    RealCoefficients,
    /// `a_1..a_n` real, `a_0` non-real: only isolated zeros, all in the
    /// plane spanned by `1` and `a_0`
    RealPlusConstant,
    /// `a_2..a_n` real, `a_0` or `a_1` non-real: no spherical zeros
    RealPlusLinear,
    General,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureProfile {
    pub form: StructureForm,
    pub zeros: Vec<ZeroRecord>,
    /// whether the zero set has the structure predicted by `form`
    pub prediction_holds: bool,
    /// for `RealPlusConstant`: largest distance of a zero's imaginary part
    /// from the line through `im(a_0)`, relative to `max(1, |zero|)`
    pub plane_residual: f64,
}

pub fn structure_form(f: &OctPoly, tol: &Tolerances) -> StructureForm {
    let real = |c: &Octonion| tol.is_negligible(c.im().norm(), c.norm());
    let coeffs = f.coeffs();
    let tail_real = |from: usize| coeffs.iter().skip(from).all(real);
    if coeffs.iter().all(real) {
        StructureForm::RealCoefficients
    } else if tail_real(1) {
        StructureForm::RealPlusConstant
    } else if tail_real(2) {
        StructureForm::RealPlusLinear
    } else {
        StructureForm::General
    }
}

/// Detects a special form and checks the zero set against its prediction.
pub fn structure_profile(f: &OctPoly, tol: &Tolerances) -> Result<StructureProfile> {
    let form = structure_form(f, tol);
    let zeros = zero_set(f, tol)?;
    let mut plane_residual = 0.0;
    let prediction_holds = match form {
        StructureForm::RealCoefficients => zeros.iter().all(|z| !z.is_isolated()),
        StructureForm::RealPlusLinear => zeros.iter().all(|z| !z.is_spherical()),
        StructureForm::General => true,
        StructureForm::RealPlusConstant => {
            let dir = f.coeff(0).imaginary_unit().expect("non-real a0");
            for z in &zeros {
                if let Some(p) = z.point() {
                    let im = p.im();
                    let along = im.coords().iter().zip(dir.coords()).map(|(x, y)| x * y).sum::<f64>();
                    let off = (im - dir * along).norm() / p.norm().max(1.0);
                    plane_residual = f64::max(plane_residual, off);
                }
            }
            zeros.iter().all(ZeroRecord::is_isolated)
        }
    };
    Ok(StructureProfile {
        form,
        zeros,
        prediction_holds,
        plane_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    /// w^2 + w i + j
    fn worked() -> OctPoly {
        OctPoly::new(vec![Octonion::J, Octonion::I, Octonion::ONE])
    }

    fn half(c: [f64; 4]) -> Octonion {
        Octonion::quaternion(c[0], c[1], c[2], c[3]) * 0.5
    }

    #[test]
    fn dividing_char_poly_by_its_root() {
        let alpha = Octonion::new([0.5, 1.0, -0.3, 0.2, 0.0, 0.7, -0.1, 0.4]);
        let delta = OctPoly::from_real(&alpha.class().char_poly());
        let (g, r) = divide_linear(&delta, &alpha);
        assert!(r.norm() < 1e-14);
        assert!(g.max_coeff_distance(&OctPoly::linear(alpha.conj())) < 1e-14);
    }

    #[test]
    fn dividing_by_zero_point_shifts() {
        let f = worked();
        let (g, r) = divide_linear(&f, &Octonion::ZERO);
        assert_eq!(r, Octonion::J);
        assert_eq!(g, OctPoly::new(vec![Octonion::I, Octonion::ONE]));
    }

    #[test]
    fn division_reconstructs() {
        let f = worked();
        let beta = Octonion::real(0.5) + Octonion::I * (3f64.sqrt() / 2.0);
        let (g, r) = divide_linear(&f, &beta);
        assert_eq!(g.degree(), Some(1));
        assert!((r - f.evaluate(&beta)).norm() < 1e-15);
        let back = &OctPoly::linear(beta).star_mul(&g) + &OctPoly::constant(r);
        assert!(back.max_coeff_distance(&f) < 1e-15);
    }

    #[test]
    fn worked_example_remainders() {
        let t = tol();
        let r = remainder_at(&worked(), &ConjugacyClass::new(1.0, 1.0), &t).unwrap();
        let expected = Remainder::Linear {
            a: Octonion::ONE + Octonion::I,
            b: -(Octonion::ONE - Octonion::J),
        };
        assert!(r.max_abs_diff(&expected) < 1e-14, "{r:?}");
        let r = remainder_at(&worked(), &ConjugacyClass::new(-1.0, 1.0), &t).unwrap();
        let expected = Remainder::Linear {
            a: -Octonion::ONE + Octonion::I,
            b: -(Octonion::ONE - Octonion::J),
        };
        assert!(r.max_abs_diff(&expected) < 1e-14, "{r:?}");
    }

    #[test]
    fn remainder_of_multiple_of_char_poly_vanishes() {
        let t = tol();
        let alpha = Octonion::quaternion(0.2, 0.0, 1.5, -0.5);
        let h = OctPoly::new(vec![Octonion::K, Octonion::J + Octonion::real(2.0)]);
        let f = h.mul_real(&alpha.class().char_poly());
        let (a, b) = remainder_at(&f, &alpha.class(), &t).unwrap().parts();
        assert!(a.norm() < 1e-14 && b.norm() < 1e-14);
    }

    #[test]
    fn classification_examples() {
        let t = tol();
        let rec = classify_at(&worked(), &ConjugacyClass::new(1.0, 1.0), &t)
            .unwrap()
            .unwrap();
        let expected = half([1.0, -1.0, -1.0, -1.0]);
        match rec.kind {
            ZeroKind::Isolated(p) => assert!(p.max_abs_diff(&expected) < 1e-14),
            other => panic!("{other:?}"),
        }
        assert_eq!(rec.multiplicity, 1);

        let w2p1 = OctPoly::new(vec![Octonion::ONE, Octonion::ZERO, Octonion::ONE]);
        let rec = classify_at(&w2p1, &ConjugacyClass::new(0.0, 1.0), &t)
            .unwrap()
            .unwrap();
        assert_eq!(rec.kind, ZeroKind::Spherical);
        assert_eq!(rec.multiplicity, 2);
        assert_eq!(
            classify_at(&w2p1, &ConjugacyClass::new(0.0, 4.0), &t).unwrap(),
            None
        );
    }

    #[test]
    fn zero_set_of_worked_example() {
        let zs = zero_set(&worked(), &tol()).unwrap();
        assert_eq!(zs.len(), 2);
        let a2 = half([-1.0, -1.0, 1.0, -1.0]);
        let a1 = half([1.0, -1.0, -1.0, -1.0]);
        assert!(zs[0].point().unwrap().max_abs_diff(&a2) < 1e-12);
        assert!(zs[1].point().unwrap().max_abs_diff(&a1) < 1e-12);
        assert!(zs.iter().all(|z| z.multiplicity == 1 && z.is_isolated()));
    }

    #[test]
    fn repeated_isolated_zero() {
        let wi = OctPoly::linear(Octonion::I);
        let zs = zero_set(&wi.star_mul(&wi), &tol()).unwrap();
        assert_eq!(zs.len(), 1);
        assert_eq!(zs[0].multiplicity, 2);
        assert!(zs[0].point().unwrap().max_abs_diff(&Octonion::I) < 1e-12);
    }

    #[test]
    fn spherical_zero_of_real_quadratic() {
        let w2p1 = OctPoly::new(vec![Octonion::ONE, Octonion::ZERO, Octonion::ONE]);
        let zs = zero_set(&w2p1, &tol()).unwrap();
        assert_eq!(zs.len(), 1);
        assert!(zs[0].is_spherical());
        assert_eq!(zs[0].multiplicity, 2);
    }

    #[test]
    fn constants_are_rejected() {
        let t = tol();
        assert_eq!(
            zero_set(&OctPoly::constant(Octonion::I), &t),
            Err(Error::NotPositiveDegree)
        );
        assert_eq!(zero_set(&OctPoly::zero(), &t), Err(Error::NotPositiveDegree));
        assert_eq!(verify_fta(&OctPoly::zero(), &t), Err(Error::NotPositiveDegree));
    }

    #[test]
    fn fta_examples() {
        let t = tol();
        let s = verify_fta(&worked(), &t).unwrap();
        assert_eq!((s.k, s.i, s.total_multiplicity), (2, 2, 2));
        let s = verify_fta(&OctPoly::linear(Octonion::real(3.0)), &t).unwrap();
        assert_eq!((s.r, s.total_multiplicity), (1, 1));

        // Delta_i (w - j): j lies on the sphere of i, so the class is spherical
        let f = OctPoly::linear(Octonion::J).mul_real(&ConjugacyClass::new(0.0, 1.0).char_poly());
        let s = verify_fta(&f, &t).unwrap();
        assert_eq!((s.s, s.i, s.total_multiplicity), (1, 0, 3));
    }

    #[test]
    fn summary_rejects_bad_counts() {
        let f = OctPoly::linear(Octonion::ONE);
        let rec = ZeroRecord {
            class: ConjugacyClass::real_point(1.0),
            kind: ZeroKind::Real(1.0),
            multiplicity: 2,
        };
        assert!(matches!(summarize(&f, &[rec]), Err(Error::FtaViolation(_))));
    }

    #[test]
    fn factorization_examples() {
        let t = tol();
        let delta = OctPoly::from_real(&ConjugacyClass::new(0.0, 1.0).char_poly());
        let fac = factorize(&delta, &t).unwrap();
        assert!(fac.roots[0].max_abs_diff(&Octonion::I) < 1e-12);
        assert!(fac.roots[1].max_abs_diff(&-Octonion::I) < 1e-12);
        assert!(fac.constant.max_abs_diff(&Octonion::ONE) < 1e-12);

        let f = OctPoly::linear(Octonion::I).star_mul(&OctPoly::linear(Octonion::J));
        let fac = factorize(&f, &t).unwrap();
        assert!(fac.expand().max_coeff_distance(&f) < 1e-12);
        assert!(fac.roots[0].max_abs_diff(&Octonion::I) < 1e-12);
        assert!(fac.roots[1].max_abs_diff(&Octonion::J) < 1e-12);

        let fac = factorize(&worked(), &t).unwrap();
        assert!(fac.expand().max_coeff_distance(&worked()) < 1e-12);
    }

    #[test]
    fn structure_profiles() {
        let t = tol();
        // w^2 + w + 1 + k
        let f = OctPoly::new(vec![Octonion::ONE + Octonion::K, Octonion::ONE, Octonion::ONE]);
        let p = structure_profile(&f, &t).unwrap();
        assert_eq!(p.form, StructureForm::RealPlusConstant);
        assert!(p.prediction_holds);
        assert!(p.plane_residual < 1e-12);
        assert!(p.zeros.iter().all(ZeroRecord::is_isolated));

        // w^3 + w i
        let f = OctPoly::new(vec![Octonion::ZERO, Octonion::I, Octonion::ZERO, Octonion::ONE]);
        let p = structure_profile(&f, &t).unwrap();
        assert_eq!(p.form, StructureForm::RealPlusLinear);
        assert!(p.prediction_holds);

        let f = OctPoly::new(vec![Octonion::ONE, Octonion::ZERO, Octonion::ONE]);
        let p = structure_profile(&f, &t).unwrap();
        assert_eq!(p.form, StructureForm::RealCoefficients);
        assert!(p.prediction_holds);
    }

    #[test]
    fn zero_record_json_shape() {
        let rec = ZeroRecord {
            class: ConjugacyClass::new(0.0, 1.0),
            kind: ZeroKind::Spherical,
            multiplicity: 2,
        };
        let v = serde_json::to_value(rec).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"class": {"t": 0.0, "n": 1.0}, "kind": "spherical", "point": null, "multiplicity": 2})
        );
        let back: ZeroRecord = serde_json::from_value(v).unwrap();
        assert_eq!(back, rec);
    }
}
