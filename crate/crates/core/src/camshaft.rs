//! Zeros of a star product predicted sphere by sphere from the remainders
//! of the two factors, and a randomized differential check of those
//! predictions against direct classification of the product.
//!
//! On a non-real class with `r(f) = w a + b` and `r(g) = w c + d` the product
//! has remainder `w (a d + b c + t a c) + b d - n a c`. When `f` has an
//! isolated zero on the sphere and `g` does not vanish there, the zero of
//! `f * g` is generally a different point of the same sphere (the camshaft
//! effect); the formulas below give it in closed form.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::octonion::{ConjugacyClass, Octonion};
use crate::poly::OctPoly;
use crate::random::{self, Factor};
use crate::tolerance::Tolerances;
use crate::zeros::{remainder_at, zero_set, Remainder, ZeroKind, ZeroRecord};

/// Which clause of the product rule applied on a sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseTag {
    /// `f` isolated, `g` nowhere zero on the sphere
    Case1,
    /// `f` nowhere zero, `g` isolated
    Case2,
    /// both isolated, product vanishes on the whole sphere
    Case3Spherical,
    /// both isolated, product has one zero on the sphere
    Case3Isolated,
    /// either factor spherical
    Case4,
    /// real class
    RealCase,
}

impl CaseTag {
    pub fn label(&self) -> &'static str {
        match self {
            CaseTag::Case1 => "case-1",
            CaseTag::Case2 => "case-2",
            CaseTag::Case3Spherical => "case-3-spherical",
            CaseTag::Case3Isolated => "case-3-isolated",
            CaseTag::Case4 => "case-4",
            CaseTag::RealCase => "real-case",
        }
    }
}

/// Predicted zero of `f * g` on one class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpherePrediction {
    pub class: ConjugacyClass,
    pub predicted: ZeroRecord,
    pub case_tag: CaseTag,
    /// Case 3 with `a (beta c)` and `(conj(alpha) a) c` too close to call
    /// reliably in floating point.
    pub borderline: bool,
}

/// Remainder of `f * g` from the remainders of `f` and `g` on `c`.
pub fn product_remainder(rf: &Remainder, rg: &Remainder, c: &ConjugacyClass, tol: &Tolerances) -> Remainder {
    if c.is_real(tol) {
        let x = Octonion::real(c.center());
        return Remainder::Constant(rf.evaluate(&x) * rg.evaluate(&x));
    }
    let (a, b) = rf.parts();
    let (cc, d) = rg.parts();
    let ac = a * cc;
    Remainder::Linear {
        a: a * d + b * cc + ac * c.t,
        b: b * d - ac * c.n,
    }
}

fn checked_inverse(den: Octonion, scale: f64, case: &'static str, tol: &Tolerances) -> Result<Octonion> {
    let norm = den.norm();
    if tol.is_negligible(norm, scale) {
        return Err(Error::DegenerateDenominator { case, norm });
    }
    Ok(den.conj() / den.norm_sq())
}

/// Predicts the zero of `f * g` on `c` from the zero records and remainders
/// of the factors on that class.
pub fn predict(
    c: &ConjugacyClass,
    rec_f: Option<&ZeroRecord>,
    rec_g: Option<&ZeroRecord>,
    rf: &Remainder,
    rg: &Remainder,
    tol: &Tolerances,
) -> Result<SpherePrediction> {
    if rec_f.is_none() && rec_g.is_none() {
        return Err(Error::NoFactorZero { t: c.t, n: c.n });
    }
    let s = rec_f.map_or(0, |r| r.multiplicity);
    let t = rec_g.map_or(0, |r| r.multiplicity);
    let mult = s + t;
    let record = |kind| ZeroRecord {
        class: *c,
        kind,
        multiplicity: mult,
    };
    let done = |kind, case_tag, borderline| {
        Ok(SpherePrediction {
            class: *c,
            predicted: record(kind),
            case_tag,
            borderline,
        })
    };

    if c.is_real(tol) {
        return done(ZeroKind::Real(c.center()), CaseTag::RealCase, false);
    }
    if rec_f.is_some_and(ZeroRecord::is_spherical) || rec_g.is_some_and(ZeroRecord::is_spherical) {
        return done(ZeroKind::Spherical, CaseTag::Case4, false);
    }

    let (a, b) = rf.parts();
    let (cc, d) = rg.parts();
    let n = c.n;
    let ac = a * cc;
    let isolated = |r: Option<&ZeroRecord>| match r.map(|r| r.kind) {
        Some(ZeroKind::Isolated(p)) => Some(p),
        _ => None,
    };

    match (isolated(rec_f), isolated(rec_g)) {
        (Some(alpha), None) => {
            let num = (alpha * a) * d + ac * n;
            let den = a * d + (alpha.conj() * a) * cc;
            let scale = a.norm() * (d.norm() + alpha.norm() * cc.norm());
            let inv = checked_inverse(den, scale, "case 1", tol)?;
            done(ZeroKind::Isolated(num * inv), CaseTag::Case1, false)
        }
        (None, Some(beta)) => {
            let num = b * (beta * cc) + ac * n;
            let den = b * cc + a * (beta.conj() * cc);
            let scale = cc.norm() * (b.norm() + a.norm() * beta.norm());
            let inv = checked_inverse(den, scale, "case 2", tol)?;
            done(ZeroKind::Isolated(num * inv), CaseTag::Case2, false)
        }
        (Some(alpha), Some(beta)) => {
            let x = a * (beta * cc);
            let y = (alpha.conj() * a) * cc;
            let gap = (x - y).norm() / x.norm().max(y.norm()).max(1.0);
            if gap <= tol.class {
                return done(ZeroKind::Spherical, CaseTag::Case3Spherical, false);
            }
            let num = -((alpha * a) * (beta * cc)) + ac * n;
            let inv = checked_inverse(y - x, 0.0, "case 3", tol)?;
            done(
                ZeroKind::Isolated(num * inv),
                CaseTag::Case3Isolated,
                gap <= tol.class.sqrt(),
            )
        }
        _ => Err(Error::NoFactorZero { t: c.t, n: c.n }),
    }
}

/// Predictions for every class carrying a zero of `f` or of `g`.
pub fn predict_product(f: &OctPoly, g: &OctPoly, tol: &Tolerances) -> Result<Vec<SpherePrediction>> {
    let zf = factor_zeros(f, tol)?;
    let zg = factor_zeros(g, tol)?;
    predict_from_records(f, g, &zf, &zg, tol)
}

/// Zero set of a factor; a nonzero constant has none.
fn factor_zeros(f: &OctPoly, tol: &Tolerances) -> Result<Vec<ZeroRecord>> {
    match f.degree() {
        Some(0) => Ok(Vec::new()),
        _ => zero_set(f, tol),
    }
}

fn predict_from_records(
    f: &OctPoly,
    g: &OctPoly,
    zf: &[ZeroRecord],
    zg: &[ZeroRecord],
    tol: &Tolerances,
) -> Result<Vec<SpherePrediction>> {
    let classes = union_classes(zf, zg, tol);
    classes
        .iter()
        .map(|c| {
            let rec_f = zf.iter().find(|r| r.class.matches(c, tol));
            let rec_g = zg.iter().find(|r| r.class.matches(c, tol));
            let rf = remainder_at(f, c, tol)?;
            let rg = remainder_at(g, c, tol)?;
            predict(c, rec_f, rec_g, &rf, &rg, tol)
        })
        .collect()
}

/// Distinct classes of two zero sets, ordered by `(t, n)`.
pub fn union_classes(zf: &[ZeroRecord], zg: &[ZeroRecord], tol: &Tolerances) -> Vec<ConjugacyClass> {
    let mut out: Vec<ConjugacyClass> = Vec::new();
    for r in zf.iter().chain(zg) {
        if !out.iter().any(|c| c.matches(&r.class, tol)) {
            out.push(r.class);
        }
    }
    out.sort_by(|a, b| a.cmp_key(b));
    out
}

/// Outcome of comparing a prediction with the directly computed record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub kind_matches: bool,
    pub multiplicity_matches: bool,
    /// `|predicted - actual| / max(1, |actual|)` for point zeros
    pub point_error: f64,
}

/// Relative point tolerance for predicted zeros.
pub const POINT_TOLERANCE: f64 = 1e-7;

impl Comparison {
    pub fn passed(&self) -> bool {
        self.kind_matches && self.multiplicity_matches && self.point_error <= POINT_TOLERANCE
    }
}

pub fn compare(prediction: &SpherePrediction, actual: &ZeroRecord) -> Comparison {
    let p = &prediction.predicted;
    let point_error = match (p.point(), actual.point()) {
        (Some(x), Some(y)) => (x - y).norm() / y.norm().max(1.0),
        _ => 0.0,
    };
    Comparison {
        kind_matches: p.kind.label() == actual.kind.label(),
        multiplicity_matches: p.multiplicity == actual.multiplicity,
        point_error,
    }
}

/// Kinds of constructed factor pairs, cycled through by [`verify_products`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    /// independent random factors; every sphere is case 1 or case 2
    Generic,
    /// both factors vanish at different points of one sphere
    SharedIsolated,
    /// `f` vanishes on a whole sphere on which `g` has an isolated zero
    SharedSpherical,
    /// both factors share a real zero
    SharedReal,
    /// `f = w a - alpha a`, `g = w - alpha` with `conj(alpha) = a alpha a^-1`
    Degenerate,
    /// quaternionic coefficients, where the case 1 and case 2 formulas
    /// reduce to `alpha' = alpha` and a conjugation
    Quaternionic,
    /// `f` real: no displacement
    RealFactor,
}

pub const SCENARIOS: [Scenario; 7] = [
    Scenario::Generic,
    Scenario::SharedIsolated,
    Scenario::SharedSpherical,
    Scenario::SharedReal,
    Scenario::Degenerate,
    Scenario::Quaternionic,
    Scenario::RealFactor,
];

/// Unit imaginary `a` with `conj(alpha) = a alpha a^-1`: any imaginary unit
/// orthogonal to `im(alpha)`.
pub fn conjugating_unit<R: Rng + ?Sized>(rng: &mut R, alpha: &Octonion, quaternionic: bool) -> Octonion {
    let dir = alpha.imaginary_unit().expect("non-real alpha");
    loop {
        let u = random::imaginary_unit(rng, quaternionic);
        let along: f64 = u.coords().iter().zip(dir.coords()).map(|(x, y)| x * y).sum();
        let v = u - dir * along;
        if v.norm() > 0.1 {
            return v / v.norm();
        }
    }
}

/// The factor pair `(w a - alpha a, w - alpha)` whose product vanishes on
/// the whole sphere of `alpha` although each factor has the single zero `alpha`.
pub fn degenerate_pair(alpha: &Octonion, a: &Octonion) -> (OctPoly, OctPoly) {
    (
        OctPoly::new(vec![-(*alpha * *a), *a]),
        OctPoly::linear(*alpha),
    )
}

/// Builds the factor pair for one trial.
pub fn build_pair<R: Rng + ?Sized>(rng: &mut R, scenario: Scenario, max_degree: usize) -> (OctPoly, OctPoly) {
    let max_degree = max_degree.max(2);
    let deg = |rng: &mut R| rng.gen_range(1..=max_degree);
    let tail = |rng: &mut R, d: usize, q: bool| {
        if d == 0 {
            OctPoly::constant(random::nonzero_octonion(rng, 0.3))
        } else {
            random::polynomial(rng, d, q)
        }
    };
    match scenario {
        Scenario::Generic => {
            let (d1, d2) = (deg(rng), deg(rng));
            (random::polynomial(rng, d1, false), random::polynomial(rng, d2, false))
        }
        Scenario::SharedIsolated => {
            let alpha = random::nonreal(rng, false);
            let beta = random::point_on(rng, &alpha.class(), false);
            let (d1, d2) = (deg(rng) - 1, deg(rng) - 1);
            let f = OctPoly::linear(alpha).star_mul(&tail(rng, d1, false));
            let g = OctPoly::linear(beta).star_mul(&tail(rng, d2, false));
            (f, g)
        }
        Scenario::SharedSpherical => {
            let alpha = random::nonreal(rng, false);
            let beta = random::point_on(rng, &alpha.class(), false);
            let d1 = deg(rng).saturating_sub(2);
            let d2 = deg(rng) - 1;
            let f = tail(rng, d1, false).mul_real(&alpha.class().char_poly());
            let g = OctPoly::linear(beta).star_mul(&tail(rng, d2, false));
            (f, g)
        }
        Scenario::SharedReal => {
            let r = Octonion::real(rng.gen_range(-1.5..=1.5));
            let (d1, d2) = (deg(rng) - 1, deg(rng) - 1);
            let f = OctPoly::linear(r).star_mul(&tail(rng, d1, false));
            let g = tail(rng, d2, false).star_mul(&OctPoly::linear(r));
            (f, g)
        }
        Scenario::Degenerate => {
            let q = rng.gen_bool(0.5);
            let alpha = random::nonreal(rng, q);
            let a = conjugating_unit(rng, &alpha, q) * rng.gen_range(0.5..2.0);
            degenerate_pair(&alpha, &a)
        }
        Scenario::Quaternionic => {
            let (d1, d2) = (deg(rng), deg(rng));
            (random::polynomial(rng, d1, true), random::polynomial(rng, d2, true))
        }
        Scenario::RealFactor => {
            let d1 = deg(rng);
            let factors = random::constructed_factors(rng, d1, false)
                .into_iter()
                .map(|f| match f {
                    Factor::Linear(a) => Factor::Linear(Octonion::real(a.re())),
                    Factor::Constant(c) => Factor::Constant(Octonion::real(c.re().abs() + 0.5)),
                    other => other,
                })
                .collect::<Vec<_>>();
            let d2 = deg(rng);
            (random::product(&factors), random::polynomial(rng, d2, false))
        }
    }
}

/// A trial that did not reproduce the prediction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub scenario: Scenario,
    pub message: String,
    pub f: OctPoly,
    pub g: OctPoly,
}

/// Aggregated result of [`verify_products`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<TrialFailure>,
    /// largest relative distance between a predicted and a computed zero
    pub worst_residual: f64,
    /// largest relative coefficient error of `N(f * g)` against `N(f) N(g)`
    pub worst_normal_error: f64,
    /// trials whose only disagreements were on borderline case-3 spheres or
    /// on factor classes too close to resolve
    pub borderline: usize,
    pub case_counts: BTreeMap<String, usize>,
    /// case 1 / case 2 spheres checked against the associative formulas
    pub associative_checks: usize,
    pub associative_worst: f64,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Default)]
struct TrialOutcome {
    failure: Option<String>,
    borderline_only: bool,
    worst_residual: f64,
    normal_error: f64,
    cases: Vec<CaseTag>,
    associative_checks: usize,
    associative_worst: f64,
}

/// Largest coefficient error of `N(f * g)` relative to `max |N(f) N(g)|`.
pub fn normal_multiplicativity_error(f: &OctPoly, g: &OctPoly, tol: &Tolerances) -> Result<f64> {
    let lhs = f.star_mul(g).normal(tol)?;
    let rhs = f.normal(tol)?.mul(&g.normal(tol)?);
    let scale = rhs.coeffs().iter().map(|c| c.abs()).fold(0.0, f64::max);
    Ok(lhs.max_coeff_distance(&rhs) / scale.max(f64::MIN_POSITIVE))
}

/// Runs every check for one factor pair.
fn run_trial(f: &OctPoly, g: &OctPoly, scenario: Scenario, tol: &Tolerances) -> Result<TrialOutcome> {
    let mut out = TrialOutcome {
        normal_error: normal_multiplicativity_error(f, g, tol)?,
        ..Default::default()
    };
    let mut problems = Vec::new();
    let mut borderline_problems = 0;
    if out.normal_error > tol.class {
        problems.push(format!("N(f*g) relative error {:e}", out.normal_error));
    }

    let fg = f.star_mul(g);
    let zf = factor_zeros(f, tol)?;
    let zg = factor_zeros(g, tol)?;
    let zfg = zero_set(&fg, tol)?;

    let expected = union_classes(&zf, &zg, tol);
    // classes of the factors closer than the multiple-root resolution cannot
    // be told apart from one multiple class in the product
    let coincident = |c: &ConjugacyClass| expected.iter().any(|o| o != c && unresolved(c, o, tol));
    if expected.len() != zfg.len() || !zfg.iter().all(|r| expected.iter().any(|c| c.matches(&r.class, tol))) {
        if expected.iter().any(coincident) {
            borderline_problems += 1;
        } else {
            problems.push(format!(
                "class union mismatch: {} classes from factors, {} in product",
                expected.len(),
                zfg.len()
            ));
        }
    }

    let predictions = predict_from_records(f, g, &zf, &zg, tol)?;
    for p in &predictions {
        out.cases.push(p.case_tag);
        let Some(actual) = zfg.iter().find(|r| r.class.matches(&p.class, tol)) else {
            if coincident(&p.class) {
                borderline_problems += 1;
            } else {
                problems.push(format!("no zero of f*g on class ({}, {})", p.class.t, p.class.n));
            }
            continue;
        };
        let cmp = compare(p, actual);
        out.worst_residual = out.worst_residual.max(cmp.point_error);
        if !cmp.passed() {
            if p.borderline || coincident(&p.class) {
                borderline_problems += 1;
            } else {
                problems.push(format!(
                    "{} on ({}, {}): predicted {} x{}, got {} x{}, point error {:e}",
                    p.case_tag.label(),
                    p.class.t,
                    p.class.n,
                    p.predicted.kind.label(),
                    p.predicted.multiplicity,
                    actual.kind.label(),
                    actual.multiplicity,
                    cmp.point_error
                ));
            }
        }

        // associative-subalgebra reductions
        let associative = matches!(scenario, Scenario::Quaternionic | Scenario::RealFactor);
        if associative {
            let simplified = match p.case_tag {
                CaseTag::Case1 => zf
                    .iter()
                    .find(|r| r.class.matches(&p.class, tol))
                    .and_then(ZeroRecord::point),
                CaseTag::Case2 => {
                    let beta = zg
                        .iter()
                        .find(|r| r.class.matches(&p.class, tol))
                        .and_then(ZeroRecord::point);
                    let (a, b) = remainder_at(f, &p.class, tol)?.parts();
                    beta.and_then(|beta| {
                        let m = b + a * beta.conj();
                        m.inverse_with(&Tolerances { abs: 0.0, ..*tol })
                            .ok()
                            .map(|inv| (m * beta) * inv)
                    })
                }
                _ => None,
            };
            if let (Some(s), Some(q)) = (simplified, p.predicted.point()) {
                let err = (s - q).norm() / q.norm().max(1.0);
                out.associative_checks += 1;
                out.associative_worst = out.associative_worst.max(err);
                if err > POINT_TOLERANCE {
                    problems.push(format!(
                        "{} associative reduction off by {err:e}",
                        p.case_tag.label()
                    ));
                }
            }
        }
    }

    if !problems.is_empty() {
        out.failure = Some(problems.join("; "));
    } else if borderline_problems > 0 {
        out.borderline_only = true;
    }
    Ok(out)
}

fn unresolved(a: &ConjugacyClass, b: &ConjugacyClass, tol: &Tolerances) -> bool {
    let reach = tol.root.sqrt() * a.n.sqrt().max(1.0);
    (a.center() - b.center()).abs() <= reach && (a.radius() - b.radius()).abs() <= reach
}

/// Differential check of the product rule over `trials` seeded random pairs
/// of degree at most `max_degree` each. Trials run in parallel; each draws
/// from its own stream of `seed`, so the report does not depend on
/// scheduling.
pub fn verify_products(trials: usize, max_degree: usize, seed: u64, tol: &Tolerances) -> VerifyReport {
    let outcomes: Vec<(usize, Scenario, OctPoly, OctPoly, Result<TrialOutcome>)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let scenario = SCENARIOS[i % SCENARIOS.len()];
            let mut rng = random::trial_rng(seed, i as u64);
            let (f, g) = build_pair(&mut rng, scenario, max_degree);
            let outcome = run_trial(&f, &g, scenario, tol);
            (i, scenario, f, g, outcome)
        })
        .collect();

    let mut report = VerifyReport {
        trials,
        passes: 0,
        failures: Vec::new(),
        worst_residual: 0.0,
        worst_normal_error: 0.0,
        borderline: 0,
        case_counts: BTreeMap::new(),
        associative_checks: 0,
        associative_worst: 0.0,
    };
    for (trial, scenario, f, g, outcome) in outcomes {
        match outcome {
            Ok(o) => {
                report.worst_residual = report.worst_residual.max(o.worst_residual);
                report.worst_normal_error = report.worst_normal_error.max(o.normal_error);
                report.associative_checks += o.associative_checks;
                report.associative_worst = report.associative_worst.max(o.associative_worst);
                for c in &o.cases {
                    *report.case_counts.entry(c.label().to_string()).or_default() += 1;
                }
                match o.failure {
                    Some(message) => report.failures.push(TrialFailure {
                        trial,
                        scenario,
                        message,
                        f,
                        g,
                    }),
                    None if o.borderline_only => report.borderline += 1,
                    None => report.passes += 1,
                }
            }
            Err(e) => report.failures.push(TrialFailure {
                trial,
                scenario,
                message: e.to_string(),
                f,
                g,
            }),
        }
    }
    report
}
