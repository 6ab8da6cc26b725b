//! Complex roots of real polynomials and their grouping into conjugacy
//! classes.
//!
//! Roots come from Aberth–Ehrlich simultaneous iteration started on a
//! perturbed circle whose radius is the Cauchy bound. If the iteration stops
//! making progress the eigenvalues of the companion matrix are used instead.
//! Multiple roots show up as clusters of nearby approximations; a cluster is
//! detected with Weierstrass inclusion disks (plus the fixed merge radius
//! `sqrt(tol.root) * max(1, |z|)`), its size is the multiplicity, and its
//! centroid is polished by Newton's method on the `(m-1)`-th derivative.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::octonion::ConjugacyClass;
use crate::poly::RealPoly;
use crate::tolerance::Tolerances;

const MAX_SWEEPS: usize = 2000;
const STALL_SWEEPS: usize = 50;
const SCHUR_ITERATIONS: usize = 200;
const CLUSTER_RESIDUAL_ULPS: f64 = 64.0;

/// A root in the complex plane together with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexRoot {
    pub z: Complex64,
    pub multiplicity: usize,
}

/// One conjugacy class of roots of a real polynomial.
///
/// A non-real class stands for the pair `{z, conj(z)}` and carries the
/// multiplicity of `z`; a real class carries the multiplicity of the real
/// root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub t: f64,
    pub n: f64,
    pub mult: usize,
}

impl SpectrumEntry {
    pub fn class(&self) -> ConjugacyClass {
        ConjugacyClass::new(self.t, self.n)
    }
}

/// Distinct root classes of a real polynomial, ordered by `(t, n)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassSpectrum {
    pub entries: Vec<SpectrumEntry>,
}

impl ClassSpectrum {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SpectrumEntry> {
        self.entries.iter()
    }

    /// Number of complex roots represented, counted with multiplicity.
    pub fn complex_root_count(&self, tol: &Tolerances) -> usize {
        self.entries
            .iter()
            .map(|e| {
                if e.class().is_real(tol) {
                    e.mult
                } else {
                    2 * e.mult
                }
            })
            .sum()
    }

    pub fn find(&self, c: &ConjugacyClass, tol: &Tolerances) -> Option<&SpectrumEntry> {
        self.entries.iter().find(|e| e.class().matches(c, tol))
    }
}

/// All complex roots of `p` with multiplicities summing to its degree.
/// The output is closed under conjugation: real roots first, then each
/// upper-half-plane root immediately followed by its conjugate.
pub fn complex_roots(p: &RealPoly, tol: &Tolerances) -> Result<Vec<ComplexRoot>> {
    let degree = p.degree().ok_or(Error::DegreeZero)?;
    if degree == 0 {
        return Err(Error::DegreeZero);
    }
    let coeffs = p.coeffs();
    let zero_roots = coeffs.iter().take_while(|&&c| c == 0.0).count();
    let lead = p.leading();
    let monic: Vec<f64> = coeffs[zero_roots..].iter().map(|c| c / lead).collect();

    let attempts: [&dyn Fn() -> Option<Vec<Complex64>>; 2] = [
        &|| {
            if monic.len() > 1 {
                aberth(&monic)
            } else {
                Some(Vec::new())
            }
        },
        &|| companion_roots(&monic),
    ];

    let mut last_err = None;
    for attempt in attempts {
        let Some(raw) = attempt() else { continue };
        match group_roots(&monic, &raw, tol) {
            Ok(mut roots) => {
                if zero_roots > 0 {
                    roots.insert(
                        0,
                        ComplexRoot {
                            z: Complex64::new(0.0, 0.0),
                            multiplicity: zero_roots,
                        },
                    );
                }
                return Ok(roots);
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::RootFinding("no candidate roots".into())))
}

/// Root classes of `p`: conjugate pairs become one non-real class, real
/// roots become real classes.
pub fn class_spectrum(p: &RealPoly, tol: &Tolerances) -> Result<ClassSpectrum> {
    let roots = complex_roots(p, tol)?;
    let mut entries: Vec<SpectrumEntry> = Vec::new();
    for r in roots.iter().filter(|r| r.z.im >= 0.0) {
        let class = if r.z.im == 0.0 {
            ConjugacyClass::real_point(r.z.re)
        } else {
            ConjugacyClass::new(2.0 * r.z.re, r.z.norm_sqr())
        };
        match entries.iter_mut().find(|e| e.class().matches(&class, tol)) {
            Some(e) => e.mult += r.multiplicity,
            None => entries.push(SpectrumEntry {
                t: class.t,
                n: class.n,
                mult: r.multiplicity,
            }),
        }
    }
    entries.sort_by(|a, b| a.class().cmp_key(&b.class()));
    Ok(ClassSpectrum { entries })
}

/// Largest `s` such that `Delta_c^s` divides `p`, where a division counts as
/// exact when the remainder `r1 w + r0` satisfies
/// `|r1| rho + |r0| <= sqrt(tol.root) * sum |q_i| rho^i`, `rho = sqrt(n)`.
pub fn quadratic_multiplicity(p: &RealPoly, c: &ConjugacyClass, tol: &Tolerances) -> usize {
    let delta = c.char_poly();
    let rho = c.n.max(0.0).sqrt().max(1.0);
    let threshold = tol.root.sqrt();
    let mut current = p.clone();
    let mut s = 0;
    while current.degree().is_some_and(|d| d >= 2) {
        let Ok((q, r)) = current.div_rem(&delta) else {
            break;
        };
        let residual = r.coeff(1).abs() * rho + r.coeff(0).abs();
        if residual > threshold * current.magnitude_at(rho) {
            break;
        }
        s += 1;
        current = q;
    }
    s
}

/// Monic polynomial (given lowest degree first, last coefficient 1) and its
/// first derivative at `z`.
fn eval_with_derivative(monic: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in monic.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn magnitude(monic: &[f64], r: f64) -> f64 {
    monic.iter().rev().fold(0.0, |acc, c| acc * r + c.abs())
}

/// Aberth–Ehrlich iteration in Gauss–Seidel order. Returns `None` when the
/// number of converged roots has not grown for `STALL_SWEEPS` sweeps.
fn aberth(monic: &[f64]) -> Option<Vec<Complex64>> {
    let n = monic.len() - 1;
    let cauchy = 1.0
        + monic[..n]
            .iter()
            .map(|c| c.abs())
            .fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = TAU * k as f64 / n as f64 + 0.4;
            let radius = cauchy * (1.0 + 0.05 * (k as f64 / n as f64 - 0.5));
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let mut done = vec![false; n];
    let mut best = 0usize;
    let mut since_progress = 0usize;
    let eps = f64::EPSILON;

    for _ in 0..MAX_SWEEPS {
        for k in 0..n {
            if done[k] {
                continue;
            }
            let zk = z[k];
            let (p, dp) = eval_with_derivative(monic, zk);
            let noise = 4.0 * eps * (n as f64 + 1.0) * magnitude(monic, zk.norm());
            if p.norm() <= noise {
                done[k] = true;
                continue;
            }
            let sum: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| zk - z[j])
                .filter(|d| d.norm() > 0.0)
                .map(|d| d.inv())
                .sum();
            let step = if dp.norm() == 0.0 {
                Complex64::new(eps.sqrt() * (1.0 + zk.norm()), 0.0)
            } else {
                let ratio = p / dp;
                let denom = Complex64::new(1.0, 0.0) - ratio * sum;
                if denom.norm() == 0.0 {
                    ratio
                } else {
                    ratio / denom
                }
            };
            z[k] = zk - step;
            if !z[k].is_finite() {
                return None;
            }
            if step.norm() <= eps * z[k].norm() {
                done[k] = true;
            }
        }
        let converged = done.iter().filter(|&&d| d).count();
        if converged == n {
            return Some(z);
        }
        if converged > best {
            best = converged;
            since_progress = 0;
        } else {
            since_progress += 1;
            if since_progress >= STALL_SWEEPS {
                return None;
            }
        }
    }
    None
}

/// Eigenvalues of the companion matrix of a monic polynomial, or `None`
/// if the Schur iteration does not converge.
fn companion_roots(monic: &[f64]) -> Option<Vec<Complex64>> {
    let n = monic.len() - 1;
    if n == 0 {
        return Some(Vec::new());
    }
    let m = DMatrix::from_fn(n, n, |r, c| {
        if c == n - 1 {
            -monic[r]
        } else if r == c + 1 {
            1.0
        } else {
            0.0
        }
    });
    let schur = m.try_schur(f64::EPSILON, SCHUR_ITERATIONS * n)?;
    Some(
        schur
            .complex_eigenvalues()
            .iter()
            .map(|z| Complex64::new(z.re, z.im))
            .collect(),
    )
}

/// Clusters the raw approximations, polishes cluster centres and pairs
/// conjugate clusters.
fn group_roots(monic: &[f64], raw: &[Complex64], tol: &Tolerances) -> Result<Vec<ComplexRoot>> {
    let n = raw.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let eps = f64::EPSILON;
    // Weierstrass inclusion radii, inflated by the rounding level of P.
    let radii: Vec<f64> = (0..n)
        .map(|k| {
            let zk = raw[k];
            let (p, _) = eval_with_derivative(monic, zk);
            let noise = 4.0 * eps * (n as f64 + 1.0) * magnitude(monic, zk.norm());
            let prod: f64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (zk - raw[j]).norm())
                .product();
            if prod == 0.0 {
                f64::INFINITY
            } else {
                n as f64 * (p.norm() + noise) / prod
            }
        })
        .collect();

    let merge_radius = tol.root.sqrt();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut i = i;
        while parent[i] != r {
            let next = parent[i];
            parent[i] = r;
            i = next;
        }
        r
    }
    for a in 0..n {
        for b in a + 1..n {
            let d = (raw[a] - raw[b]).norm();
            let scale = raw[a].norm().max(raw[b].norm()).max(1.0);
            if d <= merge_radius * scale || d <= radii[a] + radii[b] {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    }

    let mut coarse: Vec<Vec<usize>> = Vec::new();
    let mut index_of = vec![usize::MAX; n];
    for k in 0..n {
        let r = find(&mut parent, k);
        if index_of[r] == usize::MAX {
            index_of[r] = coarse.len();
            coarse.push(Vec::new());
        }
        coarse[index_of[r]].push(k);
    }

    let full = RealPoly::new(monic.to_vec());
    let mut clusters = Vec::new();
    for members in coarse {
        resolve_cluster(&full, raw, members, &mut clusters);
    }
    let mut real = Vec::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for members in &clusters {
        let m = members.len();
        let centroid: Complex64 =
            members.iter().map(|&k| raw[k]).sum::<Complex64>() / m as f64;
        let spread = members
            .iter()
            .map(|&k| (raw[k] - centroid).norm())
            .fold(0.0, f64::max);
        let scale = centroid.norm().max(1.0);
        let straddles = centroid.im.abs() <= spread + merge_radius * scale;
        if straddles {
            let x = polish(&full, m, Complex64::new(centroid.re, 0.0), spread, scale);
            real.push(ComplexRoot {
                z: Complex64::new(x.re, 0.0),
                multiplicity: m,
            });
        } else {
            let z = polish(&full, m, centroid, spread, scale);
            let root = ComplexRoot { z, multiplicity: m };
            if z.im > 0.0 {
                upper.push(root);
            } else {
                lower.push(root);
            }
        }
    }

    // Conjugate clusters are matched in groups: rounding may split a
    // multiple pair differently on the two sides. A group that does not
    // balance lies on the real axis, as a real multiple root split unevenly.
    let reach = |z: Complex64| tol.root.powf(0.25) * z.norm().max(1.0);
    let nu = upper.len();
    let mut group: Vec<usize> = (0..nu + lower.len()).collect();
    for (i, u) in upper.iter().enumerate() {
        for (j, l) in lower.iter().enumerate() {
            if (l.z - u.z.conj()).norm() <= reach(u.z) {
                let (ri, rj) = (find(&mut group, i), find(&mut group, nu + j));
                if ri != rj {
                    group[ri] = rj;
                }
            }
        }
    }
    let mut groups: Vec<(Vec<ComplexRoot>, Vec<ComplexRoot>)> = Vec::new();
    let mut slot = vec![usize::MAX; group.len()];
    for k in 0..group.len() {
        let r = find(&mut group, k);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push((Vec::new(), Vec::new()));
        }
        let g = &mut groups[slot[r]];
        if k < nu {
            g.0.push(upper[k]);
        } else {
            g.1.push(lower[k - nu]);
        }
    }
    let mut pairs = Vec::new();
    for (ups, lows) in groups {
        let mu: usize = ups.iter().map(|r| r.multiplicity).sum();
        let ml: usize = lows.iter().map(|r| r.multiplicity).sum();
        if mu == ml && ups.len() == lows.len() {
            if let Some(matched) = match_one_to_one(&ups, &lows) {
                pairs.extend(matched);
                continue;
            }
        }
        if mu == ml {
            let pts: Vec<Complex64> = ups
                .iter()
                .chain(&lows)
                .map(|r| Complex64::new(r.z.re, r.z.im.abs()) * r.multiplicity as f64)
                .collect();
            let centroid = pts.iter().sum::<Complex64>() / (2 * mu) as f64;
            let spread = ups
                .iter()
                .chain(&lows)
                .map(|r| (Complex64::new(r.z.re, r.z.im.abs()) - centroid).norm())
                .fold(0.0, f64::max);
            let z = polish(&full, mu, centroid, spread, centroid.norm().max(1.0));
            pairs.push((Complex64::new(z.re, z.im.abs()), mu));
        } else {
            // A real polynomial has no unpaired non-real roots, so the
            // group is a real multiple root whose spread grows like
            // eps^(1/m). The real-mass check downstream catches bad folds.
            for o in ups.iter().chain(&lows) {
                let window = reach(o.z).max(2.0 * o.z.im.abs());
                let nearest = real
                    .iter_mut()
                    .map(|r| ((r.z.re - o.z.re).abs(), r))
                    .filter(|(d, _)| *d <= window)
                    .min_by(|a, b| a.0.total_cmp(&b.0));
                match nearest {
                    Some((_, r)) => r.multiplicity += o.multiplicity,
                    None => real.push(ComplexRoot {
                        z: Complex64::new(o.z.re, 0.0),
                        multiplicity: o.multiplicity,
                    }),
                }
            }
        }
    }
    pairs.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));

    let mut out = real;
    out.sort_by(|a, b| a.z.re.total_cmp(&b.z.re));
    for (z, multiplicity) in pairs {
        out.push(ComplexRoot { z, multiplicity });
        out.push(ComplexRoot {
            z: z.conj(),
            multiplicity,
        });
    }
    Ok(out)
}

/// Accepts `members` as one multiple root if the polished centre `c` has
/// `|P^(j)(c) / j!| <= 64 deg(P) eps * sum_i C(i, j) |p_i| |c|^(i-j)` for
/// every `j < m`, i.e. the Taylor coefficients vanish to rounding level;
/// otherwise splits at the longest edge of the minimum spanning
/// tree and recurses.
/// Pairs each upper cluster with the nearest unused mirror of equal
/// multiplicity, or `None` if some cluster has no such partner.
fn match_one_to_one(ups: &[ComplexRoot], lows: &[ComplexRoot]) -> Option<Vec<(Complex64, usize)>> {
    let mut used = vec![false; lows.len()];
    let mut out = Vec::with_capacity(ups.len());
    for u in ups {
        let (i, l) = lows
            .iter()
            .enumerate()
            .filter(|(i, l)| !used[*i] && l.multiplicity == u.multiplicity)
            .min_by(|a, b| {
                (a.1.z - u.z.conj())
                    .norm()
                    .total_cmp(&(b.1.z - u.z.conj()).norm())
            })?;
        used[i] = true;
        out.push(((u.z + l.z.conj()) / 2.0, u.multiplicity));
    }
    Some(out)
}

fn resolve_cluster(
    p: &RealPoly,
    raw: &[Complex64],
    members: Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let m = members.len();
    if m == 1 || is_multiple_root(p, raw, &members) {
        out.push(members);
        return;
    }
    let (left, right) = split_longest_edge(raw, &members);
    resolve_cluster(p, raw, left, out);
    resolve_cluster(p, raw, right, out);
}

fn is_multiple_root(p: &RealPoly, raw: &[Complex64], members: &[usize]) -> bool {
    let m = members.len();
    let centroid: Complex64 = members.iter().map(|&k| raw[k]).sum::<Complex64>() / m as f64;
    let spread = members
        .iter()
        .map(|&k| (raw[k] - centroid).norm())
        .fold(0.0, f64::max);
    let c = polish(p, m, centroid, spread, centroid.norm().max(1.0));
    let coeffs = p.coeffs();
    // Taylor shift of P and of sum |p_i| w^i to the centre
    let mut shifted: Vec<Complex64> = coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect();
    let mut magnitude: Vec<f64> = coeffs.iter().map(|a| a.abs()).collect();
    let r = c.norm();
    let d = coeffs.len();
    for j in 0..d {
        for k in (j..d - 1).rev() {
            let next = shifted[k + 1];
            shifted[k] += c * next;
            let next = magnitude[k + 1];
            magnitude[k] += r * next;
        }
    }
    let threshold = CLUSTER_RESIDUAL_ULPS * (d - 1) as f64 * f64::EPSILON;
    (0..m.min(d)).all(|j| shifted[j].norm() <= threshold * magnitude[j])
}

/// Splits a point set into the two components left after deleting the
/// longest edge of its minimum spanning tree.
fn split_longest_edge(raw: &[Complex64], members: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = members.len();
    let dist = |a: usize, b: usize| (raw[members[a]] - raw[members[b]]).norm();
    // Prim's algorithm
    let mut in_tree = vec![false; m];
    let mut best: Vec<(f64, usize)> = (0..m).map(|v| (dist(0, v), 0)).collect();
    let mut edges = Vec::with_capacity(m - 1);
    in_tree[0] = true;
    for _ in 1..m {
        let v = (0..m)
            .filter(|&v| !in_tree[v])
            .min_by(|&a, &b| best[a].0.total_cmp(&best[b].0))
            .expect("vertex left");
        in_tree[v] = true;
        edges.push((best[v].0, best[v].1, v));
        for u in 0..m {
            if !in_tree[u] && dist(v, u) < best[u].0 {
                best[u] = (dist(v, u), v);
            }
        }
    }
    let longest = edges
        .iter()
        .enumerate()
        .max_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
        .map(|(i, _)| i)
        .expect("at least one edge");
    edges.remove(longest);
    // component of vertex 0 in the remaining forest
    let mut side = vec![false; m];
    side[0] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for &(_, a, b) in &edges {
            if side[a] != side[b] {
                side[a] = true;
                side[b] = true;
                changed = true;
            }
        }
    }
    let (left, right): (Vec<usize>, Vec<usize>) = (0..m).partition(|&v| side[v]);
    (
        left.into_iter().map(|v| members[v]).collect(),
        right.into_iter().map(|v| members[v]).collect(),
    )
}

/// Newton on `P^(m-1)`, which has a simple root at an `m`-fold root of `P`.
/// Steps that leave the cluster or fail to reduce the residual are rejected.
fn polish(p: &RealPoly, m: usize, start: Complex64, spread: f64, scale: f64) -> Complex64 {
    let mut d = p.clone();
    for _ in 1..m {
        d = d.derivative();
    }
    let dd = d.derivative();
    let limit = 4.0 * spread + 1e-6 * scale;
    let mut z = start;
    let mut value = d.eval_complex(z).norm();
    for _ in 0..8 {
        let slope = dd.eval_complex(z);
        if slope.norm() == 0.0 || value == 0.0 {
            break;
        }
        let next = z - d.eval_complex(z) / slope;
        let next_value = d.eval_complex(next).norm();
        if !next.is_finite() || (next - start).norm() > limit || next_value >= value {
            break;
        }
        z = next;
        value = next_value;
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn quad(t: f64, n: f64) -> RealPoly {
        ConjugacyClass::new(t, n).char_poly()
    }

    #[test]
    fn constant_input_is_rejected() {
        assert_eq!(
            complex_roots(&RealPoly::constant(3.0), &tol()),
            Err(Error::DegreeZero)
        );
        assert_eq!(
            complex_roots(&RealPoly::default(), &tol()),
            Err(Error::DegreeZero)
        );
    }

    #[test]
    fn roots_of_w4_w2_1() {
        let p = RealPoly::new(vec![1.0, 0.0, 1.0, 0.0, 1.0]);
        let roots = complex_roots(&p, &tol()).unwrap();
        assert_eq!(roots.len(), 4);
        let h = 3f64.sqrt() / 2.0;
        for expected in [
            Complex64::new(0.5, h),
            Complex64::new(0.5, -h),
            Complex64::new(-0.5, h),
            Complex64::new(-0.5, -h),
        ] {
            let hit = roots
                .iter()
                .find(|r| (r.z - expected).norm() < 1e-12)
                .expect("missing root");
            assert_eq!(hit.multiplicity, 1);
        }
    }

    #[test]
    fn roots_of_w2_plus_1() {
        let roots = complex_roots(&quad(0.0, 1.0), &tol()).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].z - Complex64::new(0.0, 1.0)).norm() < 1e-14);
        assert!((roots[1].z - Complex64::new(0.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn double_roots_are_clustered() {
        // (w^2 + 1)^2 = w^4 + 2 w^2 + 1
        let p = RealPoly::new(vec![1.0, 0.0, 2.0, 0.0, 1.0]);
        let roots = complex_roots(&p, &tol()).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert_eq!(r.multiplicity, 2);
            assert!((r.z.norm() - 1.0).abs() < 1e-12 && r.z.re.abs() < 1e-12);
        }
    }

    #[test]
    fn zero_roots_are_factored_out() {
        let p = RealPoly::new(vec![0.0, 0.0, -1.0, 1.0]);
        let roots = complex_roots(&p, &tol()).unwrap();
        assert_eq!(roots[0].z, Complex64::new(0.0, 0.0));
        assert_eq!(roots[0].multiplicity, 2);
        assert!((roots[1].z.re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn spectrum_examples() {
        let t = tol();
        let s = class_spectrum(&RealPoly::new(vec![1.0, 0.0, 1.0, 0.0, 1.0]), &t).unwrap();
        assert_eq!(s.len(), 2);
        assert!((s.entries[0].t + 1.0).abs() < 1e-12 && (s.entries[0].n - 1.0).abs() < 1e-12);
        assert!((s.entries[1].t - 1.0).abs() < 1e-12 && (s.entries[1].n - 1.0).abs() < 1e-12);
        assert!(s.iter().all(|e| e.mult == 1));

        // (w - 2)^2
        let s = class_spectrum(&RealPoly::from_real_roots(&[2.0, 2.0]), &t).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s.entries[0].t - 4.0).abs() < 1e-12 && (s.entries[0].n - 4.0).abs() < 1e-12);
        assert_eq!(s.entries[0].mult, 2);

        // (w^2 + 1)^3
        let s = class_spectrum(&quad(0.0, 1.0).pow(3), &t).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.entries[0].mult, 3);
        assert!(s.entries[0].t.abs() < 1e-10 && (s.entries[0].n - 1.0).abs() < 1e-10);
        assert_eq!(s.complex_root_count(&t), 6);
    }

    #[test]
    fn quadratic_multiplicity_examples() {
        let t = tol();
        let p = RealPoly::new(vec![1.0, 0.0, 1.0, 0.0, 1.0]);
        assert_eq!(quadratic_multiplicity(&p, &ConjugacyClass::new(1.0, 1.0), &t), 1);
        assert_eq!(
            quadratic_multiplicity(&quad(0.0, 1.0), &ConjugacyClass::new(0.0, 4.0), &t),
            0
        );
        let p = quad(0.0, 1.0).pow(2).mul(&quad(-1.0, 1.0));
        assert_eq!(quadratic_multiplicity(&p, &ConjugacyClass::new(0.0, 1.0), &t), 2);
        assert_eq!(quadratic_multiplicity(&p, &ConjugacyClass::new(-1.0, 1.0), &t), 1);
    }

    #[test]
    fn companion_fallback_agrees_with_aberth() {
        // (w - 1)(w - 2)(w - 3)
        let monic = [-6.0, 11.0, -6.0, 1.0];
        let mut a = aberth(&monic).unwrap();
        let mut b = companion_roots(&monic).unwrap();
        a.sort_by(|x, y| x.re.total_cmp(&y.re));
        b.sort_by(|x, y| x.re.total_cmp(&y.re));
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-9);
        }
    }
}
