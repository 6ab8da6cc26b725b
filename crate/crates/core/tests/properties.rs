use hyperzero::roots::{class_spectrum, complex_roots, quadratic_multiplicity};
use hyperzero::series::{series_divide_linear, series_divide_linear_forward, TruncatedSeries};
use hyperzero::zeros::{
    classify_at, divide_linear, remainder_at, remainder_at_point, summarize, zero_set,
};
use hyperzero::{ConjugacyClass, Octonion, OctPoly, RealPoly, Remainder, Tolerances, ZeroKind};
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -1.0f64..=1.0
}

fn octonion() -> impl Strategy<Value = Octonion> {
    prop::array::uniform8(coord()).prop_map(Octonion::new)
}

fn quaternion() -> impl Strategy<Value = Octonion> {
    prop::array::uniform4(coord()).prop_map(|[a, b, c, d]| Octonion::quaternion(a, b, c, d))
}

fn nonreal() -> impl Strategy<Value = Octonion> {
    octonion().prop_filter("needs an imaginary part", |x| x.im().norm() > 0.1)
}

fn unit_imaginary() -> impl Strategy<Value = Octonion> {
    octonion()
        .prop_filter("needs an imaginary part", |x| x.im().norm() > 0.1)
        .prop_map(|x| x.im() / x.im().norm())
}

/// Polynomial of exact degree `1..=max_degree` with a leading coefficient
/// bounded away from zero.
fn poly(max_degree: usize) -> impl Strategy<Value = OctPoly> {
    (1..=max_degree)
        .prop_flat_map(|d| prop::collection::vec(octonion(), d + 1))
        .prop_filter("leading coefficient too small", |c| c.last().unwrap().norm() > 0.2)
        .prop_map(OctPoly::new)
}

fn real_poly(max_degree: usize) -> impl Strategy<Value = RealPoly> {
    (1..=max_degree)
        .prop_flat_map(|d| prop::collection::vec(coord(), d + 1))
        .prop_filter("leading coefficient too small", |c| c.last().unwrap().abs() > 0.2)
        .prop_map(RealPoly::new)
}

fn rel(a: &Octonion, b: &Octonion) -> f64 {
    (*a - *b).norm() / a.norm().max(b.norm()).max(1.0)
}

const ALGEBRA_TOL: f64 = 1e-12;

proptest! {
    #[test]
    fn norm_is_multiplicative(x in octonion(), y in octonion()) {
        let lhs = (x * y).norm_sq();
        let rhs = x.norm_sq() * y.norm_sq();
        prop_assert!((lhs - rhs).abs() <= ALGEBRA_TOL * rhs.max(1.0));
    }

    #[test]
    fn alternative_laws(x in octonion(), y in octonion()) {
        prop_assert!(rel(&((x * x) * y), &(x * (x * y))) <= ALGEBRA_TOL);
        prop_assert!(rel(&(y * (x * x)), &((y * x) * x)) <= ALGEBRA_TOL);
    }

    #[test]
    fn flexible_law(x in octonion(), y in octonion()) {
        prop_assert!(rel(&(x * (y * x)), &((x * y) * x)) <= ALGEBRA_TOL);
    }

    #[test]
    fn two_generated_subalgebra_is_associative(x in octonion(), y in octonion()) {
        let gens = [x, y, x.conj(), y.conj()];
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let assoc = Octonion::associator(a, b, c);
                    prop_assert!(assoc.norm() <= ALGEBRA_TOL * (a.norm() * b.norm() * c.norm()).max(1.0));
                }
            }
        }
    }

    #[test]
    fn trace_is_commutative_and_associative(x in octonion(), y in octonion(), z in octonion()) {
        prop_assert!(((x * y).trace() - (y * x).trace()).abs() <= ALGEBRA_TOL);
        prop_assert!((((x * y) * z).trace() - (x * (y * z)).trace()).abs() <= ALGEBRA_TOL);
    }

    #[test]
    fn conjugation_reverses_products(x in octonion(), y in octonion()) {
        prop_assert!(rel(&(x * y).conj(), &(y.conj() * x.conj())) <= ALGEBRA_TOL);
    }

    #[test]
    fn inverse_is_two_sided(x in octonion().prop_filter("invertible", |x| x.norm() > 0.1)) {
        let inv = x.inverse().unwrap();
        prop_assert!(rel(&(x * inv), &Octonion::ONE) <= 1e-12);
        prop_assert!(rel(&(inv * x), &Octonion::ONE) <= 1e-12);
    }

    #[test]
    fn quaternions_are_closed(x in quaternion(), y in quaternion()) {
        let c = *(x * y).coords();
        prop_assert_eq!(&c[4..], &[0.0; 4]);
    }

    #[test]
    fn class_contains_its_member(x in nonreal()) {
        let c = x.class();
        prop_assert!((c.t - x.trace()).abs() <= 1e-15);
        prop_assert!((c.n - x.norm_sq()).abs() <= 1e-15);
        // x is a root of its characteristic polynomial
        let delta = OctPoly::from_real(&c.char_poly());
        prop_assert!(delta.evaluate(&x).norm() <= 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normal_is_multiplicative(f in poly(6), g in poly(6)) {
        let tol = Tolerances::default();
        let lhs = f.star_mul(&g).normal(&tol).unwrap();
        let rhs = f.normal(&tol).unwrap().mul(&g.normal(&tol).unwrap());
        let scale = rhs.coeffs().iter().fold(1.0f64, |m, c| m.max(c.abs()));
        prop_assert!(lhs.max_coeff_distance(&rhs) <= 1e-8 * scale);
    }

    #[test]
    fn star_product_adds_degrees(f in poly(6), g in poly(6)) {
        let d = f.star_mul(&g).degree().unwrap();
        prop_assert_eq!(d, f.degree().unwrap() + g.degree().unwrap());
    }

    #[test]
    fn normal_at_real_point_is_squared_norm(f in poly(6), x in -2.0f64..2.0) {
        let n = f.normal(&Tolerances::default()).unwrap();
        let v = f.evaluate(&Octonion::real(x)).norm_sq();
        prop_assert!((n.eval(x) - v).abs() <= 1e-10 * v.max(1.0) * f.magnitude_at(x.abs()).powi(2).max(1.0));
    }

    #[test]
    fn real_factor_evaluates_pointwise(r in real_poly(4), g in poly(4), x in octonion()) {
        let f = OctPoly::from_real(&r);
        let lhs = f.star_mul(&g).evaluate(&x);
        let rhs = f.evaluate(&x) * g.evaluate(&x);
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1.0) * 100.0);
    }

    #[test]
    fn real_factor_associates(r in real_poly(3), g in poly(3), h in poly(3)) {
        let f = OctPoly::from_real(&r);
        let lhs = f.star_mul(&g).star_mul(&h);
        let rhs = f.star_mul(&g.star_mul(&h));
        prop_assert!(lhs.max_coeff_distance(&rhs) <= 1e-12 * lhs.max_coeff_norm().max(1.0));
    }

    #[test]
    fn linear_division_reconstructs(f in poly(8), alpha in octonion()) {
        let (q, r) = divide_linear(&f, &alpha);
        let back = OctPoly::linear(alpha).star_mul(&q).add_with(&OctPoly::constant(r), &Tolerances::default());
        prop_assert!(back.max_coeff_distance(&f) <= 1e-12 * f.max_coeff_norm() * f.magnitude_at(alpha.norm()).max(1.0));
        prop_assert!((r - f.evaluate(&alpha)).norm() <= 1e-12 * f.magnitude_at(alpha.norm()).max(1.0));
    }

    #[test]
    fn remainder_does_not_depend_on_the_representative(f in poly(6), alpha in nonreal(), unit in unit_imaginary()) {
        let tol = Tolerances::default();
        let c = alpha.class();
        let canonical = remainder_at(&f, &c, &tol).unwrap();
        let other = remainder_at_point(&f, &c.point_on(&unit));
        let scale = f.magnitude_at(c.n.sqrt()).max(1.0);
        prop_assert!(canonical.max_abs_diff(&other) <= 1e-10 * scale);
    }

    #[test]
    fn normal_remainder_identity_nonreal(f in poly(5), alpha in nonreal()) {
        let tol = Tolerances::default();
        let c = alpha.class();
        let (a, b) = remainder_at(&f, &c, &tol).unwrap().parts();
        let n = OctPoly::from_real(&f.normal(&tol).unwrap());
        let (na, nb) = remainder_at(&n, &c, &tol).unwrap().parts();
        let expected_a = (a * b.conj()).trace() + c.t * a.norm_sq();
        let expected_b = b.norm_sq() - c.n * a.norm_sq();
        let scale = f.magnitude_at(c.n.sqrt()).powi(2).max(1.0);
        prop_assert!((na - Octonion::real(expected_a)).norm() <= 1e-9 * scale);
        prop_assert!((nb - Octonion::real(expected_b)).norm() <= 1e-9 * scale);
    }

    #[test]
    fn normal_remainder_identity_real(f in poly(5), x in -1.5f64..1.5) {
        let tol = Tolerances::default();
        let c = ConjugacyClass::real_point(x);
        let r = remainder_at(&f, &c, &tol).unwrap();
        let n = OctPoly::from_real(&f.normal(&tol).unwrap());
        let nr = remainder_at(&n, &c, &tol).unwrap();
        let (_, rb) = r.parts();
        let scale = f.magnitude_at(x.abs()).powi(2).max(1.0);
        prop_assert!(matches!(nr, Remainder::Constant(_)));
        prop_assert!((nr.parts().1 - Octonion::real(rb.norm_sq())).norm() <= 1e-10 * scale);
    }

    #[test]
    fn series_division_matches_polynomial_division(f in poly(8), alpha in octonion().prop_map(|a| a * 0.5)) {
        let (q, r) = divide_linear(&f, &alpha);
        let s = TruncatedSeries::from_poly(&f, 16);
        let div = series_divide_linear(&s, &alpha, 16).unwrap();
        prop_assert!((div.remainder - r).norm() <= 1e-12 * f.max_coeff_norm() * 4.0);
        for n in 0..=16 {
            prop_assert!((div.quotient.coeff(n) - q.coeff(n)).norm() <= 1e-12 * f.max_coeff_norm() * 4.0);
        }
        let forward = series_divide_linear_forward(&s, &alpha, 4);
        if let Ok(forward) = forward {
            if alpha.norm() > 0.3 {
                for n in 0..=4 {
                    prop_assert!((forward.quotient.coeff(n) - q.coeff(n)).norm() <= 1e-8 * f.max_coeff_norm().max(1.0));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn complex_roots_are_conjugation_closed(p in real_poly(10)) {
        let tol = Tolerances::default();
        let roots = complex_roots(&p, &tol).unwrap();
        let total: usize = roots.iter().map(|r| r.multiplicity).sum();
        prop_assert_eq!(total, p.degree().unwrap());
        for r in roots.iter().filter(|r| r.z.im != 0.0) {
            let twin = roots.iter().find(|s| s.z == r.z.conj());
            prop_assert!(twin.is_some_and(|s| s.multiplicity == r.multiplicity));
        }
        let scale = |z: num_complex::Complex64| {
            p.coeffs().iter().map(|c| c.abs()).sum::<f64>() * z.norm().max(1.0).powi(p.degree().unwrap() as i32)
        };
        for r in roots.iter().filter(|r| r.multiplicity == 1) {
            prop_assert!(p.eval_complex(r.z).norm() <= tol.root * scale(r.z));
        }
    }

    #[test]
    fn spectrum_agrees_with_quadratic_division(
        classes in prop::collection::vec((-1.5f64..1.5, 0.3f64..1.5, 1usize..=2), 1..=3)
    ) {
        let tol = Tolerances::default();
        // distinct classes built from (center, radius, power)
        let mut chosen: Vec<(ConjugacyClass, usize)> = Vec::new();
        for (center, radius, power) in classes {
            let c = ConjugacyClass::new(2.0 * center, center * center + radius * radius);
            if chosen.iter().all(|(d, _)| (d.t - c.t).abs() + (d.n - c.n).abs() > 0.3) {
                chosen.push((c, power));
            }
        }
        let p = chosen.iter().fold(RealPoly::one(), |acc, (c, k)| acc.mul(&c.char_poly().pow(*k as u32)));
        let spectrum = class_spectrum(&p, &tol).unwrap();
        prop_assert_eq!(spectrum.len(), chosen.len());
        for (c, k) in &chosen {
            let entry = spectrum.find(c, &tol);
            prop_assert!(entry.is_some_and(|e| e.mult == *k));
            prop_assert_eq!(quadratic_multiplicity(&p, c, &tol), *k);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zero_set_satisfies_the_counting_theorem(f in poly(8)) {
        let tol = Tolerances::default();
        let records = zero_set(&f, &tol).unwrap();
        let summary = summarize(&f, &records).unwrap();
        prop_assert_eq!(summary.total_multiplicity, summary.degree);
        prop_assert!(summary.r + summary.i + 2 * summary.s <= summary.degree);
        prop_assert!(records.len() <= 2 * summary.degree);
        for rec in &records {
            if let Some(p) = rec.point() {
                prop_assert!(f.evaluate(&p).norm() <= 1e-7 * f.magnitude_at(p.norm()).max(1.0));
            }
            if rec.is_spherical() {
                prop_assert!(rec.multiplicity >= 2);
            }
        }
    }

    #[test]
    fn classification_is_a_trichotomy(f in poly(6), alpha in nonreal(), unit in unit_imaginary()) {
        let tol = Tolerances::default();
        let c = alpha.class();
        match classify_at(&f, &c, &tol).unwrap().map(|r| r.kind) {
            None => {}
            Some(ZeroKind::Isolated(p)) => prop_assert!(f.evaluate(&p).norm() <= 1e-7 * f.magnitude_at(p.norm()).max(1.0)),
            Some(ZeroKind::Spherical) => {
                let p = c.point_on(&unit);
                prop_assert!(f.evaluate(&p).norm() <= 1e-7 * f.magnitude_at(p.norm()).max(1.0));
            }
            Some(ZeroKind::Real(_)) => prop_assert!(false, "real record on a non-real class"),
        }
    }

    #[test]
    fn spherical_factor_gives_spherical_zero(f in poly(4), alpha in nonreal()) {
        let tol = Tolerances::default();
        let c = alpha.class();
        let g = OctPoly::from_real(&c.char_poly()).star_mul(&f);
        let rec = classify_at(&g, &c, &tol).unwrap();
        prop_assert!(rec.is_some_and(|r| r.is_spherical() && r.multiplicity >= 2));
    }

    #[test]
    fn real_polynomials_have_no_isolated_zeros(r in real_poly(8)) {
        let tol = Tolerances::default();
        let f = OctPoly::from_real(&r);
        let records = zero_set(&f, &tol).unwrap();
        prop_assert!(records.iter().all(|rec| !rec.is_isolated()));
        let total: usize = records.iter().map(|rec| rec.multiplicity).sum();
        prop_assert_eq!(total, r.degree().unwrap());
    }

    #[test]
    fn zero_set_is_deterministic(f in poly(6)) {
        let tol = Tolerances::default();
        prop_assert_eq!(zero_set(&f, &tol).unwrap(), zero_set(&f, &tol).unwrap());
    }
}

#[test]
fn associator_of_basis_units_is_nonzero() {
    let lhs = (Octonion::I * Octonion::J) * Octonion::K;
    let rhs = Octonion::I * (Octonion::J * Octonion::K);
    assert_ne!(lhs, rhs);
    assert_eq!(lhs, -rhs);
}

#[test]
fn star_product_is_not_pointwise() {
    // (w - i) * (w - j) at j is 2ij, while (j - i)(j - j) = 0
    let f = OctPoly::linear(Octonion::I);
    let g = OctPoly::linear(Octonion::J);
    let x = Octonion::J;
    let star = f.star_mul(&g).evaluate(&x);
    assert_eq!(star, Octonion::IJ * 2.0);
    assert_eq!(f.evaluate(&x) * g.evaluate(&x), Octonion::ZERO);
}
