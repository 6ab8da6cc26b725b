//! How the zeros of a product relate to the zeros of its factors. The
//! product vanishes on the same classes, but an isolated zero of a factor
//! generally moves to another point of its class.

use hyperzero::camshaft::{compare, predict_product, verify_products};
use hyperzero::text::{format_octonion, format_poly, parse_poly};
use hyperzero::zeros::zero_set;
use hyperzero::Tolerances;

fn main() -> hyperzero::Result<()> {
    let tol = Tolerances::default();
    // a constant right factor already moves the zero: V(wi - j) = {ij}
    for (f, g) in [("w i - j", "k"), ("w - i", "w - j"), ("w j - i j", "w - i")] {
        let f = parse_poly(f)?;
        let g = parse_poly(g)?;
        let fg = f.star_mul(&g);
        println!("f = {}, g = {}", format_poly(&f, &tol), format_poly(&g, &tol));
        let actual = zero_set(&fg, &tol)?;
        for pred in predict_product(&f, &g, &tol)? {
            let point = match pred.predicted.point() {
                Some(p) => format!(" at {}", format_octonion(&p, &tol)),
                None => String::new(),
            };
            let computed = actual.iter().find(|r| r.class.matches(&pred.class, &tol));
            let agrees = computed.is_some_and(|r| {
                let c = compare(&pred, r);
                c.kind_matches && c.multiplicity_matches
            });
            println!(
                "  [{}] {} x{}{}, agrees with direct computation: {}",
                pred.case_tag.label(),
                pred.predicted.kind.label(),
                pred.predicted.multiplicity,
                point,
                agrees
            );
        }
    }

    let report = verify_products(200, 5, 42, &tol);
    println!(
        "random suite: {}/{} passed, {} borderline, cases {:?}",
        report.passes, report.trials, report.borderline, report.case_counts
    );
    Ok(())
}
