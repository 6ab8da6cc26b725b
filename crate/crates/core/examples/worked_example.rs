//! Zero set of f(w) = w^2 + w i + j: the normal polynomial, the remainder on
//! each candidate class, and the two isolated zeros.

use hyperzero::text::{format_octonion, format_poly, format_real_poly, parse_poly};
use hyperzero::zeros::{remainder_at, summarize, zero_set};
use hyperzero::{Tolerances, ZeroKind};

fn main() -> hyperzero::Result<()> {
    let tol = Tolerances::default();
    let f = parse_poly("w^2 + w i + j")?;
    let n = f.normal(&tol)?;
    println!("f    = {}", format_poly(&f, &tol));
    println!("N(f) = {}", format_real_poly(&n, &tol));

    for rec in zero_set(&f, &tol)? {
        let r = remainder_at(&f, &rec.class, &tol)?;
        println!(
            "class (t, n) = ({}, {}): remainder {}",
            rec.class.t,
            rec.class.n,
            format_poly(&r.to_poly(), &tol)
        );
        if let ZeroKind::Isolated(p) = rec.kind {
            println!("  isolated zero {}, |f(p)| = {:e}", format_octonion(&p, &tol), f.evaluate(&p).norm());
        }
    }
    let summary = summarize(&f, &zero_set(&f, &tol)?)?;
    println!("total multiplicity {} = degree {}", summary.total_multiplicity, summary.degree);
    Ok(())
}
