//! Two different monic polynomials with the same zero set and
//! multiplicities: (w - i) * (w - i) and (w - i) * (w - j).

use hyperzero::text::{format_octonion, format_poly};
use hyperzero::zeros::zero_set;
use hyperzero::{OctPoly, Octonion, Tolerances};

fn main() -> hyperzero::Result<()> {
    let tol = Tolerances::default();
    let wi = OctPoly::linear(Octonion::I);
    let f1 = wi.star_mul(&wi);
    let f2 = wi.star_mul(&OctPoly::linear(Octonion::J));
    let diff = f1.sub_with(&f2, &tol);
    for f in [&f1, &f2, &diff] {
        let zeros = zero_set(f, &tol)?;
        let desc: Vec<String> = zeros
            .iter()
            .map(|r| match r.point() {
                Some(p) => format!("{} x{}", format_octonion(&p, &tol), r.multiplicity),
                None => format!("{} x{}", r.kind.label(), r.multiplicity),
            })
            .collect();
        println!("{:<24} zeros: {}", format_poly(f, &tol), desc.join(", "));
    }
    Ok(())
}
