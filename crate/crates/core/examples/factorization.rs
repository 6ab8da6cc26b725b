//! Splitting a polynomial into linear factors and re-expanding it.

use hyperzero::random::{constructed_factors, product, trial_rng};
use hyperzero::text::{format_octonion, format_poly};
use hyperzero::zeros::factorize;
use hyperzero::Tolerances;

fn main() -> hyperzero::Result<()> {
    let tol = Tolerances::default();
    let mut rng = trial_rng(2, 0);
    let f = product(&constructed_factors(&mut rng, 4, true));
    println!("f = {}", format_poly(&f, &tol));

    let fac = factorize(&f, &tol)?;
    for alpha in &fac.roots {
        println!("  (w - ({}))", format_octonion(alpha, &tol));
    }
    println!("  constant {}", format_octonion(&fac.constant, &tol));
    println!("re-expansion error {:e}", fac.expand().max_coeff_distance(&f));
    Ok(())
}
