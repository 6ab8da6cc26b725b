//! N(f) = f * conj(f) has real coefficients and is multiplicative over the
//! star product, even though octonion multiplication is not associative.

use hyperzero::random::{polynomial, trial_rng};
use hyperzero::text::format_real_poly;
use hyperzero::Tolerances;

fn main() -> hyperzero::Result<()> {
    let tol = Tolerances::default();
    let mut rng = trial_rng(1, 0);
    let f = polynomial(&mut rng, 3, false);
    let g = polynomial(&mut rng, 2, false);

    let nf = f.normal(&tol)?;
    let ng = g.normal(&tol)?;
    let nfg = f.star_mul(&g).normal(&tol)?;
    println!("N(f)   = {}", format_real_poly(&nf, &tol));
    println!("N(g)   = {}", format_real_poly(&ng, &tol));
    println!("N(f*g) = {}", format_real_poly(&nfg, &tol));
    println!("max |N(f*g) - N(f) N(g)| = {:e}", nfg.max_coeff_distance(&nf.mul(&ng)));

    // on the real axis N(f) is the squared norm of f
    let x = 0.7;
    let value = f.evaluate(&hyperzero::Octonion::real(x)).norm_sq();
    println!("N(f)(0.7) = {:.12}, |f(0.7)|^2 = {:.12}", nf.eval(x), value);
    Ok(())
}
