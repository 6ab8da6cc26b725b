//! Dividing a power series by w - alpha. For the geometric series and
//! alpha = 1/2 every quotient coefficient is 2 and the remainder is
//! f(1/2) = 2.

use hyperzero::series::{series_divide_linear, tail_bound_check_quotient, TruncatedSeries};
use hyperzero::{OctPoly, Octonion};

fn main() -> hyperzero::Result<()> {
    let alpha = Octonion::real(0.5);
    let f = TruncatedSeries::geometric(128);
    let div = series_divide_linear(&f, &alpha, 64)?;
    println!("remainder {}", div.remainder.re());
    for n in [0, 1, 10, 32, 64] {
        println!("b_{n} = {}", div.quotient.coeff(n).re());
    }

    let back = TruncatedSeries::from_poly(&OctPoly::linear(alpha), 64)
        .star_mul(&div.quotient)
        .add(&TruncatedSeries::from_poly(&OctPoly::constant(div.remainder), 64));
    println!("reconstruction error {:e}", back.max_coeff_distance(&f.truncate(64), 63));

    let report = tail_bound_check_quotient(&f, &alpha, div.quotient.coeffs(), 0.5, 0.9);
    println!(
        "tail bound at |x| = 0.5, rho = 0.9: {} checked, {} violations",
        report.checked, report.violations
    );
    Ok(())
}
