//! Basic octonion arithmetic: products of basis units, the failure of
//! associativity, and the identities that survive it.

use hyperzero::text::format_octonion;
use hyperzero::{Octonion, Tolerances};

fn main() {
    let tol = Tolerances::default();
    let show = |x: &Octonion| format_octonion(x, &tol);
    let (i, j, k) = (Octonion::I, Octonion::J, Octonion::K);

    println!("ij = {}, ji = {}", show(&(i * j)), show(&(j * i)));
    println!("(ij)k = {}", show(&((i * j) * k)));
    println!("i(jk) = {}", show(&(i * (j * k))));
    println!("associator [i, j, k] = {}", show(&Octonion::associator(&i, &j, &k)));

    let x = Octonion::new([0.3, -1.2, 0.5, 0.0, 2.0, -0.7, 0.1, 0.4]);
    let y = Octonion::new([1.0, 0.2, -0.3, 0.8, 0.0, 0.5, -1.1, 0.6]);
    println!("|xy|^2 - |x|^2 |y|^2 = {:e}", (x * y).norm_sq() - x.norm_sq() * y.norm_sq());
    println!("alternativity: |(xx)y - x(xy)| = {:e}", ((x * x) * y - x * (x * y)).norm());
    println!("flexibility:   |x(yx) - (xy)x| = {:e}", (x * (y * x) - (x * y) * x).norm());

    let inv = x.inverse().expect("x is nonzero");
    println!("x x^-1 = {}", show(&(x * inv)));
    let c = x.class();
    println!("class of x: t = {}, n = {}", c.t, c.n);
}
