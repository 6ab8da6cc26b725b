//! Complex roots of a real polynomial with multiple roots, grouped into
//! conjugacy classes.

use hyperzero::roots::{class_spectrum, complex_roots, quadratic_multiplicity};
use hyperzero::{ConjugacyClass, RealPoly, Tolerances};

fn main() -> hyperzero::Result<()> {
    let tol = Tolerances::default();
    // (w^2 + 1)^2 (w^2 + w + 1) (w - 2)^3
    let p = RealPoly::new(vec![1.0, 0.0, 1.0])
        .pow(2)
        .mul(&RealPoly::new(vec![1.0, 1.0, 1.0]))
        .mul(&RealPoly::from_real_roots(&[2.0, 2.0, 2.0]));

    for r in complex_roots(&p, &tol)? {
        println!("root {:>24.15}  multiplicity {}", r.z, r.multiplicity);
    }
    for e in class_spectrum(&p, &tol)?.iter() {
        println!("class (t, n) = ({:.12}, {:.12}) multiplicity {}", e.t, e.n, e.mult);
    }
    let c = ConjugacyClass::new(0.0, 1.0);
    println!("Delta(0,1) divides p {} times", quadratic_multiplicity(&p, &c, &tol));
    Ok(())
}
