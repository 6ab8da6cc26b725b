//! Zero structure predicted by the shape of the coefficients: real
//! coefficients give real or spherical zeros; a non-real constant term
//! alone gives isolated zeros in the plane of that term.

use hyperzero::text::parse_poly;
use hyperzero::zeros::structure_profile;
use hyperzero::Tolerances;

fn main() -> hyperzero::Result<()> {
    let tol = Tolerances::default();
    for src in ["w^2 + 1", "w^3 - 2w + 1 + i + j", "w^3 + w i", "w^2 + w i + j"] {
        let f = parse_poly(src)?;
        let profile = structure_profile(&f, &tol)?;
        let kinds: Vec<&str> = profile.zeros.iter().map(|z| z.kind.label()).collect();
        println!(
            "{src:<22} {:?}: zeros {:?}, prediction holds: {}",
            profile.form, kinds, profile.prediction_holds
        );
    }
    Ok(())
}
