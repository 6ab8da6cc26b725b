//! Seeded generators for octonions and polynomials with prescribed zeros.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::octonion::{ConjugacyClass, Octonion};
use crate::poly::OctPoly;

pub type TrialRng = ChaCha8Rng;

/// Independent stream for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Coordinates uniform in `[-1, 1]^8`.
pub fn octonion<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    Octonion::new(std::array::from_fn(|_| rng.gen_range(-1.0..=1.0)))
}

/// Coordinates uniform in `[-1, 1]^4`, the rest zero.
pub fn quaternion<R: Rng + ?Sized>(rng: &mut R) -> Octonion {
    Octonion::quaternion(
        rng.gen_range(-1.0..=1.0),
        rng.gen_range(-1.0..=1.0),
        rng.gen_range(-1.0..=1.0),
        rng.gen_range(-1.0..=1.0),
    )
}

/// Uniform in `[-1, 1]^8`, resampled until `|x| >= min_norm`.
pub fn nonzero_octonion<R: Rng + ?Sized>(rng: &mut R, min_norm: f64) -> Octonion {
    loop {
        let x = octonion(rng);
        if x.norm() >= min_norm {
            return x;
        }
    }
}

/// Random imaginary unit, i.e. a random point of the sphere `S = {I : I^2 = -1}`.
pub fn imaginary_unit<R: Rng + ?Sized>(rng: &mut R, quaternionic: bool) -> Octonion {
    loop {
        let x = if quaternionic { quaternion(rng) } else { octonion(rng) };
        if let Some(u) = x.imaginary_unit() {
            if x.im().norm() > 0.1 {
                return u;
            }
        }
    }
}

/// Random non-real octonion whose imaginary part has norm at least 0.2.
pub fn nonreal<R: Rng + ?Sized>(rng: &mut R, quaternionic: bool) -> Octonion {
    loop {
        let x = if quaternionic { quaternion(rng) } else { octonion(rng) };
        if x.im().norm() >= 0.2 {
            return x;
        }
    }
}

/// Random point on the sphere of `c`.
pub fn point_on<R: Rng + ?Sized>(rng: &mut R, c: &ConjugacyClass, quaternionic: bool) -> Octonion {
    c.point_on(&imaginary_unit(rng, quaternionic))
}

/// Degree-`n` polynomial with coefficients uniform in `[-1, 1]^8`
/// (leading coefficient of norm at least 0.2).
pub fn polynomial<R: Rng + ?Sized>(rng: &mut R, degree: usize, quaternionic: bool) -> OctPoly {
    let mut coeffs: Vec<Octonion> = (0..degree)
        .map(|_| if quaternionic { quaternion(rng) } else { octonion(rng) })
        .collect();
    let lead = loop {
        let x = if quaternionic { quaternion(rng) } else { octonion(rng) };
        if x.norm() >= 0.2 {
            break x;
        }
    };
    coeffs.push(lead);
    OctPoly::new(coeffs)
}

/// Real polynomial of the given degree, coefficients uniform in `[-1, 1]`.
pub fn real_polynomial<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> OctPoly {
    let mut coeffs: Vec<Octonion> = (0..degree)
        .map(|_| Octonion::real(rng.gen_range(-1.0..=1.0)))
        .collect();
    let lead = loop {
        let x: f64 = rng.gen_range(-1.0..=1.0);
        if x.abs() >= 0.2 {
            break x;
        }
    };
    coeffs.push(Octonion::real(lead));
    OctPoly::new(coeffs)
}

/// One building block of a polynomial with prescribed zeros.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Factor {
    /// `w - alpha`
    Linear(Octonion),
    /// `Delta_alpha`, vanishing on the whole class of `alpha`
    Spherical(ConjugacyClass),
    /// a constant
    Constant(Octonion),
}

impl Factor {
    pub fn poly(&self) -> OctPoly {
        match *self {
            Factor::Linear(alpha) => OctPoly::linear(alpha),
            Factor::Spherical(c) => OctPoly::from_real(&c.char_poly()),
            Factor::Constant(c) => OctPoly::constant(c),
        }
    }
}

/// `F_1 * (F_2 * ( ... * F_m))`, nested from the right.
pub fn product(factors: &[Factor]) -> OctPoly {
    factors
        .iter()
        .rev()
        .fold(OctPoly::constant(Octonion::ONE), |acc, f| f.poly().star_mul(&acc))
}

/// Random factor list of total degree `degree`: a mix of real linear
/// factors, non-real linear factors and real quadratics, followed by a
/// random nonzero constant.
pub fn constructed_factors<R: Rng + ?Sized>(
    rng: &mut R,
    degree: usize,
    quaternionic: bool,
) -> Vec<Factor> {
    let mut out = Vec::new();
    let mut left = degree;
    while left > 0 {
        let pick = rng.gen_range(0..10);
        if pick < 2 {
            out.push(Factor::Linear(Octonion::real(rng.gen_range(-1.5..=1.5))));
            left -= 1;
        } else if pick < 5 && left >= 2 {
            out.push(Factor::Spherical(nonreal(rng, quaternionic).class()));
            left -= 2;
        } else {
            out.push(Factor::Linear(nonreal(rng, quaternionic)));
            left -= 1;
        }
    }
    let c = loop {
        let x = if quaternionic { quaternion(rng) } else { octonion(rng) };
        if x.norm() >= 0.3 {
            break x;
        }
    };
    out.push(Factor::Constant(c));
    out
}
