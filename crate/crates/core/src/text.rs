//! Text form of octonions and polynomials.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/' | <juxtaposition>) unary)*
//! unary   := ('+' | '-') unary | power
//! power   := atom ('^' integer)?
//! atom    := number | 'w' | basis | '(' expr ')'
//! basis   := 'i' | 'j' | 'ij' | 'k' | 'ik' | 'jk' | 'ijk'
//! ```
//!
//! Products are star products, evaluated left to right, so `ijk` and
//! `ij k` both mean `(ij)k`. Division is only by nonzero real constants.
//! A letter run such as `wij` splits into `w` followed by the longest basis
//! tokens, so `wij` is `w * ij`.

use crate::error::{Error, Result};
use crate::octonion::{Octonion, BASIS_LABELS};
use crate::poly::{OctPoly, RealPoly};
use crate::tolerance::Tolerances;

const MAX_EXPONENT: u64 = 4096;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Reject the basis tokens `k`, `ik`, `jk`, `ijk`.
    pub quaternionic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok {
    Num(f64),
    W,
    Basis(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(x) => format!("number {x}"),
            Tok::W => "'w'".into(),
            Tok::Basis(b) => format!("'{}'", BASIS_LABELS[*b]),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self, Tok::Num(_) | Tok::W | Tok::Basis(_) | Tok::LParen)
    }
}

fn parse_error(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

fn tokenize(src: &str, opts: ParseOptions) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Tok::Plus, i)),
            b'-' => out.push((Tok::Minus, i)),
            b'*' => out.push((Tok::Star, i)),
            b'/' => out.push((Tok::Slash, i)),
            b'^' => out.push((Tok::Caret, i)),
            b'(' => out.push((Tok::LParen, i)),
            b')' => out.push((Tok::RParen, i)),
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                // exponent only when digits follow
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let x: f64 = text
                    .parse()
                    .map_err(|_| parse_error(start, format!("malformed number '{text}'")))?;
                if !x.is_finite() {
                    return Err(parse_error(start, format!("number '{text}' is not finite")));
                }
                out.push((Tok::Num(x), start));
                continue;
            }
            b'w' => out.push((Tok::W, i)),
            b'i' | b'j' | b'k' => {
                let rest = &src[i..];
                let (index, len) = [("ijk", 7), ("ij", 3), ("ik", 5), ("jk", 6), ("i", 1), ("j", 2), ("k", 4)]
                    .iter()
                    .find(|(label, _)| rest.starts_with(label))
                    .map(|(label, b)| (*b, label.len()))
                    .expect("basis letter");
                if opts.quaternionic && index >= 4 {
                    return Err(parse_error(
                        i,
                        format!("'{}' is not quaternionic", BASIS_LABELS[index]),
                    ));
                }
                out.push((Tok::Basis(index), i));
                i += len;
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(parse_error(i, format!("unexpected character '{ch}'")));
            }
        }
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Tok {
        self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.peek();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<OctPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = add(&acc, &self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = add(&acc, &-self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<OctPoly> {
        let mut acc = self.unary()?;
        loop {
            let t = self.peek();
            if t == Tok::Star {
                self.bump();
                acc = acc.star_mul(&self.unary()?);
            } else if t == Tok::Slash {
                self.bump();
                let at = self.offset();
                let d = self.unary()?;
                let r = match d.degree() {
                    None => return Err(parse_error(at, "division by zero")),
                    Some(0) if d.is_real() => d.coeff(0).re(),
                    _ => return Err(parse_error(at, "division is only by real constants")),
                };
                acc = acc.scale_real(1.0 / r);
            } else if t.starts_atom() {
                acc = acc.star_mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<OctPoly> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<OctPoly> {
        let base = self.atom()?;
        if self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        let e = match self.bump() {
            Tok::Num(x) if x.fract() == 0.0 && x >= 0.0 && x <= MAX_EXPONENT as f64 => x as u64,
            other => {
                return Err(parse_error(
                    at,
                    format!(
                        "expected a non-negative integer exponent, found {}",
                        other.describe()
                    ),
                ))
            }
        };
        let mut out = OctPoly::constant(Octonion::ONE);
        for _ in 0..e {
            out = out.star_mul(&base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<OctPoly> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(x) => Ok(OctPoly::constant(Octonion::real(x))),
            Tok::W => Ok(OctPoly::monomial(1, Octonion::ONE)),
            Tok::Basis(b) => Ok(OctPoly::constant(Octonion::basis(b))),
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.offset();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    other => Err(parse_error(
                        close,
                        format!("expected ')', found {}", other.describe()),
                    )),
                }
            }
            other => Err(parse_error(
                at,
                format!(
                    "expected a number, 'w', a basis unit or '(', found {}",
                    other.describe()
                ),
            )),
        }
    }
}

fn add(f: &OctPoly, g: &OctPoly) -> OctPoly {
    let n = f.coeffs().len().max(g.coeffs().len());
    OctPoly::new((0..n).map(|i| f.coeff(i) + g.coeff(i)).collect())
}

/// Parses a polynomial in `w` with octonion coefficients.
pub fn parse_poly(src: &str) -> Result<OctPoly> {
    parse_poly_with(src, ParseOptions::default())
}

pub fn parse_poly_with(src: &str, opts: ParseOptions) -> Result<OctPoly> {
    let toks = tokenize(src, opts)?;
    if toks.len() == 1 {
        return Err(parse_error(0, "empty expression"));
    }
    let mut p = Parser { toks, pos: 0 };
    let f = p.expr()?;
    match p.peek() {
        Tok::End => Ok(f),
        other => Err(parse_error(
            p.offset(),
            format!("expected an operator or end of input, found {}", other.describe()),
        )),
    }
}

/// Parses an octonion literal: an expression without `w`.
pub fn parse_octonion(src: &str) -> Result<Octonion> {
    parse_octonion_with(src, ParseOptions::default())
}

pub fn parse_octonion_with(src: &str, opts: ParseOptions) -> Result<Octonion> {
    let f = parse_poly_with(src, opts)?;
    match f.degree() {
        None => Ok(Octonion::ZERO),
        Some(0) => Ok(f.coeff(0)),
        Some(_) => Err(parse_error(
            src.find('w').unwrap_or(0),
            "expected an octonion, found a polynomial in w",
        )),
    }
}

/// Real number with six significant digits, or as `p/q` when it lies within
/// `tol.abs` of a fraction with denominator a power of two up to 64.
pub fn format_real(x: f64, tol: &Tolerances) -> String {
    if x.abs() < 1e15 {
        let mut d = 1.0;
        while d <= 64.0 {
            let p = (x * d).round();
            if (x - p / d).abs() <= tol.abs {
                let p = if p == 0.0 { 0.0 } else { p };
                return if d == 1.0 {
                    format!("{p}")
                } else {
                    format!("{p}/{d}")
                };
            }
            d *= 2.0;
        }
    }
    let rounded: f64 = format!("{x:.5e}").parse().unwrap_or(x);
    if (1e-4..1e6).contains(&rounded.abs()) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// Signed terms `(negative, magnitude text)` of an octonion in basis order.
fn octonion_terms(x: &Octonion, tol: &Tolerances) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    for (b, &c) in x.coords().iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        let mag = format_real(c.abs(), tol);
        if mag == "0" {
            continue;
        }
        let text = match (b, mag.as_str()) {
            (0, _) => mag,
            (_, "1") => BASIS_LABELS[b].to_string(),
            _ if mag.contains('/') => format!("{mag} {}", BASIS_LABELS[b]),
            _ => format!("{mag}{}", BASIS_LABELS[b]),
        };
        out.push((c < 0.0, text));
    }
    out
}

fn join_terms(terms: &[(bool, String)]) -> String {
    let mut s = String::new();
    for (k, (neg, text)) in terms.iter().enumerate() {
        match (k, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(text);
    }
    s
}

/// Octonion as a signed sum over `1, i, j, ij, k, ik, jk, ijk`,
/// e.g. `1/2 - 1/2 i - 1/2 j - 1/2 ij`.
pub fn format_octonion(x: &Octonion, tol: &Tolerances) -> String {
    let terms = octonion_terms(x, tol);
    if terms.is_empty() {
        "0".into()
    } else {
        join_terms(&terms)
    }
}

/// Polynomial from the highest power down, e.g. `w^2 + i w + j`.
pub fn format_poly(f: &OctPoly, tol: &Tolerances) -> String {
    let mut terms = Vec::new();
    for k in (0..f.coeffs().len()).rev() {
        let c = octonion_terms(&f.coeff(k), tol);
        if c.is_empty() {
            continue;
        }
        let power = match k {
            0 => String::new(),
            1 => "w".into(),
            _ => format!("w^{k}"),
        };
        let term = if c.len() == 1 {
            let (neg, text) = &c[0];
            match (k, text.as_str()) {
                (0, _) => (*neg, text.clone()),
                (_, "1") => (*neg, power),
                _ => (*neg, format!("{text} {power}")),
            }
        } else if k == 0 {
            // a bare sum reads the same inside a longer sum
            terms.extend(c);
            continue;
        } else {
            (false, format!("({}) {power}", join_terms(&c)))
        };
        terms.push(term);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        join_terms(&terms)
    }
}

pub fn format_real_poly(p: &RealPoly, tol: &Tolerances) -> String {
    format_poly(&OctPoly::from_real(p), tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn worked_example_parses() {
        let f = parse_poly("w^2 + w*i + j").unwrap();
        assert_eq!(f.coeffs(), &[Octonion::J, Octonion::I, Octonion::ONE]);
        assert_eq!(parse_poly("w^2 + wi + j").unwrap(), f);
    }

    #[test]
    fn simple_linear() {
        let f = parse_poly("w - 3").unwrap();
        assert_eq!(f.coeffs(), &[Octonion::real(-3.0), Octonion::ONE]);
    }

    #[test]
    fn explicit_star_product_expands() {
        let f = parse_poly("(w - i)*(w - j)").unwrap();
        assert_eq!(
            f.coeffs(),
            &[Octonion::IJ, -(Octonion::I + Octonion::J), Octonion::ONE]
        );
    }

    #[test]
    fn nested_octonion_literal() {
        let f = parse_poly("(w - (0.5 + 0.866i))").unwrap();
        assert_eq!(f.coeff(0), Octonion::quaternion(-0.5, -0.866, 0.0, 0.0));
    }

    #[test]
    fn products_associate_left() {
        assert_eq!(parse_octonion("ijk").unwrap(), Octonion::IJK);
        assert_eq!(parse_octonion("ij k").unwrap(), Octonion::IJK);
        assert_eq!(parse_octonion("i (jk)").unwrap(), -Octonion::IJK);
        assert_eq!(parse_octonion("i*j*k").unwrap(), Octonion::IJK);
    }

    #[test]
    fn fractions_and_exponents() {
        assert_eq!(parse_octonion("1/2 i").unwrap(), Octonion::I * 0.5);
        assert_eq!(parse_octonion("2.5e-1").unwrap(), Octonion::real(0.25));
        assert_eq!(parse_octonion("-0.5ij").unwrap(), Octonion::IJ * -0.5);
        let f = parse_poly("(w^2 + 1)^2").unwrap();
        assert_eq!(f.real_parts().coeffs(), &[1.0, 0.0, 2.0, 0.0, 1.0]);
    }

    #[test]
    fn errors_carry_positions() {
        let cases = [
            ("w +", 3),
            ("w ^ x", 4),
            ("(w - 1", 6),
            ("w $ 2", 2),
            ("w / i", 4),
            ("w^1.5", 2),
            ("", 0),
            ("w )", 2),
        ];
        for (src, at) in cases {
            match parse_poly(src) {
                Err(Error::Parse { position, .. }) => assert_eq!(position, at, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
        assert!(parse_octonion("w + 1").is_err());
    }

    #[test]
    fn quaternion_mode_rejects_k() {
        let q = ParseOptions { quaternionic: true };
        assert!(parse_poly_with("w + ij", q).is_ok());
        for src in ["w + k", "ik", "w jk", "ijk"] {
            assert!(matches!(parse_poly_with(src, q), Err(Error::Parse { .. })), "{src}");
        }
    }

    #[test]
    fn real_formatting() {
        let t = tol();
        assert_eq!(format_real(0.5, &t), "1/2");
        assert_eq!(format_real(3.0, &t), "3");
        assert_eq!(format_real(0.375, &t), "3/8");
        assert_eq!(format_real(1.0 / 3.0, &t), "0.333333");
        assert_eq!(format_real(0.5 + 1e-12, &t), "1/2");
        assert_eq!(format_real(1.234567e-7, &t), "1.23457e-7");
        assert_eq!(format_real(-0.0, &t), "0");
    }

    #[test]
    fn octonion_formatting() {
        let t = tol();
        let x = Octonion::new([0.5, -0.5, -0.5, -0.5, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(format_octonion(&x, &t), "1/2 - 1/2 i - 1/2 j - 1/2 ij");
        assert_eq!(format_octonion(&Octonion::ZERO, &t), "0");
        assert_eq!(format_octonion(&-Octonion::IJK, &t), "-ijk");
        assert_eq!(parse_octonion(&format_octonion(&x, &t)).unwrap(), x);
    }

    #[test]
    fn polynomial_formatting() {
        let t = tol();
        let n = RealPoly::new(vec![1.0, 0.0, 1.0, 0.0, 1.0]);
        assert_eq!(format_real_poly(&n, &t), "w^4 + w^2 + 1");
        let f = parse_poly("w^2 + w*i + j").unwrap();
        assert_eq!(format_poly(&f, &t), "w^2 + i w + j");
        let g = parse_poly("(1 - i) w - 2 + 3k").unwrap();
        assert_eq!(format_poly(&g, &t), "(1 - i) w - 2 + 3k");
        assert_eq!(format_poly(&OctPoly::zero(), &t), "0");
        assert_eq!(format_poly(&parse_poly("-w^3").unwrap(), &t), "-w^3");
    }

    #[test]
    fn format_round_trips() {
        let t = tol();
        for src in [
            "w^2 + w*i + j",
            "(w - i)*(w - j)",
            "-0.3w^3 + (1/3 - 2ijk) w + 7",
            "(1.5e-7 + ik) w^5 - jk",
        ] {
            let f = parse_poly(src).unwrap();
            let g = parse_poly(&format_poly(&f, &t)).unwrap();
            assert!(f.max_coeff_distance(&g) <= 1e-5 * f.max_coeff_norm(), "{src}");
        }
    }
}
