//! Group symbols in Shubnikov notation.
//!
//! ```text
//! symbol := order ["m"] op
//! op     := "K" [params] | "L" params | "M" [params]
//! params := "(" param ("," param)* ")"
//! param  := ("φ" | "phi") "=" angle | "k" "=" value
//! angle  := [sign] [number] ["π" | "pi"] ["/" number]
//! value  := number | "τ" | "ρ" | "η" | "tau" | "rho" | "eta"
//! ```
//!
//! `10mL(φ=π/5)` is the rotation by 2π/10, a mirror through O and the
//! spiral motion with φ = π/5 and the order's default coefficient.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::{Similarity2D, SimilarityGroup, SymmetryError};
use crate::algebra::MetallicMean;

/// Homothety coefficient bound to a rotation order: τ for 5 and 10, ρ for 8,
/// η for 12 and 2 otherwise.
pub fn default_coefficient(order: u32) -> f64 {
    MetallicMean::for_order(order as usize).map_or(2.0, MetallicMean::value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OpLetter {
    K,
    L,
    M,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text.chars().collect(),
            pos: 0,
            text,
        }
    }

    fn error(&self, message: impl Into<String>) -> SymmetryError {
        SymmetryError::Symbol {
            position: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        let w: Vec<char> = word.chars().collect();
        if self.chars[self.pos..].starts_with(&w) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Option<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().ok()
    }

    fn number(&mut self) -> Option<f64> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        if digits.is_empty() {
            return None;
        }
        match digits.parse() {
            Ok(v) => Some(v),
            Err(_) => {
                self.pos = start;
                None
            }
        }
    }

    fn angle(&mut self) -> Result<f64, SymmetryError> {
        self.skip_ws();
        let sign = if self.eat('-') || self.eat('−') {
            -1.0
        } else {
            self.eat('+');
            1.0
        };
        let coefficient = self.number();
        let has_pi = self.eat('π') || self.eat_word("pi");
        let mut value = match (coefficient, has_pi) {
            (Some(c), true) => c * PI,
            (None, true) => PI,
            (Some(c), false) => c,
            (None, false) => return Err(self.error("expected an angle")),
        };
        if self.eat('/') {
            let d = self.number().ok_or_else(|| self.error("expected a divisor"))?;
            if d == 0.0 {
                return Err(self.error("division by zero"));
            }
            value /= d;
        }
        Ok(sign * value)
    }

    fn coefficient(&mut self) -> Result<f64, SymmetryError> {
        self.skip_ws();
        for (names, mean) in [
            (["τ", "tau"], MetallicMean::Tau),
            (["ρ", "rho"], MetallicMean::Rho),
            (["η", "eta"], MetallicMean::Eta),
        ] {
            if names.iter().any(|n| self.eat_word(n)) {
                return Ok(mean.value());
            }
        }
        let v = self.number().ok_or_else(|| self.error("expected a coefficient"))?;
        if v > 0.0 {
            Ok(v)
        } else {
            Err(self.error("coefficient must be positive"))
        }
    }

    fn params(&mut self) -> Result<(Option<f64>, Option<f64>), SymmetryError> {
        let (mut phi, mut k) = (None, None);
        if !self.eat('(') {
            return Ok((phi, k));
        }
        loop {
            if self.eat('φ') || self.eat_word("phi") {
                if !self.eat('=') {
                    return Err(self.error("expected '='"));
                }
                phi = Some(self.angle()?);
            } else if self.eat('k') {
                if !self.eat('=') {
                    return Err(self.error("expected '='"));
                }
                k = Some(self.coefficient()?);
            } else {
                return Err(self.error("expected 'φ' or 'k'"));
            }
            if self.eat(')') {
                return Ok((phi, k));
            }
            if !self.eat(',') {
                return Err(self.error("expected ',' or ')'"));
            }
        }
    }
}

/// Parse a group symbol such as `10L(φ=−π/5)` or `10mL(φ=π/5)`.
///
/// The annulus defaults to [k⁻³, k³] around the origin.
pub fn parse_symbol(text: &str) -> Result<SimilarityGroup, SymmetryError> {
    let mut p = Parser::new(text);
    let order = p.integer().ok_or_else(|| p.error("expected rotation order"))?;
    if order == 0 {
        return Err(p.error("rotation order must be positive"));
    }
    let mirror = p.eat('m');
    p.skip_ws();
    let letter = match p.peek() {
        Some('K') => OpLetter::K,
        Some('L') => OpLetter::L,
        Some('M') => OpLetter::M,
        _ => return Err(p.error("expected K, L or M")),
    };
    p.pos += 1;
    let (phi, k) = p.params()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    let k = k.unwrap_or_else(|| default_coefficient(order));
    let origin = Complex64::new(0.0, 0.0);

    let mut generators = Vec::new();
    if order > 1 {
        generators.push(Similarity2D::rotation(TAU / order as f64, origin));
    }
    if mirror {
        generators.push(Similarity2D::mirror(0.0, origin));
    }
    let op = match letter {
        OpLetter::K => {
            if phi.is_some() {
                return Err(SymmetryError::Symbol {
                    position: 0,
                    message: "K takes no angle".into(),
                });
            }
            Similarity2D::homothety(k, origin)?
        }
        OpLetter::L => {
            let phi = phi.ok_or_else(|| SymmetryError::Symbol {
                position: p.pos,
                message: "L needs an angle φ".into(),
            })?;
            Similarity2D::spiral(k, phi, origin)?
        }
        OpLetter::M => Similarity2D::homothetic_reflection(k, phi.unwrap_or(0.0), origin)?,
    };
    generators.push(op);
    let reach = k.max(1.0 / k).powi(3);
    SimilarityGroup::new(generators, p.text.trim(), (1.0 / reach, reach))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::SimilarityKind;

    #[test]
    fn spiral_symbol() {
        let g = parse_symbol("10L(φ=−π/5)").unwrap();
        assert_eq!(g.generators().len(), 2);
        let spiral = g.generators()[1];
        assert_eq!(spiral.kind(), SimilarityKind::L);
        assert!((spiral.phi() + PI / 5.0).abs() < 1e-15);
        assert!((spiral.k() - MetallicMean::Tau.value()).abs() < 1e-15);
        assert!((g.generators()[0].phi() - PI / 5.0).abs() < 1e-15);
    }

    #[test]
    fn mirrored_spiral_symbol() {
        let g = parse_symbol("10mL(φ=π/5)").unwrap();
        assert_eq!(g.generators().len(), 3);
        assert_eq!(g.generators()[1].kind(), SimilarityKind::M);
        assert_eq!(g.symbol(), "10mL(φ=π/5)");
    }

    #[test]
    fn plain_homothety() {
        let g = parse_symbol("1K").unwrap();
        assert_eq!(g.generators().len(), 1);
        assert_eq!(g.generators()[0].kind(), SimilarityKind::K);
        assert_eq!(g.generators()[0].k(), 2.0);
    }

    #[test]
    fn ascii_spellings_and_explicit_k() {
        let g = parse_symbol("5L(phi=-2pi/5, k=rho)").unwrap();
        let op = g.generators()[1];
        assert!((op.phi() + 2.0 * PI / 5.0).abs() < 1e-15);
        assert!((op.k() - MetallicMean::Rho.value()).abs() < 1e-15);
        let g = parse_symbol("8M(k=3)").unwrap();
        assert_eq!(g.generators()[1].k(), 3.0);
    }

    #[test]
    fn default_coefficients() {
        assert!((default_coefficient(8) - (1.0 + 2f64.sqrt())).abs() < 1e-15);
        assert!((default_coefficient(12) - (1.0 + 3f64.sqrt())).abs() < 1e-15);
        assert_eq!(default_coefficient(6), 2.0);
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |s: &str| match parse_symbol(s) {
            Err(SymmetryError::Symbol { position, .. }) => position,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("L"), 0);
        assert_eq!(pos("10X"), 2);
        assert_eq!(pos("10L(φ=)"), 6);
        assert_eq!(pos("10L(φ=π/5"), 9);
        assert_eq!(pos("10K junk"), 4);
        assert!(parse_symbol("10L").is_err());
    }
}
