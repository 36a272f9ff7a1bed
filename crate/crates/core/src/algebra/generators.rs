//! Integer 2×2 generator matrices and relation checking.
//!
//! Relations are written as words such as `R1R1`, `(R₁R₂)²` or `(R1 R3)^2`.
//! A relation holds when the word evaluates to ±E, i.e. the identity as a
//! fractional-linear map.

use serde::{Deserialize, Serialize};

use super::AlgebraError;

pub type Matrix2 = [[i64; 2]; 2];

const IDENTITY: Matrix2 = [[1, 0], [0, 1]];
const NEG_IDENTITY: Matrix2 = [[-1, 0], [0, -1]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMatrix {
    entries: Matrix2,
}

impl GeneratorMatrix {
    pub fn new(entries: Matrix2) -> Result<Self, AlgebraError> {
        let det = det(&entries);
        if det == 1 || det == -1 {
            Ok(Self { entries })
        } else {
            Err(AlgebraError::GeneratorDeterminant(det))
        }
    }

    pub fn entries(&self) -> Matrix2 {
        self.entries
    }

    pub fn determinant(&self) -> i64 {
        det(&self.entries)
    }
}

fn det(m: &Matrix2) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn mul(x: &Matrix2, y: &Matrix2) -> Result<Matrix2, AlgebraError> {
    let mut out = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let a = x[i][0].checked_mul(y[0][j]);
            let b = x[i][1].checked_mul(y[1][j]);
            out[i][j] = a
                .zip(b)
                .and_then(|(a, b)| a.checked_add(b))
                .ok_or(AlgebraError::Overflow)?;
        }
    }
    Ok(out)
}

/// The three reflections 1/z̄, −z̄ + 1 and −z̄ generating the extended
/// modular group, as printed (one matrix per reflection).
pub fn modular_reflections() -> [GeneratorMatrix; 3] {
    [
        GeneratorMatrix {
            entries: [[0, 1], [1, 0]],
        },
        GeneratorMatrix {
            entries: [[-1, 0], [1, 1]],
        },
        GeneratorMatrix {
            entries: [[-1, 0], [0, 1]],
        },
    ]
}

/// Parsed relation word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Word {
    Generator(usize),
    Product(Vec<Word>),
    Power(Box<Word>, u32),
}

impl Word {
    pub fn parse(text: &str) -> Result<Self, AlgebraError> {
        let chars: Vec<char> = text.chars().collect();
        let mut parser = WordParser { chars: &chars, pos: 0 };
        let word = parser.product()?;
        parser.skip_ws();
        if parser.pos != chars.len() {
            return Err(parser.error("unexpected character"));
        }
        Ok(word)
    }

    fn evaluate(&self, gens: &[GeneratorMatrix]) -> Result<Matrix2, AlgebraError> {
        match self {
            Word::Generator(i) => gens
                .get(*i)
                .map(|g| g.entries)
                .ok_or(AlgebraError::UnknownGenerator(i + 1)),
            Word::Product(parts) => parts.iter().try_fold(IDENTITY, |acc, w| mul(&acc, &w.evaluate(gens)?)),
            Word::Power(base, k) => {
                let m = base.evaluate(gens)?;
                (0..*k).try_fold(IDENTITY, |acc, _| mul(&acc, &m))
            }
        }
    }
}

struct WordParser<'a> {
    chars: &'a [char],
    pos: usize,
}

const SUBSCRIPTS: &str = "₀₁₂₃₄₅₆₇₈₉";
const SUPERSCRIPTS: &str = "⁰¹²³⁴⁵⁶⁷⁸⁹";

fn digit_of(c: char, table: &str) -> Option<u32> {
    table.chars().position(|d| d == c).map(|p| p as u32)
}

impl WordParser<'_> {
    fn error(&self, message: &str) -> AlgebraError {
        AlgebraError::WordSyntax {
            position: self.pos,
            message: message.to_string(),
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

    fn product(&mut self) -> Result<Word, AlgebraError> {
        let mut parts = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some('R') | Some('(') => parts.push(self.factor()?),
                _ => break,
            }
        }
        if parts.is_empty() {
            return Err(self.error("expected generator or '('"));
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Word::Product(parts)
        })
    }

    fn factor(&mut self) -> Result<Word, AlgebraError> {
        let atom = match self.peek() {
            Some('R') => {
                self.pos += 1;
                let index = self
                    .number(|c| c.to_digit(10).or_else(|| digit_of(c, SUBSCRIPTS)))
                    .ok_or_else(|| self.error("expected generator index"))?;
                if index == 0 {
                    return Err(self.error("generator indices start at 1"));
                }
                Word::Generator(index as usize - 1)
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.product()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            _ => return Err(self.error("expected generator or '('")),
        };
        let exponent = match self.peek() {
            Some('^') => {
                self.pos += 1;
                Some(
                    self.number(|c| c.to_digit(10))
                        .ok_or_else(|| self.error("expected exponent"))?,
                )
            }
            Some(c) if digit_of(c, SUPERSCRIPTS).is_some() => self.number(|c| digit_of(c, SUPERSCRIPTS)),
            _ => None,
        };
        Ok(match exponent {
            Some(k) => Word::Power(Box::new(atom), k),
            None => atom,
        })
    }

    fn number(&mut self, digit: impl Fn(char) -> Option<u32>) -> Option<u32> {
        let start = self.pos;
        let mut value: u32 = 0;
        while let Some(d) = self.peek().and_then(&digit) {
            value = value.checked_mul(10)?.checked_add(d)?;
            self.pos += 1;
        }
        (self.pos > start).then_some(value)
    }
}

/// Outcome for one relation word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub word: String,
    pub product: Matrix2,
    /// True when the product is ±E.
    pub holds: bool,
}

/// Evaluate each relation word as an integer matrix product and report
/// whether it is the identity up to sign.
pub fn check_generator_relations(
    gens: &[GeneratorMatrix],
    relations: &[&str],
) -> Result<Vec<RelationReport>, AlgebraError> {
    relations
        .iter()
        .map(|text| {
            let product = Word::parse(text)?.evaluate(gens)?;
            Ok(RelationReport {
                word: text.to_string(),
                product,
                holds: product == IDENTITY || product == NEG_IDENTITY,
            })
        })
        .collect()
}
