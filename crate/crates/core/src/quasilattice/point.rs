use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::LatticeError;
use crate::algebra::MetallicMean;

/// The n-th roots of unity ζⁱ = exp(2πi·i/n), i = 0..n.
pub fn roots_of_unity(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|i| Complex64::from_polar(1.0, TAU * i as f64 / n as f64))
        .collect()
}

/// Plane point Σ cᵢ ζₙⁱ with integer coefficients.
///
/// Coefficient vectors are not reduced modulo the cyclotomic polynomial, so
/// distinct vectors may embed to the same point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicPoint {
    n: usize,
    coeffs: Vec<i64>,
}

impl CyclotomicPoint {
    pub fn new(n: usize, coeffs: Vec<i64>) -> Result<Self, LatticeError> {
        if n < 3 {
            return Err(LatticeError::OrderTooSmall(n));
        }
        if coeffs.len() != n {
            return Err(LatticeError::CoefficientLength {
                expected: n,
                found: coeffs.len(),
            });
        }
        Ok(Self { n, coeffs })
    }

    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: vec![0; n] }
    }

    /// ζⁱ itself.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut p = Self::zero(n);
        p.coeffs[i % n] = 1;
        p
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn embed(&self) -> Complex64 {
        self.embed_with(&roots_of_unity(self.n))
    }

    /// Embedding with a precomputed root table.
    pub fn embed_with(&self, roots: &[Complex64]) -> Complex64 {
        self.coeffs
            .iter()
            .zip(roots)
            .filter(|(c, _)| **c != 0)
            .map(|(&c, &r)| r * c as f64)
            .sum()
    }

    /// Multiply by ζₙ: a cyclic shift of the coefficients.
    pub fn rotate(&self) -> Self {
        let mut coeffs = vec![0; self.n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(i + 1) % self.n] = c;
        }
        Self { n: self.n, coeffs }
    }

    /// Complex conjugation: index i moves to (n − i) mod n.
    pub fn reflect(&self) -> Self {
        let mut coeffs = vec![0; self.n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(self.n - i) % self.n] = c;
        }
        Self { n: self.n, coeffs }
    }

    pub fn negate(&self) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Cyclic convolution: the exact product of two elements of ℤ[ζₙ].
    pub fn mul(&self, other: &Self) -> Result<Self, LatticeError> {
        if self.n != other.n {
            return Err(LatticeError::OrderMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut coeffs = vec![0i64; n];
        for (i, &a) in self.coeffs.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in other.coeffs.iter().enumerate().filter(|(_, b)| **b != 0) {
                let slot = &mut coeffs[(i + j) % n];
                *slot = a
                    .checked_mul(b)
                    .and_then(|v| slot.checked_add(v))
                    .ok_or(LatticeError::Overflow)?;
            }
        }
        Ok(Self { n, coeffs })
    }

    /// Multiply by the order's homothety coefficient (see [`HomothetyKernel`]).
    pub fn inflate(&self) -> Result<Self, LatticeError> {
        self.mul(&HomothetyKernel::for_order(self.n)?.element)
    }

    pub fn max_abs_coeff(&self) -> i64 {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

/// A homothety coefficient written as an element of ℤ[ζₙ].
///
/// * n = 5: τ = −(ζ² + ζ³)
/// * n = 8: ρ = 1 + ζ + ζ⁷
/// * n = 10: τ = ζ + ζ⁹
/// * n = 12: η = 1 + ζ + ζ¹¹
/// * n = 4, 6 (square and hexagonal lattices): the integer 2
#[derive(Debug, Clone, PartialEq)]
pub struct HomothetyKernel {
    pub element: CyclotomicPoint,
    pub mean: Option<MetallicMean>,
    pub coefficient: f64,
}

impl HomothetyKernel {
    pub fn for_order(n: usize) -> Result<Self, LatticeError> {
        let mut coeffs = vec![0i64; n];
        let mean = MetallicMean::for_order(n);
        match n {
            4 | 6 => coeffs[0] = 2,
            5 => {
                coeffs[2] = -1;
                coeffs[3] = -1;
            }
            8 | 12 => {
                coeffs[0] = 1;
                coeffs[1] = 1;
                coeffs[n - 1] = 1;
            }
            10 => {
                coeffs[1] = 1;
                coeffs[9] = 1;
            }
            _ => return Err(LatticeError::NoHomothety(n)),
        }
        Ok(Self {
            element: CyclotomicPoint { n, coeffs },
            coefficient: mean.map_or(2.0, MetallicMean::value),
            mean,
        })
    }

    /// Sum of absolute coefficients: inflating a vector with entries in
    /// [−B, B] gives entries in [−B·l1, B·l1].
    pub fn l1_norm(&self) -> i64 {
        self.element.coeffs.iter().map(|c| c.abs()).sum()
    }
}
