//! Truncated Taylor series ("jets") about a fixed expansion point.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Taylor coefficients `c₀..c_K` of a function about `x0`, i.e.
/// `f(x) ≈ Σ c_j (x - x0)^j`.
///
/// All arithmetic truncates at order `K`; nothing ever reads past it.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesJet<T> {
    x0: T,
    coeffs: Vec<T>,
}

impl<T: Real> SeriesJet<T> {
    /// Builds a jet from explicit coefficients; the order is `coeffs.len() - 1`.
    pub fn new(x0: T, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::JetMismatch(format!(
                "a jet needs order >= 1, got {} coefficient(s)",
                coeffs.len()
            )));
        }
        Ok(Self { x0, coeffs })
    }

    pub fn constant(x0: T, value: T, order: usize) -> Self {
        let mut coeffs = vec![T::zero(); order.max(1) + 1];
        coeffs[0] = value;
        Self { x0, coeffs }
    }

    /// The identity function `x` expanded about `x0`: `[x0, 1, 0, …]`.
    pub fn variable(x0: T, order: usize) -> Self {
        let mut jet = Self::constant(x0, x0, order);
        jet.coeffs[1] = T::one();
        jet
    }

    pub fn zero(x0: T, order: usize) -> Self {
        Self::constant(x0, T::zero(), order)
    }

    pub fn x0(&self) -> T {
        self.x0
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Value at the expansion point.
    pub fn value(&self) -> T {
        self.coeffs[0]
    }

    /// Horner evaluation of the truncated polynomial at `x`.
    pub fn eval(&self, x: T) -> T {
        let h = x - self.x0;
        self.coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * h + c)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::JetMismatch(format!(
                "order {} vs {}",
                self.order(),
                other.order()
            )));
        }
        if self.x0 != other.x0 {
            return Err(Error::JetMismatch(format!(
                "expansion point {} vs {}",
                self.x0, other.x0
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    /// Cauchy product truncated at order `K`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Series quotient `self / other`; requires `other(x0) ≠ 0`.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let b0 = other.coeffs[0];
        if b0 == T::zero() {
            return Err(Error::Domain {
                func: "SeriesJet::checked_div",
                arg: 0.0,
                detail: "divisor vanishes at the expansion point",
            });
        }
        let k = self.order();
        let mut q = vec![T::zero(); k + 1];
        for j in 0..=k {
            let mut acc = self.coeffs[j];
            for i in 1..=j {
                acc -= other.coeffs[i] * q[j - i];
            }
            q[j] = acc / b0;
        }
        Ok(Self { x0: self.x0, coeffs: q })
    }

    pub fn recip(&self) -> Result<Self> {
        Self::constant(self.x0, T::one(), self.order()).checked_div(self)
    }

    /// `d/dx`: maps `c_j` to `(j+1) c_{j+1}`. The top coefficient is re-padded with zero,
    /// so the result is only meaningful up to order `K-1`.
    pub fn derivative(&self) -> Self {
        let k = self.order();
        let mut d = vec![T::zero(); k + 1];
        for j in 0..k {
            d[j] = T::from_usize_lossy(j + 1) * self.coeffs[j + 1];
        }
        Self { x0: self.x0, coeffs: d }
    }

    pub fn scale(&self, factor: T) -> Self {
        self.map(|c| c * factor)
    }

    pub fn add_scalar(&self, value: T) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += value;
        out
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            x0: self.x0,
            coeffs: self.coeffs.iter().map(|&c| f(c)).collect(),
        }
    }

    /// Multiplies coefficient `j` by `weight(j)`.
    pub fn map_indexed(&self, weight: impl Fn(usize, T) -> T) -> Self {
        Self {
            x0: self.x0,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, &c)| weight(j, c))
                .collect(),
        }
    }

    /// Re-labels the expansion point without touching the coefficients.
    pub fn with_x0(mut self, x0: T) -> Self {
        self.x0 = x0;
        self
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let k = self.order();
        let mut out = vec![T::zero(); k + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == T::zero() {
                continue;
            }
            for (j, &b) in other.coeffs[..=k - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { x0: self.x0, coeffs: out }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        Self {
            x0: self.x0,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}
