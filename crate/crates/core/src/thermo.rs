//! High-temperature vibrational thermodynamics of the PT spectrum.
//!
//! Writing the levels as `E_n = -(n-ζ)²/τ²` turns the partition sum into
//! `Z = Σ_{n=0}^{⌊ζ⌋} exp(((n-ζ)/γ)²)` with `γ = τ/√β`, whose integral approximation is
//! `Z = (√π τ / 2√β) erfi(χ)`, `χ = ζ√β/τ`. Every closed form below goes through
//! `ln Z = ln(τ/√β) + χ² + ln D(χ)` with `D` the Dawson function, so no factor `e^{χ²}`
//! is ever formed.

use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Real};
use crate::schrodinger::{level_count, NrContext, PtPotential};
use crate::specfun::{dawson, erfi};

const SMALL_CHI: f64 = 0.2;
const LARGE_CHI: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoContext<T> {
    pub zeta: T,
    /// `√(μ/2)/(αħ)`, in units of `√β`.
    pub tau: T,
    pub k_b: T,
    /// Energy offset `(2α²ħ²/μ) ℓ(ℓ+1) d₀` carried by `ℓ > 0` levels; zero drops it.
    pub centrifugal_shift: T,
}

impl<T: Real> ThermoContext<T> {
    pub fn new(zeta: T, tau: T) -> Result<Self> {
        if !(tau > T::zero()) || !tau.is_finite() {
            return Err(Error::InvalidParameter(format!("tau must be positive, got {tau}")));
        }
        if !zeta.is_finite() {
            return Err(Error::InvalidParameter(format!("zeta must be finite, got {zeta}")));
        }
        Ok(Self {
            zeta,
            tau,
            k_b: T::one(),
            centrifugal_shift: T::zero(),
        })
    }

    pub fn with_k_b(mut self, k_b: T) -> Self {
        self.k_b = k_b;
        self
    }

    pub fn with_centrifugal_shift(mut self, shift: T) -> Self {
        self.centrifugal_shift = shift;
        self
    }

    /// `ζ` from the level-count formula and `τ` from the reduced mass and range.
    pub fn for_potential(pot: &PtPotential<T>, ctx: &NrContext<T>, l: u32) -> Result<Self> {
        let count = level_count(pot, ctx, l)?;
        Self::new(count.zeta, tau(ctx.mu, pot.alpha, ctx.hbar_c))
    }

    pub fn chi(&self, beta: T) -> T {
        self.zeta * beta.sqrt() / self.tau
    }

    fn check(&self, beta: T) -> Result<T> {
        if !(beta > T::zero()) || !beta.is_finite() {
            return Err(Error::Domain {
                func: "thermo",
                arg: beta.to_f64_lossy(),
                detail: "requires a finite beta > 0",
            });
        }
        let chi = self.chi(beta);
        if !(chi > T::zero()) {
            return Err(Error::Domain {
                func: "thermo",
                arg: self.zeta.to_f64_lossy(),
                detail: "closed forms require zeta > 0",
            });
        }
        Ok(chi)
    }

    /// `Σ_{n=0}^{n_max} exp(((n-ζ)√β/τ)²)`.
    pub fn partition_sum(&self, beta: T, n_max: u32) -> Result<T> {
        if !(beta > T::zero()) || !beta.is_finite() {
            return Err(Error::Domain {
                func: "partition_sum",
                arg: beta.to_f64_lossy(),
                detail: "requires a finite beta > 0",
            });
        }
        let limit = T::max_value().ln();
        let scale = beta.sqrt() / self.tau;
        let mut acc = CompensatedSum::new();
        for n in 0..=n_max {
            let y = (T::from_u32(n).unwrap() - self.zeta) * scale;
            let exponent = y * y;
            if exponent > limit {
                return Err(Error::Overflow {
                    func: "partition_sum",
                    arg: exponent.to_f64_lossy(),
                    limit: limit.to_f64_lossy(),
                });
            }
            acc.add(exponent.exp());
        }
        Ok(acc.value())
    }

    /// `(√π τ / 2√β) erfi(χ)`; overflows with `erfi`.
    pub fn partition_closed(&self, beta: T) -> Result<T> {
        let chi = self.check(beta)?;
        let z = T::PI().sqrt() * self.tau / (T::lit(2.0) * beta.sqrt()) * erfi(chi)?;
        Ok(z * (-self.centrifugal_shift * beta).exp())
    }

    /// `ln Z`, finite for every admissible `β`.
    pub fn ln_partition_closed(&self, beta: T) -> Result<T> {
        let chi = self.check(beta)?;
        Ok((self.tau / beta.sqrt()).ln() + chi * chi + dawson(chi).ln() - self.centrifugal_shift * beta)
    }

    /// `U = (1/2β)[1 - χ/D(χ)]`.
    pub fn mean_energy(&self, beta: T) -> Result<T> {
        let chi = self.check(beta)?;
        Ok(one_minus_chi_over_dawson(chi) / (T::lit(2.0) * beta) + self.centrifugal_shift)
    }

    /// `C = (k/2)[1 - χ(χ + (1-2χ²)D)/(2D²)]`, the printed expression with `e^{χ²}` cancelled.
    pub fn specific_heat(&self, beta: T) -> Result<T> {
        let chi = self.check(beta)?;
        Ok(self.k_b * T::lit(0.5) * heat_bracket(chi))
    }

    /// `F = -ln Z / β`.
    pub fn free_energy(&self, beta: T) -> Result<T> {
        Ok(-self.ln_partition_closed(beta)? / beta)
    }

    /// `S = (k/2)[1 - χ/D(χ) + 2 ln Z]`.
    pub fn entropy(&self, beta: T) -> Result<T> {
        let chi = self.check(beta)?;
        let ln_z = self.ln_partition_closed(beta)? + self.centrifugal_shift * beta;
        Ok(self.k_b * T::lit(0.5) * (one_minus_chi_over_dawson(chi) + T::lit(2.0) * ln_z))
    }

    pub fn point(&self, beta: T) -> Result<ThermoPoint<T>> {
        let ln_z = self.ln_partition_closed(beta)?;
        Ok(ThermoPoint {
            beta,
            chi: self.chi(beta),
            ln_z,
            z: ln_z.exp(),
            u: self.mean_energy(beta)?,
            c: self.specific_heat(beta)?,
            f: self.free_energy(beta)?,
            s: self.entropy(beta)?,
        })
    }
}

/// `τ = √(μc²/2) / (α ħc)` with `μc²` in the energy unit of `ħc`.
pub fn tau<T: Real>(mu: T, alpha: T, hbar_c: T) -> T {
    (mu / T::lit(2.0)).sqrt() / (alpha * hbar_c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoPoint<T> {
    pub beta: T,
    pub chi: T,
    pub ln_z: T,
    /// `exp(ln_z)`; infinite when `Z` exceeds the floating range.
    pub z: T,
    pub u: T,
    pub c: T,
    pub f: T,
    pub s: T,
}

fn poly<T: Real>(coeffs: &[f64], x: T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + T::lit(c))
}

/// `1 - χ/D(χ)`, by series below `χ = 0.2`.
fn one_minus_chi_over_dawson<T: Real>(chi: T) -> T {
    if chi < T::lit(SMALL_CHI) {
        let x2 = chi * chi;
        x2 * poly(
            &[
                -2.0 / 3.0,
                -8.0 / 45.0,
                -16.0 / 945.0,
                32.0 / 14_175.0,
                64.0 / 93_555.0,
                -2944.0 / 638_512_875.0,
            ],
            x2,
        )
    } else {
        T::one() - chi / dawson(chi)
    }
}

/// `1 - χ(χ + (1-2χ²)D)/(2D²)`, by series below `χ = 0.2`.
fn heat_bracket<T: Real>(chi: T) -> T {
    if chi < T::lit(SMALL_CHI) {
        let x2 = chi * chi;
        x2 * x2
            * poly(
                &[
                    8.0 / 45.0,
                    32.0 / 945.0,
                    -32.0 / 4725.0,
                    -256.0 / 93_555.0,
                    2944.0 / 127_702_575.0,
                ],
                x2,
            )
    } else if chi < T::lit(LARGE_CHI) {
        let d = dawson(chi);
        T::one() - chi * (chi + (T::one() - T::lit(2.0) * chi * chi) * d) / (T::lit(2.0) * d * d)
    } else {
        // with t_j = (2j-1)!!/(2χ²)^j: 2χD = Σ t_j and χ + (1-2χ²)D = -(1/χ) Σ j t_j
        let (sum, weighted) = asymptotic_sums(chi);
        T::one() + T::lit(2.0) * chi * chi * weighted / (sum * sum)
    }
}

/// `(Σ t_j, Σ j t_j)` for `t_j = (2j-1)!!/(2χ²)^j`, truncated at the smallest term.
fn asymptotic_sums<T: Real>(chi: T) -> (T, T) {
    let inv = (T::lit(2.0) * chi * chi).recip();
    let mut term = T::one();
    let mut sum = CompensatedSum::new();
    let mut weighted = CompensatedSum::new();
    sum.add(term);
    for j in 1..200 {
        let next = term * T::from_usize_lossy(2 * j - 1) * inv;
        if next >= term {
            break;
        }
        term = next;
        sum.add(term);
        weighted.add(T::from_usize_lossy(j) * term);
        if term <= T::epsilon() * T::lit(1e-3) {
            break;
        }
    }
    (sum.value(), weighted.value())
}
