//! Nonrelativistic bound states of `V(r) = A/cosh²(αr) + B/sinh²(αr)`.
//!
//! The centrifugal barrier is replaced by `ℓ(ℓ+1) α² [4d₀ + 1/sinh²(αr)]` with `d₀ = 1/12`,
//! which turns the radial equation into
//!
//! ```text
//! R'' + [K₁ - A₁/cosh²(αr) - B₁/sinh²(αr)] R = 0,
//! A₁ = 2μA/ħ²,  B₁ = 2μB/ħ² + ℓ(ℓ+1)α²,  K₁ = 2μE/ħ² - 4ℓ(ℓ+1)α²d₀.
//! ```
//!
//! With `R = cosh^γ(αr) sinh^β(αr) F` the exponents solve `γ(γ-1) = A₁/α²` and
//! `β(β-1) = B₁/α²`. Two sign choices matter here:
//!
//! * [`Branch::Growing`] takes `γ = ½(1+√(1-4A₁/α²))`, `β = ½(1-√(1+4B₁/α²))`. This is the
//!   pairing behind the widely quoted closed form [`energy_nr`]; `β < 0` makes `R` singular
//!   at the origin and `γ > 0` makes it grow at infinity, and its "levels" get deeper as `n`
//!   increases.
//! * [`Branch::Regular`] takes the other roots, `γ = ½(1-√…)`, `β = ½(1+√…)`. These are the
//!   normalisable bound states (`K₁ = -α²(γ+β+2n)²` with `γ+β+2n < 0`), returned by
//!   [`energy_nr_regular`] and checked against the shooting solver.
//!
//! The hyperbolic functions are used on the whole half-line `r > 0`.

use crate::aim::AimSystem;
use crate::error::{Error, Result};
use crate::jet::SeriesJet;
use crate::scalar::Real;
use crate::specfun::{hyp2f1_terminating, pochhammer, TerminatingHypergeometric};

/// `ħc` in eV·Å used for molecular spectra.
pub const HBAR_C_EV_ANGSTROM: f64 = 1973.29;
/// Atomic mass unit in eV/c².
pub const AMU_TO_EV: f64 = 931.494_061e6;
/// Constant of the centrifugal approximation.
pub const D0: f64 = 1.0 / 12.0;

/// Relative margin below which a square-root argument is flagged as sitting on its edge.
const DISCRIMINANT_EDGE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtPotential<T> {
    /// Well strength (energy); negative for an attractive well.
    pub a: T,
    /// Core strength (energy); non-negative for a repulsive core.
    pub b: T,
    /// Inverse range.
    pub alpha: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialNote {
    /// `A ≥ 0`: there is no attractive well.
    NonAttractiveWell,
    /// `B < 0`: the core is attractive.
    AttractiveCore,
    /// `B₁ ≤ 0` or `A₁ ≥ 0`: the effective potential has no interior minimum.
    NoInteriorMinimum,
}

impl<T: Real> PtPotential<T> {
    pub fn new(a: T, b: T, alpha: T) -> Result<Self> {
        if !(alpha > T::zero()) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!("alpha must be positive and finite, got {alpha}")));
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter(format!("A = {a}, B = {b} must be finite")));
        }
        Ok(Self { a, b, alpha })
    }

    /// `A/cosh²(αr) + B/sinh²(αr)` for `r > 0`.
    pub fn value(&self, r: T) -> Result<T> {
        if r == T::zero() && self.b != T::zero() {
            return Err(Error::SingularOrigin("PT potential with B != 0"));
        }
        if !(r > T::zero()) {
            return Err(Error::Domain {
                func: "PtPotential::value",
                arg: r.to_f64_lossy(),
                detail: "requires r > 0",
            });
        }
        let x = self.alpha * r;
        let c = x.cosh();
        let s = x.sinh();
        Ok(self.a / (c * c) + self.b / (s * s))
    }

    /// Sign conventions that bound-state routines expect but do not enforce.
    pub fn notes(&self) -> Vec<PotentialNote> {
        let mut notes = Vec::new();
        if self.a >= T::zero() {
            notes.push(PotentialNote::NonAttractiveWell);
        }
        if self.b < T::zero() {
            notes.push(PotentialNote::AttractiveCore);
        }
        notes
    }
}

/// Mass and unit system for the nonrelativistic problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NrContext<T> {
    /// Reduced mass as a rest energy `μc²` (eV), or the bare mass when `hbar_c = 1`.
    pub mu: T,
    /// `ħc` (eV·Å), or 1 in natural units.
    pub hbar_c: T,
    pub d0: T,
}

impl<T: Real> NrContext<T> {
    pub fn new(mu: T, hbar_c: T) -> Result<Self> {
        if !(mu > T::zero()) || !mu.is_finite() {
            return Err(Error::InvalidParameter(format!("reduced mass must be positive, got {mu}")));
        }
        if !(hbar_c > T::zero()) || !hbar_c.is_finite() {
            return Err(Error::InvalidParameter(format!("hbar*c must be positive, got {hbar_c}")));
        }
        Ok(Self {
            mu,
            hbar_c,
            d0: T::lit(D0),
        })
    }

    /// Reduced mass in amu converted with `amu_to_ev`, lengths in Å, energies in eV.
    pub fn from_amu(mu_amu: T, amu_to_ev: T, hbar_c: T) -> Result<Self> {
        Self::new(mu_amu * amu_to_ev, hbar_c)
    }

    /// `ħ = 1` units.
    pub fn natural(mu: T) -> Result<Self> {
        Self::new(mu, T::one())
    }

    /// `2μ/ħ²`, the factor turning energies into inverse squared lengths.
    pub fn two_mu_over_hbar2(&self) -> T {
        T::lit(2.0) * self.mu / (self.hbar_c * self.hbar_c)
    }

    /// `2α²ħ²/μ`, the energy scale of the closed-form spectrum.
    pub fn energy_scale(&self, alpha: T) -> T {
        T::lit(2.0) * alpha * alpha * self.hbar_c * self.hbar_c / self.mu
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    /// Exponents of the widely quoted closed form (singular at the origin).
    Growing,
    /// Exponents of the normalisable solution.
    #[default]
    Regular,
}

/// Exponents and rescaled couplings of the transformed radial equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParams<T> {
    pub gamma: T,
    pub beta: T,
    pub a1: T,
    pub b1: T,
    pub alpha: T,
    pub l: u32,
    pub branch: Branch,
    two_mu_over_hbar2: T,
    d0: T,
}

impl<T: Real> SpectralParams<T> {
    pub fn new(pot: &PtPotential<T>, ctx: &NrContext<T>, l: u32, branch: Branch) -> Result<Self> {
        let alpha = pot.alpha;
        let a2 = alpha * alpha;
        let f = ctx.two_mu_over_hbar2();
        let ll = T::from_u32(l * (l + 1)).unwrap();
        let a1 = f * pot.a;
        let b1 = f * pot.b + ll * a2;
        let dg = T::one() - T::lit(4.0) * a1 / a2;
        let db = T::one() + T::lit(4.0) * b1 / a2;
        if dg < T::zero() {
            return Err(Error::Discriminant {
                which: "1 - 4 A1/alpha^2",
                value: dg.to_f64_lossy(),
            });
        }
        if db < T::zero() {
            return Err(Error::Discriminant {
                which: "1 + 4 B1/alpha^2",
                value: db.to_f64_lossy(),
            });
        }
        let half = T::lit(0.5);
        let (gamma, beta) = match branch {
            Branch::Growing => (half * (T::one() + dg.sqrt()), half * (T::one() - db.sqrt())),
            Branch::Regular => (half * (T::one() - dg.sqrt()), half * (T::one() + db.sqrt())),
        };
        Ok(Self {
            gamma,
            beta,
            a1,
            b1,
            alpha,
            l,
            branch,
            two_mu_over_hbar2: f,
            d0: ctx.d0,
        })
    }

    /// `4ℓ(ℓ+1)α²d₀`, the constant part of the approximated centrifugal term.
    pub fn centrifugal_shift(&self) -> T {
        T::lit(4.0) * T::from_u32(self.l * (self.l + 1)).unwrap() * self.alpha * self.alpha * self.d0
    }

    /// `K₁ = -α²(γ+β+2n)²`.
    pub fn k1(&self, n: u32) -> T {
        let s = self.gamma + self.beta + T::lit(2.0) * T::from_u32(n).unwrap();
        -(self.alpha * self.alpha) * s * s
    }

    /// `K₂ = K₁ + α²(γ+β)² = -4α² n (γ+β+n)`.
    pub fn k2(&self, n: u32) -> T {
        let nf = T::from_u32(n).unwrap();
        -T::lit(4.0) * self.alpha * self.alpha * nf * (self.gamma + self.beta + nf)
    }

    pub fn k1_from_energy(&self, e: T) -> T {
        self.two_mu_over_hbar2 * e - self.centrifugal_shift()
    }

    pub fn energy_from_k1(&self, k1: T) -> T {
        (k1 + self.centrifugal_shift()) / self.two_mu_over_hbar2
    }

    pub fn k2_from_k1(&self, k1: T) -> T {
        let s = self.gamma + self.beta;
        k1 + self.alpha * self.alpha * s * s
    }

    pub fn k1_from_k2(&self, k2: T) -> T {
        let s = self.gamma + self.beta;
        k2 - self.alpha * self.alpha * s * s
    }

    /// Closed-form energy of level `n` on this branch.
    pub fn energy(&self, n: u32) -> T {
        self.energy_from_k1(self.k1(n))
    }

    /// Whether level `n` is a normalisable bound state (regular branch with `γ+β+2n < 0`).
    pub fn is_bound(&self, n: u32) -> bool {
        self.branch == Branch::Regular
            && self.gamma + self.beta + T::lit(2.0) * T::from_u32(n).unwrap() < T::zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LevelFlags {
    /// A square-root argument is within a relative 1e-10 of zero.
    pub discriminant_edge: bool,
    /// `n ≥ n_max` from [`level_count`].
    pub beyond_nmax: bool,
    /// An independent check disagreed with the closed form.
    pub oracle_mismatch: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel<T> {
    pub n: u32,
    pub l: u32,
    pub energy: T,
    pub flags: LevelFlags,
}

/// Which terms of the closed-form spectrum are kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnergyFormula {
    /// `E = (2α²ħ²/μ)[ℓ(ℓ+1)d₀ - (n + ½ + ¼√(1-8μA/α²ħ²) - ¼√((2ℓ+1)²+8μB/α²ħ²))²]`.
    #[default]
    Standard,
    /// The same expression with the core coupling `B` removed from the second root and the
    /// `ℓ(ℓ+1)d₀` offset dropped. This is the convention that reproduces the published
    /// molecular reference table (see `app::table2`).
    WellOnly,
}

struct Discriminants<T> {
    well: T,
    core: T,
}

fn discriminants<T: Real>(pot: &PtPotential<T>, ctx: &NrContext<T>, l: u32, core_one: bool) -> Result<Discriminants<T>> {
    let ratio = T::lit(4.0) * ctx.two_mu_over_hbar2() / (pot.alpha * pot.alpha);
    let well = T::one() - ratio * pot.a;
    let lead = if core_one {
        T::one()
    } else {
        let odd = T::from_u32(2 * l + 1).unwrap();
        odd * odd
    };
    let core = lead + ratio * pot.b;
    if well < T::zero() {
        return Err(Error::Discriminant {
            which: "1 - 8 mu A/(alpha hbar)^2",
            value: well.to_f64_lossy(),
        });
    }
    if core < T::zero() {
        return Err(Error::Discriminant {
            which: "core term (2l+1)^2 + 8 mu B/(alpha hbar)^2",
            value: core.to_f64_lossy(),
        });
    }
    Ok(Discriminants { well, core })
}

fn on_edge<T: Real>(value: T, scale: T) -> bool {
    value <= T::lit(DISCRIMINANT_EDGE) * scale.abs().max(T::one())
}

/// Closed-form energy (the growing-branch formula) with diagnostics.
pub fn energy_nr<T: Real>(pot: &PtPotential<T>, ctx: &NrContext<T>, n: u32, l: u32) -> Result<EnergyLevel<T>> {
    energy_nr_with(pot, ctx, n, l, EnergyFormula::Standard)
}

pub fn energy_nr_with<T: Real>(
    pot: &PtPotential<T>,
    ctx: &NrContext<T>,
    n: u32,
    l: u32,
    formula: EnergyFormula,
) -> Result<EnergyLevel<T>> {
    let ratio = T::lit(4.0) * ctx.two_mu_over_hbar2() / (pot.alpha * pot.alpha);
    let (disc, core) = match formula {
        EnergyFormula::Standard => {
            let d = discriminants(pot, ctx, l, false)?;
            (d, ratio * pot.b)
        }
        EnergyFormula::WellOnly => {
            let mut d = discriminants(pot, ctx, l, false)?;
            let odd = T::from_u32(2 * l + 1).unwrap();
            d.core = odd * odd;
            (d, T::zero())
        }
    };
    let quarter = T::lit(0.25);
    let bracket = T::from_u32(n).unwrap() + T::lit(0.5) + quarter * disc.well.sqrt() - quarter * disc.core.sqrt();
    let offset = match formula {
        EnergyFormula::Standard => T::from_u32(l * (l + 1)).unwrap() * ctx.d0,
        EnergyFormula::WellOnly => T::zero(),
    };
    let energy = ctx.energy_scale(pot.alpha) * (offset - bracket * bracket);

    let count = level_count(pot, ctx, l)?;
    let flags = LevelFlags {
        discriminant_edge: on_edge(disc.well, ratio * pot.a) || on_edge(disc.core, core),
        beyond_nmax: n >= count.n_max,
        oracle_mismatch: false,
    };
    Ok(EnergyLevel { n, l, energy, flags })
}

/// Normalisable level `n`: `E = (2α²ħ²/μ)[ℓ(ℓ+1)d₀ - (n + ½ - ¼√(1-8μA/α²ħ²) + ¼√((2ℓ+1)²+8μB/α²ħ²))²]`.
///
/// Fails when level `n` does not exist (`γ+β+2n ≥ 0` on the regular branch).
pub fn energy_nr_regular<T: Real>(pot: &PtPotential<T>, ctx: &NrContext<T>, n: u32, l: u32) -> Result<T> {
    let params = SpectralParams::new(pot, ctx, l, Branch::Regular)?;
    if !params.is_bound(n) {
        return Err(Error::InvalidParameter(format!(
            "level n = {n} (l = {l}) is not bound: gamma + beta + 2n = {}",
            params.gamma + params.beta + T::lit(2.0) * T::from_u32(n).unwrap()
        )));
    }
    Ok(params.energy(n))
}

/// Level-count parameter and the corresponding bound on `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelCount<T> {
    /// `ζ = ¼√(1+8μB/α²ħ²) - ¼√(1-8μA/α²ħ²) - ½ + √(ℓ(ℓ+1)d₀)`.
    pub zeta: T,
    /// `⌊ζ⌋`, or 0 when `ζ ≤ 0`.
    pub n_max: u32,
    /// Set when `ζ ≤ 0`.
    pub nonpositive: bool,
    /// The value that makes the closed form read `E = (2α²ħ²/μ)[ℓ(ℓ+1)d₀ - (n-ζ)²]` exactly:
    /// `¼√((2ℓ+1)²+8μB/α²ħ²) - ¼√(1-8μA/α²ħ²) - ½`. It differs from `zeta` for `ℓ > 0`.
    pub zeta_from_energy: T,
}

pub fn level_count<T: Real>(pot: &PtPotential<T>, ctx: &NrContext<T>, l: u32) -> Result<LevelCount<T>> {
    let quarter = T::lit(0.25);
    let half = T::lit(0.5);
    let printed = discriminants(pot, ctx, l, true)?;
    let full = discriminants(pot, ctx, l, false)?;
    let ll = T::from_u32(l * (l + 1)).unwrap() * ctx.d0;
    let zeta = quarter * printed.core.sqrt() - quarter * printed.well.sqrt() - half + ll.sqrt();
    let zeta_from_energy = quarter * full.core.sqrt() - quarter * full.well.sqrt() - half;
    let nonpositive = zeta <= T::zero();
    let n_max = if nonpositive {
        0
    } else {
        zeta.floor().to_u32().unwrap_or(u32::MAX)
    };
    Ok(LevelCount {
        zeta,
        n_max,
        nonpositive,
        zeta_from_energy,
    })
}

/// Error of the centrifugal approximation at `x = αr`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentrifugalResidual<T> {
    /// `1/x² - [4d₀ + 1/sinh²x]`.
    pub per_unit: T,
    /// `ℓ(ℓ+1) α² × per_unit`, the error in the radial equation itself.
    pub scaled: T,
}

pub fn centrifugal_approx_residual<T: Real>(l: u32, alpha: T, r: T) -> CentrifugalResidual<T> {
    let x = alpha * r;
    let per_unit = if x.abs() < T::lit(0.25) {
        // -x²/15 + 2x⁴/189 - x⁶/675 + 2x⁸/10395 - 1382x¹⁰/58046625 + 4x¹²/1403325
        let x2 = x * x;
        let c = [
            -1.0 / 15.0,
            2.0 / 189.0,
            -1.0 / 675.0,
            2.0 / 10_395.0,
            -1382.0 / 58_046_625.0,
            4.0 / 1_403_325.0,
        ];
        c.iter().rev().fold(T::zero(), |acc, &ci| acc * x2 + T::lit(ci)) * x2
    } else {
        let s = x.sinh();
        (x * x).recip() - (T::lit(4.0 * D0) + (s * s).recip())
    };
    CentrifugalResidual {
        per_unit,
        scaled: T::from_u32(l * (l + 1)).unwrap() * alpha * alpha * per_unit,
    }
}

/// How the polynomial factor of the wavefunction is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HypergeometricForm {
    /// `₂F₁(-n, γ+β+n; β+½; -sinh²(αr))`, which solves the radial equation exactly.
    #[default]
    SinhSquared,
    /// `₂F₁(-n, γ+β+n; β+1; -sinh(αr))`, the form usually printed next to the closed-form
    /// energies. It does not satisfy the radial equation for `n ≥ 1`.
    SinhLinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WaveOptions {
    pub branch: Branch,
    pub form: HypergeometricForm,
}

/// Unnormalised radial function
/// `(-2)ⁿ (c)ₙ cosh^γ(αr) sinh^β(αr) ₂F₁(-n, γ+β+n; c; w)`; normalise numerically.
pub fn wavefunction_nr<T: Real>(
    pot: &PtPotential<T>,
    ctx: &NrContext<T>,
    n: u32,
    l: u32,
    r: T,
    options: WaveOptions,
) -> Result<T> {
    if !(r > T::zero()) {
        return Err(Error::Domain {
            func: "wavefunction_nr",
            arg: r.to_f64_lossy(),
            detail: "requires r > 0",
        });
    }
    let p = SpectralParams::new(pot, ctx, l, options.branch)?;
    let x = pot.alpha * r;
    if p.beta < T::zero() && p.b1 > T::zero() && x <= T::lit(1e-8) {
        return Err(Error::SingularOrigin("wavefunction on the growing branch"));
    }
    let (c, w) = match options.form {
        HypergeometricForm::SinhSquared => (p.beta + T::lit(0.5), -(x.sinh() * x.sinh())),
        HypergeometricForm::SinhLinear => (p.beta + T::one(), -x.sinh()),
    };
    let poly = hyp2f1_terminating(TerminatingHypergeometric::new(n, p.gamma + p.beta + T::from_u32(n).unwrap(), c, w))?;
    let prefactor = T::lit(-2.0).powi(n as i32) * pochhammer(c, n);
    let value = prefactor * x.cosh().powf(p.gamma) * x.sinh().powf(p.beta) * poly;
    if !value.is_finite() {
        return Err(Error::SingularOrigin("wavefunction evaluation overflowed"));
    }
    Ok(value)
}

/// What [`PtAimSystem`] treats as its spectral parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanVariable {
    /// The energy `E` in the units of the [`NrContext`].
    #[default]
    Energy,
    /// `K₁` directly.
    K1,
    /// `K₂` directly.
    K2,
}

/// The transformed PT equation in `z = sinh(αr)`:
///
/// ```text
/// F'' = -[((2γ+1)z² + 2β(z²+1)) / (z(z²+1))] F' - [K₂ / (α²(1+z²))] F
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PtAimSystem<T> {
    pub params: SpectralParams<T>,
    pub variable: ScanVariable,
}

impl<T: Real> PtAimSystem<T> {
    pub fn new(pot: &PtPotential<T>, ctx: &NrContext<T>, l: u32, branch: Branch) -> Result<Self> {
        Ok(Self {
            params: SpectralParams::new(pot, ctx, l, branch)?,
            variable: ScanVariable::Energy,
        })
    }

    pub fn scanning(mut self, variable: ScanVariable) -> Self {
        self.variable = variable;
        self
    }

    pub fn k2_of(&self, param: T) -> T {
        match self.variable {
            ScanVariable::Energy => self.params.k2_from_k1(self.params.k1_from_energy(param)),
            ScanVariable::K1 => self.params.k2_from_k1(param),
            ScanVariable::K2 => param,
        }
    }

    /// Closed-form value of the scan variable for level `n`.
    pub fn closed_form(&self, n: u32) -> T {
        match self.variable {
            ScanVariable::Energy => self.params.energy(n),
            ScanVariable::K1 => self.params.k1(n),
            ScanVariable::K2 => self.params.k2(n),
        }
    }

    /// `z` at the minimum of `A₁/cosh² + B₁/sinh²`, when it has one.
    pub fn potential_minimum(&self) -> Option<T> {
        let (a1, b1) = (self.params.a1, self.params.b1);
        if !(a1 < T::zero() && b1 > T::zero()) {
            return None;
        }
        let q = (b1 / -a1).sqrt();
        if q >= T::one() {
            return None;
        }
        Some((q / (T::one() - q)).sqrt())
    }
}

impl<T: Real> AimSystem<T> for PtAimSystem<T> {
    fn lambda0(&self, _param: T, x0: T, order: usize) -> Result<SeriesJet<T>> {
        pt_lambda0(self.params.gamma, self.params.beta, x0, order)
    }

    fn s0(&self, param: T, x0: T, order: usize) -> Result<SeriesJet<T>> {
        pt_s0(self.k2_of(param), self.params.alpha, x0, order)
    }

    fn default_x0(&self) -> T {
        self.potential_minimum().unwrap_or_else(T::one)
    }
}

/// `λ₀(z) = -[(2γ+2β+1)z² + 2β] / (z(z²+1))`.
pub(crate) fn pt_lambda0<T: Real>(gamma: T, beta: T, x0: T, order: usize) -> Result<SeriesJet<T>> {
    let z = SeriesJet::variable(x0, order);
    let z2 = z.checked_mul(&z)?;
    let two = T::lit(2.0);
    let num = z2.scale(two * gamma + T::one() + two * beta).add_scalar(two * beta);
    let den = z.checked_mul(&z2.add_scalar(T::one()))?;
    Ok(num.checked_div(&den)?.scale(-T::one()))
}

/// `s₀(z) = -K₂ / (α²(1+z²))`.
pub(crate) fn pt_s0<T: Real>(k2: T, alpha: T, x0: T, order: usize) -> Result<SeriesJet<T>> {
    let z = SeriesJet::variable(x0, order);
    let one_plus = z.checked_mul(&z)?.add_scalar(T::one());
    Ok(one_plus.recip()?.scale(-k2 / (alpha * alpha)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn natural(a: f64, b: f64, alpha: f64, mu: f64) -> (PtPotential<f64>, NrContext<f64>) {
        (PtPotential::new(a, b, alpha).unwrap(), NrContext::natural(mu).unwrap())
    }

    #[test]
    fn potential_edge_cases() {
        let zero = PtPotential::new(0.0, 0.0, 1.3).unwrap();
        assert_eq!(zero.value(0.7).unwrap(), 0.0);
        let p = PtPotential::new(-2.0, 3.0, 1.0).unwrap();
        assert!(matches!(p.value(0.0), Err(Error::SingularOrigin(_))));
        assert!(matches!(p.value(-1.0), Err(Error::Domain { .. })));
        assert!(p.value(20.0_f64).unwrap().abs() < 1e-15);
        assert!(PtPotential::new(-2.0, 3.0, 0.0).is_err());
        assert_eq!(p.notes(), vec![]);
        assert_eq!(
            PtPotential::new(1.0, -1.0, 1.0).unwrap().notes(),
            vec![PotentialNote::NonAttractiveWell, PotentialNote::AttractiveCore]
        );
    }

    #[test]
    fn free_limit_energy() {
        let (pot, ctx) = natural(0.0, 0.0, 0.8, 1.7);
        for n in 0..5 {
            let e = energy_nr(&pot, &ctx, n, 0).unwrap().energy;
            let expected = -(2.0 * 0.64 / 1.7) * (n as f64 + 0.5).powi(2);
            assert_relative_eq!(e, expected, max_relative = 1e-14);
        }
    }

    #[test]
    fn closed_form_matches_k1_route() {
        let (pot, ctx) = natural(-7.5, 1.25, 1.1, 2.0);
        for l in 0..4 {
            let params = SpectralParams::new(&pot, &ctx, l, Branch::Growing).unwrap();
            for n in 0..6 {
                let direct = energy_nr(&pot, &ctx, n, l).unwrap().energy;
                assert_relative_eq!(direct, params.energy(n), max_relative = 1e-13);
                assert_relative_eq!(params.k2(n), params.k2_from_k1(params.k1(n)), max_relative = 1e-12, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn regular_branch_flips_both_roots() {
        let (pot, ctx) = natural(-30.0, 1.0, 1.0, 1.0);
        let well = (1.0_f64 + 8.0 * 30.0).sqrt();
        let core = (1.0_f64 + 8.0).sqrt();
        for n in 0..3 {
            let bracket = n as f64 + 0.5 - 0.25 * well + 0.25 * core;
            let expected = -2.0 * bracket * bracket;
            assert_relative_eq!(energy_nr_regular(&pot, &ctx, n, 0).unwrap(), expected, max_relative = 1e-13);
        }
        assert!(energy_nr_regular(&pot, &ctx, 40, 0).is_err());
    }

    #[test]
    fn discriminant_errors() {
        let (pot, ctx) = natural(5.0, 1.0, 1.0, 1.0);
        assert!(matches!(energy_nr(&pot, &ctx, 0, 0), Err(Error::Discriminant { .. })));
        let (pot, ctx) = natural(-1.0, -5.0, 1.0, 1.0);
        assert!(matches!(energy_nr(&pot, &ctx, 0, 0), Err(Error::Discriminant { .. })));
        // exactly on the edge: 1 - 8A = 0
        let (pot, ctx) = natural(0.125, 0.0, 1.0, 1.0);
        assert!(energy_nr(&pot, &ctx, 0, 0).unwrap().flags.discriminant_edge);
    }

    #[test]
    fn level_count_cases() {
        let (pot, ctx) = natural(0.0, 0.0, 1.0, 1.0);
        let c = level_count(&pot, &ctx, 0).unwrap();
        assert_relative_eq!(c.zeta, -0.5);
        assert_eq!(c.n_max, 0);
        assert!(c.nonpositive);

        // |A| = B: the core root dominates, ζ = ¼(√(1+8B) - √(1+8B)) - ½ < 0
        let (pot, ctx) = natural(-2.0, 2.0, 1.0, 1.0);
        let c = level_count(&pot, &ctx, 0).unwrap();
        assert_relative_eq!(c.zeta, -0.5, epsilon = 1e-15);

        let (pot, ctx) = natural(-2.0, 30.0, 0.5, 3.0);
        let c = level_count(&pot, &ctx, 2).unwrap();
        let expected = 0.25 * (1.0_f64 + 8.0 * 3.0 * 30.0 / 0.25).sqrt() - 0.25 * (1.0_f64 + 8.0 * 3.0 * 2.0 / 0.25).sqrt() - 0.5
            + (6.0_f64 / 12.0).sqrt();
        assert_relative_eq!(c.zeta, expected, max_relative = 1e-14);
        assert_eq!(c.n_max, expected.floor() as u32);
        let e = energy_nr(&pot, &ctx, c.n_max, 2).unwrap();
        assert!(e.flags.beyond_nmax);
        assert!(!energy_nr(&pot, &ctx, 0, 2).unwrap().flags.beyond_nmax);
    }

    #[test]
    fn zeta_from_energy_rewrites_closed_form() {
        let (pot, ctx) = natural(-3.0, 20.0, 0.7, 2.5);
        for l in 0..4 {
            let c = level_count(&pot, &ctx, l).unwrap();
            for n in 0..4 {
                let e = energy_nr(&pot, &ctx, n, l).unwrap().energy;
                let nf = n as f64;
                let rewritten = ctx.energy_scale(0.7) * ((l * (l + 1)) as f64 / 12.0 - (nf - c.zeta_from_energy).powi(2));
                assert_relative_eq!(e, rewritten, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn centrifugal_residual_limits() {
        assert!(centrifugal_approx_residual(1, 1.0, 1e-6_f64).per_unit.abs() < 1e-12);
        let r = centrifugal_approx_residual(2, 1.0, 0.1_f64);
        assert_relative_eq!(r.per_unit, -0.01 / 15.0, max_relative = 2e-3);
        assert_relative_eq!(r.scaled, 6.0 * r.per_unit);
        // series and direct branches agree at the switch
        let below = centrifugal_approx_residual(1, 1.0, 0.25 - 1e-12_f64).per_unit;
        let above = centrifugal_approx_residual(1, 1.0, 0.25_f64).per_unit;
        assert_relative_eq!(below, above, max_relative = 1e-9);
        let wide = centrifugal_approx_residual(1, 1.0, 2.0_f64).per_unit;
        let s = 2.0_f64.sinh();
        assert_relative_eq!(wide, 0.25 - 1.0 / 3.0 - 1.0 / (s * s), max_relative = 1e-14);
    }

    #[test]
    fn ground_wavefunction_is_pure_power_product() {
        let (pot, ctx) = natural(-12.0, 2.0, 1.0, 1.0);
        let p = SpectralParams::new(&pot, &ctx, 1, Branch::Regular).unwrap();
        for form in [HypergeometricForm::SinhSquared, HypergeometricForm::SinhLinear] {
            let opts = WaveOptions { branch: Branch::Regular, form };
            for &r in &[0.2, 1.0, 3.0] {
                let expected = (r as f64).cosh().powf(p.gamma) * (r as f64).sinh().powf(p.beta);
                assert_relative_eq!(wavefunction_nr(&pot, &ctx, 0, 1, r, opts).unwrap(), expected, max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn growing_branch_is_singular_at_origin() {
        let (pot, ctx) = natural(-12.0, 2.0, 1.0, 1.0);
        let opts = WaveOptions { branch: Branch::Growing, form: HypergeometricForm::SinhLinear };
        assert!(matches!(wavefunction_nr(&pot, &ctx, 1, 0, 1e-9, opts), Err(Error::SingularOrigin(_))));
        assert!(wavefunction_nr(&pot, &ctx, 1, 0, 0.5, opts).is_ok());
        assert!(wavefunction_nr(&pot, &ctx, 1, 0, 0.0, WaveOptions::default()).is_err());
    }

    #[test]
    fn aim_default_expansion_point() {
        let (pot, ctx) = natural(-16.0, 1.0, 1.0, 0.5);
        let sys = PtAimSystem::new(&pot, &ctx, 0, Branch::Growing).unwrap();
        let z = sys.potential_minimum().unwrap();
        let u = |z: f64| {
            let c2 = 1.0 + z * z;
            sys.params.a1 / c2 + sys.params.b1 / (z * z)
        };
        assert!(u(z) < u(z * 1.01) && u(z) < u(z * 0.99));
        assert_eq!(sys.default_x0(), z);

        let (pot, ctx) = natural(-2.0, 3.0, 1.0, 0.5);
        let sys = PtAimSystem::new(&pot, &ctx, 0, Branch::Growing).unwrap();
        assert_eq!(sys.potential_minimum(), None);
        assert_eq!(sys.default_x0(), 1.0);
    }
}
