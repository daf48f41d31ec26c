//! Dirac bound states in the PT field under exact spin or pseudospin symmetry.
//!
//! With the centrifugal approximation applied, both symmetry limits reduce to a PT
//! problem whose couplings depend on the energy. The quantization condition is
//!
//! ```text
//! p-spin: 4α²[d₀κ(κ-1) - (n + ½ + ¼√(1 + 4A X/α²) - ¼√((2κ-1)² - 4B X/α²))²] + (M+E) X = 0,  X = M - E + C_ps
//! spin:   4α²[d₀κ(κ+1) - (n + ½ + ¼√(1 - 4A X/α²) - ¼√((2κ+1)² + 4B X/α²))²] + (M-E) X = 0,  X = M + E - C_s
//! ```
//!
//! In eV·Å units every `X` inside a root and the product term carry an extra `1/(ħc)²`.
//! The spin condition is the p-spin one under `A → -A, B → -B, E → -E, κ → κ+1,
//! C_ps → -C_s` ([`map_spin_to_pspin`]).

use crate::aim::AimSystem;
use crate::error::{Error, Result};
use crate::jet::SeriesJet;
use crate::scalar::Real;
use crate::schrodinger::{pt_lambda0, pt_s0, Branch, PtPotential, D0};
use crate::specfun::{hyp2f1_terminating, pochhammer, TerminatingHypergeometric};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    /// `Σ = V + S` constant; governs the lower component `G`.
    PseudoSpin,
    /// `Δ = V - S` constant; governs the upper component `F`.
    Spin,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Units<T> {
    /// `ħ = c = 1`.
    #[default]
    Natural,
    /// Energies in eV, lengths in Å.
    EvAngstrom { hbar_c: T },
}

impl<T: Real> Units<T> {
    /// Factor converting an energy product into an inverse squared length.
    pub fn scale(&self) -> T {
        match *self {
            Units::Natural => T::one(),
            Units::EvAngstrom { hbar_c } => (hbar_c * hbar_c).recip(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracContext<T> {
    pub mass: T,
    pub c_ps: T,
    pub c_s: T,
    pub kappa: i32,
    pub n: u32,
    pub units: Units<T>,
}

impl<T: Real> DiracContext<T> {
    pub fn new(mass: T, kappa: i32, n: u32) -> Result<Self> {
        if kappa == 0 {
            return Err(Error::InvalidParameter("kappa must be nonzero".into()));
        }
        if !(mass > T::zero()) || !mass.is_finite() {
            return Err(Error::InvalidParameter(format!("mass must be positive, got {mass}")));
        }
        Ok(Self {
            mass,
            c_ps: T::zero(),
            c_s: T::zero(),
            kappa,
            n,
            units: Units::Natural,
        })
    }

    pub fn with_constants(mut self, c_ps: T, c_s: T) -> Self {
        self.c_ps = c_ps;
        self.c_s = c_s;
        self
    }

    pub fn with_units(mut self, units: Units<T>) -> Self {
        self.units = units;
        self
    }

    pub fn with_n(mut self, n: u32) -> Self {
        self.n = n;
        self
    }
}

/// Value of a residual, or a marker that a square-root argument is negative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Residual<T> {
    Value(T),
    Complex,
}

impl<T: Copy> Residual<T> {
    pub fn value(self) -> Option<T> {
        match self {
            Residual::Value(v) => Some(v),
            Residual::Complex => None,
        }
    }
}

/// The pieces of either symmetry's quantization condition, after mapping to p-spin form.
#[derive(Debug, Clone, Copy)]
struct Couplings<T> {
    /// Well coupling entering `√(1 + 4 a X u/α²)`.
    a: T,
    /// Core coupling entering `√(odd² - 4 b X u/α²)`.
    b: T,
    /// `κ(κ-1)` or `κ(κ+1)`.
    kk: T,
    /// `2κ-1` or `2κ+1`.
    odd: T,
    /// The symmetry-breaking factor `X`.
    x: T,
    /// The other factor of the product term.
    y: T,
}

fn couplings<T: Real>(symmetry: Symmetry, e: T, ctx: &DiracContext<T>, pot: &PtPotential<T>) -> Couplings<T> {
    let m = ctx.mass;
    let k = T::from_i32(ctx.kappa).unwrap();
    match symmetry {
        Symmetry::PseudoSpin => Couplings {
            a: pot.a,
            b: pot.b,
            kk: k * (k - T::one()),
            odd: T::lit(2.0) * k - T::one(),
            x: m - e + ctx.c_ps,
            y: m + e,
        },
        Symmetry::Spin => Couplings {
            a: -pot.a,
            b: -pot.b,
            kk: k * (k + T::one()),
            odd: T::lit(2.0) * k + T::one(),
            x: m + e - ctx.c_s,
            y: m - e,
        },
    }
}

/// `(well, core)` square-root arguments, or `None` when either is negative.
fn roots<T: Real>(c: &Couplings<T>, alpha: T, u: T) -> Option<(T, T)> {
    let ratio = T::lit(4.0) * c.x * u / (alpha * alpha);
    let well = T::one() + ratio * c.a;
    let core = c.odd * c.odd - ratio * c.b;
    if well < T::zero() || core < T::zero() {
        None
    } else {
        Some((well.sqrt(), core.sqrt()))
    }
}

fn bracket_term<T: Real>(n: u32, well: T, core: T, branch: Branch) -> T {
    let quarter = T::lit(0.25);
    let base = T::from_u32(n).unwrap() + T::lit(0.5);
    match branch {
        Branch::Growing => base + quarter * well - quarter * core,
        Branch::Regular => base - quarter * well + quarter * core,
    }
}

/// Quantization residual for either symmetry. [`Branch::Growing`] is the printed condition;
/// [`Branch::Regular`] flips both roots and selects normalisable spinors.
pub fn residual<T: Real>(
    symmetry: Symmetry,
    e: T,
    ctx: &DiracContext<T>,
    pot: &PtPotential<T>,
    branch: Branch,
) -> Residual<T> {
    let c = couplings(symmetry, e, ctx, pot);
    let u = ctx.units.scale();
    let alpha = pot.alpha;
    match roots(&c, alpha, u) {
        None => Residual::Complex,
        Some((well, core)) => {
            let br = bracket_term(ctx.n, well, core, branch);
            let value = T::lit(4.0) * alpha * alpha * (T::lit(D0) * c.kk - br * br) + u * c.y * c.x;
            Residual::Value(value)
        }
    }
}

/// The p-spin quantization condition as printed.
pub fn pspin_residual<T: Real>(e: T, ctx: &DiracContext<T>, pot: &PtPotential<T>) -> Residual<T> {
    residual(Symmetry::PseudoSpin, e, ctx, pot, Branch::Growing)
}

/// The spin quantization condition as printed.
pub fn spin_residual<T: Real>(e: T, ctx: &DiracContext<T>, pot: &PtPotential<T>) -> Residual<T> {
    residual(Symmetry::Spin, e, ctx, pot, Branch::Growing)
}

/// Spin condition written in `ε = E - M`, so that `M + E = 2M + ε` and `M - E = -ε` carry no
/// cancellation when `M` is large.
pub fn spin_residual_offset<T: Real>(eps: T, ctx: &DiracContext<T>, pot: &PtPotential<T>) -> Residual<T> {
    let k = T::from_i32(ctx.kappa).unwrap();
    let m = ctx.mass;
    let c = Couplings {
        a: -pot.a,
        b: -pot.b,
        kk: k * (k + T::one()),
        odd: T::lit(2.0) * k + T::one(),
        x: T::lit(2.0) * m + eps - ctx.c_s,
        y: -eps,
    };
    let u = ctx.units.scale();
    match roots(&c, pot.alpha, u) {
        None => Residual::Complex,
        Some((well, core)) => {
            let br = bracket_term(ctx.n, well, core, Branch::Growing);
            Residual::Value(T::lit(4.0) * pot.alpha * pot.alpha * (T::lit(D0) * c.kk - br * br) + u * c.y * c.x)
        }
    }
}

/// Image of a spin-symmetry problem under the spin ↔ p-spin parameter map: returns the
/// p-spin context, potential and energy whose p-spin residual equals the spin residual.
pub fn map_spin_to_pspin<T: Real>(
    e: T,
    ctx: &DiracContext<T>,
    pot: &PtPotential<T>,
) -> (T, DiracContext<T>, PtPotential<T>) {
    let mut mapped = *ctx;
    mapped.kappa = ctx.kappa + 1;
    mapped.c_ps = -ctx.c_s;
    let pot = PtPotential {
        a: -pot.a,
        b: -pot.b,
        alpha: pot.alpha,
    };
    (-e, mapped, pot)
}

/// Named reductions of the general conditions, each written out independently in the
/// form `(M² - E²) - 4α²[…]²` (natural units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpecialCase<T> {
    /// `κ = 1`, `C_ps = 0`.
    SWavePseudoSpin { a: T, b: T, alpha: T },
    /// `κ = -1`, `C_s = 0`.
    SWaveSpin { a: T, b: T, alpha: T },
    /// `B = 0`, `A = -η(η+1)/2`, `κ = 1`, `C_ps = 0`.
    ReflectionlessPseudoSpin { eta: T, alpha: T },
    /// `B = 0`, `A = -η(η+1)/2`, `κ = -1`, `C_s = 0`.
    ReflectionlessSpin { eta: T, alpha: T },
    /// `α = 1`, `B = 0`, `A = ¼ - η²`, `κ = 1`, `C_ps = 0`.
    HyperbolicPseudoSpin { eta: T },
    /// `α = 1`, `B = 0`, `A = ¼ - η²`, `κ = -1`, `C_s = 0`.
    HyperbolicSpin { eta: T },
}

impl<T: Real> SpecialCase<T> {
    pub fn residual(&self, e: T, mass: T, n: u32) -> Residual<T> {
        let m = mass;
        let nf = T::from_u32(n).unwrap();
        let half = T::lit(0.5);
        let quarter = T::lit(0.25);
        let four = T::lit(4.0);
        let lhs = m * m - e * e;
        let sqrt = |x: T| if x < T::zero() { None } else { Some(x.sqrt()) };
        let value = match *self {
            SpecialCase::SWavePseudoSpin { a, b, alpha } => {
                let a2 = alpha * alpha;
                sqrt(T::one() + four * a / a2 * (m - e)).zip(sqrt(T::one() - four * b / a2 * (m - e))).map(|(w, c)| {
                    let br = nf + half + quarter * w - quarter * c;
                    lhs - four * a2 * br * br
                })
            }
            SpecialCase::SWaveSpin { a, b, alpha } => {
                let a2 = alpha * alpha;
                sqrt(T::one() - four * a / a2 * (m + e)).zip(sqrt(T::one() + four * b / a2 * (m + e))).map(|(w, c)| {
                    let br = nf + half + quarter * w - quarter * c;
                    lhs - four * a2 * br * br
                })
            }
            SpecialCase::ReflectionlessPseudoSpin { eta, alpha } => {
                let a2 = alpha * alpha;
                sqrt(T::one() - T::lit(2.0) * eta * (eta + T::one()) / a2 * (m - e)).map(|w| {
                    let br = nf + quarter + quarter * w;
                    lhs - four * a2 * br * br
                })
            }
            SpecialCase::ReflectionlessSpin { eta, alpha } => {
                let a2 = alpha * alpha;
                sqrt(T::one() + T::lit(2.0) * eta * (eta + T::one()) / a2 * (m + e)).map(|w| {
                    let br = nf + quarter + quarter * w;
                    lhs - four * a2 * br * br
                })
            }
            SpecialCase::HyperbolicPseudoSpin { eta } => {
                sqrt(T::one() + (T::one() - four * eta * eta) * (m - e)).map(|w| {
                    let br = nf + quarter + quarter * w;
                    lhs - four * br * br
                })
            }
            SpecialCase::HyperbolicSpin { eta } => {
                sqrt(T::one() - (T::one() - four * eta * eta) * (m + e)).map(|w| {
                    let br = nf + quarter + quarter * w;
                    lhs - four * br * br
                })
            }
        };
        value.map_or(Residual::Complex, Residual::Value)
    }

    /// The general problem this case reduces: symmetry, `κ` and potential.
    pub fn general_form(&self) -> Result<(Symmetry, i32, PtPotential<T>)> {
        let half = T::lit(0.5);
        let refl = |eta: T| -eta * (eta + T::one()) * half;
        let hyp = |eta: T| T::lit(0.25) - eta * eta;
        Ok(match *self {
            SpecialCase::SWavePseudoSpin { a, b, alpha } => (Symmetry::PseudoSpin, 1, PtPotential::new(a, b, alpha)?),
            SpecialCase::SWaveSpin { a, b, alpha } => (Symmetry::Spin, -1, PtPotential::new(a, b, alpha)?),
            SpecialCase::ReflectionlessPseudoSpin { eta, alpha } => {
                (Symmetry::PseudoSpin, 1, PtPotential::new(refl(eta), T::zero(), alpha)?)
            }
            SpecialCase::ReflectionlessSpin { eta, alpha } => {
                (Symmetry::Spin, -1, PtPotential::new(refl(eta), T::zero(), alpha)?)
            }
            SpecialCase::HyperbolicPseudoSpin { eta } => {
                (Symmetry::PseudoSpin, 1, PtPotential::new(hyp(eta), T::zero(), T::one())?)
            }
            SpecialCase::HyperbolicSpin { eta } => (Symmetry::Spin, -1, PtPotential::new(hyp(eta), T::zero(), T::one())?),
        })
    }

    /// The general residual under this case's substitutions.
    pub fn general_residual(&self, e: T, mass: T, n: u32) -> Result<Residual<T>> {
        let (symmetry, kappa, pot) = self.general_form()?;
        let ctx = DiracContext::new(mass, kappa, n)?;
        Ok(residual(symmetry, e, &ctx, &pot, Branch::Growing))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergySign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativisticRoot<T> {
    pub n: u32,
    pub kappa: i32,
    pub energy: T,
    pub symmetry: Symmetry,
    /// Final bisection interval; the residual has opposite signs at its ends.
    pub bracket_used: (T, T),
    pub residual: T,
    /// Number of scan cells that refined onto this root.
    pub multiplicity: u32,
    pub sign: EnergySign,
    /// `E = ±M` within the solver tolerance, where one of the spinor relations breaks down.
    pub at_excluded_point: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub grid_points: usize,
    pub max_bisections: usize,
    pub branch: Branch,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            grid_points: 4096,
            max_bisections: 200,
            branch: Branch::Growing,
        }
    }
}

/// Every sign-change root of a residual on `bracket`, refined by bisection to `tol`.
///
/// Grid points where the residual is complex are skipped; no bracket spans one.
pub fn find_roots<T: Real>(
    f: impl Fn(T) -> Residual<T>,
    bracket: (T, T),
    tol: T,
    grid_points: usize,
    max_bisections: usize,
) -> Result<Vec<(T, (T, T), T, u32)>> {
    let (lo, hi) = bracket;
    if !(lo < hi) {
        return Err(Error::InvalidParameter(format!("bracket must satisfy lo < hi, got [{lo}, {hi}]")));
    }
    let points = grid_points.max(2);
    let step = (hi - lo) / T::from_usize_lossy(points - 1);
    let samples: Vec<(T, Option<T>)> = (0..points)
        .map(|i| {
            let x = if i == points - 1 { hi } else { lo + step * T::from_usize_lossy(i) };
            (x, f(x).value())
        })
        .collect();
    if samples.iter().all(|(_, v)| v.is_none()) {
        return Err(Error::ComplexDomain {
            lo: lo.to_f64_lossy(),
            hi: hi.to_f64_lossy(),
        });
    }
    let mut found: Vec<(T, (T, T), T, u32)> = Vec::new();
    for w in samples.windows(2) {
        let ((mut a, fa), (mut b, fb)) = (w[0], w[1]);
        let (Some(mut fa), Some(fb)) = (fa, fb) else { continue };
        if fa == T::zero() {
            b = a;
        } else if fb == T::zero() {
            a = b;
        } else if fa.signum() == fb.signum() {
            continue;
        } else {
            for _ in 0..max_bisections {
                if b - a <= tol {
                    break;
                }
                let mid = a + (b - a) * T::lit(0.5);
                match f(mid).value() {
                    Some(fm) if fm == T::zero() => {
                        a = mid;
                        b = mid;
                        break;
                    }
                    Some(fm) if fm.signum() == fa.signum() => {
                        a = mid;
                        fa = fm;
                    }
                    Some(_) => b = mid,
                    None => break,
                }
            }
        }
        let x = a + (b - a) * T::lit(0.5);
        let r = f(x).value().unwrap_or(T::nan());
        match found.last_mut() {
            Some(last) if (last.0 - x).abs() <= T::lit(10.0) * tol => last.3 += 1,
            _ => found.push((x, (a, b), r, 1)),
        }
    }
    Ok(found)
}

/// All levels of quantum number `ctx.n` in `bracket` for the given symmetry.
pub fn solve_levels<T: Real>(
    ctx: &DiracContext<T>,
    pot: &PtPotential<T>,
    symmetry: Symmetry,
    bracket: (T, T),
    tol: T,
    options: SolveOptions,
) -> Result<Vec<RelativisticRoot<T>>> {
    if !(tol > T::zero()) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let raw = find_roots(
        |e| residual(symmetry, e, ctx, pot, options.branch),
        bracket,
        tol,
        options.grid_points,
        options.max_bisections,
    )?;
    if raw.is_empty() {
        return Err(Error::NoSignChange {
            what: "Dirac quantization residual",
            lo: bracket.0.to_f64_lossy(),
            hi: bracket.1.to_f64_lossy(),
        });
    }
    let excl = T::lit(10.0) * tol;
    Ok(raw
        .into_iter()
        .map(|(energy, bracket_used, residual, multiplicity)| RelativisticRoot {
            n: ctx.n,
            kappa: ctx.kappa,
            energy,
            symmetry,
            bracket_used,
            residual,
            multiplicity,
            sign: if energy >= T::zero() { EnergySign::Positive } else { EnergySign::Negative },
            at_excluded_point: (energy - ctx.mass).abs() <= excl || (energy + ctx.mass).abs() <= excl,
        })
        .collect())
}

/// Which nonrelativistic formula [`nr_limit`] evaluates (`ħ = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NrLimitCase<T> {
    /// `E = (2α²/μ)[ℓ(ℓ+1)d₀ - (n + ½ + ¼√(1 - 8μA/α²) - ¼√((2ℓ+1)² + 8μB/α²))²]`.
    General { a: T, b: T, l: u32 },
    /// `E = -(2α²/μ)[n + ¼ + ¼√(1 + 4μη(η+1)/α²)]²`.
    Reflectionless { eta: T },
    /// `E = -(2/μ)[n + ¼ + ¼√(1 - 2μ(1 - 4η²))]²` (the `α = 1` hyperbolic case).
    SymmetricHyperbolic { eta: T },
}

pub fn nr_limit<T: Real>(case: NrLimitCase<T>, mu: T, alpha: T, n: u32) -> Result<T> {
    let nf = T::from_u32(n).unwrap();
    let quarter = T::lit(0.25);
    let check = |which: &'static str, v: T| {
        if v < T::zero() {
            Err(Error::Discriminant {
                which,
                value: v.to_f64_lossy(),
            })
        } else {
            Ok(v.sqrt())
        }
    };
    let a2 = alpha * alpha;
    match case {
        NrLimitCase::General { a, b, l } => {
            let lf = T::from_u32(l).unwrap();
            let well = check("1 - 8 mu A/alpha^2", T::one() - T::lit(8.0) * mu * a / a2)?;
            let odd = T::lit(2.0) * lf + T::one();
            let core = check("(2l+1)^2 + 8 mu B/alpha^2", odd * odd + T::lit(8.0) * mu * b / a2)?;
            let br = nf + T::lit(0.5) + quarter * well - quarter * core;
            Ok(T::lit(2.0) * a2 / mu * (lf * (lf + T::one()) * T::lit(D0) - br * br))
        }
        NrLimitCase::Reflectionless { eta } => {
            let w = check("1 + 4 mu eta(eta+1)/alpha^2", T::one() + T::lit(4.0) * mu * eta * (eta + T::one()) / a2)?;
            let br = nf + quarter + quarter * w;
            Ok(-T::lit(2.0) * a2 / mu * br * br)
        }
        NrLimitCase::SymmetricHyperbolic { eta } => {
            let w = check("1 - 2 mu (1 - 4 eta^2)", T::one() - T::lit(2.0) * mu * (T::one() - T::lit(4.0) * eta * eta))?;
            let br = nf + quarter + quarter * w;
            Ok(-T::lit(2.0) / mu * br * br)
        }
    }
}

/// `ℓ` paired with `κ` in the spin limit: `κ(κ+1) = ℓ(ℓ+1)`.
pub fn orbital_l(kappa: i32) -> u32 {
    if kappa > 0 {
        kappa as u32
    } else {
        (-kappa - 1) as u32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Component {
    /// `F`, solved under spin symmetry.
    Upper,
    /// `G`, solved under pseudospin symmetry.
    Lower,
}

/// How the polynomial factor of a spinor component is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpinorForm {
    /// Regular exponents and `₂F₁(-n, p+s+n; s+½; -sinh²)`, with `p` the cosh and `s` the
    /// sinh exponent. Solves the component equation exactly at a regular-branch level.
    #[default]
    Regular,
    /// The printed form `cosh^{2β₂} sinh^{2γ₂} ₂F₁(-n, 2(β₂+γ₂)+n; 2β₂+½; sinh²)` with
    /// `γ₂ = ¼(1-√(1+4B₃))`, `β₂ = ¼(1-√(1-4A₃))`.
    AsPrinted,
}

/// Cosh and sinh exponents of a spinor component at energy `e`.
pub fn spinor_exponents<T: Real>(
    component: Component,
    ctx: &DiracContext<T>,
    pot: &PtPotential<T>,
    e: T,
    form: SpinorForm,
) -> Result<(T, T)> {
    let symmetry = match component {
        Component::Upper => Symmetry::Spin,
        Component::Lower => Symmetry::PseudoSpin,
    };
    let c = couplings(symmetry, e, ctx, pot);
    let Some((well, core)) = roots(&c, pot.alpha, ctx.units.scale()) else {
        return Err(Error::Discriminant {
            which: "spinor exponent",
            value: f64::NAN,
        });
    };
    let half = T::lit(0.5);
    Ok(match form {
        SpinorForm::Regular => (half * (T::one() - well), half * (T::one() + core)),
        SpinorForm::AsPrinted => (half * (T::one() - well), half * (T::one() - core)),
    })
}

/// Unnormalised spinor component at `r`, with prefactor `(c)ₙ` for the third
/// hypergeometric parameter `c`.
pub fn spinor_wavefunction<T: Real>(
    component: Component,
    ctx: &DiracContext<T>,
    pot: &PtPotential<T>,
    e: T,
    r: T,
    form: SpinorForm,
) -> Result<T> {
    if !(r > T::zero()) {
        return Err(Error::Domain {
            func: "spinor_wavefunction",
            arg: r.to_f64_lossy(),
            detail: "requires r > 0",
        });
    }
    let (p, s) = spinor_exponents(component, ctx, pot, e, form)?;
    let x = pot.alpha * r;
    if s < T::zero() && x <= T::lit(1e-8) {
        return Err(Error::SingularOrigin("spinor component with a negative sinh exponent"));
    }
    let n = ctx.n;
    let sh = x.sinh();
    let (c, w) = match form {
        SpinorForm::Regular => (s + T::lit(0.5), -(sh * sh)),
        SpinorForm::AsPrinted => (p + T::lit(0.5), sh * sh),
    };
    let poly = hyp2f1_terminating(TerminatingHypergeometric::new(n, p + s + T::from_u32(n).unwrap(), c, w))?;
    let value = pochhammer(c, n) * x.cosh().powf(p) * sh.powf(s) * poly;
    if !value.is_finite() {
        return Err(Error::SingularOrigin("spinor evaluation overflowed"));
    }
    Ok(value)
}

/// AIM form of a symmetry limit: at trial energy `E` the component equation is a PT
/// problem with couplings `A₁ = -aXu`, `B₁ = -bXu + κκ'α²`, `K₁ = -uXY - 4κκ'α²d₀`,
/// solved with the printed exponents. `δ_k(E)` vanishes at the roots of [`pspin_residual`]
/// or [`spin_residual`].
#[derive(Debug, Clone, Copy)]
pub struct DiracAimSystem<T> {
    pub symmetry: Symmetry,
    pub ctx: DiracContext<T>,
    pub pot: PtPotential<T>,
}

impl<T: Real> DiracAimSystem<T> {
    fn effective(&self, e: T) -> Result<(T, T, T)> {
        let c = couplings(self.symmetry, e, &self.ctx, &self.pot);
        let u = self.ctx.units.scale();
        let a2 = self.pot.alpha * self.pot.alpha;
        let Some((well, core)) = roots(&c, self.pot.alpha, u) else {
            return Err(Error::ComplexDomain {
                lo: e.to_f64_lossy(),
                hi: e.to_f64_lossy(),
            });
        };
        let half = T::lit(0.5);
        let gamma = half * (T::one() + well);
        let beta = half * (T::one() - core);
        let k1 = -u * c.x * c.y - T::lit(4.0) * c.kk * a2 * T::lit(D0);
        let k2 = k1 + a2 * (gamma + beta) * (gamma + beta);
        Ok((gamma, beta, k2))
    }
}

impl<T: Real> AimSystem<T> for DiracAimSystem<T> {
    fn lambda0(&self, e: T, x0: T, order: usize) -> Result<SeriesJet<T>> {
        let (gamma, beta, _) = self.effective(e)?;
        pt_lambda0(gamma, beta, x0, order)
    }

    fn s0(&self, e: T, x0: T, order: usize) -> Result<SeriesJet<T>> {
        let (_, _, k2) = self.effective(e)?;
        pt_s0(k2, self.pot.alpha, x0, order)
    }
}
