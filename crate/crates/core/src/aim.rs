//! Numerical asymptotic iteration method (AIM).
//!
//! For `y'' = λ₀(x) y' + s₀(x) y` the method iterates
//!
//! ```text
//! λ_k = λ'_{k-1} + s_{k-1} + λ₀ λ_{k-1}
//! s_k = s'_{k-1} + s₀ λ_{k-1}
//! ```
//!
//! and locates eigenvalues as roots of `δ_k = λ_k s_{k-1} - λ_{k-1} s_k` evaluated at a
//! fixed point `x₀`. The derivatives are carried exactly by truncated Taylor jets, so each
//! iteration consumes one order of the jet: a depth-`k` run needs order `K ≥ k`.

use crate::error::{Error, Result};
use crate::jet::SeriesJet;
use crate::scalar::Real;

/// Supplies `λ₀` and `s₀` as jets about `x0` for a given value of the spectral parameter.
pub trait AimSystem<T: Real> {
    fn lambda0(&self, param: T, x0: T, order: usize) -> Result<SeriesJet<T>>;
    fn s0(&self, param: T, x0: T, order: usize) -> Result<SeriesJet<T>>;

    /// Expansion point used when the caller does not pick one.
    fn default_x0(&self) -> T {
        T::one()
    }
}

impl<T: Real, S: AimSystem<T> + ?Sized> AimSystem<T> for &S {
    fn lambda0(&self, param: T, x0: T, order: usize) -> Result<SeriesJet<T>> {
        (**self).lambda0(param, x0, order)
    }
    fn s0(&self, param: T, x0: T, order: usize) -> Result<SeriesJet<T>> {
        (**self).s0(param, x0, order)
    }
    fn default_x0(&self) -> T {
        (**self).default_x0()
    }
}

/// Adapter turning two closures into an [`AimSystem`].
pub struct FnSystem<L, S> {
    pub lambda0: L,
    pub s0: S,
}

impl<T, L, S> AimSystem<T> for FnSystem<L, S>
where
    T: Real,
    L: Fn(T, T, usize) -> Result<SeriesJet<T>>,
    S: Fn(T, T, usize) -> Result<SeriesJet<T>>,
{
    fn lambda0(&self, param: T, x0: T, order: usize) -> Result<SeriesJet<T>> {
        (self.lambda0)(param, x0, order)
    }
    fn s0(&self, param: T, x0: T, order: usize) -> Result<SeriesJet<T>> {
        (self.s0)(param, x0, order)
    }
}

/// Default Taylor order for a depth-`k` run: every iteration keeps at least eight valid orders.
pub fn default_order(depth: usize) -> usize {
    2 * depth + 8
}

/// An AIM problem: the system, the expansion point and the jet order.
#[derive(Debug, Clone)]
pub struct AimProblem<T, S> {
    system: S,
    x0: T,
    max_order: usize,
}

/// Output of one depth-`k` iteration.
#[derive(Debug, Clone)]
pub struct AimStep<T> {
    pub lambda: SeriesJet<T>,
    pub s: SeriesJet<T>,
    /// `δ_k(x₀)`.
    pub delta: T,
}

/// Scan configuration.
#[derive(Debug, Clone, Copy)]
pub struct ScanOptions<T> {
    /// Uniform grid points across the bracket.
    pub grid_points: usize,
    /// A root is converged when the nearest depth-`(k-1)` root lies within this distance.
    /// `None` means `10 × tol`.
    pub stability_tol: Option<T>,
    pub max_bisections: usize,
}

impl<T> Default for ScanOptions<T> {
    fn default() -> Self {
        Self {
            grid_points: 512,
            stability_tol: None,
            max_bisections: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AimRoot<T> {
    pub value: T,
    /// `δ_k` at the refined root.
    pub residual: T,
    /// Distance to the nearest root of `δ_{k-1}`; infinite when there is none.
    pub stability_gap: T,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScanWarning {
    /// Two adjacent grid cells both change sign: roots may be closer than the grid spacing.
    BracketTooCoarse { cell: usize },
    /// `δ_k` could not be evaluated at a grid point.
    EvaluationFailed { cell: usize, message: String },
}

#[derive(Debug, Clone)]
pub struct AimScanReport<T> {
    pub k_used: usize,
    /// Sorted ascending.
    pub roots: Vec<AimRoot<T>>,
    pub warnings: Vec<ScanWarning>,
}

impl<T: Real> AimScanReport<T> {
    /// True when at least one root was found and all of them are stable.
    pub fn converged(&self) -> bool {
        !self.roots.is_empty() && self.roots.iter().all(|r| r.converged)
    }

    pub fn converged_roots(&self) -> impl Iterator<Item = &AimRoot<T>> {
        self.roots.iter().filter(|r| r.converged)
    }

    /// Fails with [`Error::NoSignChange`] when the scan found nothing.
    pub fn require_roots(&self, bracket: (T, T)) -> Result<&[AimRoot<T>]> {
        if self.roots.is_empty() {
            Err(Error::NoSignChange {
                what: "AIM termination function",
                lo: bracket.0.to_f64_lossy(),
                hi: bracket.1.to_f64_lossy(),
            })
        } else {
            Ok(&self.roots)
        }
    }
}

impl<T: Real, S: AimSystem<T>> AimProblem<T, S> {
    pub fn new(system: S, x0: T, max_order: usize) -> Result<Self> {
        if max_order < 1 {
            return Err(Error::InvalidParameter("AIM jet order must be >= 1".into()));
        }
        if !x0.is_finite() {
            return Err(Error::InvalidParameter(format!("AIM expansion point {x0} is not finite")));
        }
        Ok(Self {
            system,
            x0,
            max_order,
        })
    }

    /// Problem at the system's default `x₀` with the order sized for `depth`.
    pub fn for_depth(system: S, depth: usize) -> Result<Self> {
        let x0 = system.default_x0();
        Self::new(system, x0, default_order(depth))
    }

    pub fn x0(&self) -> T {
        self.x0
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn system(&self) -> &S {
        &self.system
    }

    fn seeds(&self, param: T) -> Result<(SeriesJet<T>, SeriesJet<T>)> {
        let l0 = self.system.lambda0(param, self.x0, self.max_order)?;
        let s0 = self.system.s0(param, self.x0, self.max_order)?;
        for (name, jet) in [("lambda0", &l0), ("s0", &s0)] {
            if jet.order() != self.max_order || jet.x0() != self.x0 {
                return Err(Error::JetMismatch(format!(
                    "{name} returned order {} about {}, expected order {} about {}",
                    jet.order(),
                    jet.x0(),
                    self.max_order,
                    self.x0
                )));
            }
        }
        Ok((l0, s0))
    }

    /// Runs the recurrence to depth `k` and returns `(λ_k, s_k, δ_k(x₀))`.
    pub fn iterate(&self, param: T, k: usize) -> Result<AimStep<T>> {
        if k == 0 || k > self.max_order {
            return Err(Error::DepthExceedsOrder {
                depth: k,
                order: self.max_order,
            });
        }
        let (l0, s0) = self.seeds(param)?;
        let mut lam = l0.clone();
        let mut s = s0.clone();
        let mut delta = T::zero();
        for _ in 0..k {
            let lam_next = lam
                .derivative()
                .checked_add(&s)?
                .checked_add(&l0.mul_unchecked(&lam))?;
            let s_next = s.derivative().checked_add(&s0.mul_unchecked(&lam))?;
            delta = lam_next.value() * s.value() - lam.value() * s_next.value();
            lam = lam_next;
            s = s_next;
        }
        Ok(AimStep {
            lambda: lam,
            s,
            delta,
        })
    }

    /// `δ_k(x₀)` only.
    pub fn delta(&self, param: T, k: usize) -> Result<T> {
        self.iterate(param, k).map(|step| step.delta)
    }

    /// Scans `param ↦ δ_k(x₀; param)` across `bracket` for sign changes, refines each by
    /// bisection to `tol`, and checks every root against the roots of `δ_{k-1}`.
    ///
    /// At most `n_roots` roots are refined, taken in ascending order. A bracket without
    /// sign changes yields an empty, unconverged report.
    pub fn eigen_scan(
        &self,
        bracket: (T, T),
        k: usize,
        n_roots: usize,
        tol: T,
        options: ScanOptions<T>,
    ) -> Result<AimScanReport<T>> {
        let (lo, hi) = bracket;
        if !(lo < hi) {
            return Err(Error::InvalidParameter(format!(
                "scan bracket must satisfy lo < hi, got [{lo}, {hi}]"
            )));
        }
        if k < 2 {
            return Err(Error::InvalidParameter(
                "eigen_scan needs depth k >= 2 to compare against depth k-1".into(),
            ));
        }
        if !(tol > T::zero()) {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
        }
        let stability_tol = options.stability_tol.unwrap_or(T::lit(10.0) * tol);

        let mut warnings = Vec::new();
        let primary = self.scan_depth(bracket, k, n_roots, tol, &options, &mut warnings)?;
        let mut ignored = Vec::new();
        let previous = self.scan_depth(bracket, k - 1, usize::MAX, tol, &options, &mut ignored)?;

        let roots = primary
            .into_iter()
            .map(|(value, residual)| {
                let mut gap = previous
                    .iter()
                    .map(|(p, _)| (*p - value).abs())
                    .fold(T::infinity(), T::min);
                // the coarse depth-(k-1) grid can miss a root sitting next to a spurious one
                if gap > stability_tol {
                    if let Some(local) = self.local_root(value, stability_tol, k - 1, tol, options.max_bisections) {
                        gap = gap.min((local - value).abs());
                    }
                }
                AimRoot {
                    value,
                    residual,
                    stability_gap: gap,
                    converged: gap <= stability_tol,
                }
            })
            .collect();
        Ok(AimScanReport {
            k_used: k,
            roots,
            warnings,
        })
    }

    fn scan_depth(
        &self,
        (lo, hi): (T, T),
        k: usize,
        limit: usize,
        tol: T,
        options: &ScanOptions<T>,
        warnings: &mut Vec<ScanWarning>,
    ) -> Result<Vec<(T, T)>> {
        let points = options.grid_points.max(2);
        let step = (hi - lo) / T::from_usize_lossy(points - 1);
        let grid: Vec<T> = (0..points)
            .map(|i| if i + 1 == points { hi } else { lo + step * T::from_usize_lossy(i) })
            .collect();
        let values: Vec<Option<T>> = grid
            .iter()
            .enumerate()
            .map(|(i, &p)| match self.delta(p, k) {
                Ok(v) if v.is_finite() => Some(v),
                Ok(_) => {
                    warnings.push(ScanWarning::EvaluationFailed {
                        cell: i,
                        message: "non-finite delta".into(),
                    });
                    None
                }
                Err(e) => {
                    warnings.push(ScanWarning::EvaluationFailed {
                        cell: i,
                        message: e.to_string(),
                    });
                    None
                }
            })
            .collect();

        let mut cells = Vec::new();
        for i in 0..points - 1 {
            match (values[i], values[i + 1]) {
                (Some(a), Some(b)) if a == T::zero() => cells.push((i, grid[i], grid[i], a, b)),
                (Some(a), Some(b)) if b != T::zero() && (a < T::zero()) != (b < T::zero()) => {
                    cells.push((i, grid[i], grid[i + 1], a, b))
                }
                _ => {}
            }
        }
        // the last grid point can be an exact zero too
        if let Some(Some(v)) = values.last() {
            if *v == T::zero() {
                cells.push((points - 1, hi, hi, *v, *v));
            }
        }
        for w in cells.windows(2) {
            if w[1].0 == w[0].0 + 1 {
                warnings.push(ScanWarning::BracketTooCoarse { cell: w[1].0 });
            }
        }

        let mut roots = Vec::new();
        for (_, a, b, fa, _) in cells.into_iter().take(limit) {
            let root = if a == b {
                (a, T::zero())
            } else {
                self.bisect(a, b, fa, k, tol, options.max_bisections)?
            };
            roots.push(root);
        }
        Ok(roots)
    }

    /// A root of `δ_k` inside `[center - radius, center + radius]`, if the ends differ in sign.
    fn local_root(&self, center: T, radius: T, k: usize, tol: T, max_iter: usize) -> Option<T> {
        let (a, b) = (center - radius, center + radius);
        let fa = self.delta(a, k).ok().filter(|v| v.is_finite())?;
        let fb = self.delta(b, k).ok().filter(|v| v.is_finite())?;
        if fa == T::zero() {
            return Some(a);
        }
        if fb == T::zero() {
            return Some(b);
        }
        if (fa < T::zero()) == (fb < T::zero()) {
            return None;
        }
        self.bisect(a, b, fa, k, tol, max_iter).ok().map(|(m, _)| m)
    }

    fn bisect(&self, mut a: T, mut b: T, mut fa: T, k: usize, tol: T, max_iter: usize) -> Result<(T, T)> {
        let two = T::lit(2.0);
        for _ in 0..max_iter {
            if (b - a).abs() <= tol {
                break;
            }
            let m = a + (b - a) / two;
            if m == a || m == b {
                break;
            }
            let fm = self.delta(m, k)?;
            if fm == T::zero() {
                return Ok((m, fm));
            }
            if (fm < T::zero()) == (fa < T::zero()) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        let m = a + (b - a) / two;
        Ok((m, self.delta(m, k)?))
    }
}

/// Variable-rescaled system `λ̃₀(u) = c λ₀(c u)`, `s̃₀(u) = c² s₀(c u)`, expanded about
/// `x₀ / c`. It describes the same equation in the variable `u = x / c`, so its termination
/// roots coincide with those of the original problem at `x₀`.
pub struct Rescaled<S, T> {
    pub inner: S,
    pub factor: T,
}

impl<T: Real, S: AimSystem<T>> AimSystem<T> for Rescaled<S, T> {
    fn lambda0(&self, param: T, x0: T, order: usize) -> Result<SeriesJet<T>> {
        let c = self.factor;
        let jet = self.inner.lambda0(param, x0 * c, order)?;
        Ok(jet
            .map_indexed(|j, v| v * c.powi(j as i32 + 1))
            .with_x0(x0))
    }

    fn s0(&self, param: T, x0: T, order: usize) -> Result<SeriesJet<T>> {
        let c = self.factor;
        let jet = self.inner.s0(param, x0 * c, order)?;
        Ok(jet
            .map_indexed(|j, v| v * c.powi(j as i32 + 2))
            .with_x0(x0))
    }

    fn default_x0(&self) -> T {
        self.inner.default_x0() / self.factor
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Hermite equation y'' = 2x y' - 2ε y; polynomial solutions at ε = 0, 1, 2, …
    fn hermite() -> impl AimSystem<f64> {
        FnSystem {
            lambda0: |_e: f64, x0: f64, k: usize| Ok(SeriesJet::variable(x0, k).scale(2.0)),
            s0: |e: f64, x0: f64, k: usize| Ok(SeriesJet::constant(x0, -2.0 * e, k)),
        }
    }

    #[test]
    fn depth_is_bounded_by_order() {
        let p = AimProblem::new(hermite(), 0.3, 6).unwrap();
        assert!(p.iterate(1.0, 6).is_ok());
        assert!(matches!(p.iterate(1.0, 7), Err(Error::DepthExceedsOrder { depth: 7, order: 6 })));
        assert!(matches!(p.iterate(1.0, 0), Err(Error::DepthExceedsOrder { .. })));
    }

    #[test]
    fn zero_s0_gives_zero_delta() {
        let sys = FnSystem {
            lambda0: |_e: f64, x0: f64, k: usize| Ok(SeriesJet::variable(x0, k).add_scalar(3.0)),
            s0: |_e: f64, x0: f64, k: usize| Ok(SeriesJet::zero(x0, k)),
        };
        let p = AimProblem::new(sys, 0.8, 20).unwrap();
        for k in 1..=10 {
            assert_eq!(p.delta(0.0, k).unwrap(), 0.0);
        }
    }

    #[test]
    fn hermite_levels_are_integers() {
        let p = AimProblem::for_depth(hermite(), 10).unwrap();
        let report = p
            .eigen_scan((-0.5, 4.5), 10, 10, 1e-12, ScanOptions::default())
            .unwrap();
        let converged: Vec<f64> = report.converged_roots().map(|r| r.value).collect();
        assert_eq!(converged.len(), 5, "{report:?}");
        for (n, e) in converged.iter().enumerate() {
            assert!((e - n as f64).abs() < 1e-9, "level {n}: {e}");
        }
    }

    #[test]
    fn empty_bracket_reports_nothing() {
        let p = AimProblem::for_depth(hermite(), 6).unwrap();
        let report = p
            .eigen_scan((0.2, 0.8), 6, 4, 1e-12, ScanOptions::default())
            .unwrap();
        assert!(report.roots.is_empty());
        assert!(!report.converged());
        assert!(matches!(report.require_roots((0.2, 0.8)), Err(Error::NoSignChange { .. })));
    }

    #[test]
    fn scan_rejects_bad_arguments() {
        let p = AimProblem::for_depth(hermite(), 6).unwrap();
        assert!(p.eigen_scan((1.0, 0.0), 6, 4, 1e-9, ScanOptions::default()).is_err());
        assert!(p.eigen_scan((0.0, 1.0), 1, 4, 1e-9, ScanOptions::default()).is_err());
        assert!(p.eigen_scan((0.0, 1.0), 6, 4, 0.0, ScanOptions::default()).is_err());
    }

    #[test]
    fn mismatched_seed_order_is_rejected() {
        let sys = FnSystem {
            lambda0: |_e: f64, x0: f64, _k: usize| Ok(SeriesJet::variable(x0, 3)),
            s0: |_e: f64, x0: f64, k: usize| Ok(SeriesJet::zero(x0, k)),
        };
        let p = AimProblem::new(sys, 0.0, 8).unwrap();
        assert!(matches!(p.delta(0.0, 2), Err(Error::JetMismatch(_))));
    }
}
