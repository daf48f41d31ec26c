//! Numerov shooting for `u'' = m (W(r) - E) u` on `(ε, r_cut]`.
//!
//! The integration runs in `x = ln r` on `φ = u/√r`, where the equation reads
//! `φ'' = (r² m (W - E) + ¼) φ`; the logarithmic mesh resolves the power-law start
//! `u ~ r^s` without special treatment.
//!
//! Levels are located through the monotone count `c(E) = nodes + [tail turns towards
//! another node]`: level `n` is the smallest `E` with `c(E) ≥ n + 1`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

const RESCALE: f64 = 1e150;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub epsilon: f64,
    pub r_cut: f64,
}

impl Window {
    /// `ε = 1e-8/α`, `r_cut = 40/α`.
    pub fn for_range(alpha: f64) -> Self {
        Self {
            epsilon: 1e-8 / alpha,
            r_cut: 40.0 / alpha,
        }
    }
}

/// A radial problem `u'' = mass_factor · (W(r) - E) · u` with `u ~ r^s` at the origin.
#[derive(Clone)]
pub struct RadialProblem {
    potential: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub mass_factor: f64,
    pub origin_exponent: f64,
    pub window: Window,
}

impl fmt::Debug for RadialProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProblem")
            .field("mass_factor", &self.mass_factor)
            .field("origin_exponent", &self.origin_exponent)
            .field("window", &self.window)
            .finish_non_exhaustive()
    }
}

impl RadialProblem {
    pub fn new(
        potential: impl Fn(f64) -> f64 + Send + Sync + 'static,
        mass_factor: f64,
        origin_exponent: f64,
        window: Window,
    ) -> Result<Self> {
        if !(window.epsilon > 0.0 && window.r_cut > window.epsilon) {
            return Err(Error::InvalidParameter(format!(
                "integration window must satisfy 0 < epsilon < r_cut, got {window:?}"
            )));
        }
        if !(mass_factor > 0.0) {
            return Err(Error::InvalidParameter(format!("mass factor must be positive, got {mass_factor}")));
        }
        Ok(Self {
            potential: Arc::new(potential),
            mass_factor,
            origin_exponent,
            window,
        })
    }

    /// `W = A₁/cosh²(αr) + B₁/sinh²(αr)` with `E ≡ K₁`; `B₁` already carries the
    /// approximated centrifugal term.
    pub fn pt_approximated(a1: f64, b1: f64, alpha: f64) -> Result<Self> {
        let disc = 1.0 + 4.0 * b1 / (alpha * alpha);
        if disc < 0.0 {
            return Err(Error::Discriminant {
                which: "1 + 4 B1/alpha^2",
                value: disc,
            });
        }
        let s = 0.5 * (1.0 + disc.sqrt());
        Self::new(
            move |r| {
                let x = alpha * r;
                let (c, sh) = (x.cosh(), x.sinh());
                a1 / (c * c) + b1 / (sh * sh)
            },
            1.0,
            s,
            Window::for_range(alpha),
        )
    }

    /// `W = A₁/cosh²(αr) + B₀/sinh²(αr) + ℓ(ℓ+1)/r²` with the exact centrifugal barrier;
    /// `E` is `2μE/ħ²`.
    pub fn pt_raw(a1: f64, b0: f64, alpha: f64, l: u32) -> Result<Self> {
        let ll = (l * (l + 1)) as f64;
        let disc = 1.0 + 4.0 * (b0 / (alpha * alpha) + ll);
        if disc < 0.0 {
            return Err(Error::Discriminant {
                which: "1 + 4 (B0/alpha^2 + l(l+1))",
                value: disc,
            });
        }
        let s = 0.5 * (1.0 + disc.sqrt());
        Self::new(
            move |r| {
                let x = alpha * r;
                let (c, sh) = (x.cosh(), x.sinh());
                a1 / (c * c) + b0 / (sh * sh) + ll / (r * r)
            },
            1.0,
            s,
            Window::for_range(alpha),
        )
    }

    /// `V = ½ m ω² r²` with `ħ = 1`, s-states: `E_n = (2n + 3/2) ω`.
    pub fn harmonic_oscillator(mass: f64, omega: f64) -> Result<Self> {
        let length = (mass * omega).sqrt().recip();
        Self::new(
            move |r| 0.5 * mass * omega * omega * r * r,
            2.0 * mass,
            1.0,
            Window {
                epsilon: 1e-8 * length,
                r_cut: 12.0 * length,
            },
        )
    }

    pub fn potential(&self, r: f64) -> f64 {
        (self.potential)(r)
    }

    /// Outward integration at energy `e` on `steps` intervals.
    pub fn integrate(&self, e: f64, steps: usize) -> Integration {
        let x0 = self.window.epsilon.ln();
        let x1 = self.window.r_cut.ln();
        let h = (x1 - x0) / steps as f64;
        let h2 = h * h / 12.0;
        let q = |x: f64| {
            let r = x.exp();
            r * r * self.mass_factor * (self.potential(r) - e) + 0.25
        };
        let p = self.origin_exponent - 0.5;
        // r^s seed, scaled to 1 at ε
        let mut prev = 1.0;
        let mut cur = (p * h).exp();
        let mut q_prev = q(x0);
        let mut q_cur = q(x0 + h);
        let mut nodes = 0u32;
        let mut last_sign = cur.signum();
        for i in 2..=steps {
            let x = x0 + h * i as f64;
            let q_next = q(x);
            let next = (2.0 * cur * (1.0 + 5.0 * h2 * q_cur) - prev * (1.0 - h2 * q_prev)) / (1.0 - h2 * q_next);
            prev = cur;
            cur = next;
            q_prev = q_cur;
            q_cur = q_next;
            if cur != 0.0 {
                let sign = cur.signum();
                if sign != last_sign {
                    nodes += 1;
                    last_sign = sign;
                }
            }
            if cur.abs() > RESCALE {
                cur /= RESCALE;
                prev /= RESCALE;
            }
        }
        // u = √r φ; du/dr = (φ/2 + φ')/√r, with φ' from a backward difference plus curvature
        let r = self.window.r_cut;
        let dphi = (cur - prev) / h + 0.5 * h * q_cur * cur;
        let u = r.sqrt() * cur;
        let du = (0.5 * cur + dphi) / r.sqrt();
        let decay = (self.mass_factor * (self.potential(r) - e)).max(0.0).sqrt();
        Integration {
            nodes,
            mismatch: du + decay * u,
            last_sign,
        }
    }

    /// Monotone level counter.
    fn count(&self, e: f64, steps: usize) -> u32 {
        let run = self.integrate(e, steps);
        // past the level the tail bends back towards zero, opposite to the last lobe
        let turning = run.mismatch != 0.0 && run.mismatch.signum() != run.last_sign;
        run.nodes + u32::from(turning)
    }

    /// Samples `(r, u(r))` of the outward solution on the integration mesh.
    pub fn wavefunction(&self, e: f64, steps: usize) -> Vec<(f64, f64)> {
        let x0 = self.window.epsilon.ln();
        let x1 = self.window.r_cut.ln();
        let h = (x1 - x0) / steps as f64;
        let h2 = h * h / 12.0;
        let q = |x: f64| {
            let r = x.exp();
            r * r * self.mass_factor * (self.potential(r) - e) + 0.25
        };
        let p = self.origin_exponent - 0.5;
        let mut phi = Vec::with_capacity(steps + 1);
        phi.push(1.0);
        phi.push((p * h).exp());
        let mut qs = vec![q(x0), q(x0 + h)];
        for i in 2..=steps {
            let q_next = q(x0 + h * i as f64);
            let next =
                (2.0 * phi[i - 1] * (1.0 + 5.0 * h2 * qs[i - 1]) - phi[i - 2] * (1.0 - h2 * qs[i - 2])) / (1.0 - h2 * q_next);
            phi.push(next);
            qs.push(q_next);
            if next.abs() > RESCALE {
                phi.iter_mut().for_each(|v| *v /= RESCALE);
            }
        }
        phi.into_iter()
            .enumerate()
            .map(|(i, v)| {
                let r = (x0 + h * i as f64).exp();
                (r, r.sqrt() * v)
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integration {
    /// Sign changes of `u` on the mesh.
    pub nodes: u32,
    /// `u' + κu` at `r_cut`, `κ = √(m(W(r_cut) - E))`.
    pub mismatch: f64,
    /// Sign of `u` after its last node.
    pub last_sign: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootOptions {
    pub initial_steps: usize,
    pub max_steps: usize,
    pub max_bisections: usize,
}

impl Default for ShootOptions {
    fn default() -> Self {
        Self {
            initial_steps: 4000,
            max_steps: 1 << 21,
            max_bisections: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootResult {
    pub energy: f64,
    /// Nodes of the outward solution just below the level; equals `n`.
    pub nodes: u32,
    pub steps: usize,
    /// Change of the level on the last mesh halving.
    pub mesh_change: f64,
}

fn bisect_level(problem: &RadialProblem, n: u32, (mut lo, mut hi): (f64, f64), tol: f64, steps: usize, max_iter: usize) -> Result<f64> {
    let c_lo = problem.count(lo, steps);
    let c_hi = problem.count(hi, steps);
    if c_lo > n || c_hi < n + 1 {
        return Err(Error::NodeCount {
            expected: n as usize,
            low: c_lo as usize,
            high: c_hi as usize,
        });
    }
    for _ in 0..max_iter {
        if hi - lo <= tol * hi.abs().max(lo.abs()).max(1.0) {
            return Ok(0.5 * (lo + hi));
        }
        let mid = 0.5 * (lo + hi);
        if problem.count(mid, steps) > n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(Error::NoConvergence {
        what: "shooting bisection",
        iterations: max_iter,
        estimate: 0.5 * (lo + hi),
    })
}

/// Level `n` inside `bracket`, to relative `tol` in both the bisection and the mesh.
pub fn shoot_eigenvalue(problem: &RadialProblem, n: u32, bracket: (f64, f64), tol: f64, options: ShootOptions) -> Result<ShootResult> {
    if !(bracket.0 < bracket.1) {
        return Err(Error::InvalidParameter(format!("bracket must satisfy lo < hi, got {bracket:?}")));
    }
    let bisect_tol = tol * 0.01;
    let mut steps = options.initial_steps.max(16);
    let mut previous = bisect_level(problem, n, bracket, bisect_tol, steps, options.max_bisections)?;
    loop {
        let finer = steps * 2;
        if finer > options.max_steps {
            return Err(Error::NoConvergence {
                what: "shooting mesh refinement",
                iterations: steps,
                estimate: previous,
            });
        }
        let e = bisect_level(problem, n, bracket, bisect_tol, finer, options.max_bisections)?;
        let change = (e - previous).abs();
        steps = finer;
        if change <= tol * e.abs().max(1e-300) {
            let below = e - 2.0 * bisect_tol * e.abs().max(1.0);
            return Ok(ShootResult {
                energy: e,
                nodes: problem.integrate(below, steps).nodes,
                steps,
                mesh_change: change,
            });
        }
        previous = e;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_levels() {
        let p = RadialProblem::harmonic_oscillator(1.0, 1.0).unwrap();
        for n in 0..3 {
            let expected = 2.0 * n as f64 + 1.5;
            let r = shoot_eigenvalue(&p, n, (0.5, 8.0), 1e-10, ShootOptions::default()).unwrap();
            assert!((r.energy - expected).abs() < 1e-8, "n = {n}: {r:?}");
            assert_eq!(r.nodes, n);
        }
    }

    #[test]
    fn pt_ground_state_matches_exponent_formula() {
        // regular exponents: γ = ½(1 - √(1 - 4A₁)), β = ½(1 + √(1 + 4B₁)) at α = 1
        let (a1, b1) = (-60.0_f64, 2.0_f64);
        let gamma = 0.5 * (1.0 - (1.0 - 4.0 * a1).sqrt());
        let beta = 0.5 * (1.0 + (1.0 + 4.0 * b1).sqrt());
        let p = RadialProblem::pt_approximated(a1, b1, 1.0).unwrap();
        for n in 0..3 {
            let k1 = -(gamma + beta + 2.0 * n as f64).powi(2);
            let r = shoot_eigenvalue(&p, n, (-60.0, -0.01), 1e-9, ShootOptions::default()).unwrap();
            assert!((r.energy - k1).abs() <= 1e-7 * k1.abs(), "n = {n}: {r:?} vs {k1}");
        }
    }

    #[test]
    fn empty_bracket_is_node_count_error() {
        let p = RadialProblem::harmonic_oscillator(1.0, 1.0).unwrap();
        assert!(matches!(
            shoot_eigenvalue(&p, 0, (2.0, 3.0), 1e-8, ShootOptions::default()),
            Err(Error::NodeCount { expected: 0, .. })
        ));
    }

    #[test]
    fn window_validation() {
        let w = Window { epsilon: 1.0, r_cut: 0.5 };
        assert!(RadialProblem::new(|_| 0.0, 1.0, 1.0, w).is_err());
    }
}
