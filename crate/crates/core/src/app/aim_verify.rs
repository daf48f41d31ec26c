use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{fmt_opt, fmt_sig, Table};
use crate::aim::{AimProblem, ScanOptions};
use crate::error::Result;
use crate::schrodinger::{Branch, NrContext, PtAimSystem, PtPotential, ScanVariable};

#[derive(Debug, Clone)]
pub struct AimVerifyOptions {
    pub sets: usize,
    pub seed: u64,
    /// Levels `n = 0..levels` checked per set.
    pub levels: u32,
    /// Iteration depth `k` of the scan.
    pub depth: usize,
    pub grid_points: usize,
    /// Bisection tolerance relative to the bracket width.
    pub tol_rel: f64,
    /// Depth-stability tolerance relative to the bracket width.
    pub stability_rel: f64,
}

impl Default for AimVerifyOptions {
    fn default() -> Self {
        Self {
            sets: 10,
            seed: 20_240_601,
            levels: 4,
            depth: 8,
            grid_points: 512,
            tol_rel: 1e-13,
            stability_rel: 1e-9,
        }
    }
}

/// Random parameters, natural units `μ = ħ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSet {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub l: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelCheck {
    pub set: usize,
    pub params: ParamSet,
    pub n: u32,
    pub closed_form: f64,
    /// The `n`-th depth-stable root, highest energy first.
    pub aim: Option<f64>,
    pub rel_err: Option<f64>,
    pub stability_gap: Option<f64>,
}

/// Where the roots of `δ_k` sit in `K₂` against the two candidate patterns
/// `K₂(n) = -4α²n(γ+β+n)` and `K₂(n) = -4α²(γ+β+n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternCheck {
    pub set: usize,
    pub n: u32,
    pub induced: f64,
    pub printed: f64,
    /// Relative distance from each candidate to the nearest depth-stable root.
    pub induced_err: f64,
    pub printed_err: f64,
}

#[derive(Debug, Clone)]
pub struct AimVerifyReport {
    pub sets: Vec<ParamSet>,
    pub levels: Vec<LevelCheck>,
    pub patterns: Vec<PatternCheck>,
    pub elapsed_secs: f64,
}

impl AimVerifyReport {
    pub fn max_rel_err(&self) -> Option<f64> {
        self.levels
            .iter()
            .map(|c| c.rel_err)
            .try_fold(0.0f64, |acc, e| e.map(|e| acc.max(e)))
    }

    /// `true` when every candidate root of the induced pattern is hit and no printed one is.
    pub fn induced_pattern_confirmed(&self, tol: f64) -> bool {
        self.patterns.iter().all(|p| p.induced_err <= tol)
            && self
                .patterns
                .iter()
                .filter(|p| p.n >= 2)
                .all(|p| p.printed_err > tol)
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new([
            "check", "set", "A", "B", "alpha", "l", "n", "expected", "found", "rel_err", "stability_gap",
        ]);
        for c in &self.levels {
            let p = c.params;
            t.push(vec![
                "level".into(),
                c.set.to_string(),
                fmt_sig(p.a),
                fmt_sig(p.b),
                fmt_sig(p.alpha),
                p.l.to_string(),
                c.n.to_string(),
                fmt_sig(c.closed_form),
                fmt_opt(c.aim),
                fmt_opt(c.rel_err),
                fmt_opt(c.stability_gap),
            ]);
        }
        for c in &self.patterns {
            let p = self.sets[c.set];
            for (kind, expected, err) in [
                ("k2_induced", c.induced, c.induced_err),
                ("k2_printed", c.printed, c.printed_err),
            ] {
                t.push(vec![
                    kind.into(),
                    c.set.to_string(),
                    fmt_sig(p.a),
                    fmt_sig(p.b),
                    fmt_sig(p.alpha),
                    p.l.to_string(),
                    c.n.to_string(),
                    fmt_sig(expected),
                    String::new(),
                    fmt_sig(err),
                    String::new(),
                ]);
            }
        }
        t
    }
}

pub fn random_sets(count: usize, seed: u64) -> Vec<ParamSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| ParamSet {
            a: -rng.gen_range(1.0..20.0),
            b: rng.gen_range(0.1..5.0),
            alpha: rng.gen_range(0.3..1.5),
            l: rng.gen_range(0..3),
        })
        .collect()
}

fn stable_roots(
    sys: PtAimSystem<f64>,
    bracket: (f64, f64),
    opts: &AimVerifyOptions,
    count: usize,
) -> Result<Vec<(f64, f64)>> {
    let width = bracket.1 - bracket.0;
    let problem = AimProblem::for_depth(sys, opts.depth)?;
    let scan = ScanOptions {
        grid_points: opts.grid_points,
        stability_tol: Some(opts.stability_rel * width.max(1.0)),
        ..ScanOptions::default()
    };
    let report = problem.eigen_scan(bracket, opts.depth, count, opts.tol_rel * width.max(1.0), scan)?;
    let mut roots: Vec<(f64, f64)> = report
        .converged_roots()
        .map(|r| (r.value, r.stability_gap))
        .collect();
    roots.sort_by(|a, b| b.0.total_cmp(&a.0));
    Ok(roots)
}

fn check_set(set: usize, p: ParamSet, opts: &AimVerifyOptions) -> Result<(Vec<LevelCheck>, Vec<PatternCheck>)> {
    let pot = PtPotential::new(p.a, p.b, p.alpha)?;
    let ctx = NrContext::natural(1.0)?;
    let sys = PtAimSystem::new(&pot, &ctx, p.l, Branch::Growing)?;

    // Energy scan, bracket padded around the expected band of levels.
    let closed: Vec<f64> = (0..opts.levels).map(|n| sys.closed_form(n)).collect();
    let (top, bottom) = (closed[0], *closed.last().unwrap());
    let pad = 0.1 * (top - bottom) + 0.1;
    let roots = stable_roots(sys, (bottom - pad, top + pad), opts, 4 * opts.levels as usize)?;
    let levels = closed
        .iter()
        .enumerate()
        .map(|(n, &e)| {
            let found = roots.get(n).copied();
            LevelCheck {
                set,
                params: p,
                n: n as u32,
                closed_form: e,
                aim: found.map(|r| r.0),
                rel_err: found.map(|r| ((r.0 - e) / e).abs()),
                stability_gap: found.map(|r| r.1),
            }
        })
        .collect();

    // K₂ scan for the δ pattern.
    let k2_sys = sys.scanning(ScanVariable::K2);
    let (g, b, a2) = (sys.params.gamma, sys.params.beta, p.alpha * p.alpha);
    let induced: Vec<f64> = (0..opts.levels).map(|n| -4.0 * a2 * n as f64 * (g + b + n as f64)).collect();
    let printed: Vec<f64> = (0..opts.levels)
        .map(|n| if n == 0 { 0.0 } else { -4.0 * a2 * (g + b + n as f64) })
        .collect();
    let lo = induced.iter().chain(&printed).fold(0.0f64, |m, &v| m.min(v));
    let pad = 0.1 * lo.abs() + 0.5;
    let k2_roots = stable_roots(k2_sys, (lo - pad, pad), opts, 6 * opts.levels as usize)?;
    let nearest = |v: f64| {
        k2_roots
            .iter()
            .map(|r| (r.0 - v).abs() / v.abs().max(1.0))
            .fold(f64::INFINITY, f64::min)
    };
    let patterns = (0..opts.levels as usize)
        .map(|n| PatternCheck {
            set,
            n: n as u32,
            induced: induced[n],
            printed: printed[n],
            induced_err: nearest(induced[n]),
            printed_err: nearest(printed[n]),
        })
        .collect();
    Ok((levels, patterns))
}

/// AIM energies of the growing-branch PT problem against the closed form, on seeded random
/// parameter sets, plus the `K₂` root pattern.
pub fn aim_verify(opts: &AimVerifyOptions) -> Result<AimVerifyReport> {
    let start = Instant::now();
    let sets = random_sets(opts.sets, opts.seed);
    let results: Vec<_> = sets
        .par_iter()
        .enumerate()
        .map(|(i, &p)| check_set(i, p, opts))
        .collect::<Result<_>>()?;
    let (mut levels, mut patterns) = (Vec::new(), Vec::new());
    for (l, p) in results {
        levels.extend(l);
        patterns.extend(p);
    }
    Ok(AimVerifyReport {
        sets,
        levels,
        patterns,
        elapsed_secs: start.elapsed().as_secs_f64(),
    })
}
