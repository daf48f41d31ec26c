use rayon::prelude::*;

use super::{fmt_opt, fmt_sig, RunConfig, Table};
use crate::error::Result;
use crate::oracle::{shoot_eigenvalue, RadialProblem, ShootOptions};
use crate::schrodinger::{Branch, PtPotential, SpectralParams};

/// A potential checked against the shooting solver.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleSet {
    pub label: String,
    pub pot: PtPotential<f64>,
    pub ctx: NrContext,
    pub l: u32,
}

/// Shooting against both closed-form branches for one level.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleRow {
    pub label: String,
    pub l: u32,
    pub n: u32,
    /// Normalisable closed form; `None` when the level does not exist.
    pub regular: Option<f64>,
    pub shooting: Option<f64>,
    pub nodes: Option<u32>,
    /// `|shooting - regular| / |regular|`.
    pub rel_err: Option<f64>,
    /// Growing-branch closed form (the widely quoted formula).
    pub growing: f64,
    /// `|growing - shooting| / |shooting|`.
    pub growing_dev: Option<f64>,
    /// `ok`, or the error kind that stopped the shooting.
    pub status: String,
}

type NrContext = crate::schrodinger::NrContext<f64>;

/// Five strongly attractive natural-unit sets (`μ = ħ = 1`) with three bound levels each.
pub fn default_sets() -> Vec<OracleSet> {
    [
        (-30.0, 1.0, 1.0, 0),
        (-45.0, 2.0, 1.2, 1),
        (-25.0, 0.5, 0.8, 0),
        (-120.0, 3.0, 1.5, 2),
        (-20.0, 0.2, 0.6, 1),
    ]
    .iter()
    .enumerate()
    .map(|(i, &(a, b, alpha, l))| OracleSet {
        label: format!("set{i}"),
        pot: PtPotential::new(a, b, alpha).expect("valid set"),
        ctx: NrContext::natural(1.0).expect("valid mass"),
        l,
    })
    .collect()
}

/// The configured couplings on each selected molecule, in eV and Å.
pub fn molecule_sets(cfg: &RunConfig) -> Result<Vec<OracleSet>> {
    cfg.selected()?
        .into_iter()
        .map(|m| {
            Ok(OracleSet {
                label: m.name.clone(),
                pot: PtPotential::new(cfg.a, cfg.b, m.alpha_inv_angstrom)?,
                ctx: NrContext::from_amu(m.mu_amu, cfg.amu_to_ev, cfg.hbar_c)?,
                l: 0,
            })
        })
        .collect()
}

fn check(set: &OracleSet, n: u32, tol: f64) -> Result<OracleRow> {
    let regular = SpectralParams::new(&set.pot, &set.ctx, set.l, Branch::Regular)?;
    let growing = SpectralParams::new(&set.pot, &set.ctx, set.l, Branch::Growing)?;
    let problem = RadialProblem::pt_approximated(regular.a1, regular.b1, set.pot.alpha)?;
    let floor = regular.a1.min(0.0) - 1.0;
    let shot = shoot_eigenvalue(&problem, n, (floor, -1e-9 * floor.abs()), tol, ShootOptions::default());
    let growing_e = growing.energy(n);
    let regular_e = regular.is_bound(n).then(|| regular.energy(n));
    let (shooting, nodes, status) = match shot {
        Ok(r) => (Some(regular.energy_from_k1(r.energy)), Some(r.nodes), "ok".to_string()),
        Err(e) => (None, None, e.kind().to_string()),
    };
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
    Ok(OracleRow {
        label: set.label.clone(),
        l: set.l,
        n,
        regular: regular_e,
        shooting,
        nodes,
        rel_err: regular_e.zip(shooting).map(|(r, s)| rel(s, r)),
        growing: growing_e,
        growing_dev: shooting.map(|s| rel(growing_e, s)),
        status,
    })
}

/// Shooting eigenvalues of the approximated radial equation for levels `0..levels`.
pub fn oracle_check(sets: &[OracleSet], levels: u32, tol: f64) -> Result<(Vec<OracleRow>, Table)> {
    let jobs: Vec<_> = sets.iter().flat_map(|s| (0..levels).map(move |n| (s, n))).collect();
    let rows: Vec<OracleRow> = jobs.par_iter().map(|&(s, n)| check(s, n, tol)).collect::<Result<_>>()?;
    let mut table = Table::new([
        "set", "l", "n", "regular", "shooting", "nodes", "rel_err", "growing", "growing_dev", "status",
    ]);
    for r in &rows {
        table.push(vec![
            r.label.clone(),
            r.l.to_string(),
            r.n.to_string(),
            fmt_opt(r.regular),
            fmt_opt(r.shooting),
            r.nodes.map(|v| v.to_string()).unwrap_or_default(),
            fmt_opt(r.rel_err),
            fmt_sig(r.growing),
            fmt_opt(r.growing_dev),
            r.status.clone(),
        ]);
    }
    Ok((rows, table))
}
