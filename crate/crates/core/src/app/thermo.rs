use rayon::prelude::*;

use super::{fmt_sig, log_grid, RunConfig, Table};
use crate::error::Result;
use crate::schrodinger::{level_count, NrContext, PtPotential};
use crate::thermo::{tau, ThermoContext};

#[derive(Debug, Clone)]
pub struct ThermoOptions {
    pub beta_min: f64,
    pub beta_max: f64,
    pub beta_points: usize,
    /// Overrides the level-count `ζ` of each molecule.
    pub zeta: Option<f64>,
    /// Overrides the molecular `τ`.
    pub tau: Option<f64>,
    pub k_b: f64,
}

impl Default for ThermoOptions {
    fn default() -> Self {
        Self {
            beta_min: 1e-4,
            beta_max: 1.0,
            beta_points: 64,
            zeta: None,
            tau: None,
            k_b: 1.0,
        }
    }
}

/// Closed-form `Z, U, C, F, S` on a log-spaced `β` grid for each selected molecule, with
/// the finite sum `Z_sum` alongside.
pub fn thermo(cfg: &RunConfig, opts: &ThermoOptions) -> Result<Table> {
    cfg.validate()?;
    let betas = log_grid(opts.beta_min, opts.beta_max, opts.beta_points)?;
    let mut contexts = Vec::new();
    for m in cfg.selected()? {
        let pot = PtPotential::new(cfg.a, cfg.b, m.alpha_inv_angstrom)?;
        let nr = NrContext::from_amu(m.mu_amu, cfg.amu_to_ev, cfg.hbar_c)?;
        let zeta = match opts.zeta {
            Some(z) => z,
            None => level_count(&pot, &nr, 0)?.zeta,
        };
        let t = opts.tau.unwrap_or_else(|| tau(nr.mu, pot.alpha, nr.hbar_c));
        contexts.push((m.name.clone(), ThermoContext::new(zeta, t)?.with_k_b(opts.k_b)));
    }
    let jobs: Vec<_> = contexts
        .iter()
        .flat_map(|(name, ctx)| betas.iter().map(move |&b| (name, ctx, b)))
        .collect();
    let rows: Vec<Vec<String>> = jobs
        .par_iter()
        .map(|&(name, ctx, beta)| {
            let p = ctx.point(beta)?;
            let n_max = ctx.zeta.max(0.0).floor() as u32;
            let sum = ctx.partition_sum(beta, n_max).map(fmt_sig).unwrap_or_else(|_| "inf".into());
            Ok(vec![
                name.clone(),
                fmt_sig(beta),
                fmt_sig(ctx.zeta),
                fmt_sig(ctx.tau),
                fmt_sig(p.chi),
                fmt_sig(p.ln_z),
                fmt_sig(p.z),
                fmt_sig(p.u),
                fmt_sig(p.c),
                fmt_sig(p.f),
                fmt_sig(p.s),
                sum,
            ])
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new([
        "molecule", "beta", "zeta", "tau", "chi", "ln_Z", "Z", "U", "C", "F", "S", "Z_sum",
    ]);
    table.rows = rows;
    Ok(table)
}
