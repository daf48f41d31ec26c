use rayon::prelude::*;

use super::{fmt_opt, fmt_sig, RunConfig, Table};
use crate::error::Result;
use crate::schrodinger::{energy_nr, energy_nr_regular, level_count, NrContext, PtPotential};

/// Closed-form levels for every selected molecule and `(n, ℓ)` pair.
///
/// `energy_eV` is the growing-branch closed form; `regular_eV` is the normalisable level
/// and stays empty when that level does not exist.
pub fn spectrum(cfg: &RunConfig) -> Result<Table> {
    cfg.validate()?;
    let mut jobs = Vec::new();
    for m in cfg.selected()? {
        for &n in &cfg.n {
            for &l in &cfg.l {
                jobs.push((m, n, l));
            }
        }
    }
    let rows: Vec<Vec<String>> = jobs
        .par_iter()
        .map(|&(m, n, l)| {
            let pot = PtPotential::new(cfg.a, cfg.b, m.alpha_inv_angstrom)?;
            let ctx = NrContext::from_amu(m.mu_amu, cfg.amu_to_ev, cfg.hbar_c)?;
            let level = energy_nr(&pot, &ctx, n, l)?;
            let regular = energy_nr_regular(&pot, &ctx, n, l).ok();
            let count = level_count(&pot, &ctx, l)?;
            Ok(vec![
                m.name.clone(),
                n.to_string(),
                l.to_string(),
                fmt_sig(level.energy),
                fmt_opt(regular),
                fmt_sig(count.zeta),
                count.n_max.to_string(),
                level.flags.beyond_nmax.to_string(),
                level.flags.discriminant_edge.to_string(),
            ])
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new([
        "molecule",
        "n",
        "l",
        "energy_eV",
        "regular_eV",
        "zeta",
        "n_max",
        "beyond_nmax",
        "discriminant_edge",
    ]);
    table.rows = rows;
    Ok(table)
}
