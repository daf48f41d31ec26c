use rayon::prelude::*;

use super::{fmt_sig, RunConfig, Table};
use crate::dirac::{solve_levels, DiracContext, EnergySign, SolveOptions, Symmetry, Units};
use crate::error::{Error, Result};
use crate::schrodinger::PtPotential;

#[derive(Debug, Clone)]
pub struct DiracOptions {
    pub mass: f64,
    pub alpha: f64,
    pub kappas: Vec<i32>,
    pub n: Vec<u32>,
    pub symmetries: Vec<Symmetry>,
    pub c_ps: f64,
    pub c_s: f64,
    /// Energy bracket; defaults to `[-1.5M, 1.5M]`.
    pub bracket: Option<(f64, f64)>,
    /// Energies in eV and `α` in 1/Å instead of `ħ = c = 1`.
    pub ev_units: bool,
    pub grid_points: usize,
}

impl Default for DiracOptions {
    fn default() -> Self {
        Self {
            mass: 5.0,
            alpha: 1.0,
            kappas: vec![-2, -1, 1, 2],
            n: vec![0, 1, 2],
            symmetries: vec![Symmetry::PseudoSpin, Symmetry::Spin],
            c_ps: 0.0,
            c_s: 0.0,
            bracket: None,
            ev_units: false,
            grid_points: SolveOptions::default().grid_points,
        }
    }
}

fn symmetry_name(s: Symmetry) -> &'static str {
    match s {
        Symmetry::PseudoSpin => "pspin",
        Symmetry::Spin => "spin",
    }
}

/// Roots of the spin and pseudospin quantization conditions for each `(symmetry, n, κ)`.
///
/// Combinations without a real root in the bracket produce a single row whose `status`
/// names the reason; the run itself succeeds.
pub fn dirac(cfg: &RunConfig, opts: &DiracOptions) -> Result<Table> {
    cfg.validate()?;
    let pot = PtPotential::new(cfg.a, cfg.b, opts.alpha)?;
    let bracket = opts.bracket.unwrap_or((-1.5 * opts.mass, 1.5 * opts.mass));
    let tol = 1e-12 * opts.mass.abs().max(1.0);
    let solve = SolveOptions {
        grid_points: opts.grid_points,
        ..SolveOptions::default()
    };
    let mut jobs = Vec::new();
    for &sym in &opts.symmetries {
        for &n in &opts.n {
            for &kappa in &opts.kappas {
                jobs.push((sym, n, kappa));
            }
        }
    }
    let groups: Vec<Vec<Vec<String>>> = jobs
        .par_iter()
        .map(|&(sym, n, kappa)| {
            let mut ctx = DiracContext::new(opts.mass, kappa, n)?.with_constants(opts.c_ps, opts.c_s);
            if opts.ev_units {
                ctx = ctx.with_units(Units::EvAngstrom { hbar_c: cfg.hbar_c });
            }
            let head = vec![symmetry_name(sym).to_string(), n.to_string(), kappa.to_string()];
            let empty = |status: &str| {
                let mut row = head.clone();
                row.push(status.to_string());
                row.extend(std::iter::repeat(String::new()).take(7));
                row
            };
            match solve_levels(&ctx, &pot, sym, bracket, tol, solve) {
                Ok(roots) => Ok(roots
                    .iter()
                    .map(|r| {
                        let mut row = head.clone();
                        row.extend([
                            "root".to_string(),
                            fmt_sig(r.energy),
                            fmt_sig(r.residual),
                            fmt_sig(r.bracket_used.0),
                            fmt_sig(r.bracket_used.1),
                            r.multiplicity.to_string(),
                            match r.sign {
                                EnergySign::Positive => "+".to_string(),
                                EnergySign::Negative => "-".to_string(),
                            },
                            r.at_excluded_point.to_string(),
                        ]);
                        row
                    })
                    .collect()),
                Err(e @ (Error::NoSignChange { .. } | Error::ComplexDomain { .. })) => Ok(vec![empty(e.kind())]),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new([
        "symmetry",
        "n",
        "kappa",
        "status",
        "energy",
        "residual",
        "bracket_lo",
        "bracket_hi",
        "multiplicity",
        "sign",
        "excluded_point",
    ]);
    table.rows = groups.into_iter().flatten().collect();
    Ok(table)
}
