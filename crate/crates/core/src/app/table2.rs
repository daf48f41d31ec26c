use std::fmt::Write as _;

use rayon::prelude::*;

use super::{fmt_sig, RunConfig, Table};
use crate::error::Result;
use crate::molecules::MoleculeParams;
use crate::schrodinger::{energy_nr_with, EnergyFormula, NrContext, PtPotential, AMU_TO_EV, HBAR_C_EV_ANGSTROM};

/// Molecules per panel of the reference layout.
const PANEL: usize = 6;

/// One unit convention tried against the reference energies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Convention {
    pub formula: EnergyFormula,
    pub hbar_c: f64,
    pub amu_to_ev: f64,
}

impl Convention {
    pub fn label(&self) -> String {
        let f = match self.formula {
            EnergyFormula::Standard => "standard",
            EnergyFormula::WellOnly => "well-only",
        };
        format!("{f}, hbar_c={}, amu={:e} eV", self.hbar_c, self.amu_to_ev)
    }

    pub fn energy(&self, cfg: &RunConfig, m: &MoleculeParams, n: u32, l: u32) -> Result<f64> {
        let pot = PtPotential::new(cfg.a, cfg.b, m.alpha_inv_angstrom)?;
        let ctx = NrContext::from_amu(m.mu_amu, self.amu_to_ev, self.hbar_c)?;
        Ok(energy_nr_with(&pot, &ctx, n, l, self.formula)?.energy)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConventionScore {
    pub convention: Convention,
    pub entries: usize,
    pub max_rel: f64,
    pub rms_rel: f64,
}

fn rel_dev(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs()
}

fn candidates(cfg: &RunConfig) -> Vec<Convention> {
    let mut hbar = vec![cfg.hbar_c, HBAR_C_EV_ANGSTROM, 1973.269804, 1973.0, 1973.3];
    let mut amu = vec![cfg.amu_to_ev, AMU_TO_EV, 931.494028e6, 931.49410242e6, 931.494e6, 931.5e6];
    for v in [&mut hbar, &mut amu] {
        v.sort_by(f64::total_cmp);
        v.dedup();
    }
    let mut out = Vec::new();
    for formula in [EnergyFormula::Standard, EnergyFormula::WellOnly] {
        for &hbar_c in &hbar {
            for &amu_to_ev in &amu {
                out.push(Convention {
                    formula,
                    hbar_c,
                    amu_to_ev,
                });
            }
        }
    }
    out
}

/// Scores each candidate convention against every reference entry whose molecule is in
/// the dataset. Sorted best first (smallest maximum relative deviation).
pub fn scan_conventions(cfg: &RunConfig) -> Result<Vec<ConventionScore>> {
    let refs: Vec<_> = cfg
        .reference
        .iter()
        .filter_map(|r| cfg.molecule(&r.molecule).ok().map(|m| (m, r)))
        .collect();
    let mut scores: Vec<ConventionScore> = candidates(cfg)
        .into_par_iter()
        .map(|convention| {
            let mut max_rel: f64 = 0.0;
            let mut sq = 0.0;
            for (m, r) in &refs {
                let d = rel_dev(convention.energy(cfg, m, r.n, r.l)?, r.energy);
                max_rel = max_rel.max(d);
                sq += d * d;
            }
            Ok(ConventionScore {
                convention,
                entries: refs.len(),
                max_rel,
                rms_rel: if refs.is_empty() { 0.0 } else { (sq / refs.len() as f64).sqrt() },
            })
        })
        .collect::<Result<_>>()?;
    scores.sort_by(|a, b| a.max_rel.total_cmp(&b.max_rel).then(a.rms_rel.total_cmp(&b.rms_rel)));
    Ok(scores)
}

#[derive(Debug, Clone)]
pub struct Table2Output {
    pub table: Table,
    pub scores: Vec<ConventionScore>,
}

/// The molecule × n × ℓ grid with the reference value beside each computed energy.
///
/// `energy_eV` uses the configured constants and the standard closed form;
/// `calibrated_eV` uses the best convention found by [`scan_conventions`].
pub fn table2(cfg: &RunConfig) -> Result<Table2Output> {
    cfg.validate()?;
    let scores = scan_conventions(cfg)?;
    let standard = Convention {
        formula: EnergyFormula::Standard,
        hbar_c: cfg.hbar_c,
        amu_to_ev: cfg.amu_to_ev,
    };
    let best = scores.first().map(|s| s.convention).unwrap_or(standard);

    let selected = cfg.selected()?;
    let mut jobs = Vec::new();
    for panel in selected.chunks(PANEL) {
        for &n in &cfg.n {
            for &l in &cfg.l {
                for &m in panel {
                    jobs.push((m, n, l));
                }
            }
        }
    }
    let rows: Vec<Vec<String>> = jobs
        .par_iter()
        .map(|&(m, n, l)| {
            let pot = PtPotential::new(cfg.a, cfg.b, m.alpha_inv_angstrom)?;
            let ctx = NrContext::from_amu(m.mu_amu, cfg.amu_to_ev, cfg.hbar_c)?;
            let level = energy_nr_with(&pot, &ctx, n, l, EnergyFormula::Standard)?;
            let calibrated = best.energy(cfg, m, n, l)?;
            let reference = cfg.reference_for(&m.name, n, l);
            let (ref_text, dev, cal_dev) = match reference {
                Some(r) => (
                    r.energy_text.clone(),
                    fmt_sig(rel_dev(level.energy, r.energy)),
                    fmt_sig(rel_dev(calibrated, r.energy)),
                ),
                None => (String::new(), String::new(), String::new()),
            };
            Ok(vec![
                m.name.clone(),
                n.to_string(),
                l.to_string(),
                fmt_sig(level.energy),
                ref_text,
                dev,
                fmt_sig(calibrated),
                cal_dev,
                level.flags.beyond_nmax.to_string(),
            ])
        })
        .collect::<Result<_>>()?;
    let mut table = Table::new([
        "molecule",
        "n",
        "l",
        "energy_eV",
        "reference_eV",
        "rel_dev",
        "calibrated_eV",
        "calibrated_rel_dev",
        "beyond_nmax",
    ]);
    table.rows = rows;
    Ok(Table2Output { table, scores })
}

/// Plain-text calibration report: the convention ranking and the per-entry deviations of
/// the best one.
pub fn calibration_report(cfg: &RunConfig, out: &Table2Output) -> Result<String> {
    let mut s = String::new();
    let w = &mut s;
    let _ = writeln!(w, "# Reference-table calibration\n");
    let _ = writeln!(
        w,
        "Inputs: A = {} eV, B = {} eV, {} molecules, {} reference entries.\n",
        cfg.a,
        cfg.b,
        cfg.molecules.len(),
        out.scores.first().map(|s| s.entries).unwrap_or(0)
    );
    let _ = writeln!(w, "## Conventions (best first)\n");
    let _ = writeln!(w, "| convention | max rel dev | rms rel dev |");
    let _ = writeln!(w, "|---|---|---|");
    for sc in &out.scores {
        let _ = writeln!(
            w,
            "| {} | {} | {} |",
            sc.convention.label(),
            fmt_sig(sc.max_rel),
            fmt_sig(sc.rms_rel)
        );
    }
    let Some(best) = out.scores.first() else {
        let _ = writeln!(w, "\nNo reference entries matched the dataset.");
        return Ok(s);
    };
    let _ = writeln!(w, "\nBest found: {}.", best.convention.label());
    if best.convention.formula == EnergyFormula::WellOnly {
        let _ = writeln!(
            w,
            "Under it the core coupling B is absent from the second square root and the \
             l(l+1)d0 offset is absent, i.e. the reference values are \
             -(2 alpha^2 hbar^2/mu)(n + 1/2 + sqrt(1 - 8 mu A/alpha^2 hbar^2)/4 - (2l+1)/4)^2."
        );
    }
    let _ = writeln!(w, "\n## Per-entry deviations under the best convention\n");
    let _ = writeln!(w, "| molecule | n | l | reference | calibrated | rel dev | standard | rel dev |");
    let _ = writeln!(w, "|---|---|---|---|---|---|---|---|");
    let t = &out.table;
    let col = |name: &str| t.column(name).expect("table2 column");
    let (cm, cn, cl, cr, cc, ccd, ce, cd) = (
        col("molecule"),
        col("n"),
        col("l"),
        col("reference_eV"),
        col("calibrated_eV"),
        col("calibrated_rel_dev"),
        col("energy_eV"),
        col("rel_dev"),
    );
    for row in &t.rows {
        if row[cr].is_empty() {
            continue;
        }
        let _ = writeln!(
            w,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            row[cm], row[cn], row[cl], row[cr], row[cc], row[ccd], row[ce], row[cd]
        );
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn best_convention_reproduces_reference() {
        let cfg = RunConfig::default();
        let scores = scan_conventions(&cfg).unwrap();
        let best = &scores[0];
        assert_eq!(best.entries, 108);
        assert_eq!(best.convention.formula, EnergyFormula::WellOnly);
        assert!(best.max_rel < 1e-10, "{best:?}");
    }

    #[test]
    fn layout_mirrors_reference_order() {
        let cfg = RunConfig::default();
        let out = table2(&cfg).unwrap();
        assert_eq!(out.table.rows.len(), 108);
        for (row, r) in out.table.rows.iter().zip(&cfg.reference) {
            assert_eq!(row[0], r.molecule);
            assert_eq!(row[1], r.n.to_string());
            assert_eq!(row[2], r.l.to_string());
            assert_eq!(row[4], r.energy_text);
        }
    }
}
