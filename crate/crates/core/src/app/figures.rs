use rayon::prelude::*;

use super::{fmt_sig, linear_grid, log_grid, RunConfig, Table};
use crate::error::Result;
use crate::schrodinger::{energy_nr, NrContext, PtPotential};
use crate::thermo::{tau, ThermoContext, ThermoPoint};

/// Molecules whose thermodynamic series are emitted.
pub const FIGURE_MOLECULES: [&str; 4] = ["N2", "TiH", "NiC", "I2"];

#[derive(Debug, Clone)]
pub struct FigureOptions {
    /// `(lo, hi, points)`, log-spaced.
    pub beta_grid: (f64, f64, usize),
    /// `(lo, hi, points)`, evenly spaced.
    pub zeta_grid: (f64, f64, usize),
    /// `(lo, hi, points)` for the energy-versus-α series, evenly spaced.
    pub alpha_grid: (f64, f64, usize),
    /// Curves of the `β` sweeps.
    pub zeta_series: Vec<f64>,
    /// Curves of the `ζ` sweeps.
    pub beta_series: Vec<f64>,
    /// Levels of the energy-versus-α series (ℓ = 0).
    pub levels: Vec<u32>,
    /// Reduced mass of the energy-versus-α series, natural units `ħ = 1`.
    pub mu_natural: f64,
    pub molecules: Vec<String>,
}

impl Default for FigureOptions {
    fn default() -> Self {
        Self {
            beta_grid: (1e-4, 1.0, 64),
            zeta_grid: (1.0, 100.0, 64),
            alpha_grid: (0.05, 0.5, 64),
            zeta_series: vec![5.0, 20.0, 50.0, 100.0],
            beta_series: vec![1e-3, 1e-2, 0.1, 1.0],
            levels: vec![1, 2, 3, 4],
            mu_natural: 1.0,
            molecules: FIGURE_MOLECULES.iter().map(|s| s.to_string()).collect(),
        }
    }
}

#[derive(Clone, Copy)]
enum Quantity {
    Z,
    U,
    C,
    F,
    S,
}

impl Quantity {
    fn name(self) -> &'static str {
        match self {
            Quantity::Z => "Z",
            Quantity::U => "U",
            Quantity::C => "C",
            Quantity::F => "F",
            Quantity::S => "S",
        }
    }

    fn pick(self, p: &ThermoPoint<f64>) -> f64 {
        match self {
            Quantity::Z => p.z,
            Quantity::U => p.u,
            Quantity::C => p.c,
            Quantity::F => p.f,
            Quantity::S => p.s,
        }
    }
}

const QUANTITIES: [Quantity; 5] = [Quantity::Z, Quantity::U, Quantity::C, Quantity::F, Quantity::S];

/// Every figure series as `(file name, table)`, in a fixed order.
///
/// `fig01_energy.csv` holds `E(α)` for the ℓ = 0 levels; for each molecule,
/// `fig02`/`fig03` hold `Z` (and `ln Z`) versus `β` and versus `ζ`, then `U`, `C`, `F`, `S`
/// follow as `fig04`..`fig11`.
pub fn figure_data(cfg: &RunConfig, opts: &FigureOptions) -> Result<Vec<(String, Table)>> {
    cfg.validate()?;
    let mut out = vec![("fig01_energy.csv".to_string(), energy_vs_alpha(cfg, opts)?)];
    let betas = log_grid(opts.beta_grid.0, opts.beta_grid.1, opts.beta_grid.2)?;
    let zetas = linear_grid(opts.zeta_grid.0, opts.zeta_grid.1, opts.zeta_grid.2)?;
    for name in &opts.molecules {
        let m = cfg.molecule(name)?;
        let nr = NrContext::from_amu(m.mu_amu, cfg.amu_to_ev, cfg.hbar_c)?;
        let t = tau(nr.mu, m.alpha_inv_angstrom, cfg.hbar_c);

        let by_beta = sweep(&betas, &opts.zeta_series, |beta, zeta| ThermoContext::new(zeta, t)?.point(beta))?;
        let by_zeta = sweep(&zetas, &opts.beta_series, |zeta, beta| ThermoContext::new(zeta, t)?.point(beta))?;

        for (i, q) in QUANTITIES.iter().enumerate() {
            let fig = 2 + 2 * i;
            out.push((
                format!("fig{fig:02}_{name}.csv"),
                series_table("beta", &betas, "zeta", &opts.zeta_series, &by_beta, *q),
            ));
            out.push((
                format!("fig{:02}_{name}.csv", fig + 1),
                series_table("zeta", &zetas, "beta", &opts.beta_series, &by_zeta, *q),
            ));
        }
    }
    Ok(out)
}

fn energy_vs_alpha(cfg: &RunConfig, opts: &FigureOptions) -> Result<Table> {
    let alphas = linear_grid(opts.alpha_grid.0, opts.alpha_grid.1, opts.alpha_grid.2)?;
    let ctx = NrContext::natural(opts.mu_natural)?;
    let mut table = Table::new(
        std::iter::once("alpha".to_string()).chain(opts.levels.iter().map(|n| format!("E_n={n}"))),
    );
    for &alpha in &alphas {
        let pot = PtPotential::new(cfg.a, cfg.b, alpha)?;
        let mut row = vec![fmt_sig(alpha)];
        for &n in &opts.levels {
            row.push(fmt_sig(energy_nr(&pot, &ctx, n, 0)?.energy));
        }
        table.push(row);
    }
    Ok(table)
}

/// `grid × series` thermodynamic points, row-major.
fn sweep(
    grid: &[f64],
    series: &[f64],
    f: impl Fn(f64, f64) -> Result<ThermoPoint<f64>> + Sync,
) -> Result<Vec<Vec<ThermoPoint<f64>>>> {
    grid.par_iter()
        .map(|&x| series.iter().map(|&s| f(x, s)).collect::<Result<Vec<_>>>())
        .collect()
}

fn series_table(
    x_name: &str,
    grid: &[f64],
    series_name: &str,
    series: &[f64],
    points: &[Vec<ThermoPoint<f64>>],
    q: Quantity,
) -> Table {
    let mut header = vec![x_name.to_string()];
    header.extend(series.iter().map(|s| format!("{}_{series_name}={s}", q.name())));
    if let Quantity::Z = q {
        header.extend(series.iter().map(|s| format!("ln_Z_{series_name}={s}")));
    }
    let mut table = Table::new(header);
    for (x, row_points) in grid.iter().zip(points) {
        let mut row = vec![fmt_sig(*x)];
        row.extend(row_points.iter().map(|p| fmt_sig(q.pick(p))));
        if let Quantity::Z = q {
            row.extend(row_points.iter().map(|p| fmt_sig(p.ln_z)));
        }
        table.push(row);
    }
    table
}
