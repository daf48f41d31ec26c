//! `ptspec`: spectra, Dirac levels, thermodynamics and figure series as CSV.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pt_core::app::{self, RunConfig, Table};
use pt_core::dirac::Symmetry;
use pt_core::molecules;

#[derive(Parser, Debug)]
#[command(name = "ptspec", version, about = "Poschl-Teller spectra and thermodynamics")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Molecule table (`name,mu_amu,alpha_invA`); the bundled table by default.
    #[arg(long, global = true)]
    molecules: Option<PathBuf>,
    /// Restrict per-molecule output to these names.
    #[arg(long = "molecule", global = true, value_delimiter = ',')]
    only: Vec<String>,
    /// Well depth A (eV).
    #[arg(long = "A", global = true, allow_hyphen_values = true, default_value_t = -2.0)]
    a: f64,
    /// Core strength B (eV).
    #[arg(long = "B", global = true, allow_hyphen_values = true, default_value_t = 3.0)]
    b: f64,
    /// hbar*c in eV*Angstrom.
    #[arg(long, global = true, default_value_t = pt_core::schrodinger::HBAR_C_EV_ANGSTROM)]
    hbar_c: f64,
    /// 1 amu in eV.
    #[arg(long = "amu-ev", global = true, default_value_t = pt_core::schrodinger::AMU_TO_EV)]
    amu_ev: f64,
    /// Quantum numbers n (comma separated).
    #[arg(long, global = true, value_delimiter = ',')]
    n: Option<Vec<u32>>,
    /// Orbital quantum numbers l (comma separated).
    #[arg(long, global = true, value_delimiter = ',')]
    l: Option<Vec<u32>>,
    /// Output file (a directory for figure-data); stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form nonrelativistic levels per molecule.
    Spectrum,
    /// Spin and pseudospin Dirac levels (natural units unless --ev-units).
    Dirac(DiracArgs),
    /// Z, U, C, F, S on a beta grid per molecule.
    Thermo(ThermoArgs),
    /// Regenerate the 12-molecule reference table with a calibration report.
    Table2(Table2Args),
    /// Data series behind the energy and thermodynamics figures.
    FigureData(FigureArgs),
    /// AIM roots against the closed form on seeded random parameter sets.
    AimVerify(AimArgs),
    /// Shooting-method eigenvalues against the closed-form branches.
    OracleCheck(OracleArgs),
}

#[derive(Args, Debug)]
struct DiracArgs {
    #[arg(long, default_value_t = 5.0)]
    mass: f64,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [-2, -1, 1, 2])]
    kappa: Vec<i32>,
    #[arg(long, value_enum, default_value_t = SymmetryArg::Both)]
    symmetry: SymmetryArg,
    #[arg(long = "c-ps", allow_hyphen_values = true, default_value_t = 0.0)]
    c_ps: f64,
    #[arg(long = "c-s", allow_hyphen_values = true, default_value_t = 0.0)]
    c_s: f64,
    #[arg(long, allow_hyphen_values = true)]
    emin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    emax: Option<f64>,
    /// Energies in eV and alpha in 1/Angstrom, using --hbar-c.
    #[arg(long)]
    ev_units: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SymmetryArg {
    Pspin,
    Spin,
    Both,
}

#[derive(Args, Debug)]
struct ThermoArgs {
    #[arg(long, default_value_t = 1e-4)]
    beta_min: f64,
    #[arg(long, default_value_t = 1.0)]
    beta_max: f64,
    #[arg(long, default_value_t = 64)]
    beta_points: usize,
    /// Fixed zeta instead of the level-count value.
    #[arg(long)]
    zeta: Option<f64>,
    /// Fixed tau instead of the molecular value.
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long = "k-b", default_value_t = 1.0)]
    k_b: f64,
}

#[derive(Args, Debug)]
struct Table2Args {
    /// Calibration report path; defaults to `<out stem>_calibration.md` next to --out.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FigureArgs {
    #[arg(long, default_value_t = 64)]
    beta_points: usize,
    #[arg(long, default_value_t = 64)]
    zeta_points: usize,
    #[arg(long, default_value_t = 64)]
    alpha_points: usize,
}

#[derive(Args, Debug)]
struct AimArgs {
    #[arg(long, default_value_t = 10)]
    sets: usize,
    #[arg(long, default_value_t = 20_240_601)]
    seed: u64,
    #[arg(long, default_value_t = 8)]
    depth: usize,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long, default_value_t = 3)]
    levels: u32,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Also shoot the configured couplings on each molecule.
    #[arg(long)]
    with_molecules: bool,
}

fn config(g: &Global, n_default: &[u32], l_default: &[u32]) -> Result<RunConfig> {
    let mols = match &g.molecules {
        Some(p) => molecules::load_molecules(p).with_context(|| format!("reading {}", p.display()))?,
        None => molecules::bundled_molecules(),
    };
    let cfg = RunConfig {
        a: g.a,
        b: g.b,
        hbar_c: g.hbar_c,
        amu_to_ev: g.amu_ev,
        n: g.n.clone().unwrap_or_else(|| n_default.to_vec()),
        l: g.l.clone().unwrap_or_else(|| l_default.to_vec()),
        molecules: mols,
        only: g.only.clone(),
        reference: molecules::bundled_reference(),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn emit(table: &Table, out: Option<&Path>) -> Result<()> {
    let bytes = table.to_csv()?;
    match out {
        Some(p) => app::write_atomic(p, &bytes)?,
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    let Format::Csv = g.format;
    let out = g.out.as_deref();
    match &cli.command {
        Command::Spectrum => emit(&app::spectrum(&config(g, &[0, 1, 2, 3], &[0])?)?, out),
        Command::Dirac(d) => {
            let cfg = config(g, &[0, 1, 2], &[0])?;
            let defaults = app::DiracOptions::default();
            let opts = app::DiracOptions {
                mass: d.mass,
                alpha: d.alpha,
                kappas: d.kappa.clone(),
                n: cfg.n.clone(),
                symmetries: match d.symmetry {
                    SymmetryArg::Pspin => vec![Symmetry::PseudoSpin],
                    SymmetryArg::Spin => vec![Symmetry::Spin],
                    SymmetryArg::Both => vec![Symmetry::PseudoSpin, Symmetry::Spin],
                },
                c_ps: d.c_ps,
                c_s: d.c_s,
                bracket: match (d.emin, d.emax) {
                    (None, None) => None,
                    (lo, hi) => Some((lo.unwrap_or(-1.5 * d.mass), hi.unwrap_or(1.5 * d.mass))),
                },
                ev_units: d.ev_units,
                ..defaults
            };
            emit(&app::dirac(&cfg, &opts)?, out)
        }
        Command::Thermo(t) => {
            let cfg = config(g, &[0], &[0])?;
            let opts = app::ThermoOptions {
                beta_min: t.beta_min,
                beta_max: t.beta_max,
                beta_points: t.beta_points,
                zeta: t.zeta,
                tau: t.tau,
                k_b: t.k_b,
            };
            emit(&app::thermo(&cfg, &opts)?, out)
        }
        Command::Table2(t) => {
            let cfg = config(g, &[0, 5, 7], &[0, 5, 10])?;
            let result = app::table2(&cfg)?;
            let report = app::calibration_report(&cfg, &result)?;
            let report_path = t.report.clone().or_else(|| {
                out.map(|p| {
                    let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                    p.with_file_name(format!("{stem}_calibration.md"))
                })
            });
            match (out, report_path) {
                (Some(p), Some(r)) => app::write_all_or_nothing(&[
                    (p.to_path_buf(), result.table.to_csv()?),
                    (r, report.into_bytes()),
                ])?,
                (None, Some(r)) => {
                    app::write_atomic(&r, report.as_bytes())?;
                    emit(&result.table, None)?;
                }
                (_, None) => emit(&result.table, out)?,
            }
            Ok(())
        }
        Command::FigureData(f) => {
            let cfg = config(g, &[0], &[0])?;
            let defaults = app::FigureOptions::default();
            let opts = app::FigureOptions {
                beta_grid: (defaults.beta_grid.0, defaults.beta_grid.1, f.beta_points),
                zeta_grid: (defaults.zeta_grid.0, defaults.zeta_grid.1, f.zeta_points),
                alpha_grid: (defaults.alpha_grid.0, defaults.alpha_grid.1, f.alpha_points),
                molecules: if g.only.is_empty() { defaults.molecules.clone() } else { g.only.clone() },
                ..defaults
            };
            let dir = out.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("figure-data"));
            let files = app::figure_data(&cfg, &opts)?
                .into_iter()
                .map(|(name, t)| Ok((dir.join(name), t.to_csv()?)))
                .collect::<Result<Vec<_>>>()?;
            app::write_all_or_nothing(&files)?;
            Ok(())
        }
        Command::AimVerify(a) => {
            let opts = app::AimVerifyOptions {
                sets: a.sets,
                seed: a.seed,
                depth: a.depth,
                ..Default::default()
            };
            emit(&app::aim_verify(&opts)?.table(), out)
        }
        Command::OracleCheck(o) => {
            let cfg = config(g, &[0], &[0])?;
            let mut sets = app::oracle_default_sets();
            if o.with_molecules {
                sets.extend(app::oracle_molecule_sets(&cfg)?);
            }
            let (_, table) = app::oracle_check(&sets, o.levels, o.tol)?;
            emit(&table, out)
        }
    }
}

fn error_record(err: &anyhow::Error) -> serde_json::Value {
    let kind = err
        .chain()
        .find_map(|e| e.downcast_ref::<pt_core::Error>())
        .map(|e| e.kind())
        .unwrap_or("error");
    serde_json::json!({
        "status": "error",
        "kind": kind,
        "message": format!("{err:#}"),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", error_record(&err));
            ExitCode::FAILURE
        }
    }
}
