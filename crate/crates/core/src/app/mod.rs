//! Runners behind the `ptspec` subcommands. Each runner builds its tables fully in memory
//! and only then writes them, so a failed run leaves no partial output behind.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::molecules::{self, MoleculeParams, ReferenceEntry};
use crate::schrodinger::{AMU_TO_EV, HBAR_C_EV_ANGSTROM};

mod aim_verify;
mod dirac;
mod figures;
mod oracle_check;
mod spectrum;
mod table2;
mod thermo;

pub use aim_verify::{aim_verify, random_sets, AimVerifyOptions, AimVerifyReport, LevelCheck, ParamSet, PatternCheck};
pub use dirac::{dirac, DiracOptions};
pub use figures::{figure_data, FigureOptions, FIGURE_MOLECULES};
pub use oracle_check::{default_sets as oracle_default_sets, molecule_sets as oracle_molecule_sets, oracle_check, OracleRow, OracleSet};
pub use spectrum::spectrum;
pub use table2::{calibration_report, scan_conventions, table2, Convention, ConventionScore, Table2Output};
pub use thermo::{thermo, ThermoOptions};

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Well depth `A` (eV).
    pub a: f64,
    /// Core strength `B` (eV).
    pub b: f64,
    pub hbar_c: f64,
    pub amu_to_ev: f64,
    pub n: Vec<u32>,
    pub l: Vec<u32>,
    pub molecules: Vec<MoleculeParams>,
    /// Restricts per-molecule runs to these names; empty means all.
    pub only: Vec<String>,
    pub reference: Vec<ReferenceEntry>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            a: -2.0,
            b: 3.0,
            hbar_c: HBAR_C_EV_ANGSTROM,
            amu_to_ev: AMU_TO_EV,
            n: vec![0, 5, 7],
            l: vec![0, 5, 10],
            molecules: molecules::bundled_molecules(),
            only: Vec::new(),
            reference: molecules::bundled_reference(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("A", self.a), ("B", self.b)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")));
            }
        }
        for (name, v) in [("hbar_c", self.hbar_c), ("amu_to_ev", self.amu_to_ev)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn molecule(&self, name: &str) -> Result<&MoleculeParams> {
        molecules::find(&self.molecules, name)
    }

    pub fn selected(&self) -> Result<Vec<&MoleculeParams>> {
        if self.only.is_empty() {
            return Ok(self.molecules.iter().collect());
        }
        self.only.iter().map(|name| self.molecule(name)).collect()
    }

    pub fn reference_for(&self, molecule: &str, n: u32, l: u32) -> Option<&ReferenceEntry> {
        self.reference
            .iter()
            .find(|r| r.molecule == molecule && r.n == n && r.l == l)
    }
}

/// Formats `x` with 11 significant digits: fixed notation for moderate magnitudes,
/// scientific otherwise. Non-finite values print as `nan`, `inf`, `-inf`.
pub fn fmt_sig(x: f64) -> String {
    const DIGITS: i32 = 11;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let exp: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    if (-5..15).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_sig).unwrap_or_default()
}

/// A CSV table held in memory.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// UTF-8, LF line endings, header first.
    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut wtr = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.into());
        wtr.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            wtr.write_record(row).map_err(io)?;
        }
        wtr.into_inner().map_err(|e| Error::Io(e.into_error()))
    }
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Writes a set of files; if any write fails the ones already written are removed.
pub fn write_all_or_nothing(files: &[(PathBuf, Vec<u8>)]) -> Result<()> {
    let mut done: Vec<&Path> = Vec::new();
    for (path, bytes) in files {
        if let Err(e) = write_atomic(path, bytes) {
            for p in done {
                let _ = std::fs::remove_file(p);
            }
            return Err(e);
        }
        done.push(path);
    }
    Ok(())
}

/// `points` values from `lo` to `hi` inclusive, evenly spaced in `ln x`.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo && points >= 2) {
        return Err(Error::InvalidParameter(format!(
            "log grid needs 0 < lo < hi and at least 2 points, got [{lo}, {hi}] x {points}"
        )));
    }
    let (a, b) = (lo.ln(), hi.ln());
    let step = (b - a) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| match i {
            0 => lo,
            i if i == points - 1 => hi,
            i => (a + step * i as f64).exp(),
        })
        .collect())
}

/// `points` values from `lo` to `hi` inclusive, evenly spaced.
pub fn linear_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(hi > lo && points >= 2) {
        return Err(Error::InvalidParameter(format!(
            "grid needs lo < hi and at least 2 points, got [{lo}, {hi}] x {points}"
        )));
    }
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| if i == points - 1 { hi } else { lo + step * i as f64 })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eleven_digits() {
        assert_eq!(fmt_sig(-2.01518700249), "-2.0151870025");
        assert_eq!(fmt_sig(1234.5678901234), "1234.5678901");
        assert_eq!(fmt_sig(1.0e-7), "1.0000000000e-7");
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(f64::NAN), "nan");
    }

    #[test]
    fn grids_hit_endpoints() {
        let g = log_grid(1e-4, 1.0, 64).unwrap();
        assert_eq!(g.len(), 64);
        assert_eq!(g[0], 1e-4);
        assert_eq!(g[63], 1.0);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        let g = linear_grid(0.05, 0.5, 10).unwrap();
        assert_eq!(g[9], 0.5);
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.csv");
        write_atomic(&p, b"a\n").unwrap();
        write_atomic(&p, b"b\n").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"b\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
