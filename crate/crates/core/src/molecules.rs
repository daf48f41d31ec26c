//! Diatomic molecule parameters and the bundled reference spectrum.

use std::collections::HashSet;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Bundled dataset, header `name,mu_amu,alpha_invA`.
pub const BUNDLED_MOLECULES: &str = include_str!("../data/molecules.csv");

/// Bundled reference energies (eV), header `molecule,n,l,energy_eV`.
pub const BUNDLED_REFERENCE: &str = include_str!("../data/table2_reference.csv");

const MOLECULE_HEADER: [&str; 3] = ["name", "mu_amu", "alpha_invA"];
const REFERENCE_HEADER: [&str; 4] = ["molecule", "n", "l", "energy_eV"];

/// One molecule. The decimal text of each field is kept so that writing the dataset back
/// reproduces the input digits exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeParams {
    pub name: String,
    /// Reduced mass in amu.
    pub mu_amu: f64,
    /// Screening parameter in 1/Å.
    pub alpha_inv_angstrom: f64,
    mu_text: String,
    alpha_text: String,
}

impl MoleculeParams {
    pub fn new(name: &str, mu_amu: f64, alpha_inv_angstrom: f64) -> Result<Self> {
        let m = MoleculeParams {
            name: name.to_string(),
            mu_amu,
            alpha_inv_angstrom,
            mu_text: format!("{mu_amu}"),
            alpha_text: format!("{alpha_inv_angstrom}"),
        };
        m.validate(None)?;
        Ok(m)
    }

    pub fn mu_text(&self) -> &str {
        &self.mu_text
    }

    pub fn alpha_text(&self) -> &str {
        &self.alpha_text
    }

    fn validate(&self, line: Option<u64>) -> Result<()> {
        let at = line.map(|l| format!(" (line {l})")).unwrap_or_default();
        if self.name.is_empty() {
            return Err(Error::Validation(format!("empty molecule name{at}")));
        }
        if !(self.mu_amu.is_finite() && self.mu_amu > 0.0) {
            return Err(Error::Validation(format!(
                "{}: mu_amu must be positive, got {}{at}",
                self.name, self.mu_text
            )));
        }
        if !(self.alpha_inv_angstrom.is_finite() && self.alpha_inv_angstrom > 0.0) {
            return Err(Error::Validation(format!(
                "{}: alpha_invA must be positive, got {}{at}",
                self.name, self.alpha_text
            )));
        }
        Ok(())
    }
}

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(input)
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map(|p| p.line()).unwrap_or(0)
}

fn csv_error(err: csv::Error) -> Error {
    let line = err.position().map(|p| p.line()).unwrap_or(0);
    Error::Parse {
        line,
        message: err.to_string(),
    }
}

fn check_header(rdr: &mut csv::Reader<impl Read>, expected: &[&str]) -> Result<bool> {
    let header = rdr.headers().map_err(csv_error)?;
    if header.is_empty() || (header.len() == 1 && header[0].is_empty()) {
        return Ok(false);
    }
    let got: Vec<&str> = header.iter().collect();
    if got != expected {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header {}, found {}", expected.join(","), got.join(",")),
        });
    }
    Ok(true)
}

fn parse_f64(field: &str, what: &str, line: u64) -> Result<f64> {
    field.parse::<f64>().map_err(|_| Error::Parse {
        line,
        message: format!("{what}: cannot parse {field:?} as a number"),
    })
}

fn parse_u32(field: &str, what: &str, line: u64) -> Result<u32> {
    field.parse::<u32>().map_err(|_| Error::Parse {
        line,
        message: format!("{what}: cannot parse {field:?} as a nonnegative integer"),
    })
}

/// Parses `name,mu_amu,alpha_invA` text. An empty input is an empty dataset.
pub fn parse_molecules(text: &str) -> Result<Vec<MoleculeParams>> {
    read_molecules(text.as_bytes())
}

pub fn read_molecules<R: Read>(input: R) -> Result<Vec<MoleculeParams>> {
    let mut rdr = reader(input);
    if !check_header(&mut rdr, &MOLECULE_HEADER)? {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for record in rdr.records() {
        let record = record.map_err(csv_error)?;
        let line = record_line(&record);
        if record.len() != 3 {
            return Err(Error::Parse {
                line,
                message: format!("expected 3 fields, found {}", record.len()),
            });
        }
        let m = MoleculeParams {
            name: record[0].to_string(),
            mu_amu: parse_f64(&record[1], "mu_amu", line)?,
            alpha_inv_angstrom: parse_f64(&record[2], "alpha_invA", line)?,
            mu_text: record[1].to_string(),
            alpha_text: record[2].to_string(),
        };
        m.validate(Some(line))?;
        if !seen.insert(m.name.clone()) {
            return Err(Error::Validation(format!("duplicate molecule {} (line {line})", m.name)));
        }
        out.push(m);
    }
    Ok(out)
}

pub fn load_molecules(path: impl AsRef<Path>) -> Result<Vec<MoleculeParams>> {
    let file = std::fs::File::open(path)?;
    read_molecules(std::io::BufReader::new(file))
}

pub fn bundled_molecules() -> Vec<MoleculeParams> {
    parse_molecules(BUNDLED_MOLECULES).expect("bundled molecule table is valid")
}

pub fn write_molecules<W: Write>(out: W, molecules: &[MoleculeParams]) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    let io = |e: csv::Error| Error::Io(e.into());
    wtr.write_record(MOLECULE_HEADER).map_err(io)?;
    for m in molecules {
        wtr.write_record([m.name.as_str(), &m.mu_text, &m.alpha_text]).map_err(io)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn find<'a>(molecules: &'a [MoleculeParams], name: &str) -> Result<&'a MoleculeParams> {
    molecules
        .iter()
        .find(|m| m.name == name)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown molecule {name:?}")))
}

/// One printed reference energy.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceEntry {
    pub molecule: String,
    pub n: u32,
    pub l: u32,
    pub energy: f64,
    /// Digits exactly as printed.
    pub energy_text: String,
}

pub fn parse_reference(text: &str) -> Result<Vec<ReferenceEntry>> {
    let mut rdr = reader(text.as_bytes());
    if !check_header(&mut rdr, &REFERENCE_HEADER)? {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(csv_error)?;
        let line = record_line(&record);
        if record.len() != 4 {
            return Err(Error::Parse {
                line,
                message: format!("expected 4 fields, found {}", record.len()),
            });
        }
        out.push(ReferenceEntry {
            molecule: record[0].to_string(),
            n: parse_u32(&record[1], "n", line)?,
            l: parse_u32(&record[2], "l", line)?,
            energy: parse_f64(&record[3], "energy_eV", line)?,
            energy_text: record[3].to_string(),
        });
    }
    Ok(out)
}

pub fn bundled_reference() -> Vec<ReferenceEntry> {
    parse_reference(BUNDLED_REFERENCE).expect("bundled reference table is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_rows() {
        let ms = bundled_molecules();
        assert_eq!(ms.len(), 12);
        let i2 = find(&ms, "I2").unwrap();
        assert_eq!(i2.mu_amu, 63.452235020);
        assert_eq!(i2.alpha_inv_angstrom, 1.86430);
        assert_eq!(i2.mu_text(), "63.452235020");
        let lih = find(&ms, "LiH").unwrap();
        assert_eq!(lih.mu_amu, 0.880122100);
        assert_eq!(lih.alpha_inv_angstrom, 1.12800);
    }

    #[test]
    fn empty_input() {
        assert!(parse_molecules("").unwrap().is_empty());
        assert!(parse_molecules("name,mu_amu,alpha_invA\n").unwrap().is_empty());
    }

    #[test]
    fn round_trip_is_byte_exact() {
        let mut buf = Vec::new();
        write_molecules(&mut buf, &bundled_molecules()).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), BUNDLED_MOLECULES);
    }

    #[test]
    fn rejects_duplicates() {
        let err = parse_molecules("name,mu_amu,alpha_invA\nA,1,1\nA,2,2\n").unwrap_err();
        assert_eq!(err.kind(), "validation");
    }

    #[test]
    fn parse_error_has_line() {
        let err = parse_molecules("name,mu_amu,alpha_invA\nA,1,1\nB,x,1\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn nonpositive_rejected() {
        assert_eq!(parse_molecules("name,mu_amu,alpha_invA\nA,0,1\n").unwrap_err().kind(), "validation");
        assert_eq!(parse_molecules("name,mu_amu,alpha_invA\nA,1,-1\n").unwrap_err().kind(), "validation");
    }

    #[test]
    fn reference_table() {
        let r = bundled_reference();
        assert_eq!(r.len(), 108);
        assert_eq!(r[0].molecule, "I2");
        assert_eq!(r[0].energy_text, "-2.01518700249");
    }
}
