//! File formats: symbol sequences as a text format with an `alphabet=N`
//! header, orbits as CSV, matrices as row-major JSON arrays.

use std::io::{BufRead, Write};

use crate::dynamics::PhasePoint;
use crate::error::{Error, Result};
use crate::processes::{Origin, SymbolSequence};

/// Writes `alphabet=N` followed by one symbol per line.
pub fn write_symbols<W: Write>(mut w: W, seq: &SymbolSequence) -> Result<()> {
    writeln!(w, "alphabet={}", seq.alphabet())?;
    for &s in seq.symbols() {
        writeln!(w, "{s}")?;
    }
    Ok(())
}

/// Reads the symbol format. The file does not carry provenance, so the
/// returned sequence is tagged [`Origin::Sampled`].
pub fn read_symbols<R: BufRead>(r: R) -> Result<SymbolSequence> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidInput("empty symbol file".into()))??;
    let alphabet: usize = header
        .strip_prefix("alphabet=")
        .ok_or_else(|| Error::InvalidInput(format!("bad header {header:?}, want alphabet=N")))?
        .trim()
        .parse()
        .map_err(|e| Error::InvalidInput(format!("bad alphabet size: {e}")))?;
    let mut data = Vec::new();
    for line in lines {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let s: u32 = t
            .parse()
            .map_err(|e| Error::InvalidInput(format!("bad symbol {t:?}: {e}")))?;
        data.push(s);
    }
    SymbolSequence::new(alphabet, data, Origin::Sampled)
}

/// One point per row at full float precision (shortest round-trip form),
/// with an `x[,y]` header.
pub fn write_orbit_csv<W: Write>(mut w: W, orbit: &[PhasePoint]) -> Result<()> {
    let dim = orbit.first().map_or(2, PhasePoint::dim);
    writeln!(w, "{}", if dim == 1 { "x" } else { "x,y" })?;
    for p in orbit {
        if dim == 1 {
            writeln!(w, "{}", p.x())?;
        } else {
            writeln!(w, "{},{}", p.x(), p.y())?;
        }
    }
    Ok(())
}

/// Row-major nested JSON arrays.
pub fn write_matrix_json<W: Write>(mut w: W, matrix: &[Vec<f64>]) -> Result<()> {
    serde_json::to_writer(&mut w, matrix)?;
    writeln!(w)?;
    Ok(())
}

pub fn read_matrix_json<R: BufRead>(r: R) -> Result<Vec<Vec<f64>>> {
    Ok(serde_json::from_reader(r)?)
}
