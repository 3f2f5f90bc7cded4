//! Plain-text field files: a header line, the geometry line, then one value per line.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::real::Real;

use super::field::SpectralField;
use super::grid::GridGeometry;

const HEADER: &str = "n,points,half_width";

pub fn write_field<T: Real, W: Write>(field: &SpectralField<T>, mut out: W) -> Result<()> {
    let g = field.geometry();
    writeln!(out, "{HEADER}")?;
    writeln!(out, "{},{},{}", g.n(), g.points(), g.half_width())?;
    for v in field.values() {
        writeln!(out, "{:e}", v.to_f64_lossy())?;
    }
    Ok(())
}

pub fn read_field<T: Real, R: BufRead>(input: R) -> Result<SpectralField<T>> {
    let mut lines = input.lines();
    let mut next = || -> Result<String> {
        lines.next().ok_or_else(|| Error::Format("unexpected end of file".into()))?.map_err(Error::from)
    };
    if next()?.trim() != HEADER {
        return Err(Error::Format(format!("expected header `{HEADER}`")));
    }
    let geo = next()?;
    let parts: Vec<&str> = geo.trim().split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Format(format!("bad geometry line `{geo}`")));
    }
    let parse_usize =
        |s: &str| s.trim().parse::<usize>().map_err(|e| Error::Format(format!("`{s}`: {e}")));
    let parse_real = |s: &str| -> Result<T> {
        let v = s.trim().parse::<f64>().map_err(|e| Error::Format(format!("`{s}`: {e}")))?;
        Ok(T::lit(v))
    };
    let g = GridGeometry::new(parse_usize(parts[0])?, parse_usize(parts[1])?, parse_real(parts[2])?)?;
    let mut values = Vec::with_capacity(g.total());
    for _ in 0..g.total() {
        values.push(parse_real(&next()?)?);
    }
    SpectralField::from_values(&g, values)
}
