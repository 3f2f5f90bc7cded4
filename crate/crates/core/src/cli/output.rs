use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::multiplier_theory::Rational;

/// Shortest round-trip decimal form.
pub fn num(x: f64) -> String {
    format!("{x}")
}

pub fn ratio(r: Rational) -> String {
    r.to_string()
}

pub fn opt_ratio(r: Option<Rational>) -> String {
    r.map(ratio).unwrap_or_default()
}

/// A CSV file held in memory until it is written.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&'static str]) -> Self {
        Self { name: name.to_string(), header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Writes to a temporary file in `dir` and renames it into place.
    pub fn write_atomic(&self, dir: &Path) -> std::io::Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let target = dir.join(&self.name);
        let tmp = dir.join(format!(".{}.{}.tmp", self.name, std::process::id()));
        let result = (|| {
            let file = fs::File::create(&tmp)?;
            let mut w = csv::Writer::from_writer(std::io::BufWriter::new(file));
            w.write_record(&self.header)?;
            for row in &self.rows {
                w.write_record(row)?;
            }
            let mut inner = w.into_inner().map_err(|e| e.into_error())?;
            inner.flush()?;
            inner.get_ref().sync_all()?;
            Ok::<_, std::io::Error>(())
        })();
        if let Err(e) = result {
            let _ = fs::remove_file(&tmp);
            return Err(e);
        }
        fs::rename(&tmp, &target)?;
        Ok(target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_text() {
        let dir = tempfile::tempdir().unwrap();
        let mut t = Table::new("x.csv", &["a", "b"]);
        t.push(vec![num(0.1), ratio(Rational::new(-3, 16))]);
        let path = t.write_atomic(dir.path()).unwrap();
        assert_eq!(fs::read_to_string(path).unwrap(), "a,b\n0.1,-3/16\n");
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
