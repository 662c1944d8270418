use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Shooting,
    ClosedForm,
    FiniteDifference,
}

/// Sampled radial profile `r ↦ U(r)` with one or two components.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialProfile {
    pub n: u32,
    pub r: Vec<f64>,
    /// `u[i][j]`: component `i` at `r[j]`.
    pub u: Vec<Vec<f64>>,
    pub du: Vec<Vec<f64>>,
    pub provenance: Provenance,
}

impl RadialProfile {
    pub fn components(&self) -> usize {
        self.u.len()
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn last_radius(&self) -> f64 {
        *self.r.last().unwrap_or(&0.0)
    }

    /// Checks `r[0] = 0`, `u'(0) = 0`, strictly increasing radii and finite values.
    pub fn validate(&self) -> Result<()> {
        if self.r.first() != Some(&0.0) {
            return Err(Error::Invalid("profile must start at r = 0".into()));
        }
        if self.r.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Invalid("radii not strictly increasing".into()));
        }
        for (u, du) in self.u.iter().zip(&self.du) {
            if u.len() != self.r.len() || du.len() != self.r.len() {
                return Err(Error::Invalid("component length mismatch".into()));
            }
            if du[0] != 0.0 {
                return Err(Error::Invalid("u'(0) must vanish".into()));
            }
            if u.iter().chain(du).any(|x| !x.is_finite()) {
                return Err(Error::Invalid("non-finite profile value".into()));
            }
        }
        Ok(())
    }

    /// Header `r,u[,v],du[,dv]`.
    pub fn csv_header(&self) -> Vec<&'static str> {
        let names = ["u", "v"];
        let dnames = ["du", "dv"];
        let m = self.components();
        let mut h = vec!["r"];
        h.extend(&names[..m]);
        h.extend(&dnames[..m]);
        h
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let io = |e: csv::Error| Error::Io { path: "<stream>".into(), message: e.to_string() };
        let mut wr = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
        wr.write_record(self.csv_header()).map_err(io)?;
        for j in 0..self.len() {
            let mut row = vec![self.r[j].to_string()];
            row.extend(self.u.iter().map(|c| c[j].to_string()));
            row.extend(self.du.iter().map(|c| c[j].to_string()));
            wr.write_record(&row).map_err(io)?;
        }
        wr.flush().map_err(|e| Error::Io { path: "<stream>".into(), message: e.to_string() })
    }

    pub fn save_csv(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)
            .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
        self.write_csv(std::io::BufWriter::new(file)).map_err(|e| match e {
            Error::Io { message, .. } => Error::Io { path: path.display().to_string(), message },
            other => other,
        })
    }
}
