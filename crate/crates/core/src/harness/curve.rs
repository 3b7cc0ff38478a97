//! SER curves and their CSV form.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::Source;

use super::config::Method;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SerPoint {
    pub snr_db: f64,
    /// `None` when the network's correlations were given directly.
    pub fd_td: Option<f64>,
    pub ser: f64,
    /// 95% half-width, Monte-Carlo points only.
    pub half_width: Option<f64>,
}

/// One `(method, N, fd_td, K, source)` family of points.
#[derive(Debug, Clone, PartialEq)]
pub struct SerCurve {
    pub method: Method,
    pub source: Source,
    pub n_relays: usize,
    pub k: usize,
    /// Correlation setting shared by the points, `None` when the points
    /// sweep `fd_td` or it is not known.
    pub fd_td: Option<f64>,
    /// Seed of the simulation, `None` for closed-form curves.
    pub seed: Option<u64>,
    pub points: Vec<SerPoint>,
}

pub const CSV_HEADER: &str = "snr_db,ser,half_width,method,source,n,fd_td,k,seed";

fn num(x: f64) -> String {
    format!("{x:.11e}")
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// CSV text of `curves`, one row per point in the given order.
pub fn to_csv(curves: &[SerCurve]) -> String {
    let mut out =
        String::with_capacity(64 * (1 + curves.iter().map(|c| c.points.len()).sum::<usize>()));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for c in curves {
        for p in &c.points {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                num(p.snr_db),
                num(p.ser),
                opt_num(p.half_width),
                c.method.name(),
                c.source.number(),
                c.n_relays,
                opt_num(p.fd_td),
                c.k,
                c.seed.map(|s| s.to_string()).unwrap_or_default()
            );
        }
    }
    out
}

/// Writes `curves` to `path` as CSV.
pub fn emit_csv(curves: &[SerCurve], path: &Path) -> Result<()> {
    fs::write(path, to_csv(curves)).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}
