use crate::error::{Error, Result};
use crate::harness::SerCurve;

/// Finite-SNR diversity order along an SNR grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DiversityProfile {
    pub snr_grid_db: Vec<f64>,
    pub d_of_snr: Vec<f64>,
}

impl DiversityProfile {
    /// Linear interpolation at `snr_db` inside the grid.
    pub fn at(&self, snr_db: f64) -> Option<f64> {
        let g = &self.snr_grid_db;
        let i = g.partition_point(|&x| x < snr_db);
        if i < g.len() && g[i] == snr_db {
            return Some(self.d_of_snr[i]);
        }
        if i == 0 || i == g.len() {
            return None;
        }
        let t = (snr_db - g[i - 1]) / (g[i] - g[i - 1]);
        Some(self.d_of_snr[i - 1] + t * (self.d_of_snr[i] - self.d_of_snr[i - 1]))
    }
}

/// `d = −Δlog₁₀(SER) / Δ(SNR_dB/10)` by central differences, one-sided at
/// the ends.
pub fn estimate_diversity_from(snr_db: &[f64], ser: &[f64]) -> Result<DiversityProfile> {
    let n = snr_db.len();
    if n != ser.len() {
        return Err(Error::invalid(
            "curve",
            "SNR grid and SER values differ in length",
        ));
    }
    if n < 3 {
        return Err(Error::invalid(
            "curve",
            format!("at least 3 points are needed, got {n}"),
        ));
    }
    if snr_db.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid("snr_db", "grid must be strictly ascending"));
    }
    if let Some(v) = ser.iter().find(|v| !(**v > 0.0)) {
        return Err(Error::invalid(
            "ser",
            format!("values must be positive, got {v}"),
        ));
    }
    let l: Vec<f64> = ser.iter().map(|v| v.log10()).collect();
    let x: Vec<f64> = snr_db.iter().map(|v| v / 10.0).collect();
    let d = (0..n)
        .map(|i| {
            let (a, b) = match i {
                0 => (0, 1),
                _ if i == n - 1 => (n - 2, n - 1),
                _ => (i - 1, i + 1),
            };
            -(l[b] - l[a]) / (x[b] - x[a])
        })
        .collect();
    Ok(DiversityProfile {
        snr_grid_db: snr_db.to_vec(),
        d_of_snr: d,
    })
}

/// Diversity profile of a curve over its `snr_db` axis.
pub fn estimate_diversity(curve: &SerCurve) -> Result<DiversityProfile> {
    let snr: Vec<f64> = curve.points.iter().map(|p| p.snr_db).collect();
    let ser: Vec<f64> = curve.points.iter().map(|p| p.ser).collect();
    estimate_diversity_from(&snr, &ser)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_laws() {
        let snr: Vec<f64> = (0..8).map(|i| 5.0 * i as f64).collect();
        for order in [1.0, 2.0] {
            let ser: Vec<f64> = snr
                .iter()
                .map(|db| 0.3 / 10f64.powf(db / 10.0).powf(order))
                .collect();
            let p = estimate_diversity_from(&snr, &ser).unwrap();
            assert!(p.d_of_snr.iter().all(|d| (d - order).abs() < 1e-12));
        }
    }

    #[test]
    fn rejects_bad_curves() {
        assert!(estimate_diversity_from(&[0.0, 1.0], &[0.1, 0.01]).is_err());
        assert!(estimate_diversity_from(&[0.0, 1.0, 1.0], &[0.1, 0.01, 0.001]).is_err());
        assert!(estimate_diversity_from(&[0.0, 1.0, 2.0], &[0.1, 0.0, 0.001]).is_err());
    }

    #[test]
    fn interpolation() {
        let p = DiversityProfile {
            snr_grid_db: vec![0.0, 10.0, 20.0],
            d_of_snr: vec![1.0, 2.0, 4.0],
        };
        assert_eq!(p.at(10.0), Some(2.0));
        assert_eq!(p.at(15.0), Some(3.0));
        assert_eq!(p.at(25.0), None);
    }
}
