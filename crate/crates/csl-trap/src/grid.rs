//! Logarithmically spaced sample grids for sweeps and maps.

use crate::error::{Error, Result};

/// `n` log-spaced points from `lo` to `hi` inclusive, strictly increasing.
///
/// Endpoints are exact (no round-trip through exp/ln); interior points are
/// `exp(ln lo + t·(ln hi − ln lo))`.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::domain(format!(
            "log grid needs 0 < lo < hi, got lo = {lo}, hi = {hi}"
        )));
    }
    if n < 2 {
        return Err(Error::domain(format!("log grid needs at least 2 points, got {n}")));
    }
    let (ln_lo, ln_hi) = (lo.ln(), hi.ln());
    let mut points = Vec::with_capacity(n);
    points.push(lo);
    for i in 1..n - 1 {
        let t = i as f64 / (n - 1) as f64;
        points.push((ln_lo + t * (ln_hi - ln_lo)).exp());
    }
    points.push(hi);
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_exact_and_increasing() {
        let g = log_spaced(1e-9, 1e-4, 121).unwrap();
        assert_eq!(g.len(), 121);
        assert_eq!(g[0], 1e-9);
        assert_eq!(g[120], 1e-4);
        for w in g.windows(2) {
            assert!(w[1] > w[0]);
        }
        // 121 points over 5 decades: 24 points per decade, so g[24] ≈ 1e-8.
        assert!((g[24] / 1e-8 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_points_are_the_endpoints() {
        assert_eq!(log_spaced(2.0, 8.0, 2).unwrap(), vec![2.0, 8.0]);
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(log_spaced(0.0, 1.0, 5).is_err());
        assert!(log_spaced(-1.0, 1.0, 5).is_err());
        assert!(log_spaced(1.0, 1.0, 5).is_err());
        assert!(log_spaced(2.0, 1.0, 5).is_err());
        assert!(log_spaced(1.0, 2.0, 1).is_err());
    }
}
