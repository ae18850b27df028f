//! Least-squares exponent extraction from scaling data.

use crate::error::{McError, Result};

/// A fitted exponent with its context.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub exponent: f64,
    pub stderr: f64,
    /// Abscissa window (before the log) actually used by the fit.
    pub window: (f64, f64),
    /// Number of points inside the window.
    pub samples: usize,
    /// Master seed of the campaign the data came from (0 for synthetic fits).
    pub seed: u64,
}

fn ols(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ss_res = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        let r = yi - (intercept + slope * xi);
        ss_res += r * r;
    }
    let dof = (x.len().max(3) - 2) as f64;
    let stderr = (ss_res / dof / sxx).sqrt();
    (slope, intercept, stderr)
}

/// Default window: drop the smallest and largest 20% of scales.
fn auto_window(xs: &[f64]) -> (f64, f64) {
    let mut sorted = xs.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len();
    let drop = n / 5;
    let lo = sorted[drop.min(n - 1)];
    let hi = sorted[n - 1 - drop.min(n - 1)];
    (lo, hi)
}

fn windowed(
    xs: &[f64],
    ys: &[f64],
    window: Option<(f64, f64)>,
) -> Result<(Vec<f64>, Vec<f64>, (f64, f64))> {
    if xs.len() != ys.len() {
        return Err(McError::Domain("fit: mismatched series lengths".into()));
    }
    if xs.len() < 5 {
        return Err(McError::Domain(format!(
            "fit: at least 5 points required, got {}",
            xs.len()
        )));
    }
    let (lo, hi) = window.unwrap_or_else(|| auto_window(xs));
    let mut wx = Vec::new();
    let mut wy = Vec::new();
    for (&x, &y) in xs.iter().zip(ys) {
        if x >= lo && x <= hi {
            wx.push(x);
            wy.push(y);
        }
    }
    if wx.len() < 5 {
        return Err(McError::Domain(format!(
            "fit: at least 5 points required in window [{lo}, {hi}], got {}",
            wx.len()
        )));
    }
    Ok((wx, wy, (lo, hi)))
}

/// Fits `y ~ C x^a` by ordinary least squares on (ln x, ln y); the error bar
/// is the plain residual standard error of the slope, with no autocorrelation
/// correction.
pub fn fit_power_law(
    xs: &[f64],
    ys: &[f64],
    window: Option<(f64, f64)>,
    seed: u64,
) -> Result<FitResult> {
    let (wx, wy, win) = windowed(xs, ys, window)?;
    if wx.iter().chain(wy.iter()).any(|&v| !(v > 0.0)) {
        return Err(McError::Domain(
            "fit_power_law: all data in window must be positive".into(),
        ));
    }
    let lx: Vec<f64> = wx.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = wy.iter().map(|v| v.ln()).collect();
    let (slope, _, stderr) = ols(&lx, &ly);
    Ok(FitResult {
        exponent: slope,
        stderr: stderr.max(1e-15),
        window: win,
        samples: wx.len(),
        seed,
    })
}

/// Fits `y ~ a x + b`; used where the abscissa is already logarithmic
/// (winding variance against ln distance).
pub fn fit_linear(
    xs: &[f64],
    ys: &[f64],
    window: Option<(f64, f64)>,
    seed: u64,
) -> Result<FitResult> {
    let (wx, wy, win) = windowed(xs, ys, window)?;
    let (slope, _, stderr) = ols(&wx, &wy);
    Ok(FitResult {
        exponent: slope,
        stderr: stderr.max(1e-15),
        window: win,
        samples: wx.len(),
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let xs: Vec<f64> = (1..=20).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x * x).collect();
        let fit = fit_power_law(&xs, &ys, Some((1.0, 20.0)), 0).unwrap();
        assert!((fit.exponent - 2.0).abs() < 1e-12);
        assert!(fit.stderr > 0.0 && fit.stderr < 1e-10);
        assert_eq!(fit.samples, 20);
    }

    #[test]
    fn noisy_power_law() {
        // Deterministic multiplicative wiggle around exponent 1.75.
        let xs: Vec<f64> = (1..=40).map(|i| 1.3f64.powi(i)).collect();
        let ys: Vec<f64> = xs
            .iter()
            .enumerate()
            .map(|(i, x)| x.powf(1.75) * (1.0 + 0.01 * ((i * 37 % 11) as f64 - 5.0) / 5.0))
            .collect();
        let fit = fit_power_law(&xs, &ys, None, 0).unwrap();
        assert!((fit.exponent - 1.75).abs() < 0.01, "{}", fit.exponent);
        assert!(fit.stderr < 0.01);
    }

    #[test]
    fn constant_series() {
        let xs: Vec<f64> = (1..=10).map(|i| i as f64).collect();
        let ys = vec![4.0; 10];
        let fit = fit_power_law(&xs, &ys, Some((1.0, 10.0)), 0).unwrap();
        assert!(fit.exponent.abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert!(matches!(
            fit_power_law(&xs, &xs, None, 0),
            Err(McError::Domain(_))
        ));
        let xs = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let ys = [1.0, 2.0, -3.0, 4.0, 5.0, 6.0];
        assert!(fit_power_law(&xs, &ys, Some((1.0, 6.0)), 0).is_err());
    }

    #[test]
    fn auto_window_drops_extremes() {
        let xs: Vec<f64> = (1..=10).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x.powf(1.5)).collect();
        let fit = fit_power_law(&xs, &ys, None, 0).unwrap();
        assert_eq!(fit.window, (3.0, 8.0));
        assert_eq!(fit.samples, 6);
    }

    #[test]
    fn linear_fit() {
        let xs: Vec<f64> = (0..12).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 6.0 * x + 1.0).collect();
        let fit = fit_linear(&xs, &ys, Some((0.0, 11.0)), 0).unwrap();
        assert!((fit.exponent - 6.0).abs() < 1e-12);
    }
}
