//! Discrete chordal Loewner traces in the upper half-plane.
//!
//! The driving function is a Brownian motion of variance `kappa t`, sampled
//! at uniform capacity steps `dt` and held piecewise constant. Each step is
//! one exact vertical-slit map; the trace point at step k is the image of the
//! current driving value under the inverse maps composed in reverse order.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::error::{McError, Result};
use crate::fit::{fit_linear, fit_power_law, FitResult};
use crate::rng::trial_rng;

/// Square root with image in the closed upper half-plane.
fn sqrt_upper(z: Complex64) -> Complex64 {
    let s = z.sqrt();
    if s.im < 0.0 {
        -s
    } else {
        s
    }
}

/// One sampled trace.
#[derive(Debug, Clone, PartialEq)]
pub struct SleTrace {
    pub kappa: f64,
    pub dt: f64,
    /// Driving values at step ends, W_1..W_n (W_0 = 0).
    pub driving: Vec<f64>,
    /// Trace points, one per composed slit map.
    pub points: Vec<Complex64>,
    /// Singularity collisions resolved by a one-part-in-1e9 nudge.
    pub perturbations: u64,
}

impl SleTrace {
    pub fn tip(&self) -> Complex64 {
        *self.points.last().expect("non-empty trace")
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for p in &self.points {
            d = d.max(p.norm());
        }
        d
    }
}

/// Inverse elementary slit map centered at driving value `u`.
fn slit_inverse(zeta: Complex64, u: f64, dt: f64, perturbations: &mut u64) -> Complex64 {
    let mut shifted = zeta - u;
    // A point exactly on the singular segment of the map is nudged off it.
    if shifted.im < 0.0 || (shifted.im == 0.0 && shifted.re.abs() <= 2.0 * dt.sqrt()) {
        *perturbations += 1;
        shifted.im = shifted.im.abs() + 1e-9 * (1.0 + shifted.norm());
    }
    u + sqrt_upper(shifted * shifted - Complex64::new(4.0 * dt, 0.0))
}

/// Forward elementary slit map centered at driving value `u`.
fn slit_forward(z: Complex64, u: f64, dt: f64) -> Complex64 {
    let shifted = z - u;
    u + sqrt_upper(shifted * shifted + Complex64::new(4.0 * dt, 0.0))
}

/// Samples one trace of `steps` points at capacity step `dt`.
pub fn sle_trace(kappa: f64, steps: usize, dt: f64, seed: u64) -> Result<SleTrace> {
    sle_trace_from_rng(kappa, steps, dt, &mut trial_rng(seed, 0))
}

pub fn sle_trace_from_rng(
    kappa: f64,
    steps: usize,
    dt: f64,
    rng: &mut impl Rng,
) -> Result<SleTrace> {
    if kappa < 0.0 || !(dt > 0.0) || steps == 0 {
        return Err(McError::Domain(
            "sle_trace: kappa >= 0, dt > 0 and steps >= 1 required".into(),
        ));
    }
    let normal = Normal::new(0.0, (kappa * dt).sqrt())
        .map_err(|e| McError::Domain(format!("sle_trace: bad driving variance: {e}")))?;
    let mut driving = Vec::with_capacity(steps);
    let mut w = 0.0;
    for _ in 0..steps {
        w += normal.sample(rng);
        driving.push(w);
    }
    let mut perturbations = 0;
    let mut points = Vec::with_capacity(steps);
    for k in 0..steps {
        let mut z = Complex64::new(driving[k], 0.0);
        for j in (0..=k).rev() {
            z = slit_inverse(z, driving[j], dt, &mut perturbations);
        }
        points.push(z);
    }
    Ok(SleTrace { kappa, dt, driving, points, perturbations })
}

/// Pushes the k-th trace point through the forward flow; up to roundoff this
/// returns the driving value at the point's birth time, on the real axis.
pub fn forward_flow(trace: &SleTrace, k: usize) -> Complex64 {
    let mut z = trace.points[k];
    for j in 0..=k {
        z = slit_forward(z, trace.driving[j], trace.dt);
    }
    z
}

/// Samples an ensemble of independent traces; trace `i` uses stream `i` of
/// the master seed.
pub fn sle_ensemble(kappa: f64, traces: usize, steps: usize, dt: f64, seed: u64) -> Result<Vec<SleTrace>> {
    (0..traces as u64)
        .into_par_iter()
        .map(|t| sle_trace_from_rng(kappa, steps, dt, &mut trial_rng(seed, t)))
        .collect()
}

/// One sampled trace of the radial flow in the unit disk, aimed at 0.
///
/// This is the geometry in which the winding-angle law is clean: the trace
/// orbits its target across all scales, and the variance of its unrolled
/// argument grows like `kappa` per unit of log conformal radius.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialTrace {
    pub kappa: f64,
    pub dt: f64,
    /// Trace points in the unit disk, one per composed slit map.
    pub points: Vec<Complex64>,
    pub perturbations: u64,
}

/// `m(w) = w/(1+w)^2`, the conjugating function of the constant-driving
/// radial flow: one capacity step multiplies `m` by `e^t`.
fn radial_m(w: Complex64) -> Complex64 {
    let d = Complex64::new(1.0, 0.0) + w;
    w / (d * d)
}

/// The root of `m(g) = v` inside the closed unit disk (the two roots are
/// reciprocal).
fn radial_m_inv(v: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let s = (one - 4.0 * v).sqrt();
    let r1 = 2.0 * v / (one - 2.0 * v + s);
    if r1.norm() <= 1.0 {
        r1
    } else {
        r1.inv()
    }
}

/// Inverse elementary radial slit map of capacity `dt`, driving angle `u`.
fn radial_slit_inverse(zeta: Complex64, u: f64, dt: f64, perturbations: &mut u64) -> Complex64 {
    let rot = Complex64::from_polar(1.0, -u);
    let mut w = zeta * rot;
    // The map has a pole at -1 (the point diametrically opposite the slit).
    if (w + Complex64::new(1.0, 0.0)).norm() < 1e-9 {
        *perturbations += 1;
        w *= Complex64::from_polar(1.0, 1e-9);
    }
    radial_m_inv((-dt).exp() * radial_m(w)) * rot.conj()
}

/// Samples a radial trace growing from the unit circle toward the origin.
pub fn radial_trace_from_rng(
    kappa: f64,
    steps: usize,
    dt: f64,
    rng: &mut impl Rng,
) -> Result<RadialTrace> {
    if kappa < 0.0 || !(dt > 0.0) || steps == 0 {
        return Err(McError::Domain(
            "radial_trace: kappa >= 0, dt > 0 and steps >= 1 required".into(),
        ));
    }
    let normal = Normal::new(0.0, (kappa * dt).sqrt())
        .map_err(|e| McError::Domain(format!("radial_trace: bad driving variance: {e}")))?;
    let mut angles = Vec::with_capacity(steps);
    let mut theta = 0.0;
    for _ in 0..steps {
        theta += normal.sample(rng);
        angles.push(theta);
    }
    let mut perturbations = 0;
    let mut points = Vec::with_capacity(steps);
    for k in 0..steps {
        let mut z = Complex64::from_polar(1.0, angles[k]);
        for j in (0..=k).rev() {
            z = radial_slit_inverse(z, angles[j], dt, &mut perturbations);
        }
        points.push(z);
    }
    Ok(RadialTrace { kappa, dt, points, perturbations })
}

/// Radial ensemble; trace `i` uses stream `i` of the master seed.
pub fn radial_ensemble(
    kappa: f64,
    traces: usize,
    steps: usize,
    dt: f64,
    seed: u64,
) -> Result<Vec<RadialTrace>> {
    (0..traces as u64)
        .into_par_iter()
        .map(|t| radial_trace_from_rng(kappa, steps, dt, &mut trial_rng(seed, t)))
        .collect()
}

/// Winding-angle variance growth of radial traces: the argument of the trace
/// about its target, unrolled along the curve, is sampled on a grid of log
/// scales `ln(1/|z|)` and its ensemble variance is regressed against that
/// log scale. The slope estimates `kappa`.
pub fn sle_winding_variance(traces: &[RadialTrace], seed: u64) -> Result<FitResult> {
    if traces.len() < 16 {
        return Err(McError::InsufficientStatistics(format!(
            "sle_winding_variance: need at least 16 traces, got {}",
            traces.len()
        )));
    }
    // Deepest log-radius reached by essentially every trace.
    let mut depths: Vec<f64> = traces
        .iter()
        .map(|t| t.points.iter().map(|p| -p.norm().ln()).fold(0.0f64, f64::max))
        .collect();
    depths.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let depth = depths[traces.len() / 20];
    // Skip the first log-unit (launch transient near the circle).
    let lo = 1.0;
    if depth - lo < 2.0 {
        return Err(McError::InsufficientRange(format!(
            "sle_winding_variance: only {:.2} log-units of radial depth, need 3",
            depth
        )));
    }
    let bins: Vec<f64> = (0..=16)
        .map(|i| lo + (depth - lo) * i as f64 / 16.0)
        .collect();
    let mut samples: Vec<Vec<f64>> = vec![Vec::new(); bins.len()];
    for trace in traces {
        let mut phi = 0.0f64;
        let mut prev: Option<Complex64> = None;
        let mut bin = 0;
        for &p in &trace.points {
            if p.norm() == 0.0 {
                continue;
            }
            match prev {
                None => phi = p.arg(),
                Some(q) => phi += (p / q).arg(),
            }
            prev = Some(p);
            while bin < bins.len() && -p.norm().ln() >= bins[bin] {
                samples[bin].push(phi);
                bin += 1;
            }
        }
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (b, sample) in bins.iter().zip(&samples) {
        if sample.len() * 10 >= traces.len() * 9 {
            let n = sample.len() as f64;
            let mean = sample.iter().sum::<f64>() / n;
            let var = sample.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
            xs.push(*b);
            ys.push(var);
        }
    }
    fit_linear(&xs, &ys, Some((xs[0], xs[xs.len() - 1])), seed)
}

fn typical_spacing(trace: &SleTrace) -> f64 {
    let mut gaps: Vec<f64> = trace
        .points
        .windows(2)
        .map(|w| (w[1] - w[0]).norm())
        .collect();
    gaps.sort_by(|a, b| a.partial_cmp(b).unwrap());
    gaps[gaps.len() / 2]
}

/// Box-counting dimension of the trace ensemble: the trace polyline is
/// rasterized into boxes of side eps (segments included, so large tip jumps
/// do not hide coverage) and the ensemble-mean ln N(eps) is fitted against
/// ln(1/eps) over half-octave scales in [diam/32, diam/6].
///
/// At a few thousand points per trace the polyline resolves the curve only
/// down to its chord scale; the estimate carries the resolution bias of the
/// discretized curve itself.
pub fn sle_dimension(traces: &[SleTrace], seed: u64) -> Result<FitResult> {
    if traces.is_empty() {
        return Err(McError::InsufficientStatistics("sle_dimension: empty ensemble".into()));
    }
    let spacing = typical_spacing(&traces[0]);
    let mut diameters: Vec<f64> = traces.iter().map(|t| t.diameter()).collect();
    diameters.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let diam = diameters[traces.len() / 2];
    let eps_max = diam / 6.0;
    let eps_min = diam / 32.0;
    if eps_min < 2.0 * spacing {
        return Err(McError::InsufficientRange(format!(
            "sle_dimension: chord spacing {spacing:.2e} too coarse for the smallest \
             counting scale {eps_min:.2e}"
        )));
    }
    let octaves = (diam / 6.0 / (2.0 * spacing)).log2();
    if octaves < 3.0 {
        return Err(McError::InsufficientRange(format!(
            "sle_dimension: {octaves:.2} octaves of scale available, need 3"
        )));
    }
    let mut scales = Vec::new();
    let mut eps = eps_max;
    while eps >= eps_min {
        scales.push(eps);
        eps /= std::f64::consts::SQRT_2;
    }
    let counts: Vec<Vec<f64>> = traces
        .par_iter()
        .map(|trace| {
            scales
                .iter()
                .map(|&e| {
                    let mut boxes: std::collections::HashSet<(i64, i64)> =
                        std::collections::HashSet::new();
                    for w in trace.points.windows(2) {
                        let (a, b) = (w[0], w[1]);
                        let len = (b - a).norm();
                        let substeps = (len / (0.5 * e)).ceil() as usize;
                        for k in 0..=substeps {
                            let z = a + (b - a) * (k as f64 / substeps.max(1) as f64);
                            boxes.insert(((z.re / e).floor() as i64, (z.im / e).floor() as i64));
                        }
                    }
                    boxes.len() as f64
                })
                .collect()
        })
        .collect();
    let n_traces = traces.len() as f64;
    let mean_ln: Vec<f64> = (0..scales.len())
        .map(|i| counts.iter().map(|c| c[i].ln()).sum::<f64>() / n_traces)
        .collect();
    let xs: Vec<f64> = scales.iter().map(|e| e.recip()).collect();
    let ys: Vec<f64> = mean_ln.iter().map(|l| l.exp()).collect();
    fit_power_law(&xs, &ys, Some((xs[0], xs[xs.len() - 1])), seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_kappa_is_vertical_ray() {
        let t = sle_trace(0.0, 64, 1e-3, 1).unwrap();
        for (k, p) in t.points.iter().enumerate() {
            assert!(p.re.abs() < 1e-12);
            let expected = 2.0 * ((k as f64 + 1.0) * 1e-3).sqrt();
            assert!((p.im - expected).abs() < 1e-9, "step {k}: {} vs {expected}", p.im);
        }
    }

    #[test]
    fn trace_starts_at_origin_scale() {
        let t = sle_trace(6.0, 32, 1e-4, 2).unwrap();
        assert!(t.points[0].norm() < 0.1);
        assert!(t.points.iter().all(|p| p.im > 0.0));
        assert_eq!(t.points.len(), 32);
    }

    #[test]
    fn forward_flow_recovers_driving() {
        for kappa in [8.0 / 3.0, 6.0] {
            let t = sle_trace(kappa, 200, 1e-4, 3).unwrap();
            for k in [0, 50, 120, 199] {
                let z = forward_flow(&t, k);
                let rel = (z.re - t.driving[k]).abs() / t.driving[k].abs().max(1.0);
                assert!(rel < 1e-6, "k={k}: {} vs {}", z.re, t.driving[k]);
                assert!(z.im.abs() < 1e-6);
            }
        }
    }

    #[test]
    fn ensemble_deterministic_and_symmetric() {
        let a = sle_ensemble(8.0 / 3.0, 64, 128, 1e-4, 5).unwrap();
        let b = sle_ensemble(8.0 / 3.0, 64, 128, 1e-4, 5).unwrap();
        assert_eq!(a, b);
        // Endpoint real parts are symmetric under the driving law.
        let mean: f64 = a.iter().map(|t| t.tip().re).sum::<f64>() / a.len() as f64;
        let sd: f64 = (a.iter().map(|t| t.tip().re * t.tip().re).sum::<f64>() / a.len() as f64)
            .sqrt();
        assert!(mean.abs() < 4.0 * sd / (a.len() as f64).sqrt() + 1e-3);
    }

    #[test]
    fn simple_phase_traces_avoid_near_collisions() {
        // kappa = 8/3 paths are simple; kappa = 6 paths self-touch. Count
        // close approaches between well-separated trace segments.
        let near_fraction = |kappa: f64| {
            let traces = sle_ensemble(kappa, 8, 400, 2e-4, 11).unwrap();
            let mut near = 0usize;
            let mut total = 0usize;
            for t in &traces {
                let diam = t.diameter();
                for i in 0..t.points.len() {
                    for j in (i + 40)..t.points.len() {
                        total += 1;
                        if (t.points[i] - t.points[j]).norm() < 0.01 * diam {
                            near += 1;
                        }
                    }
                }
            }
            near as f64 / total as f64
        };
        let simple = near_fraction(8.0 / 3.0);
        let coiling = near_fraction(6.0);
        assert!(
            simple < 0.2 * coiling + 1e-9,
            "simple {simple} vs self-coiling {coiling}"
        );
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(sle_trace(-1.0, 10, 1e-3, 0).is_err());
        assert!(sle_trace(2.0, 0, 1e-3, 0).is_err());
        assert!(sle_trace(2.0, 10, 0.0, 0).is_err());
        assert!(radial_trace_from_rng(-1.0, 10, 1e-3, &mut trial_rng(0, 0)).is_err());
    }

    #[test]
    fn radial_zero_kappa_is_radial_segment() {
        let t = radial_trace_from_rng(0.0, 200, 0.01, &mut trial_rng(0, 0)).unwrap();
        let mut prev = 1.0;
        for p in &t.points {
            assert!(p.im.abs() < 1e-12, "stays on the ray: {p}");
            assert!(p.re > 0.0 && p.re < prev, "monotone approach to 0: {p}");
            prev = p.re;
        }
        // Koebe: |tip| ~ 4 e^{-t} once deep inside the disk.
        let depth = 200.0 * 0.01;
        let expected = 4.0 * (-depth).exp();
        assert!((t.points.last().unwrap().re / expected - 1.0).abs() < 0.3);
    }

    #[test]
    fn radial_ensemble_deterministic() {
        let a = radial_ensemble(3.0, 16, 64, 0.02, 4).unwrap();
        let b = radial_ensemble(3.0, 16, 64, 0.02, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn radial_winding_slope_tracks_kappa() {
        let traces = radial_ensemble(2.0, 150, 800, 8e-3, 12).unwrap();
        let fit = sle_winding_variance(&traces, 12).unwrap();
        assert!(
            (fit.exponent - 2.0).abs() < 0.5,
            "winding slope {} +- {}",
            fit.exponent,
            fit.stderr
        );
    }

    #[test]
    fn insufficient_range_detected() {
        let traces = sle_ensemble(6.0, 20, 16, 1e-3, 7).unwrap();
        assert!(matches!(
            sle_dimension(&traces, 7),
            Err(McError::InsufficientRange(_))
        ));
    }
}
