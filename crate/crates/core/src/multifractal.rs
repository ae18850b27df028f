//! Multifractal spectra of the harmonic measure near conformally invariant
//! boundaries: one-sided moments, the wedge form, mixed scaling/winding,
//! double-sided moments, and the tip distribution, in closed form, together
//! with a numeric Legendre-transform oracle used to cross-check them.
//!
//! All spectra depend on the system only through its central charge, so they
//! are invariant under the `kappa -> 16/kappa` duality by construction.

use crate::error::{domain, Result};
use crate::params::{kpz_u_inv, kpz_v, SystemParams};
use crate::real::{lit, Real};

/// Lowest admissible moment order, `n* = -(1-c)/24`.
pub fn n_star<F: Real>(params: &SystemParams<F>) -> F {
    -(F::one() - params.c) / lit(24.0)
}

/// Moment exponent `tau(n)` of the harmonic measure, `n >= n*`.
pub fn tau<F: Real>(n: F, params: &SystemParams<F>) -> Result<F> {
    let c = params.c;
    let s25 = lit::<F>(25.0) - c;
    let arg = (lit::<F>(24.0) * n + F::one() - c) / s25;
    if arg < F::zero() {
        return domain(format!("tau: n >= n* = {} required, got {n}", n_star(params)));
    }
    Ok((n - F::one()) / lit(2.0) + s25 / lit::<F>(24.0) * (arg.sqrt() - F::one()))
}

/// Generalized dimension `D(n) = tau(n)/(n-1)`, with the removable point
/// `D(1) = 1` filled by the regular closed form.
pub fn generalized_dimension<F: Real>(n: F, params: &SystemParams<F>) -> Result<F> {
    let c = params.c;
    let arg = (lit::<F>(24.0) * n + F::one() - c) / (lit::<F>(25.0) - c);
    if arg < F::zero() {
        return domain(format!("generalized_dimension: n >= n* required, got {n}"));
    }
    Ok(lit::<F>(0.5) + (arg.sqrt() + F::one()).recip())
}

/// Singularity strength `alpha(n) = dtau/dn`, finite for `n > n*`.
pub fn alpha_of_n<F: Real>(n: F, params: &SystemParams<F>) -> Result<F> {
    let c = params.c;
    let denom = lit::<F>(24.0) * n + F::one() - c;
    if denom <= F::zero() {
        return domain(format!("alpha_of_n: n > n* required, got {n}"));
    }
    let half = lit::<F>(0.5);
    Ok(half + half * ((lit::<F>(25.0) - c) / denom).sqrt())
}

/// Inverse of `alpha_of_n`.
pub fn n_of_alpha<F: Real>(alpha: F, params: &SystemParams<F>) -> Result<F> {
    if alpha <= lit(0.5) {
        return domain(format!("n_of_alpha: alpha > 1/2 required, got {alpha}"));
    }
    let c = params.c;
    let w = lit::<F>(2.0) * alpha - F::one();
    Ok(((lit::<F>(25.0) - c) / (w * w) - F::one() + c) / lit(24.0))
}

/// Harmonic multifractal spectrum `f(alpha)`, `alpha > 1/2`.
pub fn f_of_alpha<F: Real>(alpha: F, params: &SystemParams<F>) -> Result<F> {
    if alpha <= lit(0.5) {
        return domain(format!("f_of_alpha: alpha > 1/2 required, got {alpha}"));
    }
    let c = params.c;
    let w = lit::<F>(2.0) * alpha - F::one();
    Ok((lit::<F>(25.0) - c) / lit::<F>(48.0) * (lit::<F>(3.0) - w.recip())
        - (F::one() - c) / lit::<F>(24.0) * alpha)
}

/// Dimension of the accessible external perimeter, `sup_alpha f(alpha)`.
pub fn d_ep<F: Real>(params: &SystemParams<F>) -> F {
    let c = params.c;
    let s1 = (F::one() - c).sqrt();
    lit::<F>(1.5) - s1 * ((lit::<F>(25.0) - c).sqrt() - s1) / lit(24.0)
}

/// Typical singularity exponent at the spectrum's maximum; infinite at c = 1.
pub fn alpha_hat<F: Real>(params: &SystemParams<F>) -> F {
    (lit::<F>(3.0) - lit::<F>(2.0) * d_ep(params)).recip()
}

/// Typical wedge angle at the spectrum's maximum.
pub fn theta_hat<F: Real>(params: &SystemParams<F>) -> F {
    F::PI() * (lit::<F>(3.0) - lit::<F>(2.0) * d_ep(params))
}

/// Wedge form of the spectrum, `f^(theta) = f(pi/theta)` for `theta` in (0, 2*pi].
pub fn wedge_spectrum<F: Real>(theta: F, params: &SystemParams<F>) -> Result<F> {
    let two_pi = F::PI() * lit(2.0);
    if !(theta > F::zero() && theta <= two_pi) {
        return domain(format!("wedge_spectrum: theta in (0, 2*pi] required, got {theta}"));
    }
    let pi = F::PI();
    let d = pi - theta;
    Ok(pi / theta
        - (lit::<F>(25.0) - params.c) / lit(12.0) * d * d / (theta * (two_pi - theta)))
}

/// Log of the unnormalized probability of finding singularity `alpha` along a
/// frontier of scale `ln R`; only the exponent is meaningful, the
/// normalization constant is not fixed.
pub fn p_alpha_log<F: Real>(alpha: F, ln_r: F, params: &SystemParams<F>) -> Result<F> {
    if alpha <= lit(0.5) {
        return domain(format!("p_alpha_log: alpha > 1/2 required, got {alpha}"));
    }
    if !(ln_r > F::zero()) {
        return domain(format!("p_alpha_log: ln R > 0 required, got {ln_r}"));
    }
    let c = params.c;
    let omega = alpha - lit(0.5);
    let root = omega.sqrt();
    let term = (F::one() - c).sqrt() * root - (lit::<F>(25.0) - c).sqrt() / (lit::<F>(2.0) * root);
    Ok(-ln_r / lit::<F>(24.0) * term * term)
}

/// Unnormalized probability density `P(alpha)`; see `p_alpha_log`.
pub fn p_alpha_density<F: Real>(alpha: F, ln_r: F, params: &SystemParams<F>) -> Result<F> {
    Ok(p_alpha_log(alpha, ln_r, params)?.exp())
}

/// Mixed scaling/rotation spectrum `f(alpha, lambda)` for boundary points
/// whose potential scales with exponent `alpha` while spiralling at rate
/// `lambda`; `alpha >= (1 + lambda^2)/2` (the spiral generalization of the
/// needle bound), with the equality edge mapping to minus infinity.
pub fn mixed_spectrum<F: Real>(alpha: F, lambda: F, params: &SystemParams<F>) -> Result<F> {
    let bound = (F::one() + lambda * lambda) / lit(2.0);
    if alpha < bound {
        return domain(format!(
            "mixed_spectrum: alpha >= (1+lambda^2)/2 = {bound} required, got {alpha}"
        ));
    }
    let b = params.b;
    Ok(alpha + b - b * alpha * alpha / (lit::<F>(2.0) * alpha - F::one() - lambda * lambda))
}

/// Mixed moment exponent `tau(n, p) = tau(n) - (p^2/4)/(tau(n) + b)`.
pub fn tau_np<F: Real>(n: F, p: F, params: &SystemParams<F>) -> Result<F> {
    let t = tau(n, params)?;
    Ok(t - p * p / lit::<F>(4.0) / (t + params.b))
}

/// Dimension of the external-perimeter subset spiralling at rate `lambda`.
pub fn d_ep_lambda<F: Real>(lambda: F, params: &SystemParams<F>) -> F {
    let l2 = lambda * lambda;
    (F::one() + l2) * d_ep(params) - params.b * l2
}

/// Double-sided spectrum `f2(alpha, alpha')` for points carrying singularity
/// `alpha` on one side of a simple curve and `alpha'` on the other.
/// Domain: `1 - (1/alpha + 1/alpha')/2 >= 0`, the zero edge giving -inf.
pub fn double_sided<F: Real>(alpha: F, alpha_prime: F, params: &SystemParams<F>) -> Result<F> {
    if alpha <= F::zero() || alpha_prime <= F::zero() {
        return domain("double_sided: alpha, alpha' > 0 required");
    }
    let half = lit::<F>(0.5);
    let bracket = F::one() - half * (alpha.recip() + alpha_prime.recip());
    if bracket < F::zero() {
        return domain(format!(
            "double_sided: 1 - (1/alpha + 1/alpha')/2 >= 0 required, got {bracket}"
        ));
    }
    let c = params.c;
    Ok(params.b - (lit::<F>(2.0) * (F::one() - params.gamma) * bracket).recip()
        - (F::one() - c) / lit::<F>(24.0) * (alpha + alpha_prime))
}

/// Scaling dimension whose moment exponent generates `double_sided`;
/// `x2(n, 0)` reduces to the one-sided harmonic dimension `tau(n) + 2`.
pub fn x2<F: Real>(n: F, n_prime: F, params: &SystemParams<F>) -> Result<F> {
    let gamma = params.gamma;
    let channel = F::one() - gamma + kpz_u_inv(gamma, n)? + kpz_u_inv(gamma, n_prime)?;
    Ok(lit::<F>(2.0) * kpz_v(gamma, channel))
}

/// Diagonal moment exponent of the double-sided family, `x2(n, n) - 2`.
pub fn tau_double_diag<F: Real>(n: F, params: &SystemParams<F>) -> Result<F> {
    Ok(x2(n, n, params)? - lit(2.0))
}

/// Potential distribution in the vicinity of the tip of a scaling path.
pub fn tip_spectrum<F: Real>(alpha: F, params: &SystemParams<F>) -> Result<F> {
    if alpha <= lit(0.5) {
        return domain(format!("tip_spectrum: alpha > 1/2 required, got {alpha}"));
    }
    let c = params.c;
    let bracket = F::one() - (lit::<F>(2.0) * alpha).recip();
    Ok((lit::<F>(25.0) - c) / lit(12.0)
        - (lit::<F>(8.0) * (F::one() - params.gamma) * bracket).recip()
        - (F::one() - c) / lit::<F>(24.0) * alpha)
}

/// Moment exponent of the tip family: one strand dressed by an n-packet.
pub fn tau_tip<F: Real>(n: F, params: &SystemParams<F>) -> Result<F> {
    let gamma = params.gamma;
    let channel = (F::one() - gamma) / lit(2.0) + kpz_u_inv(gamma, n)?;
    Ok(lit::<F>(2.0) * kpz_v(gamma, channel) - lit(2.0))
}

/// Double-sided spectrum with prescribed winding rate `lambda`.
pub fn double_sided_mixed<F: Real>(
    alpha: F,
    alpha_prime: F,
    lambda: F,
    params: &SystemParams<F>,
) -> Result<F> {
    if alpha <= F::zero() || alpha_prime <= F::zero() {
        return domain("double_sided_mixed: alpha, alpha' > 0 required");
    }
    let half = lit::<F>(0.5);
    let bracket = (F::one() + lambda * lambda).recip()
        - half * alpha.recip()
        - half * alpha_prime.recip();
    if bracket <= F::zero() {
        return domain(format!(
            "double_sided_mixed: 1/(1+lambda^2) - 1/(2 alpha) - 1/(2 alpha') > 0 required, \
             got {bracket}"
        ));
    }
    let b = params.b;
    Ok(b - (lit::<F>(2.0) * (F::one() - params.gamma) * bracket).recip()
        - (b - lit(2.0)) / lit::<F>(2.0) * (alpha + alpha_prime))
}

/// Double-sided spectrum of the c = 0 family with strand weight `a`
/// (`a = 1` for the polymer curve itself, `a = 3/2` for the cut points of a
/// transparent walk, where the two frontier strands carry a two-walk packet).
pub fn double_sided_c0<F: Real>(alpha: F, alpha_prime: F, strand_weight: F) -> Result<F> {
    if alpha <= F::zero() || alpha_prime <= F::zero() {
        return domain("double_sided_c0: alpha, alpha' > 0 required");
    }
    let half = lit::<F>(0.5);
    let bracket = F::one() - half * (alpha.recip() + alpha_prime.recip());
    if bracket < F::zero() {
        return domain("double_sided_c0: 1 - (1/alpha + 1/alpha')/2 >= 0 required");
    }
    Ok(lit::<F>(25.0) / lit(12.0)
        - strand_weight * strand_weight / (lit::<F>(3.0) * bracket)
        - (alpha + alpha_prime) / lit(24.0))
}

/// One-sided spectrum of walk cut points, `sup` over the far side of
/// `double_sided_c0` at strand weight 3/2; vanishes at alpha = 1 because the
/// cut-point set is disconnected.
pub fn brownian_cut_spectrum<F: Real>(alpha: F) -> Result<F> {
    if alpha <= lit(0.5) {
        return domain(format!("brownian_cut_spectrum: alpha > 1/2 required, got {alpha}"));
    }
    let w = lit::<F>(2.0) * alpha - F::one();
    Ok(lit::<F>(51.0) / lit(48.0) - lit::<F>(49.0) / lit(48.0) / w - alpha / lit(24.0))
}

/// Which spectrum family a table samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectrumKind<F> {
    Harmonic,
    Mixed(F),
    DoubleSided,
    Tip,
}

impl<F: std::fmt::Display> std::fmt::Display for SpectrumKind<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpectrumKind::Harmonic => write!(f, "harmonic"),
            SpectrumKind::Mixed(l) => write!(f, "mixed(lambda={l})"),
            SpectrumKind::DoubleSided => write!(f, "double"),
            SpectrumKind::Tip => write!(f, "tip"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRow<F> {
    pub n: F,
    pub tau: F,
    /// `tau/(n-1)`; the harmonic kind fills the removable point at n = 1,
    /// the other kinds carry a genuine pole there and report NaN.
    pub d: F,
    pub alpha: F,
    pub f: F,
}

/// Sampled spectrum with its Legendre data; rows sorted by `n`, `alpha`
/// strictly decreasing, and `tau + f = alpha * n` on every row.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable<F> {
    pub params: SystemParams<F>,
    pub kind: SpectrumKind<F>,
    pub rows: Vec<SpectrumRow<F>>,
}

/// The 1-D moment exponent a table of the given kind samples.
///
/// For the mixed kind this is the fixed-rotation section
/// `(1+lambda^2) tau(n) + b lambda^2`, whose Legendre transform in `n` lands
/// on `f(alpha, lambda)`; for the double-sided kind it is the diagonal
/// `x2(n, n) - 2`.
pub fn tau_of_kind<F: Real>(kind: SpectrumKind<F>, n: F, params: &SystemParams<F>) -> Result<F> {
    match kind {
        SpectrumKind::Harmonic => tau(n, params),
        SpectrumKind::Mixed(lambda) => {
            let l2 = lambda * lambda;
            Ok((F::one() + l2) * tau(n, params)? + params.b * l2)
        }
        SpectrumKind::DoubleSided => tau_double_diag(n, params),
        SpectrumKind::Tip => tau_tip(n, params),
    }
}

fn row_of_kind<F: Real>(
    kind: SpectrumKind<F>,
    n: F,
    params: &SystemParams<F>,
) -> Result<SpectrumRow<F>> {
    let one = F::one();
    let gamma = params.gamma;
    let tau_row = tau_of_kind(kind, n, params)?;
    let (alpha_row, f_row) = match kind {
        SpectrumKind::Harmonic => {
            let a = alpha_of_n(n, params)?;
            (a, f_of_alpha(a, params)?)
        }
        SpectrumKind::Mixed(lambda) => {
            let a = (one + lambda * lambda) * alpha_of_n(n, params)?;
            (a, mixed_spectrum(a, lambda, params)?)
        }
        SpectrumKind::DoubleSided => {
            let s = (lit::<F>(4.0) * (one - gamma) * n + gamma * gamma).sqrt();
            if !(s > F::zero()) {
                return domain(format!("double-sided row: n > n* required, got {n}"));
            }
            let side = (one + s) / s;
            (lit::<F>(2.0) * side, double_sided(side, side, params)?)
        }
        SpectrumKind::Tip => {
            let s = (lit::<F>(4.0) * (one - gamma) * n + gamma * gamma).sqrt();
            if !(s > F::zero()) {
                return domain(format!("tip row: n > n* required, got {n}"));
            }
            let a = (one + s) / (lit::<F>(2.0) * s);
            (a, tip_spectrum(a, params)?)
        }
    };
    let d = if matches!(kind, SpectrumKind::Harmonic) {
        generalized_dimension(n, params)?
    } else if (n - one).abs() > lit(1e-9) {
        tau_row / (n - one)
    } else {
        F::nan()
    };
    Ok(SpectrumRow { n, tau: tau_row, d, alpha: alpha_row, f: f_row })
}

impl<F: Real> SpectrumTable<F> {
    pub fn build(kind: SpectrumKind<F>, params: &SystemParams<F>, grid: &[F]) -> Result<Self> {
        let mut ns: Vec<F> = grid.to_vec();
        ns.sort_by(|a, b| a.partial_cmp(b).expect("finite grid"));
        ns.dedup();
        if ns.is_empty() {
            return domain("spectrum table: empty grid");
        }
        let mut rows = Vec::with_capacity(ns.len());
        for &n in &ns {
            rows.push(row_of_kind(kind, n, params)?);
        }
        for pair in rows.windows(2) {
            if !(pair[1].alpha < pair[0].alpha) {
                return domain("spectrum table: alpha must be strictly decreasing in n");
            }
        }
        Ok(SpectrumTable { params: *params, kind, rows })
    }

    /// Default sampling grid: offsets from `n*` spaced uniformly in log scale,
    /// from `n* + 1e-6` up to `n_max`, plus the landmark orders 0, 1, 2.
    pub fn default_grid(params: &SystemParams<F>, n_max: F, points: usize) -> Vec<F> {
        let ns = n_star(params);
        let lo = lit::<F>(1e-6);
        let hi = n_max - ns;
        let steps = points.max(2);
        let mut grid = Vec::with_capacity(steps + 3);
        let log_lo = lo.log10();
        let ratio = (hi / lo).log10();
        for i in 0..steps {
            let t = lit::<F>(i as f64) / lit((steps - 1) as f64);
            grid.push(ns + F::powf(lit(10.0), log_lo + t * ratio));
        }
        for landmark in [F::zero(), F::one(), lit(2.0)] {
            if landmark > ns && landmark <= n_max {
                grid.push(landmark);
            }
        }
        grid.sort_by(|a, b| a.partial_cmp(b).expect("finite grid"));
        grid.dedup();
        grid
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,tau,D,alpha,f\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{},{}\n", r.n, r.tau, r.d, r.alpha, r.f));
        }
        out
    }
}

/// One numerically Legendre-transformed sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleRow<F> {
    pub n: F,
    pub alpha: F,
    pub f: F,
}

/// Numeric Legendre transform of an arbitrary moment exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendreOracle<F> {
    pub rows: Vec<OracleRow<F>>,
    /// Indices of grid points where the sampled function failed concavity.
    pub non_concave: Vec<usize>,
}

/// Differentiates `tau_fn` by central differences (step `h`) and forms
/// `f = alpha n - tau`; independent of every closed-form spectrum above.
pub fn legendre_oracle<F: Real>(
    tau_fn: impl Fn(F) -> F,
    n_grid: &[F],
    h: F,
) -> LegendreOracle<F> {
    let mut rows = Vec::with_capacity(n_grid.len());
    let mut non_concave = Vec::new();
    for (i, &n) in n_grid.iter().enumerate() {
        let up = tau_fn(n + h);
        let down = tau_fn(n - h);
        let mid = tau_fn(n);
        let alpha = (up - down) / (lit::<F>(2.0) * h);
        // Noise floor: float cancellation in the second difference sits near
        // eps*|tau|, far below any genuine convex curvature tau'' h^2.
        let second = up - lit::<F>(2.0) * mid + down;
        if !(second <= lit::<F>(1e-13) * (F::one() + mid.abs())) {
            non_concave.push(i);
        }
        rows.push(OracleRow { n, alpha, f: alpha * n - mid });
    }
    LegendreOracle { rows, non_concave }
}
