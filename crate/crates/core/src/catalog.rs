//! Closed-form exponent families: walk non-intersection packets, polymer
//! watermelons, percolation crossing and harmonic-measure exponents, hull
//! dimension triples, hiding exponents, multiple-strand stars with and
//! without a transparent dressing, contact exponents, drift processes, and
//! winding variances.

use crate::error::{domain, Result};
use crate::params::{
    heaviside_scaled, kpz_u, kpz_u_inv, kpz_v, u_kappa, u_kappa_inv, v_kappa, Phase, SystemParams,
};
use crate::real::{lit, Real};

/// Bulk and boundary non-intersection exponents of mutually avoiding packets
/// of transparent walks (the c = 0 cascade).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PacketExponents<F> {
    /// Plane exponent `zeta`: the packets' paths stay pairwise disjoint up to
    /// time t with probability ~ t^(-zeta).
    pub zeta: F,
    /// Half-plane dimension `2 zeta~` governing annulus crossings from a
    /// Dirichlet boundary.
    pub two_zeta_tilde: F,
}

/// Exponents for `L` mutually avoiding packets of `ns[l]` transparent walks.
pub fn zeta_packets<F: Real>(ns: &[F]) -> Result<PacketExponents<F>> {
    if ns.is_empty() {
        return domain("zeta_packets: at least one packet required");
    }
    let gamma = lit::<F>(-0.5);
    let mut x = F::zero();
    for &n in ns {
        if !(n > F::zero()) {
            return domain(format!("zeta_packets: packet sizes must be positive, got {n}"));
        }
        x = x + kpz_u_inv(gamma, n)?;
    }
    Ok(PacketExponents {
        zeta: kpz_v(gamma, x),
        two_zeta_tilde: kpz_u(gamma, x),
    })
}

/// Disconnection exponent of a single walk: the probability that a point next
/// to the origin of one path stays connected to infinity decays with exponent
/// 1/8.
pub fn disconnection_brownian<F: Real>() -> F {
    lit(0.125)
}

/// Watermelon exponents of `L` mutually avoiding polymers at c = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WatermelonExponents<F> {
    pub x_l: F,
    pub x_tilde_l: F,
}

pub fn saw_watermelon<F: Real>(l: u32) -> Result<WatermelonExponents<F>> {
    if l == 0 {
        return domain("saw_watermelon: L >= 1 required");
    }
    let lf = lit::<F>(f64::from(l));
    Ok(WatermelonExponents {
        x_l: (lit::<F>(2.25) * lf * lf - F::one()) / lit(12.0),
        x_tilde_l: lf / lit::<F>(4.0) * (F::one() + lit::<F>(1.5) * lf),
    })
}

/// Bichromatic path-crossing exponents of `l` non-intersecting percolation
/// paths crossing an annulus (plane) or half-annulus (half-plane).
pub fn perc_crossing<F: Real>(l: u32) -> Result<WatermelonExponents<F>> {
    if l == 0 {
        return domain("perc_crossing: l >= 1 required");
    }
    let lf = lit::<F>(f64::from(l));
    Ok(WatermelonExponents {
        x_l: (lf * lf - F::one()) / lit(12.0),
        x_tilde_l: lf * (lf + F::one()) / lit(6.0),
    })
}

/// Harmonic-measure moment exponents on the percolation frontier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PercHarmonic<F> {
    /// Crossing exponent of the frontier dressed by an n-packet of walks.
    pub x: F,
    /// Moment exponent `tau(n) = x(n) - 2`.
    pub tau: F,
    /// Generalized dimension `D(n)`, with the removable point `D(1) = 1`.
    pub d: F,
}

pub fn perc_harmonic<F: Real>(n: F) -> Result<PercHarmonic<F>> {
    let n_min = lit::<F>(-1.0) / lit(24.0);
    if n < n_min {
        return domain(format!("perc_harmonic: n >= -1/24 required, got {n}"));
    }
    let root = (lit::<F>(24.0) * n + F::one()).sqrt();
    let five = lit::<F>(5.0);
    let tau = (n - F::one()) / lit(2.0) + five / lit::<F>(24.0) * (root - five);
    Ok(PercHarmonic {
        x: tau + lit(2.0),
        tau,
        d: lit::<F>(0.5) + five / (root + five),
    })
}

/// Hausdorff dimensions of the hull, the accessible external perimeter, and
/// the singly connected (pinching) points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HausdorffTriple<F> {
    pub d_hull: F,
    pub d_ep: F,
    pub d_sc: F,
}

impl<F: Real> HausdorffTriple<F> {
    /// Pinching points of positive dimension exist only where `d_sc > 0`;
    /// a negative value means no fjords close in the scaling limit.
    pub fn fjords_close(&self) -> bool {
        self.d_sc > F::zero()
    }
}

/// Dimension triple for the system's clusters. Geometrically meaningful for
/// `kappa` in (0, 8]; the space-filling regime still evaluates but callers
/// should consult `SystemParams::is_space_filling`.
pub fn hausdorff_triple<F: Real>(params: &SystemParams<F>) -> HausdorffTriple<F> {
    let kappa = params.kappa;
    let eighth = kappa / lit(8.0);
    let d_ep = match params.phase {
        Phase::Dilute => F::one() + eighth,
        Phase::Dense => F::one() + lit::<F>(2.0) / kappa,
    };
    HausdorffTriple {
        d_hull: F::one() + eighth,
        d_ep,
        d_sc: F::one() + eighth - lit::<F>(6.0) / kappa,
    }
}

/// Probability exponent for one packet of `m` walks to stay hidden behind a
/// packet of `n` walks diffusing from the same boundary neighborhood (c = 0).
pub fn hiding_exponent<F: Real>(m: F, n: F) -> Result<F> {
    if m < F::zero() || n < F::zero() {
        return domain(format!("hiding_exponent: m, n >= 0 required, got m={m}, n={n}"));
    }
    if n < lit(0.625) {
        return domain(format!(
            "hiding_exponent: the n-packet must dress at least one polymer's worth of \
             boundary weight (n >= 5/8), got n={n}"
        ));
    }
    let gamma = lit::<F>(-0.5);
    let saw_weight = lit::<F>(0.75);
    let inner = kpz_u(gamma, kpz_u_inv(gamma, n)? - saw_weight);
    Ok(kpz_u(gamma, saw_weight + kpz_u_inv(gamma, m + inner)?))
}

/// Closed form of `hiding_exponent`, kept as an independent algebraic route.
pub fn hiding_exponent_closed<F: Real>(m: F, n: F) -> Result<F> {
    if m < F::zero() || n < lit(0.625) {
        return domain("hiding_exponent_closed: m >= 0 and n >= 5/8 required");
    }
    let r = (F::one() + lit::<F>(24.0) * n).sqrt() - lit(3.0);
    Ok(m + n + ((lit::<F>(24.0) * m + r * r).sqrt() - r) / lit(4.0))
}

/// Star of `L` mutually avoiding strands of the system's curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultipleStrands<F> {
    pub x_tilde_l: F,
    pub x_l: F,
    /// Additive gravitational boundary channel, `2L/kappa` in both phases.
    pub qg_boundary: F,
    /// Bulk quantum weight through the phase's bulk-boundary relation.
    pub qg_bulk: F,
}

pub fn multiple_sle<F: Real>(l: F, params: &SystemParams<F>) -> Result<MultipleStrands<F>> {
    if !(l > F::zero()) {
        return domain(format!("multiple_sle: L > 0 required, got {l}"));
    }
    let kappa = params.kappa;
    let two = lit::<F>(2.0);
    let four = lit::<F>(4.0);
    let km4 = kappa - four;
    let qg_bulk = match params.phase {
        Phase::Dilute => (two * l + kappa - four) / (two * kappa),
        Phase::Dense => (two * l + four - kappa) / lit(8.0),
    };
    Ok(MultipleStrands {
        x_tilde_l: l / (two * kappa) * (two * l + four - kappa),
        x_l: (four * l * l - km4 * km4) / (lit::<F>(8.0) * kappa),
        qg_boundary: two * l / kappa,
        qg_bulk,
    })
}

/// Star of `L` strands dressed by a transparent packet of `n` walks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedStrands<F> {
    pub x_tilde: F,
    pub x: F,
    /// Boundary derivative exponent `x~(L^n) - x~_L = n + L U^-1(n)`.
    pub lambda_tilde: F,
    /// Bulk derivative exponent `x(L^n) - x_L`.
    pub lambda: F,
}

pub fn multiple_sle_dressed<F: Real>(
    l: F,
    n: F,
    params: &SystemParams<F>,
) -> Result<DressedStrands<F>> {
    if !(l > F::zero()) || n < F::zero() {
        return domain(format!("multiple_sle_dressed: L > 0 and n >= 0 required, got L={l}, n={n}"));
    }
    let kappa = params.kappa;
    let two = lit::<F>(2.0);
    let packet = u_kappa_inv(kappa, n)?;
    let channel = two * l / kappa + packet;
    Ok(DressedStrands {
        x_tilde: u_kappa(kappa, channel),
        x: two * v_kappa(kappa, channel),
        lambda_tilde: n + l * packet,
        lambda: n / two + (l + kappa / lit::<F>(4.0) - F::one()) * packet / two,
    })
}

/// Short-distance contact exponents with the system's trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactExponents<F> {
    /// Boundary contact exponent of two sets `A`, `B` meeting on the line.
    pub boundary_sde: F,
    /// Boundary contact exponent of `A` with the trace itself.
    pub sde_with_sle: F,
    /// Contact exponent of `A` with a typical medial point of the trace.
    pub bulk_sde_with_sle: F,
}

pub fn contact_exponents<F: Real>(
    params: &SystemParams<F>,
    x_tilde_a: F,
    x_tilde_b: F,
) -> Result<ContactExponents<F>> {
    if x_tilde_a < F::zero() || x_tilde_b < F::zero() {
        return domain("contact_exponents: boundary dimensions must be non-negative");
    }
    let kappa = params.kappa;
    let da = u_kappa_inv(kappa, x_tilde_a)?;
    let db = u_kappa_inv(kappa, x_tilde_b)?;
    let km4 = kappa - lit::<F>(4.0);
    Ok(ContactExponents {
        boundary_sde: kappa / lit::<F>(2.0) * da * db,
        sde_with_sle: da,
        bulk_sde_with_sle: da + km4 * km4 / (lit::<F>(8.0) * kappa),
    })
}

/// Drift process equivalent to the trace avoiding an n-packet on the boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftEquivalence<F> {
    /// Drift strength `rho = kappa U^-1(n)`.
    pub rho: F,
    /// Equivalent number of extra strands, `L = rho/2`.
    pub l_equiv: F,
}

pub fn sle_rho<F: Real>(params: &SystemParams<F>, n: F) -> Result<DriftEquivalence<F>> {
    if n < F::zero() {
        return domain(format!("sle_rho: n >= 0 required, got {n}"));
    }
    let rho = params.kappa * u_kappa_inv(params.kappa, n)?;
    Ok(DriftEquivalence { rho, l_equiv: rho / lit(2.0) })
}

/// Minimal drift for which the trace avoids the negative boundary ray.
pub fn rho_min<F: Real>(params: &SystemParams<F>) -> F {
    heaviside_scaled(params.kappa - lit(4.0))
}

/// Contact exponent of an m-packet with the drifted trace.
pub fn sigma_contact<F: Real>(params: &SystemParams<F>, m: F, rho: F) -> Result<F> {
    if m < F::zero() {
        return domain(format!("sigma_contact: m >= 0 required, got {m}"));
    }
    if rho < rho_min(params) {
        return domain(format!(
            "trace cannot avoid the boundary ray: rho = {rho} < rho_min = {}",
            rho_min(params)
        ));
    }
    let kappa = params.kappa;
    let n = u_kappa(kappa, rho / kappa);
    Ok(u_kappa_inv(kappa, m + n)? - u_kappa_inv(kappa, n)?)
}

/// Winding-angle variance of `k` strands meeting at a point, with `j`
/// adjacent pairs conditioned not to touch, grown to scale `ln R`.
pub fn winding_variance<F: Real>(
    params: &SystemParams<F>,
    k: u32,
    j: u32,
    ln_r: F,
) -> Result<F> {
    if k == 0 || 2 * j > k {
        return domain(format!("winding_variance: need k >= 1 and 2j <= k, got k={k}, j={j}"));
    }
    if !(ln_r > F::zero()) {
        return domain(format!("winding_variance: ln R > 0 required, got {ln_r}"));
    }
    let kappa = params.kappa;
    let k_eff = lit::<F>(f64::from(k))
        + lit::<F>(f64::from(j)) * heaviside_scaled(kappa / lit::<F>(2.0) - lit(2.0));
    Ok(kappa / (k_eff * k_eff) * ln_r)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} != {b} (tol {tol})");
    }

    #[test]
    fn walk_packets() {
        assert_close(zeta_packets(&[1.0, 1.0]).unwrap().zeta, 5.0 / 8.0, TOL);
        assert_close(zeta_packets(&[1.0, 1.0, 1.0]).unwrap().zeta, 35.0 / 24.0, TOL);
        assert_close(zeta_packets(&[2.0, 1.0]).unwrap().zeta, 1.0, TOL);
        assert_close(zeta_packets(&[1.0]).unwrap().zeta, 0.125, TOL);
        assert!(zeta_packets::<f64>(&[]).is_err());
        assert!(zeta_packets(&[1.0, 0.0]).is_err());
    }

    #[test]
    fn single_walk_disconnection() {
        assert_close(disconnection_brownian::<f64>(), 0.125, TOL);
        assert_close(
            zeta_packets(&[1.0]).unwrap().zeta,
            disconnection_brownian::<f64>(),
            TOL,
        );
    }

    #[test]
    fn frontier_dimension_from_three_halves() {
        // zeta at the formal packet count x = 3/2 gives the frontier dimension
        // through D = 2 - 2 zeta.
        let x = 1.5;
        let zeta = kpz_v(-0.5, x);
        assert_close(2.0 - 2.0 * zeta, 4.0 / 3.0, TOL);
        // x = U^-1(2) + U^-1(1) - 1 reaches the same 3/2 via the cascade.
        assert_close(kpz_u_inv(-0.5, 2.0).unwrap(), 1.5, TOL);
    }

    #[test]
    fn polymer_watermelons() {
        let w1 = saw_watermelon::<f64>(1).unwrap();
        assert_close(w1.x_l, 5.0 / 48.0, TOL);
        assert_close(w1.x_tilde_l, 5.0 / 8.0, TOL);
        assert_close(saw_watermelon::<f64>(2).unwrap().x_l, 2.0 / 3.0, TOL);
        assert_close(saw_watermelon::<f64>(3).unwrap().x_tilde_l, 33.0 / 8.0, TOL);
        assert!(saw_watermelon::<f64>(0).is_err());
    }

    #[test]
    fn crossing_exponents() {
        assert_close(perc_crossing::<f64>(2).unwrap().x_tilde_l, 1.0, TOL);
        assert_close(perc_crossing::<f64>(3).unwrap().x_tilde_l, 2.0, TOL);
        assert_close(perc_crossing::<f64>(3).unwrap().x_l, 2.0 / 3.0, TOL);
        assert_close(perc_crossing::<f64>(2).unwrap().x_l, 0.25, TOL);
        assert!(perc_crossing::<f64>(0).is_err());
    }

    #[test]
    fn walk_crossing_equivalence() {
        // One walk scales like two crossing paths, plane and half-plane alike.
        for l in 1..=4 {
            let packet = zeta_packets(&vec![1.0; l]).unwrap();
            let crossing = perc_crossing::<f64>(2 * l as u32).unwrap();
            assert_close(2.0 * packet.zeta, crossing.x_l, TOL);
            assert_close(packet.two_zeta_tilde, crossing.x_tilde_l, TOL);
        }
    }

    #[test]
    fn harmonic_moments() {
        assert_close(perc_harmonic(2.0).unwrap().d, 11.0 / 12.0, TOL);
        assert_close(perc_harmonic(0.0).unwrap().d, 4.0 / 3.0, TOL);
        assert_close(perc_harmonic(1.0).unwrap().tau, 0.0, TOL);
        assert_close(perc_harmonic(1.0).unwrap().x, 2.0, TOL);
        assert!(perc_harmonic(-1.0 / 24.0).is_ok());
        assert!(perc_harmonic(-1.0 / 24.0 - 1e-9).is_err());
    }

    #[test]
    fn makarov_slope() {
        let h = 1e-6;
        let slope =
            (perc_harmonic(1.0 + h).unwrap().x - perc_harmonic(1.0 - h).unwrap().x) / (2.0 * h);
        assert_close(slope, 1.0, 1e-6);
    }

    #[test]
    fn table_one_rows() {
        let rows: [(f64, [f64; 3]); 5] = [
            (8.0, [2.0, 5.0 / 4.0, 5.0 / 4.0]),
            (6.0, [7.0 / 4.0, 4.0 / 3.0, 3.0 / 4.0]),
            (16.0 / 3.0, [5.0 / 3.0, 11.0 / 8.0, 13.0 / 24.0]),
            (24.0 / 5.0, [8.0 / 5.0, 17.0 / 12.0, 7.0 / 20.0]),
            (4.0, [3.0 / 2.0, 3.0 / 2.0, 0.0]),
        ];
        for (kappa, [d_hull, d_ep, d_sc]) in rows {
            let p = SystemParams::from_kappa(kappa).unwrap();
            let t = hausdorff_triple(&p);
            assert_close(t.d_hull, d_hull, TOL);
            assert_close(t.d_ep, d_ep, TOL);
            assert_close(t.d_sc, d_sc, TOL);
        }
    }

    #[test]
    fn perimeter_hull_duality() {
        for i in 0..=100 {
            let kappa = 4.0 + 4.0 * i as f64 / 100.0;
            let t = hausdorff_triple(&SystemParams::from_kappa(kappa).unwrap());
            assert_close((t.d_ep - 1.0) * (t.d_hull - 1.0), 0.25, TOL);
            let dual = hausdorff_triple(&SystemParams::from_kappa(16.0 / kappa).unwrap());
            assert_close(t.d_ep, dual.d_hull, TOL);
            assert!(t.d_ep <= t.d_hull + TOL);
        }
    }

    #[test]
    fn dilute_perimeter_equals_hull() {
        for kappa in [1.0, 2.0, 8.0 / 3.0, 3.5, 4.0] {
            let t = hausdorff_triple(&SystemParams::from_kappa(kappa).unwrap());
            assert_close(t.d_ep, t.d_hull, TOL);
            assert!(!t.fjords_close() || kappa == 4.0);
        }
    }

    #[test]
    fn hiding_exponents() {
        assert_close(hiding_exponent(0.0, 1.0).unwrap(), 1.0, TOL);
        assert_close(hiding_exponent(0.0, 2.0).unwrap(), 2.0, TOL);
        assert_close(
            hiding_exponent(1.0, 1.0).unwrap(),
            1.5 + 7.0f64.sqrt() / 2.0,
            TOL,
        );
        for (m, n) in [(0.0, 1.0), (1.0, 1.0), (2.5, 0.7), (0.3, 5.0)] {
            assert_close(
                hiding_exponent(m, n).unwrap(),
                hiding_exponent_closed(m, n).unwrap(),
                1e-12,
            );
        }
        assert!(hiding_exponent(1.0, 0.5).is_err());
        assert!(hiding_exponent(-1.0, 1.0).is_err());
    }

    #[test]
    fn multiple_strand_stars() {
        let perc = SystemParams::from_kappa(6.0).unwrap();
        let s1 = multiple_sle(1.0, &perc).unwrap();
        assert_close(s1.x_tilde_l, 0.0, TOL);
        assert_close(s1.x_l, 0.0, TOL);

        let saw = SystemParams::from_kappa(8.0 / 3.0).unwrap();
        let p1 = multiple_sle(1.0, &saw).unwrap();
        assert_close(p1.x_tilde_l, 5.0 / 8.0, TOL);
        assert_close(p1.x_l, 5.0 / 48.0, TOL);

        let four = SystemParams::from_kappa(4.0).unwrap();
        assert_close(multiple_sle(2.0, &four).unwrap().x_tilde_l, 1.0, TOL);

        assert!(multiple_sle(0.0, &saw).is_err());
    }

    #[test]
    fn dressed_strand_derivative_exponents() {
        let saw = SystemParams::from_kappa(8.0 / 3.0).unwrap();
        let d = multiple_sle_dressed(1.0, 0.0, &saw).unwrap();
        assert_close(d.lambda_tilde, 0.0, TOL);
        assert_close(d.lambda, 0.0, TOL);

        let perc = SystemParams::from_kappa(6.0).unwrap();
        let d = multiple_sle_dressed(1.0, 0.0, &perc).unwrap();
        assert_close(d.lambda_tilde, 1.0 / 3.0, TOL);
        assert_close(d.lambda, 0.25, TOL);
        // Same disconnection exponent through the dual-susceptibility route.
        let via_dual = {
            let packet = kpz_u_inv(perc.gamma_dual, 0.0).unwrap();
            0.5 * (1.0 + perc.kappa / 4.0 - 1.0) * packet
        };
        assert_close(d.lambda, via_dual, TOL);
    }

    #[test]
    fn contact_exponent_family() {
        for kappa in [2.0, 8.0 / 3.0, 4.0, 6.0, 8.0] {
            let p = SystemParams::from_kappa(kappa).unwrap();
            let x1 = (6.0 - kappa) / (2.0 * kappa);
            if x1 >= 0.0 {
                let c = contact_exponents(&p, x1, 0.0).unwrap();
                assert_close(c.sde_with_sle, 2.0 / kappa, TOL);
            }
            let shift = (kappa - 4.0) * (kappa - 4.0) / (8.0 * kappa);
            assert_close(shift, (1.0 - p.c) / 12.0, 1e-12);
        }
        let four = SystemParams::from_kappa(4.0).unwrap();
        let c = contact_exponents(&four, 1.0, 1.0).unwrap();
        assert_close(c.bulk_sde_with_sle - c.sde_with_sle, 0.0, TOL);
    }

    #[test]
    fn drift_process() {
        let perc = SystemParams::from_kappa(6.0).unwrap();
        assert_close(rho_min(&perc), 2.0, TOL);
        for kappa in [1.0, 2.5, 4.0] {
            assert_close(rho_min(&SystemParams::from_kappa(kappa).unwrap()), 0.0, TOL);
        }
        // rho at n = 0 equals the minimal drift.
        assert_close(sle_rho(&perc, 0.0).unwrap().rho, 2.0, TOL);
        assert_close(sle_rho(&perc, 0.0).unwrap().l_equiv, 1.0, TOL);
        // sigma with an empty m-packet vanishes for any admissible rho.
        for rho in [2.0, 3.0, 7.5] {
            assert_close(sigma_contact(&perc, 0.0, rho).unwrap(), 0.0, TOL);
        }
        assert!(sigma_contact(&perc, 1.0, 1.0).is_err());
    }

    #[test]
    fn winding_variances() {
        let perc = SystemParams::from_kappa(6.0).unwrap();
        let ln_r = 3.0;
        assert_close(winding_variance(&perc, 1, 0, ln_r).unwrap(), 6.0 * ln_r, TOL);
        assert_close(winding_variance(&perc, 2, 0, ln_r).unwrap(), 1.5 * ln_r, TOL);
        assert_close(
            winding_variance(&perc, 2, 1, ln_r).unwrap(),
            6.0 / 9.0 * ln_r,
            TOL,
        );
        // Dilute phase: disconnection conditioning costs nothing.
        let saw = SystemParams::from_kappa(8.0 / 3.0).unwrap();
        assert_close(
            winding_variance(&saw, 2, 1, ln_r).unwrap(),
            winding_variance(&saw, 2, 0, ln_r).unwrap(),
            TOL,
        );
        assert!(winding_variance(&perc, 1, 1, ln_r).is_err());
        assert!(winding_variance(&perc, 2, 0, 0.0).is_err());
    }
}
