//! Parameter conversions for conformally invariant critical systems.
//!
//! A system is labelled by the Loewner diffusion constant `kappa`; everything
//! else (central charge, string susceptibility and its dual, Coulomb gas
//! coupling) is derived from it. The quadratic gravitational dressing maps and
//! their positive inverses live here, both in the susceptibility form
//! (`kpz_u`, `kpz_v`, `kpz_u_inv`) and in the kappa form that is valid across
//! the simple/non-simple transition (`u_kappa`, `v_kappa`, `u_kappa_inv`).

use crate::error::{domain, Result};
use crate::real::{heaviside, lit, Real};

/// `x * theta(x)` with `theta(0) = 1`; the ramp switching on dense-phase
/// corrections, harmless at the transition because the factor vanishes there.
pub fn heaviside_scaled<F: Real>(x: F) -> F {
    x * heaviside(x)
}

/// Simple-path (`kappa <= 4`) versus self-coiling (`kappa > 4`) regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Dilute,
    Dense,
}

impl std::fmt::Display for Phase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Phase::Dilute => write!(f, "dilute"),
            Phase::Dense => write!(f, "dense"),
        }
    }
}

/// Which root of the susceptibility quadratic to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaBranch {
    /// The physical root, `gamma <= 0`.
    Standard,
    /// The dual root, `gamma' >= 0`.
    Dual,
}

/// One critical system, canonically parameterized by `kappa`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams<F> {
    /// Loewner diffusion constant, `kappa > 0`.
    pub kappa: F,
    /// Central charge, `c <= 1`.
    pub c: F,
    /// String susceptibility exponent, `gamma <= 0`.
    pub gamma: F,
    /// Dual susceptibility exponent, `gamma' >= 0`, with `(1-gamma)(1-gamma') = 1`.
    pub gamma_dual: F,
    /// Coulomb gas coupling, `g = 4/kappa`.
    pub g: F,
    /// `b = (25 - c)/12 >= 2`.
    pub b: F,
    pub phase: Phase,
}

impl<F: Real> SystemParams<F> {
    /// Builds the full parameter set from `kappa`.
    pub fn from_kappa(kappa: F) -> Result<Self> {
        if !kappa.is_finite() || kappa <= F::zero() {
            return domain(format!("kappa must be positive and finite, got {kappa}"));
        }
        let four = lit::<F>(4.0);
        let c = c_from_kappa(kappa);
        let phase = if kappa <= four { Phase::Dilute } else { Phase::Dense };
        let (gamma, gamma_dual) = match phase {
            Phase::Dilute => (F::one() - four / kappa, F::one() - kappa / four),
            Phase::Dense => (F::one() - kappa / four, F::one() - four / kappa),
        };
        Ok(SystemParams {
            kappa,
            c,
            gamma,
            gamma_dual,
            g: four / kappa,
            b: (lit::<F>(25.0) - c) / lit(12.0),
            phase,
        })
    }

    /// Builds the parameter set from a central charge and an explicit phase
    /// choice (`c` alone is two-valued in `kappa`).
    pub fn from_c(c: F, phase: Phase) -> Result<Self> {
        let gamma = gamma_from_c(c, GammaBranch::Standard)?;
        let four = lit::<F>(4.0);
        let kappa = match phase {
            Phase::Dilute => four / (F::one() - gamma),
            Phase::Dense => four * (F::one() - gamma),
        };
        Self::from_kappa(kappa)
    }

    /// The dual system under `kappa kappa' = 16`; same central charge.
    pub fn dual(&self) -> Self {
        Self::from_kappa(lit::<F>(16.0) / self.kappa).expect("dual kappa positive")
    }

    /// Space-filling regime; geometric interpretations of exponents are
    /// unreliable here although the algebra remains well defined.
    pub fn is_space_filling(&self) -> bool {
        self.kappa >= lit(8.0)
    }
}

/// Central charge of the system with diffusion constant `kappa`;
/// symmetric under `kappa -> 16/kappa`.
pub fn c_from_kappa<F: Real>(kappa: F) -> F {
    let q = kappa / lit::<F>(4.0) - F::one();
    F::one() - lit::<F>(24.0) * q * q / kappa
}

/// Central charge from a susceptibility exponent (either root).
pub fn c_from_gamma<F: Real>(gamma: F) -> F {
    F::one() - lit::<F>(6.0) * gamma * gamma / (F::one() - gamma)
}

/// Solves `c = 1 - 6 gamma^2/(1-gamma)` for the requested root.
pub fn gamma_from_c<F: Real>(c: F, branch: GammaBranch) -> Result<F> {
    if !(c <= F::one()) {
        return domain(format!("central charge must satisfy c <= 1, got {c}"));
    }
    let disc = ((F::one() - c) * (lit::<F>(25.0) - c)).sqrt();
    let twelve = lit::<F>(12.0);
    Ok(match branch {
        GammaBranch::Standard => ((c - F::one()) - disc) / twelve,
        GammaBranch::Dual => ((c - F::one()) + disc) / twelve,
    })
}

/// Gravitational dressing of a conformal weight: `U_gamma(d) = d(d-gamma)/(1-gamma)`.
pub fn kpz_u<F: Real>(gamma: F, delta: F) -> F {
    delta * (delta - gamma) / (F::one() - gamma)
}

/// Boundary-to-bulk dressing: `V_gamma(x) = U_gamma((x+gamma)/2) = (x^2-gamma^2)/(4(1-gamma))`.
pub fn kpz_v<F: Real>(gamma: F, x: F) -> F {
    (x * x - gamma * gamma) / (lit::<F>(4.0) * (F::one() - gamma))
}

/// Positive inverse of `kpz_u`.
pub fn kpz_u_inv<F: Real>(gamma: F, x: F) -> Result<F> {
    let d = lit::<F>(4.0) * (F::one() - gamma) * x + gamma * gamma;
    if d < F::zero() {
        return domain(format!("kpz_u_inv: 4(1-gamma)x + gamma^2 = {d} < 0"));
    }
    Ok((d.sqrt() + gamma) / lit(2.0))
}

/// Unified dressing map, valid for all `kappa`: acts on the quantum weight for
/// `kappa <= 4` and on its dual for `kappa >= 4`.
pub fn u_kappa<F: Real>(kappa: F, delta: F) -> F {
    delta * (kappa * delta + lit::<F>(4.0) - kappa) / lit(4.0)
}

/// Unified boundary-to-bulk map: `V_kappa(d) = U_kappa((d + 1 - 4/kappa)/2)`.
pub fn v_kappa<F: Real>(kappa: F, delta: F) -> F {
    let km4 = kappa - lit::<F>(4.0);
    (kappa * kappa * delta * delta - km4 * km4) / (lit::<F>(16.0) * kappa)
}

/// Positive inverse of `u_kappa`.
pub fn u_kappa_inv<F: Real>(kappa: F, x: F) -> Result<F> {
    let km4 = kappa - lit::<F>(4.0);
    let d = lit::<F>(16.0) * kappa * x + km4 * km4;
    if d < F::zero() {
        return domain(format!("u_kappa_inv: 16 kappa x + (kappa-4)^2 = {d} < 0"));
    }
    Ok((d.sqrt() + km4) / (lit::<F>(2.0) * kappa))
}

/// Dual quantum dimension: `delta' = (delta - gamma)/(1 - gamma)`.
pub fn dual_dimension<F: Real>(gamma: F, delta: F) -> F {
    (delta - gamma) / (F::one() - gamma)
}

/// Bulk quantum weight from the (true) boundary quantum weight:
/// `2 delta - gamma = delta~` for simple paths, `2 delta = delta~` otherwise.
pub fn bulk_from_boundary_qg<F: Real>(params: &SystemParams<F>, boundary_qg: F) -> F {
    match params.phase {
        Phase::Dilute => (boundary_qg + params.gamma) / lit(2.0),
        Phase::Dense => boundary_qg / lit(2.0),
    }
}

/// O(N)/Potts dictionary entry for a Coulomb gas coupling `g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombEntry<F> {
    /// Loop fugacity `N = -2 cos(pi g)`.
    pub n: F,
    /// Potts state count `Q = N^2`; only meaningful where `N >= 0`.
    pub q: Option<F>,
    pub kappa: F,
    pub c: F,
}

/// O(N)/Potts labels for a coupling `g` in (0, 2].
pub fn coulomb_dictionary<F: Real>(g: F) -> Result<CoulombEntry<F>> {
    if !(g > F::zero() && g <= lit(2.0)) {
        return domain(format!("coulomb coupling must lie in (0, 2], got {g}"));
    }
    let n = -lit::<F>(2.0) * (F::PI() * g).cos();
    let one_m_g = F::one() - g;
    Ok(CoulombEntry {
        n,
        q: if n >= F::zero() { Some(n * n) } else { None },
        kappa: lit::<F>(4.0) / g,
        c: F::one() - lit::<F>(6.0) * one_m_g * one_m_g / g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} != {b} (tol {tol})");
    }

    #[test]
    fn percolation_parameters() {
        let p = SystemParams::from_kappa(6.0).unwrap();
        assert_close(p.c, 0.0, TOL);
        assert_close(p.gamma, -0.5, TOL);
        assert_close(p.gamma_dual, 1.0 / 3.0, TOL);
        assert_close(p.g, 2.0 / 3.0, TOL);
        assert_eq!(p.phase, Phase::Dense);
    }

    #[test]
    fn symmetric_point() {
        let p = SystemParams::from_kappa(4.0).unwrap();
        assert_close(p.c, 1.0, TOL);
        assert_close(p.gamma, 0.0, TOL);
        assert_close(p.gamma_dual, 0.0, TOL);
        assert_eq!(p.phase, Phase::Dilute);
    }

    #[test]
    fn saw_parameters() {
        let p = SystemParams::from_kappa(8.0 / 3.0).unwrap();
        assert_close(p.c, 0.0, TOL);
        assert_close(p.gamma, -0.5, TOL);
        assert_eq!(p.phase, Phase::Dilute);
    }

    #[test]
    fn rejects_bad_kappa() {
        assert!(SystemParams::<f64>::from_kappa(0.0).is_err());
        assert!(SystemParams::<f64>::from_kappa(-1.0).is_err());
        assert!(SystemParams::<f64>::from_kappa(f64::NAN).is_err());
        assert!(SystemParams::<f64>::from_kappa(f64::INFINITY).is_err());
    }

    #[test]
    fn gamma_roots() {
        assert_close(gamma_from_c(0.0, GammaBranch::Standard).unwrap(), -0.5, TOL);
        assert_close(gamma_from_c(0.0, GammaBranch::Dual).unwrap(), 1.0 / 3.0, TOL);
        assert_close(gamma_from_c(1.0, GammaBranch::Standard).unwrap(), 0.0, TOL);
        assert_close(gamma_from_c(1.0, GammaBranch::Dual).unwrap(), 0.0, TOL);
        assert_close(gamma_from_c(-2.0, GammaBranch::Standard).unwrap(), -1.0, TOL);
        assert!(gamma_from_c(1.5, GammaBranch::Standard).is_err());
    }

    #[test]
    fn gamma_satisfies_quadratic() {
        for k in 1..200 {
            let c = 1.0 - 0.06 * k as f64;
            for branch in [GammaBranch::Standard, GammaBranch::Dual] {
                let g = gamma_from_c(c, branch).unwrap();
                assert_close(c_from_gamma(g), c, 1e-10);
            }
        }
    }

    #[test]
    fn susceptibility_duality() {
        for k in [0.5, 1.0, 2.0, 8.0 / 3.0, 4.0, 16.0 / 3.0, 6.0, 8.0, 12.0] {
            let p = SystemParams::from_kappa(k).unwrap();
            assert_close((1.0 - p.gamma) * (1.0 - p.gamma_dual), 1.0, TOL);
            assert_close(c_from_gamma(p.gamma), p.c, 1e-11);
            assert_close(c_from_gamma(p.gamma_dual), p.c, 1e-11);
            assert!(p.b >= 2.0 - TOL);
        }
    }

    #[test]
    fn kpz_maps_at_pure_gravity() {
        // gamma = -1/2 seeds.
        assert_close(kpz_u_inv(-0.5, 1.0).unwrap(), 1.0, TOL);
        assert_close(kpz_u_inv(-0.5, 2.0).unwrap(), 1.5, TOL);
        assert_close(kpz_u_inv(-0.5, 0.0).unwrap(), 0.0, TOL);
        assert_close(kpz_v(-0.5, 2.5), 1.0, TOL);
        assert_close(kpz_u_inv(-0.5, 0.625).unwrap(), 0.75, TOL);
    }

    #[test]
    fn kpz_u_inv_rejects_negative_discriminant() {
        assert!(kpz_u_inv(-0.5, -1.0).is_err());
    }

    #[test]
    fn kpz_round_trip() {
        for i in 0..60 {
            let gamma = -3.0 + 0.05 * i as f64;
            if gamma > 0.0 {
                break;
            }
            for j in 0..40 {
                let x = 0.25 * j as f64;
                let d = kpz_u_inv(gamma, x).unwrap();
                assert_close(kpz_u(gamma, d), x, 1e-12);
                assert!(d >= gamma / 2.0 - TOL, "positive inverse branch");
            }
        }
    }

    #[test]
    fn unified_map_matches_phase_maps() {
        for k in [0.7, 2.0, 8.0 / 3.0, 3.7, 4.0, 4.8, 6.0, 8.0, 11.0] {
            let p = SystemParams::from_kappa(k).unwrap();
            let gamma_for_channel = match p.phase {
                Phase::Dilute => p.gamma,
                Phase::Dense => p.gamma_dual,
            };
            for j in 0..30 {
                let x = 0.3 * j as f64;
                assert_close(
                    u_kappa_inv(k, x).unwrap(),
                    kpz_u_inv(gamma_for_channel, x).unwrap(),
                    1e-12,
                );
                let d = 0.2 * j as f64;
                assert_close(u_kappa(k, d), kpz_u(gamma_for_channel, d), 1e-12);
                assert_close(v_kappa(k, d), kpz_v(gamma_for_channel, d), 1e-12);
            }
        }
    }

    #[test]
    fn unified_inverse_at_zero() {
        assert_close(u_kappa_inv(6.0, 0.0).unwrap(), 1.0 / 3.0, TOL);
        assert_close(u_kappa_inv(8.0 / 3.0, 0.0).unwrap(), 0.0, TOL);
        assert_close(u_kappa(6.0, u_kappa_inv(6.0, 0.0).unwrap()), 0.0, TOL);
    }

    #[test]
    fn dual_chain_identity() {
        // delta' computed through the dual map equals the explicit dual of the
        // standard inverse, for every kappa.
        for k in [0.9, 2.0, 3.3, 4.0, 5.2, 6.0, 9.0, 14.0] {
            let p = SystemParams::from_kappa(k).unwrap();
            for j in 0..25 {
                let x = 0.4 * j as f64;
                let delta = kpz_u_inv(p.gamma, x).unwrap();
                let delta_dual = kpz_u_inv(p.gamma_dual, x).unwrap();
                assert_close(dual_dimension(p.gamma, delta), delta_dual, 1e-12);
                assert_close(kpz_u(p.gamma, delta), kpz_u(p.gamma_dual, delta_dual), 1e-12);
                assert_close(delta * dual_dimension(p.gamma, delta), x, 1e-12);
            }
        }
    }

    #[test]
    fn central_charge_self_dual() {
        for i in 1..=100 {
            let k = 0.16 * i as f64;
            assert_close(c_from_kappa(k), c_from_kappa(16.0 / k), 1e-11);
        }
    }

    #[test]
    fn dual_weights_seed_values() {
        // gamma = -1/2: boundary weight 3/4 has dual 5/6 and plane dimension 5/8.
        let dual = dual_dimension(-0.5, 0.75);
        assert_close(dual, 5.0 / 6.0, TOL);
        assert_close(0.75 * dual, 5.0 / 8.0, TOL);
        // At the self-dual point every weight is its own dual.
        for d in [0.0, 0.3, 1.7] {
            assert_close(dual_dimension(0.0, d), d, TOL);
        }
    }

    #[test]
    fn bulk_boundary_relation() {
        let dilute = SystemParams::from_kappa(8.0 / 3.0).unwrap();
        // boundary weight L maps to (L - 1/2)/2 in the bulk at gamma = -1/2.
        for l in 1..=5 {
            let tilde = l as f64;
            assert_close(
                bulk_from_boundary_qg(&dilute, tilde),
                0.5 * (tilde - 0.5),
                TOL,
            );
        }
        let dense = SystemParams::from_kappa(6.0).unwrap();
        assert_close(bulk_from_boundary_qg(&dense, 3.0), 1.5, TOL);
    }

    #[test]
    fn phase_formulas_coincide_at_kappa_four() {
        let p = SystemParams::from_kappa(4.0).unwrap();
        for tilde in [0.0, 0.5, 1.0, 2.5] {
            let dilute = (tilde + p.gamma) / 2.0;
            let dense = tilde / 2.0;
            assert_close(dilute, dense, TOL);
        }
        assert_close(p.gamma, p.gamma_dual, TOL);
    }

    #[test]
    fn coulomb_dictionary_rows() {
        let perc = coulomb_dictionary(2.0 / 3.0).unwrap();
        assert_close(perc.n, 1.0, TOL);
        assert_close(perc.q.unwrap(), 1.0, TOL);
        assert_close(perc.kappa, 6.0, TOL);
        assert_close(perc.c, 0.0, TOL);

        let four_state = coulomb_dictionary(1.0).unwrap();
        assert_close(four_state.n, 2.0, TOL);
        assert_close(four_state.q.unwrap(), 4.0, TOL);
        assert_close(four_state.kappa, 4.0, TOL);
        assert_close(four_state.c, 1.0, TOL);

        let ising = coulomb_dictionary(0.75).unwrap();
        assert_close(ising.q.unwrap(), 2.0, 1e-12);
        assert_close(ising.kappa, 16.0 / 3.0, TOL);
        assert_close(ising.c, 0.5, TOL);

        assert!(coulomb_dictionary(0.0).is_err());
        assert!(coulomb_dictionary(2.1).is_err());
    }

    #[test]
    fn from_c_phase_choice() {
        let dilute = SystemParams::from_c(0.0, Phase::Dilute).unwrap();
        assert_close(dilute.kappa, 8.0 / 3.0, 1e-12);
        let dense = SystemParams::from_c(0.0, Phase::Dense).unwrap();
        assert_close(dense.kappa, 6.0, 1e-12);
        for p in [dilute, dense] {
            assert_close(p.c, 0.0, 1e-12);
        }
    }

    #[test]
    fn generic_scalar_instantiates_f32() {
        let p = SystemParams::<f32>::from_kappa(6.0).unwrap();
        assert!((p.c - 0.0).abs() < 1e-5);
        assert!((u_kappa_inv(6.0f32, 1.0).unwrap() - 1.0).abs() < 1e-5);
    }
}
