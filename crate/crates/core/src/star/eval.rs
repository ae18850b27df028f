//! Evaluation of star expressions to their exponent views.
//!
//! Transparent unions add half-plane dimensions; mutually avoiding unions add
//! boundary weights on the gravitational side, reached through the positive
//! inverse of the unified dressing map at the system's `kappa`. For
//! `kappa <= 4` that channel carries the quantum boundary weight itself, for
//! `kappa > 4` its dual, so one evaluation rule covers both phases. The c = 0
//! random-walk and polymer identities therefore appear at `kappa = 8/3`, the
//! simple-path representative of c = 0.
//!
//! Two half-plane normalizations of the one-path boundary exponent circulate
//! (a boundary weight of 1 versus an annulus-decay exponent of 1/2 for a
//! single walk); only the half-plane dimension `x~` is free of that factor of
//! two, so `ExponentSet` exposes exponents, never raw decay rates.

use crate::error::{domain, Error, Result};
use crate::params::{bulk_from_boundary_qg, u_kappa, u_kappa_inv, v_kappa, Phase, SystemParams};
use crate::real::{lit, Real};
use crate::star::ast::{Atom, StarExpr};

/// The five exponent views of one star configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentSet<F> {
    /// Additive gravitational boundary channel: the quantum boundary weight in
    /// the dilute phase, its dual in the dense phase.
    pub qg_boundary: F,
    /// Boundary scaling dimension in the half-plane.
    pub halfplane_dim: F,
    /// Conformal weight in the plane.
    pub plane_weight: F,
    /// Scaling dimension in the plane (twice the weight).
    pub plane_scaling: F,
    /// Bulk quantum weight, through the phase's bulk-boundary relation.
    pub qg_bulk: F,
}

/// Half-plane boundary dimension carried by a single atom.
pub fn atom_halfplane_dim<F: Real>(atom: &Atom<F>, params: &SystemParams<F>) -> Result<F> {
    match atom {
        Atom::Brownian => Ok(F::one()),
        Atom::Saw => {
            // The polymer atom exists only in the c = 0 theories.
            if params.c.abs() > lit(1e-9) {
                Err(Error::AtomUndefined(format!(
                    "P requires c = 0, got c = {}",
                    params.c
                )))
            } else {
                Ok(lit(0.625))
            }
        }
        Atom::SystemStrand => {
            Ok((lit::<F>(6.0) - params.kappa) / (lit::<F>(2.0) * params.kappa))
        }
        Atom::Packet(n) => {
            if *n < F::zero() {
                domain(format!("packet size must be non-negative, got {n}"))
            } else {
                Ok(*n)
            }
        }
        Atom::Generic(x) => {
            if *x < F::zero() {
                domain(format!("generic boundary dimension must be non-negative, got {x}"))
            } else {
                Ok(*x)
            }
        }
    }
}

fn halfplane_dim<F: Real>(expr: &StarExpr<F>, params: &SystemParams<F>) -> Result<F> {
    match expr {
        StarExpr::Atom(atom) => atom_halfplane_dim(atom, params),
        StarExpr::Overlap(children) => {
            let mut sum = F::zero();
            for child in children {
                sum = sum + halfplane_dim(child, params)?;
            }
            Ok(sum)
        }
        StarExpr::Avoid(children) => {
            let mut qg = F::zero();
            for child in children {
                qg = qg + u_kappa_inv(params.kappa, halfplane_dim(child, params)?)?;
            }
            Ok(u_kappa(params.kappa, qg))
        }
    }
}

/// Evaluates a star configuration; every field of the returned set is
/// populated, so boundary and bulk queries read off the same result.
pub fn evaluate<F: Real>(expr: &StarExpr<F>, params: &SystemParams<F>) -> Result<ExponentSet<F>> {
    let x_tilde = halfplane_dim(expr, params)?;
    let qg_boundary = u_kappa_inv(params.kappa, x_tilde)?;
    let plane_weight = v_kappa(params.kappa, qg_boundary);
    let true_boundary = match params.phase {
        Phase::Dilute => qg_boundary,
        // Undo the dual transform to recover the quantum boundary weight.
        Phase::Dense => qg_boundary * (F::one() - params.gamma) + params.gamma,
    };
    Ok(ExponentSet {
        qg_boundary,
        halfplane_dim: x_tilde,
        plane_weight,
        plane_scaling: lit::<F>(2.0) * plane_weight,
        qg_bulk: bulk_from_boundary_qg(params, true_boundary),
    })
}
