//! Non-intersection of simple random walks on the square lattice.

use std::collections::HashSet;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{McError, Result};
use crate::fit::{fit_power_law, FitResult};
use crate::rng::trial_rng;

pub type Site = (i32, i32);

const STEPS: [Site; 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// A nearest-neighbor walk path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkPath {
    pub origin: Site,
    pub sites: Vec<Site>,
}

impl WalkPath {
    pub fn generate(origin: Site, steps: u64, rng: &mut impl Rng) -> WalkPath {
        let mut sites = Vec::with_capacity(steps as usize + 1);
        let mut pos = origin;
        sites.push(pos);
        for _ in 0..steps {
            let d = STEPS[rng.random_range(0..4)];
            pos = (pos.0 + d.0, pos.1 + d.1);
            sites.push(pos);
        }
        WalkPath { origin, sites }
    }

    pub fn step_count(&self) -> usize {
        self.sites.len() - 1
    }

    pub fn is_nearest_neighbor(&self) -> bool {
        self.sites[0] == self.origin
            && self
                .sites
                .windows(2)
                .all(|w| (w[0].0 - w[1].0).abs() + (w[0].1 - w[1].1).abs() == 1)
    }
}

/// Starting points packed around the origin; pairwise distinct.
pub fn walk_origins(l: usize) -> Vec<Site> {
    [(0, 0), (1, 0), (0, 1), (1, 1), (-1, 0), (0, -1)][..l].to_vec()
}

/// First time step at which any two of the `l` walks share a visited site
/// (origins included), or `t_max + 1` if they never do.
pub fn survival_time(l: usize, t_max: u64, rng: &mut impl Rng) -> u64 {
    let origins = walk_origins(l);
    let mut visited: Vec<HashSet<Site>> = origins
        .iter()
        .map(|&o| {
            let mut s = HashSet::with_capacity(t_max as usize + 1);
            s.insert(o);
            s
        })
        .collect();
    let mut pos = origins;
    for t in 1..=t_max {
        for i in 0..l {
            let d = STEPS[rng.random_range(0..4)];
            let next = (pos[i].0 + d.0, pos[i].1 + d.1);
            pos[i] = next;
            for (j, other) in visited.iter().enumerate() {
                if j != i && other.contains(&next) {
                    return t;
                }
            }
            visited[i].insert(next);
        }
    }
    t_max + 1
}

/// Survival curve of a walk-ensemble campaign and the fitted decay exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct RwResult {
    pub fit: FitResult,
    /// Log-spaced time checkpoints.
    pub checkpoints: Vec<u64>,
    /// Trials still alive at each checkpoint.
    pub survivors: Vec<u64>,
    pub trials: u64,
}

impl RwResult {
    pub fn survival_probabilities(&self) -> Vec<f64> {
        self.survivors
            .iter()
            .map(|&s| s as f64 / self.trials as f64)
            .collect()
    }
}

/// Estimates the non-intersection exponent of `l` walks: the survival
/// probability decays as t^(-zeta_l). Deterministic for a fixed seed,
/// independent of the worker count.
pub fn rw_nonintersection(
    l: usize,
    t_max: u64,
    trials: u64,
    seed: u64,
    window: Option<(f64, f64)>,
) -> Result<RwResult> {
    if !(2..=6).contains(&l) {
        return Err(McError::Domain(format!("rw_nonintersection: L in 2..=6 required, got {l}")));
    }
    if t_max < 8 || trials < 100 {
        return Err(McError::Domain(
            "rw_nonintersection: t_max >= 8 and trials >= 100 required".into(),
        ));
    }
    let deaths: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|trial| survival_time(l, t_max, &mut trial_rng(seed, trial)))
        .collect();

    let mut checkpoints = Vec::new();
    let mut t = 1u64;
    while t < t_max {
        checkpoints.push(t);
        t *= 2;
    }
    checkpoints.push(t_max);
    let survivors: Vec<u64> = checkpoints
        .iter()
        .map(|&cp| deaths.iter().filter(|&&d| d > cp).count() as u64)
        .collect();
    if survivors[1] == 0 {
        return Err(McError::InsufficientStatistics(
            "all trials dead before the second checkpoint".into(),
        ));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&cp, &s) in checkpoints.iter().zip(&survivors) {
        if s > 0 {
            xs.push(cp as f64);
            ys.push(s as f64 / trials as f64);
        }
    }
    let fit = fit_power_law(&xs, &ys, window, seed)?;
    Ok(RwResult {
        fit: FitResult { exponent: -fit.exponent, ..fit },
        checkpoints,
        survivors,
        trials,
    })
}
