//! Critical site percolation on the triangular lattice (p_c = 1/2 exactly)
//! with frontier growth from a seed and hull extraction on the dual
//! hexagonal lattice.
//!
//! Sites live on axial coordinates; the six neighbor offsets are listed
//! counterclockwise. Each site is the face of a hexagon of the dual lattice,
//! and every dual edge crosses one lattice edge, so an occupied/empty lattice
//! edge is exactly one hull candidate.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{McError, Result};
use crate::fit::{fit_power_law, FitResult};
use crate::rng::trial_rng;

pub type Site = (i32, i32);

/// Neighbor offsets in counterclockwise order.
pub const DIRS: [Site; 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

/// Euclidean embedding of an axial site.
pub fn embed(site: Site) -> (f64, f64) {
    let (x, y) = (site.0 as f64, site.1 as f64);
    (x + 0.5 * y, y * 3f64.sqrt() / 2.0)
}

fn dist2(site: Site) -> f64 {
    let (px, py) = embed(site);
    px * px + py * py
}

/// A directed hull element: an occupied site and the direction toward the
/// empty site across the crossed lattice edge.
pub type Dart = (Site, u8);

#[derive(Debug, Clone)]
pub struct PercCluster {
    pub occupied: HashSet<Site>,
    /// Decided occupancy, including the empty test sites around the cluster.
    pub decided: HashMap<Site, bool>,
    /// Ordered closed walk on the dual hexagonal lattice, as darts.
    pub hull: Vec<Dart>,
    /// Gyration radius of the occupied set in the Euclidean embedding.
    pub gyration_radius: f64,
    /// Largest Euclidean distance of an occupied site from the seed.
    pub max_radius: f64,
}

impl PercCluster {
    pub fn size(&self) -> usize {
        self.occupied.len()
    }

    pub fn hull_len(&self) -> usize {
        self.hull.len()
    }

    pub fn hull_sites(&self) -> HashSet<Site> {
        self.hull.iter().map(|&(s, _)| s).collect()
    }

    /// Every hull dart must separate an occupied site from an empty one.
    pub fn hull_is_interface(&self) -> bool {
        self.hull.iter().all(|&(s, d)| {
            let u = step(s, d);
            self.occupied.contains(&s) && !self.occupied.contains(&u)
        })
    }
}

pub fn step(site: Site, dir: u8) -> Site {
    let d = DIRS[dir as usize];
    (site.0 + d.0, site.1 + d.1)
}

pub enum GrowthOutcome {
    /// The frontier died; the cluster is complete.
    Died(PercCluster),
    /// An occupied site fell outside the growth cap; discarded.
    Capped,
}

/// Grows one critical cluster from an occupied seed at the origin, deciding
/// each touched site once with probability 1/2, until the frontier dies or
/// an occupied site leaves the cap radius.
pub fn grow_cluster(radius_cap: f64, rng: &mut impl Rng) -> GrowthOutcome {
    let cap2 = radius_cap * radius_cap;
    let seed: Site = (0, 0);
    let mut decided: HashMap<Site, bool> = HashMap::new();
    decided.insert(seed, true);
    let mut occupied: HashSet<Site> = HashSet::new();
    occupied.insert(seed);
    // Growth order; float reductions below run over it so that results do
    // not depend on hash iteration order.
    let mut sites: Vec<Site> = vec![seed];
    let mut queue: VecDeque<Site> = VecDeque::new();
    queue.push_back(seed);
    let mut max_d2 = 0.0f64;

    while let Some(site) = queue.pop_front() {
        for dir in 0..6u8 {
            let next = step(site, dir);
            let open = *decided.entry(next).or_insert_with(|| rng.random_bool(0.5));
            if open && occupied.insert(next) {
                let d2 = dist2(next);
                if d2 > cap2 {
                    return GrowthOutcome::Capped;
                }
                max_d2 = max_d2.max(d2);
                sites.push(next);
                queue.push_back(next);
            }
        }
    }

    let n = sites.len() as f64;
    let (mut cx, mut cy) = (0.0, 0.0);
    for &s in &sites {
        let (px, py) = embed(s);
        cx += px;
        cy += py;
    }
    cx /= n;
    cy /= n;
    let mut r2 = 0.0;
    for &s in &sites {
        let (px, py) = embed(s);
        r2 += (px - cx) * (px - cx) + (py - cy) * (py - cy);
    }
    let hull = walk_hull(&occupied);
    GrowthOutcome::Died(PercCluster {
        occupied,
        decided,
        hull,
        gyration_radius: (r2 / n).sqrt(),
        max_radius: max_d2.sqrt(),
    })
}

/// Traces the outer hull as a left-turning walk on the dual hexagonal
/// lattice: from a crossed edge (occupied `s`, empty `u`), the third site of
/// the counterclockwise face decides whether the interface turns onto it or
/// continues around `s`. Starts at the rightmost occupied site, whose +x
/// neighbor is necessarily outside, and stops on return to the start dart.
pub fn walk_hull(occupied: &HashSet<Site>) -> Vec<Dart> {
    let &start_site = occupied
        .iter()
        .max_by(|a, b| {
            let (ax, ay) = embed(**a);
            let (bx, by) = embed(**b);
            (ax, ay).partial_cmp(&(bx, by)).unwrap()
        })
        .expect("non-empty cluster");
    let start: Dart = (start_site, 0);
    debug_assert!(!occupied.contains(&step(start_site, 0)));

    let mut hull = Vec::new();
    let mut dart = start;
    loop {
        hull.push(dart);
        let (s, d) = dart;
        let third = step(s, (d + 1) % 6);
        dart = if occupied.contains(&third) {
            (third, (d + 5) % 6)
        } else {
            (s, (d + 1) % 6)
        };
        if dart == start {
            break;
        }
    }
    hull
}

/// Per-cluster statistics entering the hull-dimension fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterStat {
    pub gyration_radius: f64,
    pub max_radius: f64,
    pub hull_len: usize,
    pub size: usize,
}

#[derive(Debug, Clone)]
pub struct PercEnsemble {
    pub stats: Vec<ClusterStat>,
    /// Clusters discarded for dying below the minimum radius.
    pub resampled_small: u64,
    /// Clusters discarded for outgrowing the cap while alive.
    pub capped: u64,
    /// Trial indices of the kept clusters, for re-deriving any one of them.
    pub kept_trials: Vec<u64>,
}

/// Grows completed clusters until `count` of them have maximum radius in
/// [radius * min_frac, radius]; clusters that die smaller are resampled and
/// clusters still alive at the cap are discarded, both counted. Kept clusters
/// are the first `count` by trial index, so the ensemble does not depend on
/// the worker count.
pub fn perc_ensemble(count: usize, radius: f64, min_frac: f64, seed: u64) -> PercEnsemble {
    let mut stats = Vec::with_capacity(count);
    let mut kept_trials = Vec::with_capacity(count);
    let mut resampled_small = 0;
    let mut capped = 0;
    let min_radius = radius * min_frac;
    let batch = 256;
    let mut next_trial = 0u64;
    while stats.len() < count {
        let outcomes: Vec<(u64, Option<ClusterStat>, bool)> = (next_trial..next_trial + batch)
            .into_par_iter()
            .map(|trial| {
                let mut rng = trial_rng(seed, trial);
                match grow_cluster(radius, &mut rng) {
                    GrowthOutcome::Capped => (trial, None, true),
                    GrowthOutcome::Died(cluster) => {
                        if cluster.max_radius >= min_radius {
                            (
                                trial,
                                Some(ClusterStat {
                                    gyration_radius: cluster.gyration_radius,
                                    max_radius: cluster.max_radius,
                                    hull_len: cluster.hull_len(),
                                    size: cluster.size(),
                                }),
                                false,
                            )
                        } else {
                            (trial, None, false)
                        }
                    }
                }
            })
            .collect();
        for (trial, stat, was_capped) in outcomes {
            if stats.len() >= count {
                break;
            }
            match stat {
                Some(s) => {
                    stats.push(s);
                    kept_trials.push(trial);
                }
                None if was_capped => capped += 1,
                None => resampled_small += 1,
            }
        }
        next_trial += batch;
    }
    PercEnsemble { stats, resampled_small, capped, kept_trials }
}

/// Hull-length versus gyration-radius exponent across a cluster ensemble.
pub fn hull_dimension(stats: &[ClusterStat], seed: u64) -> Result<FitResult> {
    if stats.len() < 5 {
        return Err(McError::InsufficientStatistics(format!(
            "hull_dimension: need at least 5 clusters, got {}",
            stats.len()
        )));
    }
    let xs: Vec<f64> = stats.iter().map(|s| s.gyration_radius).collect();
    let ys: Vec<f64> = stats.iter().map(|s| s.hull_len as f64).collect();
    let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().cloned().fold(0.0, f64::max);
    fit_power_law(&xs, &ys, Some((lo, hi)), seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_site_hull_is_hexagon() {
        let mut occ = HashSet::new();
        occ.insert((0, 0));
        let hull = walk_hull(&occ);
        assert_eq!(hull.len(), 6);
        let sites: HashSet<Site> = hull.iter().map(|&(s, _)| s).collect();
        assert_eq!(sites.len(), 1);
    }

    #[test]
    fn domino_hull_has_ten_edges() {
        let mut occ = HashSet::new();
        occ.insert((0, 0));
        occ.insert((1, 0));
        assert_eq!(walk_hull(&occ).len(), 10);
    }

    #[test]
    fn all_two_by_two_patterns_terminate_closed() {
        // Every nonempty occupancy pattern of a 2x2 block yields a closed,
        // non-repeating dart walk around the component of its rightmost site.
        let block = [(0, 0), (1, 0), (0, 1), (1, 1)];
        for mask in 1u32..16 {
            let occ: HashSet<Site> = block
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &s)| s)
                .collect();
            let hull = walk_hull(&occ);
            assert!(!hull.is_empty(), "mask {mask}");
            let unique: HashSet<Dart> = hull.iter().copied().collect();
            assert_eq!(unique.len(), hull.len(), "mask {mask}: dart repeated");
            for &(s, d) in &hull {
                assert!(occ.contains(&s));
                assert!(!occ.contains(&step(s, d)), "mask {mask}: dart not on interface");
            }
        }
    }

    #[test]
    fn grown_hulls_are_interfaces() {
        // The one-arm probability decays only like r^(-5/48), so a sizable
        // fraction of seeds outgrows any cap; the dying ones must all give
        // closed interface walks.
        let mut grown = 0;
        for trial in 0..200 {
            let mut rng = trial_rng(5, trial);
            if let GrowthOutcome::Died(cluster) = grow_cluster(64.0, &mut rng) {
                assert!(cluster.hull_is_interface());
                let unique: HashSet<Dart> = cluster.hull.iter().copied().collect();
                assert_eq!(unique.len(), cluster.hull.len());
                grown += 1;
            }
        }
        assert!(grown > 30, "got {grown} completed clusters of 200");
    }

    #[test]
    fn growth_is_deterministic() {
        let grow = |trial| {
            let mut rng = trial_rng(9, trial);
            match grow_cluster(48.0, &mut rng) {
                GrowthOutcome::Died(c) => Some((c.size(), c.hull_len(), c.gyration_radius)),
                GrowthOutcome::Capped => None,
            }
        };
        for trial in 0..50 {
            assert_eq!(grow(trial), grow(trial));
        }
    }

    #[test]
    fn ensemble_respects_radius_band() {
        let ens = perc_ensemble(20, 24.0, 0.25, 31);
        assert_eq!(ens.stats.len(), 20);
        for s in &ens.stats {
            assert!(s.max_radius >= 6.0 && s.max_radius <= 24.0);
        }
        assert!(ens.resampled_small > 0);
        // Deterministic replay.
        let again = perc_ensemble(20, 24.0, 0.25, 31);
        assert_eq!(ens.kept_trials, again.kept_trials);
    }

    #[test]
    fn hull_dimension_needs_data() {
        assert!(hull_dimension(&[], 0).is_err());
    }
}
