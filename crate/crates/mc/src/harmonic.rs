//! Harmonic measure of a percolation cluster by first-hit random walkers.
//!
//! Walkers start uniformly on a circle at twice the cluster radius, are
//! reflected at an outer circle (default four radii, a documented
//! approximation of launching from infinity), and are absorbed on their first
//! step onto an occupied site. Far from the cluster the lattice walk is
//! replaced by continuous circle jumps sized below the distance to the
//! nearest occupied site; near the cluster the walk is exact, so absorption
//! statistics are unchanged beyond discretization.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{McError, Result};
use crate::fit::{fit_power_law, FitResult};
use crate::perc::{embed, step, PercCluster, Site};
use crate::rng::trial_rng;

/// Cell size of the coarse occupancy grid used for distance queries.
const CELL: f64 = 4.0;
/// Below this distance to the cluster the walk is a plain lattice walk.
const LATTICE_BAND: f64 = 6.0;
/// Lattice steps taken before re-probing the distance to the cluster.
const LATTICE_BURST: usize = 16;

/// Flat bitmap over a centered square index box.
struct Bitmap {
    half: i32,
    width: i32,
    bits: Vec<u64>,
}

impl Bitmap {
    fn new(half: i32) -> Bitmap {
        let width = 2 * half + 1;
        Bitmap {
            half,
            width,
            bits: vec![0; (width as usize * width as usize).div_ceil(64)],
        }
    }

    #[inline]
    fn index(&self, x: i32, y: i32) -> Option<usize> {
        if x.abs() > self.half || y.abs() > self.half {
            return None;
        }
        Some((y + self.half) as usize * self.width as usize + (x + self.half) as usize)
    }

    fn set(&mut self, x: i32, y: i32) {
        let i = self.index(x, y).expect("site inside bitmap");
        self.bits[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn get(&self, x: i32, y: i32) -> bool {
        match self.index(x, y) {
            Some(i) => self.bits[i / 64] >> (i % 64) & 1 == 1,
            None => false,
        }
    }
}

/// First-hit counts on cluster sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HitMap {
    pub hits: BTreeMap<Site, u64>,
    pub absorbed: u64,
    pub discarded: u64,
}

impl HitMap {
    pub fn total_hits(&self) -> u64 {
        self.hits.values().sum()
    }
}

struct Geometry {
    occupied: Bitmap,
    cells: Bitmap,
    cluster_radius: f64,
}

impl Geometry {
    fn new(cluster: &PercCluster) -> Self {
        let mut span = 1i32;
        for &s in &cluster.occupied {
            span = span.max(s.0.abs()).max(s.1.abs());
        }
        let mut occupied = Bitmap::new(span + 2);
        let mut cell_span = 1i32;
        for &s in &cluster.occupied {
            let (px, py) = embed(s);
            cell_span = cell_span
                .max((px / CELL).floor().abs() as i32)
                .max((py / CELL).floor().abs() as i32);
        }
        let mut cells = Bitmap::new(cell_span + 2);
        for &s in &cluster.occupied {
            occupied.set(s.0, s.1);
            let (px, py) = embed(s);
            cells.set((px / CELL).floor() as i32, (py / CELL).floor() as i32);
        }
        Geometry {
            occupied,
            cells,
            cluster_radius: cluster.max_radius,
        }
    }

    #[inline]
    fn is_occupied(&self, s: Site) -> bool {
        self.occupied.get(s.0, s.1)
    }

    /// Conservative lower bound on the distance from `p` to any occupied site.
    fn clearance(&self, p: (f64, f64)) -> f64 {
        let norm = (p.0 * p.0 + p.1 * p.1).sqrt();
        let outside = norm - self.cluster_radius;
        if outside > 3.0 * CELL {
            return outside - 1.0;
        }
        let cx = (p.0 / CELL).floor() as i32;
        let cy = (p.1 / CELL).floor() as i32;
        for k in 0..=4i32 {
            let mut found = false;
            'ring: for dx in -k..=k {
                for dy in -k..=k {
                    if dx.abs().max(dy.abs()) == k && self.cells.get(cx + dx, cy + dy) {
                        found = true;
                        break 'ring;
                    }
                }
            }
            if found {
                return ((k - 1).max(0) as f64) * CELL;
            }
        }
        4.0 * CELL
    }
}

fn nearest_site(p: (f64, f64)) -> Site {
    // Invert the axial embedding and pick the closest of the rounding
    // candidates.
    let y = p.1 / (3f64.sqrt() / 2.0);
    let x = p.0 - 0.5 * y;
    let mut best = (x.round() as i32, y.round() as i32);
    let mut best_d = f64::INFINITY;
    for dx in -1..=1 {
        for dy in -1..=1 {
            let s = (x.round() as i32 + dx, y.round() as i32 + dy);
            let (ex, ey) = embed(s);
            let d = (ex - p.0) * (ex - p.0) + (ey - p.1) * (ey - p.1);
            if d < best_d {
                best_d = d;
                best = s;
            }
        }
    }
    best
}

/// One walker; returns the absorption site or None when the budget runs out.
fn run_walker(
    geo: &Geometry,
    outer_radius: f64,
    launch_radius: f64,
    budget: u64,
    rng: &mut impl Rng,
) -> Option<Site> {
    let theta = rng.random_range(0.0..std::f64::consts::TAU);
    let mut p = (launch_radius * theta.cos(), launch_radius * theta.sin());
    let mut work = 0u64;
    loop {
        let clearance = geo.clearance(p);
        if clearance >= LATTICE_BAND {
            // Continuous jump strictly inside the empty disk around p.
            let r = clearance - 2.0;
            let phi = rng.random_range(0.0..std::f64::consts::TAU);
            p = (p.0 + r * phi.cos(), p.1 + r * phi.sin());
            let norm = (p.0 * p.0 + p.1 * p.1).sqrt();
            if norm > outer_radius {
                // Mirror back inside the reflecting circle.
                let scale = (2.0 * outer_radius - norm) / norm;
                p = (p.0 * scale, p.1 * scale);
            }
            work += 1;
        } else {
            let mut site = nearest_site(p);
            if geo.is_occupied(site) {
                // Snapping cannot reach an occupied site from clearance >= 1,
                // but guard against it to keep the measure on the boundary.
                return Some(site);
            }
            for _ in 0..LATTICE_BURST {
                let next = step(site, rng.random_range(0..6u8));
                work += 1;
                if geo.is_occupied(next) {
                    return Some(next);
                }
                site = next;
            }
            p = embed(site);
        }
        if work >= budget {
            return None;
        }
    }
}

/// Releases `walkers` first-hit walkers against the cluster; deterministic
/// for a fixed seed, independent of the worker count.
pub fn harmonic_measure(
    cluster: &PercCluster,
    walkers: u64,
    seed: u64,
    outer_ratio: f64,
    budget_per_walker: u64,
) -> Result<HitMap> {
    if walkers == 0 {
        return Err(McError::Domain("harmonic_measure: walkers >= 1 required".into()));
    }
    if outer_ratio <= 2.0 {
        return Err(McError::Domain(
            "harmonic_measure: the reflecting circle must sit beyond the launch circle".into(),
        ));
    }
    let geo = Geometry::new(cluster);
    let launch = 2.0 * cluster.max_radius.max(2.0);
    let outer = outer_ratio / 2.0 * launch;
    let sites: Vec<Option<Site>> = (0..walkers)
        .into_par_iter()
        .map(|w| run_walker(&geo, outer, launch, budget_per_walker, &mut trial_rng(seed, w)))
        .collect();
    let mut hits = BTreeMap::new();
    let mut absorbed = 0;
    let mut discarded = 0;
    for site in sites {
        match site {
            Some(s) => {
                *hits.entry(s).or_insert(0) += 1;
                absorbed += 1;
            }
            None => discarded += 1,
        }
    }
    Ok(HitMap { hits, absorbed, discarded })
}

/// One fitted moment of the measure.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentEstimate {
    pub n: f64,
    /// Fit of ln Z_n against ln r; the exponent estimates tau(n).
    pub tau: FitResult,
    /// tau/(n-1); None at the normalization point n = 1.
    pub d: Option<f64>,
}

/// Half-octave coarse-graining radii in [4, cluster_radius/4].
pub fn moment_scales(cluster_radius: f64) -> Result<Vec<f64>> {
    let mut scales = Vec::new();
    let mut r = 4.0;
    while r <= cluster_radius / 4.0 {
        scales.push(r);
        r *= std::f64::consts::SQRT_2;
    }
    if scales.len() < 5 {
        return Err(McError::InsufficientRange(format!(
            "moment_scales: only {} half-octave scales in [4, radius/4]",
            scales.len()
        )));
    }
    Ok(scales)
}

/// Coarse-grained moment sums `Z_n(r)` over square boxes of side `r`.
pub fn moment_sums(hits: &HitMap, n: f64, scales: &[f64]) -> Vec<f64> {
    let total = hits.total_hits() as f64;
    scales
        .iter()
        .map(|&r| {
            let mut boxes: BTreeMap<(i64, i64), f64> = BTreeMap::new();
            for (&site, &count) in &hits.hits {
                let (px, py) = embed(site);
                let key = ((px / r).floor() as i64, (py / r).floor() as i64);
                *boxes.entry(key).or_insert(0.0) += count as f64 / total;
            }
            boxes.values().map(|&p| p.powf(n)).sum()
        })
        .collect()
}

/// Pools the moments of several clusters: the per-cluster `ln Z_n(r)` curves
/// are averaged (the realization average of the moment sums) before the fit.
pub fn pooled_moments(
    runs: &[(HitMap, f64)],
    n_list: &[f64],
    seed: u64,
) -> Result<Vec<MomentEstimate>> {
    if runs.is_empty() {
        return Err(McError::InsufficientStatistics("pooled_moments: no clusters".into()));
    }
    let min_radius = runs.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let scales = moment_scales(min_radius)?;
    let window = Some((scales[0], *scales.last().unwrap()));
    n_list
        .iter()
        .map(|&n| {
            let mean_ln: Vec<f64> = (0..scales.len())
                .map(|si| {
                    runs.iter()
                        .map(|(hits, _)| moment_sums(hits, n, &scales)[si].ln())
                        .sum::<f64>()
                        / runs.len() as f64
                })
                .collect();
            let ys: Vec<f64> = mean_ln.iter().map(|l| l.exp()).collect();
            let fit = fit_power_law(&scales, &ys, window, seed)?;
            Ok(MomentEstimate {
                n,
                tau: fit,
                d: if (n - 1.0).abs() > 1e-12 { Some(fit.exponent / (n - 1.0)) } else { None },
            })
        })
        .collect()
}

/// Fits the moment exponents tau(n) over a dyadic range of box sizes.
pub fn harmonic_moments(
    hits: &HitMap,
    cluster_radius: f64,
    n_list: &[f64],
    seed: u64,
) -> Result<Vec<MomentEstimate>> {
    if hits.absorbed == 0 {
        return Err(McError::InsufficientStatistics("no walkers were absorbed".into()));
    }
    // Half-octave box sizes, clear of the lattice mesh and of the cluster
    // macroscale.
    let scales = moment_scales(cluster_radius)?;
    let window = Some((scales[0], *scales.last().unwrap()));
    n_list
        .iter()
        .map(|&n| {
            let zs = moment_sums(hits, n, &scales);
            let fit = fit_power_law(&scales, &zs, window, seed)?;
            Ok(MomentEstimate {
                n,
                tau: fit,
                d: if (n - 1.0).abs() > 1e-12 { Some(fit.exponent / (n - 1.0)) } else { None },
            })
        })
        .collect()
}
