use kpzcalc_mc::harmonic::{harmonic_measure, moment_sums};
use kpzcalc_mc::fit::fit_power_law;
use kpzcalc_mc::perc::{grow_cluster, GrowthOutcome, PercCluster};
use kpzcalc_mc::rng::trial_rng;

fn big_clusters(count: usize, radius: f64, seed: u64) -> Vec<PercCluster> {
    let mut out = Vec::new();
    for trial in 0..100_000u64 {
        if out.len() >= count { break; }
        let mut rng = trial_rng(seed, trial);
        if let GrowthOutcome::Died(c) = grow_cluster(radius, &mut rng) {
            if c.max_radius >= 0.75 * radius { out.push(c); }
        }
    }
    out
}

fn run(n_clusters: usize, walkers_each: u64, seed: u64) {
    let clusters = big_clusters(n_clusters, 256.0, seed);
    let n_list = [0.0, 2.0, 3.0, 4.0];
    let mut scales = Vec::new();
    let mut r = 2.0;
    while r <= 48.0 { scales.push(r); r *= std::f64::consts::SQRT_2; }
    let mut all_lnz: Vec<Vec<Vec<f64>>> = Vec::new();
    for (i, c) in clusters.iter().enumerate() {
        let hits = harmonic_measure(c, walkers_each, seed.wrapping_add(i as u64), 4.0, 2_000_000).unwrap();
        all_lnz.push(n_list.iter().map(|&n| moment_sums(&hits, n, &scales).iter().map(|z| z.ln()).collect()).collect());
    }
    print!("clusters={n_clusters} walkers_each={walkers_each} seed={seed}: ");
    for (ni, &n) in n_list.iter().enumerate() {
        for (lo, hi) in [(2.0, 48.0), (4.0, 48.0)] {
            let ys: Vec<f64> = (0..scales.len()).map(|si| {
                (all_lnz.iter().map(|c| c[ni][si]).sum::<f64>() / all_lnz.len() as f64).exp()
            }).collect();
            let fit = fit_power_law(&scales, &ys, Some((lo, hi)), seed).unwrap();
            if (n - 1.0).abs() > 1e-9 {
                print!("D{}[{}]={:.3} ", n as i32, lo as i32, fit.exponent / (n - 1.0));
            }
        }
    }
    println!();
}

fn main() {
    for seed in [777u64, 101, 2024] {
        run(4, 50_000, seed);
        run(8, 25_000, seed);
    }
    println!("targets: D0=1.333 D2=0.917 D3=0.869 D4=0.837");
}
