use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use kpzcalc_mc::rng::trial_rng;

fn sqrt_upper(z: Complex64) -> Complex64 { let s = z.sqrt(); if s.im < 0.0 { -s } else { s } }

// Trace with a refinable partition: times, driving values.
struct Trace { ts: Vec<f64>, ws: Vec<f64>, pts: Vec<Complex64> }

fn point_at(ts: &[f64], ws: &[f64], idx: usize) -> Complex64 {
    // gamma(ts[idx]) via inverse slit maps over the partition [0..=idx].
    let mut z = Complex64::new(ws[idx], 0.0);
    for j in (0..=idx).rev() {
        let dt = ts[j] - if j == 0 { 0.0 } else { ts[j - 1] };
        let u = ws[j];
        let mut sh = z - u;
        if sh.im < 0.0 { sh.im = -sh.im; }
        z = u + sqrt_upper(sh * sh - Complex64::new(4.0 * dt, 0.0));
    }
    z
}

fn gen(kappa: f64, steps: usize, dt: f64, rng: &mut impl Rng) -> Trace {
    let normal = Normal::new(0.0, (kappa * dt).sqrt()).unwrap();
    let mut ts = Vec::new(); let mut ws = Vec::new();
    let mut w = 0.0;
    for k in 0..steps { w += normal.sample(rng); ts.push((k + 1) as f64 * dt); ws.push(w); }
    let pts = (0..steps).map(|k| point_at(&ts, &ws, k)).collect();
    Trace { ts, ws, pts }
}

fn refine(t: &mut Trace, eps: f64, kappa: f64, rng: &mut impl Rng, max_pts: usize) {
    loop {
        if t.pts.len() >= max_pts { return; }
        // find worst chord
        let mut worst = (0usize, 0.0f64);
        for i in 1..t.pts.len() {
            let g = (t.pts[i] - t.pts[i - 1]).norm();
            if g > worst.1 { worst = (i, g); }
        }
        if worst.1 <= eps { return; }
        let i = worst.0;
        let (t0, t1) = (t.ts[i - 1], t.ts[i]);
        let tm = 0.5 * (t0 + t1);
        let mean = 0.5 * (t.ws[i - 1] + t.ws[i]);
        let sd = (kappa * (t1 - t0) / 4.0).sqrt();
        let wm = mean + sd * Normal::new(0.0, 1.0).unwrap().sample(rng);
        t.ts.insert(i, tm);
        t.ws.insert(i, wm);
        let p = point_at(&t.ts, &t.ws, i);
        t.pts.insert(i, p);
    }
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let kappa: f64 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(6.0);
    let n_traces: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(100);
    let t0 = std::time::Instant::now();

    // ensemble with refinement
    let mut traces: Vec<Trace> = (0..n_traces).map(|i| {
        let mut rng = trial_rng(99, i as u64);
        let mut t = gen(kappa, 2000, 1e-4, &mut rng);
        let diam = t.pts.iter().map(|p| p.norm()).fold(0.0, f64::max);
        refine(&mut t, diam / 80.0, kappa, &mut rng, 12_000);
        t
    }).collect();
    let mean_pts = traces.iter().map(|t| t.pts.len()).sum::<usize>() / traces.len();
    println!("kappa={kappa} refined mean points = {mean_pts} [{:?}]", t0.elapsed());

    // box count with segments
    let diam: f64 = { let mut ds: Vec<f64> = traces.iter().map(|t| t.pts.iter().map(|p| p.norm()).fold(0.0, f64::max)).collect(); ds.sort_by(|a,b| a.partial_cmp(b).unwrap()); ds[ds.len()/2] };
    let scales: Vec<f64> = (0..12).map(|i| diam / 2.0 / 2f64.powf(i as f64 * 0.5)).collect();
    let mut mean_ln = vec![0.0; scales.len()];
    for t in &traces {
        for (si, &e) in scales.iter().enumerate() {
            let mut seg = std::collections::HashSet::new();
            for w in t.pts.windows(2) {
                let (a, b) = (w[0], w[1]);
                let len = (b - a).norm();
                let steps = (len / (e * 0.5)).ceil() as usize + 1;
                for k in 0..=steps {
                    let z = a + (b - a) * (k as f64 / steps as f64);
                    seg.insert(((z.re / e).floor() as i64, (z.im / e).floor() as i64));
                }
            }
            mean_ln[si] += (seg.len() as f64).ln();
        }
    }
    for x in mean_ln.iter_mut() { *x /= traces.len() as f64; }
    println!("target D = {}", 1.0 + kappa / 8.0);
    for i in 1..scales.len() {
        let dln = (scales[i - 1] / scales[i]).ln();
        println!("  eps=diam/{:>3.0}: slope={:.3}", diam / scales[i], (mean_ln[i] - mean_ln[i - 1]) / dln);
    }

    // winding anchored at interior growth points, forward unroll
    let bins: Vec<f64> = (0..14).map(|i| 0.01 * 2f64.powf(i as f64 * 0.5)).collect();
    let mut samples: Vec<Vec<f64>> = vec![Vec::new(); bins.len()];
    for t in &traces {
        for frac in [0.25, 0.5, 0.75] {
            let mid = (t.pts.len() as f64 * frac) as usize;
            let anchor = t.pts[mid];
            let cap = anchor.im; // stay below the boundary-distance scale
            let mut phi = 0.0; let mut prev: Option<Complex64> = None; let mut bin = 0usize;
            for m in (mid + 1)..t.pts.len() {
                let rel = t.pts[m] - anchor;
                if rel.norm() == 0.0 { continue; }
                match prev { None => phi = rel.arg(), Some(p) => phi += (rel / p).arg() }
                prev = Some(rel);
                while bin < bins.len() && rel.norm() >= bins[bin] {
                    if bins[bin] <= cap { samples[bin].push(phi); }
                    bin += 1;
                }
            }
        }
    }
    println!("winding (interior anchors, forward): target slope {kappa}");
    let mut prev: Option<(f64, f64)> = None;
    for (i, b) in bins.iter().enumerate() {
        if samples[i].len() < n_traces { continue; }
        let n = samples[i].len() as f64;
        let m = samples[i].iter().sum::<f64>() / n;
        let var = samples[i].iter().map(|x| (x - m) * (x - m)).sum::<f64>() / n;
        let slope = prev.map(|(lb, lv)| (var - lv) / (b.ln() - lb)).unwrap_or(f64::NAN);
        println!("  d={b:.4}: var={var:.3} n={} local_slope={slope:.2}", samples[i].len());
        prev = Some((b.ln(), var));
    }
    println!("total {:?}", t0.elapsed());
}
