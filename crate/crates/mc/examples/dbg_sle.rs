use kpzcalc_mc::sle::sle_ensemble;
use num_complex::Complex64;

fn main() {
    for kappa in [2.0f64, 6.0] {
        let traces = sle_ensemble(kappa, 300, 2000, 1e-4, 99).unwrap();
        // --- winding: var(phi(d)) with per-trace cap at Im(tip)/2 ---
        let d_min = 0.02;
        let bins: Vec<f64> = (0..14).map(|i| d_min * 2f64.powf(i as f64 * 0.5)).collect();
        let mut samples: Vec<Vec<f64>> = vec![Vec::new(); bins.len()];
        let mut samples_capped: Vec<Vec<f64>> = vec![Vec::new(); bins.len()];
        for t in &traces {
            let tip = *t.points.last().unwrap();
            let cap = tip.im / 2.0;
            let n = t.points.len();
            let mut phi = 0.0;
            let mut prev: Option<Complex64> = None;
            let mut bin = 0usize;
            for m in (0..n - 1).rev() {
                let rel = t.points[m] - tip;
                if rel.norm() == 0.0 { continue; }
                match prev { None => phi = rel.arg(), Some(p) => phi += (rel / p).arg() }
                prev = Some(rel);
                while bin < bins.len() && rel.norm() >= bins[bin] {
                    samples[bin].push(phi);
                    if bins[bin] <= cap { samples_capped[bin].push(phi); }
                    bin += 1;
                }
            }
        }
        println!("kappa={kappa}: winding bins");
        for (i, b) in bins.iter().enumerate() {
            let var = |v: &Vec<f64>| {
                if v.len() < 20 { return (f64::NAN, v.len()); }
                let m = v.iter().sum::<f64>() / v.len() as f64;
                (v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / v.len() as f64, v.len())
            };
            let (v1, n1) = var(&samples[i]);
            let (v2, n2) = var(&samples_capped[i]);
            println!("  d={b:.4} ln d={:+.3}: var={v1:.3} (n={n1})  capped var={v2:.3} (n={n2})", b.ln());
        }
        // --- dimension: point vs segment box counting, local slopes ---
        let diam: f64 = { let mut ds: Vec<f64> = traces.iter().map(|t| t.points.iter().map(|p| p.norm()).fold(0.0, f64::max)).collect(); ds.sort_by(|a,b| a.partial_cmp(b).unwrap()); ds[ds.len()/2] };
        let spacing: f64 = { let t = &traces[0]; let mut g: Vec<f64> = t.points.windows(2).map(|w| (w[1]-w[0]).norm()).collect(); g.sort_by(|a,b| a.partial_cmp(b).unwrap()); g[g.len()/2] };
        println!("  diam={diam:.3} med_spacing={spacing:.4}");
        let scales: Vec<f64> = (0..12).map(|i| diam / 2.0 / 2f64.powf(i as f64 * 0.5)).collect();
        let mut mean_pts = vec![0.0; scales.len()];
        let mut mean_seg = vec![0.0; scales.len()];
        for t in &traces {
            for (si, &e) in scales.iter().enumerate() {
                let mut pts = std::collections::HashSet::new();
                let mut seg = std::collections::HashSet::new();
                for w in t.points.windows(2) {
                    let (a, b) = (w[0], w[1]);
                    pts.insert(((a.re / e).floor() as i64, (a.im / e).floor() as i64));
                    let len = (b - a).norm();
                    let steps = (len / (e * 0.5)).ceil() as usize + 1;
                    for k in 0..=steps {
                        let z = a + (b - a) * (k as f64 / steps as f64);
                        seg.insert(((z.re / e).floor() as i64, (z.im / e).floor() as i64));
                    }
                }
                mean_pts[si] += (pts.len() as f64).ln();
                mean_seg[si] += (seg.len() as f64).ln();
            }
        }
        for v in [&mut mean_pts, &mut mean_seg] { for x in v.iter_mut() { *x /= traces.len() as f64; } }
        println!("  eps ln-slopes (pts | segments): target {}", 1.0 + kappa / 8.0);
        for i in 1..scales.len() {
            let dln = (scales[i - 1] / scales[i]).ln();
            println!(
                "  eps={:.4} (diam/{:.0}): slope_pts={:.3} slope_seg={:.3}",
                scales[i], diam / scales[i],
                (mean_pts[i] - mean_pts[i - 1]) / dln,
                (mean_seg[i] - mean_seg[i - 1]) / dln
            );
        }
    }
}
