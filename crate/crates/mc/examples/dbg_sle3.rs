use kpzcalc_mc::sle::sle_ensemble;
use num_complex::Complex64;

fn main() {
    for kappa in [2.0f64, 8.0/3.0, 6.0] {
        let t0 = std::time::Instant::now();
        let traces = sle_ensemble(kappa, 300, 2000, 1e-4, 99).unwrap();
        let diam: f64 = { let mut ds: Vec<f64> = traces.iter().map(|t| t.points.iter().map(|p| p.norm()).fold(0.0, f64::max)).collect(); ds.sort_by(|a,b| a.partial_cmp(b).unwrap()); ds[ds.len()/2] };

        // Turning-angle winding: subsample at spatial mesh eps, total turning.
        println!("kappa={kappa:.3} diam={diam:.3} — turning winding, target slope {kappa:.3}");
        let scales: Vec<f64> = (0..10).map(|i| diam / 4.0 / 2f64.powf(i as f64 * 0.5)).collect();
        let mut vars = Vec::new();
        for &e in &scales {
            let mut thetas = Vec::new();
            for t in &traces {
                // subsample: greedy mesh-e polyline
                let mut sub: Vec<Complex64> = vec![t.points[0]];
                for &p in &t.points[1..] {
                    if (p - *sub.last().unwrap()).norm() >= e { sub.push(p); }
                }
                if sub.len() < 8 { continue; }
                let mut theta = 0.0;
                for w in sub.windows(3) {
                    let d1 = w[1] - w[0];
                    let d2 = w[2] - w[1];
                    theta += (d2 / d1).arg();
                }
                thetas.push(theta);
            }
            let n = thetas.len() as f64;
            let m = thetas.iter().sum::<f64>() / n;
            let var = thetas.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / n;
            vars.push(var);
            println!("  eps=diam/{:>4.0}: var={var:8.3} n={}", diam / e, thetas.len());
        }
        for i in 1..scales.len() {
            let slope = (vars[i] - vars[i - 1]) / (scales[i - 1] / scales[i]).ln();
            println!("  local slope @ eps=diam/{:>4.0}: {slope:.2}", diam / scales[i]);
        }
        println!("  [{:?}]", t0.elapsed());
    }
}
