use kpzcalc_mc::walks::rw_nonintersection;
fn main() {
    for seed in [1u64, 7, 42, 20260809, 555] {
        let r = rw_nonintersection(2, 4096, 20_000, seed, None).unwrap();
        println!("seed={seed}: zeta2 = {:.4} +- {:.4} window={:?}", r.fit.exponent, r.fit.stderr, r.fit.window);
    }
    for seed in [1u64, 42] {
        let r = rw_nonintersection(3, 4096, 20_000, seed, None).unwrap();
        println!("seed={seed}: zeta3 = {:.4} +- {:.4} (target 1.4583) window={:?}", r.fit.exponent, r.fit.stderr, r.fit.window);
    }
}
