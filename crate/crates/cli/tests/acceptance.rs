//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured quantities (visible under `-- --nocapture`). The zero cache
//! is shared across criteria and lives under the cargo tmp dir, so a full
//! run is cold-start reproducible.

use lowzero::analysis::{
    ensemble_stats, explicit_formula_check, prime_sum_mean, prime_sum_mean_direct,
    prime_sum_mean_square, required_height, tilde_s_ensemble,
};
use lowzero::bounds::{
    cor2_lower_bound, crossing_finder, hr_bound, thm1_bound, thm2_bound, thm2_integrals,
    zhao_constants, BoundId,
};
use lowzero::characters::enumerate_characters;
use lowzero::exec::{compensated_sum, ordered_map};
use lowzero::extremal::{fourier_r, l1_distance, selberg_r_real, ExtremalParams, Sign};
use lowzero::lfunc::{CachedZeros, SigmaLine, ZeroCache};
use lowzero::specialfn::{digamma, gamma_integral, hurwitz_zeta, log_gamma};
use lowzero::{C64, ExecMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::f64::consts::{PI, TAU};
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

fn cache() -> &'static ZeroCache {
    static CACHE: OnceLock<ZeroCache> = OnceLock::new();
    CACHE.get_or_init(|| {
        let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance-zero-cache");
        ZeroCache::new(dir).expect("cache dir")
    })
}

/// Serialize ensure() per modulus so concurrent criteria don't duplicate work.
fn warm(q: u64, height: f64) -> CachedZeros {
    static LOCKS: OnceLock<Mutex<HashMap<u64, Arc<Mutex<()>>>>> = OnceLock::new();
    let lock = {
        let mut map = LOCKS.get_or_init(Default::default).lock().unwrap();
        map.entry(q).or_default().clone()
    };
    let _guard = lock.lock().unwrap();
    cache()
        .ensure(q, height, ExecMode::default())
        .unwrap_or_else(|e| panic!("warm cache q={q} height={height}: {e}"))
}

const STATS_MODULI: [u64; 5] = [101, 211, 401, 601, 997];
const STATS_BETAS: [f64; 3] = [0.3, 0.5, 1.0];

fn warm_stats(q: u64) -> CachedZeros {
    let t_max = TAU / (q as f64).ln();
    let mut height = required_height(q, t_max, &STATS_BETAS);
    for _ in 0..8 {
        let z = warm(q, height);
        if (1..(q - 1) as u32).all(|j| z.lowest(j).is_some()) {
            return z;
        }
        height *= 1.4;
    }
    panic!("q={q}: lowest zero missing below height {height}");
}

/// Shared S̃ ensembles on the criterion-4/5 grid: (q, β) → (mean, mean square).
fn stats_grid() -> &'static Vec<(u64, f64, f64, f64)> {
    static GRID: OnceLock<Vec<(u64, f64, f64, f64)>> = OnceLock::new();
    GRID.get_or_init(|| {
        let mut rows = Vec::new();
        for &q in &STATS_MODULI {
            for &beta in &STATS_BETAS {
                let t = TAU * beta / (q as f64).ln();
                let tilde = tilde_s_ensemble(q, t, ExecMode::default()).unwrap();
                let mean = compensated_sum(&tilde) / (q - 2) as f64;
                let meansq = compensated_sum(&tilde.iter().map(|x| x * x).collect::<Vec<_>>())
                    / (q - 2) as f64;
                rows.push((q, beta, mean, meansq));
            }
        }
        rows
    })
}

#[test]
fn criterion_01_extremal_function_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x2026_0811);
    for case in 0..20 {
        let delta = rng.gen_range(0.3..1.6);
        let t0 = if rng.gen_bool(0.5) { 0.0 } else { 5.0 };
        let h = rng.gen_range(0.1..2.0);
        for sign in [Sign::Plus, Sign::Minus] {
            let p = ExtremalParams::new(delta, t0, h, sign).unwrap();
            // sandwich on a 10^4-point grid
            let reach = h + 20.0 / delta;
            let mut worst_slack = f64::INFINITY;
            for k in 0..10_000 {
                let x = t0 - reach + 2.0 * reach * (k as f64 + 0.213) / 10_000.0;
                let r = selberg_r_real(&p, x);
                let ind = p.indicator(x);
                let slack = match sign {
                    Sign::Plus => r - ind,
                    Sign::Minus => ind - r,
                };
                worst_slack = worst_slack.min(slack);
            }
            assert!(
                worst_slack >= -1e-12,
                "case {case} {sign:?} (Δ={delta:.3}, T0={t0}, h={h:.3}): sandwich slack {worst_slack:.3e}"
            );
            // L¹ distance = 1/Δ
            let l1 = l1_distance(&p).unwrap();
            assert!(
                (l1 - 1.0 / delta).abs() < 1e-6,
                "case {case} {sign:?}: L1 {l1} vs {}",
                1.0 / delta
            );
            // f̂(0) = 2h ± 1/Δ
            let f0 = fourier_r(&p, 0.0).unwrap().value;
            let expected = 2.0 * h + if sign == Sign::Plus { 1.0 } else { -1.0 } / delta;
            assert!(
                (f0.re - expected).abs() < 1e-6 && f0.im.abs() < 1e-6,
                "case {case} {sign:?}: f̂(0) = {f0} vs {expected}"
            );
            // compact support
            let f_out = fourier_r(&p, 1.25 * delta).unwrap().value.norm();
            assert!(f_out < 1e-6, "case {case} {sign:?}: |f̂(1.25Δ)| = {f_out:.2e}");
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed <= 120.0, "runtime {elapsed:.1}s exceeds 2 min");
    println!("ACCEPTANCE 1: PASS — 20 random (Δ,T0,h) pass sandwich/L¹/f̂(0)/support in {elapsed:.1}s");
}

#[test]
fn criterion_02_explicit_formula_suite() {
    let start = Instant::now();
    let moduli = [3u64, 5, 7, 11, 13, 31];
    for &q in &moduli {
        warm(q, 40.5);
    }
    let mut cases = Vec::new();
    for &q in &moduli {
        for delta in [0.5, 1.0] {
            for t in [0.3, 1.0] {
                for sign in [Sign::Plus, Sign::Minus] {
                    cases.push((q, delta, t, sign));
                }
            }
        }
    }
    assert_eq!(cases.len(), 48);
    let maxima = ordered_map(ExecMode::default(), cases, |(q, delta, t, sign)| {
        let zeros = warm(q, 40.5);
        let chars = enumerate_characters(q).unwrap();
        let params = ExtremalParams::new(delta, 0.0, t, sign).unwrap();
        let mut worst = 0.0f64;
        for chi in chars.iter().skip(1) {
            let rep = explicit_formula_check(chi, &params, 40.0, &zeros).unwrap();
            assert!(
                rep.residual.abs() <= rep.tail_bound,
                "q={q} j={} Δ={delta} T={t} {sign:?}: residual {:.3e} > bound {:.3e}",
                chi.j,
                rep.residual,
                rep.tail_bound
            );
            worst = worst.max(rep.residual.abs());
        }
        worst
    });
    let mut sorted = maxima.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = 0.5 * (sorted[23] + sorted[24]);
    assert!(median < 1e-2, "median |residual| = {median:.3e}");
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed <= 600.0, "runtime {elapsed:.1}s exceeds 10 min");
    println!(
        "ACCEPTANCE 2: PASS — 48 cases within tail bounds, median |residual| = {median:.2e}, {elapsed:.1}s"
    );
}

#[test]
fn criterion_03_zero_counting_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut worst = 0.0f64;
    for &q in &[5u64, 101] {
        let zeros = warm(q, 16.0);
        let chars = enumerate_characters(q).unwrap();
        // collision-free random heights in (0, 15]
        let mut heights = Vec::new();
        while heights.len() < 20 {
            let t = rng.gen_range(0.001..15.0f64);
            let clear = chars.iter().skip(1).all(|chi| {
                zeros
                    .window(chi.j, -15.5, 15.5)
                    .iter()
                    .all(|&g| (g.abs() - t).abs() > 1e-4)
            });
            if clear {
                heights.push(t);
            }
        }
        let devs = ordered_map(ExecMode::default(), heights, |t| {
            let line = SigmaLine::new(q, t).unwrap();
            let mut worst_here = 0.0f64;
            for chi in chars.iter().skip(1) {
                let tilde = line.s_arg(chi).unwrap().tilde_s;
                let gamma_term = gamma_integral(chi.a(), -t, t).unwrap() / (2.0 * PI);
                let rhs = (t / PI) * (q as f64 / PI).ln() + tilde + gamma_term;
                let n_scan = zeros.window(chi.j, -t, t).len() as f64;
                let dev = (n_scan - rhs).abs();
                assert!(
                    dev < 1e-6,
                    "q={q} j={} T={t}: N={n_scan} vs RHS={rhs}",
                    chi.j
                );
                worst_here = worst_here.max(dev);
            }
            worst_here
        });
        worst = worst.max(devs.into_iter().fold(0.0, f64::max));
    }
    println!("ACCEPTANCE 3: PASS — zero-counting identity holds per character, worst |N−RHS| = {worst:.2e}");
}

#[test]
fn criterion_04_mean_bound_empirical() {
    let grid = stats_grid();
    let mut worst_ratio = 0.0f64;
    for &(q, beta, mean, _) in grid {
        let t = TAU * beta / (q as f64).ln();
        let bound = thm1_bound(q, t).unwrap().value;
        assert!(
            mean.abs() <= bound,
            "q={q} β={beta}: |E[S̃]| = {} > bound {bound}",
            mean.abs()
        );
        assert!(
            (-0.6..=0.6).contains(&mean),
            "q={q} β={beta}: E[S̃] = {mean} outside [−0.6, 0.6]"
        );
        worst_ratio = worst_ratio.max(mean.abs() / bound);
    }
    println!(
        "ACCEPTANCE 4: PASS — |E[S̃]| ≤ thm1 bound on the 15-case grid (max ratio {worst_ratio:.3}), E[S̃] within ±0.6"
    );
}

#[test]
fn criterion_05_mean_square_bound_empirical() {
    let grid = stats_grid();
    let mut worst_ratio = 0.0f64;
    for &(q, beta, _, meansq) in grid {
        let lnq = (q as f64).ln();
        let t = TAU * beta / lnq;
        let delta = lnq / TAU;
        let (ip, im) = thm2_integrals(t, delta).unwrap();
        let bound = thm2_bound(q, t, delta, ip, im).unwrap().value;
        assert!(
            meansq <= bound,
            "q={q} β={beta}: E[S̃²] = {meansq} > bound {bound}"
        );
        worst_ratio = worst_ratio.max(meansq / bound);
    }
    // O(1) claim for T ≪ 1/log q
    let mut worst_small = 0.0f64;
    for &q in &STATS_MODULI {
        let t = 0.1 / (q as f64).ln();
        let tilde = tilde_s_ensemble(q, t, ExecMode::default()).unwrap();
        let meansq =
            compensated_sum(&tilde.iter().map(|x| x * x).collect::<Vec<_>>()) / (q - 2) as f64;
        assert!(meansq <= 5.0, "q={q}, T=0.1/log q: E[S̃²] = {meansq} > 5");
        worst_small = worst_small.max(meansq);
    }
    println!(
        "ACCEPTANCE 5: PASS — E[S̃²] ≤ thm2 bound (max ratio {worst_ratio:.3}); small-T mean square ≤ {worst_small:.3} ≤ 5"
    );
}

#[test]
fn criterion_06_proportion_bound_constants() {
    let start = Instant::now();
    let at_half = cor2_lower_bound(0.5).unwrap().value;
    assert!(at_half > 0.10, "cor2(1/2) = {at_half}");
    let near_quarter = cor2_lower_bound(0.25 + 1e-9).unwrap().value;
    assert!(near_quarter < 1e-6, "cor2(1/4⁺) = {near_quarter:.2e}");
    let crossing = crossing_finder(BoundId::Zhao, BoundId::Cor2, 0.51, 0.9).unwrap();
    assert!(
        (0.53..=0.58).contains(&crossing),
        "zhao/cor2 crossing at {crossing}"
    );
    let hr_root = crossing_finder(BoundId::Hr, BoundId::Zero, 0.51, 0.9).unwrap();
    assert!((hr_root - 0.633).abs() <= 1e-3, "hr root {hr_root}");
    let hr_limit = hr_bound(1e4).unwrap();
    assert!((hr_limit - 0.891).abs() <= 1e-3, "hr(1e4) = {hr_limit}");
    let (switch, constant) = zhao_constants();
    assert!((switch - 0.909).abs() <= 1e-3, "zhao switch {switch}");
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed <= 60.0, "runtime {elapsed:.1}s exceeds 1 min");
    println!(
        "ACCEPTANCE 6: PASS — cor2(0.5)={at_half:.4} (>10%), crossing {crossing:.3}≈0.55, hr root {hr_root:.4}, hr limit {hr_limit:.4}, zhao switch {switch:.4} (c*={constant:.4}), {elapsed:.1}s"
    );
}

#[test]
fn criterion_07_lowest_zero_trend() {
    let mut fitted_c: f64 = 0.0;
    let mut rows = Vec::new();
    for &q in &STATS_MODULI {
        let zeros = warm_stats(q);
        let t = TAU * 0.3 / (q as f64).ln();
        let stats = ensemble_stats(q, t, &[0.3], &zeros, ExecMode::default()).unwrap();
        assert!(
            stats.lowest_zero_min <= 0.30,
            "q={q}: min normalized lowest zero {}",
            stats.lowest_zero_min
        );
        assert!(
            stats.lowest_zero_max >= 0.20,
            "q={q}: max normalized lowest zero {}",
            stats.lowest_zero_max
        );
        assert_eq!(stats.central_order_mean, 0.0, "q={q}: central zero detected");
        // fitted constant for |min − 1/4| ≤ C/log q
        fitted_c = fitted_c.max((stats.lowest_zero_min - 0.25).abs() * (q as f64).ln());
        rows.push((q, stats.lowest_zero_min, stats.lowest_zero_max));
    }
    println!(
        "ACCEPTANCE 7: PASS — lowest-zero min/max per q: {rows:?}; fitted C in 1/4 ± C/log q envelope: {fitted_c:.2}"
    );
}

#[test]
fn criterion_08_prime_sum_consistency() {
    let mut worst_mean = 0.0f64;
    let mut worst_square = 0.0f64;
    for &q in &[5u64, 7, 11, 13, 31] {
        for sign in [Sign::Plus, Sign::Minus] {
            let p = ExtremalParams::new(1.0, 0.0, 0.5, sign).unwrap();
            let shortcut = prime_sum_mean(q, &p).unwrap();
            let direct = prime_sum_mean_direct(q, &p).unwrap();
            worst_mean = worst_mean.max((shortcut - direct).abs());
            assert!(
                (shortcut - direct).abs() < 1e-10,
                "q={q} {sign:?}: {shortcut} vs {direct}"
            );
        }
    }
    for &q in &[5u64, 11, 31] {
        let p = ExtremalParams::new(1.0, 0.0, 0.5, Sign::Plus).unwrap();
        let sq = prime_sum_mean_square(q, &p).unwrap();
        worst_square = worst_square.max((sq.direct - sq.pair_form).abs());
        assert!(
            (sq.direct - sq.pair_form).abs() < 1e-9,
            "q={q}: direct {} vs pair {}",
            sq.direct,
            sq.pair_form
        );
    }
    println!(
        "ACCEPTANCE 8: PASS — orthogonality shortcut within {worst_mean:.1e} of direct loop; pair expansion within {worst_square:.1e}"
    );
}

#[test]
fn criterion_09_special_function_golden_values() {
    let z2 = hurwitz_zeta(C64::new(2.0, 0.0), 1.0).unwrap();
    assert!((z2.re - PI * PI / 6.0).abs() < 1e-12 && z2.im.abs() < 1e-12);
    let z2h = hurwitz_zeta(C64::new(2.0, 0.0), 0.5).unwrap();
    assert!((z2h.re - PI * PI / 2.0).abs() < 1e-12);
    let dg = digamma(C64::new(1.0, 0.0)).unwrap();
    assert!((dg.re + 0.577_215_664_901_532_9).abs() < 1e-12);
    let lg = log_gamma(C64::new(0.5, 0.0)).unwrap();
    assert!((lg.re - 0.5 * PI.ln()).abs() < 1e-12);
    let chars = enumerate_characters(3).unwrap();
    let l1 = lowzero::lfunc::l_value(C64::new(1.0, 0.0), &chars[1]).unwrap();
    let expected = PI / (3.0 * 3f64.sqrt());
    assert!((l1.re - expected).abs() < 1e-10 && l1.im.abs() < 1e-10);
    println!("ACCEPTANCE 9: PASS — ζ(2,1), ζ(2,1/2), ψ(1), logΓ(1/2) at 1e−12; L(1,χ mod 3) = π/(3√3) at 1e−10");
}

#[test]
fn criterion_10_cli_determinism() {
    let bin = env!("CARGO_BIN_EXE_lowzero");
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("determinism-cache");
    let _ = std::fs::remove_dir_all(&dir);
    let run = || {
        let out = std::process::Command::new(bin)
            .args(["stats", "--q", "101", "--cache-dir"])
            .arg(&dir)
            .output()
            .expect("spawn lowzero");
        assert!(
            out.status.success(),
            "stats run failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };
    let _cold = run();
    let cache_bytes_1 = std::fs::read(dir.join("q000101.zeros")).unwrap();
    let warm_1 = run();
    let warm_2 = run();
    let cache_bytes_2 = std::fs::read(dir.join("q000101.zeros")).unwrap();
    assert_eq!(warm_1, warm_2, "warm-cache outputs differ between runs");
    assert_eq!(cache_bytes_1, cache_bytes_2, "cache file changed across warm runs");
    println!(
        "ACCEPTANCE 10: PASS — two warm-cache `stats --q 101` runs byte-identical ({} bytes of output)",
        warm_1.len()
    );
}
