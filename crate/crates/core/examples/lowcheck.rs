use lowzero::characters::enumerate_characters;
use lowzero::lfunc::{HardyZ, ZeroCache, s_arg};
use lowzero::specialfn::gamma_integral;
use std::f64::consts::PI;

fn main() {
    let dir = std::env::temp_dir().join("lowzero-lowcheck");
    let cache = ZeroCache::new(&dir).unwrap();
    let zeros = cache.ensure(101, 2.0, Default::default()).unwrap();
    let chars = enumerate_characters(101).unwrap();
    // find the characters with the smallest lowest zeros
    let mut lows: Vec<(f64, u32)> = (1..100u32)
        .map(|j| (zeros.lowest(j).unwrap_or(f64::INFINITY), j))
        .collect();
    lows.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    for &(low, j) in lows.iter().take(3) {
        println!("j={j}: lowest |gamma| = {low:.9e}  (normalized {:.6e})", low * 101f64.ln() / (2.0*PI));
        let chi = &chars[j as usize];
        let z = HardyZ::new(chi).unwrap();
        for t in [-2.0*low, -low, -0.5*low, 0.0, 0.5*low, low, 2.0*low, 10.0*low] {
            let (v, _) = z.eval_with_diagnostic(t).unwrap();
            let vn = z.eval_normalized(t).unwrap();
            println!("   Z({t:+.4e}) = {v:+.6e}   normalized {vn:+.6e}");
        }
        // where is this zero really? refine: count in window via formula
        let t = 0.1f64;
        let a = s_arg(t, chi).unwrap();
        let gamma_term = gamma_integral(chi.a(), -t, t).unwrap() / (2.0 * PI);
        let n = (t / PI) * (101f64 / PI).ln() + a.tilde_s + gamma_term;
        println!("   N(0.1) by formula = {n:.9}");
    }
}
