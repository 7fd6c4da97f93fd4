use lowzero::analysis::explicit_formula_check;
use lowzero::characters::enumerate_characters;
use lowzero::extremal::{ExtremalParams, Sign};
use lowzero::lfunc::ZeroCache;

fn main() {
    let dir = std::env::temp_dir().join("lowzero-efdebug");
    let cache = ZeroCache::new(&dir).unwrap();
    let zeros = cache.ensure(5, 80.5, Default::default()).unwrap();
    let chars = enumerate_characters(5).unwrap();
    for sign in [Sign::Plus, Sign::Minus] {
        let p = ExtremalParams::new(1.0, 0.0, 0.5, sign).unwrap();
        for y in [20.0, 40.0, 60.0, 80.0] {
            let r = explicit_formula_check(&chars[1], &p, y, &zeros).unwrap();
            println!(
                "{sign:?} Y={y:5}: zero_side={:+.6} main={:+.6} gamma={:+.6} prime={:+.6} residual={:+.6} bound={:.4}",
                r.zero_side, r.main_term, r.gamma_term, r.prime_term, r.residual, r.tail_bound
            );
        }
    }
}
