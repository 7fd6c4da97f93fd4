//! Property tests for the structural invariants: character multiplicativity,
//! the Hurwitz recurrence in a, the extremal sandwich, and cache round-trips.

use lowzero::characters::enumerate_characters;
use lowzero::extremal::{selberg_r_real, ExtremalParams, Sign};
use lowzero::specialfn::hurwitz_zeta;
use lowzero::C64;
use proptest::prelude::*;

fn powc(b: f64, e: C64) -> C64 {
    let l = b.ln();
    let m = (e.re * l).exp();
    let (s, c) = (e.im * l).sin_cos();
    C64::new(m * c, m * s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn character_multiplicativity(
        q_idx in 0usize..4,
        j in 1u32..10,
        m in -500i64..500,
        n in -500i64..500,
    ) {
        let q = [7u64, 11, 13, 31][q_idx];
        let chars = enumerate_characters(q).unwrap();
        let chi = &chars[(j as usize) % chars.len()];
        let lhs = chi.value(m * n);
        let rhs = chi.value(m) * chi.value(n);
        prop_assert!((lhs - rhs).norm() < 1e-13);
    }

    #[test]
    fn hurwitz_recurrence(
        sigma in -1.0f64..4.0,
        tau in -30.0f64..30.0,
        a in 0.05f64..1.0,
    ) {
        prop_assume!((sigma - 1.0).abs() > 1e-3 || tau.abs() > 1e-3);
        let s = C64::new(sigma, tau);
        let lhs = hurwitz_zeta(s, a).unwrap();
        let rhs = hurwitz_zeta(s, a + 1.0).unwrap() + powc(a, -s);
        prop_assert!((lhs - rhs).norm() < 1e-11);
    }

    #[test]
    fn extremal_sandwich(
        delta in 0.3f64..1.6,
        h in 0.1f64..2.0,
        center in prop::sample::select(vec![0.0f64, 5.0]),
        offset in -20.0f64..20.0,
    ) {
        let plus = ExtremalParams::new(delta, center, h, Sign::Plus).unwrap();
        let minus = plus.flip();
        let x = center + offset;
        let ind = plus.indicator(x);
        prop_assert!(selberg_r_real(&plus, x) >= ind - 1e-12);
        prop_assert!(selberg_r_real(&minus, x) <= ind + 1e-12);
    }

    #[test]
    fn transform_support_and_symmetry(
        delta in 0.4f64..1.5,
        h in 0.2f64..1.5,
        u in 0.0f64..2.0,
    ) {
        use lowzero::extremal::fourier_r;
        let p = ExtremalParams::new(delta, 0.0, h, Sign::Minus).unwrap();
        let f = fourier_r(&p, u * delta).unwrap();
        let g = fourier_r(&p, -u * delta).unwrap();
        prop_assert!((g.value - f.value.conj()).norm() < 1e-7);
        if u >= 1.0 {
            prop_assert!(f.value.norm() < 1e-5);
        }
    }
}
