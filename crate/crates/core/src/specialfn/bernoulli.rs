//! Bernoulli numbers B_0..B_60, computed once as exact rationals and cached
//! as f64. The Euler–Maclaurin machinery never needs more than B_42 (M = 20
//! correction terms plus the remainder estimate), so 60 leaves headroom.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

pub const MAX_BERNOULLI: usize = 60;

static TABLE: OnceLock<Vec<f64>> = OnceLock::new();

/// B_n for 0 ≤ n ≤ 60, convention B_1 = −1/2.
pub fn bernoulli(n: usize) -> f64 {
    assert!(n <= MAX_BERNOULLI, "bernoulli table holds only B_0..B_60");
    table()[n]
}

fn table() -> &'static [f64] {
    TABLE.get_or_init(|| {
        exact_table()
            .iter()
            .map(|r| rational_to_f64(r))
            .collect::<Vec<_>>()
    })
}

/// Recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0 (m >= 1), solved exactly.
fn exact_table() -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(MAX_BERNOULLI + 1);
    b.push(BigRational::one());
    for m in 1..=MAX_BERNOULLI {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            // C(m+1, j+1) = C(m+1, j) * (m+1-j) / (j+1)
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        let bm = -acc / BigRational::from_integer(BigInt::from(m + 1));
        b.push(bm);
    }
    b
}

fn rational_to_f64(r: &BigRational) -> f64 {
    // Direct numer/denom conversion overflows f64 well before B_60 does;
    // scale both to comparable magnitude first.
    let numer = r.numer();
    let denom = r.denom();
    let shift = numer.abs().bits().max(denom.bits()).saturating_sub(52);
    let n = (numer >> shift).to_f64().unwrap();
    let d = (denom >> shift).to_f64().unwrap();
    if d == 0.0 {
        numer.to_f64().unwrap() / denom.to_f64().unwrap()
    } else {
        n / d
    }
}
