//! Integer-side primitives: prime sieve, von Mangoldt function, primitive
//! roots, residue-class prime counting. Everything here is exact and
//! deterministic; PrimeTable is immutable after construction.

use crate::error::{Error, Result};

/// Hard cap on sieve limits (the explicit-formula prime sums stay below
/// e^{2πΔ} ≤ 1e8 by the Δ cap in the extremal module).
pub const SIEVE_LIMIT_CAP: u64 = 100_000_000;

/// Ascending table of all primes ≤ `limit`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    pub limit: u64,
    pub primes: Vec<u64>,
}

/// Plain boolean sieve of Eratosthenes.
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::domain(format!(
            "sieve_primes: limit {limit} < 2 yields an empty table"
        )));
    }
    if limit > SIEVE_LIMIT_CAP {
        return Err(Error::domain(format!(
            "sieve_primes: limit {limit} exceeds cap {SIEVE_LIMIT_CAP}"
        )));
    }
    let n = limit as usize;
    let mut is_composite = vec![false; n + 1];
    let mut primes = Vec::new();
    let mut p = 2usize;
    while p * p <= n {
        if !is_composite[p] {
            let mut m = p * p;
            while m <= n {
                is_composite[m] = true;
                m += p;
            }
        }
        p += 1;
    }
    for (i, &c) in is_composite.iter().enumerate().skip(2) {
        if !c {
            primes.push(i as u64);
        }
    }
    Ok(PrimeTable { limit, primes })
}

/// Von Mangoldt Λ(n): log p when n = p^m, else 0. Trial factorization.
pub fn von_mangoldt(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("von_mangoldt undefined at n = 0"));
    }
    if n == 1 {
        return Ok(0.0);
    }
    let mut m = n;
    let mut p = 0u64;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            p = d;
            while m % d == 0 {
                m /= d;
            }
            break;
        }
        d += 1;
    }
    if p == 0 {
        // n itself is prime
        return Ok((n as f64).ln());
    }
    if m == 1 {
        Ok((p as f64).ln())
    } else {
        Ok(0.0)
    }
}

/// Trial-division primality; adequate at desk-scale moduli.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn require_odd_prime(q: u64, context: &str) -> Result<()> {
    if q < 3 || q % 2 == 0 || !is_prime(q) {
        return Err(Error::domain(format!("{context}: q = {q} is not an odd prime")));
    }
    Ok(())
}

/// Distinct prime factors of n.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut result = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = (result as u128 * base as u128 % modulus as u128) as u64;
        }
        exp >>= 1;
        base = (base as u128 * base as u128 % modulus as u128) as u64;
    }
    result
}

/// Smallest g ≥ 2 generating (Z/qZ)× for an odd prime q.
pub fn least_primitive_root(q: u64) -> Result<u64> {
    require_odd_prime(q, "least_primitive_root")?;
    let order = q - 1;
    let factors = prime_factors(order);
    'candidates: for g in 2..q {
        for &p in &factors {
            if pow_mod(g, order / p, q) == 1 {
                continue 'candidates;
            }
        }
        return Ok(g);
    }
    unreachable!("every odd prime has a primitive root below q")
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// π(x; q, a) = #{p ≤ x : p ≡ a mod q} for gcd(a, q) = 1.
pub fn prime_count_residue(x: f64, q: u64, a: u64) -> Result<u64> {
    require_odd_prime(q, "prime_count_residue")?;
    if gcd(a % q, q) != 1 {
        return Err(Error::domain(format!(
            "prime_count_residue: gcd({a}, {q}) != 1"
        )));
    }
    if x < 2.0 {
        return Ok(0);
    }
    let limit = x.floor() as u64;
    let table = sieve_primes(limit.max(2))?;
    let target = a % q;
    Ok(table
        .primes
        .iter()
        .filter(|&&p| p <= limit && p % q == target)
        .count() as u64)
}

/// Prime powers n = p^m ≤ limit with their Λ(n) = log p, ascending in n.
pub fn prime_powers_upto(limit: u64) -> Result<Vec<(u64, f64)>> {
    if limit < 2 {
        return Ok(Vec::new());
    }
    let table = sieve_primes(limit)?;
    let mut out = Vec::new();
    for &p in &table.primes {
        let logp = (p as f64).ln();
        let mut n = p;
        loop {
            out.push((n, logp));
            match n.checked_mul(p) {
                Some(next) if next <= limit => n = next,
                _ => break,
            }
        }
    }
    out.sort_unstable_by_key(|&(n, _)| n);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent segmented sieve used only as a cross-check oracle.
    fn segmented_prime_count(limit: u64) -> u64 {
        let seg_len = 1usize << 16;
        let sqrt = (limit as f64).sqrt() as u64 + 1;
        let base = sieve_primes(sqrt.max(2)).unwrap().primes;
        let mut count = base.iter().filter(|&&p| p <= limit).count() as u64;
        let mut low = sqrt + 1;
        let mut seg = vec![false; seg_len];
        while low <= limit {
            let high = (low + seg_len as u64 - 1).min(limit);
            for f in seg.iter_mut() {
                *f = false;
            }
            for &p in &base {
                if p * p > high {
                    break;
                }
                let mut start = low.div_ceil(p) * p;
                if start < p * p {
                    start = p * p;
                }
                let mut m = start;
                while m <= high {
                    seg[(m - low) as usize] = true;
                    m += p;
                }
            }
            count += (0..=(high - low) as usize).filter(|&i| !seg[i]).count() as u64;
            low = high + 1;
        }
        count
    }

    #[test]
    fn sieve_first_primes() {
        assert_eq!(sieve_primes(10).unwrap().primes, vec![2, 3, 5, 7]);
        assert_eq!(sieve_primes(2).unwrap().primes, vec![2]);
    }

    #[test]
    fn sieve_against_segmented_oracle() {
        let table = sieve_primes(1_000_000).unwrap();
        assert_eq!(table.primes.len(), 78_498);
        assert_eq!(segmented_prime_count(1_000_000), 78_498);
        for lim in [100u64, 12345, 65536, 300_000] {
            let direct = sieve_primes(lim).unwrap().primes.len() as u64;
            assert_eq!(direct, segmented_prime_count(lim), "limit {lim}");
        }
    }

    #[test]
    fn sieve_table_invariants() {
        let table = sieve_primes(5000).unwrap();
        for w in table.primes.windows(2) {
            assert!(w[0] < w[1]);
        }
        for &p in &table.primes {
            assert!(is_prime(p));
        }
    }

    #[test]
    fn sieve_domain_errors() {
        assert!(sieve_primes(1).is_err());
        assert!(sieve_primes(SIEVE_LIMIT_CAP + 1).is_err());
    }

    #[test]
    fn von_mangoldt_basics() {
        assert_eq!(von_mangoldt(1).unwrap(), 0.0);
        assert!((von_mangoldt(8).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(von_mangoldt(12).unwrap(), 0.0);
        assert!((von_mangoldt(97).unwrap() - 97f64.ln()).abs() < 1e-15);
        assert!((von_mangoldt(3f64.powi(7) as u64).unwrap() - 3f64.ln()).abs() < 1e-15);
        assert!(von_mangoldt(0).is_err());
    }

    #[test]
    fn chebyshev_identity() {
        // Σ_{d|n} Λ(d) = log n for all n ≤ 10^4
        for n in 1u64..=10_000 {
            let mut sum = 0.0;
            for d in 1..=n {
                if n % d == 0 {
                    sum += von_mangoldt(d).unwrap();
                }
            }
            assert!(
                (sum - (n as f64).ln()).abs() < 1e-9,
                "Chebyshev identity fails at n = {n}: {sum}"
            );
        }
    }

    #[test]
    fn primitive_roots_small() {
        assert_eq!(least_primitive_root(3).unwrap(), 2);
        assert_eq!(least_primitive_root(5).unwrap(), 2);
        assert_eq!(least_primitive_root(7).unwrap(), 3);
        assert!(least_primitive_root(9).is_err());
        assert!(least_primitive_root(2).is_err());
    }

    #[test]
    fn primitive_root_brute_force_order() {
        // the returned root must have full multiplicative order, verified by
        // direct power enumeration, and its powers must hit every residue
        for q in [3u64, 5, 7, 11, 101] {
            let g = least_primitive_root(q).unwrap();
            let mut seen = vec![false; q as usize];
            let mut x = 1u64;
            for _ in 0..q - 1 {
                assert!(!seen[x as usize], "q={q}: repeated residue before full cycle");
                seen[x as usize] = true;
                x = x * g % q;
            }
            assert_eq!(x, 1, "q={q}: g^{} != 1", q - 1);
            assert!(seen[1..].iter().filter(|&&s| s).count() == (q - 1) as usize);
        }
    }

    #[test]
    fn residue_class_counts() {
        // primes ≡ 1 mod 5 up to 100: 11, 31, 41, 61, 71
        assert_eq!(prime_count_residue(100.0, 5, 1).unwrap(), 5);
        assert_eq!(prime_count_residue(2.0, 7, 1).unwrap(), 0);
        assert!(prime_count_residue(100.0, 5, 10).is_err());
    }

    #[test]
    fn residue_classes_partition_primes() {
        // Σ_a π(x; q, a) over units a equals π(x) − #{q ≤ x}
        for q in [5u64, 11] {
            let x = 2000.0;
            let mut total = 0;
            for a in 1..q {
                total += prime_count_residue(x, q, a).unwrap();
            }
            let pi = sieve_primes(2000).unwrap().primes.len() as u64;
            assert_eq!(total, pi - 1, "q = {q}"); // q itself is ≤ x
        }
    }

    #[test]
    fn brun_titchmarsh_envelope() {
        // π(1e5; 101, 1) ≤ 2·1e5 / (φ(101)·log(1e5/101))
        let count = prime_count_residue(1e5, 101, 1).unwrap() as f64;
        let bound = 2.0 * 1e5 / (100.0 * (1e5_f64 / 101.0).ln());
        assert!(count <= bound, "Brun–Titchmarsh: {count} > {bound}");
    }

    #[test]
    fn prime_powers_list() {
        let pp = prime_powers_upto(32).unwrap();
        let ns: Vec<u64> = pp.iter().map(|&(n, _)| n).collect();
        assert_eq!(ns, vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]);
        for &(n, lam) in &pp {
            assert!((lam - von_mangoldt(n).unwrap()).abs() < 1e-15);
        }
        assert!(prime_powers_upto(1).unwrap().is_empty());
    }
}
