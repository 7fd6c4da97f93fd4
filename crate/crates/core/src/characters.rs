//! Dirichlet characters modulo an odd prime q, indexed against the least
//! primitive root g: χ_j(g^k) = e^{2πi jk/(q−1)}, j = 0 principal. Character
//! values come from a precomputed discrete-log table, so evaluation is O(1)
//! inside the prime-sum loops. All non-principal characters mod a prime are
//! primitive.

use crate::arith::{gcd, least_primitive_root, require_odd_prime};
use crate::error::{Error, Result};
use crate::C64;
use std::sync::Arc;

/// Discrete-log table cap; q beyond this is out of desk scale.
pub const MODULUS_CAP: u64 = 100_000;

/// Shared per-modulus data: primitive root, discrete logs, unit roots.
#[derive(Debug)]
pub struct CharGroup {
    pub q: u64,
    pub g: u64,
    /// dlog[n] = k with g^k ≡ n (mod q), for 1 ≤ n < q. dlog[0] unused.
    dlog: Vec<u32>,
    /// roots[k] = e^{2πik/(q−1)}, 0 ≤ k < q−1.
    roots: Vec<C64>,
}

impl CharGroup {
    pub fn new(q: u64) -> Result<Arc<Self>> {
        require_odd_prime(q, "CharGroup")?;
        if q > MODULUS_CAP {
            return Err(Error::domain(format!(
                "modulus {q} exceeds discrete-log table cap {MODULUS_CAP}"
            )));
        }
        let g = least_primitive_root(q)?;
        let mut dlog = vec![u32::MAX; q as usize];
        let mut x = 1u64;
        for k in 0..(q - 1) as u32 {
            dlog[x as usize] = k;
            x = x * g % q;
        }
        let order = (q - 1) as usize;
        let step = std::f64::consts::TAU / order as f64;
        let roots = (0..order)
            .map(|k| {
                let (s, c) = (step * k as f64).sin_cos();
                C64::new(c, s)
            })
            .collect();
        Ok(Arc::new(CharGroup { q, g, dlog, roots }))
    }

    pub fn order(&self) -> u64 {
        self.q - 1
    }

    pub fn character(self: &Arc<Self>, j: u32) -> DirichletCharacter {
        let j = j % self.order() as u32;
        // χ(−1) = e^{2πi j (q−1)/2 / (q−1)} = (−1)^j, so δ = 1 for even j.
        let parity_delta = if j % 2 == 0 { 1 } else { 0 };
        DirichletCharacter {
            group: Arc::clone(self),
            j,
            parity_delta,
        }
    }
}

/// One character χ_j mod q; cheap to clone (shares the group tables).
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    group: Arc<CharGroup>,
    pub j: u32,
    /// δ_χ = (1 + χ(−1))/2: 1 for even characters, 0 for odd.
    pub parity_delta: u8,
}

impl DirichletCharacter {
    pub fn q(&self) -> u64 {
        self.group.q
    }

    pub fn g(&self) -> u64 {
        self.group.g
    }

    pub fn group(&self) -> &Arc<CharGroup> {
        &self.group
    }

    pub fn is_principal(&self) -> bool {
        self.j == 0
    }

    /// a_χ = 1 − δ_χ, the exponent in the completed L-function Γ-factor.
    pub fn a(&self) -> u8 {
        1 - self.parity_delta
    }

    pub fn conjugate(&self) -> DirichletCharacter {
        let order = self.group.order() as u32;
        self.group.character((order - self.j) % order)
    }

    /// χ(n), zero when q | n; completely multiplicative, unit modulus on units.
    pub fn value(&self, n: i64) -> C64 {
        let q = self.group.q as i64;
        let m = n.rem_euclid(q) as usize;
        if m == 0 {
            return C64::new(0.0, 0.0);
        }
        let k = self.group.dlog[m] as u64;
        let order = self.group.order();
        self.group.roots[((self.j as u64 * k) % order) as usize]
    }

    /// χ(−1) as an exact integer sign.
    pub fn value_at_minus_one(&self) -> i64 {
        if self.j % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// All q−1 characters mod q in index order (index 0 is principal).
pub fn enumerate_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    let group = CharGroup::new(q)?;
    Ok((0..group.order() as u32).map(|j| group.character(j)).collect())
}

/// Σ_{χ≠χ0} χ(n): q−2 when n ≡ 1, 0 when q | n, −1 otherwise.
pub fn orthogonality_sum(q: u64, n: i64) -> Result<i64> {
    require_odd_prime(q, "orthogonality_sum")?;
    let m = n.rem_euclid(q as i64) as u64;
    Ok(if m == 0 {
        0
    } else if m == 1 {
        (q - 2) as i64
    } else {
        -1
    })
}

/// Gauss sum and functional-equation root number of a non-principal χ.
#[derive(Debug, Clone, Copy)]
pub struct RootNumber {
    /// τ(χ) = Σ_{a mod q} χ(a) e^{2πia/q}; |τ| = √q.
    pub gauss_sum: C64,
    /// ε_χ = τ(χ)/(i^{a} √q) with a = 1 − δ_χ; |ε| = 1.
    pub epsilon: C64,
}

pub fn root_number(chi: &DirichletCharacter) -> Result<RootNumber> {
    if chi.is_principal() {
        return Err(Error::domain(
            "root_number undefined for the principal character",
        ));
    }
    let q = chi.q();
    let step = std::f64::consts::TAU / q as f64;
    let mut tau = C64::new(0.0, 0.0);
    for a in 1..q {
        let (s, c) = (step * a as f64).sin_cos();
        tau += chi.value(a as i64) * C64::new(c, s);
    }
    let sqrt_q = (q as f64).sqrt();
    if (tau.norm() - sqrt_q).abs() > 1e-9 * sqrt_q {
        return Err(Error::numerical(format!(
            "Gauss sum modulus {} deviates from sqrt({q})",
            tau.norm()
        )));
    }
    let epsilon = if chi.a() == 0 {
        tau / sqrt_q
    } else {
        tau / (C64::i() * sqrt_q)
    };
    Ok(RootNumber {
        gauss_sum: tau,
        epsilon,
    })
}

/// Number of residues coprime to q (φ(q) = q−1 for prime q); kept general
/// for the Brun–Titchmarsh checks.
pub fn euler_phi(q: u64) -> u64 {
    (1..=q).filter(|&a| gcd(a, q) == 1).count() as u64
}
