//! Special-function kernel: Bernoulli numbers, complex log-gamma / digamma /
//! trigamma, Hurwitz zeta via Euler–Maclaurin, and adaptive Gauss–Kronrod
//! quadrature.

pub mod bernoulli;
pub mod gamma;
pub mod hurwitz;
pub mod quad;

pub use bernoulli::bernoulli as bernoulli_number;
pub use gamma::{digamma, log_gamma, trigamma};
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_cfg, hurwitz_zeta_row};

use crate::error::Result;
use crate::C64;

/// Euler–Maclaurin evaluation parameters for [`hurwitz_zeta_cfg`].
///
/// The effective shift is `shift_n + ceil(|Im s|)`, which keeps the shift at
/// least `ceil(|Im s|/2) + 10` as the remainder bound requires, and the shift
/// is grown automatically until the certified bound meets
/// `target_abs_error`.
#[derive(Debug, Clone)]
pub struct EulerMaclaurinConfig {
    pub shift_n: usize,
    pub bernoulli_terms_m: usize,
    pub target_abs_error: f64,
}

impl Default for EulerMaclaurinConfig {
    fn default() -> Self {
        EulerMaclaurinConfig {
            shift_n: 12,
            bernoulli_terms_m: 20,
            target_abs_error: 1e-12,
        }
    }
}

/// ∫_{t1}^{t2} Re ψ(1/4 + δ/2 + iu/2) du by adaptive quadrature (abs error
/// ≤ 1e−10). This is the Γ'/Γ term of the zero-counting identity.
pub fn gamma_integral(delta_chi: u8, t1: f64, t2: f64) -> Result<f64> {
    debug_assert!(delta_chi <= 1);
    if t1 == t2 {
        return Ok(0.0);
    }
    let c = 0.25 + 0.5 * delta_chi as f64;
    let (lo, hi, sign) = if t1 < t2 { (t1, t2, 1.0) } else { (t2, t1, -1.0) };
    let r = quad::integrate(
        |u| {
            digamma(C64::new(c, 0.5 * u))
                .expect("digamma is analytic on Re = 1/4 or 3/4")
                .re
        },
        lo,
        hi,
        1e-10,
        &[0.0],
    )?;
    Ok(sign * r.value.re)
}

/// Closed form of [`gamma_integral`] through Im log Γ, used as the
/// independent oracle: d/du Im log Γ(c + iu/2) = Re ψ(c + iu/2) / 2.
pub fn gamma_integral_closed_form(delta_chi: u8, t1: f64, t2: f64) -> Result<f64> {
    let c = 0.25 + 0.5 * delta_chi as f64;
    let hi = log_gamma(C64::new(c, 0.5 * t2))?;
    let lo = log_gamma(C64::new(c, 0.5 * t1))?;
    Ok(2.0 * (hi.im - lo.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_integral_empty() {
        assert_eq!(gamma_integral(0, 0.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn gamma_integral_even_symmetry() {
        // integrand is even in u, so (−T, T) doubles (0, T)
        for delta in [0u8, 1] {
            let full = gamma_integral(delta, -3.0, 3.0).unwrap();
            let half = gamma_integral(delta, 0.0, 3.0).unwrap();
            assert!((full - 2.0 * half).abs() < 1e-9);
        }
    }

    #[test]
    fn gamma_integral_matches_closed_form() {
        for delta in [0u8, 1] {
            for (t1, t2) in [(0.0, 1.0), (-2.0, 5.0), (0.3, 0.4), (-20.0, 20.0)] {
                let q = gamma_integral(delta, t1, t2).unwrap();
                let cf = gamma_integral_closed_form(delta, t1, t2).unwrap();
                assert!(
                    (q - cf).abs() < 1e-9,
                    "delta={delta} [{t1},{t2}]: quad {q} vs closed {cf}"
                );
            }
        }
    }

    #[test]
    fn gamma_integral_small_t_is_order_t() {
        // |∫_{−T}^{T}| ≤ C·T for T ≤ 1 (integrand bounded near u = 0)
        let mut max_ratio: f64 = 0.0;
        for &t in &[0.1, 0.25, 0.5, 1.0] {
            let v = gamma_integral(0, -t, t).unwrap();
            max_ratio = max_ratio.max(v.abs() / t);
        }
        assert!(max_ratio < 10.0, "O(T) envelope violated: {max_ratio}");
    }

    #[test]
    fn reversed_interval_is_negated() {
        let a = gamma_integral(1, 0.0, 4.0).unwrap();
        let b = gamma_integral(1, 4.0, 0.0).unwrap();
        assert!((a + b).abs() < 1e-12);
    }
}
