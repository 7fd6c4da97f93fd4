//! L(s,χ) on and near the critical line: Hurwitz-zeta evaluation, the
//! completed function Λ(s,χ), the rotated real function Z(t,χ) whose sign
//! changes locate the critical-line zeros, argument tracking for S(T,χ),
//! window zero scans with argument-principle cross-checks, and the plain-text
//! zero cache.

pub mod cache;
pub mod sarg;
pub mod zeros;

pub use cache::{compute_zeros, CachedZeros, ZeroCache};
pub use sarg::{s_arg, ArgumentValue, SigmaLine};
pub use zeros::{count_zeros, find_zeros, rectangle_zero_count, ZeroCount, ZeroRecord};

use crate::characters::{root_number, DirichletCharacter};
use crate::error::{Error, Result};
use crate::specialfn::hurwitz::powc;
use crate::specialfn::hurwitz::hurwitz_zeta_row_regularized;
use crate::specialfn::{log_gamma, EulerMaclaurinConfig};
use crate::C64;

/// Validated domain for the Hurwitz-backed evaluation.
fn validate_s(s: C64) -> Result<()> {
    if !(-2.0..=12.0).contains(&s.re) {
        return Err(Error::domain(format!("l_value: Re s = {} outside [-2, 12]", s.re)));
    }
    if s.im.abs() > 1e3 {
        return Err(Error::domain(format!("l_value: |Im s| = {} exceeds 1e3", s.im.abs())));
    }
    Ok(())
}

fn require_non_principal(chi: &DirichletCharacter, context: &str) -> Result<()> {
    if chi.is_principal() {
        return Err(Error::domain(format!(
            "{context}: principal character rejected (ζ pole pathway)"
        )));
    }
    Ok(())
}

/// L(s,χ) = q^{−s} Σ_{a=1}^{q−1} χ(a) ζ(s, a/q); absolute error ≤ ~1e−10.
pub fn l_value(s: C64, chi: &DirichletCharacter) -> Result<C64> {
    require_non_principal(chi, "l_value")?;
    validate_s(s)?;
    if s.re >= 6.0 {
        return Ok(l_series(s, chi));
    }
    let q = chi.q();
    let row = hurwitz_zeta_row_regularized(s, q, &EulerMaclaurinConfig::default())?;
    Ok(l_from_row(s, chi, &row))
}

/// Assemble L from a precomputed row ζ(s, a/q), a = 1..q−1.
pub(crate) fn l_from_row(s: C64, chi: &DirichletCharacter, row: &[C64]) -> C64 {
    let q = chi.q();
    let mut sum = C64::new(0.0, 0.0);
    for a in 1..q {
        sum += chi.value(a as i64) * row[(a - 1) as usize];
    }
    powc(q as f64, -s) * sum
}

/// Dirichlet series with certified tail, for Re s ≥ 6 (tail ≤ K^{1−σ}/(σ−1)).
pub(crate) fn l_series(s: C64, chi: &DirichletCharacter) -> C64 {
    let sigma = s.re;
    let k = ((1e13 / (sigma - 1.0)).powf(1.0 / (sigma - 1.0)).ceil() as u64).max(8);
    let mut sum = C64::new(0.0, 0.0);
    for n in 1..=k {
        let c = chi.value(n as i64);
        if c.re != 0.0 || c.im != 0.0 {
            sum += c * powc(n as f64, -s);
        }
    }
    sum
}

/// Completed L-function Λ(s,χ) = (q/π)^{(s+a)/2} Γ((s+a)/2) L(s,χ) with
/// a = 1 − δ_χ; satisfies Λ(s,χ) = ε_χ Λ(1−s, χ̄).
pub fn completed_lambda(s: C64, chi: &DirichletCharacter) -> Result<C64> {
    let l = l_value(s, chi)?;
    Ok(gamma_factor(s, chi)? * l)
}

/// The archimedean factor (q/π)^{(s+a)/2} Γ((s+a)/2), computed in log form.
pub(crate) fn gamma_factor(s: C64, chi: &DirichletCharacter) -> Result<C64> {
    let a = chi.a() as f64;
    let half = (s + a) * 0.5;
    let log_factor = half * (chi.q() as f64 / std::f64::consts::PI).ln() + log_gamma(half)?;
    Ok(log_factor.exp())
}

/// Phase-only part e^{i Im log[(q/π)^{(s+a)/2} Γ((s+a)/2)]} of the
/// archimedean factor. Dividing Λ by the positive modulus |factor| leaves the
/// sign pattern of Z untouched while keeping its scale at |L|, which matters
/// for zero detection at heights where Γ decays like e^{−πt/4}.
fn gamma_factor_phase(s: C64, chi: &DirichletCharacter) -> Result<C64> {
    let a = chi.a() as f64;
    let half = (s + a) * 0.5;
    let log_factor = half * (chi.q() as f64 / std::f64::consts::PI).ln() + log_gamma(half)?;
    Ok(C64::from_polar(1.0, log_factor.im))
}

/// The rotated real function Z(t,χ) = Re[ε_χ^{−1/2} Λ(1/2 + it, χ)]. Zeros of
/// Z on the real line are exactly the ordinates γ_χ; the imaginary part of the
/// rotated value is a numerical health diagnostic (≈ 0 in exact arithmetic).
#[derive(Debug, Clone)]
pub struct HardyZ {
    chi: DirichletCharacter,
    eps_sqrt_inv: C64,
}

impl HardyZ {
    pub fn new(chi: &DirichletCharacter) -> Result<Self> {
        require_non_principal(chi, "hardy_z")?;
        let rn = root_number(chi)?;
        Ok(HardyZ {
            chi: chi.clone(),
            eps_sqrt_inv: rn.epsilon.sqrt().inv(),
        })
    }

    pub fn chi(&self) -> &DirichletCharacter {
        &self.chi
    }

    /// Z(t) together with the stray imaginary part of the rotated value.
    pub fn eval_with_diagnostic(&self, t: f64) -> Result<(f64, f64)> {
        let lambda = completed_lambda(C64::new(0.5, t), &self.chi)?;
        let rotated = self.eps_sqrt_inv * lambda;
        let scale = rotated.norm().max(1.0);
        if rotated.im.abs() > 1e-6 * scale {
            return Err(Error::numerical(format!(
                "hardy_z rotation left imaginary part {:.3e} at t = {t} (q = {}, j = {})",
                rotated.im,
                self.chi.q(),
                self.chi.j
            )));
        }
        Ok((rotated.re, rotated.im))
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        Ok(self.eval_with_diagnostic(t)?.0)
    }

    /// Z(t) divided by the positive modulus of the archimedean factor: same
    /// sign changes, O(|L|) scale. This is what the zero scans threshold on.
    pub fn eval_normalized(&self, t: f64) -> Result<f64> {
        let s = C64::new(0.5, t);
        let l = l_value(s, &self.chi)?;
        let rotated = self.eps_sqrt_inv * gamma_factor_phase(s, &self.chi)? * l;
        Ok(rotated.re)
    }

    /// Normalized Z from a precomputed Hurwitz row at s = 1/2 + it.
    pub(crate) fn eval_from_row(&self, t: f64, row: &[C64]) -> Result<f64> {
        let s = C64::new(0.5, t);
        let rotated =
            self.eps_sqrt_inv * gamma_factor_phase(s, &self.chi)? * l_from_row(s, &self.chi, row);
        Ok(rotated.re)
    }
}

/// One-off Z(t,χ) evaluation; use [`HardyZ`] for scans.
pub fn hardy_z(t: f64, chi: &DirichletCharacter) -> Result<f64> {
    HardyZ::new(chi)?.eval(t)
}
