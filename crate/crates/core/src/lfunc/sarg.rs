//! Argument tracking for S(T,χ) = (1/π) arg L(1/2 + iT, χ).
//!
//! The argument is seeded by the Dirichlet series at σ₀ = 10, where the tail
//! keeps L within 1e−13 of its 24-term partial sum and |arg| < 2^{−9}, then
//! tracked continuously down a descending σ grid; any step whose argument
//! increment reaches π/2 is bisected (floor 1e−6 on the step, then a tracking
//! error). At a zero ordinate the two-sided average convention is applied.
//!
//! A [`SigmaLine`] precomputes the Hurwitz rows of the grid once per (q, T),
//! so a whole ensemble of characters tracks on shared evaluations.

use super::{l_from_row, l_series, l_value};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::specialfn::hurwitz::hurwitz_zeta_row_regularized;
use crate::specialfn::EulerMaclaurinConfig;
use crate::C64;
use std::f64::consts::{FRAC_PI_2, PI};

/// σ grid for the descent 10 → 1/2, denser near the line where the argument
/// moves fastest. Values ≥ 6 are served by the Dirichlet series.
const BASE_SIGMAS: [f64; 28] = [
    10.0, 8.0, 6.5, 5.5, 4.75, 4.0, 3.5, 3.0, 2.625, 2.25, 2.0, 1.8125, 1.625, 1.4375, 1.25,
    1.125, 1.0, 0.9375, 0.875, 0.8125, 0.75, 0.6875, 0.625, 0.5625, 0.53125, 0.515625, 0.5078125,
    0.5,
];

const MIN_STEP: f64 = 1e-6;
/// |L(1/2+iT)| below this is treated as sitting on a zero ordinate.
const JUMP_THRESHOLD: f64 = 1e-10;

/// S(T,χ) plus S̃(T,χ) = S(T,χ) + S(T,χ̄).
#[derive(Debug, Clone, Copy)]
pub struct ArgumentValue {
    pub t: f64,
    pub s_value: f64,
    pub tilde_s: f64,
    /// Set when T coincides with a zero ordinate and the two-sided average
    /// convention was applied.
    pub at_jump: bool,
}

/// Precomputed Hurwitz rows along σ + iT for one (q, T); shared by every
/// character mod q.
pub struct SigmaLine {
    t: f64,
    /// rows[k] matches BASE_SIGMAS[k]; None where the series route is used.
    rows: Vec<Option<Vec<C64>>>,
}

impl SigmaLine {
    pub fn new(q: u64, t: f64) -> Result<Self> {
        let cfg = EulerMaclaurinConfig::default();
        let mut rows = Vec::with_capacity(BASE_SIGMAS.len());
        for &sigma in &BASE_SIGMAS {
            if sigma >= 6.0 {
                rows.push(None);
            } else {
                rows.push(Some(hurwitz_zeta_row_regularized(C64::new(sigma, t), q, &cfg)?));
            }
        }
        let _ = q;
        Ok(SigmaLine { t, rows })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    fn l_at(&self, k: usize, chi: &DirichletCharacter) -> C64 {
        let s = C64::new(BASE_SIGMAS[k], self.t);
        match &self.rows[k] {
            Some(row) => l_from_row(s, chi, row),
            None => l_series(s, chi),
        }
    }

    /// π·S(T,χ) by continuous variation along the grid.
    fn tracked_arg(&self, chi: &DirichletCharacter) -> Result<f64> {
        let l10 = self.l_at(0, chi);
        let mut total = l10.arg();
        debug_assert!(total.abs() < 2f64.powi(-9), "σ₀ seed argument too large");
        let mut prev = l10;
        for k in 1..BASE_SIGMAS.len() {
            let next = self.l_at(k, chi);
            total += arg_increment(
                chi,
                self.t,
                BASE_SIGMAS[k - 1],
                BASE_SIGMAS[k],
                prev,
                next,
            )?;
            prev = next;
        }
        Ok(total)
    }

    /// |L(1/2 + iT, χ)|, for jump detection.
    fn line_modulus(&self, chi: &DirichletCharacter) -> f64 {
        self.l_at(BASE_SIGMAS.len() - 1, chi).norm()
    }

    /// S and S̃ for one character on this line.
    pub fn s_arg(&self, chi: &DirichletCharacter) -> Result<ArgumentValue> {
        if chi.is_principal() {
            return Err(Error::domain("s_arg: principal character"));
        }
        let bar = chi.conjugate();
        let jump = self.line_modulus(chi) < JUMP_THRESHOLD
            || self.line_modulus(&bar) < JUMP_THRESHOLD;
        if jump {
            // two-sided average convention at a zero ordinate
            let eps = 1e-6;
            let above = s_arg(self.t + eps, chi)?;
            let below = s_arg(self.t - eps, chi)?;
            return Ok(ArgumentValue {
                t: self.t,
                s_value: 0.5 * (above.s_value + below.s_value),
                tilde_s: 0.5 * (above.tilde_s + below.tilde_s),
                at_jump: true,
            });
        }
        let s_chi = self.tracked_arg(chi)? / PI;
        let s_bar = self.tracked_arg(&bar)? / PI;
        Ok(ArgumentValue {
            t: self.t,
            s_value: s_chi,
            tilde_s: s_chi + s_bar,
            at_jump: false,
        })
    }
}

/// Continuous argument increment of L(σ+iT) from σ_hi down to σ_lo, bisecting
/// until each piece turns by less than π/2.
fn arg_increment(
    chi: &DirichletCharacter,
    t: f64,
    sigma_hi: f64,
    sigma_lo: f64,
    l_hi: C64,
    l_lo: C64,
) -> Result<f64> {
    if l_hi.norm() == 0.0 || l_lo.norm() == 0.0 {
        return Err(Error::Tracking(format!(
            "L vanished on the tracking path (q={}, j={}, t={t}, σ∈[{sigma_lo},{sigma_hi}])",
            chi.q(),
            chi.j
        )));
    }
    let d = (l_lo / l_hi).arg();
    if d.abs() < FRAC_PI_2 {
        return Ok(d);
    }
    if sigma_hi - sigma_lo < MIN_STEP {
        return Err(Error::Tracking(format!(
            "argument step {d:.3} at σ-step below {MIN_STEP} (q={}, j={}, t={t}, σ≈{sigma_lo}); \
             possible off-line zero or ordinate collision",
            chi.q(),
            chi.j
        )));
    }
    let mid = 0.5 * (sigma_hi + sigma_lo);
    let l_mid = l_value(C64::new(mid, t), chi)?;
    Ok(arg_increment(chi, t, sigma_hi, mid, l_hi, l_mid)?
        + arg_increment(chi, t, mid, sigma_lo, l_mid, l_lo)?)
}

/// S(T,χ) and S̃(T,χ) at a single height (builds its own σ line).
pub fn s_arg(t: f64, chi: &DirichletCharacter) -> Result<ArgumentValue> {
    let line = SigmaLine::new(chi.q(), t)?;
    line.s_arg(chi)
}
