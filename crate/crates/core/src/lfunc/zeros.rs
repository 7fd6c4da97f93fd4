//! Critical-line zero localization by sign changes of the rotated function,
//! cross-validated against the argument-principle count
//!
//!   N(T,χ) = (T/π) log(q/π) + S̃(T,χ) + (1/2π) ∫_{−T}^{T} Re ψ(…) du,
//!
//! and a rectangle winding count for the off-line desk check.

use super::sarg::{s_arg, SigmaLine};
use super::{l_value, HardyZ};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::specialfn::gamma_integral;
use crate::C64;
use std::f64::consts::PI;

/// One localized critical-line zero ordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub q: u64,
    pub g: u64,
    pub j: u32,
    pub gamma: f64,
    pub abs_tolerance: f64,
}

/// Scan grid spacing: an eighth of the mean gap 2π/log(q(T+2)).
pub fn base_spacing(q: u64, height: f64) -> f64 {
    (2.0 * PI / (q as f64 * (height + 2.0)).ln()) / 8.0
}

/// Argument-principle zero count at height `t` (two-sided, weight-1/2 at
/// endpoint ordinates through the S convention).
///
/// The digamma argument is 1/4 + a_χ/2 + iu/2 with a_χ = 1 − δ_χ, matching
/// the Γ((s+a)/2) factor of the completed function; this is the convention
/// that reproduces the −χ(−1)/4 parity constant of the Riemann–von Mangoldt
/// expansion and makes the identity exact.
pub fn formula_count(t: f64, chi: &DirichletCharacter) -> Result<f64> {
    let q = chi.q() as f64;
    let tilde = s_arg(t, chi)?.tilde_s;
    let gamma_term = gamma_integral(chi.a(), -t, t)? / (2.0 * PI);
    Ok((t / PI) * (q / PI).ln() + tilde + gamma_term)
}

pub(crate) fn formula_count_with_line(line: &SigmaLine, chi: &DirichletCharacter) -> Result<f64> {
    let q = chi.q() as f64;
    let t = line.t();
    let tilde = line.s_arg(chi)?.tilde_s;
    let gamma_term = gamma_integral(chi.a(), -t, t)? / (2.0 * PI);
    Ok((t / PI) * (q / PI).ln() + tilde + gamma_term)
}

/// Positive-ordinate scan result for a conjugate pair {χ, χ̄}.
#[derive(Debug, Clone)]
pub(crate) struct PairScan {
    /// (gamma, abs_tolerance) of positive zeros of χ, ascending.
    pub pos_chi: Vec<(f64, f64)>,
    /// Positive zeros of χ̄ (equivalently, −(negative zeros of χ)).
    pub pos_bar: Vec<(f64, f64)>,
    /// |Z(0)| < 1e−10 flag; a certified central zero (none expected).
    pub central: bool,
}

const CENTRAL_THRESHOLD: f64 = 1e-10;
const BISECT_TOL: f64 = 1e-9;
const MAX_ATTEMPTS: u32 = 3;

fn grid_points(hc: f64, spacing: f64) -> Vec<f64> {
    let n = (hc / spacing).ceil() as usize;
    (0..=n).map(|k| (k as f64 * spacing).min(hc)).collect()
}

fn bisect(z: &HardyZ, mut lo: f64, mut hi: f64, mut zlo: f64) -> Result<(f64, f64)> {
    while hi - lo > BISECT_TOL {
        let mid = 0.5 * (lo + hi);
        let zm = z.eval_normalized(mid)?;
        if zm == 0.0 {
            return Ok((mid, 0.5 * (hi - lo)));
        }
        if zm * zlo < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            zlo = zm;
        }
    }
    Ok((0.5 * (lo + hi), 0.5 * (hi - lo)))
}

/// Sign-change zeros of one character on (0, hc], given grid values.
fn zeros_from_values(z: &HardyZ, ts: &[f64], values: &[f64]) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    for k in 1..ts.len() {
        let (a, b) = (values[k - 1], values[k]);
        if a == 0.0 && ts[k - 1] == 0.0 {
            continue; // central candidate handled separately
        }
        if a * b < 0.0 {
            out.push(bisect(z, ts[k - 1], ts[k], a)?);
        }
    }
    Ok(out)
}

/// Scan a conjugate pair on (0, hc], verifying the total two-sided count
/// against `expected`; resolution doubles on mismatch (up to 3 attempts).
/// `shared` optionally supplies grid ordinates and precomputed Z values for
/// (χ, χ̄) on that grid (used by the cache to share Hurwitz rows).
pub(crate) fn pair_scan(
    z_chi: &HardyZ,
    z_bar: &HardyZ,
    hc: f64,
    expected_two_sided: Option<f64>,
    spacing0: f64,
    shared: Option<(&[f64], &[f64], &[f64])>,
) -> Result<PairScan> {
    let self_conjugate = z_chi.chi().j == z_bar.chi().j;
    let central = z_chi.eval_normalized(0.0)?.abs() < CENTRAL_THRESHOLD;

    let mut result = None;
    for attempt in 0..MAX_ATTEMPTS {
        let spacing = spacing0 / 2f64.powi(attempt as i32);
        let (pos_chi, pos_bar) = match (attempt, shared) {
            (0, Some((ts, vchi, vbar))) => (
                zeros_from_values(z_chi, ts, vchi)?,
                if self_conjugate {
                    zeros_from_values(z_bar, ts, vbar)?
                } else {
                    zeros_from_values(z_bar, ts, vbar)?
                },
            ),
            _ => {
                let ts = grid_points(hc, spacing);
                let vchi: Vec<f64> =
                    ts.iter().map(|&t| z_chi.eval_normalized(t)).collect::<Result<_>>()?;
                let vbar: Vec<f64> = if self_conjugate {
                    vchi.clone()
                } else {
                    ts.iter().map(|&t| z_bar.eval_normalized(t)).collect::<Result<_>>()?
                };
                (
                    zeros_from_values(z_chi, &ts, &vchi)?,
                    zeros_from_values(z_bar, &ts, &vbar)?,
                )
            }
        };

        let scan = PairScan {
            pos_chi,
            pos_bar,
            central,
        };
        let Some(expected) = expected_two_sided else {
            return Ok(scan);
        };
        let found = scan.pos_chi.len() + scan.pos_bar.len() + scan.central as usize;
        if (found as f64 - expected).abs() < 0.25 {
            return Ok(scan);
        }
        result = Some((found, expected));
    }
    let (found, expected) = result.unwrap();
    Err(Error::MissingZeros(format!(
        "q={} j={}: scan found {found} zeros in (−{hc}, {hc}) but the argument principle gives {expected:.6} \
         (after {MAX_ATTEMPTS} resolution doublings)",
        z_chi.chi().q(),
        z_chi.chi().j,
    )))
}

/// Check height near `height` at which neither Z vanishes and the formula
/// count sits close to an integer.
pub(crate) fn pick_check_height(
    z_chi: &HardyZ,
    z_bar: &HardyZ,
    height: f64,
    spacing: f64,
) -> Result<f64> {
    let mut hc = height + 0.5 * spacing;
    for _ in 0..5 {
        let a = z_chi.eval_normalized(hc)?.abs();
        let b = z_bar.eval_normalized(hc)?.abs();
        if a > 1e-7 && b > 1e-7 {
            return Ok(hc);
        }
        hc += 0.31 * spacing;
    }
    Err(Error::numerical(format!(
        "could not find a zero-free check height near {height} (q = {})",
        z_chi.chi().q()
    )))
}

/// All sign-change zeros of L(1/2+it, χ) with t ∈ [t_min, t_max], refined to
/// abs_tolerance ≤ 1e−9 and cross-validated by the argument-principle count.
pub fn find_zeros(chi: &DirichletCharacter, t_min: f64, t_max: f64) -> Result<Vec<ZeroRecord>> {
    if chi.is_principal() {
        return Err(Error::domain("find_zeros: principal character"));
    }
    if !(t_min < t_max) {
        return Err(Error::domain(format!("find_zeros: window [{t_min}, {t_max}] empty")));
    }
    let height = t_max.abs().max(t_min.abs());
    let bar = chi.conjugate();
    let z_chi = HardyZ::new(chi)?;
    let z_bar = HardyZ::new(&bar)?;
    let spacing = base_spacing(chi.q(), height);
    let hc = pick_check_height(&z_chi, &z_bar, height, spacing)?;
    let expected = formula_count(hc, chi)?;
    let scan = pair_scan(&z_chi, &z_bar, hc, Some(expected), spacing, None)?;

    let record = |j: u32, gamma: f64, tol: f64| ZeroRecord {
        q: chi.q(),
        g: chi.g(),
        j,
        gamma,
        abs_tolerance: tol,
    };
    let mut out = Vec::new();
    for &(gamma, tol) in &scan.pos_chi {
        if gamma >= t_min && gamma <= t_max {
            out.push(record(chi.j, gamma, tol));
        }
    }
    for &(gamma, tol) in &scan.pos_bar {
        let neg = -gamma;
        if neg >= t_min && neg <= t_max {
            out.push(record(chi.j, neg, tol));
        }
    }
    if scan.central && t_min <= 0.0 && 0.0 <= t_max {
        out.push(record(chi.j, 0.0, CENTRAL_THRESHOLD));
    }
    out.sort_by(|a, b| a.gamma.partial_cmp(&b.gamma).unwrap());
    Ok(out)
}

/// N(T,χ) computed two ways: sign-scan count (endpoint ordinates weighted
/// 1/2) and the argument-principle identity. Both are returned; they must
/// agree to 1e−6.
#[derive(Debug, Clone, Copy)]
pub struct ZeroCount {
    pub from_scan: f64,
    pub from_formula: f64,
}

pub fn count_zeros(t: f64, chi: &DirichletCharacter) -> Result<ZeroCount> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("count_zeros: T = {t} must be positive")));
    }
    let zeros = find_zeros(chi, -t - 1e-6, t + 1e-6)?;
    let mut from_scan = 0.0;
    for z in &zeros {
        let d = z.gamma.abs() - t;
        if d.abs() <= BISECT_TOL.max(z.abs_tolerance) {
            from_scan += 0.5;
        } else if d < 0.0 {
            from_scan += 1.0;
        }
    }
    let from_formula = formula_count(t, chi)?;
    if (from_scan - from_formula).abs() >= 1e-6 {
        return Err(Error::numerical(format!(
            "count_zeros(q={}, j={}, T={t}): scan {from_scan} vs formula {from_formula}",
            chi.q(),
            chi.j
        )));
    }
    Ok(ZeroCount {
        from_scan,
        from_formula,
    })
}

/// Continuous argument change of L along the straight segment [s_a, s_b].
fn arg_on_segment(
    chi: &DirichletCharacter,
    s_a: C64,
    s_b: C64,
    l_a: C64,
    l_b: C64,
    depth: u32,
) -> Result<f64> {
    if l_a.norm() == 0.0 || l_b.norm() == 0.0 {
        return Err(Error::Tracking(format!(
            "L vanished on contour segment near {s_a} (q = {})",
            chi.q()
        )));
    }
    let d = (l_b / l_a).arg();
    if d.abs() < std::f64::consts::FRAC_PI_2 {
        return Ok(d);
    }
    if depth > 40 {
        return Err(Error::Tracking(format!(
            "contour subdivision exhausted near {s_a} (q = {})",
            chi.q()
        )));
    }
    let mid = (s_a + s_b) * 0.5;
    let l_mid = l_value(mid, chi)?;
    Ok(arg_on_segment(chi, s_a, mid, l_a, l_mid, depth + 1)?
        + arg_on_segment(chi, mid, s_b, l_mid, l_b, depth + 1)?)
}

/// Winding number of L(s,χ) around the rectangle [σ_lo, σ_hi] × [t_lo, t_hi]
/// = number of zeros strictly inside (argument principle). Used for the
/// desk-scale check that no zeros sit off the critical line.
pub fn rectangle_zero_count(
    chi: &DirichletCharacter,
    sigma_lo: f64,
    sigma_hi: f64,
    t_lo: f64,
    t_hi: f64,
) -> Result<i64> {
    if chi.is_principal() {
        return Err(Error::domain("rectangle_zero_count: principal character"));
    }
    let corners = [
        C64::new(sigma_lo, t_lo),
        C64::new(sigma_hi, t_lo),
        C64::new(sigma_hi, t_hi),
        C64::new(sigma_lo, t_hi),
        C64::new(sigma_lo, t_lo),
    ];
    let mut values = Vec::with_capacity(5);
    for c in corners {
        values.push(l_value(c, chi)?);
    }
    let mut total = 0.0;
    for k in 0..4 {
        // subdivide long edges so no piece turns more than π/2
        let (s_a, s_b) = (corners[k], corners[k + 1]);
        let pieces = ((s_b - s_a).norm() / 0.25).ceil().max(1.0) as usize;
        let mut prev_s = s_a;
        let mut prev_l = values[k];
        for p in 1..=pieces {
            let s = s_a + (s_b - s_a) * (p as f64 / pieces as f64);
            let l = if p == pieces { values[k + 1] } else { l_value(s, chi)? };
            total += arg_on_segment(chi, prev_s, s, prev_l, l, 0)?;
            prev_s = s;
            prev_l = l;
        }
    }
    let winding = total / (2.0 * PI);
    let rounded = winding.round();
    if (winding - rounded).abs() > 1e-2 {
        return Err(Error::numerical(format!(
            "rectangle winding {winding} is not near an integer (q = {}, j = {})",
            chi.q(),
            chi.j
        )));
    }
    Ok(rounded as i64)
}
