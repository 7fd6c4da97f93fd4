//! Command-line surface tying the library into reproducible experiments:
//! zero-cache runs, ensemble statistics with side-by-side bound values,
//! explicit-formula checks, bound tables and crossings, and extremal-function
//! tables for plotting.
//!
//! Exit codes: 0 success, 2 validation error, 3 numerical-consistency error.

mod output;

use anyhow::Context;
use clap::{Parser, Subcommand};
use lowzero::analysis::{
    ensemble_stats, explicit_formula_check, required_height, shifted_ensemble_stats,
    shifted_required_height, DEFAULT_BETAS,
};
use lowzero::bounds::{
    cor2_lower_bound, crossing_finder, hr_bound, shifted_cor_bound, thm1_bound, thm2_bound,
    thm2_integrals, zhao_bound, BoundId,
};
use lowzero::characters::enumerate_characters;
use lowzero::extremal::{fourier_r, selberg_r_real, ExtremalParams, Sign};
use lowzero::lfunc::{CachedZeros, ZeroCache};
use lowzero::{Error, ExecMode};
use output::{emit, OutputFormat, Table};
use serde::Serialize;
use std::f64::consts::TAU;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lowzero", version, about = "Dirichlet L-function argument statistics and low-lying zeros at desk scale")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Zero-cache directory (plain-text, one file per modulus).
    #[arg(long, global = true, default_value = "zero-cache")]
    cache_dir: PathBuf,

    /// Output format for report emission.
    #[arg(long, global = true, default_value = "csv")]
    out: OutputFormat,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out_file: Option<PathBuf>,

    /// Run ensembles sequentially (defaults to the rayon pool when the
    /// `parallel` feature is compiled in).
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Populate the zero cache up to a height; print per-character summaries.
    Zeros {
        /// Comma-separated odd prime moduli.
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
        /// Inclusive range lo..hi of moduli; odd primes inside are used.
        #[arg(long)]
        q_range: Option<String>,
        #[arg(long, default_value_t = 10.0)]
        height: f64,
        /// Bisection tolerance on ordinates (fixed 1e-9 in the cache format).
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Ensemble statistics of S̃ plus side-by-side bound values.
    Stats {
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
        #[arg(long)]
        q_range: Option<String>,
        /// Height T (defaults to 2π·0.3/log q per modulus).
        #[arg(long)]
        t: Option<f64>,
        /// Shifted-window center; use together with --h.
        #[arg(long)]
        t0: Option<f64>,
        /// Shifted-window half-length.
        #[arg(long)]
        h: Option<f64>,
        /// Proportion thresholds β.
        #[arg(long, value_delimiter = ',')]
        beta: Vec<f64>,
        /// Extra cache height, when deeper coverage is wanted.
        #[arg(long)]
        height: Option<f64>,
    },
    /// Explicit-formula residuals for every character of the given moduli.
    ExplicitCheck {
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        /// Interval half-length T of R±.
        #[arg(long, default_value_t = 0.5)]
        t: f64,
        /// Interval center (0 = the classical case).
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        /// Zero-side truncation height.
        #[arg(long, default_value_t = 40.0)]
        height: f64,
        #[arg(long, default_value_t = 1.6)]
        delta_cap: f64,
    },
    /// Evaluate a named bound over its parameters.
    Bounds {
        /// thm1 | thm2 | cor2 | hr | zhao | shifted | compare
        #[arg(long)]
        bound: String,
        #[arg(long, value_delimiter = ',')]
        beta: Vec<f64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Bisection crossing of two named bounds.
    Crossings {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = 0.51)]
        lo: f64,
        #[arg(long, default_value_t = 0.9)]
        hi: f64,
    },
    /// Emit (x, R+, R-, indicator) and (u, Re f̂, Im f̂) tables.
    Extremal {
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        #[arg(long, default_value_t = 1.0)]
        h: f64,
        #[arg(long, default_value_t = 1.6)]
        delta_cap: f64,
        #[arg(long, default_value_t = 400)]
        x_points: usize,
        #[arg(long, default_value_t = 200)]
        u_points: usize,
    },
    /// Empirical lowest-zero proportions next to the proportion bounds.
    Proportion {
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
        #[arg(long)]
        q_range: Option<String>,
        #[arg(long, value_delimiter = ',')]
        beta: Vec<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = err
                .downcast_ref::<Error>()
                .map(exit_code_for)
                .unwrap_or(2);
            ExitCode::from(code)
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Domain(_) | Error::CacheFormat(_) | Error::Io(_) => 2,
        Error::Pole(_)
        | Error::Numerical(_)
        | Error::Accuracy(_)
        | Error::Tracking(_)
        | Error::MissingZeros(_)
        | Error::CacheMiss(_) => 3,
    }
}

fn parse_q_range(spec: &str) -> anyhow::Result<Vec<u64>> {
    let (lo, hi) = spec
        .split_once("..")
        .with_context(|| format!("--q-range wants lo..hi, got `{spec}`"))?;
    let lo: u64 = lo.trim().parse()?;
    let hi: u64 = hi.trim().parse()?;
    Ok((lo..=hi)
        .filter(|&n| n >= 3 && n % 2 == 1 && lowzero::arith::is_prime(n))
        .collect())
}

fn collect_moduli(q: &[u64], q_range: &Option<String>) -> anyhow::Result<Vec<u64>> {
    let mut out: Vec<u64> = q.to_vec();
    if let Some(spec) = q_range {
        out.extend(parse_q_range(spec)?);
    }
    out.sort_unstable();
    out.dedup();
    if out.is_empty() {
        anyhow::bail!(Error::domain("no moduli given (use --q or --q-range)"));
    }
    Ok(out)
}

fn write_report(
    cli_out: OutputFormat,
    out_file: &Option<PathBuf>,
    tables: &[Table],
    json_value: &impl Serialize,
) -> anyhow::Result<()> {
    match out_file {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            emit(cli_out, tables, json_value, &mut f)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            emit(cli_out, tables, json_value, &mut lock)?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let mode = if cli.sequential {
        ExecMode::Sequential
    } else {
        ExecMode::default()
    };
    let cache = ZeroCache::new(&cli.cache_dir)?;

    match &cli.command {
        Command::Zeros {
            q,
            q_range,
            height,
            tolerance,
        } => cmd_zeros(&cli, &cache, mode, q, q_range, *height, *tolerance),
        Command::Stats {
            q,
            q_range,
            t,
            t0,
            h,
            beta,
            height,
        } => cmd_stats(&cli, &cache, mode, q, q_range, *t, *t0, *h, beta, *height),
        Command::ExplicitCheck {
            q,
            delta,
            t,
            t0,
            height,
            delta_cap,
        } => cmd_explicit(&cli, &cache, mode, q, *delta, *t, *t0, *height, *delta_cap),
        Command::Bounds {
            bound,
            beta,
            q,
            t,
            delta,
        } => cmd_bounds(&cli, bound, beta, *q, *t, *delta),
        Command::Crossings { f, g, lo, hi } => {
            let fid = BoundId::parse(f)?;
            let gid = BoundId::parse(g)?;
            let x = crossing_finder(fid, gid, *lo, *hi)?;
            let mut table = Table::new(
                &format!("crossing of {f} and {g} on [{lo}, {hi}]"),
                &["crossing_beta"],
            );
            table.push(vec![x]);
            write_report(cli.out, &cli.out_file, &[table], &serde_json::json!({
                "f": f, "g": g, "lo": lo, "hi": hi, "crossing_beta": x,
            }))
        }
        Command::Extremal {
            delta,
            t0,
            h,
            delta_cap,
            x_points,
            u_points,
        } => cmd_extremal(&cli, *delta, *t0, *h, *delta_cap, *x_points, *u_points),
        Command::Proportion { q, q_range, beta } => {
            cmd_proportion(&cli, &cache, mode, q, q_range, beta)
        }
    }
}

fn cmd_zeros(
    cli: &Cli,
    cache: &ZeroCache,
    mode: ExecMode,
    q: &[u64],
    q_range: &Option<String>,
    height: f64,
    tolerance: f64,
) -> anyhow::Result<()> {
    if tolerance < 1e-12 || tolerance > 1e-3 {
        anyhow::bail!(Error::domain(format!(
            "--tolerance {tolerance} outside [1e-12, 1e-3]"
        )));
    }
    let moduli = collect_moduli(q, q_range)?;
    let mut table = Table::new(
        &format!("zero cache summary (height {height})"),
        &["q", "j", "zero_count", "min_abs_gamma"],
    );
    let mut failed: Vec<(u64, String)> = Vec::new();
    let mut summaries: Vec<serde_json::Value> = Vec::new();
    for &modulus in &moduli {
        match cache.ensure(modulus, height, mode) {
            Ok(zeros) => {
                for j in 1..(modulus - 1) as u32 {
                    let count = zeros.positive(j).len();
                    let lowest = zeros.lowest(j).unwrap_or(f64::NAN);
                    table.push(vec![modulus as f64, j as f64, count as f64, lowest]);
                    summaries.push(serde_json::json!({
                        "q": modulus, "j": j, "zero_count": count, "min_abs_gamma": lowest,
                    }));
                }
            }
            Err(err) => {
                eprintln!("q = {modulus}: {err}");
                failed.push((modulus, err.to_string()));
            }
        }
    }
    write_report(cli.out, &cli.out_file, &[table], &serde_json::json!({
        "height": height,
        "rows": summaries,
        "failed": failed.iter().map(|(q, e)| serde_json::json!({"q": q, "error": e})).collect::<Vec<_>>(),
    }))?;
    if let Some((_, msg)) = failed.first() {
        anyhow::bail!(Error::domain(format!("{} modulus/moduli failed: {msg}", failed.len())));
    }
    Ok(())
}

/// Grow the cache until ensemble statistics stop reporting misses (every
/// character needs a cached lowest zero).
fn ensure_for_stats(
    cache: &ZeroCache,
    q: u64,
    t: f64,
    betas: &[f64],
    extra_height: Option<f64>,
    mode: ExecMode,
) -> anyhow::Result<CachedZeros> {
    let mut height = required_height(q, t, betas).max(extra_height.unwrap_or(0.0));
    for _ in 0..8 {
        let zeros = cache.ensure(q, height, mode)?;
        let miss = (1..(q - 1) as u32).any(|j| zeros.lowest(j).is_none());
        if !miss {
            return Ok(zeros);
        }
        height *= 1.4;
    }
    anyhow::bail!(Error::MissingZeros(format!(
        "q = {q}: some character still has no zero below height {height}"
    )))
}

#[allow(clippy::too_many_arguments)]
fn cmd_stats(
    cli: &Cli,
    cache: &ZeroCache,
    mode: ExecMode,
    q: &[u64],
    q_range: &Option<String>,
    t: Option<f64>,
    t0: Option<f64>,
    h: Option<f64>,
    beta: &[f64],
    height: Option<f64>,
) -> anyhow::Result<()> {
    let moduli = collect_moduli(q, q_range)?;
    let betas: Vec<f64> = if beta.is_empty() {
        DEFAULT_BETAS.to_vec()
    } else {
        beta.to_vec()
    };

    if let (Some(t0), Some(h)) = (t0, h) {
        // shifted-window statistics
        let mut table = Table::new(
            &format!("shifted ensemble statistics (T0 = {t0}, h = {h})"),
            &[
                "q",
                "t0",
                "h",
                "mean_tilde_s",
                "mean_square_tilde_s",
                "max_count_identity_deviation",
            ],
        );
        let mut reports = Vec::new();
        for &modulus in &moduli {
            let need = shifted_required_height(modulus, t0, h, &betas).max(height.unwrap_or(0.0));
            let zeros = cache.ensure(modulus, need, mode)?;
            let stats = shifted_ensemble_stats(modulus, t0, h, &betas, &zeros, mode)?;
            table.push(vec![
                modulus as f64,
                t0,
                h,
                stats.mean_tilde_s,
                stats.mean_square_tilde_s,
                stats.max_count_identity_deviation,
            ]);
            reports.push(stats);
        }
        return write_report(cli.out, &cli.out_file, &[table], &reports);
    }
    if t0.is_some() != h.is_some() {
        anyhow::bail!(Error::domain("--t0 and --h must be given together"));
    }

    let mut main_table = Table::new(
        "ensemble statistics with bound values",
        &[
            "q",
            "t",
            "mean_tilde_s",
            "mean_square_tilde_s",
            "thm1_bound",
            "thm2_bound",
            "lowest_zero_min",
            "lowest_zero_max",
            "central_order_mean",
        ],
    );
    let mut prop_table = Table::new(
        "lowest-zero proportions",
        &["q", "beta", "proportion"],
    );
    let mut reports = Vec::new();
    for &modulus in &moduli {
        let lnq = (modulus as f64).ln();
        let t_q = t.unwrap_or(TAU * 0.3 / lnq);
        let zeros = ensure_for_stats(cache, modulus, t_q, &betas, height, mode)?;
        let stats = ensemble_stats(modulus, t_q, &betas, &zeros, mode)?;
        let thm1 = thm1_bound(modulus, t_q)?;
        let delta = lnq / TAU;
        let (ip, im) = thm2_integrals(t_q, delta)?;
        let thm2 = thm2_bound(modulus, t_q, delta, ip, im)?;
        main_table.push(vec![
            modulus as f64,
            t_q,
            stats.mean_tilde_s,
            stats.mean_square_tilde_s,
            thm1.value,
            thm2.value,
            stats.lowest_zero_min,
            stats.lowest_zero_max,
            stats.central_order_mean,
        ]);
        for &(b, p) in &stats.proportion {
            prop_table.push(vec![modulus as f64, b, p]);
        }
        reports.push(serde_json::json!({
            "stats": stats,
            "thm1": thm1,
            "thm2": thm2,
        }));
    }
    write_report(cli.out, &cli.out_file, &[main_table, prop_table], &reports)
}

#[allow(clippy::too_many_arguments)]
fn cmd_explicit(
    cli: &Cli,
    cache: &ZeroCache,
    mode: ExecMode,
    q: &[u64],
    delta: f64,
    t: f64,
    t0: f64,
    height: f64,
    delta_cap: f64,
) -> anyhow::Result<()> {
    let moduli = collect_moduli(q, &None).or_else(|_| collect_moduli(&[5, 7, 11, 31], &None))?;
    let moduli = if q.is_empty() { vec![5, 7, 11, 31] } else { moduli };
    let mut table = Table::new(
        &format!("explicit-formula residuals (Δ={delta}, T0={t0}, h={t}, truncation {height})"),
        &["q", "j", "sign", "zero_side", "main_term", "gamma_term", "prime_term", "residual", "tail_bound", "flagged"],
    );
    let mut reports = Vec::new();
    for &modulus in &moduli {
        let zeros = cache.ensure(modulus, height + 0.5, mode)?;
        let chars = enumerate_characters(modulus)?;
        for sign in [Sign::Plus, Sign::Minus] {
            let params = ExtremalParams::with_cap(delta, t0, t, sign, delta_cap)?;
            for chi in chars.iter().skip(1) {
                let rep = explicit_formula_check(chi, &params, height, &zeros)?;
                table.push(vec![
                    modulus as f64,
                    chi.j as f64,
                    if sign == Sign::Plus { 1.0 } else { -1.0 },
                    rep.zero_side,
                    rep.main_term,
                    rep.gamma_term,
                    rep.prime_term,
                    rep.residual,
                    rep.tail_bound,
                    rep.flagged as u8 as f64,
                ]);
                reports.push(rep);
            }
        }
    }
    let any_flagged = reports.iter().any(|r| r.flagged);
    write_report(cli.out, &cli.out_file, &[table], &reports)?;
    if any_flagged {
        anyhow::bail!(Error::numerical("explicit-formula residual exceeded its tail bound"));
    }
    Ok(())
}

fn cmd_bounds(
    cli: &Cli,
    bound: &str,
    beta: &[f64],
    q: Option<u64>,
    t: Option<f64>,
    delta: Option<f64>,
) -> anyhow::Result<()> {
    let betas: Vec<f64> = if beta.is_empty() {
        DEFAULT_BETAS.to_vec()
    } else {
        beta.to_vec()
    };
    match bound {
        "thm1" => {
            let q = q.ok_or_else(|| Error::domain("thm1 needs --q"))?;
            let t = t.ok_or_else(|| Error::domain("thm1 needs --t"))?;
            let rep = thm1_bound(q, t)?;
            let mut table = Table::new("thm1 bound", &["q", "t", "value"]);
            table.push(vec![q as f64, t, rep.value]);
            write_report(cli.out, &cli.out_file, &[table], &rep)
        }
        "thm2" => {
            let q = q.ok_or_else(|| Error::domain("thm2 needs --q"))?;
            let t = t.ok_or_else(|| Error::domain("thm2 needs --t"))?;
            let d = delta.unwrap_or((q as f64).ln() / TAU);
            let (ip, im) = thm2_integrals(t, d)?;
            let rep = thm2_bound(q, t, d, ip, im)?;
            let mut table = Table::new("thm2 bound", &["q", "t", "delta", "value"]);
            table.push(vec![q as f64, t, d, rep.value]);
            write_report(cli.out, &cli.out_file, &[table], &rep)
        }
        "cor2" | "hr" | "zhao" | "shifted" => {
            let mut table = Table::new(&format!("{bound} bound"), &["beta", "value"]);
            let mut rows = Vec::new();
            for &b in &betas {
                let v = match bound {
                    "cor2" => cor2_lower_bound(b)?.value,
                    "hr" => hr_bound(b)?,
                    "zhao" => zhao_bound(b)?,
                    _ => shifted_cor_bound(b)?.value,
                };
                table.push(vec![b, v]);
                rows.push(serde_json::json!({"beta": b, "value": v}));
            }
            write_report(cli.out, &cli.out_file, &[table], &rows)
        }
        "compare" => {
            let mut table = Table::new(
                "proportion bound comparison",
                &["beta", "cor2", "hr", "zhao", "shifted"],
            );
            let mut rows = Vec::new();
            for &b in &betas {
                let cor2 = if b > 0.25 {
                    cor2_lower_bound(b)?.value
                } else {
                    f64::NAN
                };
                let hr = if b != 0.5 { hr_bound(b)? } else { f64::NAN };
                let zhao = if b > 0.5 { zhao_bound(b)? } else { f64::NAN };
                let shifted = if b > 0.25 {
                    shifted_cor_bound(b)?.value
                } else {
                    f64::NAN
                };
                table.push(vec![b, cor2, hr, zhao, shifted]);
                rows.push(serde_json::json!({
                    "beta": b, "cor2": cor2, "hr": hr, "zhao": zhao, "shifted": shifted,
                }));
            }
            let crossing = crossing_finder(BoundId::Zhao, BoundId::Cor2, 0.51, 0.9)?;
            let hr_root = crossing_finder(BoundId::Hr, BoundId::Zero, 0.51, 0.9)?;
            let mut cross_table = Table::new("crossings", &["zhao_vs_cor2", "hr_positivity_root"]);
            cross_table.push(vec![crossing, hr_root]);
            write_report(cli.out, &cli.out_file, &[table, cross_table], &serde_json::json!({
                "rows": rows,
                "zhao_vs_cor2_crossing": crossing,
                "hr_positivity_root": hr_root,
            }))
        }
        other => anyhow::bail!(Error::domain(format!(
            "unknown --bound `{other}` (thm1|thm2|cor2|hr|zhao|shifted|compare)"
        ))),
    }
}

fn cmd_extremal(
    cli: &Cli,
    delta: f64,
    t0: f64,
    h: f64,
    delta_cap: f64,
    x_points: usize,
    u_points: usize,
) -> anyhow::Result<()> {
    let plus = ExtremalParams::with_cap(delta, t0, h, Sign::Plus, delta_cap)?;
    let minus = plus.flip();
    let reach = h + 10.0 / delta;
    let mut x_table = Table::new(
        &format!("extremal functions (Δ={delta}, T0={t0}, h={h})"),
        &["x", "r_plus", "r_minus", "indicator"],
    );
    for k in 0..=x_points {
        let x = t0 - reach + 2.0 * reach * k as f64 / x_points as f64;
        x_table.push(vec![
            x,
            selberg_r_real(&plus, x),
            selberg_r_real(&minus, x),
            plus.indicator(x),
        ]);
    }
    let mut u_table = Table::new(
        "fourier transforms",
        &["u", "re_fhat_plus", "im_fhat_plus", "re_fhat_minus", "im_fhat_minus"],
    );
    for k in 0..=u_points {
        let u = -1.25 * delta + 2.5 * delta * k as f64 / u_points as f64;
        let fp = fourier_r(&plus, u)?;
        let fm = fourier_r(&minus, u)?;
        u_table.push(vec![u, fp.value.re, fp.value.im, fm.value.re, fm.value.im]);
    }
    write_report(cli.out, &cli.out_file, &[x_table, u_table], &serde_json::json!({
        "delta": delta, "t0": t0, "h": h,
    }))
}

fn cmd_proportion(
    cli: &Cli,
    cache: &ZeroCache,
    mode: ExecMode,
    q: &[u64],
    q_range: &Option<String>,
    beta: &[f64],
) -> anyhow::Result<()> {
    let moduli = collect_moduli(q, q_range)?;
    let betas: Vec<f64> = if beta.is_empty() {
        DEFAULT_BETAS.to_vec()
    } else {
        beta.to_vec()
    };
    let mut table = Table::new(
        "empirical lowest-zero proportions vs bounds",
        &["q", "beta", "empirical", "cor2", "hr", "zhao", "shifted"],
    );
    let mut rows = Vec::new();
    for &modulus in &moduli {
        let t_q = TAU * 0.3 / (modulus as f64).ln();
        let zeros = ensure_for_stats(cache, modulus, t_q, &betas, None, mode)?;
        let stats = ensemble_stats(modulus, t_q, &betas, &zeros, mode)?;
        for &(b, p) in &stats.proportion {
            let cor2 = if b > 0.25 {
                cor2_lower_bound(b)?.value
            } else {
                f64::NAN
            };
            let hr = if b != 0.5 { hr_bound(b)? } else { f64::NAN };
            let zhao = if b > 0.5 { zhao_bound(b)? } else { f64::NAN };
            let shifted = if b > 0.25 {
                shifted_cor_bound(b)?.value
            } else {
                f64::NAN
            };
            table.push(vec![modulus as f64, b, p, cor2, hr, zhao, shifted]);
            rows.push(serde_json::json!({
                "q": modulus, "beta": b, "empirical": p,
                "cor2": cor2, "hr": hr, "zhao": zhao, "shifted": shifted,
            }));
        }
    }
    write_report(cli.out, &cli.out_file, &[table], &rows)
}
