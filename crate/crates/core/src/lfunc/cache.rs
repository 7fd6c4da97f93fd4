//! Plain-text zero cache: one file per modulus, one `zero` line per record,
//! key=value fields, ordinates printed with 12 significant digits. Inspectable
//! and diff-friendly; single writer, many readers. Reloading reproduces the
//! stored records exactly (values are round-tripped through the printed
//! precision before use, so cold and warm runs emit identical numbers).

use super::sarg::SigmaLine;
use super::zeros::{base_spacing, formula_count, formula_count_with_line, pair_scan, pick_check_height};
use super::HardyZ;
use crate::characters::{enumerate_characters, CharGroup};
use crate::error::{Error, Result};
use crate::exec::{ordered_map, ExecMode};
use crate::specialfn::hurwitz::hurwitz_zeta_row_regularized;
use crate::specialfn::EulerMaclaurinConfig;
use crate::C64;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Positive critical-line ordinates per character index for one modulus.
#[derive(Debug, Clone)]
pub struct CachedZeros {
    pub q: u64,
    pub g: u64,
    /// Every zero with 0 < γ ≤ height is present for every non-principal j.
    pub height: f64,
    pub tolerance: f64,
    zeros: BTreeMap<u32, Vec<f64>>,
    /// Character indices with |Z(0)| below the central-zero threshold.
    pub central_flags: Vec<u32>,
}

impl CachedZeros {
    /// Positive ordinates of χ_j, ascending.
    pub fn positive(&self, j: u32) -> &[f64] {
        self.zeros.get(&j).map(|v| v.as_slice()).unwrap_or(&[])
    }

    fn conj_index(&self, j: u32) -> u32 {
        ((self.q - 1 - j as u64) % (self.q - 1)) as u32
    }

    /// All ordinates of χ_j in [lo, hi] (negative side from the conjugate).
    pub fn window(&self, j: u32, lo: f64, hi: f64) -> Vec<f64> {
        let mut out = Vec::new();
        for &gamma in self.positive(self.conj_index(j)) {
            if -gamma >= lo && -gamma <= hi {
                out.push(-gamma);
            }
        }
        if self.central_flags.contains(&j) && lo <= 0.0 && 0.0 <= hi {
            out.push(0.0);
        }
        for &gamma in self.positive(j) {
            if gamma >= lo && gamma <= hi {
                out.push(gamma);
            }
        }
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out
    }

    /// |γ_{χ,0}|: height of the lowest zero of χ_j, if one is cached.
    pub fn lowest(&self, j: u32) -> Option<f64> {
        let own = self.positive(j).first().copied();
        let mirrored = self.positive(self.conj_index(j)).first().copied();
        match (own, mirrored) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (None, None) => None,
        }
    }

    /// Multiplicity flag at the central point (0 or 1; order not asserted).
    pub fn central_order(&self, j: u32) -> u32 {
        self.central_flags.contains(&j) as u32
    }
}

/// Directory-backed cache of [`CachedZeros`] files.
#[derive(Debug, Clone)]
pub struct ZeroCache {
    dir: PathBuf,
}

const TOLERANCE: f64 = 1e-9;

impl ZeroCache {
    pub fn new(dir: impl AsRef<Path>) -> Result<Self> {
        std::fs::create_dir_all(dir.as_ref())?;
        Ok(ZeroCache {
            dir: dir.as_ref().to_path_buf(),
        })
    }

    pub fn path_for(&self, q: u64) -> PathBuf {
        self.dir.join(format!("q{q:06}.zeros"))
    }

    pub fn load(&self, q: u64) -> Result<Option<CachedZeros>> {
        let path = self.path_for(q);
        if !path.exists() {
            return Ok(None);
        }
        let text = std::fs::read_to_string(&path)?;
        parse_cache(&text).map(Some)
    }

    pub fn store(&self, zeros: &CachedZeros) -> Result<()> {
        let path = self.path_for(zeros.q);
        let tmp = path.with_extension("zeros.tmp");
        {
            let mut f = std::fs::File::create(&tmp)?;
            f.write_all(format_cache(zeros).as_bytes())?;
            f.sync_all()?;
        }
        std::fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Return cached zeros covering (0, height], computing and persisting
    /// them if the cache is cold or too shallow.
    pub fn ensure(&self, q: u64, height: f64, mode: ExecMode) -> Result<CachedZeros> {
        if let Some(cached) = self.load(q)? {
            if cached.height >= height - 1e-6 {
                return Ok(cached);
            }
        }
        let computed = compute_zeros(q, height, mode)?;
        self.store(&computed)?;
        // hand out the parsed form so cold and warm runs agree bit-for-bit
        parse_cache(&format_cache(&computed))
    }
}

fn format_sig12(x: f64) -> String {
    format!("{x:.11e}")
}

fn format_cache(z: &CachedZeros) -> String {
    let mut out = String::new();
    out.push_str("# lowzero zero cache v1\n");
    out.push_str(&format!(
        "meta q={} g={} height={:.6} tolerance={:.1e}\n",
        z.q, z.g, z.height, z.tolerance
    ));
    for &j in &z.central_flags {
        out.push_str(&format!("central j={j}\n"));
    }
    for (j, gammas) in &z.zeros {
        for &gamma in gammas {
            out.push_str(&format!("zero j={j} gamma={}\n", format_sig12(gamma)));
        }
    }
    out
}

fn parse_kv<'a>(token: &'a str, key: &str, line: &str) -> Result<&'a str> {
    token
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| Error::CacheFormat(format!("expected `{key}=…` in line: {line}")))
}

fn parse_cache(text: &str) -> Result<CachedZeros> {
    let mut meta: Option<(u64, u64, f64, f64)> = None;
    let mut zeros: BTreeMap<u32, Vec<f64>> = BTreeMap::new();
    let mut central = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("meta") => {
                let q = parse_kv(tokens.next().unwrap_or(""), "q", line)?
                    .parse()
                    .map_err(|e| Error::CacheFormat(format!("bad q: {e}")))?;
                let g = parse_kv(tokens.next().unwrap_or(""), "g", line)?
                    .parse()
                    .map_err(|e| Error::CacheFormat(format!("bad g: {e}")))?;
                let height = parse_kv(tokens.next().unwrap_or(""), "height", line)?
                    .parse()
                    .map_err(|e| Error::CacheFormat(format!("bad height: {e}")))?;
                let tolerance = parse_kv(tokens.next().unwrap_or(""), "tolerance", line)?
                    .parse()
                    .map_err(|e| Error::CacheFormat(format!("bad tolerance: {e}")))?;
                meta = Some((q, g, height, tolerance));
            }
            Some("central") => {
                central.push(
                    parse_kv(tokens.next().unwrap_or(""), "j", line)?
                        .parse()
                        .map_err(|e| Error::CacheFormat(format!("bad central j: {e}")))?,
                );
            }
            Some("zero") => {
                let j: u32 = parse_kv(tokens.next().unwrap_or(""), "j", line)?
                    .parse()
                    .map_err(|e| Error::CacheFormat(format!("bad j: {e}")))?;
                let gamma: f64 = parse_kv(tokens.next().unwrap_or(""), "gamma", line)?
                    .parse()
                    .map_err(|e| Error::CacheFormat(format!("bad gamma: {e}")))?;
                zeros.entry(j).or_default().push(gamma);
            }
            other => {
                return Err(Error::CacheFormat(format!("unknown record {other:?} in: {line}")));
            }
        }
    }
    let (q, g, height, tolerance) =
        meta.ok_or_else(|| Error::CacheFormat("missing meta line".into()))?;
    for gammas in zeros.values_mut() {
        gammas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    }
    Ok(CachedZeros {
        q,
        g,
        height,
        tolerance,
        zeros,
        central_flags: central,
    })
}

/// Scan every non-principal character of modulus q up to `height`.
///
/// The critical-line Hurwitz rows of the scan grid and the σ-line used by the
/// argument-principle cross-check are shared across the whole ensemble; the
/// per-pair bisection refinements evaluate privately.
pub fn compute_zeros(q: u64, height: f64, mode: ExecMode) -> Result<CachedZeros> {
    let group = CharGroup::new(q)?;
    let chars = enumerate_characters(q)?;
    let spacing = base_spacing(q, height);
    let hc_default = height + 0.5 * spacing;
    let grid_top = height + 2.0 * spacing;
    let n_grid = (grid_top / spacing).ceil() as usize;
    let ts: Vec<f64> = (0..=n_grid).map(|k| k as f64 * spacing).collect();

    let cfg = EulerMaclaurinConfig::default();
    let hardy: Vec<HardyZ> = chars
        .iter()
        .skip(1)
        .map(HardyZ::new)
        .collect::<Result<_>>()?;

    // Z values for every character at every grid point, sharing one Hurwitz
    // row per point. values[k][j-1] = Z_j(t_k).
    let values: Vec<Vec<f64>> = ordered_map(mode, ts.clone(), |t| -> Result<Vec<f64>> {
        let s = C64::new(0.5, t);
        let row = hurwitz_zeta_row_regularized(s, q, &cfg)?;
        hardy
            .iter()
            .map(|z| z.eval_from_row(t, &row))
            .collect::<Result<Vec<f64>>>()
    })
    .into_iter()
    .collect::<Result<_>>()?;

    let line = SigmaLine::new(q, hc_default)?;

    // conjugate pair representatives: j = 1 .. (q−1)/2
    let pair_reps: Vec<u32> = (1..=((q - 1) / 2) as u32).collect();
    let scans = ordered_map(mode, pair_reps, |j| -> Result<(u32, _)> {
        let chi = group.character(j);
        let bar = chi.conjugate();
        let z_chi = &hardy[(j - 1) as usize];
        let z_bar = &hardy[(bar.j - 1) as usize];
        let col = |jj: u32| -> Vec<f64> {
            values.iter().map(|row| row[(jj - 1) as usize]).collect()
        };
        let vchi = col(j);
        let vbar = col(bar.j);

        // cross-check height: shared default unless Z is suspiciously small there
        let (hc, expected) = if z_chi.eval_normalized(hc_default)?.abs() > 1e-7
            && z_bar.eval_normalized(hc_default)?.abs() > 1e-7
        {
            (hc_default, formula_count_with_line(&line, &chi)?)
        } else {
            let hc = pick_check_height(z_chi, z_bar, height, spacing)?;
            (hc, formula_count(hc, &chi)?)
        };

        let keep = |v: Vec<(f64, f64)>| -> Vec<f64> {
            v.into_iter()
                .filter(|&(gamma, _)| gamma <= hc)
                .map(|(gamma, _)| gamma)
                .collect()
        };
        let scan = pair_scan(z_chi, z_bar, hc, Some(expected), spacing, Some((&ts, &vchi, &vbar)))?;
        let central = scan.central;
        Ok((j, (keep(scan.pos_chi), keep(scan.pos_bar), central)))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let mut zeros: BTreeMap<u32, Vec<f64>> = BTreeMap::new();
    let mut central_flags = Vec::new();
    for (j, (pos_chi, pos_bar, central)) in scans {
        let bar_j = ((q - 1 - j as u64) % (q - 1)) as u32;
        if central {
            central_flags.push(j);
            if bar_j != j {
                central_flags.push(bar_j);
            }
        }
        zeros.insert(j, round_trip(&filter_to(&pos_chi, height)));
        if bar_j != j {
            zeros.insert(bar_j, round_trip(&filter_to(&pos_bar, height)));
        }
    }
    central_flags.sort_unstable();

    Ok(CachedZeros {
        q,
        g: group.g,
        height,
        tolerance: TOLERANCE,
        zeros,
        central_flags,
    })
}

fn filter_to(v: &[f64], height: f64) -> Vec<f64> {
    v.iter().copied().filter(|&g| g <= height).collect()
}

/// Round each ordinate through the 12-significant-digit cache precision.
fn round_trip(v: &[f64]) -> Vec<f64> {
    v.iter()
        .map(|&g| format_sig12(g).parse().unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tmpdir(tag: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("lowzero-cache-test-{tag}-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        dir
    }

    #[test]
    fn compute_store_reload_roundtrip() {
        let dir = tmpdir("roundtrip");
        let cache = ZeroCache::new(&dir).unwrap();
        let z = cache.ensure(3, 10.0, ExecMode::Sequential).unwrap();
        assert_eq!(z.q, 3);
        assert_eq!(z.positive(1).len(), 1);
        assert!((z.positive(1)[0] - 8.0397).abs() < 1e-3);
        assert!(z.central_flags.is_empty());

        // reload: byte-identical re-serialization
        let text1 = std::fs::read_to_string(cache.path_for(3)).unwrap();
        let reparsed = parse_cache(&text1).unwrap();
        assert_eq!(format_cache(&reparsed), text1);

        // warm ensure returns the same ordinates without recomputation
        let z2 = cache.ensure(3, 9.0, ExecMode::Sequential).unwrap();
        assert_eq!(z2.positive(1), z.positive(1));
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn window_uses_conjugate_reflection() {
        let dir = tmpdir("window");
        let cache = ZeroCache::new(&dir).unwrap();
        let z = cache.ensure(5, 7.0, ExecMode::Sequential).unwrap();
        for j in 1..=3u32 {
            let w = z.window(j, -6.0, 6.0);
            // symmetric under j ↔ conj(j) with sign flip
            let wb: Vec<f64> = z
                .window(((5 - 1 - j as u64) % 4) as u32, -6.0, 6.0)
                .iter()
                .map(|x| -x)
                .rev()
                .collect();
            assert_eq!(w.len(), wb.len());
            for (a, b) in w.iter().zip(wb.iter()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn lowest_zero_accounts_for_both_signs() {
        let dir = tmpdir("lowest");
        let cache = ZeroCache::new(&dir).unwrap();
        let z = cache.ensure(7, 6.0, ExecMode::Sequential).unwrap();
        for j in 1..=5u32 {
            let low = z.lowest(j).expect("every character has a zero below 6");
            assert!(low > 0.0 && low <= 6.0);
            let win = z.window(j, -6.0, 6.0);
            let min_abs = win.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
            assert!((low - min_abs).abs() < 1e-12);
        }
        let _ = std::fs::remove_dir_all(&dir);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_cache("nonsense\n").is_err());
        assert!(parse_cache("zero j=1 gamma=2.0\n").is_err()); // no meta
    }
}
