//! Execution-mode dispatch for the per-character ensemble loops.
//!
//! Ensemble reductions must be reproducible, so parallel maps always collect
//! in character order and the reduction itself stays sequential.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How ensemble loops dispatch work across characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    /// Rayon work-stealing pool. Only available with the `parallel` feature;
    /// constructing it without the feature falls back to `Sequential`.
    Parallel,
}

impl Default for ExecMode {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Map `f` over `items`, preserving input order in the output.
pub fn ordered_map<T, R, F>(mode: ExecMode, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.into_iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => items.into_par_iter().map(f).collect(),
        #[cfg(not(feature = "parallel"))]
        ExecMode::Parallel => items.into_iter().map(f).collect(),
    }
}

/// Neumaier compensated sum over `values` in slice order.
pub fn compensated_sum(values: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for &v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
