//! Closed-form versus repeated-multiplication timing for `(L_q)ⁿ`.
//!
//! Output is CSV with the header `n,method,median_ns,max_abs_diff`. The
//! last column is the cross-check between the two methods for that `n`:
//!
//! * a number: largest absolute difference, every sample within tolerance
//! * `FAIL:<number>`: some sample exceeded the tolerance
//! * `OVERFLOW:<k>/<reps>`: `k` samples overflowed (closed form reported
//!   `OverflowedToInfinity` or the naive product went non-finite) and the
//!   rest agreed
//!
//! The relative tolerance is `1e-9 * max(1, n / 20)`, growing with the
//! rounding accumulated by the `n` naive products.

use std::fmt;
use std::hint::black_box;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{left_matrix, Mat4};
use crate::polar::decompose;
use crate::power::{left_pow_closed, mat_pow_naive};
use crate::quaternion::{ClassifyConfig, SplitQuaternion};

pub const CSV_HEADER: &str = "n,method,median_ns,max_abs_diff";
pub const DEFAULT_N_VALUES: &[u64] = &[10, 100, 1000, 100_000, 1_000_000];
pub const DEFAULT_REPS: usize = 25;
pub const DEFAULT_SEED: u64 = 42;

/// Minimum wall time per timed sample; fast calls are repeated until it
/// is reached.
const MIN_SAMPLE_TIME: Duration = Duration::from_micros(200);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Closed,
    Naive,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Naive => "naive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CrossCheck {
    Pass(f64),
    Fail(f64),
    Overflow { overflowed: usize, total: usize },
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        matches!(self, CrossCheck::Pass(_))
    }
}

impl fmt::Display for CrossCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossCheck::Pass(d) => write!(f, "{d:.3e}"),
            CrossCheck::Fail(d) => write!(f, "FAIL:{d:.3e}"),
            CrossCheck::Overflow { overflowed, total } => write!(f, "OVERFLOW:{overflowed}/{total}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: u64,
    pub method: Method,
    pub median_ns: f64,
    pub check: CrossCheck,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Samples rejected because they had no polar form.
    pub resamples: usize,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!("{},{},{:.1},{}\n", r.n, r.method.as_str(), r.median_ns, r.check));
        }
        out
    }

    pub fn row(&self, n: u64, method: Method) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.n == n && r.method == method)
    }
}

pub fn tolerance_for(n: u64) -> f64 {
    1e-9 * (n as f64 / 20.0).max(1.0)
}

/// Random unit-norm quaternions that have a polar form, with the number
/// of rejected draws.
pub fn sample_bases(count: usize, seed: u64) -> (Vec<SplitQuaternion>, usize) {
    let cfg = ClassifyConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut rejected = 0;
    while out.len() < count {
        let raw = SplitQuaternion::raw(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        );
        match raw.normalize(&cfg) {
            Ok(q) if decompose(&q, &cfg).is_ok() => out.push(q),
            _ => rejected += 1,
        }
    }
    (out, rejected)
}

fn time_per_call<T>(mut f: impl FnMut() -> T) -> f64 {
    let start = Instant::now();
    let mut iters = 0u64;
    loop {
        black_box(f());
        iters += 1;
        let elapsed = start.elapsed();
        if elapsed >= MIN_SAMPLE_TIME {
            return elapsed.as_nanos() as f64 / iters as f64;
        }
    }
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[m]
    } else {
        (xs[m - 1] + xs[m]) / 2.0
    }
}

fn cross_check(n: u64, pairs: &[(Option<Mat4>, Mat4)]) -> CrossCheck {
    let tol = tolerance_for(n);
    let mut overflowed = 0;
    let mut worst = 0.0_f64;
    let mut failed = false;
    for (closed, naive) in pairs {
        match closed {
            Some(c) if naive.is_finite() => {
                let d = c.max_abs_diff(naive);
                worst = worst.max(d);
                if d > tol * naive.max_abs().max(1.0) {
                    failed = true;
                }
            }
            _ => overflowed += 1,
        }
    }
    if failed {
        CrossCheck::Fail(worst)
    } else if overflowed > 0 {
        CrossCheck::Overflow { overflowed, total: pairs.len() }
    } else {
        CrossCheck::Pass(worst)
    }
}

/// Times `left_pow_closed` against `mat_pow_naive` for every `n`.
///
/// # Panics
/// If `reps` is zero or any `n` is zero.
pub fn bench_pow(n_values: &[u64], reps: usize, seed: u64) -> BenchReport {
    assert!(reps >= 1, "reps must be at least 1");
    assert!(n_values.iter().all(|&n| n > 0), "n values must be positive");
    let cfg = ClassifyConfig::default();
    let (bases, resamples) = sample_bases(reps, seed);
    let mut rows = Vec::with_capacity(2 * n_values.len());
    for &n in n_values {
        let mut closed_ns = Vec::with_capacity(reps);
        let mut naive_ns = Vec::with_capacity(reps);
        let mut pairs = Vec::with_capacity(reps);
        for q in &bases {
            let l = left_matrix(q);
            closed_ns.push(time_per_call(|| left_pow_closed(black_box(q), black_box(n), &cfg)));
            naive_ns.push(time_per_call(|| mat_pow_naive(black_box(&l), black_box(n))));
            pairs.push((left_pow_closed(q, n, &cfg).ok(), mat_pow_naive(&l, n)));
        }
        let check = cross_check(n, &pairs);
        rows.push(BenchRow { n, method: Method::Closed, median_ns: median(closed_ns), check });
        rows.push(BenchRow { n, method: Method::Naive, median_ns: median(naive_ns), check });
    }
    BenchReport { rows, resamples }
}
