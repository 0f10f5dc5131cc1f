//! The acceptance suite: ten seeded, oracle-backed checks over the whole
//! crate. Each check reports pass/fail with a one-line detail.

use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bench::{bench_pow, Method};
use crate::calc::{evaluate, golden_output, parse_golden, Value};
use crate::matrix::{left_matrix, right_matrix, Mat4, QuatCoords};
use crate::polar::{decompose, reconstruct, PolarKind};
use crate::power::{
    closed_power, exp_left_closed, exp_right_closed, left_pow_closed, mat_exp_series,
    mat_pow_naive, pow_closed, pow_naive, right_pow_closed, PowerBranch,
};
use crate::quaternion::{CausalCharacter, ClassifyConfig, SplitQuaternion, Vector3M};

pub const SEED: u64 = 0x5EED_C0DE;

/// Golden expressions for the calculator check.
pub const GOLDEN: &str = include_str!("../tests/data/golden.txt");

/// Vector parts with `|<V,V>_L| <= NULL_BAND * max(1, |V|²)` count as
/// near-null and are left out of random polar and power samples.
pub const NULL_BAND: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

fn outcome(id: u32, name: &'static str, passed: bool, detail: String) -> Outcome {
    Outcome { id, name, passed, detail }
}

/// Random quaternion classes used by the power checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleClass {
    TimelikeSpacelikeVec,
    TimelikeTimelikeVec,
    Spacelike,
    Lightlike,
}

impl SampleClass {
    pub const ALL: [SampleClass; 4] = [
        SampleClass::TimelikeSpacelikeVec,
        SampleClass::TimelikeTimelikeVec,
        SampleClass::Spacelike,
        SampleClass::Lightlike,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SampleClass::TimelikeSpacelikeVec => "timelike-spacelike-vec",
            SampleClass::TimelikeTimelikeVec => "timelike-timelike-vec",
            SampleClass::Spacelike => "spacelike",
            SampleClass::Lightlike => "lightlike",
        }
    }
}

fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-2.0..2.0)
}

pub fn random_quaternion(rng: &mut ChaCha8Rng) -> SplitQuaternion {
    SplitQuaternion::raw(uniform(rng), uniform(rng), uniform(rng), uniform(rng))
}

pub fn near_null_vector(q: &SplitQuaternion) -> bool {
    let v = q.vector();
    v.lorentz_inner(&v).abs() <= NULL_BAND * v.euclid_sq().max(1.0)
}

/// Rejection sampling from `[-2, 2]⁴`; lightlike samples are built on the
/// cone as `(a, b, r cos φ, r sin φ)` with `r = √(a² + b²)`.
pub fn sample_class(rng: &mut ChaCha8Rng, class: SampleClass, cfg: &ClassifyConfig) -> SplitQuaternion {
    if class == SampleClass::Lightlike {
        let (a, b) = (uniform(rng), uniform(rng));
        let r = a.hypot(b);
        let phi = rng.gen_range(0.0..2.0 * PI);
        return SplitQuaternion::raw(a, b, r * phi.cos(), r * phi.sin());
    }
    loop {
        let q = random_quaternion(rng);
        if near_null_vector(&q) {
            continue;
        }
        let kind = match decompose(&q, cfg) {
            Ok(f) => f.kind,
            Err(_) => continue,
        };
        let wanted = match class {
            SampleClass::TimelikeSpacelikeVec => PolarKind::TimelikeSpacelikeVec,
            SampleClass::TimelikeTimelikeVec => PolarKind::TimelikeTimelikeVec,
            SampleClass::Spacelike => PolarKind::Spacelike,
            SampleClass::Lightlike => unreachable!(),
        };
        if kind == wanted {
            return q;
        }
    }
}

/// Unit timelike (`<ε,ε>_L = -1`) axis.
pub fn random_timelike_axis(rng: &mut ChaCha8Rng) -> Vector3M {
    let a: f64 = rng.gen_range(-1.5..1.5);
    let phi = rng.gen_range(0.0..2.0 * PI);
    let s = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    Vector3M { u1: s * a.cosh(), u2: a.sinh() * phi.cos(), u3: a.sinh() * phi.sin() }
}

/// Unit spacelike (`<ε,ε>_L = 1`) axis.
pub fn random_spacelike_axis(rng: &mut ChaCha8Rng) -> Vector3M {
    let a: f64 = rng.gen_range(-1.5..1.5);
    let phi = rng.gen_range(0.0..2.0 * PI);
    Vector3M { u1: a.sinh(), u2: a.cosh() * phi.cos(), u3: a.cosh() * phi.sin() }
}

fn expected_basis_product(a: usize, b: usize) -> [f64; 4] {
    // rows/columns ordered 1, i, j, k
    const TABLE: [[(f64, usize); 4]; 4] = [
        [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
        [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
        [(1.0, 2), (-1.0, 3), (1.0, 0), (-1.0, 1)],
        [(1.0, 3), (1.0, 2), (1.0, 1), (1.0, 0)],
    ];
    let (s, idx) = TABLE[a][b];
    let mut out = [0.0; 4];
    out[idx] = s;
    out
}

pub fn product_table() -> Outcome {
    let basis = [SplitQuaternion::ONE, SplitQuaternion::I, SplitQuaternion::J, SplitQuaternion::K];
    let mut mismatches = Vec::new();
    for (a, x) in basis.iter().enumerate() {
        for (b, y) in basis.iter().enumerate() {
            let want = expected_basis_product(a, b);
            let bits = |c: [f64; 4]| c.map(f64::to_bits);
            if bits((*x * *y).to_array()) != bits(want) || bits(x.mul_lorentz(y).to_array()) != bits(want) {
                mismatches.push(format!("{x}*{y}"));
            }
        }
    }
    let passed = mismatches.is_empty();
    let detail = if passed {
        "16/16 basis products bit-exact".to_string()
    } else {
        format!("mismatched: {}", mismatches.join(", "))
    };
    outcome(1, "product table", passed, detail)
}

pub fn representation_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let (q, p) = (random_quaternion(&mut rng), random_quaternion(&mut rng));
        let left = left_matrix(&q).apply(QuatCoords::from(p)).max_abs_diff(&QuatCoords::from(q * p));
        let right = right_matrix(&q).apply(QuatCoords::from(p)).max_abs_diff(&QuatCoords::from(p * q));
        worst = worst.max(left).max(right);
    }
    outcome(2, "representation laws", worst <= 1e-13, format!("max-abs {worst:.3e} (tol 1e-13)"))
}

pub fn homomorphisms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let mut worst = 0.0_f64;
    for _ in 0..1000 {
        let (p, q) = (random_quaternion(&mut rng), random_quaternion(&mut rng));
        let l = left_matrix(&p).matmul(&left_matrix(&q));
        let r = right_matrix(&q).matmul(&right_matrix(&p));
        let dl = left_matrix(&(p * q)).max_abs_diff(&l) / l.max_abs().max(1.0);
        let dr = right_matrix(&(p * q)).max_abs_diff(&r) / r.max_abs().max(1.0);
        worst = worst.max(dl).max(dr);
    }
    outcome(3, "L and R homomorphisms", worst <= 1e-12, format!("scaled max-abs {worst:.3e} (tol 1e-12)"))
}

/// Reference magnitude for an error in `qⁿ`: the larger of `N_qⁿ` and the
/// naive result. For null `q` (`N_q = 0`) the Euclidean `|q|ⁿ` stands in
/// for `N_qⁿ`.
fn power_scale(q: &SplitQuaternion, n: u64, class: SampleClass, naive_max: f64) -> f64 {
    let base = if class == SampleClass::Lightlike { q.euclid_sq().sqrt() } else { q.norm() };
    base.powi(n as i32).max(naive_max).max(f64::MIN_POSITIVE)
}

pub fn de_moivre_quaternion() -> Outcome {
    let cfg = ClassifyConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let mut worst = 0.0_f64;
    let mut errors = 0;
    for class in SampleClass::ALL {
        for _ in 0..100 {
            let q = sample_class(&mut rng, class, &cfg);
            for n in 0..=20u64 {
                match pow_closed(&q, n as i64, &cfg) {
                    Ok(c) => {
                        let naive = pow_naive(&q, n);
                        let rel = (c - naive).max_abs() / power_scale(&q, n, class, naive.max_abs());
                        worst = worst.max(rel);
                    }
                    Err(_) => errors += 1,
                }
            }
        }
    }
    let passed = worst <= 1e-9 && errors == 0;
    outcome(
        4,
        "De Moivre (quaternion)",
        passed,
        format!("4 classes x 100 x n=0..20, relative {worst:.3e} (tol 1e-9), {errors} errors"),
    )
}

pub fn de_moivre_matrix() -> Outcome {
    let cfg = ClassifyConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    let mut worst = 0.0_f64;
    let mut errors = 0;
    let mut parity_violations = 0;
    for class in SampleClass::ALL {
        for _ in 0..100 {
            let q = sample_class(&mut rng, class, &cfg);
            let (l, r) = (left_matrix(&q), right_matrix(&q));
            for n in 0..=20u64 {
                let (Ok(lc), Ok(rc), Ok(pc), Ok(cp)) = (
                    left_pow_closed(&q, n, &cfg),
                    right_pow_closed(&q, n, &cfg),
                    pow_closed(&q, n as i64, &cfg),
                    closed_power(&q, n, &cfg),
                ) else {
                    errors += 1;
                    continue;
                };
                let (ln, rn) = (mat_pow_naive(&l, n), mat_pow_naive(&r, n));
                let scale = power_scale(&q, n, class, ln.max_abs().max(rn.max_abs()));
                let diffs = [
                    lc.max_abs_diff(&ln),
                    lc.max_abs_diff(&left_matrix(&pc)),
                    rc.max_abs_diff(&rn),
                    rc.max_abs_diff(&right_matrix(&pc)),
                ];
                for d in diffs {
                    worst = worst.max(d / scale);
                }
                if class == SampleClass::Spacelike {
                    let want = if n % 2 == 1 { PowerBranch::SpacelikeOdd } else { PowerBranch::SpacelikeEven };
                    if cp.branch != want {
                        parity_violations += 1;
                    }
                }
            }
        }
    }
    let passed = worst <= 1e-9 && errors == 0 && parity_violations == 0;
    outcome(
        5,
        "De Moivre (matrix)",
        passed,
        format!(
            "left/right vs naive and vs L/R of pow_closed, relative {worst:.3e} (tol 1e-9), \
             {errors} errors, {parity_violations} parity mismatches"
        ),
    )
}

pub fn euler() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let mut axes = Vec::new();
    for _ in 0..10 {
        axes.push(random_timelike_axis(&mut rng));
        axes.push(random_spacelike_axis(&mut rng));
        axes.push(Vector3M { u1: 1.0, u2: 1.0, u3: 0.0 });
    }
    let mut worst = 0.0_f64;
    let mut errors = 0;
    for eps in &axes {
        let l = left_matrix(&SplitQuaternion::from_parts_raw(0.0, *eps));
        let r = right_matrix(&SplitQuaternion::from_parts_raw(0.0, *eps));
        for step in -30..=30 {
            let theta = step as f64 / 10.0;
            let pairs = [
                (exp_left_closed(eps, theta), mat_exp_series(&l.scale(theta), 1e-14, 200)),
                (exp_right_closed(eps, theta), mat_exp_series(&r.scale(theta), 1e-14, 200)),
            ];
            for pair in pairs {
                match pair {
                    (Ok(c), Ok(s)) => worst = worst.max(c.max_abs_diff(&s)),
                    _ => errors += 1,
                }
            }
        }
    }
    let at_pi = exp_left_closed(&Vector3M { u1: 1.0, u2: 0.0, u3: 0.0 }, PI)
        .map(|m| m.max_abs_diff(&Mat4::IDENTITY.scale(-1.0)))
        .unwrap_or(f64::INFINITY);
    let passed = worst <= 1e-10 && errors == 0 && at_pi <= 1e-12;
    outcome(
        6,
        "Euler exponentials",
        passed,
        format!("closed vs series max-abs {worst:.3e} (tol 1e-10), {errors} errors; exp(pi L_i) + I off by {at_pi:.3e}"),
    )
}

pub fn polar_round_trip() -> Outcome {
    let cfg = ClassifyConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let mut worst = 0.0_f64;
    let mut kind_mismatches = 0;
    let mut checked = 0;
    while checked < 1000 {
        let q = random_quaternion(&mut rng);
        if q.is_lightlike(&cfg) || near_null_vector(&q) {
            continue;
        }
        checked += 1;
        let expected_kind = match (q.classify(&cfg), q.vector().classify(&cfg)) {
            (CausalCharacter::Timelike, CausalCharacter::Spacelike) => Some(PolarKind::TimelikeSpacelikeVec),
            (CausalCharacter::Timelike, CausalCharacter::Timelike) => Some(PolarKind::TimelikeTimelikeVec),
            (CausalCharacter::Spacelike, _) => Some(PolarKind::Spacelike),
            _ => None,
        };
        match decompose(&q, &cfg) {
            Ok(f) => {
                if Some(f.kind) != expected_kind {
                    kind_mismatches += 1;
                }
                match reconstruct(&f) {
                    Ok(back) => worst = worst.max((back - q).max_abs() / q.max_abs().max(1.0)),
                    Err(_) => kind_mismatches += 1,
                }
            }
            Err(_) => kind_mismatches += 1,
        }
    }
    let passed = worst <= 1e-12 && kind_mismatches == 0;
    outcome(
        7,
        "polar round trip",
        passed,
        format!("1000 samples, relative {worst:.3e} (tol 1e-12), {kind_mismatches} kind mismatches"),
    )
}

pub fn algebraic_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    let (mut conj, mut iq, mut cross) = (0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..1000 {
        let (p, q) = (random_quaternion(&mut rng), random_quaternion(&mut rng));
        conj = conj.max(((p * q).conjugate() - q.conjugate() * p.conjugate()).max_abs());
        let prod = p.iq() * q.iq();
        iq = iq.max(((p * q).iq() - prod).abs() / prod.abs().max(1.0));
        let (u, v) = (p.vector(), q.vector());
        let w = u.lorentz_cross(&v);
        cross = cross.max(w.lorentz_inner(&u).abs()).max(w.lorentz_inner(&v).abs());
    }
    let h = SplitQuaternion::raw(0.0, 1.0, 1.0, 0.0);
    let nil = (h * h).to_array() == [0.0; 4];
    let worst = conj.max(iq).max(cross);
    outcome(
        8,
        "algebraic identities",
        worst <= 1e-12 && nil,
        format!(
            "anti-automorphism {conj:.3e}, I multiplicative {iq:.3e}, cross orthogonal {cross:.3e} \
             (tol 1e-12); (i+j)^2 = 0 {}",
            if nil { "exactly" } else { "FAILED" }
        ),
    )
}

pub fn calculator() -> Outcome {
    let cases = parse_golden(GOLDEN);
    let golden_failures: Vec<String> = cases
        .iter()
        .filter_map(|c| {
            let got = golden_output(&c.expr);
            (got != c.expected).then(|| format!("line {}: {} gave {got:?}", c.line, c.expr))
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut round_trip_failures = 0;
    for _ in 0..1000 {
        let q = random_round_trip_quaternion(&mut rng);
        let text = q.to_string();
        let back = match evaluate(&text) {
            Ok(Value::Quat(b)) => Some(b),
            Ok(Value::Scalar(s)) => Some(SplitQuaternion::raw(s, 0.0, 0.0, 0.0)),
            _ => None,
        };
        // numeric equality: negated literals carry -0 in their zero slots
        let exact = back.is_some_and(|b| b.to_array() == q.to_array());
        if !exact {
            round_trip_failures += 1;
        }
    }
    let passed = cases.len() >= 30 && golden_failures.is_empty() && round_trip_failures == 0;
    let mut detail = format!(
        "{}/{} golden lines, {}/1000 print/parse round trips exact",
        cases.len() - golden_failures.len(),
        cases.len(),
        1000 - round_trip_failures
    );
    if let Some(first) = golden_failures.first() {
        detail.push_str(&format!("; first failure {first}"));
    }
    outcome(9, "calculator", passed, detail)
}

/// Mixed magnitudes and exact zeros, so every formatting path is hit.
fn random_round_trip_quaternion(rng: &mut ChaCha8Rng) -> SplitQuaternion {
    let mut c = [0.0; 4];
    for x in &mut c {
        *x = match rng.gen_range(0..6) {
            0 => 0.0,
            1 => rng.gen_range(-5i32..=5) as f64,
            2 => rng.gen_range(-1e-9..1e-9),
            3 => rng.gen_range(-1e20..1e20),
            _ => rng.gen_range(-100.0..100.0),
        };
    }
    SplitQuaternion::raw(c[0], c[1], c[2], c[3])
}

/// Latency ratio at `n = 10⁶`. The ratio is only meaningful in an
/// optimized build.
pub fn performance(reps: usize) -> Outcome {
    const N: u64 = 1_000_000;
    let report = bench_pow(&[1, 5, 20, N], reps, SEED);
    let small_ok = [1u64, 5, 20]
        .iter()
        .all(|&n| report.row(n, Method::Closed).is_some_and(|r| r.check.passed()));
    let big = (report.row(N, Method::Closed), report.row(N, Method::Naive));
    let (Some(closed), Some(naive)) = big else {
        return outcome(10, "performance", false, "missing bench rows".to_string());
    };
    let ratio = naive.median_ns / closed.median_ns;
    // at 10⁶ the closed form may legitimately overflow, but it must be flagged
    let big_ok = !matches!(closed.check, crate::bench::CrossCheck::Fail(_));
    let passed = ratio >= 50.0 && small_ok && big_ok;
    outcome(
        10,
        "performance",
        passed,
        format!(
            "n=1e6 closed {:.1} ns vs naive {:.1} ns, ratio {ratio:.0}x (need 50x); cross-check n<=20 {}, n=1e6 {}",
            closed.median_ns,
            naive.median_ns,
            if small_ok { "ok" } else { "FAILED" },
            closed.check
        ),
    )
}

/// Runs all ten checks in order.
pub fn run_all() -> Vec<Outcome> {
    vec![
        product_table(),
        representation_laws(),
        homomorphisms(),
        de_moivre_quaternion(),
        de_moivre_matrix(),
        euler(),
        polar_round_trip(),
        algebraic_identities(),
        calculator(),
        performance(5),
    ]
}
