//! Integer powers and exponentials.
//!
//! Closed forms come from the polar decomposition: raising to the `n`-th
//! power multiplies the angle by `n` and the norm by itself `n` times, and
//! the same coefficients applied to `I` and `L_ε` (or `R_ε`) give the power
//! of the matrix representation without any matrix multiplication.
//! Spacelike quaternions alternate between the `sinh/cosh` and `cosh/sinh`
//! shapes with the parity of `n`.
//!
//! The naive routines (`pow_naive`, `mat_pow_naive`, `mat_exp_series`) are
//! the reference oracles for the closed forms.

use crate::error::{Error, Result};
use crate::matrix::{left_matrix, quaternion_from_left, right_matrix, Mat4, DEFAULT_EXTRACT_TOL};
use crate::polar::{decompose, PolarKind};
use crate::quaternion::{ClassifyConfig, SplitQuaternion, Vector3M};

pub const SERIES_TOL: f64 = 1e-14;
pub const SERIES_MAX_TERMS: usize = 200;

/// Tolerance on `<ε,ε>_L ∈ {-1, 0, 1}` for the Euler closed forms.
pub const EULER_AXIS_TOL: f64 = 1e-9;

/// Which closed form produced a power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerBranch {
    /// `signⁿ Nⁿ (cosh nθ + ε sinh nθ)`
    Hyperbolic,
    /// `Nⁿ (cos nθ + ε sin nθ)`
    Circular,
    /// `Nⁿ (sinh nθ + ε cosh nθ)`, spacelike base with odd `n`
    SpacelikeOdd,
    /// `Nⁿ (cosh nθ + ε sinh nθ)`, spacelike base with even `n`
    SpacelikeEven,
    /// `(2 q0)ⁿ⁻¹ q` from `q² = 2 q0 q` for null `q`. Extension: not one of
    /// the polar cases.
    Lightlike,
}

/// A power in the form `scalar_coeff + axis_coeff * axis`.
///
/// For polar branches `axis` is the unit axis `ε`; for the lightlike
/// branch it is the (null) vector part of the base.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedPower {
    pub branch: PowerBranch,
    pub scalar_coeff: f64,
    pub axis_coeff: f64,
    pub axis: Vector3M,
}

impl ClosedPower {
    pub fn quaternion(&self) -> Result<SplitQuaternion> {
        SplitQuaternion::from_parts(self.scalar_coeff, self.axis.scale(self.axis_coeff))
            .map_err(|_| Error::OverflowedToInfinity)
    }

    /// `scalar_coeff * I + axis_coeff * L_axis`.
    pub fn left_matrix(&self) -> Result<Mat4> {
        let l = left_matrix(&SplitQuaternion::from_parts_raw(0.0, self.axis));
        finite_matrix(l.identity_plus(self.scalar_coeff, self.axis_coeff))
    }

    /// `scalar_coeff * I + axis_coeff * R_axis`.
    pub fn right_matrix(&self) -> Result<Mat4> {
        let r = right_matrix(&SplitQuaternion::from_parts_raw(0.0, self.axis));
        finite_matrix(r.identity_plus(self.scalar_coeff, self.axis_coeff))
    }
}

fn finite_matrix(m: Mat4) -> Result<Mat4> {
    if m.is_finite() {
        Ok(m)
    } else {
        Err(Error::OverflowedToInfinity)
    }
}

/// `x^k` for a non-negative integer exponent.
fn int_pow(x: f64, k: u64) -> f64 {
    match i32::try_from(k) {
        Ok(k) => x.powi(k),
        Err(_) => {
            let m = x.abs().powf(k as f64);
            if x < 0.0 && k % 2 == 1 {
                -m
            } else {
                m
            }
        }
    }
}

/// Coefficients of `qⁿ` for `n ≥ 0`.
///
/// Lightlike bases use `qⁿ = (2 q0)ⁿ⁻¹ q`, which follows from the
/// characteristic identity `q² = 2 q0 q - I_q` with `I_q = 0`. This is an
/// extension beyond the polar forms.
pub fn closed_power(q: &SplitQuaternion, n: u64, cfg: &ClassifyConfig) -> Result<ClosedPower> {
    if q.is_lightlike(cfg) {
        let (scalar_coeff, axis_coeff) = if n == 0 {
            (1.0, 0.0)
        } else {
            let c = int_pow(2.0 * q.scalar(), n - 1);
            (c * q.scalar(), c)
        };
        return finish(PowerBranch::Lightlike, scalar_coeff, axis_coeff, q.vector());
    }

    let f = decompose(q, cfg)?;
    let nf = n as f64;
    let scale = (nf * f.n.ln()).exp();
    let angle = nf * f.theta;
    let (branch, a, b) = match f.kind {
        PolarKind::TimelikeSpacelikeVec => {
            let s = if f.sign < 0 && n % 2 == 1 { -scale } else { scale };
            (PowerBranch::Hyperbolic, s * angle.cosh(), s * angle.sinh())
        }
        PolarKind::TimelikeTimelikeVec => {
            (PowerBranch::Circular, scale * angle.cos(), scale * angle.sin())
        }
        PolarKind::Spacelike if n % 2 == 1 => {
            (PowerBranch::SpacelikeOdd, scale * angle.sinh(), scale * angle.cosh())
        }
        PolarKind::Spacelike => {
            (PowerBranch::SpacelikeEven, scale * angle.cosh(), scale * angle.sinh())
        }
    };
    finish(branch, a, b, f.eps)
}

fn finish(branch: PowerBranch, a: f64, b: f64, axis: Vector3M) -> Result<ClosedPower> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::OverflowedToInfinity);
    }
    Ok(ClosedPower { branch, scalar_coeff: a, axis_coeff: b, axis })
}

/// `qⁿ` by the closed forms. Negative `n` goes through the inverse.
pub fn pow_closed(q: &SplitQuaternion, n: i64, cfg: &ClassifyConfig) -> Result<SplitQuaternion> {
    if n < 0 {
        if q.is_lightlike(cfg) {
            return Err(Error::NegativePowerOfLightlike);
        }
        let inv = q.inverse(cfg)?;
        return closed_power(&inv, n.unsigned_abs(), cfg)?.quaternion();
    }
    closed_power(q, n as u64, cfg)?.quaternion()
}

/// `(L_q)ⁿ` from the closed form.
pub fn left_pow_closed(q: &SplitQuaternion, n: u64, cfg: &ClassifyConfig) -> Result<Mat4> {
    closed_power(q, n, cfg)?.left_matrix()
}

/// `(R_q)ⁿ` from the closed form.
pub fn right_pow_closed(q: &SplitQuaternion, n: u64, cfg: &ClassifyConfig) -> Result<Mat4> {
    closed_power(q, n, cfg)?.right_matrix()
}

/// `qⁿ` by `n` successive multiplications.
pub fn pow_naive(q: &SplitQuaternion, n: u64) -> SplitQuaternion {
    let mut acc = SplitQuaternion::ONE;
    for _ in 0..n {
        acc = *q * acc;
    }
    acc
}

/// `qⁿ` by repeated squaring. Exact whenever the intermediate products
/// are exactly representable.
pub fn pow_by_squaring(q: &SplitQuaternion, mut n: u64) -> SplitQuaternion {
    let mut acc = SplitQuaternion::ONE;
    let mut base = *q;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base;
        }
        n >>= 1;
        if n > 0 {
            base = base * base;
        }
    }
    acc
}

/// `Mⁿ` by `n` successive matrix products.
pub fn mat_pow_naive(m: &Mat4, n: u64) -> Mat4 {
    let mut acc = Mat4::IDENTITY;
    for _ in 0..n {
        acc = m.matmul(&acc);
    }
    acc
}

/// Character of a Euler axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AxisShape {
    Circular,
    Hyperbolic,
    Nilpotent,
}

fn axis_shape(eps: &Vector3M) -> Result<AxisShape> {
    let sq = eps.lorentz_inner(eps);
    if (sq + 1.0).abs() <= EULER_AXIS_TOL {
        Ok(AxisShape::Circular)
    } else if (sq - 1.0).abs() <= EULER_AXIS_TOL {
        Ok(AxisShape::Hyperbolic)
    } else if sq.abs() <= EULER_AXIS_TOL {
        Ok(AxisShape::Nilpotent)
    } else {
        Err(Error::NonUnitAxis)
    }
}

fn euler_coeffs(eps: &Vector3M, theta: f64) -> Result<(f64, f64)> {
    let (a, b) = match axis_shape(eps)? {
        AxisShape::Circular => (theta.cos(), theta.sin()),
        AxisShape::Hyperbolic => (theta.cosh(), theta.sinh()),
        // (L_ε)² = 0, the series stops after the linear term. Extension.
        AxisShape::Nilpotent => (1.0, theta),
    };
    if a.is_finite() && b.is_finite() {
        Ok((a, b))
    } else {
        Err(Error::OverflowedToInfinity)
    }
}

/// `exp(θ L_ε)`: `cos θ I + sin θ L_ε` for a unit timelike axis,
/// `cosh θ I + sinh θ L_ε` for a unit spacelike axis, and `I + θ L_ε` for a
/// null axis.
pub fn exp_left_closed(eps: &Vector3M, theta: f64) -> Result<Mat4> {
    let (a, b) = euler_coeffs(eps, theta)?;
    finite_matrix(left_matrix(&SplitQuaternion::from_parts_raw(0.0, *eps)).identity_plus(a, b))
}

/// `exp(θ R_ε)`, same cases as [`exp_left_closed`].
pub fn exp_right_closed(eps: &Vector3M, theta: f64) -> Result<Mat4> {
    let (a, b) = euler_coeffs(eps, theta)?;
    finite_matrix(right_matrix(&SplitQuaternion::from_parts_raw(0.0, *eps)).identity_plus(a, b))
}

/// Partial sums of `Σ Mᵏ / k!`, stopping once the newest term is below
/// `tol * max(1, |sum|)` in max-abs.
pub fn mat_exp_series(m: &Mat4, tol: f64, max_terms: usize) -> Result<Mat4> {
    let mut sum = Mat4::IDENTITY;
    let mut term = Mat4::IDENTITY;
    for k in 1..=max_terms {
        term = term.matmul(m).scale(1.0 / k as f64);
        sum = sum + term;
        if !sum.is_finite() {
            return Err(Error::OverflowedToInfinity);
        }
        if term.max_abs() <= tol * sum.max_abs().max(1.0) {
            return Ok(sum);
        }
    }
    Err(Error::SeriesDidNotConverge)
}

/// `e^q`, read back from `exp(L_q)` since `L` is an algebra homomorphism.
///
/// The series runs on `L_q / 2^s` with `|L_q / 2^s| <= 1/2` and the
/// result is squared `s` times.
pub fn exp_quaternion(q: &SplitQuaternion) -> Result<SplitQuaternion> {
    let l = left_matrix(q);
    let mut halvings = 0u32;
    let mut scaled = l;
    while scaled.max_abs() > 0.5 {
        scaled = scaled.scale(0.5);
        halvings += 1;
    }
    let mut e = mat_exp_series(&scaled, SERIES_TOL, SERIES_MAX_TERMS)?;
    for _ in 0..halvings {
        e = e.matmul(&e);
        if !e.is_finite() {
            return Err(Error::OverflowedToInfinity);
        }
    }
    quaternion_from_left(&e, DEFAULT_EXTRACT_TOL * e.max_abs().max(1.0))
}
