//! Polar forms of non-lightlike split quaternions.
//!
//! | kind                     | form                            | axis            |
//! |--------------------------|---------------------------------|-----------------|
//! | `TimelikeSpacelikeVec`   | `sign * N (cosh θ + ε sinh θ)`  | unit spacelike  |
//! | `TimelikeTimelikeVec`    | `N (cos θ + ε sin θ)`           | unit timelike   |
//! | `Spacelike`              | `N (sinh θ + ε cosh θ)`         | unit spacelike  |
//!
//! The `sign` factor covers timelike quaternions with a negative scalar
//! part, for which `cosh θ = q0 / N` has no solution.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::{CausalCharacter, ClassifyConfig, SplitQuaternion, Vector3M};

/// Tolerance on `<ε,ε>_L = ±1` accepted by [`reconstruct`].
pub const AXIS_TOL: f64 = 1e-9;

/// Axis used for timelike quaternions with zero vector part.
pub const CANONICAL_AXIS: Vector3M = Vector3M { u1: 0.0, u2: 0.0, u3: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolarKind {
    /// Timelike quaternion, spacelike (or zero) vector part: hyperbolic form.
    TimelikeSpacelikeVec,
    /// Timelike quaternion, timelike vector part: circular form.
    TimelikeTimelikeVec,
    /// Spacelike quaternion: the `sinh/cosh`-swapped hyperbolic form.
    Spacelike,
}

impl PolarKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PolarKind::TimelikeSpacelikeVec => "timelike-spacelike-vec",
            PolarKind::TimelikeTimelikeVec => "timelike-timelike-vec",
            PolarKind::Spacelike => "spacelike",
        }
    }

    /// Required value of `<ε,ε>_L` for this kind.
    pub fn axis_square(&self) -> f64 {
        match self {
            PolarKind::TimelikeTimelikeVec => -1.0,
            _ => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarForm {
    pub kind: PolarKind,
    /// The norm `N_q`, always positive for a produced decomposition.
    pub n: f64,
    pub theta: f64,
    pub eps: Vector3M,
    /// `±1`; only differs from `+1` for [`PolarKind::TimelikeSpacelikeVec`].
    pub sign: i8,
}

/// Splits `q` into one of the three polar forms according to its causal
/// character and that of its vector part.
pub fn decompose(q: &SplitQuaternion, cfg: &ClassifyConfig) -> Result<PolarForm> {
    let q0 = q.scalar();
    let v = q.vector();
    let vv = v.lorentz_inner(&v);
    let form = match q.classify(cfg) {
        CausalCharacter::Lightlike => return Err(Error::LightlikeNoPolarForm),
        CausalCharacter::Timelike if v.is_zero() => PolarForm {
            kind: PolarKind::TimelikeSpacelikeVec,
            n: q0.abs(),
            theta: 0.0,
            eps: CANONICAL_AXIS,
            sign: sign_of(q0),
        },
        CausalCharacter::Timelike => match v.classify(cfg) {
            CausalCharacter::Lightlike => return Err(Error::NullVectorPart),
            CausalCharacter::Spacelike => {
                let s = vv.sqrt();
                let a = q0.abs();
                let n = ((a - s) * (a + s)).sqrt();
                let sign = sign_of(q0);
                // q = sign N (cosh θ + ε sinh θ) with θ >= 0 puts the sign on ε too.
                PolarForm {
                    kind: PolarKind::TimelikeSpacelikeVec,
                    n,
                    theta: (s / n).asinh(),
                    eps: v.scale(f64::from(sign) / s),
                    sign,
                }
            }
            CausalCharacter::Timelike => {
                let s = (-vv).sqrt();
                PolarForm {
                    kind: PolarKind::TimelikeTimelikeVec,
                    n: q0.hypot(s),
                    theta: s.atan2(q0),
                    eps: v.scale(1.0 / s),
                    sign: 1,
                }
            }
        },
        CausalCharacter::Spacelike => {
            // <V,V> = q0² - I_q > q0², so V is spacelike and s > |q0|.
            let s = vv.sqrt();
            let n = ((s - q0) * (s + q0)).sqrt();
            PolarForm {
                kind: PolarKind::Spacelike,
                n,
                theta: (q0 / n).asinh(),
                eps: v.scale(1.0 / s),
                sign: 1,
            }
        }
    };
    // Only reachable with a zero-width band right at the light cone.
    if form.n.is_nan() || form.n <= 0.0 || !form.theta.is_finite() || !form.eps.is_finite() {
        return Err(Error::LightlikeNoPolarForm);
    }
    Ok(form)
}

/// Rebuilds the quaternion a polar form denotes.
pub fn reconstruct(f: &PolarForm) -> Result<SplitQuaternion> {
    check_axis(f.kind, &f.eps)?;
    let (scalar, along_axis) = match f.kind {
        PolarKind::TimelikeSpacelikeVec => {
            let s = f64::from(f.sign) * f.n;
            (s * f.theta.cosh(), s * f.theta.sinh())
        }
        PolarKind::TimelikeTimelikeVec => (f.n * f.theta.cos(), f.n * f.theta.sin()),
        PolarKind::Spacelike => (f.n * f.theta.sinh(), f.n * f.theta.cosh()),
    };
    SplitQuaternion::from_parts(scalar, f.eps.scale(along_axis))
}

pub(crate) fn check_axis(kind: PolarKind, eps: &Vector3M) -> Result<()> {
    if (eps.lorentz_inner(eps) - kind.axis_square()).abs() > AXIS_TOL {
        return Err(Error::InvalidAxis);
    }
    Ok(())
}

fn sign_of(x: f64) -> i8 {
    if x < 0.0 {
        -1
    } else {
        1
    }
}
