//! Split quaternions (coquaternions): algebra, causal classification,
//! polar forms, left/right 4x4 real matrix representations, closed-form
//! integer powers and Euler-type matrix exponentials.
//!
//! ```
//! use coquat::{pow_closed, pow_naive, ClassifyConfig, SplitQuaternion};
//!
//! let q = SplitQuaternion::new(1.0, 2.0, 1.0, 0.0).unwrap();
//! let cfg = ClassifyConfig::default();
//! let closed = pow_closed(&q, 3, &cfg).unwrap();
//! assert!((closed - pow_naive(&q, 3)).max_abs() < 1e-12);
//! ```

pub mod acceptance;
pub mod bench;
pub mod calc;
pub mod error;
pub mod matrix;
pub mod polar;
pub mod power;
pub mod quaternion;

pub use error::{Error, Result};
pub use matrix::{left_matrix, quaternion_from_left, right_matrix, Mat4, QuatCoords};
pub use polar::{decompose, reconstruct, PolarForm, PolarKind};
pub use power::{
    closed_power, exp_left_closed, exp_quaternion, exp_right_closed, left_pow_closed,
    mat_exp_series, mat_pow_naive, pow_by_squaring, pow_closed, pow_naive, right_pow_closed,
    ClosedPower, PowerBranch,
};
pub use quaternion::{format_real, CausalCharacter, ClassifyConfig, SplitQuaternion, Vector3M};
