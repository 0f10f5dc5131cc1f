//! Split-quaternion values, the Lorentzian 3-vector operations they are
//! built from, and causal classification.
//!
//! A split quaternion is `q0 + q1 i + q2 j + q3 k` with
//! `i² = -1`, `j² = k² = 1` and `ijk = 1`. The vector part lives in
//! Minkowski 3-space with signature `(-, +, +)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default absolute width of the lightlike band.
pub const DEFAULT_TAU: f64 = 1e-12;

/// Three-way causal character of a quaternion or a Minkowski vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CausalCharacter {
    Timelike,
    Spacelike,
    Lightlike,
}

impl CausalCharacter {
    pub fn as_str(&self) -> &'static str {
        match self {
            CausalCharacter::Timelike => "Timelike",
            CausalCharacter::Spacelike => "Spacelike",
            CausalCharacter::Lightlike => "Lightlike",
        }
    }
}

impl fmt::Display for CausalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Tolerance used to decide when a quadratic form counts as zero.
///
/// A value `x` of the form is treated as zero when
/// `|x| <= tau * max(1, s)`, where `s` is the squared Euclidean magnitude
/// of the argument. Exact zero is always lightlike.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyConfig {
    tau: f64,
}

impl ClassifyConfig {
    /// # Panics
    /// If `tau` is negative or not finite.
    pub fn new(tau: f64) -> Self {
        assert!(tau.is_finite() && tau >= 0.0, "tau must be finite and non-negative, got {tau}");
        Self { tau }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    fn character_of(&self, form: f64, magnitude_sq: f64) -> CausalCharacter {
        if form.abs() <= self.tau * magnitude_sq.max(1.0) {
            CausalCharacter::Lightlike
        } else if form > 0.0 {
            CausalCharacter::Timelike
        } else {
            CausalCharacter::Spacelike
        }
    }
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        Self { tau: DEFAULT_TAU }
    }
}

/// A vector of Minkowski 3-space, identified with a pure split quaternion.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vector3M {
    pub u1: f64,
    pub u2: f64,
    pub u3: f64,
}

impl Vector3M {
    pub const ZERO: Vector3M = Vector3M { u1: 0.0, u2: 0.0, u3: 0.0 };

    pub fn new(u1: f64, u2: f64, u3: f64) -> Result<Self> {
        let v = Self { u1, u2, u3 };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn is_finite(&self) -> bool {
        self.u1.is_finite() && self.u2.is_finite() && self.u3.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.u1 == 0.0 && self.u2 == 0.0 && self.u3 == 0.0
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.u1, self.u2, self.u3]
    }

    pub fn scale(self, r: f64) -> Self {
        Self { u1: r * self.u1, u2: r * self.u2, u3: r * self.u3 }
    }

    /// Squared Euclidean length, used only for tolerance scaling.
    pub fn euclid_sq(&self) -> f64 {
        self.u1 * self.u1 + self.u2 * self.u2 + self.u3 * self.u3
    }

    /// `<u, v>_L = -u1 v1 + u2 v2 + u3 v3`.
    pub fn lorentz_inner(&self, other: &Vector3M) -> f64 {
        -self.u1 * other.u1 + self.u2 * other.u2 + self.u3 * other.u3
    }

    /// Lorentzian vector product: the formal determinant with first row
    /// `(-e1, e2, e3)`.
    pub fn lorentz_cross(&self, other: &Vector3M) -> Vector3M {
        let (a, b) = (self, other);
        Vector3M {
            u1: -(a.u2 * b.u3 - a.u3 * b.u2),
            u2: -(a.u1 * b.u3 - a.u3 * b.u1),
            u3: a.u1 * b.u2 - a.u2 * b.u1,
        }
    }

    /// Spacelike when `<v,v>_L > 0`, timelike when `< 0`, lightlike inside
    /// the tolerance band.
    pub fn classify(&self, cfg: &ClassifyConfig) -> CausalCharacter {
        // <v,v>_L < 0 is timelike, the opposite sign convention to I_q.
        cfg.character_of(-self.lorentz_inner(self), self.euclid_sq())
    }
}

impl Add for Vector3M {
    type Output = Vector3M;
    fn add(self, o: Vector3M) -> Vector3M {
        Vector3M { u1: self.u1 + o.u1, u2: self.u2 + o.u2, u3: self.u3 + o.u3 }
    }
}

impl Sub for Vector3M {
    type Output = Vector3M;
    fn sub(self, o: Vector3M) -> Vector3M {
        Vector3M { u1: self.u1 - o.u1, u2: self.u2 - o.u2, u3: self.u3 - o.u3 }
    }
}

impl Neg for Vector3M {
    type Output = Vector3M;
    fn neg(self) -> Vector3M {
        self.scale(-1.0)
    }
}

/// Basis index: 0 = 1, 1 = i, 2 = j, 3 = k.
type Basis = usize;

/// `BASIS_PRODUCTS[a][b] = (sign, c)` means `e_a * e_b = sign * e_c`.
pub(crate) const BASIS_PRODUCTS: [[(f64, Basis); 4]; 4] = [
    // 1 * (1, i, j, k)
    [(1.0, 0), (1.0, 1), (1.0, 2), (1.0, 3)],
    // i * (1, i, j, k) = (i, -1, k, -j)
    [(1.0, 1), (-1.0, 0), (1.0, 3), (-1.0, 2)],
    // j * (1, i, j, k) = (j, -k, 1, -i)
    [(1.0, 2), (-1.0, 3), (1.0, 0), (-1.0, 1)],
    // k * (1, i, j, k) = (k, j, i, 1)
    [(1.0, 3), (1.0, 2), (1.0, 1), (1.0, 0)],
];

/// A split quaternion `q0 + q1 i + q2 j + q3 k`.
///
/// [`SplitQuaternion::new`] rejects NaN and infinities. The arithmetic
/// operators are infallible and can overflow on extreme inputs; use
/// [`SplitQuaternion::ensure_finite`] where that matters.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SplitQuaternion {
    pub(crate) q0: f64,
    pub(crate) q1: f64,
    pub(crate) q2: f64,
    pub(crate) q3: f64,
}

impl SplitQuaternion {
    pub const ZERO: Self = Self::raw(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::raw(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::raw(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::raw(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::raw(0.0, 0.0, 0.0, 1.0);

    pub(crate) const fn raw(q0: f64, q1: f64, q2: f64, q3: f64) -> Self {
        Self { q0, q1, q2, q3 }
    }

    pub fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Result<Self> {
        Self::raw(q0, q1, q2, q3).ensure_finite()
    }

    pub fn from_array(c: [f64; 4]) -> Result<Self> {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub fn from_scalar(s: f64) -> Result<Self> {
        Self::new(s, 0.0, 0.0, 0.0)
    }

    pub fn from_parts(scalar: f64, vector: Vector3M) -> Result<Self> {
        Self::new(scalar, vector.u1, vector.u2, vector.u3)
    }

    /// The pure quaternion denoted by a Minkowski vector.
    pub fn pure(v: Vector3M) -> Result<Self> {
        Self::from_parts(0.0, v)
    }

    pub(crate) fn from_parts_raw(scalar: f64, v: Vector3M) -> Self {
        Self::raw(scalar, v.u1, v.u2, v.u3)
    }

    pub fn ensure_finite(self) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }
    pub fn q1(&self) -> f64 {
        self.q1
    }
    pub fn q2(&self) -> f64 {
        self.q2
    }
    pub fn q3(&self) -> f64 {
        self.q3
    }

    /// Scalar part `S_q`.
    pub fn scalar(&self) -> f64 {
        self.q0
    }

    /// Vector part `V_q`.
    pub fn vector(&self) -> Vector3M {
        Vector3M { u1: self.q1, u2: self.q2, u3: self.q3 }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.q0, self.q1, self.q2, self.q3]
    }

    pub fn scale(self, r: f64) -> Self {
        Self::raw(r * self.q0, r * self.q1, r * self.q2, r * self.q3)
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// Squared Euclidean magnitude of the coordinate vector.
    pub fn euclid_sq(&self) -> f64 {
        self.to_array().iter().map(|c| c * c).sum()
    }

    /// Product computed term by term from the basis multiplication table.
    pub fn mul_table(&self, other: &Self) -> Self {
        let p = self.to_array();
        let q = other.to_array();
        let mut out = [0.0; 4];
        for (a, row) in BASIS_PRODUCTS.iter().enumerate() {
            for (b, &(sign, c)) in row.iter().enumerate() {
                out[c] += sign * (p[a] * q[b]);
            }
        }
        Self::raw(out[0], out[1], out[2], out[3])
    }

    /// Product from the scalar/vector decomposition:
    /// `S_p S_q + <V_p,V_q>_L + S_p V_q + S_q V_p + V_p x_L V_q`.
    pub fn mul_lorentz(&self, other: &Self) -> Self {
        let (sp, sq) = (self.scalar(), other.scalar());
        let (vp, vq) = (self.vector(), other.vector());
        let scalar = sp * sq + vp.lorentz_inner(&vq);
        let vector = vq.scale(sp) + vp.scale(sq) + vp.lorentz_cross(&vq);
        Self::from_parts_raw(scalar, vector)
    }

    pub fn conjugate(&self) -> Self {
        Self::raw(self.q0, -self.q1, -self.q2, -self.q3)
    }

    /// `I_q = q q̄ = q0² + q1² - q2² - q3²`.
    pub fn iq(&self) -> f64 {
        self.q0 * self.q0 + self.q1 * self.q1 - self.q2 * self.q2 - self.q3 * self.q3
    }

    /// `N_q = sqrt(|I_q|)`.
    pub fn norm(&self) -> f64 {
        self.iq().abs().sqrt()
    }

    pub fn classify(&self, cfg: &ClassifyConfig) -> CausalCharacter {
        cfg.character_of(self.iq(), self.euclid_sq())
    }

    pub fn is_lightlike(&self, cfg: &ClassifyConfig) -> bool {
        self.classify(cfg) == CausalCharacter::Lightlike
    }

    /// `q / N_q`. The result keeps the causal character of `q`.
    pub fn normalize(&self, cfg: &ClassifyConfig) -> Result<Self> {
        if self.is_lightlike(cfg) {
            return Err(Error::LightlikeNormalization);
        }
        self.scale(1.0 / self.norm()).ensure_finite()
    }

    /// `q̄ / I_q`.
    pub fn inverse(&self, cfg: &ClassifyConfig) -> Result<Self> {
        if self.is_lightlike(cfg) {
            return Err(Error::LightlikeInverse);
        }
        self.conjugate().scale(1.0 / self.iq()).ensure_finite()
    }
}

impl Mul for SplitQuaternion {
    type Output = SplitQuaternion;

    fn mul(self, rhs: SplitQuaternion) -> SplitQuaternion {
        let out = self.mul_table(&rhs);
        #[cfg(debug_assertions)]
        {
            let check = self.mul_lorentz(&rhs);
            let bound = 1e-12 * (self.max_abs() * rhs.max_abs()).max(1.0);
            let agree = out
                .to_array()
                .iter()
                .zip(check.to_array())
                .all(|(a, b)| !a.is_finite() || !b.is_finite() || (a - b).abs() <= bound);
            debug_assert!(agree, "table and Lorentzian products disagree: {out:?} vs {check:?}");
        }
        out
    }
}

impl Add for SplitQuaternion {
    type Output = SplitQuaternion;
    fn add(self, o: SplitQuaternion) -> SplitQuaternion {
        Self::raw(self.q0 + o.q0, self.q1 + o.q1, self.q2 + o.q2, self.q3 + o.q3)
    }
}

impl Sub for SplitQuaternion {
    type Output = SplitQuaternion;
    fn sub(self, o: SplitQuaternion) -> SplitQuaternion {
        Self::raw(self.q0 - o.q0, self.q1 - o.q1, self.q2 - o.q2, self.q3 - o.q3)
    }
}

impl Neg for SplitQuaternion {
    type Output = SplitQuaternion;
    fn neg(self) -> SplitQuaternion {
        Self::raw(-self.q0, -self.q1, -self.q2, -self.q3)
    }
}

impl Mul<SplitQuaternion> for f64 {
    type Output = SplitQuaternion;
    fn mul(self, q: SplitQuaternion) -> SplitQuaternion {
        q.scale(self)
    }
}

/// Shortest decimal that parses back to the same `f64`.
///
/// Plain notation for magnitudes in `[1e-5, 1e16)`, exponent notation
/// otherwise. Zero (of either sign) prints as `0`.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let a = x.abs();
    if (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// Text form `a+bi+cj+dk`: zero terms are dropped, unit coefficients are
/// written as the bare unit, and the zero quaternion prints as `0`.
impl fmt::Display for SplitQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if self.q0 != 0.0 {
            out.push_str(&format_real(self.q0));
        }
        for (c, unit) in [(self.q1, 'i'), (self.q2, 'j'), (self.q3, 'k')] {
            if c == 0.0 {
                continue;
            }
            if c < 0.0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1.0 {
                out.push_str(&format_real(c.abs()));
            }
            out.push(unit);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}
