//! 4x4 real matrices and the left/right representations of split
//! quaternions.
//!
//! Coordinates are ordered `(q0, q1, q2, q3)` against the basis
//! `(1, i, j, k)`. `L_q` realizes `p -> qp` and `R_q` realizes `p -> pq`,
//! so `L_q coords(p) = coords(qp)` and `R_q coords(p) = coords(pq)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::SplitQuaternion;

/// Default structural tolerance for [`quaternion_from_left`].
pub const DEFAULT_EXTRACT_TOL: f64 = 1e-9;

/// Column of quaternion coordinates in the basis `(1, i, j, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QuatCoords(pub [f64; 4]);

impl From<SplitQuaternion> for QuatCoords {
    fn from(q: SplitQuaternion) -> Self {
        QuatCoords(q.to_array())
    }
}

impl QuatCoords {
    pub fn to_quaternion(self) -> Result<SplitQuaternion> {
        SplitQuaternion::from_array(self.0)
    }

    pub fn max_abs_diff(&self, other: &QuatCoords) -> f64 {
        self.0.iter().zip(other.0).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// Row-major 4x4 real matrix. Serializes as four rows of four numbers.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mat4 {
    rows: [[f64; 4]; 4],
}

impl Mat4 {
    pub const ZERO: Mat4 = Mat4 { rows: [[0.0; 4]; 4] };
    pub const IDENTITY: Mat4 = Mat4 {
        rows: [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
    };

    pub fn new(rows: [[f64; 4]; 4]) -> Result<Self> {
        let m = Mat4 { rows };
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::NonFinite)
        }
    }

    pub(crate) const fn from_rows_raw(rows: [[f64; 4]; 4]) -> Self {
        Mat4 { rows }
    }

    pub fn identity() -> Self {
        Self::IDENTITY
    }

    pub fn rows(&self) -> &[[f64; 4]; 4] {
        &self.rows
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.rows[row][col]
    }

    pub fn is_finite(&self) -> bool {
        self.rows.iter().flatten().all(|x| x.is_finite())
    }

    pub fn column(&self, col: usize) -> QuatCoords {
        QuatCoords([self.rows[0][col], self.rows[1][col], self.rows[2][col], self.rows[3][col]])
    }

    pub fn scale(&self, r: f64) -> Mat4 {
        self.map(|x| r * x)
    }

    fn map(&self, f: impl Fn(f64) -> f64) -> Mat4 {
        let mut out = self.rows;
        out.iter_mut().flatten().for_each(|x| *x = f(*x));
        Mat4 { rows: out }
    }

    fn zip(&self, other: &Mat4, f: impl Fn(f64, f64) -> f64) -> Mat4 {
        let mut out = [[0.0; 4]; 4];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = f(self.rows[r][c], other.rows[r][c]);
            }
        }
        Mat4 { rows: out }
    }

    pub fn max_abs(&self) -> f64 {
        self.rows.iter().flatten().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Mat4) -> f64 {
        self.zip(other, |a, b| a - b).max_abs()
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: QuatCoords) -> QuatCoords {
        let mut out = [0.0; 4];
        for (o, row) in out.iter_mut().zip(&self.rows) {
            *o = row.iter().zip(v.0).map(|(a, b)| a * b).sum();
        }
        QuatCoords(out)
    }

    pub fn matmul(&self, other: &Mat4) -> Mat4 {
        let (a, b) = (&self.rows, &other.rows);
        let mut out = [[0.0; 4]; 4];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = a[r][0] * b[0][c] + a[r][1] * b[1][c] + a[r][2] * b[2][c] + a[r][3] * b[3][c];
            }
        }
        Mat4 { rows: out }
    }

    /// `a * I + b * self`, the shape of every closed form in this crate.
    pub fn identity_plus(&self, a: f64, b: f64) -> Mat4 {
        let mut out = self.scale(b);
        for d in 0..4 {
            out.rows[d][d] += a;
        }
        out
    }
}

impl Add for Mat4 {
    type Output = Mat4;
    fn add(self, o: Mat4) -> Mat4 {
        self.zip(&o, |a, b| a + b)
    }
}

impl Sub for Mat4 {
    type Output = Mat4;
    fn sub(self, o: Mat4) -> Mat4 {
        self.zip(&o, |a, b| a - b)
    }
}

impl Neg for Mat4 {
    type Output = Mat4;
    fn neg(self) -> Mat4 {
        self.map(|x| -x)
    }
}

impl Mul for Mat4 {
    type Output = Mat4;
    fn mul(self, o: Mat4) -> Mat4 {
        self.matmul(&o)
    }
}

impl Mul<Mat4> for f64 {
    type Output = Mat4;
    fn mul(self, m: Mat4) -> Mat4 {
        m.scale(self)
    }
}

impl fmt::Display for Mat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|&x| crate::quaternion::format_real(x)).collect();
            let open = if r == 0 { "[[" } else { " [" };
            let close = if r == 3 { "]]" } else { "]," };
            write!(f, "{open}{}{close}", cells.join(", "))?;
            if r < 3 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// `L_q`: column `c` holds the coordinates of `q * e_c`.
pub fn left_matrix(q: &SplitQuaternion) -> Mat4 {
    let [q0, q1, q2, q3] = q.to_array();
    Mat4::from_rows_raw([
        [q0, -q1, q2, q3],
        [q1, q0, q3, -q2],
        [q2, q3, q0, -q1],
        [q3, -q2, q1, q0],
    ])
}

/// `R_q`: column `c` holds the coordinates of `e_c * q`.
pub fn right_matrix(q: &SplitQuaternion) -> Mat4 {
    let [q0, q1, q2, q3] = q.to_array();
    Mat4::from_rows_raw([
        [q0, -q1, q2, q3],
        [q1, q0, -q3, q2],
        [q2, -q3, q0, q1],
        [q3, q2, -q1, q0],
    ])
}

/// Reads `q` off column 0 and checks that `m` really is `L_q`.
pub fn quaternion_from_left(m: &Mat4, tol: f64) -> Result<SplitQuaternion> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let q = m.column(0).to_quaternion()?;
    if left_matrix(&q).max_abs_diff(m) > tol {
        return Err(Error::NotALeftRepresentation);
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: f64, b: f64, c: f64, d: f64) -> SplitQuaternion {
        SplitQuaternion::new(a, b, c, d).unwrap()
    }

    #[test]
    fn left_matrix_layout() {
        assert_eq!(left_matrix(&SplitQuaternion::ONE), Mat4::IDENTITY);
        assert_eq!(
            left_matrix(&SplitQuaternion::I).rows(),
            &[[0.0, -1.0, 0.0, 0.0], [1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, -1.0], [0.0, 0.0, 1.0, 0.0]]
        );
        assert_eq!(
            left_matrix(&q(1.0, 2.0, 3.0, 4.0)).rows(),
            &[[1.0, -2.0, 3.0, 4.0], [2.0, 1.0, 4.0, -3.0], [3.0, 4.0, 1.0, -2.0], [4.0, -3.0, 2.0, 1.0]]
        );
    }

    #[test]
    fn right_matrix_layout() {
        assert_eq!(right_matrix(&SplitQuaternion::ONE), Mat4::IDENTITY);
        assert_eq!(
            right_matrix(&SplitQuaternion::I).rows(),
            &[[0.0, -1.0, 0.0, 0.0], [1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 0.0, 1.0], [0.0, 0.0, -1.0, 0.0]]
        );
        assert_eq!(
            right_matrix(&SplitQuaternion::J).rows(),
            &[[0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0], [1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]]
        );
    }

    #[test]
    fn column_zero_is_the_quaternion() {
        let x = q(0.5, -1.0, 2.0, 3.5);
        assert_eq!(left_matrix(&x).column(0), QuatCoords::from(x));
        assert_eq!(right_matrix(&x).column(0), QuatCoords::from(x));
    }

    #[test]
    fn extraction() {
        assert_eq!(quaternion_from_left(&Mat4::IDENTITY, DEFAULT_EXTRACT_TOL), Ok(SplitQuaternion::ONE));
        let x = q(2.0, 0.0, 1.0, 0.0);
        assert_eq!(quaternion_from_left(&left_matrix(&x), DEFAULT_EXTRACT_TOL), Ok(x));

        let y = q(1.0, 2.0, 3.0, 4.0);
        let mut rows = *left_matrix(&y).rows();
        rows[0][1] = 2.0;
        let bad = Mat4::new(rows).unwrap();
        assert_eq!(quaternion_from_left(&bad, DEFAULT_EXTRACT_TOL), Err(Error::NotALeftRepresentation));
        // a right representation is not a left one unless the vector part commutes
        assert_eq!(
            quaternion_from_left(&right_matrix(&y), DEFAULT_EXTRACT_TOL),
            Err(Error::NotALeftRepresentation)
        );
    }

    #[test]
    fn matrix_ops() {
        let a = left_matrix(&q(0.5, -1.0, 2.0, 3.5)) + Mat4::new([[0.25; 4]; 4]).unwrap();
        assert_eq!(Mat4::IDENTITY * a, a);
        assert_eq!(a + (-a), Mat4::ZERO);
        assert_eq!(a - a, Mat4::ZERO);
        assert_eq!(a.scale(2.0), a + a);
        assert_eq!(
            left_matrix(&SplitQuaternion::I) * left_matrix(&SplitQuaternion::J),
            left_matrix(&SplitQuaternion::K)
        );
        assert_eq!(a.max_abs_diff(&a), 0.0);
        assert_eq!(Mat4::ZERO.identity_plus(3.0, 7.0), Mat4::IDENTITY.scale(3.0));
    }

    #[test]
    fn apply_realizes_products() {
        let v = QuatCoords([1.0, -2.0, 0.5, 4.0]);
        assert_eq!(Mat4::IDENTITY.apply(v), v);
        assert_eq!(
            left_matrix(&SplitQuaternion::I).apply(SplitQuaternion::J.into()),
            QuatCoords::from(SplitQuaternion::K)
        );
        assert_eq!(
            right_matrix(&SplitQuaternion::I).apply(SplitQuaternion::J.into()),
            QuatCoords::from(-SplitQuaternion::K)
        );
    }

    #[test]
    fn pure_square_law_basis() {
        // (L_v)^2 = <v,v>_L I
        let li = left_matrix(&SplitQuaternion::I);
        assert_eq!(li * li, -Mat4::IDENTITY);
        let lj = left_matrix(&SplitQuaternion::J);
        assert_eq!(lj * lj, Mat4::IDENTITY);
        let rk = right_matrix(&SplitQuaternion::K);
        assert_eq!(rk * rk, Mat4::IDENTITY);
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&Mat4::IDENTITY).unwrap();
        assert_eq!(s, "[[1.0,0.0,0.0,0.0],[0.0,1.0,0.0,0.0],[0.0,0.0,1.0,0.0],[0.0,0.0,0.0,1.0]]");
        let back: Mat4 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, Mat4::IDENTITY);
    }
}
