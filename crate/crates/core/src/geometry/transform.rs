//! Minimal 3-D vector/matrix types and rigid transforms.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

const ORTHONORMALITY_TOL: f64 = 1e-9;
/// Pitch values closer to pi/2 than this are treated as gimbal-degenerate.
const PITCH_DEGENERACY_MARGIN: f64 = 1e-6;

/// Plain 3-vector, meters unless stated otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(&self, o: &Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn scale(&self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        self.scale(s)
    }
}

/// Row-major 3x3 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub fn identity() -> Self {
        Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn mul_mat(&self, o: &Mat3) -> Mat3 {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.0[i][k] * o.0[k][j]).sum();
            }
        }
        Mat3(out)
    }

    pub fn mul_vec(&self, v: Vec3) -> Vec3 {
        Vec3::new(
            self.0[0][0] * v.x + self.0[0][1] * v.y + self.0[0][2] * v.z,
            self.0[1][0] * v.x + self.0[1][1] * v.y + self.0[1][2] * v.z,
            self.0[2][0] * v.x + self.0[2][1] * v.y + self.0[2][2] * v.z,
        )
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Rotation about a principal axis (0 = x, 1 = y, 2 = z).
    pub fn rotation_about_axis(axis: usize, angle: f64) -> Mat3 {
        let (s, c) = angle.sin_cos();
        match axis {
            0 => Mat3([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]]),
            1 => Mat3([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]]),
            2 => Mat3([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]),
            _ => panic!("axis must be 0, 1, or 2"),
        }
    }

    fn max_orthonormality_defect(&self) -> f64 {
        let gram = self.mul_mat(&self.transpose());
        let mut defect: f64 = 0.0;
        for (i, row) in gram.0.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((v - target).abs());
            }
        }
        defect.max((self.det() - 1.0).abs())
    }
}

/// Rotation in intrinsic XYZ order: `R = Rx(a) * Ry(b) * Rz(c)`.
pub fn euler_to_rotation(dq: Vec3) -> Mat3 {
    Mat3::rotation_about_axis(0, dq.x)
        .mul_mat(&Mat3::rotation_about_axis(1, dq.y))
        .mul_mat(&Mat3::rotation_about_axis(2, dq.z))
}

/// Inverse of [`euler_to_rotation`] on the non-degenerate domain.
///
/// Fails with `DegenerateOrientation` when the pitch magnitude reaches
/// pi/2 - 1e-6 and the roll/yaw split becomes ambiguous.
pub fn rotation_to_euler(r: &Mat3) -> Result<Vec3> {
    let m = &r.0;
    let sin_pitch = m[0][2].clamp(-1.0, 1.0);
    let pitch = sin_pitch.asin();
    if pitch.abs() >= std::f64::consts::FRAC_PI_2 - PITCH_DEGENERACY_MARGIN {
        return Err(Error::DegenerateOrientation { pitch });
    }
    let roll = (-m[1][2]).atan2(m[2][2]);
    let yaw = (-m[0][1]).atan2(m[0][0]);
    Ok(Vec3::new(roll, pitch, yaw))
}

/// Proper rigid transform: `p -> rotation * p + translation`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RigidTransform {
    pub rotation: Mat3,
    pub translation: Vec3,
}

impl RigidTransform {
    pub fn identity() -> Self {
        Self {
            rotation: Mat3::identity(),
            translation: Vec3::ZERO,
        }
    }

    /// Validating constructor: the rotation must be orthonormal with
    /// determinant +1 within 1e-9.
    pub fn new(rotation: Mat3, translation: Vec3) -> Result<Self> {
        let defect = rotation.max_orthonormality_defect();
        if defect > ORTHONORMALITY_TOL {
            return Err(Error::NonFinite(format!(
                "rotation is not orthonormal (max defect {defect:.3e})"
            )));
        }
        if !translation.is_finite() {
            return Err(Error::NonFinite("translation".into()));
        }
        Ok(Self {
            rotation,
            translation,
        })
    }

    pub fn from_translation(t: Vec3) -> Self {
        Self {
            rotation: Mat3::identity(),
            translation: t,
        }
    }

    /// Rotation about a principal axis with zero translation.
    pub fn from_axis_angle(axis: usize, angle: f64) -> Self {
        Self {
            rotation: Mat3::rotation_about_axis(axis, angle),
            translation: Vec3::ZERO,
        }
    }

    pub fn apply(&self, p: Vec3) -> Vec3 {
        self.rotation.mul_vec(p) + self.translation
    }

    pub fn inverse(&self) -> RigidTransform {
        let rt = self.rotation.transpose();
        RigidTransform {
            rotation: rt,
            translation: -rt.mul_vec(self.translation),
        }
    }
}

/// Composition: the result applies `b` first, then `a`.
pub fn compose(a: &RigidTransform, b: &RigidTransform) -> RigidTransform {
    RigidTransform {
        rotation: a.rotation.mul_mat(&b.rotation),
        translation: a.rotation.mul_vec(b.translation) + a.translation,
    }
}

impl RigidTransform {
    /// `a.compose_with(b)` applies `b` first, then `a`.
    pub fn compose_with(&self, b: &RigidTransform) -> RigidTransform {
        compose(self, b)
    }

    /// Relative transform mapping `other`-frame coordinates into `self`'s
    /// frame, both poses being frame-to-world.
    pub fn relative_from(&self, other: &RigidTransform) -> RigidTransform {
        compose(&self.inverse(), other)
    }
}
