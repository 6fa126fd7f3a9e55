//! Rigid transforms, hand-keypoint containers, and the keypoint-delta action
//! encoding.
//!
//! All geometry is double precision. Conventions fixed here and relied on by
//! every other module:
//!
//! * Euler angles are intrinsic XYZ (`R = Rx(a) * Ry(b) * Rz(c)`), radians.
//! * The 42x3 keypoint stack is left hand rows 0..21, right hand rows 21..42;
//!   within a hand: wrist, then thumb through pinky, each proximal to tip.
//! * The flattened action vector is 44x3 = 132 values, row-major: the 42 hand
//!   delta rows, then camera translation delta, then camera Euler delta.

mod hand;
mod transform;

pub use hand::{
    left_hand_rest_pose, CameraDelta, HandKeypoints, FINGERS, KEYPOINTS_PER_HAND, KEYPOINT_ROWS,
};
pub use transform::{compose, euler_to_rotation, rotation_to_euler, Mat3, RigidTransform, Vec3};

use crate::error::{Error, Result};

/// Number of action rows: 42 hand keypoints + camera translation + camera
/// orientation.
pub const ACTION_ROWS: usize = 44;
/// Flattened action dimension (44 x 3).
pub const ACTION_DIM: usize = ACTION_ROWS * 3;

/// Hand-keypoint displacement plus camera motion between two frames.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionVector {
    /// 42x3 keypoint deltas in meters, frame-k1 coordinates.
    pub hand_deltas: [Vec3; KEYPOINT_ROWS],
    /// Camera translation/orientation delta.
    pub camera: CameraDelta,
}

impl ActionVector {
    /// The all-zero action (no hand motion, no camera motion).
    pub fn zero() -> Self {
        Self {
            hand_deltas: [Vec3::ZERO; KEYPOINT_ROWS],
            camera: CameraDelta::zero(),
        }
    }

    /// Row-major 132-dim flattening: hand rows first, then dt, then dq.
    pub fn flatten(&self) -> [f64; ACTION_DIM] {
        let mut out = [0.0; ACTION_DIM];
        for (i, row) in self.hand_deltas.iter().enumerate() {
            out[3 * i] = row.x;
            out[3 * i + 1] = row.y;
            out[3 * i + 2] = row.z;
        }
        let t = KEYPOINT_ROWS * 3;
        out[t] = self.camera.dt.x;
        out[t + 1] = self.camera.dt.y;
        out[t + 2] = self.camera.dt.z;
        out[t + 3] = self.camera.dq.x;
        out[t + 4] = self.camera.dq.y;
        out[t + 5] = self.camera.dq.z;
        out
    }

    /// Inverse of [`flatten`](Self::flatten).
    pub fn from_flat(flat: &[f64]) -> Result<Self> {
        if flat.len() != ACTION_DIM {
            return Err(Error::ShapeMismatch(format!(
                "action vector expects {ACTION_DIM} values, got {}",
                flat.len()
            )));
        }
        let mut hand_deltas = [Vec3::ZERO; KEYPOINT_ROWS];
        for (i, row) in hand_deltas.iter_mut().enumerate() {
            *row = Vec3::new(flat[3 * i], flat[3 * i + 1], flat[3 * i + 2]);
        }
        let t = KEYPOINT_ROWS * 3;
        Ok(Self {
            hand_deltas,
            camera: CameraDelta {
                dt: Vec3::new(flat[t], flat[t + 1], flat[t + 2]),
                dq: Vec3::new(flat[t + 3], flat[t + 4], flat[t + 5]),
            },
        })
    }
}

/// Re-express keypoints given in frame k2 into frame k1.
///
/// `t_21` maps frame-k2 coordinates into frame k1; every point becomes
/// `rotation * p + translation` and the frame tag is updated.
pub fn reexpress_keypoints(h2: &HandKeypoints, t_21: &RigidTransform, frame_k1: i64) -> HandKeypoints {
    let map = |p: &Vec3| t_21.apply(*p);
    HandKeypoints {
        left: core::array::from_fn(|i| map(&h2.left[i])),
        right: core::array::from_fn(|i| map(&h2.right[i])),
        frame_id: frame_k1,
    }
}

/// Keypoint-delta action between two frames.
///
/// `h2` is first re-expressed into frame k1 via `t_21`, the per-row
/// difference against `h1` forms the 42x3 block, and the camera delta is
/// copied verbatim.
pub fn compute_action(
    h1: &HandKeypoints,
    h2: &HandKeypoints,
    t_21: &RigidTransform,
    cam_delta: &CameraDelta,
) -> Result<ActionVector> {
    let h2_in_k1 = reexpress_keypoints(h2, t_21, h1.frame_id);
    let s1 = h1.stacked();
    let s2 = h2_in_k1.stacked();
    let mut hand_deltas = [Vec3::ZERO; KEYPOINT_ROWS];
    for i in 0..KEYPOINT_ROWS {
        let d = s2[i] - s1[i];
        if !d.is_finite() {
            return Err(Error::NonFinite(format!("hand delta row {i}")));
        }
        hand_deltas[i] = d;
    }
    Ok(ActionVector {
        hand_deltas,
        camera: cam_delta.clone(),
    })
}

/// Radii multipliers for the four dummy-gripper keypoint rings, proximal to
/// tip.
pub const GRIPPER_RING_SCALES: [f64; 4] = [0.25, 0.5, 0.75, 1.0];
/// Angular positions of the five dummy fingers in the end-effector x-y plane.
pub const GRIPPER_FINGER_ANGLES_DEG: [f64; 5] = [-90.0, -45.0, 0.0, 45.0, 90.0];

/// Dummy-gripper keypoint layout parameters.
#[derive(Debug, Clone)]
pub struct GripperLayout {
    /// Fingertip ring radius when fully closed (meters).
    pub r_min: f64,
    /// Fingertip ring radius when fully open (meters).
    pub r_max: f64,
}

impl Default for GripperLayout {
    fn default() -> Self {
        Self {
            r_min: 0.01,
            r_max: 0.04,
        }
    }
}

/// Stand-in hand keypoints for a parallel-jaw gripper.
///
/// The 21 right-hand keypoints sit on four concentric circles in the
/// end-effector's local x-y plane; the wrist is the circle center and the
/// ring radius interpolates linearly with the gripper opening. The left hand
/// is the static rest pose.
pub fn dummy_gripper_keypoints(
    ee_pose: &RigidTransform,
    open_fraction: f64,
    layout: &GripperLayout,
) -> HandKeypoints {
    let open = open_fraction.clamp(0.0, 1.0);
    let r = layout.r_min + open * (layout.r_max - layout.r_min);
    let mut right = [Vec3::ZERO; KEYPOINTS_PER_HAND];
    // Row 0 is the wrist at the circle center.
    right[0] = ee_pose.apply(Vec3::ZERO);
    for (finger, angle_deg) in GRIPPER_FINGER_ANGLES_DEG.iter().enumerate() {
        let theta = angle_deg.to_radians();
        for (ring, scale) in GRIPPER_RING_SCALES.iter().enumerate() {
            let local = Vec3::new(r * scale * theta.cos(), r * scale * theta.sin(), 0.0);
            right[1 + finger * 4 + ring] = ee_pose.apply(local);
        }
    }
    HandKeypoints {
        left: left_hand_rest_pose(),
        right,
        frame_id: 0,
    }
}

#[cfg(test)]
mod tests;
