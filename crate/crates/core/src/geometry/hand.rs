//! Hand-keypoint containers and camera deltas.

use super::transform::Vec3;
use crate::error::{Error, Result};

/// Keypoints per hand in the MANO layout: wrist + 5 fingers x 4 joints.
pub const KEYPOINTS_PER_HAND: usize = 21;
/// Total stacked keypoint rows (left then right).
pub const KEYPOINT_ROWS: usize = 2 * KEYPOINTS_PER_HAND;
/// Finger names in canonical row order after the wrist.
pub const FINGERS: [&str; 5] = ["thumb", "index", "middle", "ring", "pinky"];

/// 21 left + 21 right hand keypoints in a camera frame.
///
/// Row order within a hand: wrist (row 0), then each finger of [`FINGERS`]
/// with 4 rows proximal to tip. The stacked 42x3 form is left rows 0..21,
/// right rows 21..42.
#[derive(Debug, Clone, PartialEq)]
pub struct HandKeypoints {
    pub left: [Vec3; KEYPOINTS_PER_HAND],
    pub right: [Vec3; KEYPOINTS_PER_HAND],
    /// Timestep tag of the camera frame the coordinates live in.
    pub frame_id: i64,
}

impl HandKeypoints {
    pub fn new(
        left: [Vec3; KEYPOINTS_PER_HAND],
        right: [Vec3; KEYPOINTS_PER_HAND],
        frame_id: i64,
    ) -> Result<Self> {
        for (i, p) in left.iter().chain(right.iter()).enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFinite(format!("keypoint row {i}")));
            }
        }
        Ok(Self {
            left,
            right,
            frame_id,
        })
    }

    /// Stacked 42x3 view: left rows then right rows.
    pub fn stacked(&self) -> [Vec3; KEYPOINT_ROWS] {
        let mut out = [Vec3::ZERO; KEYPOINT_ROWS];
        out[..KEYPOINTS_PER_HAND].copy_from_slice(&self.left);
        out[KEYPOINTS_PER_HAND..].copy_from_slice(&self.right);
        out
    }

    pub fn from_stacked(rows: &[Vec3; KEYPOINT_ROWS], frame_id: i64) -> Self {
        let mut left = [Vec3::ZERO; KEYPOINTS_PER_HAND];
        let mut right = [Vec3::ZERO; KEYPOINTS_PER_HAND];
        left.copy_from_slice(&rows[..KEYPOINTS_PER_HAND]);
        right.copy_from_slice(&rows[KEYPOINTS_PER_HAND..]);
        Self {
            left,
            right,
            frame_id,
        }
    }

    /// Row index of a hand's wrist in the stacked 42x3 form.
    pub fn wrist_row(right_hand: bool) -> usize {
        if right_hand {
            KEYPOINTS_PER_HAND
        } else {
            0
        }
    }

    /// Row index of a fingertip in the stacked 42x3 form
    /// (`finger` indexes [`FINGERS`]).
    pub fn fingertip_row(right_hand: bool, finger: usize) -> usize {
        let base = if right_hand { KEYPOINTS_PER_HAND } else { 0 };
        base + 1 + finger * 4 + 3
    }
}

/// Camera translation and Euler-orientation delta between two frames.
#[derive(Debug, Clone, PartialEq)]
pub struct CameraDelta {
    /// Translation delta in meters.
    pub dt: Vec3,
    /// Orientation delta as intrinsic-XYZ Euler angles, radians.
    pub dq: Vec3,
}

impl CameraDelta {
    pub fn zero() -> Self {
        Self {
            dt: Vec3::ZERO,
            dq: Vec3::ZERO,
        }
    }

    /// Validating constructor: Euler angles must lie in (-pi, pi] and the
    /// pitch strictly inside (-pi/2, pi/2).
    pub fn new(dt: Vec3, dq: Vec3) -> Result<Self> {
        if !dt.is_finite() || !dq.is_finite() {
            return Err(Error::NonFinite("camera delta".into()));
        }
        let pi = std::f64::consts::PI;
        for angle in [dq.x, dq.y, dq.z] {
            if angle <= -pi || angle > pi {
                return Err(Error::DegenerateOrientation { pitch: angle });
            }
        }
        if dq.y.abs() >= std::f64::consts::FRAC_PI_2 {
            return Err(Error::DegenerateOrientation { pitch: dq.y });
        }
        Ok(Self { dt, dq })
    }
}

/// Static rest pose for the left hand.
///
/// The desk environments drive only the right hand; the left sits parked at
/// the top-left of the workspace with fingers fanned toward +y. Generated by
/// formula so the table stays deterministic and inside the 56x56 image.
pub fn left_hand_rest_pose() -> [Vec3; KEYPOINTS_PER_HAND] {
    let wrist = Vec3::new(0.10, 0.44, 0.0);
    let mut out = [Vec3::ZERO; KEYPOINTS_PER_HAND];
    out[0] = wrist;
    let fan_deg: [f64; 5] = [130.0, 110.0, 90.0, 70.0, 50.0];
    for (finger, deg) in fan_deg.iter().enumerate() {
        let theta = deg.to_radians();
        let dir = Vec3::new(theta.cos(), theta.sin(), 0.0);
        for ring in 0..4 {
            let reach = 0.012 * (ring as f64 + 1.0);
            out[1 + finger * 4 + ring] = wrist + dir * reach;
        }
    }
    out
}
