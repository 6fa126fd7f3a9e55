//! Robot models and forward kinematics mapping joint angles to hand
//! keypoints.
//!
//! Two built-in models:
//!
//! * `desk11` — the default mini-chain: a planar 3-joint arm plus 4 fingers
//!   with 2 revolute joints each (11 joints). Small enough that the rest-pose
//!   golden table is hand-checkable.
//! * `paper23` — the structural 23-joint layout (7-joint arm, 4 fingers with
//!   4 joints each). The per-link table is not calibrated against any real
//!   robot; it exists so the full layout is exercised end to end.
//!
//! Both models bind all 21 right-hand keypoints; with four physical fingers
//! the pinky bindings reference the ring-finger links, so those keypoint rows
//! are exact duplicates.

use crate::error::{Error, Result};
use crate::geometry::{
    left_hand_rest_pose, ActionVector, CameraDelta, HandKeypoints, RigidTransform, Vec3,
    KEYPOINTS_PER_HAND,
};
use serde::{Deserialize, Serialize};

/// Joint angles in radians; length must match the robot model.
#[derive(Debug, Clone, PartialEq)]
pub struct JointConfig(pub Vec<f64>);

impl JointConfig {
    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// One revolute link: a fixed offset from its parent followed by a rotation
/// about `axis`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Link {
    /// Parent link index; `None` for the root.
    pub parent: Option<usize>,
    /// Fixed transform from the parent joint frame to this joint frame at
    /// zero angle.
    pub offset: RigidTransform,
    /// Rotation axis index: 0 = x, 1 = y, 2 = z.
    pub axis: usize,
    /// Axis sign, so fingers on opposite sides can curl toward each other.
    pub axis_sign: f64,
    /// Joint limits (radians).
    pub limits: (f64, f64),
    /// Physical length of the link (meters), used for reach bounds.
    pub length: f64,
}

/// Binding of a right-hand keypoint to a link-local offset.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KeypointBinding {
    pub link: usize,
    pub local: Vec3,
}

/// Kinematic tree plus the map from MANO right-hand keypoints to links.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RobotModel {
    pub name: String,
    pub links: Vec<Link>,
    /// Exactly 21 bindings in canonical row order (wrist, then thumb..pinky
    /// proximal to tip).
    pub bindings: Vec<KeypointBinding>,
    /// Arm joint count (the leading joints); the rest are finger joints.
    pub arm_joints: usize,
}

impl RobotModel {
    pub fn joint_count(&self) -> usize {
        self.links.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.bindings.len() != KEYPOINTS_PER_HAND {
            return Err(Error::DimensionMismatch(format!(
                "{} keypoint bindings, expected {KEYPOINTS_PER_HAND}",
                self.bindings.len()
            )));
        }
        for (i, link) in self.links.iter().enumerate() {
            match link.parent {
                Some(p) if p >= i => {
                    return Err(Error::DimensionMismatch(format!(
                        "link {i} has parent {p}, breaking the tree order"
                    )));
                }
                None if i != 0 => {
                    return Err(Error::DimensionMismatch(format!(
                        "non-root link {i} has no parent"
                    )));
                }
                _ => {}
            }
            if link.axis > 2 {
                return Err(Error::DimensionMismatch(format!(
                    "link {i} axis {} out of range",
                    link.axis
                )));
            }
        }
        for (k, b) in self.bindings.iter().enumerate() {
            if b.link >= self.links.len() {
                return Err(Error::DimensionMismatch(format!(
                    "binding {k} references missing link {}",
                    b.link
                )));
            }
        }
        Ok(())
    }

    pub fn check_limits(&self, theta: &JointConfig) -> Result<()> {
        if theta.len() != self.joint_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} joint angles for a {}-joint model",
                theta.len(),
                self.joint_count()
            )));
        }
        for (j, (&v, link)) in theta.0.iter().zip(&self.links).enumerate() {
            let (lo, hi) = link.limits;
            if !(lo..=hi).contains(&v) {
                return Err(Error::JointLimitViolation {
                    joint: j,
                    value: v,
                    lo,
                    hi,
                });
            }
        }
        Ok(())
    }

    /// Clamp a configuration into the model's joint limits.
    pub fn clamp(&self, theta: &JointConfig) -> JointConfig {
        JointConfig(
            theta
                .0
                .iter()
                .zip(&self.links)
                .map(|(&v, l)| v.clamp(l.limits.0, l.limits.1))
                .collect(),
        )
    }

    /// Per-link world transforms for a configuration (no limit check).
    fn link_transforms(&self, theta: &JointConfig) -> Vec<RigidTransform> {
        let mut out: Vec<RigidTransform> = Vec::with_capacity(self.links.len());
        for (i, link) in self.links.iter().enumerate() {
            let joint = RigidTransform::from_axis_angle(link.axis, link.axis_sign * theta.0[i]);
            let local = link.offset.compose_with(&joint);
            let world = match link.parent {
                Some(p) => out[p].compose_with(&local),
                None => local,
            };
            out.push(world);
        }
        out
    }

    /// World position of every right-hand keypoint, canonical row order.
    pub fn keypoint_positions(&self, theta: &JointConfig) -> Result<Vec<Vec3>> {
        self.check_limits(theta)?;
        let transforms = self.link_transforms(theta);
        Ok(self
            .bindings
            .iter()
            .map(|b| transforms[b.link].apply(b.local))
            .collect())
    }

    /// Distinct physical fingertip positions (one per real finger).
    pub fn physical_fingertips(&self, theta: &JointConfig) -> Result<Vec<Vec3>> {
        let kp = self.keypoint_positions(theta)?;
        let mut tips: Vec<Vec3> = Vec::new();
        for finger in 0..5 {
            let tip = kp[1 + finger * 4 + 3];
            if !tips.iter().any(|t| (*t - tip).norm() < 1e-12) {
                tips.push(tip);
            }
        }
        Ok(tips)
    }

    /// Wrist world position.
    pub fn wrist_position(&self, theta: &JointConfig) -> Result<Vec3> {
        Ok(self.keypoint_positions(theta)?[0])
    }

    /// All link segments (start, end) in world coordinates, for contact and
    /// rendering.
    pub fn link_segments(&self, theta: &JointConfig) -> Result<Vec<(Vec3, Vec3)>> {
        self.check_limits(theta)?;
        let transforms = self.link_transforms(theta);
        Ok(transforms
            .iter()
            .zip(&self.links)
            .map(|(t, link)| {
                let start = t.apply(Vec3::ZERO);
                let end = t.apply(Vec3::new(link.length, 0.0, 0.0));
                (start, end)
            })
            .collect())
    }

    /// Per-joint sum of downstream link lengths: a bound on how far any
    /// keypoint moves per radian of that joint.
    pub fn downstream_reach(&self) -> Vec<f64> {
        let n = self.links.len();
        let mut reach = vec![0.0; n];
        for (i, slot) in reach.iter_mut().enumerate() {
            let mut total = 0.0;
            for (j, link) in self.links.iter().enumerate() {
                let mut cur = Some(j);
                while let Some(c) = cur {
                    if c == i {
                        total += link.length;
                        break;
                    }
                    cur = self.links[c].parent;
                }
            }
            *slot = total;
        }
        reach
    }

    /// Mean finger joint angle, the grasp-closure signal.
    pub fn mean_finger_angle(&self, theta: &JointConfig) -> f64 {
        let fingers = &theta.0[self.arm_joints..];
        if fingers.is_empty() {
            return 0.0;
        }
        fingers.iter().sum::<f64>() / fingers.len() as f64
    }
}

/// Forward kinematics: joint angles to the full 42-keypoint stack.
///
/// Right-hand keypoints come from the kinematic chain; the left hand is the
/// static rest pose. Deterministic.
pub fn forward_kinematics(model: &RobotModel, theta: &JointConfig) -> Result<HandKeypoints> {
    let positions = model.keypoint_positions(theta)?;
    let mut right = [Vec3::ZERO; KEYPOINTS_PER_HAND];
    right.copy_from_slice(&positions);
    Ok(HandKeypoints {
        left: left_hand_rest_pose(),
        right,
        frame_id: 0,
    })
}

/// Action between two joint configurations: right-hand keypoint deltas from
/// forward kinematics, zero left-hand rows, zero camera motion.
pub fn joint_action(
    model: &RobotModel,
    theta_k: &JointConfig,
    theta_next: &JointConfig,
) -> Result<ActionVector> {
    let from = forward_kinematics(model, theta_k)?;
    let to = forward_kinematics(model, theta_next)?;
    let mut action = ActionVector::zero();
    for i in 0..KEYPOINTS_PER_HAND {
        action.hand_deltas[KEYPOINTS_PER_HAND + i] = to.right[i] - from.right[i];
    }
    // Left-hand rows stay zero (static rest pose) and camera motion is
    // excluded from joint-space actions.
    action.camera = CameraDelta::zero();
    Ok(action)
}

/// The desk-scale mini-chain: planar 3-joint arm plus 4 two-joint fingers.
pub fn desk11() -> RobotModel {
    let base = Vec3::new(0.28, 0.04, 0.0);
    let arm_lengths = [0.12, 0.10, 0.08];
    let finger_lengths = [0.03, 0.025];
    let fan_deg: [f64; 4] = [-45.0, -15.0, 15.0, 45.0];
    let pi = std::f64::consts::PI;

    let mut links = Vec::new();
    // Arm rooted at `base`, zero pose pointing +y, all joints about z.
    links.push(Link {
        parent: None,
        offset: RigidTransform {
            rotation: crate::geometry::Mat3::rotation_about_axis(2, pi / 2.0),
            translation: base,
        },
        axis: 2,
        axis_sign: 1.0,
        limits: (-pi, pi),
        length: arm_lengths[0],
    });
    for i in 1..3 {
        links.push(Link {
            parent: Some(i - 1),
            offset: RigidTransform::from_translation(Vec3::new(arm_lengths[i - 1], 0.0, 0.0)),
            axis: 2,
            axis_sign: 1.0,
            limits: (-pi, pi),
            length: arm_lengths[i],
        });
    }
    // Fingers fan out from a small palm ring around the wrist (the end of
    // the last arm link); positive joint angles curl every finger toward the
    // wrist axis.
    let palm = 0.02;
    for &deg in &fan_deg {
        let fan = deg.to_radians();
        let sign = if deg > 0.0 { -1.0 } else { 1.0 };
        let first = links.len();
        links.push(Link {
            parent: Some(2),
            offset: RigidTransform {
                rotation: crate::geometry::Mat3::rotation_about_axis(2, fan),
                translation: Vec3::new(
                    arm_lengths[2] + palm * fan.cos(),
                    palm * fan.sin(),
                    0.0,
                ),
            },
            axis: 2,
            axis_sign: sign,
            limits: (0.0, pi / 2.0),
            length: finger_lengths[0],
        });
        links.push(Link {
            parent: Some(first),
            offset: RigidTransform::from_translation(Vec3::new(finger_lengths[0], 0.0, 0.0)),
            axis: 2,
            axis_sign: sign,
            limits: (0.0, pi / 2.0),
            length: finger_lengths[1],
        });
    }

    let bindings = finger_bindings(
        2,
        arm_lengths[2],
        &[(3, 4), (5, 6), (7, 8), (9, 10)],
        finger_lengths,
    );

    RobotModel {
        name: "desk11".to_string(),
        links,
        bindings,
        arm_joints: 3,
    }
}

/// Structural 23-joint layout: 7-joint arm plus 4 four-joint fingers.
///
/// Link lengths are plausible placeholders, not calibrated values.
pub fn paper23() -> RobotModel {
    let pi = std::f64::consts::PI;
    let base = Vec3::new(0.28, 0.04, 0.0);
    // Alternating axes give the arm full spatial reach.
    let arm: [(usize, f64); 7] = [
        (2, 0.10),
        (1, 0.10),
        (2, 0.08),
        (1, 0.08),
        (2, 0.06),
        (1, 0.05),
        (2, 0.04),
    ];
    let finger_segments = [0.02, 0.018, 0.015, 0.012];
    let fan_deg: [f64; 4] = [-45.0, -15.0, 15.0, 45.0];

    let mut links = Vec::new();
    links.push(Link {
        parent: None,
        offset: RigidTransform {
            rotation: crate::geometry::Mat3::rotation_about_axis(2, pi / 2.0),
            translation: base,
        },
        axis: arm[0].0,
        axis_sign: 1.0,
        limits: (-pi, pi),
        length: arm[0].1,
    });
    for i in 1..7 {
        links.push(Link {
            parent: Some(i - 1),
            offset: RigidTransform::from_translation(Vec3::new(arm[i - 1].1, 0.0, 0.0)),
            axis: arm[i].0,
            axis_sign: 1.0,
            limits: (-pi, pi),
            length: arm[i].1,
        });
    }
    let wrist_link = 6;
    let palm = 0.015;
    let mut finger_roots = Vec::new();
    for &deg in &fan_deg {
        let fan = deg.to_radians();
        let sign = if deg > 0.0 { -1.0 } else { 1.0 };
        finger_roots.push(links.len());
        for (seg, &len) in finger_segments.iter().enumerate() {
            let parent = if seg == 0 { wrist_link } else { links.len() - 1 };
            let offset = if seg == 0 {
                RigidTransform {
                    rotation: crate::geometry::Mat3::rotation_about_axis(2, fan),
                    translation: Vec3::new(
                        arm[6].1 + palm * fan.cos(),
                        palm * fan.sin(),
                        0.0,
                    ),
                }
            } else {
                RigidTransform::from_translation(Vec3::new(finger_segments[seg - 1], 0.0, 0.0))
            };
            links.push(Link {
                parent: Some(parent),
                offset,
                axis: 2,
                axis_sign: sign,
                limits: (0.0, pi / 2.0),
                length: len,
            });
        }
    }

    // Four keypoints per finger: the ends of the four segments.
    let mut bindings = vec![KeypointBinding {
        link: wrist_link,
        local: Vec3::new(arm[6].1, 0.0, 0.0),
    }];
    let finger_for_mano = [0usize, 1, 2, 3, 3]; // pinky duplicates ring
    for &f in &finger_for_mano {
        let root = finger_roots[f];
        for seg in 0..4 {
            bindings.push(KeypointBinding {
                link: root + seg,
                local: Vec3::new(finger_segments[seg], 0.0, 0.0),
            });
        }
    }

    RobotModel {
        name: "paper23".to_string(),
        links,
        bindings,
        arm_joints: 7,
    }
}

/// Bindings for a 2-link-per-finger hand: per finger the keypoints are the
/// base joint, the link-1 end, the link-2 midpoint, and the tip. The pinky
/// duplicates the ring finger.
fn finger_bindings(
    wrist_link: usize,
    wrist_offset: f64,
    finger_links: &[(usize, usize); 4],
    finger_lengths: [f64; 2],
) -> Vec<KeypointBinding> {
    let mut bindings = vec![KeypointBinding {
        link: wrist_link,
        local: Vec3::new(wrist_offset, 0.0, 0.0),
    }];
    let finger_for_mano = [0usize, 1, 2, 3, 3];
    for &f in &finger_for_mano {
        let (l1, l2) = finger_links[f];
        bindings.push(KeypointBinding {
            link: l1,
            local: Vec3::ZERO,
        });
        bindings.push(KeypointBinding {
            link: l1,
            local: Vec3::new(finger_lengths[0], 0.0, 0.0),
        });
        bindings.push(KeypointBinding {
            link: l2,
            local: Vec3::new(finger_lengths[1] / 2.0, 0.0, 0.0),
        });
        bindings.push(KeypointBinding {
            link: l2,
            local: Vec3::new(finger_lengths[1], 0.0, 0.0),
        });
    }
    bindings
}

/// Look up a built-in robot model by name.
pub fn builtin_model(name: &str) -> Result<RobotModel> {
    match name {
        "desk11" => Ok(desk11()),
        "paper23" => Ok(paper23()),
        other => Err(Error::Config(format!(
            "unknown robot model '{other}' (expected desk11 or paper23)"
        ))),
    }
}

#[cfg(test)]
mod tests;
