use super::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const REST_POSE_FIXTURE: &str = include_str!("fixtures/rest_pose_desk11.txt");

fn parse_fixture() -> Vec<Vec3> {
    REST_POSE_FIXTURE
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let v: Vec<f64> = l
                .split_whitespace()
                .map(|t| t.parse().unwrap())
                .collect();
            Vec3::new(v[0], v[1], v[2])
        })
        .collect()
}

/// Independent oracle: accumulate the planar chain with plain trigonometry,
/// no transform composition. Valid for the desk model (all joints about z).
fn straight_line_oracle(theta: &JointConfig) -> Vec<Vec3> {
    let base = (0.28, 0.04);
    let arm = [0.12, 0.10, 0.08];
    let palm = 0.02;
    let fl = [0.03, 0.025];
    let fan_deg = [-45.0f64, -15.0, 15.0, 45.0];

    // Arm: heading starts at +y and accumulates joint angles.
    let mut heading = std::f64::consts::FRAC_PI_2;
    let mut pos = (base.0, base.1);
    let mut joints = theta.0.iter();
    for len in arm {
        heading += joints.next().unwrap();
        pos = (pos.0 + len * heading.cos(), pos.1 + len * heading.sin());
    }
    let wrist = pos;
    let mut rows = vec![Vec3::new(wrist.0, wrist.1, 0.0)];
    let finger_joints: Vec<f64> = joints.copied().collect();
    let mano_fingers = [0usize, 1, 2, 3, 3];
    for &f in &mano_fingers {
        let fan = fan_deg[f].to_radians();
        let sign = if fan_deg[f] > 0.0 { -1.0 } else { 1.0 };
        let (j1, j2) = (finger_joints[2 * f], finger_joints[2 * f + 1]);
        // Base sits on the palm ring; segment headings accumulate curls.
        let a0 = heading + fan;
        let base_pt = (wrist.0 + palm * a0.cos(), wrist.1 + palm * a0.sin());
        let a1 = a0 + sign * j1;
        let l1_end = (base_pt.0 + fl[0] * a1.cos(), base_pt.1 + fl[0] * a1.sin());
        let a2 = a1 + sign * j2;
        let l2_mid = (
            l1_end.0 + fl[1] / 2.0 * a2.cos(),
            l1_end.1 + fl[1] / 2.0 * a2.sin(),
        );
        let tip = (l1_end.0 + fl[1] * a2.cos(), l1_end.1 + fl[1] * a2.sin());
        for p in [base_pt, l1_end, l2_mid, tip] {
            rows.push(Vec3::new(p.0, p.1, 0.0));
        }
    }
    rows
}

fn random_desk_config(rng: &mut impl Rng) -> JointConfig {
    let mut v = Vec::with_capacity(11);
    for _ in 0..3 {
        v.push(rng.gen_range(-1.5..1.5));
    }
    for _ in 0..8 {
        v.push(rng.gen_range(0.0..1.5));
    }
    JointConfig(v)
}

#[test]
fn rest_pose_matches_golden_fixture() {
    let model = desk11();
    let kp = model.keypoint_positions(&JointConfig::zeros(11)).unwrap();
    let golden = parse_fixture();
    assert_eq!(golden.len(), KEYPOINTS_PER_HAND);
    for (i, (a, b)) in kp.iter().zip(&golden).enumerate() {
        assert!(
            (*a - *b).norm() < 1e-12,
            "row {i}: fk {a:?} vs golden {b:?}"
        );
    }
}

#[test]
fn fk_matches_straight_line_oracle_on_random_configs() {
    let model = desk11();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let theta = random_desk_config(&mut rng);
        let kp = model.keypoint_positions(&theta).unwrap();
        let oracle = straight_line_oracle(&theta);
        for (a, b) in kp.iter().zip(&oracle) {
            assert!((*a - *b).norm() < 1e-12);
        }
    }
}

#[test]
fn base_rotation_is_rigid() {
    let model = desk11();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..20 {
        let theta = random_desk_config(&mut rng);
        let mut rotated = theta.clone();
        rotated.0[0] += rng.gen_range(-0.5..0.5);
        let a = model.keypoint_positions(&theta).unwrap();
        let b = model.keypoint_positions(&rotated).unwrap();
        for i in 0..a.len() {
            for j in (i + 1)..a.len() {
                let da = (a[i] - a[j]).norm();
                let db = (b[i] - b[j]).norm();
                assert!((da - db).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn pinky_rows_duplicate_ring_rows() {
    for model in [desk11(), paper23()] {
        let theta = JointConfig(vec![0.3; model.joint_count()]);
        let kp = model.keypoint_positions(&theta).unwrap();
        for k in 0..4 {
            let ring = kp[1 + 3 * 4 + k];
            let pinky = kp[1 + 4 * 4 + k];
            assert_eq!(ring.to_array(), pinky.to_array(), "{}", model.name);
        }
    }
}

#[test]
fn fk_always_emits_42_keypoints() {
    for model in [desk11(), paper23()] {
        let h = forward_kinematics(&model, &JointConfig::zeros(model.joint_count())).unwrap();
        assert_eq!(h.stacked().len(), 42);
    }
}

#[test]
fn joint_action_of_identical_configs_is_exactly_zero() {
    let model = desk11();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..1000 {
        let theta = random_desk_config(&mut rng);
        let a = joint_action(&model, &theta, &theta).unwrap();
        for row in &a.hand_deltas {
            assert_eq!(*row, Vec3::ZERO);
        }
        assert_eq!(a.camera, CameraDelta::zero());
    }
}

#[test]
fn joint_action_matches_fk_difference() {
    let model = desk11();
    let theta = JointConfig::zeros(11);
    let mut next = theta.clone();
    next.0[0] += 0.1;
    let action = joint_action(&model, &theta, &next).unwrap();
    let before = straight_line_oracle(&theta);
    let after = straight_line_oracle(&next);
    for i in 0..KEYPOINTS_PER_HAND {
        let expected = after[i] - before[i];
        let got = action.hand_deltas[KEYPOINTS_PER_HAND + i];
        assert!((got - expected).norm() < 1e-12);
        assert_eq!(action.hand_deltas[i], Vec3::ZERO); // left hand rows
    }
}

#[test]
fn joint_action_camera_rows_always_zero() {
    let model = desk11();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let a = random_desk_config(&mut rng);
        let b = random_desk_config(&mut rng);
        let act = joint_action(&model, &a, &b).unwrap();
        assert_eq!(act.camera, CameraDelta::zero());
        let flat = act.flatten();
        assert!(flat[126..132].iter().all(|&v| v == 0.0));
    }
}

#[test]
fn fk_is_lipschitz_in_each_joint() {
    let model = desk11();
    let reach = model.downstream_reach();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let eps = 1e-6;
    for _ in 0..50 {
        let theta = random_desk_config(&mut rng);
        let base = model.keypoint_positions(&theta).unwrap();
        for j in 0..model.joint_count() {
            let mut bumped = theta.clone();
            bumped.0[j] += eps;
            if model.check_limits(&bumped).is_err() {
                continue;
            }
            let moved = model.keypoint_positions(&bumped).unwrap();
            for (a, b) in base.iter().zip(&moved) {
                let d = (*a - *b).norm();
                assert!(
                    d <= reach[j] * eps * (1.0 + 1e-6) + 1e-15,
                    "joint {j} moved a keypoint {d:.3e} > bound {:.3e}",
                    reach[j] * eps
                );
            }
        }
    }
}

#[test]
fn limits_and_dimensions_are_enforced() {
    let model = desk11();
    let err = model
        .check_limits(&JointConfig(vec![0.0; 10]))
        .unwrap_err();
    assert!(matches!(err, Error::DimensionMismatch(_)));

    let mut theta = JointConfig::zeros(11);
    theta.0[4] = -0.5; // finger joints are limited to [0, pi/2]
    assert!(matches!(
        forward_kinematics(&model, &theta),
        Err(Error::JointLimitViolation { joint: 4, .. })
    ));
}

#[test]
fn models_validate() {
    desk11().validate().unwrap();
    paper23().validate().unwrap();
    assert_eq!(desk11().joint_count(), 11);
    assert_eq!(paper23().joint_count(), 23);
    assert!(builtin_model("nope").is_err());
}
