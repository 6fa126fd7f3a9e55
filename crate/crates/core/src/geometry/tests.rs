use super::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};

fn max_abs_diff(a: &Mat3, b: &Mat3) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            m = m.max((a.0[i][j] - b.0[i][j]).abs());
        }
    }
    m
}

fn arbitrary_transform(rng: &mut impl Rng) -> RigidTransform {
    let q = Vec3::new(
        rng.gen_range(-1.4..1.4),
        rng.gen_range(-1.4..1.4),
        rng.gen_range(-1.4..1.4),
    );
    RigidTransform {
        rotation: euler_to_rotation(q),
        translation: Vec3::new(
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
            rng.gen_range(-0.5..0.5),
        ),
    }
}

fn sample_hand(rng: &mut impl Rng, frame_id: i64) -> HandKeypoints {
    let mut p = || {
        Vec3::new(
            rng.gen_range(0.0..0.56),
            rng.gen_range(0.0..0.56),
            rng.gen_range(-0.1..0.1),
        )
    };
    HandKeypoints {
        left: core::array::from_fn(|_| p()),
        right: core::array::from_fn(|_| p()),
        frame_id,
    }
}

#[test]
fn compose_identity_is_identity() {
    let i = RigidTransform::identity();
    let c = compose(&i, &i);
    assert_eq!(max_abs_diff(&c.rotation, &Mat3::identity()), 0.0);
    assert_eq!(c.translation, Vec3::ZERO);
}

#[test]
fn compose_with_inverse_yields_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let t = arbitrary_transform(&mut rng);
        let c = compose(&t, &t.inverse());
        assert!(max_abs_diff(&c.rotation, &Mat3::identity()) < 1e-9);
        assert!(c.translation.norm() < 1e-9);
    }
}

#[test]
fn compose_two_quarter_turns_is_half_turn() {
    let rz90 = RigidTransform::from_axis_angle(2, FRAC_PI_2);
    let c = compose(&rz90, &rz90);
    let p = c.apply(Vec3::new(1.0, 0.0, 0.0));
    assert!((p.x - (-1.0)).abs() < 1e-12);
    assert!(p.y.abs() < 1e-12);
    assert!(p.z.abs() < 1e-12);
    let rz180 = Mat3::rotation_about_axis(2, PI);
    assert!(max_abs_diff(&c.rotation, &rz180) < 1e-12);
}

#[test]
fn compose_is_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let a = arbitrary_transform(&mut rng);
        let b = arbitrary_transform(&mut rng);
        let c = arbitrary_transform(&mut rng);
        let left = compose(&compose(&a, &b), &c);
        let right = compose(&a, &compose(&b, &c));
        assert!(max_abs_diff(&left.rotation, &right.rotation) < 1e-12);
        assert!((left.translation - right.translation).norm() < 1e-12);
    }
}

#[test]
fn euler_zero_gives_identity() {
    let r = euler_to_rotation(Vec3::ZERO);
    assert_eq!(max_abs_diff(&r, &Mat3::identity()), 0.0);
}

#[test]
fn euler_single_axis_matches_closed_form() {
    let r = euler_to_rotation(Vec3::new(0.0, 0.0, FRAC_PI_2));
    assert!(max_abs_diff(&r, &Mat3::rotation_about_axis(2, FRAC_PI_2)) < 1e-15);
}

#[test]
fn euler_round_trip_specific() {
    let q = Vec3::new(0.1, -0.2, 0.3);
    let back = rotation_to_euler(&euler_to_rotation(q)).unwrap();
    assert!((back - q).norm() < 1e-9);
}

#[test]
fn euler_round_trip_randomized_10k() {
    // Acceptance criterion 1 relies on this bound.
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let q = Vec3::new(
            rng.gen_range(-PI + 1e-3..PI - 1e-3),
            rng.gen_range(-FRAC_PI_2 + 1e-3..FRAC_PI_2 - 1e-3),
            rng.gen_range(-PI + 1e-3..PI - 1e-3),
        );
        let back = rotation_to_euler(&euler_to_rotation(q)).unwrap();
        worst = worst.max((back - q).norm());
    }
    assert!(worst < 1e-9, "worst round-trip error {worst:.3e}");
}

#[test]
fn euler_inverse_rejects_gimbal_pitch() {
    let q = Vec3::new(0.4, FRAC_PI_2, -0.2);
    let r = euler_to_rotation(q);
    assert!(matches!(
        rotation_to_euler(&r),
        Err(crate::Error::DegenerateOrientation { .. })
    ));
}

#[test]
fn reexpress_identity_is_noop() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = sample_hand(&mut rng, 2);
    let out = reexpress_keypoints(&h, &RigidTransform::identity(), 1);
    assert_eq!(out.left, h.left);
    assert_eq!(out.right, h.right);
    assert_eq!(out.frame_id, 1);
}

#[test]
fn reexpress_static_world_recovers_first_frame() {
    // Camera k2 = camera k1 translated by +0.1 x; world-fixed points seen
    // from k2 have coordinates p - t, and T_21 maps them back onto p.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let h1 = sample_hand(&mut rng, 1);
    let t = Vec3::new(0.1, 0.0, 0.0);
    let shift = |p: &Vec3| *p - t;
    let h2 = HandKeypoints {
        left: core::array::from_fn(|i| shift(&h1.left[i])),
        right: core::array::from_fn(|i| shift(&h1.right[i])),
        frame_id: 2,
    };
    let t_21 = RigidTransform::from_translation(t);
    let out = reexpress_keypoints(&h2, &t_21, 1);
    for (a, b) in out.stacked().iter().zip(h1.stacked().iter()) {
        assert!((*a - *b).norm() < 1e-9);
    }
}

#[test]
fn reexpress_rotates_points() {
    let mut h = sample_hand(&mut ChaCha8Rng::seed_from_u64(1), 2);
    h.right[0] = Vec3::new(1.0, 0.0, 0.0);
    let out = reexpress_keypoints(&h, &RigidTransform::from_axis_angle(2, FRAC_PI_2), 1);
    assert!((out.right[0] - Vec3::new(0.0, 1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn compute_action_no_motion_is_exactly_zero() {
    let h = sample_hand(&mut ChaCha8Rng::seed_from_u64(9), 1);
    let a = compute_action(
        &h,
        &h,
        &RigidTransform::identity(),
        &CameraDelta::zero(),
    )
    .unwrap();
    for row in &a.hand_deltas {
        assert_eq!(*row, Vec3::ZERO);
    }
    assert_eq!(a.camera, CameraDelta::zero());
}

#[test]
fn compute_action_pure_right_translation() {
    let h1 = sample_hand(&mut ChaCha8Rng::seed_from_u64(21), 1);
    let mut h2 = h1.clone();
    h2.frame_id = 2;
    for p in h2.right.iter_mut() {
        p.x += 0.01;
    }
    let a = compute_action(&h1, &h2, &RigidTransform::identity(), &CameraDelta::zero()).unwrap();
    for i in 0..KEYPOINTS_PER_HAND {
        assert_eq!(a.hand_deltas[i], Vec3::ZERO);
        let d = a.hand_deltas[KEYPOINTS_PER_HAND + i];
        assert!((d.x - 0.01).abs() < 1e-12 && d.y == 0.0 && d.z == 0.0);
    }
}

#[test]
fn compute_action_static_world_moving_camera() {
    // World-fixed hands with a moving camera: hand deltas vanish and the
    // camera rows carry the given delta verbatim.
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let h1 = sample_hand(&mut rng, 1);
    let t_12 = arbitrary_transform(&mut rng); // maps k1 coords into k2
    let map = |p: &Vec3| t_12.apply(*p);
    let h2 = HandKeypoints {
        left: core::array::from_fn(|i| map(&h1.left[i])),
        right: core::array::from_fn(|i| map(&h1.right[i])),
        frame_id: 2,
    };
    let t_21 = t_12.inverse();
    let cam = CameraDelta::new(t_21.translation, rotation_to_euler(&t_21.rotation).unwrap())
        .unwrap();
    let a = compute_action(&h1, &h2, &t_21, &cam).unwrap();
    for row in &a.hand_deltas {
        assert!(row.norm() < 1e-9);
    }
    assert_eq!(a.camera, cam);
}

#[test]
fn action_flatten_round_trips_and_orders_rows() {
    let mut a = ActionVector::zero();
    a.hand_deltas[0] = Vec3::new(1.0, 2.0, 3.0);
    a.hand_deltas[41] = Vec3::new(4.0, 5.0, 6.0);
    a.camera.dt = Vec3::new(7.0, 8.0, 9.0);
    a.camera.dq = Vec3::new(0.1, 0.2, 0.3);
    let flat = a.flatten();
    assert_eq!(flat.len(), ACTION_DIM);
    assert_eq!(&flat[0..3], &[1.0, 2.0, 3.0]);
    assert_eq!(&flat[123..126], &[4.0, 5.0, 6.0]);
    assert_eq!(&flat[126..129], &[7.0, 8.0, 9.0]);
    assert_eq!(&flat[129..132], &[0.1, 0.2, 0.3]);
    let b = ActionVector::from_flat(&flat).unwrap();
    assert_eq!(a, b);
}

#[test]
fn dummy_gripper_open_fraction_only_scales_radii() {
    let layout = GripperLayout::default();
    let pose = RigidTransform::identity();
    let closed = dummy_gripper_keypoints(&pose, 0.0, &layout);
    let open = dummy_gripper_keypoints(&pose, 1.0, &layout);
    assert_eq!(closed.right[0], Vec3::ZERO); // wrist at circle center
    for i in 1..KEYPOINTS_PER_HAND {
        let a = closed.right[i];
        let b = open.right[i];
        // Same angular placement, different radius.
        let cross = a.x * b.y - a.y * b.x;
        assert!(cross.abs() < 1e-12, "angular placement changed at row {i}");
        assert!(b.norm() > a.norm());
    }
}

#[test]
fn dummy_gripper_midpoint_radius() {
    let layout = GripperLayout::default();
    let half = dummy_gripper_keypoints(&RigidTransform::identity(), 0.5, &layout);
    let tip = half.right[HandKeypoints::fingertip_row(true, 0) - KEYPOINTS_PER_HAND];
    let expected = 0.5 * (layout.r_min + layout.r_max);
    assert!((tip.norm() - expected).abs() < 1e-12);
}

proptest! {
    #[test]
    fn euler_round_trip_property(
        roll in -3.0f64..3.0,
        pitch in -1.5f64..1.5,
        yaw in -3.0f64..3.0,
    ) {
        let q = Vec3::new(roll, pitch, yaw);
        if let Ok(back) = rotation_to_euler(&euler_to_rotation(q)) {
            // The inverse lands in the canonical range; compare rotations.
            let diff = max_abs_diff(&euler_to_rotation(back), &euler_to_rotation(q));
            prop_assert!(diff < 1e-9);
        }
    }

    #[test]
    fn reexpress_preserves_pairwise_distances(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = sample_hand(&mut rng, 2);
        let t = arbitrary_transform(&mut rng);
        let out = reexpress_keypoints(&h, &t, 1);
        let a = h.stacked();
        let b = out.stacked();
        for i in 0..KEYPOINT_ROWS {
            for j in (i + 1)..KEYPOINT_ROWS {
                let da = (a[i] - a[j]).norm();
                let db = (b[i] - b[j]).norm();
                prop_assert!((da - db).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn compute_action_offset_equivariance(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(77));
        let h1 = sample_hand(&mut rng, 1);
        let h2 = sample_hand(&mut rng, 2);
        let v = Vec3::new(
            rng.gen_range(-0.1..0.1),
            rng.gen_range(-0.1..0.1),
            rng.gen_range(-0.1..0.1),
        );
        let base = compute_action(&h1, &h2, &RigidTransform::identity(), &CameraDelta::zero())
            .unwrap();
        let shifted_h2 = HandKeypoints {
            left: core::array::from_fn(|i| h2.left[i] + v),
            right: core::array::from_fn(|i| h2.right[i] + v),
            frame_id: 2,
        };
        let shifted = compute_action(
            &h1,
            &shifted_h2,
            &RigidTransform::identity(),
            &CameraDelta::zero(),
        )
        .unwrap();
        for i in 0..KEYPOINT_ROWS {
            let d = shifted.hand_deltas[i] - base.hand_deltas[i] - v;
            prop_assert!(d.norm() < 1e-12);
        }
    }
}
