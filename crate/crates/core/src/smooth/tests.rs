use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::error::Error;
use crate::linalg::{cokernel, IntMatrix, RealMatrix};
use crate::torus::{analyze, TorusMap};

fn linear<R: AsRef<[i64]>>(rows: &[R]) -> SmoothTorusMap {
    SmoothTorusMap::linear(IntMatrix::from_i64_rows(rows).unwrap()).unwrap()
}

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

#[test]
fn cat_map_fixed_point_at_origin() {
    let r = find_fixed_points_guarded(&linear(&[[2, 1], [1, 1]]), &cfg()).unwrap();
    assert!(r.passed());
    assert_eq!(r.points.len(), 1);
    let p = &r.points[0];
    assert!(p.coordinates.iter().all(|x| x.abs() < 1e-12));
    assert_eq!(p.index, -1);
    assert!(p.class_label.label.iter().all(|x| *x == BigInt::from(0)));
}

#[test]
fn two_class_map_with_small_perturbation() {
    let f = SmoothTorusMap::new(
        IntMatrix::from_i64_rows(&[[2, 1], [1, 0]]).unwrap(),
        vec![Mode {
            coordinate: 0,
            k: vec![1, 0],
            sin: 1e-3,
            cos: 0.0,
        }],
    )
    .unwrap();
    let h = lefschetz_hopf_check(&f, &cfg()).unwrap();
    assert!(h.passed());
    assert_eq!(
        h.solve.points.iter().map(|p| p.index).collect::<Vec<_>>(),
        vec![-1, -1]
    );
    assert_eq!(h.index_sum, -2);
    assert_ne!(h.solve.points[0].class_label, h.solve.points[1].class_label);
}

#[test]
fn rotation_has_two_positive_points() {
    let h = lefschetz_hopf_check(&linear(&[[0, -1], [1, 0]]), &cfg()).unwrap();
    assert!(h.passed());
    assert_eq!(
        h.solve.points.iter().map(|p| p.index).collect::<Vec<_>>(),
        vec![1, 1]
    );
}

#[test]
fn degenerate_linear_part_rejected() {
    let f = SmoothTorusMap::new(
        IntMatrix::identity(2),
        vec![Mode {
            coordinate: 0,
            k: vec![1, 0],
            sin: 1e-3,
            cos: 0.0,
        }],
    )
    .unwrap();
    assert!(matches!(
        find_fixed_points_guarded(&f, &cfg()),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        find_fixed_points(&f, &cfg()),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn guard_violation_rejected() {
    let f = SmoothTorusMap::new(
        IntMatrix::from_i64_rows(&[[2, 1], [1, 1]]).unwrap(),
        vec![Mode {
            coordinate: 0,
            k: vec![1, 0],
            sin: 0.2,
            cos: 0.0,
        }],
    )
    .unwrap();
    assert!(matches!(
        find_fixed_points_guarded(&f, &cfg()),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn ambiguous_label_rejected() {
    let f = linear(&[[2]]);
    // x = 0.25 is not fixed: x - F(x) = -0.25
    assert!(matches!(
        class_label(&f, &[0.25], &cfg()),
        Err(Error::LabelAmbiguous { .. })
    ));
    let origin = class_label(&f, &[0.0], &cfg()).unwrap();
    assert_eq!(origin.label, vec![BigInt::from(0)]);
}

/// Labels and indices of every corpus map equal those of the exact oracle
/// for the same linear part.
#[test]
fn corpus_matches_exact_oracle() {
    let maps = corpus::bundled_maps();
    assert!(maps.len() >= 20);
    for (name, f) in maps {
        let h = lefschetz_hopf_check(&f, &cfg()).unwrap();
        assert!(h.passed(), "{name}");
        let exact = analyze(&TorusMap::new(f.linear_part().clone()).unwrap());
        let mut numeric: Vec<_> = h
            .solve
            .points
            .iter()
            .map(|p| (p.class_label.label.clone(), p.index))
            .collect();
        let mut oracle: Vec<_> = exact
            .classes
            .iter()
            .map(|c| (c.label.label.clone(), c.index))
            .collect();
        numeric.sort();
        oracle.sort();
        assert_eq!(numeric, oracle, "{name}");
        for p in &h.solve.points {
            assert!(p.residual <= 1e-10, "{name}");
        }
    }
}

#[test]
fn labels_stable_under_perturbation() {
    let base = find_fixed_points_guarded(&linear(&[[2, 1], [1, 0]]), &cfg()).unwrap();
    let pert = SmoothTorusMap::new(
        IntMatrix::from_i64_rows(&[[2, 1], [1, 0]]).unwrap(),
        vec![Mode {
            coordinate: 1,
            k: vec![1, 1],
            sin: 0.002,
            cos: 0.001,
        }],
    )
    .unwrap();
    let moved = find_fixed_points_guarded(&pert, &cfg()).unwrap();
    for p in &base.points {
        let q = moved
            .points
            .iter()
            .min_by(|a, b| {
                dist(&a.coordinates, &p.coordinates)
                    .total_cmp(&dist(&b.coordinates, &p.coordinates))
            })
            .unwrap();
        assert!(dist(&q.coordinates, &p.coordinates) < 0.05);
        assert_eq!(q.class_label, p.class_label);
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = (x - y).rem_euclid(1.0);
            d.min(1.0 - d)
        })
        .fold(0.0, f64::max)
}

#[test]
fn finite_differences() {
    let zero = linear(&[[2, 1], [1, 1]]);
    let r = jacobian_fd_check(&zero, &[0.3, 0.4], 1e-5, 1e-5).unwrap();
    assert!(r.passed && r.max_abs_deviation < 1e-9);

    let single = SmoothTorusMap::new(
        IntMatrix::from_i64_rows(&[[2, 1], [1, 1]]).unwrap(),
        vec![Mode {
            coordinate: 0,
            k: vec![1, 0],
            sin: 0.01,
            cos: 0.0,
        }],
    )
    .unwrap();
    let r = jacobian_fd_check(&single, &[0.3, 0.4], 1e-5, 1e-5).unwrap();
    assert!(r.max_abs_deviation <= 1e-6);

    let high = SmoothTorusMap::new(
        IntMatrix::from_i64_rows(&[[2, 1], [1, 1]]).unwrap(),
        vec![Mode {
            coordinate: 1,
            k: vec![3, 4],
            sin: 0.001,
            cos: 0.002,
        }],
    )
    .unwrap();
    let r = jacobian_fd_check(&high, &[0.1, 0.9], 1e-6, 1e-5).unwrap();
    assert!(r.max_abs_deviation <= 1e-5);
}

#[test]
fn corpus_jacobians_match_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, f) in corpus::bundled_maps() {
        for _ in 0..5 {
            let x: Vec<f64> = (0..f.dim()).map(|_| rng.gen::<f64>()).collect();
            let r = jacobian_fd_check(&f, &x, 1e-6, 1e-5).unwrap();
            assert!(r.passed, "{name}: {}", r.max_rel_deviation);
        }
    }
}

#[test]
fn shears_cyclic_check() {
    let (_, c) = corpus::bundled_cyclic_maps().into_iter().next().unwrap();
    let r = cyclic_jacobian_check(&c, &cfg()).unwrap();
    assert!(r.passed());
    assert_eq!(r.points.len(), 1);
    assert_eq!(r.points[0].index, -1);
    assert_eq!(r.points[0].comparison.composed_det.signum(), -1.0);
}

#[test]
fn cyclic_corpus() {
    for (name, c) in corpus::bundled_cyclic_maps() {
        let r = cyclic_jacobian_check(&c, &cfg()).unwrap();
        assert!(r.passed(), "{name}");
        let composed = TorusMap::new(c.composed().linear_part().clone()).unwrap();
        assert_eq!(BigInt::from(r.index_sum), composed.lefschetz(), "{name}");
    }
}

#[test]
fn zero_jacobians_give_unit_determinants() {
    let z = vec![RealMatrix::zeros(2, 2); 3];
    let c = compare_block_dets(&z, 1e-8).unwrap();
    assert_eq!((c.cyclic_det, c.composed_det), (1.0, 1.0));
    assert!(c.signs_equal && !c.inconclusive);
}

#[test]
fn random_jacobian_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    let mut decided = 0;
    for _ in 0..200 {
        let js: Vec<RealMatrix> = (0..3)
            .map(|_| RealMatrix::from_fn(2, 2, |_, _| rng.gen_range(-3.0..3.0)))
            .collect();
        let c = compare_block_dets(&js, 1e-8).unwrap();
        if !c.inconclusive {
            decided += 1;
            assert!(c.signs_equal);
            assert!(c.relative_deviation <= BLOCK_DET_RELATIVE_TOLERANCE);
        }
    }
    assert!(decided >= 190);
}

#[test]
fn solver_is_deterministic() {
    let (_, f) = corpus::bundled_maps().into_iter().nth(2).unwrap();
    let a = serde_json::to_string(&find_fixed_points_guarded(&f, &cfg()).unwrap()).unwrap();
    let b = serde_json::to_string(&find_fixed_points_guarded(&f, &cfg()).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn config_json_defaults() {
    let c: SolverConfig = serde_json::from_str(r#"{"grid_density": 8}"#).unwrap();
    assert_eq!(c.grid_density, 8);
    assert_eq!(c.convergence_tolerance, 1e-12);
    let bad: SolverConfig = serde_json::from_str(r#"{"dedupe_radius": -1.0}"#).unwrap();
    assert!(bad.validate().is_err());
}

#[test]
fn map_json_round_trip() {
    let j = r#"{"dim":2,"linear_part":{"rows":2,"cols":2,"entries":[[2,1],[1,0]]},
        "perturbation":[{"coordinate":0,"k":[1,0],"sin":0.001,"cos":0.0}]}"#;
    let f =
        SmoothTorusMap::try_from(serde_json::from_str::<SmoothTorusMapJson>(j).unwrap()).unwrap();
    assert_eq!(f.modes().len(), 1);
    let back = serde_json::to_string(&f.to_json()).unwrap();
    let g = SmoothTorusMap::try_from(serde_json::from_str::<SmoothTorusMapJson>(&back).unwrap())
        .unwrap();
    assert_eq!(f, g);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Random guarded perturbations of random hyperbolic-ish linear parts:
    /// Lefschetz-Hopf holds and labels match the exact cokernel.
    #[test]
    fn random_guarded_maps(
        e in proptest::collection::vec(-2i64..=2, 4),
        k in proptest::collection::vec(-2i64..=2, 2),
        s in -1.0f64..1.0,
        c in -1.0f64..1.0,
        coord in 0usize..2,
    ) {
        let a = IntMatrix::from_i64_rows(&[[e[0], e[1]], [e[2], e[3]]]).unwrap();
        let base = SmoothTorusMap::linear(a.clone()).unwrap();
        let lin = TorusMap::new(a.clone()).unwrap();
        prop_assume!(lin.lefschetz() != BigInt::from(0));
        let gap = base.spectral_gap();
        let norm = ((k[0] * k[0] + k[1] * k[1]) as f64).sqrt().max(1.0);
        // scale the mode to a quarter of the guard
        let amp = 0.25 * 0.5 * gap / (std::f64::consts::TAU * norm);
        let h = s.hypot(c).max(1e-3);
        let f = SmoothTorusMap::new(a.clone(), vec![Mode {
            coordinate: coord, k: k.clone(), sin: amp * s / h, cos: amp * c / h,
        }]).unwrap();
        let r = lefschetz_hopf_check(&f, &SolverConfig { grid_density: 12, ..cfg() }).unwrap();
        prop_assert!(r.passed());
        let coker = cokernel(&a.identity_minus().unwrap(), 2).unwrap();
        for p in &r.solve.points {
            prop_assert_eq!(&coker.label_of(&p.class_label.vector).unwrap(), &p.class_label.label);
        }
    }
}
