//! Bundled smooth maps, all within the perturbation guard.

use super::cyclic::CyclicSmoothMap;
use super::map::{Mode, SmoothTorusMap};
use crate::linalg::IntMatrix;

fn mode(coordinate: usize, k: &[i64], sin: f64, cos: f64) -> Mode {
    Mode {
        coordinate,
        k: k.to_vec(),
        sin,
        cos,
    }
}

fn map<R: AsRef<[i64]>>(rows: &[R], modes: Vec<Mode>) -> SmoothTorusMap {
    SmoothTorusMap::new(IntMatrix::from_i64_rows(rows).expect("rows"), modes).expect("valid map")
}

pub fn bundled_maps() -> Vec<(&'static str, SmoothTorusMap)> {
    vec![
        ("cat_linear", map(&[[2, 1], [1, 1]], vec![])),
        (
            "cat_single_mode",
            map(&[[2, 1], [1, 1]], vec![mode(0, &[1, 0], 0.01, 0.0)]),
        ),
        (
            "cat_two_modes",
            map(
                &[[2, 1], [1, 1]],
                vec![mode(0, &[1, 1], 0.005, 0.004), mode(1, &[0, 1], 0.0, 0.01)],
            ),
        ),
        (
            "cat_high_frequency",
            map(&[[2, 1], [1, 1]], vec![mode(1, &[5, 0], 0.001, 0.0005)]),
        ),
        ("two_class_linear", map(&[[2, 1], [1, 0]], vec![])),
        (
            "two_class_perturbed",
            map(&[[2, 1], [1, 0]], vec![mode(0, &[1, 0], 0.001, 0.0)]),
        ),
        (
            "two_class_mixed",
            map(
                &[[2, 1], [1, 0]],
                vec![mode(0, &[0, 1], 0.01, 0.0), mode(1, &[1, -1], 0.0, 0.008)],
            ),
        ),
        ("rotation_linear", map(&[[0, -1], [1, 0]], vec![])),
        (
            "rotation_perturbed",
            map(&[[0, -1], [1, 0]], vec![mode(0, &[1, 1], 0.02, 0.01)]),
        ),
        (
            "hyperbolic_3_1",
            map(&[[3, 1], [2, 1]], vec![mode(0, &[2, 1], 0.003, 0.002)]),
        ),
        (
            "hyperbolic_1_2",
            map(&[[1, 1], [1, 2]], vec![mode(1, &[1, 0], 0.004, 0.0)]),
        ),
        (
            "minus_identity",
            map(
                &[[-1, 0], [0, -1]],
                vec![mode(0, &[1, 0], 0.05, 0.0), mode(1, &[0, 1], 0.0, 0.05)],
            ),
        ),
        (
            "doubling",
            map(&[[2, 0], [0, 2]], vec![mode(0, &[1, 1], 0.02, 0.02)]),
        ),
        (
            "shear_doubling",
            map(&[[2, 1], [0, 2]], vec![mode(1, &[0, 3], 0.005, 0.0)]),
        ),
        (
            "triple_diag",
            map(&[[3, 0], [0, -2]], vec![mode(0, &[1, 2], 0.01, 0.01)]),
        ),
        (
            "circle_doubling",
            map(&[[2]], vec![mode(0, &[1], 0.05, 0.0)]),
        ),
        (
            "circle_tripling",
            map(&[[3]], vec![mode(0, &[2], 0.02, 0.03)]),
        ),
        (
            "circle_reflection",
            map(&[[-1]], vec![mode(0, &[1], 0.1, 0.0)]),
        ),
        (
            "circle_minus_four",
            map(&[[-4]], vec![mode(0, &[5], 0.004, 0.01)]),
        ),
        ("circle_zero", map(&[[0]], vec![mode(0, &[1], 0.05, 0.05)])),
        (
            "solid_cat",
            map(
                &[[2, 1, 0], [1, 1, 0], [0, 0, 2]],
                vec![mode(2, &[1, 0, 1], 0.005, 0.0)],
            ),
        ),
        (
            "solid_rotation",
            map(
                &[[0, -1, 0], [1, 0, 0], [0, 0, -1]],
                vec![mode(0, &[0, 0, 1], 0.01, 0.0)],
            ),
        ),
    ]
}

pub fn bundled_cyclic_maps() -> Vec<(&'static str, CyclicSmoothMap)> {
    let c = |v: Vec<SmoothTorusMap>| CyclicSmoothMap::new(v).expect("equal dims");
    vec![
        (
            "shears",
            c(vec![
                map(&[[1, 1], [0, 1]], vec![]),
                map(&[[1, 0], [1, 1]], vec![]),
            ]),
        ),
        (
            "shears_perturbed",
            c(vec![
                map(&[[1, 1], [0, 1]], vec![mode(0, &[1, 0], 0.01, 0.0)]),
                map(&[[1, 0], [1, 1]], vec![mode(1, &[0, 1], 0.0, 0.01)]),
            ]),
        ),
        (
            "two_class_and_identity",
            c(vec![
                map(&[[2, 1], [1, 0]], vec![mode(0, &[0, 1], 0.005, 0.0)]),
                map(&[[1, 0], [0, 1]], vec![]),
            ]),
        ),
        (
            "circle_triple",
            c(vec![
                map(&[[2]], vec![mode(0, &[1], 0.02, 0.0)]),
                map(&[[2]], vec![]),
                map(&[[2]], vec![mode(0, &[1], 0.0, 0.01)]),
            ]),
        ),
        (
            "cat_cubed",
            c(vec![
                map(&[[2, 1], [1, 1]], vec![mode(1, &[1, 0], 0.003, 0.0)]),
                map(&[[2, 1], [1, 1]], vec![]),
                map(&[[2, 1], [1, 1]], vec![mode(0, &[0, 1], 0.0, 0.002)]),
            ]),
        ),
    ]
}
