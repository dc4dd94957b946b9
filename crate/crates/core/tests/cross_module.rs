use std::collections::BTreeMap;

use num_bigint::BigInt;

use nielsen_core::homology::{self, corpus as hcorpus, SimplicialMap};
use nielsen_core::linalg::{self, IntMatrix};
use nielsen_core::smooth::{self, corpus as scorpus, LiftedMap, SolverConfig};
use nielsen_core::torus::{self, CyclicTorusMap, TorusMap};

#[test]
fn smooth_classes_match_the_exact_oracle() {
    let cfg = SolverConfig::default();
    for (name, f) in scorpus::bundled_maps() {
        let solved = smooth::find_fixed_points_guarded(&f, &cfg).unwrap();
        let exact = torus::analyze(&TorusMap::new(f.linear_part().clone()).unwrap());
        let numeric: BTreeMap<_, _> = solved
            .points
            .iter()
            .map(|p| (p.class_label.label.clone(), p.index))
            .collect();
        let oracle: BTreeMap<_, _> = exact
            .classes
            .iter()
            .map(|c| (c.label.label.clone(), c.index))
            .collect();
        assert_eq!(numeric, oracle, "{name}");
    }
}

#[test]
fn identity_of_the_triangulated_torus() {
    let k = hcorpus::torus();
    let l = homology::lefschetz_number(&k, &SimplicialMap::identity(k.vertices())).unwrap();
    let id = TorusMap::from_i64_rows(&[[1, 0], [0, 1]]).unwrap();
    assert_eq!(l, id.lefschetz());
    assert_eq!(l, BigInt::from(homology::euler_characteristic(&k)));
}

#[test]
fn cyclic_lefschetz_is_the_block_determinant() {
    let blocks = [
        IntMatrix::from_i64_rows(&[[2, 1], [1, 1]]).unwrap(),
        IntMatrix::from_i64_rows(&[[0, -1], [1, 3]]).unwrap(),
        IntMatrix::from_i64_rows(&[[1, 2], [0, -1]]).unwrap(),
    ];
    let det = linalg::cyclic_det_identity_check(&blocks).unwrap();
    assert!(det.equal);
    let maps = blocks
        .iter()
        .map(|b| TorusMap::new(b.clone()).unwrap())
        .collect();
    let report = torus::analyze_cyclic(&CyclicTorusMap::new(maps).unwrap()).unwrap();
    assert!(report.passed());
    assert_eq!(report.cyclic.lefschetz, det.lhs);
    assert_eq!(report.composed.lefschetz, det.rhs);
}
