//! Exact integer linear algebra: determinants, Smith normal form, cokernels
//! and block-cyclic assembly.

mod cokernel;
mod det;
mod matrix;
pub mod rational;
mod snf;

use num_bigint::BigInt;
use serde::Serialize;

pub use cokernel::{
    cokernel, finite_order_usize, CokernelStructure, CosetRep, GroupOrder, MAX_ENUMERATED_COSETS,
};
pub use det::{det_exact, det_f64, sign};
pub use matrix::{block_cyclic, block_diagonal, cyclic_product, IntMatrix, Matrix, RealMatrix};
pub use snf::{smith_normal_form, SmithDecomposition};

use crate::error::Result;

/// Both sides of `det(I - N) = det(I - N_m ... N_1)` for a block-cyclic `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicDetReport {
    #[serde(with = "crate::json::bigint_string")]
    pub lhs: BigInt,
    #[serde(with = "crate::json::bigint_string")]
    pub rhs: BigInt,
    pub equal: bool,
}

pub fn cyclic_det_identity_check(blocks: &[IntMatrix]) -> Result<CyclicDetReport> {
    let n = block_cyclic(blocks)?;
    let lhs = det_exact(&n.identity_minus()?)?;
    let rhs = det_exact(&cyclic_product(blocks)?.identity_minus()?)?;
    let equal = lhs == rhs;
    Ok(CyclicDetReport { lhs, rhs, equal })
}

/// Floating counterpart of [`cyclic_det_identity_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CyclicDetReportF64 {
    pub lhs: f64,
    pub rhs: f64,
    pub relative_deviation: f64,
    pub signs_equal: bool,
}

pub fn cyclic_det_identity_check_f64(blocks: &[RealMatrix]) -> Result<CyclicDetReportF64> {
    let n = block_cyclic(blocks)?;
    let lhs = det_f64(&n.identity_minus()?)?;
    let rhs = det_f64(&cyclic_product(blocks)?.identity_minus()?)?;
    let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
    Ok(CyclicDetReportF64 {
        lhs,
        rhs,
        relative_deviation: (lhs - rhs).abs() / scale,
        signs_equal: lhs.signum() == rhs.signum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn scalar_pair() {
        let r = cyclic_det_identity_check(&[m(&[&[2]]), m(&[&[3]])]).unwrap();
        assert_eq!(r.lhs, BigInt::from(-5));
        assert_eq!(r.rhs, BigInt::from(-5));
        assert!(r.equal);
    }

    #[test]
    fn zero_blocks() {
        let z = IntMatrix::zeros(2, 2);
        let r = cyclic_det_identity_check(&[z.clone(), z.clone(), z]).unwrap();
        assert_eq!(r.lhs, BigInt::from(1));
        assert_eq!(r.rhs, BigInt::from(1));
    }

    #[test]
    fn thousand_random_triples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let blocks: Vec<IntMatrix> = (0..3)
                .map(|_| {
                    IntMatrix::new(
                        2,
                        2,
                        (0..4)
                            .map(|_| BigInt::from(rng.gen_range(-9..=9)))
                            .collect(),
                    )
                    .unwrap()
                })
                .collect();
            let r = cyclic_det_identity_check(&blocks).unwrap();
            assert!(r.equal, "{blocks:?}");
        }
    }

    #[test]
    fn float_variant_agrees() {
        let blocks = vec![
            m(&[&[1, 1], &[0, 1]]).to_f64(),
            m(&[&[1, 0], &[1, 1]]).to_f64(),
        ];
        let r = cyclic_det_identity_check_f64(&blocks).unwrap();
        assert!(r.signs_equal);
        assert!((r.lhs + 1.0).abs() < 1e-12);
        assert!(r.relative_deviation < 1e-12);
    }

    fn blocks() -> impl Strategy<Value = Vec<IntMatrix>> {
        (1usize..=4, 1usize..=5).prop_flat_map(|(k, m)| {
            prop::collection::vec(
                prop::collection::vec(-9i64..=9, k * k).prop_map(move |e| {
                    IntMatrix::new(k, k, e.into_iter().map(BigInt::from).collect()).unwrap()
                }),
                m,
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn identity_holds(bs in blocks()) {
            prop_assert!(cyclic_det_identity_check(&bs).unwrap().equal);
        }
    }
}
