use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::snf::{smith_normal_form, SmithDecomposition};
use super::IntMatrix;
use crate::error::{Error, Result};

/// Order of a cokernel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum GroupOrder {
    Finite(#[serde(with = "crate::json::bigint")] BigInt),
    Infinite(InfiniteTag),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InfiniteTag {
    Infinite,
}

impl GroupOrder {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            GroupOrder::Finite(n) => Some(n),
            GroupOrder::Infinite(_) => None,
        }
    }
}

/// Upper limit on coset enumeration; larger quotients are described by
/// their invariant factors only.
pub const MAX_ENUMERATED_COSETS: usize = 1 << 22;

/// The quotient `Z^n / M Z^n`.
///
/// Labels are coordinates in the Smith basis: `y = U x`, with `y_i` reduced
/// into `[0, d_i)` whenever `d_i > 0`.
#[derive(Clone, Debug, Serialize)]
pub struct CokernelStructure {
    #[serde(with = "crate::json::bigint_vec")]
    pub invariant_factors: Vec<BigInt>,
    pub order: GroupOrder,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coset_representatives: Option<Vec<CosetRep>>,
    #[serde(skip)]
    smith: SmithDecomposition,
}

/// A coset: its canonical label and an integer vector in the original
/// coordinates that lies in it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CosetRep {
    #[serde(with = "crate::json::bigint_vec")]
    pub label: Vec<BigInt>,
    #[serde(with = "crate::json::bigint_vec")]
    pub vector: Vec<BigInt>,
}

impl CokernelStructure {
    pub fn dim(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.order, GroupOrder::Finite(_))
    }

    pub fn smith(&self) -> &SmithDecomposition {
        &self.smith
    }

    /// Canonical label of the coset containing `x`.
    pub fn label_of(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let y = self.smith.u.mul_vec(x)?;
        Ok(y.into_iter()
            .zip(&self.invariant_factors)
            .map(|(yi, d)| if d.is_zero() { yi } else { yi.mod_floor(d) })
            .collect())
    }

    /// An integer vector in the coset with the given label.
    pub fn vector_of(&self, label: &[BigInt]) -> Result<Vec<BigInt>> {
        self.smith.u_inv.mul_vec(label)
    }

    pub fn same_coset(&self, x: &[BigInt], y: &[BigInt]) -> Result<bool> {
        Ok(self.label_of(x)? == self.label_of(y)?)
    }
}

/// Cokernel of a square `n x n` matrix, with coset representatives when the
/// quotient is finite and at most [`MAX_ENUMERATED_COSETS`] large.
pub fn cokernel(m: &IntMatrix, n: usize) -> Result<CokernelStructure> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::Dimension(format!(
            "cokernel expects {n}x{n}, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let smith = smith_normal_form(m);
    let invariant_factors = smith.diagonal();
    let order = if invariant_factors.iter().all(|d| !d.is_zero()) {
        GroupOrder::Finite(invariant_factors.iter().fold(BigInt::one(), |a, d| a * d))
    } else {
        GroupOrder::Infinite(InfiniteTag::Infinite)
    };
    let mut out = CokernelStructure {
        invariant_factors,
        order,
        coset_representatives: None,
        smith,
    };
    if let GroupOrder::Finite(k) = &out.order {
        let count = k.to_usize().filter(|&c| c <= MAX_ENUMERATED_COSETS);
        if let Some(count) = count {
            out.coset_representatives = Some(enumerate(&out, count)?);
        }
    }
    Ok(out)
}

fn enumerate(c: &CokernelStructure, count: usize) -> Result<Vec<CosetRep>> {
    let radices: Vec<usize> = c
        .invariant_factors
        .iter()
        .map(|d| d.to_usize().expect("bounded by coset count"))
        .collect();
    let mut digits = vec![0usize; radices.len()];
    let mut reps = Vec::with_capacity(count);
    for _ in 0..count {
        let label: Vec<BigInt> = digits.iter().map(|&x| BigInt::from(x)).collect();
        let vector = c.vector_of(&label)?;
        reps.push(CosetRep { label, vector });
        // last coordinate varies fastest
        for i in (0..digits.len()).rev() {
            digits[i] += 1;
            if digits[i] < radices[i] {
                break;
            }
            digits[i] = 0;
        }
    }
    Ok(reps)
}

/// Order as a signed machine integer when it fits; used by tests and sweeps.
pub fn finite_order_usize(c: &CokernelStructure) -> Option<usize> {
    c.order.finite().and_then(|k| k.abs().to_usize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det::det_exact;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cat_map_cokernel_is_trivial() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let c = cokernel(&a.identity_minus().unwrap(), 2).unwrap();
        assert_eq!(c.order, GroupOrder::Finite(BigInt::from(1)));
        assert_eq!(c.coset_representatives.unwrap().len(), 1);
    }

    #[test]
    fn zero_matrix_cokernel_is_infinite() {
        let c = cokernel(&IntMatrix::zeros(2, 2), 2).unwrap();
        assert!(!c.is_finite());
        assert!(c.coset_representatives.is_none());
        assert_eq!(serde_json::to_value(&c.order).unwrap(), "infinite");
    }

    #[test]
    fn diag_2_3_enumerates_six_cosets() {
        let c = cokernel(&m(&[&[2, 0], &[0, 3]]), 2).unwrap();
        assert_eq!(c.order, GroupOrder::Finite(BigInt::from(6)));
        let reps = c.coset_representatives.clone().unwrap();
        assert_eq!(reps.len(), 6);
        // brute force: Z^2/(2Z x 3Z) has classes (x mod 2, y mod 3)
        let classes: BTreeSet<(i64, i64)> = reps
            .iter()
            .map(|r| {
                let x = i64::try_from(&r.vector[0]).unwrap();
                let y = i64::try_from(&r.vector[1]).unwrap();
                (x.rem_euclid(2), y.rem_euclid(3))
            })
            .collect();
        assert_eq!(classes.len(), 6);
        // labels are stable under adding lattice vectors
        for r in &reps {
            let shifted: Vec<BigInt> = vec![&r.vector[0] + 4, &r.vector[1] - 9];
            assert_eq!(c.label_of(&shifted).unwrap(), r.label);
        }
    }

    #[test]
    fn wrong_shape_is_rejected() {
        assert!(cokernel(&IntMatrix::zeros(2, 2), 3).is_err());
    }

    #[test]
    fn label_roundtrip_on_infinite_quotient() {
        let c = cokernel(&m(&[&[2, 0], &[0, 0]]), 2).unwrap();
        let x = big(&[5, -7]);
        let l = c.label_of(&x).unwrap();
        let back = c.vector_of(&l).unwrap();
        assert!(c.same_coset(&x, &back).unwrap());
    }

    proptest! {
        #[test]
        fn order_matches_determinant(a in prop::collection::vec(-4i64..=4, 9)) {
            let im = IntMatrix::new(3, 3, a.into_iter().map(BigInt::from).collect()).unwrap();
            let det = det_exact(&im).unwrap();
            prop_assume!(!det.is_zero());
            let c = cokernel(&im, 3).unwrap();
            prop_assert_eq!(c.order.finite().cloned(), Some(det.abs()));
            let reps = c.coset_representatives.clone().unwrap();
            // reps are pairwise inequivalent and their labels reproduce
            let labels: BTreeSet<_> = reps.iter().map(|r| c.label_of(&r.vector).unwrap()).collect();
            prop_assert_eq!(labels.len(), reps.len());
            for r in &reps {
                prop_assert_eq!(&c.label_of(&r.vector).unwrap(), &r.label);
            }
        }
    }
}
