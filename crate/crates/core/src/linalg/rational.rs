//! Small dense linear algebra over the rationals, used for homology bases.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(a: &mut [Vec<Q>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the null space of a `rows x cols` matrix given by rows.
pub fn kernel_basis(a: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Solves `B c = x` for the columns `B = [b_1, ..., b_k]` (given as a list
/// of vectors); returns `None` if `x` is not in their span. The columns must
/// be linearly independent.
pub fn solve_in_span(basis: &[Vec<Q>], x: &[Q]) -> Option<Vec<Q>> {
    let k = basis.len();
    let n = x.len();
    // augmented n x (k+1)
    let mut aug: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(x[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![Q::zero(); k];
    for (r, &pc) in pivots.iter().enumerate() {
        c[pc] = aug[r][k].clone();
    }
    Some(c)
}

pub fn rank(vectors: &[Vec<Q>], dim: usize) -> usize {
    let mut m = vectors.to_vec();
    rref(&mut m, dim).len()
}

/// Inverse of a square rational matrix, if it exists.
pub fn inverse(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn from_int(x: &BigInt) -> Q {
    Q::from_integer(x.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Q {
        Q::from_integer(BigInt::from(x))
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = vec![vec![q(1), q(2), q(3)]];
        let k = kernel_basis(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot: Q = a[0].iter().zip(v).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_and_inverse() {
        let basis = vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]];
        let c = solve_in_span(&basis, &[q(2), q(3), q(5)]).unwrap();
        assert_eq!(c, vec![q(2), q(3)]);
        assert!(solve_in_span(&basis, &[q(1), q(0), q(0)]).is_none());

        let a = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = inverse(&a).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
        assert!(inverse(&[vec![q(1), q(1)], vec![q(1), q(1)]]).is_none());
    }
}
