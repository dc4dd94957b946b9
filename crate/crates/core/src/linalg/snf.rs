use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ...`, all `d_i >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `u`, tracked alongside it.
    pub u_inv: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.a.cols() {
            self.a[(i, j)] = -&self.a[(i, j)];
        }
        for j in 0..self.u.cols() {
            self.u[(i, j)] = -&self.u[(i, j)];
        }
        for r in 0..self.u_inv.rows() {
            self.u_inv[(r, i)] = -&self.u_inv[(r, i)];
        }
    }

    /// row_dst += k * row_src
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.a.cols() {
            let t = &self.a[(src, j)] * k;
            self.a[(dst, j)] += t;
        }
        for j in 0..self.u.cols() {
            let t = &self.u[(src, j)] * k;
            self.u[(dst, j)] += t;
        }
        // inverse op applied on the right: col_src -= k * col_dst
        for r in 0..self.u_inv.rows() {
            let t = &self.u_inv[(r, dst)] * k;
            self.u_inv[(r, src)] -= t;
        }
    }

    /// col_dst += k * col_src
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.a.rows() {
            let t = &self.a[(i, src)] * k;
            self.a[(i, dst)] += t;
        }
        for i in 0..self.v.rows() {
            let t = &self.v[(i, src)] * k;
            self.v[(i, dst)] += t;
        }
    }

    /// Smallest nonzero |entry| in the trailing submatrix; ties go to the
    /// lowest row, then the lowest column.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some(b) if self.a[b].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }
}

/// Smith normal form with deterministic pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
    };
    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = w.min_pivot(t) else {
                return finish(w);
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let pivot = w.a[(t, t)].clone();

            let mut clean = true;
            for i in t + 1..rows {
                let q = w.a[(i, t)].div_floor(&pivot);
                w.add_row(i, t, &-q);
                clean &= w.a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = w.a[(t, j)].div_floor(&pivot);
                w.add_col(j, t, &-q);
                clean &= w.a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and retry
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
    }
    finish(w)
}

fn finish(w: Work) -> SmithDecomposition {
    SmithDecomposition {
        u: w.u,
        d: w.a,
        v: w.v,
        u_inv: w.u_inv,
    }
}
