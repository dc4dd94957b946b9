use std::f64::consts::TAU;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{cyclic_product, IntMatrix, RealMatrix};

/// One trigonometric mode `sin * sin(2 pi k.x) + cos * cos(2 pi k.x)` added
/// to coordinate `coordinate` of the lift.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub coordinate: usize,
    pub k: Vec<i64>,
    pub sin: f64,
    pub cos: f64,
}

impl Mode {
    pub fn amplitude(&self) -> f64 {
        self.sin.hypot(self.cos)
    }

    fn phase(&self, x: &[f64]) -> f64 {
        TAU * self
            .k
            .iter()
            .zip(x)
            .map(|(&k, &xi)| k as f64 * xi)
            .sum::<f64>()
    }

    fn frequency_norm(&self) -> f64 {
        self.k.iter().map(|&k| (k * k) as f64).sum::<f64>().sqrt()
    }
}

/// A map of the torus given by its lift on `R^n`.
pub trait LiftedMap: Sync {
    fn dim(&self) -> usize;
    /// Induced map on `pi_1 = Z^n`.
    fn linear_part(&self) -> &IntMatrix;
    fn lift(&self, x: &[f64]) -> Vec<f64>;
    fn jacobian(&self, x: &[f64]) -> RealMatrix;
    /// Upper bound on `sup |F(x) - A x|` (max norm).
    fn periodic_bound(&self) -> f64;
}

/// `x -> A x + p(x)` with `p` a finite trigonometric polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothTorusMap {
    linear_part: IntMatrix,
    a: RealMatrix,
    modes: Vec<Mode>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SmoothTorusMapJson {
    pub dim: usize,
    pub linear_part: IntMatrix,
    #[serde(default)]
    pub perturbation: Vec<Mode>,
}

impl SmoothTorusMap {
    pub fn new(linear_part: IntMatrix, modes: Vec<Mode>) -> Result<Self> {
        let n = linear_part.require_square("smooth map")?;
        for m in &modes {
            if m.coordinate >= n || m.k.len() != n {
                return Err(Error::Dimension(format!(
                    "mode on coordinate {} with {} frequencies in dimension {n}",
                    m.coordinate,
                    m.k.len()
                )));
            }
            if !m.sin.is_finite() || !m.cos.is_finite() {
                return Err(Error::Validation("non-finite mode coefficient".into()));
            }
        }
        Ok(SmoothTorusMap {
            a: linear_part.to_f64(),
            linear_part,
            modes,
        })
    }

    pub fn linear(linear_part: IntMatrix) -> Result<Self> {
        Self::new(linear_part, Vec::new())
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    /// `2 pi sum |c_j| |k_j|`, a bound on the operator norm of `Dp`.
    pub fn perturbation_lipschitz(&self) -> f64 {
        self.modes
            .iter()
            .map(|m| TAU * m.amplitude() * m.frequency_norm())
            .sum()
    }

    /// Smallest singular value of `I - A`.
    pub fn spectral_gap(&self) -> f64 {
        let n = self.dim();
        let m = DMatrix::from_fn(n, n, |i, j| {
            (if i == j { 1.0 } else { 0.0 }) - self.a[(i, j)]
        });
        m.singular_values().min()
    }

    /// Perturbations whose Lipschitz bound is below half the spectral gap
    /// keep exactly one transversal fixed point per class, with the index of
    /// the linear part.
    pub fn check_guard(&self) -> Result<()> {
        let lip = self.perturbation_lipschitz();
        let gap = self.spectral_gap();
        if lip < 0.5 * gap {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "perturbation Lipschitz bound {lip:.3e} is not below half the spectral gap {gap:.3e}"
            )))
        }
    }

    pub fn to_json(&self) -> SmoothTorusMapJson {
        SmoothTorusMapJson {
            dim: self.dim(),
            linear_part: self.linear_part.clone(),
            perturbation: self.modes.clone(),
        }
    }
}

impl TryFrom<SmoothTorusMapJson> for SmoothTorusMap {
    type Error = Error;

    fn try_from(j: SmoothTorusMapJson) -> Result<Self> {
        if j.linear_part.rows() != j.dim {
            return Err(Error::Dimension(format!(
                "dim {} but linear part has {} rows",
                j.dim,
                j.linear_part.rows()
            )));
        }
        SmoothTorusMap::new(j.linear_part, j.perturbation)
    }
}

impl LiftedMap for SmoothTorusMap {
    fn dim(&self) -> usize {
        self.linear_part.rows()
    }

    fn linear_part(&self) -> &IntMatrix {
        &self.linear_part
    }

    fn lift(&self, x: &[f64]) -> Vec<f64> {
        let mut y = self.a.mul_vec(x).expect("dimension");
        for m in &self.modes {
            let (s, c) = m.phase(x).sin_cos();
            y[m.coordinate] += m.sin * s + m.cos * c;
        }
        y
    }

    fn jacobian(&self, x: &[f64]) -> RealMatrix {
        let mut j = self.a.clone();
        for m in &self.modes {
            let (s, c) = m.phase(x).sin_cos();
            let d = TAU * (m.sin * c - m.cos * s);
            for (col, &k) in m.k.iter().enumerate() {
                j[(m.coordinate, col)] += d * k as f64;
            }
        }
        j
    }

    fn periodic_bound(&self) -> f64 {
        let mut per = vec![0.0; self.dim()];
        for m in &self.modes {
            per[m.coordinate] += m.sin.abs() + m.cos.abs();
        }
        per.into_iter().fold(0.0, f64::max)
    }
}

/// `F_m o ... o F_1`.
#[derive(Clone, Debug)]
pub struct ComposedMap<'a> {
    components: &'a [SmoothTorusMap],
    linear_part: IntMatrix,
}

impl<'a> ComposedMap<'a> {
    pub fn new(components: &'a [SmoothTorusMap]) -> Result<Self> {
        let blocks: Vec<IntMatrix> = components.iter().map(|c| c.linear_part.clone()).collect();
        Ok(ComposedMap {
            linear_part: cyclic_product(&blocks)?,
            components,
        })
    }

    /// `(a_1, F_1(a_1), F_2(F_1(a_1)), ...)`, one point per component.
    pub fn orbit(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let mut out = vec![x.to_vec()];
        for c in &self.components[..self.components.len() - 1] {
            let next = c.lift(out.last().expect("nonempty"));
            out.push(next);
        }
        out
    }
}

fn max_row_sum(a: &RealMatrix) -> f64 {
    a.row_iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

impl LiftedMap for ComposedMap<'_> {
    fn dim(&self) -> usize {
        self.linear_part.rows()
    }

    fn linear_part(&self) -> &IntMatrix {
        &self.linear_part
    }

    fn lift(&self, x: &[f64]) -> Vec<f64> {
        self.components.iter().fold(x.to_vec(), |y, c| c.lift(&y))
    }

    fn jacobian(&self, x: &[f64]) -> RealMatrix {
        let n = self.dim();
        let mut y = x.to_vec();
        let mut j = RealMatrix::identity(n);
        for c in self.components {
            j = c.jacobian(&y).matmul(&j).expect("dimension");
            y = c.lift(&y);
        }
        j
    }

    fn periodic_bound(&self) -> f64 {
        self.components
            .iter()
            .fold(0.0, |b, c| max_row_sum(&c.a) * b + c.periodic_bound())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat(modes: Vec<Mode>) -> SmoothTorusMap {
        SmoothTorusMap::new(IntMatrix::from_i64_rows(&[[2, 1], [1, 1]]).unwrap(), modes).unwrap()
    }

    #[test]
    fn lift_is_equivariant_under_deck_translations() {
        let f = cat(vec![Mode {
            coordinate: 0,
            k: vec![1, 2],
            sin: 0.01,
            cos: -0.02,
        }]);
        let x = [0.3, 0.7];
        let fx = f.lift(&x);
        let fy = f.lift(&[1.3, -0.3]);
        // F(x + z) = F(x) + A z with z = (1, -1)
        assert!((fy[0] - (fx[0] + 1.0)).abs() < 1e-12);
        assert!((fy[1] - fx[1]).abs() < 1e-12);
    }

    #[test]
    fn guard() {
        assert!(cat(vec![]).check_guard().is_ok());
        let gap = cat(vec![]).spectral_gap();
        assert!((gap - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
        let big = cat(vec![Mode {
            coordinate: 1,
            k: vec![1, 0],
            sin: 0.1,
            cos: 0.0,
        }]);
        assert!(matches!(big.check_guard(), Err(Error::Precondition(_))));
    }

    #[test]
    fn rejects_bad_modes() {
        let a = IntMatrix::from_i64_rows(&[[2]]).unwrap();
        let m = Mode {
            coordinate: 1,
            k: vec![1],
            sin: 0.0,
            cos: 0.0,
        };
        assert!(SmoothTorusMap::new(a.clone(), vec![m]).is_err());
        let m = Mode {
            coordinate: 0,
            k: vec![1, 1],
            sin: 0.0,
            cos: 0.0,
        };
        assert!(SmoothTorusMap::new(a.clone(), vec![m]).is_err());
        let m = Mode {
            coordinate: 0,
            k: vec![1],
            sin: f64::NAN,
            cos: 0.0,
        };
        assert!(SmoothTorusMap::new(a, vec![m]).is_err());
    }

    #[test]
    fn composed_jacobian_is_chain_rule() {
        let f1 = cat(vec![Mode {
            coordinate: 0,
            k: vec![1, 0],
            sin: 0.02,
            cos: 0.0,
        }]);
        let f2 = SmoothTorusMap::new(
            IntMatrix::from_i64_rows(&[[1, 0], [1, 1]]).unwrap(),
            vec![Mode {
                coordinate: 1,
                k: vec![0, 1],
                sin: 0.0,
                cos: 0.01,
            }],
        )
        .unwrap();
        let comps = [f1.clone(), f2.clone()];
        let g = ComposedMap::new(&comps).unwrap();
        let x = [0.1, 0.2];
        let expected = f2.jacobian(&f1.lift(&x)).matmul(&f1.jacobian(&x)).unwrap();
        assert_eq!(g.jacobian(&x), expected);
        assert_eq!(g.lift(&x), f2.lift(&f1.lift(&x)));
        assert_eq!(g.orbit(&x).len(), 2);
        assert_eq!(
            g.linear_part(),
            &IntMatrix::from_i64_rows(&[[2, 1], [3, 2]]).unwrap()
        );
    }
}
