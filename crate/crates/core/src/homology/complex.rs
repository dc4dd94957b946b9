use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Desk-scale cap on the number of simplices.
pub const MAX_SIMPLICES: usize = 2000;

/// A finite abstract simplicial complex on vertices `0..vertices`. Every
/// vertex is a 0-simplex; simplices are oriented by sorted vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: usize,
    /// `by_dim[q]` lists the q-simplices, sorted.
    by_dim: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: usize,
    pub simplices: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Validates that `simplices` is closed under taking faces and free of
    /// duplicates. Listing 0-simplices is optional.
    pub fn new(vertices: usize, simplices: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in simplices {
            if s.is_empty() {
                return Err(Error::Validation("empty simplex".into()));
            }
            let mut sorted = s.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Validation(format!("simplex {s:?} repeats a vertex")));
            }
            if let Some(&v) = sorted.iter().find(|&&v| v >= vertices) {
                return Err(Error::Validation(format!("vertex {v} out of range")));
            }
            if !seen.insert(sorted) {
                return Err(Error::Validation(format!("duplicate simplex {s:?}")));
            }
        }
        for v in 0..vertices {
            seen.insert(vec![v]);
        }
        for s in &seen {
            if s.len() < 2 {
                continue;
            }
            for skip in 0..s.len() {
                let face: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                if !seen.contains(&face) {
                    return Err(Error::Validation(format!(
                        "face {face:?} of {s:?} is missing"
                    )));
                }
            }
        }
        Self::build(vertices, seen)
    }

    /// Closes a list of (maximal) simplices under faces.
    pub fn from_maximal(vertices: usize, maximal: &[Vec<usize>]) -> Result<Self> {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in maximal {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != s.len() || sorted.iter().any(|&v| v >= vertices) {
                return Err(Error::Validation(format!("bad simplex {s:?}")));
            }
            let k = sorted.len();
            for mask in 1u64..(1u64 << k) {
                all.insert(
                    (0..k)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| sorted[i])
                        .collect(),
                );
            }
        }
        for v in 0..vertices {
            all.insert(vec![v]);
        }
        Self::build(vertices, all)
    }

    fn build(vertices: usize, all: BTreeSet<Vec<usize>>) -> Result<Self> {
        if all.len() > MAX_SIMPLICES {
            return Err(Error::SizeCap {
                what: "simplicial complex",
                size: all.len(),
                cap: MAX_SIMPLICES,
            });
        }
        let dim = all.iter().map(Vec::len).max().unwrap_or(1);
        let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); dim.max(1)];
        for s in all {
            by_dim[s.len() - 1].push(s);
        }
        for level in &mut by_dim {
            level.sort();
        }
        let index = by_dim
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();
        Ok(SimplicialComplex {
            vertices,
            by_dim,
            index,
        })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    /// Top dimension; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        (self.vertices > 0).then(|| self.by_dim.len() - 1)
    }

    pub fn simplices(&self, q: usize) -> &[Vec<usize>] {
        self.by_dim.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, q: usize) -> usize {
        self.simplices(q).len()
    }

    pub fn total_simplices(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn index_of(&self, simplex: &[usize]) -> Option<usize> {
        self.index
            .get(simplex.len().checked_sub(1)?)?
            .get(simplex)
            .copied()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        self.index_of(simplex).is_some()
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            vertices: self.vertices,
            simplices: self.by_dim.iter().skip(1).flatten().cloned().collect(),
        }
    }
}

impl TryFrom<ComplexJson> for SimplicialComplex {
    type Error = Error;

    fn try_from(j: ComplexJson) -> Result<Self> {
        SimplicialComplex::new(j.vertices, j.simplices)
    }
}

/// `d_q : C_q -> C_{q-1}` for `q = 1..=dim`, with the usual alternating signs.
pub fn boundary_matrices(k: &SimplicialComplex) -> Vec<IntMatrix> {
    let top = k.dim().unwrap_or(0);
    (1..=top).map(|q| boundary_matrix(k, q)).collect()
}

pub fn boundary_matrix(k: &SimplicialComplex, q: usize) -> IntMatrix {
    let rows = if q == 0 { 0 } else { k.count(q - 1) };
    let mut d = IntMatrix::zeros(rows, k.count(q));
    if q == 0 {
        return d;
    }
    for (col, s) in k.simplices(q).iter().enumerate() {
        for skip in 0..s.len() {
            let face: Vec<usize> = s
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect();
            let row = k.index_of(&face).expect("complex is closed under faces");
            d[(row, col)] = BigInt::from(if skip % 2 == 0 { 1 } else { -1 });
        }
    }
    d
}

pub fn euler_characteristic(k: &SimplicialComplex) -> i64 {
    (0..k.by_dim.len())
        .map(|q| {
            let n = k.count(q) as i64;
            if q % 2 == 0 {
                n
            } else {
                -n
            }
        })
        .sum()
}

/// Betti numbers over the rationals from Smith normal form ranks.
pub fn betti_numbers(k: &SimplicialComplex) -> Vec<usize> {
    let Some(top) = k.dim() else {
        return Vec::new();
    };
    let ranks: Vec<usize> = (0..=top + 1)
        .map(|q| {
            if q == 0 || q > top {
                0
            } else {
                crate::linalg::smith_normal_form(&boundary_matrix(k, q)).rank()
            }
        })
        .collect();
    (0..=top)
        .map(|q| k.count(q) - ranks[q] - ranks[q + 1])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::corpus;
    use num_traits::Zero;

    #[test]
    fn triangle_boundary() {
        let c = corpus::circle(3);
        let d = boundary_matrices(&c);
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].rows(), d[0].cols()), (3, 3));
        for j in 0..3 {
            let s: BigInt = (0..3).map(|i| d[0][(i, j)].clone()).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn point_has_no_boundaries() {
        assert!(boundary_matrices(&corpus::point()).is_empty());
    }

    #[test]
    fn filled_triangle() {
        let t = corpus::filled_triangle();
        let d = boundary_matrices(&t);
        assert_eq!(d[1].cols(), 1);
        assert!(d[0].matmul(&d[1]).unwrap().is_zero());
    }

    #[test]
    fn boundary_squares_to_zero_on_corpus() {
        for (_, k) in corpus::bundled_complexes() {
            let d = boundary_matrices(&k);
            for w in d.windows(2) {
                assert!(w[0].matmul(&w[1]).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic(&corpus::point()), 1);
        assert_eq!(euler_characteristic(&corpus::circle(3)), 0);
        assert_eq!(euler_characteristic(&corpus::torus()), 0);
        assert_eq!(euler_characteristic(&corpus::genus_two()), -2);
        assert_eq!(euler_characteristic(&corpus::sphere()), 2);
    }

    #[test]
    fn betti_numbers_match_hand_counts() {
        assert_eq!(betti_numbers(&corpus::point()), vec![1]);
        assert_eq!(betti_numbers(&corpus::circle(6)), vec![1, 1]);
        assert_eq!(betti_numbers(&corpus::torus()), vec![1, 2, 1]);
        assert_eq!(betti_numbers(&corpus::genus_two()), vec![1, 4, 1]);
        assert_eq!(betti_numbers(&corpus::sphere()), vec![1, 0, 1]);
    }

    #[test]
    fn validation() {
        assert!(SimplicialComplex::new(3, vec![vec![0, 1, 2]]).is_err());
        assert!(SimplicialComplex::new(2, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(SimplicialComplex::new(2, vec![vec![0, 2]]).is_err());
        assert!(SimplicialComplex::new(2, vec![vec![0, 0]]).is_err());
        assert!(SimplicialComplex::new(2, vec![vec![0], vec![0, 1]]).is_ok());
    }
}
