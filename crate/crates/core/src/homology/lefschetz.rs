use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::complex::{boundary_matrix, ComplexJson, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::rational::{self, Q};
use crate::linalg::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialMap {
    pub vertex_images: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(vertex_images: Vec<usize>) -> Self {
        SimplicialMap { vertex_images }
    }

    pub fn identity(n: usize) -> Self {
        SimplicialMap::new((0..n).collect())
    }

    pub fn constant(n: usize, v: usize) -> Self {
        SimplicialMap::new(vec![v; n])
    }

    pub fn compose(&self, inner: &SimplicialMap) -> SimplicialMap {
        SimplicialMap::new(
            inner
                .vertex_images
                .iter()
                .map(|&v| self.vertex_images[v])
                .collect(),
        )
    }
}

/// A map `f : K' -> K` out of a subdivision `K'` of `K`, together with a
/// simplicial approximation `g : K' -> K` of the identity. Its Lefschetz
/// number is that of the self-map of `|K|` represented by `f`.
#[derive(Clone, Debug)]
pub struct SubdividedMap {
    pub domain: SimplicialComplex,
    pub map: SimplicialMap,
    pub identity_approximation: SimplicialMap,
}

/// Map JSON: `{"vertex_images": [...]}`, optionally with `"domain"` and
/// `"identity_approximation"` for maps out of a subdivision.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapJson {
    pub vertex_images: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<ComplexJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity_approximation: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LefschetzReport {
    #[serde(with = "crate::json::bigint")]
    pub lefschetz: BigInt,
    /// Trace of the induced map on `H_q(K; Q)`, per degree.
    #[serde(with = "crate::json::bigint_vec")]
    pub traces: Vec<BigInt>,
    pub betti: Vec<usize>,
}

/// Chain map `C_q(domain) -> C_q(target)`. Collapsed simplices go to zero.
pub fn chain_map(
    domain: &SimplicialComplex,
    target: &SimplicialComplex,
    f: &SimplicialMap,
    q: usize,
) -> Result<IntMatrix> {
    check_vertex_map(domain, target, f)?;
    let mut m = IntMatrix::zeros(target.count(q), domain.count(q));
    for (col, s) in domain.simplices(q).iter().enumerate() {
        let mut img: Vec<usize> = s.iter().map(|&v| f.vertex_images[v]).collect();
        let mut span = img.clone();
        span.sort_unstable();
        span.dedup();
        if !target.contains(&span) {
            return Err(Error::Validation(format!(
                "image of simplex {s:?} does not span a simplex"
            )));
        }
        if span.len() < img.len() {
            continue;
        }
        let parity = sort_parity(&mut img);
        let row = target.index_of(&img).expect("checked above");
        m[(row, col)] = BigInt::from(if parity { -1 } else { 1 });
    }
    Ok(m)
}

fn check_vertex_map(
    domain: &SimplicialComplex,
    target: &SimplicialComplex,
    f: &SimplicialMap,
) -> Result<()> {
    if f.vertex_images.len() != domain.vertices() {
        return Err(Error::Validation(format!(
            "map has {} vertex images, complex has {} vertices",
            f.vertex_images.len(),
            domain.vertices()
        )));
    }
    if let Some(&v) = f.vertex_images.iter().find(|&&v| v >= target.vertices()) {
        return Err(Error::Validation(format!("vertex image {v} out of range")));
    }
    Ok(())
}

/// Sorts in place; returns true if the permutation was odd.
fn sort_parity(v: &mut [usize]) -> bool {
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    odd
}

/// A rational basis of `B_q` extended by cycle representatives of `H_q`.
struct HomologyBasis {
    boundaries: Vec<Vec<Q>>,
    reps: Vec<Vec<Q>>,
}

impl HomologyBasis {
    /// Coordinates of a cycle in the representative basis.
    fn coordinates(&self, z: &[Q]) -> Result<Vec<Q>> {
        let mut all = self.boundaries.clone();
        all.extend(self.reps.iter().cloned());
        let c = rational::solve_in_span(&all, z)
            .ok_or_else(|| Error::Validation("image is not a cycle".into()))?;
        Ok(c[self.boundaries.len()..].to_vec())
    }
}

fn to_q_rows(m: &IntMatrix) -> Vec<Vec<Q>> {
    m.row_iter()
        .map(|r| r.iter().map(rational::from_int).collect())
        .collect()
}

fn homology_bases(k: &SimplicialComplex) -> Vec<HomologyBasis> {
    let Some(top) = k.dim() else {
        return Vec::new();
    };
    (0..=top)
        .map(|q| {
            let n = k.count(q);
            let cycles = if q == 0 {
                (0..n).map(|i| unit(n, i)).collect()
            } else {
                rational::kernel_basis(&to_q_rows(&boundary_matrix(k, q)), n)
            };
            let boundaries: Vec<Vec<Q>> = if q < top {
                let mut cols = to_q_rows(&boundary_matrix(k, q + 1).transpose());
                rational::rref(&mut cols, n);
                cols.into_iter()
                    .filter(|r| r.iter().any(|x| !x.is_zero()))
                    .collect()
            } else {
                Vec::new()
            };
            let mut span = boundaries.clone();
            let mut reps = Vec::new();
            for z in cycles {
                span.push(z.clone());
                if rational::rank(&span, n) == span.len() {
                    reps.push(z);
                } else {
                    span.pop();
                }
            }
            HomologyBasis { boundaries, reps }
        })
        .collect()
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

/// Matrix of the induced map on `H_q` in the chosen bases, as rows.
fn induced(chain: &IntMatrix, from: &HomologyBasis, to: &HomologyBasis) -> Result<Vec<Vec<Q>>> {
    let beta_to = to.reps.len();
    let mut m = vec![vec![Q::zero(); from.reps.len()]; beta_to];
    for (j, c) in from.reps.iter().enumerate() {
        let image: Vec<Q> = chain
            .row_iter()
            .map(|row| {
                row.iter()
                    .zip(c)
                    .map(|(a, x)| rational::from_int(a) * x)
                    .sum()
            })
            .collect();
        for (i, x) in to.coordinates(&image)?.into_iter().enumerate() {
            m[i][j] = x;
        }
    }
    Ok(m)
}

fn matmul_q(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|t| &row[t] * &b[t][j]).sum())
                .collect()
        })
        .collect()
}

fn integral_trace(m: &[Vec<Q>]) -> Result<BigInt> {
    let t: Q = (0..m.len()).map(|i| m[i][i].clone()).sum();
    if !t.is_integer() {
        return Err(Error::Validation(format!("non-integral trace {t}")));
    }
    Ok(t.to_integer())
}

fn alternating_sum(traces: &[BigInt]) -> BigInt {
    traces
        .iter()
        .enumerate()
        .map(|(q, t)| if q % 2 == 0 { t.clone() } else { -t.clone() })
        .sum()
}

pub fn lefschetz_report(k: &SimplicialComplex, f: &SimplicialMap) -> Result<LefschetzReport> {
    check_vertex_map(k, k, f)?;
    let bases = homology_bases(k);
    let mut traces = Vec::with_capacity(bases.len());
    for (q, b) in bases.iter().enumerate() {
        let fq = induced(&chain_map(k, k, f, q)?, b, b)?;
        traces.push(integral_trace(&fq)?);
    }
    Ok(LefschetzReport {
        lefschetz: alternating_sum(&traces),
        traces,
        betti: bases.iter().map(|b| b.reps.len()).collect(),
    })
}

/// `L(f) = sum_q (-1)^q tr(f_* : H_q(K; Q) -> H_q(K; Q))`.
pub fn lefschetz_number(k: &SimplicialComplex, f: &SimplicialMap) -> Result<BigInt> {
    Ok(lefschetz_report(k, f)?.lefschetz)
}

/// Lefschetz number of a map given on a subdivision: traces of `f_* g_*^{-1}`.
pub fn lefschetz_report_subdivided(
    k: &SimplicialComplex,
    s: &SubdividedMap,
) -> Result<LefschetzReport> {
    let kd = &s.domain;
    check_vertex_map(kd, k, &s.map)?;
    check_vertex_map(kd, k, &s.identity_approximation)?;
    let target = homology_bases(k);
    let source = homology_bases(kd);
    if target.len() != source.len()
        || target
            .iter()
            .zip(&source)
            .any(|(a, b)| a.reps.len() != b.reps.len())
    {
        return Err(Error::Validation(
            "domain and target have different homology".into(),
        ));
    }
    let mut traces = Vec::with_capacity(target.len());
    for q in 0..target.len() {
        let fq = induced(&chain_map(kd, k, &s.map, q)?, &source[q], &target[q])?;
        let gq = induced(
            &chain_map(kd, k, &s.identity_approximation, q)?,
            &source[q],
            &target[q],
        )?;
        let g_inv = rational::inverse(&gq).ok_or_else(|| {
            Error::Validation("identity approximation is not a homology isomorphism".into())
        })?;
        traces.push(integral_trace(&matmul_q(&fq, &g_inv))?);
    }
    Ok(LefschetzReport {
        lefschetz: alternating_sum(&traces),
        traces,
        betti: target.iter().map(|b| b.reps.len()).collect(),
    })
}

/// Dispatches on whether the map JSON carries a subdivided domain.
pub fn lefschetz_from_json(k: &SimplicialComplex, m: MapJson) -> Result<LefschetzReport> {
    let map = SimplicialMap::new(m.vertex_images);
    match (m.domain, m.identity_approximation) {
        (None, None) => lefschetz_report(k, &map),
        (Some(d), Some(g)) => lefschetz_report_subdivided(
            k,
            &SubdividedMap {
                domain: SimplicialComplex::try_from(d)?,
                map,
                identity_approximation: SimplicialMap::new(g),
            },
        ),
        _ => Err(Error::Validation(
            "\"domain\" and \"identity_approximation\" must be given together".into(),
        )),
    }
}

/// Chain-level alternating trace of a self-map.
pub fn chain_level_trace(k: &SimplicialComplex, f: &SimplicialMap) -> Result<BigInt> {
    let top = k.dim().unwrap_or(0);
    let mut total = BigInt::zero();
    for q in 0..=top {
        let c = chain_map(k, k, f, q)?;
        let t: BigInt = (0..c.rows()).map(|i| c[(i, i)].clone()).sum();
        if q % 2 == 0 {
            total += t;
        } else {
            total -= t;
        }
    }
    Ok(total)
}
