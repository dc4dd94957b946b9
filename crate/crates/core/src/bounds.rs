//! Index bounds for homeomorphisms of hyperbolic surfaces and their products.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `2 chi - 1 <= ind <= 1` for every fixed point class of a surface
/// homeomorphism, `chi < 0`.
pub fn surface_index_interval(chi: i64) -> Result<(i64, i64)> {
    if chi >= 0 {
        return Err(Error::Domain(format!(
            "index bounds need a hyperbolic surface, got chi = {chi}"
        )));
    }
    let lower = chi
        .checked_mul(2)
        .and_then(|x| x.checked_sub(1))
        .ok_or_else(|| Error::Domain(format!("chi = {chi} out of range")))?;
    Ok((lower, 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexMultiset {
    pub indices: Vec<i64>,
    pub chi: i64,
}

/// Clause of the surface bounds that a multiset can violate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// Some index lies outside `[2 chi - 1, 1]`.
    Interval,
    /// `sum over ind < -1 of (ind + 1) >= 2 chi` fails.
    Aggregate,
    /// `|L - chi| <= N - chi` fails.
    LefschetzNielsen,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: Clause,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub lower: i64,
    pub upper: i64,
    pub interval_ok: bool,
    /// `sum over ind < -1 of (ind + 1)`.
    pub aggregate: i64,
    pub aggregate_ok: bool,
    pub lefschetz: i64,
    pub nielsen: i64,
    pub ln_inequality_ok: bool,
    pub verdict: bool,
    pub violations: Vec<Violation>,
}

impl BoundReport {
    pub fn violated(&self, clause: Clause) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }
}

pub fn check_index_multiset(m: &IndexMultiset) -> Result<BoundReport> {
    let (lower, upper) = surface_index_interval(m.chi)?;
    let mut violations = Vec::new();
    for &i in &m.indices {
        if i < lower || i > upper {
            violations.push(Violation {
                clause: Clause::Interval,
                detail: format!("index {i} outside [{lower}, {upper}]"),
            });
        }
    }
    let aggregate: i64 = m.indices.iter().filter(|&&i| i < -1).map(|&i| i + 1).sum();
    let aggregate_ok = aggregate >= 2 * m.chi;
    if !aggregate_ok {
        violations.push(Violation {
            clause: Clause::Aggregate,
            detail: format!("deficiency sum {aggregate} < 2 chi = {}", 2 * m.chi),
        });
    }
    let lefschetz: i64 = m.indices.iter().sum();
    let nielsen = m.indices.iter().filter(|&&i| i != 0).count() as i64;
    let ln_inequality_ok = (lefschetz - m.chi).abs() <= nielsen - m.chi;
    if !ln_inequality_ok {
        violations.push(Violation {
            clause: Clause::LefschetzNielsen,
            detail: format!(
                "|L - chi| = {} > N - chi = {}",
                (lefschetz - m.chi).abs(),
                nielsen - m.chi
            ),
        });
    }
    let interval_ok = !violations.iter().any(|v| v.clause == Clause::Interval);
    Ok(BoundReport {
        lower,
        upper,
        interval_ok,
        aggregate,
        aggregate_ok,
        lefschetz,
        nielsen,
        ln_inequality_ok,
        verdict: violations.is_empty(),
        violations,
    })
}

/// Product of per-factor index bounds.
pub fn product_bound(bounds: &[BigInt]) -> Result<BigInt> {
    if bounds.is_empty() {
        return Err(Error::Domain("product bound of no factors".into()));
    }
    if let Some(b) = bounds.iter().find(|b| !b.is_positive()) {
        return Err(Error::Domain(format!("bound {b} is not positive")));
    }
    Ok(bounds.iter().product())
}

/// A closed surface given by genus or Euler characteristic, with the number
/// of copies in the product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
    pub multiplicity: u32,
}

impl SurfaceSpec {
    pub fn genus(genus: u64, multiplicity: u32) -> Self {
        SurfaceSpec {
            genus: Some(genus),
            chi: None,
            multiplicity,
        }
    }

    pub fn chi(chi: i64, multiplicity: u32) -> Self {
        SurfaceSpec {
            genus: None,
            chi: Some(chi),
            multiplicity,
        }
    }

    pub fn euler_characteristic(&self) -> Result<i64> {
        let from_genus = self
            .genus
            .map(|g| {
                i64::try_from(g)
                    .ok()
                    .and_then(|g| g.checked_mul(2))
                    .and_then(|g2| 2i64.checked_sub(g2))
                    .ok_or_else(|| Error::Domain(format!("genus {g} out of range")))
            })
            .transpose()?;
        let chi = match (from_genus, self.chi) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::Domain(format!(
                    "genus gives chi = {a} but chi = {b} was given"
                )))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(Error::Domain("surface needs genus or chi".into())),
        };
        if chi >= 0 {
            return Err(Error::Domain(format!(
                "surface with chi = {chi} is not hyperbolic"
            )));
        }
        if self.multiplicity == 0 {
            return Err(Error::Domain("multiplicity must be at least 1".into()));
        }
        Ok(chi)
    }
}

/// `prod |2 chi_i - 1|^{n_i}`.
pub fn hyperbolic_product_bound(surfaces: &[SurfaceSpec]) -> Result<BigInt> {
    if surfaces.is_empty() {
        return Err(Error::Domain("product bound of no surfaces".into()));
    }
    let mut out = BigInt::one();
    for s in surfaces {
        let chi = s.euler_characteristic()?;
        let base = (BigInt::from(chi) * 2i32 - 1i32).abs();
        out *= num_traits::pow(base, s.multiplicity as usize);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub product_maps: usize,
    pub classes: usize,
    pub max_abs_index: i64,
    #[serde(with = "crate::json::bigint")]
    pub bound: BigInt,
    pub dominated: bool,
}

/// Confirms that every observed product class index is bounded in absolute
/// value by the product of the per-factor maxima. Each entry of
/// `observations` is one product map: its factor index multisets and the
/// indices of its classes.
pub fn cross_check_with_oracle(observations: &[(Vec<Vec<i64>>, Vec<i64>)]) -> CrossCheckReport {
    let mut dominated = true;
    let mut max_abs = 0i64;
    let mut classes = 0usize;
    let mut overall: BigInt = BigInt::one();
    for (factors, product) in observations {
        let maxima: Vec<BigInt> = factors
            .iter()
            .map(|f| BigInt::from(f.iter().map(|i| i.abs()).max().unwrap_or(0).max(1)))
            .collect();
        let bound = product_bound(&maxima).unwrap_or_else(|_| BigInt::one());
        for &i in product {
            classes += 1;
            max_abs = max_abs.max(i.abs());
            if BigInt::from(i.abs()) > bound {
                dominated = false;
            }
        }
        overall = overall.max(bound);
    }
    CrossCheckReport {
        product_maps: observations.len(),
        classes,
        max_abs_index: max_abs,
        bound: overall,
        dominated,
    }
}

/// Multisets satisfying every clause.
pub fn bundled_valid_multisets() -> Vec<IndexMultiset> {
    let m = |indices: &[i64], chi| IndexMultiset {
        indices: indices.to_vec(),
        chi,
    };
    vec![
        m(&[-3, -2, 1, 1], -2),
        m(&[], -1),
        m(&[1], -2),
        m(&[-5], -2),
        m(&[-3, 0, 1], -1),
        m(&[1, 1, 1, 1, 1, 1], -2),
        m(&[-7, -1, 0, 1], -4),
        m(&[-2, -2, -2, -2, -2], -4),
    ]
}

/// Multisets each violating the named clause.
pub fn bundled_violating_multisets() -> Vec<(IndexMultiset, Clause)> {
    let m = |indices: &[i64], chi| IndexMultiset {
        indices: indices.to_vec(),
        chi,
    };
    vec![
        (m(&[-6], -2), Clause::Interval),
        (m(&[2], -1), Clause::Interval),
        (m(&[-4, -4, -2], -2), Clause::Aggregate),
        (m(&[-3, -3, -3], -2), Clause::Aggregate),
        (m(&[-3, -3], -1), Clause::LefschetzNielsen),
        (m(&[-5, -5, -5], -2), Clause::LefschetzNielsen),
    ]
}
