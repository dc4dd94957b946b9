//! Exact Nielsen theory for linear maps of flat tori.
//!
//! A map of `T^n` with linear part `A` lifts to `x -> A x + v`. Lifts are
//! conjugate by deck translations exactly when their offsets agree modulo
//! `(I - A) Z^n`, so fixed point classes are the cosets of that lattice and
//! every class of a non-degenerate map carries index `sgn det(I - A)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::rational::{self, Q};
use crate::linalg::{
    block_cyclic, block_diagonal, cokernel, cyclic_det_identity_check, cyclic_product, det_exact,
    sign, CokernelStructure, CosetRep, CyclicDetReport, IntMatrix,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusMap {
    linear_part: IntMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TorusMapJson {
    pub dim: usize,
    pub linear_part: IntMatrix,
}

impl TorusMap {
    pub fn new(linear_part: IntMatrix) -> Result<Self> {
        linear_part.require_square("torus map")?;
        Ok(TorusMap { linear_part })
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_i64_rows(rows)?)
    }

    pub fn dim(&self) -> usize {
        self.linear_part.rows()
    }

    pub fn linear_part(&self) -> &IntMatrix {
        &self.linear_part
    }

    /// `I - A`.
    pub fn displacement(&self) -> IntMatrix {
        self.linear_part.identity_minus().expect("square")
    }

    pub fn lefschetz(&self) -> BigInt {
        det_exact(&self.displacement()).expect("square")
    }

    pub fn to_json(&self) -> TorusMapJson {
        TorusMapJson {
            dim: self.dim(),
            linear_part: self.linear_part.clone(),
        }
    }
}

impl TryFrom<TorusMapJson> for TorusMap {
    type Error = Error;

    fn try_from(j: TorusMapJson) -> Result<Self> {
        if j.linear_part.rows() != j.dim || j.linear_part.cols() != j.dim {
            return Err(Error::Dimension(format!(
                "dim {} but linear part is {}x{}",
                j.dim,
                j.linear_part.rows(),
                j.linear_part.cols()
            )));
        }
        TorusMap::new(j.linear_part)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointClass {
    pub label: CosetRep,
    pub index: i32,
    pub essential: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NielsenSummary {
    #[serde(with = "crate::json::bigint")]
    pub lefschetz: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub nielsen: BigInt,
    pub degenerate: bool,
    /// False when there are too many classes to list.
    pub classes_listed: bool,
    pub classes: Vec<FixedPointClass>,
}

impl NielsenSummary {
    /// Index multiset as `index -> multiplicity`.
    pub fn index_multiset(&self) -> BTreeMap<i32, usize> {
        let mut m = BTreeMap::new();
        for c in &self.classes {
            *m.entry(c.index).or_insert(0) += 1;
        }
        m
    }

    /// Lefschetz-Hopf on the listed classes, and N = #essential.
    pub fn is_consistent(&self) -> bool {
        if !self.classes_listed {
            return true;
        }
        let sum: i64 = self.classes.iter().map(|c| i64::from(c.index)).sum();
        let essential = self.classes.iter().filter(|c| c.essential).count();
        BigInt::from(sum) == self.lefschetz && BigInt::from(essential) == self.nielsen
    }
}

/// Summary together with the cokernel used to label classes.
struct Analysis {
    summary: NielsenSummary,
    coker: Option<CokernelStructure>,
}

fn analyze_full(f: &TorusMap) -> Analysis {
    let d = f.displacement();
    let det = det_exact(&d).expect("square");
    if det.is_zero() {
        return Analysis {
            summary: NielsenSummary {
                lefschetz: BigInt::zero(),
                nielsen: BigInt::zero(),
                degenerate: true,
                classes_listed: true,
                classes: Vec::new(),
            },
            coker: None,
        };
    }
    let index = sign(&det);
    let coker = cokernel(&d, f.dim()).expect("square");
    let classes = coker.coset_representatives.as_ref().map(|reps| {
        reps.iter()
            .map(|r| FixedPointClass {
                label: r.clone(),
                index,
                essential: true,
            })
            .collect::<Vec<_>>()
    });
    Analysis {
        summary: NielsenSummary {
            nielsen: det.abs(),
            lefschetz: det,
            degenerate: false,
            classes_listed: classes.is_some(),
            classes: classes.unwrap_or_default(),
        },
        coker: Some(coker),
    }
}

pub fn analyze(f: &TorusMap) -> NielsenSummary {
    analyze_full(f).summary
}

/// Exact fixed point in `R^n` of the lift `x -> A x + v`.
pub fn fixed_point_of_lift(f: &TorusMap, v: &[BigInt]) -> Result<Vec<Q>> {
    if v.len() != f.dim() {
        return Err(Error::Dimension(format!(
            "offset has length {}, map has dim {}",
            v.len(),
            f.dim()
        )));
    }
    let d: Vec<Vec<Q>> = f
        .displacement()
        .row_iter()
        .map(|r| r.iter().map(rational::from_int).collect())
        .collect();
    let inv = rational::inverse(&d).ok_or_else(|| Error::Degenerate("det(I - A) = 0".into()))?;
    Ok(inv
        .iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(a, b)| a * rational::from_int(b))
                .sum()
        })
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductReport {
    pub direct: NielsenSummary,
    pub factors: Vec<NielsenSummary>,
    pub lefschetz_product_ok: bool,
    pub nielsen_product_ok: bool,
    pub class_indices_ok: bool,
    /// Product classes matched against direct classes.
    pub classes_checked: usize,
}

impl ProductReport {
    pub fn passed(&self) -> bool {
        self.lefschetz_product_ok && self.nielsen_product_ok && self.class_indices_ok
    }
}

/// Analyses the product map directly on the product torus and compares it
/// with the factors: L and N multiply, and the class with concatenated
/// representatives has the product index.
pub fn analyze_product(fs: &[TorusMap]) -> Result<ProductReport> {
    if fs.is_empty() {
        return Err(Error::Validation("product of no maps".into()));
    }
    let blocks: Vec<IntMatrix> = fs.iter().map(|f| f.linear_part.clone()).collect();
    let direct_map = TorusMap::new(block_diagonal(&blocks))?;
    let direct = analyze_full(&direct_map);
    let factors: Vec<Analysis> = fs.iter().map(analyze_full).collect();

    let l: BigInt = factors.iter().map(|a| &a.summary.lefschetz).product();
    let n: BigInt = factors.iter().map(|a| &a.summary.nielsen).product();
    let lefschetz_product_ok = l == direct.summary.lefschetz;
    let nielsen_product_ok = n == direct.summary.nielsen;

    let (class_indices_ok, classes_checked) = match &direct.coker {
        None => (
            direct.summary.classes.is_empty() && factors.iter().any(|a| a.summary.degenerate),
            0,
        ),
        Some(coker)
            if direct.summary.classes_listed
                && factors.iter().all(|a| a.summary.classes_listed) =>
        {
            check_product_classes(coker, &direct.summary, &factors)?
        }
        Some(_) => (true, 0),
    };
    Ok(ProductReport {
        direct: direct.summary,
        factors: factors.into_iter().map(|a| a.summary).collect(),
        lefschetz_product_ok,
        nielsen_product_ok,
        class_indices_ok,
        classes_checked,
    })
}

fn check_product_classes(
    coker: &CokernelStructure,
    direct: &NielsenSummary,
    factors: &[Analysis],
) -> Result<(bool, usize)> {
    let by_label: BTreeMap<&[BigInt], i32> = direct
        .classes
        .iter()
        .map(|c| (c.label.label.as_slice(), c.index))
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut ok = true;
    let mut count = 0usize;
    let sizes: Vec<usize> = factors.iter().map(|a| a.summary.classes.len()).collect();
    let mut digits = vec![0usize; factors.len()];
    if sizes.contains(&0) {
        return Ok((direct.classes.is_empty(), 0));
    }
    loop {
        let mut vector = Vec::new();
        let mut index = 1i32;
        for (a, &k) in factors.iter().zip(&digits) {
            let c = &a.summary.classes[k];
            vector.extend(c.label.vector.iter().cloned());
            index *= c.index;
        }
        let label = coker.label_of(&vector)?;
        match by_label.get(label.as_slice()) {
            Some(&i) if i == index => {}
            _ => ok = false,
        }
        if !seen.insert(label) {
            ok = false;
        }
        count += 1;
        // mixed-radix increment, last factor fastest
        let mut i = digits.len();
        loop {
            if i == 0 {
                return Ok((ok && count == direct.classes.len(), count));
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < sizes[i] {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// `f = tau o (f_1 x ... x f_m)` on `(T^n)^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicTorusMap {
    components: Vec<TorusMap>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CyclicTorusMapJson {
    pub components: Vec<TorusMapJson>,
}

impl CyclicTorusMap {
    pub fn new(components: Vec<TorusMap>) -> Result<Self> {
        let Some(first) = components.first() else {
            return Err(Error::Validation("cyclic map needs a component".into()));
        };
        let n = first.dim();
        if components.iter().any(|c| c.dim() != n) {
            return Err(Error::Dimension("components differ in dimension".into()));
        }
        Ok(CyclicTorusMap { components })
    }

    pub fn m(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[TorusMap] {
        &self.components
    }

    fn blocks(&self) -> Vec<IntMatrix> {
        self.components
            .iter()
            .map(|c| c.linear_part.clone())
            .collect()
    }

    /// `f_m o ... o f_1` on `T^n`.
    pub fn composed(&self) -> TorusMap {
        TorusMap::new(cyclic_product(&self.blocks()).expect("equal dims")).expect("square")
    }

    /// The cyclic map itself on `T^{mn}`.
    pub fn total(&self) -> TorusMap {
        TorusMap::new(block_cyclic(&self.blocks()).expect("equal dims")).expect("square")
    }
}

impl TryFrom<CyclicTorusMapJson> for CyclicTorusMap {
    type Error = Error;

    fn try_from(j: CyclicTorusMapJson) -> Result<Self> {
        CyclicTorusMap::new(
            j.components
                .into_iter()
                .map(TorusMap::try_from)
                .collect::<Result<_>>()?,
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicReport {
    pub composed: NielsenSummary,
    pub cyclic: NielsenSummary,
    pub lefschetz_equal: bool,
    pub nielsen_equal: bool,
    pub index_multiset_equal: bool,
    pub det_identity: CyclicDetReport,
}

impl CyclicReport {
    pub fn passed(&self) -> bool {
        self.lefschetz_equal
            && self.nielsen_equal
            && self.index_multiset_equal
            && self.det_identity.equal
    }
}

pub fn analyze_cyclic(f: &CyclicTorusMap) -> Result<CyclicReport> {
    let composed = analyze(&f.composed());
    let cyclic = analyze(&f.total());
    let both_listed = composed.classes_listed && cyclic.classes_listed;
    Ok(CyclicReport {
        lefschetz_equal: composed.lefschetz == cyclic.lefschetz,
        nielsen_equal: composed.nielsen == cyclic.nielsen,
        index_multiset_equal: !both_listed || composed.index_multiset() == cyclic.index_multiset(),
        det_identity: cyclic_det_identity_check(&f.blocks())?,
        composed,
        cyclic,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RhoPair {
    pub composed: FixedPointClass,
    pub cyclic: FixedPointClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct RhoReport {
    pub pairs: Vec<RhoPair>,
    pub bijective: bool,
    pub indices_match: bool,
}

impl RhoReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.indices_match
    }
}

/// Sends the class of the composed lift `x -> A_m...A_1 x + v` to the class
/// of the cyclic lift with offset `(v, 0, ..., 0)`, whose fixed point is
/// `(x, A_1 x, A_2 A_1 x, ...)`.
pub fn rho_correspondence(f: &CyclicTorusMap) -> Result<RhoReport> {
    let composed = analyze_full(&f.composed());
    if composed.summary.degenerate {
        return Err(Error::Degenerate("composed map has det(I - A) = 0".into()));
    }
    let cyclic = analyze_full(&f.total());
    let (Some(coker), true, true) = (
        cyclic.coker.as_ref(),
        composed.summary.classes_listed,
        cyclic.summary.classes_listed,
    ) else {
        return Err(Error::SizeCap {
            what: "fixed point classes",
            size: usize::MAX,
            cap: crate::linalg::MAX_ENUMERATED_COSETS,
        });
    };
    let by_label: BTreeMap<&[BigInt], &FixedPointClass> = cyclic
        .summary
        .classes
        .iter()
        .map(|c| (c.label.label.as_slice(), c))
        .collect();
    let n = f.components[0].dim();
    let mut pairs = Vec::new();
    let mut targets = std::collections::BTreeSet::new();
    let mut all_found = true;
    let mut indices_match = true;
    for c in &composed.summary.classes {
        let mut w = c.label.vector.clone();
        w.resize(n * f.m(), BigInt::zero());
        let label = coker.label_of(&w)?;
        match by_label.get(label.as_slice()) {
            Some(&t) => {
                indices_match &= t.index == c.index;
                targets.insert(label);
                pairs.push(RhoPair {
                    composed: c.clone(),
                    cyclic: t.clone(),
                });
            }
            None => all_found = false,
        }
    }
    Ok(RhoReport {
        bijective: all_found
            && targets.len() == composed.summary.classes.len()
            && targets.len() == cyclic.summary.classes.len(),
        indices_match,
        pairs,
    })
}

/// All `dim x dim` maps with entries in `[lo, hi]`, in lexicographic order.
pub fn all_maps(dim: usize, lo: i64, hi: i64) -> Vec<TorusMap> {
    let span = (hi - lo + 1) as usize;
    let cells = dim * dim;
    let total = span.pow(cells as u32);
    (0..total)
        .map(|mut code| {
            let mut e = vec![0i64; cells];
            for slot in e.iter_mut().rev() {
                *slot = lo + (code % span) as i64;
                code /= span;
            }
            let rows: Vec<&[i64]> = e.chunks(dim).collect();
            TorusMap::from_i64_rows(&rows).expect("square")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, ToPrimitive};
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn map(rows: &[&[i64]]) -> TorusMap {
        TorusMap::from_i64_rows(rows).unwrap()
    }

    /// Brute force: the fixed points of the linear map in `[0,1)^n` are the
    /// points `(I-A)^{-1} v` over integer `v` in the box bounding `(I-A)[0,1)^n`.
    /// Two of them lie in one class iff `(I-A)^{-1}(v - v')` is integral.
    fn brute_force(f: &TorusMap) -> (usize, usize) {
        let n = f.dim();
        let d = f.displacement();
        let bounds: Vec<(i64, i64)> = d
            .row_iter()
            .map(|r| {
                let lo: i64 = r.iter().map(|x| x.to_i64().unwrap().min(0)).sum();
                let hi: i64 = r.iter().map(|x| x.to_i64().unwrap().max(0)).sum();
                (lo, hi)
            })
            .collect();
        let mut offsets: Vec<Vec<BigInt>> = vec![vec![]];
        for &(lo, hi) in &bounds {
            offsets = offsets
                .into_iter()
                .flat_map(|p| {
                    (lo..=hi).map(move |x| {
                        let mut q = p.clone();
                        q.push(BigInt::from(x));
                        q
                    })
                })
                .collect();
        }
        let mut found: Vec<Vec<BigInt>> = Vec::new();
        for v in offsets {
            let x = fixed_point_of_lift(f, &v).unwrap();
            if x.iter().all(|c| *c >= Q::zero() && *c < Q::one()) {
                found.push(v);
            }
        }
        let mut classes: Vec<Vec<BigInt>> = Vec::new();
        for v in &found {
            let fresh = classes.iter().all(|w| {
                let diff: Vec<BigInt> = v.iter().zip(w).map(|(a, b)| a - b).collect();
                !fixed_point_of_lift(f, &diff)
                    .unwrap()
                    .iter()
                    .all(|q| q.is_integer())
            });
            if fresh {
                classes.push(v.clone());
            }
        }
        assert_eq!(n, f.dim());
        (found.len(), classes.len())
    }

    #[test]
    fn cat_map() {
        let s = analyze(&map(&[&[2, 1], &[1, 1]]));
        assert_eq!(s.lefschetz, BigInt::from(-1));
        assert_eq!(s.nielsen, BigInt::one());
        assert_eq!(s.classes.len(), 1);
        assert_eq!(s.classes[0].index, -1);
        assert_eq!(brute_force(&map(&[&[2, 1], &[1, 1]])), (1, 1));
    }

    #[test]
    fn identity_is_degenerate() {
        let s = analyze(&map(&[&[1, 0], &[0, 1]]));
        assert!(s.degenerate);
        assert_eq!(s.lefschetz, BigInt::zero());
        assert_eq!(s.nielsen, BigInt::zero());
        assert!(s.classes.is_empty());
    }

    #[test]
    fn two_class_map() {
        let f = map(&[&[2, 1], &[1, 0]]);
        let s = analyze(&f);
        assert_eq!(s.lefschetz, BigInt::from(-2));
        assert_eq!(s.nielsen, BigInt::from(2));
        assert_eq!(
            s.classes.iter().map(|c| c.index).collect::<Vec<_>>(),
            vec![-1, -1]
        );
        assert_eq!(brute_force(&f), (2, 2));
    }

    #[test]
    fn rotation() {
        let s = analyze(&map(&[&[0, -1], &[1, 0]]));
        assert_eq!(s.lefschetz, BigInt::from(2));
        assert_eq!(
            s.classes.iter().map(|c| c.index).collect::<Vec<_>>(),
            vec![1, 1]
        );
    }

    #[test]
    fn brute_force_agrees_on_all_small_maps() {
        for f in all_maps(2, -2, 2) {
            let s = analyze(&f);
            if s.degenerate {
                continue;
            }
            let (points, classes) = brute_force(&f);
            assert_eq!(BigInt::from(points), s.nielsen, "{f:?}");
            assert_eq!(BigInt::from(classes), s.nielsen, "{f:?}");
            assert!(s.is_consistent());
        }
    }

    #[test]
    fn product_examples() {
        let r = analyze_product(&[map(&[&[2, 1], &[1, 1]]), map(&[&[2, 1], &[1, 0]])]).unwrap();
        assert!(r.passed());
        assert_eq!(r.direct.nielsen, BigInt::from(2));
        assert_eq!(r.direct.lefschetz, BigInt::from(2));
        assert!(r.direct.classes.iter().all(|c| c.index == 1));
        assert_eq!(r.classes_checked, 2);

        let r = analyze_product(&[map(&[&[2, 1], &[1, 1]]), map(&[&[1]])]).unwrap();
        assert!(r.passed());
        assert!(r.direct.degenerate);
        assert_eq!(r.direct.nielsen, BigInt::zero());

        // N = 1, 2, 3: multipliers 0, -1, -2 on the circle
        let r = analyze_product(&[map(&[&[0]]), map(&[&[-1]]), map(&[&[-2]])]).unwrap();
        assert!(r.passed());
        assert_eq!(r.direct.nielsen, BigInt::from(6));
        assert_eq!(r.classes_checked, 6);
    }

    #[test]
    fn cyclic_examples() {
        let c =
            CyclicTorusMap::new(vec![map(&[&[1, 1], &[0, 1]]), map(&[&[1, 0], &[1, 1]])]).unwrap();
        assert_eq!(c.composed(), map(&[&[1, 1], &[1, 2]]));
        let r = analyze_cyclic(&c).unwrap();
        assert!(r.passed());
        assert_eq!(r.composed.lefschetz, BigInt::from(-1));
        assert_eq!(r.cyclic.nielsen, BigInt::one());
        let rho = rho_correspondence(&c).unwrap();
        assert!(rho.passed());
        assert_eq!(rho.pairs.len(), 1);
        assert_eq!(rho.pairs[0].cyclic.index, -1);

        let single = CyclicTorusMap::new(vec![map(&[&[2, 1], &[1, 0]])]).unwrap();
        let r = analyze_cyclic(&single).unwrap();
        assert_eq!(r.cyclic, analyze(&map(&[&[2, 1], &[1, 0]])));
        let rho = rho_correspondence(&single).unwrap();
        assert!(rho.pairs.iter().all(|p| p.composed == p.cyclic));

        let triple = CyclicTorusMap::new(vec![map(&[&[2]]); 3]).unwrap();
        let r = analyze_cyclic(&triple).unwrap();
        assert!(r.passed());
        assert_eq!(r.composed.lefschetz, BigInt::from(-7));
        assert_eq!(r.cyclic.nielsen, BigInt::from(7));
        assert_eq!(brute_force(&map(&[&[8]])), (7, 7));

        let c =
            CyclicTorusMap::new(vec![map(&[&[2, 1], &[1, 0]]), map(&[&[1, 0], &[0, 1]])]).unwrap();
        let rho = rho_correspondence(&c).unwrap();
        assert!(rho.passed());
        assert_eq!(rho.pairs.len(), 2);
    }

    #[test]
    fn rho_rejects_degenerate_composition() {
        let c =
            CyclicTorusMap::new(vec![map(&[&[1, 0], &[0, 1]]), map(&[&[1, 0], &[0, 1]])]).unwrap();
        assert!(matches!(rho_correspondence(&c), Err(Error::Degenerate(_))));
        assert!(CyclicTorusMap::new(vec![map(&[&[1]]), map(&[&[1, 0], &[0, 1]])]).is_err());
    }

    /// Independent check of rho: the exact fixed point of the composed lift,
    /// pushed along the components, is fixed by the cyclic lift with offset
    /// `(v, 0, ..., 0)`.
    fn rho_by_points(c: &CyclicTorusMap, v: &[BigInt]) -> bool {
        let x = fixed_point_of_lift(&c.composed(), v).unwrap();
        let mut orbit = vec![x.clone()];
        let mut cur = x;
        for comp in &c.components()[..c.m() - 1] {
            cur = comp
                .linear_part()
                .row_iter()
                .map(|r| {
                    r.iter()
                        .zip(&cur)
                        .map(|(a, y)| rational::from_int(a) * y)
                        .sum()
                })
                .collect();
            orbit.push(cur.clone());
        }
        let point: Vec<Q> = orbit.concat();
        let mut w = v.to_vec();
        w.resize(point.len(), BigInt::zero());
        let fixed = fixed_point_of_lift(&c.total(), &w).unwrap();
        fixed == point
    }

    #[test]
    fn json_round_trip() {
        let j = r#"{"dim":2,"linear_part":{"rows":2,"cols":2,"entries":[[2,1],[1,1]]}}"#;
        let f = TorusMap::try_from(serde_json::from_str::<TorusMapJson>(j).unwrap()).unwrap();
        assert_eq!(f, map(&[&[2, 1], &[1, 1]]));
        let bad = r#"{"dim":3,"linear_part":{"rows":2,"cols":2,"entries":[[2,1],[1,1]]}}"#;
        assert!(TorusMap::try_from(serde_json::from_str::<TorusMapJson>(bad).unwrap()).is_err());
    }

    fn small_map(dim: usize) -> impl Strategy<Value = TorusMap> {
        proptest::collection::vec(-3i64..=3, dim * dim).prop_map(move |e| {
            let rows: Vec<&[i64]> = e.chunks(dim).collect();
            TorusMap::from_i64_rows(&rows).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn lefschetz_hopf_and_class_count(f in (1usize..=3).prop_flat_map(small_map)) {
            let s = analyze(&f);
            prop_assert!(s.is_consistent());
            if !s.degenerate {
                prop_assert_eq!(BigInt::from(s.classes.len()), f.lefschetz().abs());
                prop_assert!(s.classes.iter().all(|c| c.index == 1 || c.index == -1));
            }
        }

        #[test]
        fn product_identities(fs in proptest::collection::vec((1usize..=2).prop_flat_map(small_map), 1..=3)) {
            prop_assert!(analyze_product(&fs).unwrap().passed());
        }

        #[test]
        fn cyclic_identities(dim in 1usize..=2, m in 1usize..=3, seed in proptest::collection::vec(-3i64..=3, 12)) {
            let comps: Vec<TorusMap> = (0..m)
                .map(|i| {
                    let e = &seed[i * 4..i * 4 + dim * dim];
                    let rows: Vec<&[i64]> = e.chunks(dim).collect();
                    TorusMap::from_i64_rows(&rows).unwrap()
                })
                .collect();
            let c = CyclicTorusMap::new(comps).unwrap();
            prop_assert!(analyze_cyclic(&c).unwrap().passed());
            if !c.composed().lefschetz().is_zero() {
                let rho = rho_correspondence(&c).unwrap();
                prop_assert!(rho.passed());
                for p in rho.pairs.iter().take(8) {
                    prop_assert!(rho_by_points(&c, &p.composed.label.vector));
                }
            }
        }
    }

    #[test]
    fn all_maps_enumerates_lexicographically() {
        let v = all_maps(1, -1, 1);
        assert_eq!(v.len(), 3);
        assert_eq!(v[0], map(&[&[-1]]));
        assert_eq!(all_maps(2, -3, 3).len(), 2401);
        let distinct: BTreeSet<_> = all_maps(2, 0, 1)
            .iter()
            .map(|f| f.linear_part().entries().to_vec())
            .collect();
        assert_eq!(distinct.len(), 16);
    }
}
