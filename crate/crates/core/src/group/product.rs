use serde::{Deserialize, Serialize};

use super::finite::{is_automorphism_of, FiniteGroup, GroupJson, GroupOps};
use super::morphism::{
    are_isomorphic, automorphisms, automorphisms_capped, generating_set, GroupAutomorphism,
};
use super::subgroups::is_unfactorizable;
use crate::error::{Error, Result};

/// Default cap on the order of a product group for exhaustive searches.
pub const DEFAULT_PRODUCT_CAP: usize = 5000;

/// `G_1^{n_1} x ... x G_m^{n_m}` with pairwise non-isomorphic `G_i`.
#[derive(Clone, Debug)]
pub struct ProductGroupSpec {
    factors: Vec<(FiniteGroup, usize)>,
}

impl ProductGroupSpec {
    pub fn new(factors: Vec<(FiniteGroup, usize)>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Validation(
                "product needs at least one factor".into(),
            ));
        }
        if let Some((_, n)) = factors.iter().find(|(_, n)| *n == 0) {
            return Err(Error::Validation(format!("multiplicity {n} must be >= 1")));
        }
        for i in 0..factors.len() {
            for j in 0..i {
                if are_isomorphic(&factors[i].0, &factors[j].0) {
                    return Err(Error::Validation(format!(
                        "factors {j} and {i} are isomorphic; merge them into one multiplicity"
                    )));
                }
            }
        }
        Ok(ProductGroupSpec { factors })
    }

    pub fn factors(&self) -> &[(FiniteGroup, usize)] {
        &self.factors
    }

    pub fn order(&self) -> Option<usize> {
        self.factors.iter().try_fold(1usize, |acc, (g, n)| {
            (0..*n).try_fold(acc, |a, _| a.checked_mul(g.order()))
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductSpecJson {
    pub factors: Vec<FactorJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorJson {
    pub group: GroupJson,
    pub multiplicity: usize,
}

impl TryFrom<ProductSpecJson> for ProductGroupSpec {
    type Error = Error;

    fn try_from(j: ProductSpecJson) -> Result<Self> {
        let factors = j
            .factors
            .into_iter()
            .map(|f| Ok((FiniteGroup::try_from(f.group)?, f.multiplicity)))
            .collect::<Result<Vec<_>>>()?;
        ProductGroupSpec::new(factors)
    }
}

/// The product group realised implicitly: coordinate `c` belongs to block
/// `block_of[c]`; element indices are mixed radix with the first coordinate
/// most significant.
#[derive(Clone, Debug)]
pub struct ProductGroup {
    spec: ProductGroupSpec,
    block_of: Vec<usize>,
    copy_of: Vec<usize>,
    radix: Vec<usize>,
    stride: Vec<usize>,
    order: usize,
}

impl ProductGroup {
    pub fn new(spec: ProductGroupSpec, cap: usize) -> Result<Self> {
        let order = spec.order().unwrap_or(usize::MAX);
        if order > cap {
            return Err(Error::SizeCap {
                what: "product group order",
                size: order,
                cap,
            });
        }
        let mut block_of = Vec::new();
        let mut copy_of = Vec::new();
        let mut radix = Vec::new();
        for (i, (g, n)) in spec.factors.iter().enumerate() {
            for j in 0..*n {
                block_of.push(i);
                copy_of.push(j);
                radix.push(g.order());
            }
        }
        let mut stride = vec![1; radix.len()];
        for c in (0..radix.len().saturating_sub(1)).rev() {
            stride[c] = stride[c + 1] * radix[c + 1];
        }
        Ok(ProductGroup {
            spec,
            block_of,
            copy_of,
            radix,
            stride,
            order,
        })
    }

    pub fn spec(&self) -> &ProductGroupSpec {
        &self.spec
    }

    pub fn coordinates(&self) -> usize {
        self.radix.len()
    }

    fn factor(&self, c: usize) -> &FiniteGroup {
        &self.spec.factors[self.block_of[c]].0
    }

    /// First coordinate index of each block.
    fn block_start(&self, block: usize) -> usize {
        self.block_of
            .iter()
            .position(|&b| b == block)
            .expect("block exists")
    }

    pub fn decode(&self, x: usize) -> Vec<usize> {
        (0..self.radix.len())
            .map(|c| (x / self.stride[c]) % self.radix[c])
            .collect()
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.stride).map(|(x, s)| x * s).sum()
    }

    #[inline]
    fn coord(&self, x: usize, c: usize) -> usize {
        (x / self.stride[c]) % self.radix[c]
    }

    /// Embedding of factor coordinate `c`.
    pub fn embed(&self, c: usize, g: usize) -> usize {
        let mut coords: Vec<usize> = (0..self.radix.len())
            .map(|k| self.factor(k).identity())
            .collect();
        coords[c] = g;
        self.encode(&coords)
    }
}

impl GroupOps for ProductGroup {
    fn order(&self) -> usize {
        self.order
    }

    fn identity(&self) -> usize {
        let coords: Vec<usize> = (0..self.radix.len())
            .map(|c| self.factor(c).identity())
            .collect();
        self.encode(&coords)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        (0..self.radix.len())
            .map(|c| self.factor(c).mul(self.coord(a, c), self.coord(b, c)) * self.stride[c])
            .sum()
    }

    fn inv(&self, a: usize) -> usize {
        (0..self.radix.len())
            .map(|c| self.factor(c).inv(self.coord(a, c)) * self.stride[c])
            .sum()
    }
}

/// The per-block data of a decomposed automorphism: copy `j` of the block is
/// mapped by `components[j]` and then moved to copy `permutation[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockAutomorphism {
    pub permutation: Vec<usize>,
    pub components: Vec<GroupAutomorphism>,
}

impl BlockAutomorphism {
    /// Cycle notation with 1-based points, e.g. `(1 2)`; `()` for identity.
    pub fn cycle_notation(&self) -> String {
        let n = self.permutation.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.permutation[start] == start {
                continue;
            }
            let mut cycle = vec![];
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push((x + 1).to_string());
                x = self.permutation[x];
            }
            out.push_str(&format!("({})", cycle.join(" ")));
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductAutomorphism {
    pub blocks: Vec<BlockAutomorphism>,
}

/// Recovers the permutations and factor automorphisms of an automorphism of
/// a product of unfactorizable groups.
///
/// Each coordinate subgroup is sent into exactly one coordinate of the same
/// isomorphism block; that target defines the permutation, and projecting
/// onto it gives the factor automorphism.
pub fn decompose_product_automorphism(
    product: &ProductGroup,
    phi: &GroupAutomorphism,
) -> Result<ProductAutomorphism> {
    for (i, (g, _)) in product.spec.factors.iter().enumerate() {
        if let Err(w) = is_unfactorizable(g) {
            return Err(Error::Precondition(format!(
                "factor {i} ({}) is not unfactorizable: H of order {} and K of order {} commute with HK = G",
                g.name().unwrap_or("unnamed"),
                w.h.len(),
                w.k.len()
            )));
        }
    }
    if !is_product_automorphism(product, &phi.images) {
        return Err(Error::Validation(
            "images do not define an automorphism of the product".into(),
        ));
    }
    scan_targets(product, phi)
}

fn scan_targets(product: &ProductGroup, phi: &GroupAutomorphism) -> Result<ProductAutomorphism> {
    let coords = product.coordinates();
    let mut target: Vec<Option<usize>> = vec![None; coords];
    for c in 0..coords {
        let g = product.factor(c);
        let mut hit: Vec<usize> = Vec::new();
        for x in 0..g.order() {
            let y = phi.apply(product.embed(c, x));
            for t in 0..coords {
                if product.coord(y, t) != product.factor(t).identity() && !hit.contains(&t) {
                    hit.push(t);
                }
            }
        }
        hit.sort_unstable();
        match hit.as_slice() {
            [] => {}
            [t] => {
                if product.block_of[*t] != product.block_of[c] {
                    return Err(Error::DecompositionImpossible(format!(
                        "coordinate {c} is sent to coordinate {t} of a non-isomorphic block"
                    )));
                }
                if target.contains(&Some(*t)) {
                    return Err(Error::DecompositionImpossible(format!(
                        "two coordinates are sent to coordinate {t}"
                    )));
                }
                target[c] = Some(*t);
            }
            many => {
                return Err(Error::DecompositionImpossible(format!(
                    "coordinate {c} spreads over coordinates {many:?}"
                )))
            }
        }
    }
    // trivial factors: lowest free target within the block, scanning in order
    for c in 0..coords {
        if target[c].is_none() {
            let t = (0..coords)
                .find(|&t| product.block_of[t] == product.block_of[c] && !target.contains(&Some(t)))
                .expect("a free coordinate remains in the block");
            target[c] = Some(t);
        }
    }
    let mut blocks = Vec::new();
    for (i, (g, n)) in product.spec.factors.iter().enumerate() {
        let start = product.block_start(i);
        let mut permutation = Vec::with_capacity(*n);
        let mut components = Vec::with_capacity(*n);
        for j in 0..*n {
            let c = start + j;
            let t = target[c].expect("assigned");
            permutation.push(product.copy_of[t]);
            let images = (0..g.order())
                .map(|x| product.coord(phi.apply(product.embed(c, x)), t))
                .collect();
            components.push(GroupAutomorphism { images });
        }
        blocks.push(BlockAutomorphism {
            permutation,
            components,
        });
    }
    Ok(ProductAutomorphism { blocks })
}

fn is_product_automorphism(product: &ProductGroup, images: &[usize]) -> bool {
    let n = product.order();
    if images.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    if images
        .iter()
        .any(|&x| x >= n || std::mem::replace(&mut seen[x], true))
    {
        return false;
    }
    // checking against a generating set suffices
    let gens = generating_set(product);
    (0..n).all(|x| {
        gens.iter()
            .all(|&s| images[product.mul(x, s)] == product.mul(images[x], images[s]))
    })
}

/// Rebuilds the automorphism of the product from its decomposition.
pub fn compose_product_automorphism(
    product: &ProductGroup,
    pa: &ProductAutomorphism,
) -> Result<GroupAutomorphism> {
    let factors = &product.spec.factors;
    if pa.blocks.len() != factors.len() {
        return Err(Error::Validation(format!(
            "{} blocks given for {} factors",
            pa.blocks.len(),
            factors.len()
        )));
    }
    for (b, (g, n)) in pa.blocks.iter().zip(factors) {
        let mut perm = b.permutation.clone();
        perm.sort_unstable();
        if perm != (0..*n).collect::<Vec<_>>() || b.components.len() != *n {
            return Err(Error::Validation(
                "block permutation or component count invalid".into(),
            ));
        }
        if let Some(bad) = b.components.iter().find(|a| !g.is_automorphism(&a.images)) {
            return Err(Error::Validation(format!(
                "component {:?} is not an automorphism",
                bad.images
            )));
        }
    }
    let images = (0..product.order())
        .map(|x| {
            let src = product.decode(x);
            let mut dst = src.clone();
            for (i, b) in pa.blocks.iter().enumerate() {
                let start = product.block_start(i);
                for (j, comp) in b.components.iter().enumerate() {
                    dst[start + b.permutation[j]] = comp.apply(src[start + j]);
                }
            }
            product.encode(&dst)
        })
        .collect();
    Ok(GroupAutomorphism { images })
}

/// Enumerated `|Aut(G)|` against `prod |Aut(G_i)|^{n_i} n_i!`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutOrderReport {
    pub enumerated: usize,
    pub formula: u128,
    pub equal: bool,
}

pub fn aut_order_check(spec: &ProductGroupSpec) -> Result<AutOrderReport> {
    aut_order_check_capped(spec, DEFAULT_PRODUCT_CAP)
}

pub fn aut_order_check_capped(spec: &ProductGroupSpec, cap: usize) -> Result<AutOrderReport> {
    let product = ProductGroup::new(spec.clone(), cap)?;
    let enumerated = automorphisms_capped(&product, cap)?.len();
    let mut formula: u128 = 1;
    let overflow = || Error::Domain("automorphism count formula overflows u128".into());
    for (g, n) in &spec.factors {
        let a = automorphisms(g)?.len() as u128;
        for k in 1..=*n {
            formula = formula
                .checked_mul(a)
                .and_then(|f| f.checked_mul(k as u128))
                .ok_or_else(overflow)?;
        }
    }
    Ok(AutOrderReport {
        enumerated,
        formula,
        equal: enumerated as u128 == formula,
    })
}

/// Convenience for tests and sweeps: is `images` an automorphism of `product`?
pub fn is_automorphism_of_product(product: &ProductGroup, images: &[usize]) -> bool {
    is_automorphism_of(product, images)
}
