use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::finite::{FiniteGroup, GroupOps};
use super::subgroups::{conjugacy_classes, generated};
use crate::error::{Error, Result};

/// Default cap on `|G|` for [`automorphisms`].
pub const DEFAULT_AUTOMORPHISM_CAP: usize = 120;

/// An automorphism as the image of every element index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupAutomorphism {
    pub images: Vec<usize>,
}

impl GroupAutomorphism {
    pub fn identity(order: usize) -> Self {
        GroupAutomorphism {
            images: (0..order).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &GroupAutomorphism) -> GroupAutomorphism {
        GroupAutomorphism {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inner(g: &FiniteGroup, by: usize) -> Self {
        GroupAutomorphism {
            images: (0..g.order()).map(|x| g.conjugate(by, x)).collect(),
        }
    }
}

/// Greedy generating set: repeatedly adjoin an element of largest order
/// (lowest index on ties) not yet in the generated subgroup.
pub fn generating_set<G: GroupOps + ?Sized>(g: &G) -> Vec<usize> {
    let n = g.order();
    let orders: Vec<usize> = (0..n).map(|x| g.element_order(x)).collect();
    let mut by_order: Vec<usize> = (0..n).collect();
    by_order.sort_by(|&a, &b| orders[b].cmp(&orders[a]).then(a.cmp(&b)));
    let mut gens = Vec::new();
    let mut span = generated(g, &gens);
    while span.len() < n {
        let x = *by_order
            .iter()
            .find(|&&x| !span.contains(x))
            .expect("span is proper");
        gens.push(x);
        span = generated(g, &gens);
    }
    gens
}

/// Element order and conjugacy class size; preserved by isomorphisms.
fn invariants<G: GroupOps + ?Sized>(g: &G) -> Vec<(usize, usize)> {
    let mut class_size = vec![0; g.order()];
    for class in conjugacy_classes(g) {
        for &x in &class {
            class_size[x] = class.len();
        }
    }
    (0..g.order())
        .map(|x| (g.element_order(x), class_size[x]))
        .collect()
}

struct Search<'a, G: ?Sized, H: ?Sized> {
    g: &'a G,
    h: &'a H,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
}

impl<G: GroupOps + ?Sized, H: GroupOps + ?Sized> Search<'_, G, H> {
    /// Extends `images` of the first `k` generators to the subgroup they
    /// generate; `None` if the assignment is not an injective homomorphism.
    fn extend(&self, images: &[usize]) -> Option<Vec<usize>> {
        let n = self.g.order();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; self.h.order()];
        map[self.g.identity()] = self.h.identity();
        used[self.h.identity()] = true;
        let mut queue = vec![self.g.identity()];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (&s, &t) in self.gens.iter().zip(images) {
                let y = self.g.mul(x, s);
                let img = self.h.mul(map[x], t);
                if map[y] == usize::MAX {
                    if std::mem::replace(&mut used[img], true) {
                        return None;
                    }
                    map[y] = img;
                    queue.push(y);
                } else if map[y] != img {
                    return None;
                }
            }
        }
        Some(map)
    }

    fn dfs(&self, images: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        let Some(partial) = self.extend(images) else {
            return;
        };
        let k = images.len();
        if k == self.gens.len() {
            out.push(partial);
            return;
        }
        for &t in &self.candidates[k] {
            // the new image must leave the image of the current span
            if partial.contains(&t) {
                continue;
            }
            images.push(t);
            self.dfs(images, out, limit);
            images.pop();
            if out.len() >= limit {
                return;
            }
        }
    }
}

/// Isomorphisms `G -> H` in canonical order (lexicographic in the images of
/// the generating set), at most `limit` of them.
pub fn isomorphisms<G, H>(g: &G, h: &H, limit: usize) -> Vec<Vec<usize>>
where
    G: GroupOps + ?Sized,
    H: GroupOps + ?Sized,
{
    if g.order() != h.order() {
        return Vec::new();
    }
    let gens = generating_set(g);
    let inv_g = invariants(g);
    let inv_h = invariants(h);
    let mut sorted_inv_g = inv_g.clone();
    let mut sorted_inv_h = inv_h.clone();
    sorted_inv_g.sort_unstable();
    sorted_inv_h.sort_unstable();
    if sorted_inv_g != sorted_inv_h {
        return Vec::new();
    }
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| (0..h.order()).filter(|&t| inv_h[t] == inv_g[s]).collect())
        .collect();
    let search = Search {
        g,
        h,
        gens,
        candidates,
    };
    if search.gens.is_empty() {
        return search.extend(&[]).into_iter().collect();
    }
    // branches over the first generator's image run in parallel; collecting
    // an indexed parallel iterator keeps the canonical order
    let branches: Vec<Vec<Vec<usize>>> = search.candidates[0]
        .par_iter()
        .map(|&t| {
            let mut out = Vec::new();
            search.dfs(&mut vec![t], &mut out, limit);
            out
        })
        .collect();
    branches.into_iter().flatten().take(limit).collect()
}

pub fn are_isomorphic<G: GroupOps + ?Sized, H: GroupOps + ?Sized>(g: &G, h: &H) -> bool {
    !isomorphisms(g, h, 1).is_empty()
}

/// All automorphisms of `g`, with `|G|` capped at `cap`.
pub fn automorphisms_capped<G: GroupOps + ?Sized>(
    g: &G,
    cap: usize,
) -> Result<Vec<GroupAutomorphism>> {
    if g.order() > cap {
        return Err(Error::SizeCap {
            what: "group order",
            size: g.order(),
            cap,
        });
    }
    Ok(isomorphisms(g, g, usize::MAX)
        .into_iter()
        .map(|images| GroupAutomorphism { images })
        .collect())
}

/// All automorphisms with the default cap of 120.
pub fn automorphisms(g: &FiniteGroup) -> Result<Vec<GroupAutomorphism>> {
    automorphisms_capped(g, DEFAULT_AUTOMORPHISM_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::corpus;

    #[test]
    fn aut_counts() {
        assert_eq!(automorphisms(&corpus::symmetric(3)).unwrap().len(), 6);
        assert_eq!(automorphisms(&corpus::cyclic(5)).unwrap().len(), 4);
        assert_eq!(automorphisms(&corpus::cyclic(1)).unwrap().len(), 1);
        assert_eq!(automorphisms(&corpus::dihedral(5)).unwrap().len(), 20);
        assert_eq!(automorphisms(&corpus::dihedral(4)).unwrap().len(), 8);
        assert_eq!(automorphisms(&corpus::quaternion()).unwrap().len(), 24);
        assert_eq!(automorphisms(&corpus::klein_four()).unwrap().len(), 6);
        assert_eq!(automorphisms(&corpus::symmetric(4)).unwrap().len(), 24);
        assert_eq!(automorphisms(&corpus::alternating(5)).unwrap().len(), 120);
    }

    #[test]
    fn every_enumerated_map_is_an_automorphism() {
        let g = corpus::dihedral(6);
        let auts = automorphisms(&g).unwrap();
        assert_eq!(auts.len(), 12);
        for a in &auts {
            assert!(g.is_automorphism(&a.images));
        }
        let mut sorted = auts.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), auts.len());
    }

    #[test]
    fn deterministic_order() {
        let g = corpus::symmetric(4);
        assert_eq!(automorphisms(&g).unwrap(), automorphisms(&g).unwrap());
    }

    #[test]
    fn cap_enforced() {
        let g = corpus::cyclic(121);
        assert!(matches!(automorphisms(&g), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn isomorphism_detection() {
        assert!(are_isomorphic(&corpus::symmetric(3), &corpus::dihedral(3)));
        assert!(!are_isomorphic(&corpus::cyclic(6), &corpus::symmetric(3)));
        assert!(!are_isomorphic(&corpus::quaternion(), &corpus::dihedral(4)));
        let z2 = corpus::cyclic(2);
        let z3 = corpus::cyclic(3);
        let p = FiniteGroup::direct_product(&[&z2, &z3], None);
        assert!(are_isomorphic(&p, &corpus::cyclic(6)));
    }

    #[test]
    fn inner_automorphisms_compose() {
        let g = corpus::symmetric(3);
        let a = GroupAutomorphism::inner(&g, 1);
        let b = GroupAutomorphism::inner(&g, 2);
        assert!(g.is_automorphism(&a.compose(&b).images));
    }
}
