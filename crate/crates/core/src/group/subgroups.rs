use std::collections::BTreeSet;

use serde::Serialize;

use super::finite::{FiniteGroup, GroupOps};

/// A set of group elements as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElementSet {
    bits: Vec<u64>,
    len: usize,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            bits: vec![0; universe.div_ceil(64)],
            len: 0,
        }
    }

    pub fn insert(&mut self, x: usize) -> bool {
        let (w, b) = (x / 64, 1u64 << (x % 64));
        let fresh = self.bits[w] & b == 0;
        if fresh {
            self.bits[w] |= b;
            self.len += 1;
        }
        fresh
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits[x / 64] & (1u64 << (x % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection_len(&self, other: &ElementSet) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            (0..64)
                .filter(move |b| word >> b & 1 == 1)
                .map(move |b| w * 64 + b)
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// A subgroup together with a generating set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub elements: ElementSet,
    pub generators: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// The subgroup generated by `gens`.
pub fn generated<G: GroupOps + ?Sized>(g: &G, gens: &[usize]) -> ElementSet {
    let mut set = ElementSet::empty(g.order());
    let mut queue = vec![g.identity()];
    set.insert(g.identity());
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                queue.push(y);
            }
        }
    }
    set
}

pub fn center(g: &FiniteGroup) -> ElementSet {
    let n = g.order();
    let mut set = ElementSet::empty(n);
    for a in 0..n {
        if (0..n).all(|b| g.mul(a, b) == g.mul(b, a)) {
            set.insert(a);
        }
    }
    set
}

fn element_centralizers(g: &FiniteGroup) -> Vec<ElementSet> {
    let n = g.order();
    (0..n)
        .map(|a| {
            let mut s = ElementSet::empty(n);
            for b in 0..n {
                if g.mul(a, b) == g.mul(b, a) {
                    s.insert(b);
                }
            }
            s
        })
        .collect()
}

/// Every subgroup, sorted by order and then by element list.
///
/// Built by joining cyclic subgroups onto known subgroups until no new
/// subgroup appears; every subgroup is a join of cyclic ones.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let n = g.order();
    let mut cyclic: Vec<Subgroup> = Vec::new();
    let mut seen: BTreeSet<ElementSet> = BTreeSet::new();
    for x in 0..n {
        let s = generated(g, &[x]);
        if seen.insert(s.clone()) {
            cyclic.push(Subgroup {
                elements: s,
                generators: if x == g.identity() { vec![] } else { vec![x] },
            });
        }
    }
    let mut all = cyclic.clone();
    let mut frontier = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for c in &cyclic {
                if c.elements.is_subset(&h.elements) {
                    continue;
                }
                let mut gens = h.generators.clone();
                gens.extend(&c.generators);
                let j = generated(g, &gens);
                if seen.insert(j.clone()) {
                    let sub = Subgroup {
                        elements: j,
                        generators: gens,
                    };
                    next.push(sub.clone());
                    all.push(sub);
                }
            }
        }
        frontier = next;
    }
    all.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements.to_vec().cmp(&b.elements.to_vec()))
    });
    all
}

/// A pair of nontrivial, element-wise commuting subgroups with `HK = G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorWitness {
    pub h: Vec<usize>,
    pub k: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PairKind {
    Factorization,
    DirectProduct,
}

fn find_pair(g: &FiniteGroup, kind: PairKind) -> Option<FactorWitness> {
    let n = g.order();
    if n == 1 {
        return None;
    }
    let subs = all_subgroups(g);
    let cents = element_centralizers(g);
    let nontrivial: Vec<&Subgroup> = subs.iter().filter(|s| s.order() > 1).collect();
    for h in &nontrivial {
        // centralizer of H is the intersection over its generators
        let mut c_h = ElementSet::empty(n);
        for x in 0..n {
            if h.generators.iter().all(|&s| cents[s].contains(x)) {
                c_h.insert(x);
            }
        }
        for k in &nontrivial {
            if !k.elements.is_subset(&c_h) {
                continue;
            }
            let meet = h.elements.intersection_len(&k.elements);
            if kind == PairKind::DirectProduct && meet != 1 {
                continue;
            }
            if h.order() * k.order() == n * meet {
                return Some(FactorWitness {
                    h: h.elements.to_vec(),
                    k: k.elements.to_vec(),
                });
            }
        }
    }
    None
}

/// `Ok(())` when no factorization `G = HK` into nontrivial commuting
/// subgroups exists; otherwise the first witness in subgroup order.
pub fn is_unfactorizable(g: &FiniteGroup) -> std::result::Result<(), FactorWitness> {
    match find_pair(g, PairKind::Factorization) {
        Some(w) => Err(w),
        None => Ok(()),
    }
}

/// No internal direct decomposition `G = H x K` with both factors nontrivial.
pub fn is_indecomposable(g: &FiniteGroup) -> bool {
    find_pair(g, PairKind::DirectProduct).is_none()
}

pub fn direct_decomposition_witness(g: &FiniteGroup) -> Option<FactorWitness> {
    find_pair(g, PairKind::DirectProduct)
}

/// Both sides of "unfactorizable iff centerless and indecomposable".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnfactorizableReport {
    pub unfactorizable: bool,
    pub centerless: bool,
    pub indecomposable: bool,
    pub consistent: bool,
    pub center_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<FactorWitness>,
}

pub fn unfactorizable_equivalence_check(g: &FiniteGroup) -> UnfactorizableReport {
    let witness = is_unfactorizable(g).err();
    let unfactorizable = witness.is_none();
    let center_order = center(g).len();
    let centerless = center_order == 1;
    let indecomposable = is_indecomposable(g);
    UnfactorizableReport {
        unfactorizable,
        centerless,
        indecomposable,
        consistent: unfactorizable == (centerless && indecomposable),
        center_order,
        witness,
    }
}

/// Orbits of the conjugation action, each sorted, ordered by least element.
pub fn conjugacy_classes<G: GroupOps + ?Sized>(g: &G) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for h in 0..n {
            let y = g.conjugate(h, x);
            if class_of[y] == usize::MAX {
                class_of[y] = id;
                members.push(y);
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::corpus;

    #[test]
    fn centers() {
        assert_eq!(center(&corpus::symmetric(3)).len(), 1);
        assert_eq!(center(&corpus::cyclic(6)).len(), 6);
        assert_eq!(center(&corpus::dihedral(4)).len(), 2);
    }

    #[test]
    fn unfactorizable_examples() {
        assert!(is_unfactorizable(&corpus::symmetric(3)).is_ok());
        assert!(is_unfactorizable(&corpus::cyclic(1)).is_ok());
        let w = is_unfactorizable(&corpus::cyclic(6)).unwrap_err();
        assert_eq!((w.h.len(), w.k.len()), (2, 3));
    }

    #[test]
    fn indecomposable_examples() {
        assert!(is_indecomposable(&corpus::symmetric(3)));
        assert!(!is_indecomposable(&corpus::cyclic(6)));
        assert!(is_indecomposable(&corpus::cyclic(4)));
        assert!(!is_indecomposable(&corpus::klein_four()));
    }

    #[test]
    fn equivalence_reports() {
        let r = unfactorizable_equivalence_check(&corpus::symmetric(3));
        assert!(r.unfactorizable && r.centerless && r.indecomposable && r.consistent);
        let r = unfactorizable_equivalence_check(&corpus::cyclic(6));
        assert!(!r.unfactorizable && !r.indecomposable && r.consistent);
        let r = unfactorizable_equivalence_check(&corpus::dihedral(4));
        assert!(!r.unfactorizable && !r.centerless && r.consistent);
        assert_eq!(r.center_order, 2);
    }

    #[test]
    fn subgroup_counts() {
        // well-known subgroup counts
        assert_eq!(all_subgroups(&corpus::symmetric(3)).len(), 6);
        assert_eq!(all_subgroups(&corpus::dihedral(4)).len(), 10);
        assert_eq!(all_subgroups(&corpus::symmetric(4)).len(), 30);
        assert_eq!(all_subgroups(&corpus::alternating(5)).len(), 59);
        assert_eq!(all_subgroups(&corpus::quaternion()).len(), 6);
    }

    #[test]
    fn class_counts() {
        assert_eq!(conjugacy_classes(&corpus::symmetric(3)).len(), 3);
        assert_eq!(conjugacy_classes(&corpus::cyclic(7)).len(), 7);
        assert_eq!(conjugacy_classes(&corpus::dihedral(4)).len(), 5);
        assert_eq!(conjugacy_classes(&corpus::alternating(5)).len(), 5);
        assert_eq!(conjugacy_classes(&corpus::symmetric(4)).len(), 5);
    }
}
