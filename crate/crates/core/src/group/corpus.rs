//! Standard finite groups, and the bundled corpus of groups of order at most 60.

use super::finite::{FiniteGroup, GroupOps};

fn perms(degree: usize, gens: &[Vec<usize>], name: String) -> FiniteGroup {
    FiniteGroup::from_permutations(degree, gens, Some(name)).expect("valid generators")
}

pub fn trivial() -> FiniteGroup {
    perms(1, &[], "1".into())
}

pub fn cyclic(n: usize) -> FiniteGroup {
    if n == 1 {
        return trivial();
    }
    perms(n, &[(0..n).map(|i| (i + 1) % n).collect()], format!("Z{n}"))
}

/// Dihedral group of order `2n`, `n >= 3`.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 3, "dihedral(n) needs n >= 3");
    let r = (0..n).map(|i| (i + 1) % n).collect();
    let s = (0..n).map(|i| (n - i) % n).collect();
    perms(n, &[r, s], format!("D{n}"))
}

pub fn symmetric(n: usize) -> FiniteGroup {
    if n <= 1 {
        return trivial();
    }
    let mut t: Vec<usize> = (0..n).collect();
    t.swap(0, 1);
    let c = (0..n).map(|i| (i + 1) % n).collect();
    perms(n, &[t, c], format!("S{n}"))
}

pub fn alternating(n: usize) -> FiniteGroup {
    if n <= 2 {
        return trivial();
    }
    let gens: Vec<Vec<usize>> = (2..n)
        .map(|i| {
            let mut p: Vec<usize> = (0..n).collect();
            p[0] = 1;
            p[1] = i;
            p[i] = 0;
            p
        })
        .collect();
    perms(n, &gens, format!("A{n}"))
}

pub fn klein_four() -> FiniteGroup {
    perms(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]], "V4".into())
}

/// Dicyclic group of order `4n`; `dicyclic(2)` is the quaternion group.
pub fn dicyclic(n: usize) -> FiniteGroup {
    let m = 2 * n;
    let idx = |k: usize, e: usize| k % m + m * e;
    let mut table = vec![vec![0; 2 * m]; 2 * m];
    for e in 0..2 {
        for k in 0..m {
            for f in 0..2 {
                for l in 0..m {
                    let prod = match (e, f) {
                        (0, _) => idx(k + l, f),
                        (1, 0) => idx(k + m - l, 1),
                        _ => idx(k + m - l + n, 0),
                    };
                    table[idx(k, e)][idx(l, f)] = prod;
                }
            }
        }
    }
    let name = if n == 2 {
        "Q8".to_string()
    } else {
        format!("Dic{n}")
    };
    FiniteGroup::from_table(table, Some(name)).expect("dicyclic table is a group")
}

pub fn quaternion() -> FiniteGroup {
    dicyclic(2)
}

/// `x -> a x + b (mod p)` with `a` ranging over the powers of `mult`.
pub fn affine(p: usize, mult: usize) -> FiniteGroup {
    let t = (0..p).map(|x| (x + 1) % p).collect();
    let m = (0..p).map(|x| (x * mult) % p).collect();
    let g = perms(p, &[t, m], String::new());
    let name = format!("F{}", g.order());
    g.with_name(name)
}

pub fn product(factors: &[&FiniteGroup]) -> FiniteGroup {
    let name = factors
        .iter()
        .map(|g| g.name().unwrap_or("?").to_string())
        .collect::<Vec<_>>()
        .join("x");
    FiniteGroup::direct_product(factors, Some(name))
}

/// Groups of order at most 60 used for machine-checking the
/// unfactorizable / centerless-indecomposable equivalence.
pub fn bundled_groups() -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = (1..=12).map(cyclic).collect();
    out.push(cyclic(15));
    let (z2, z3, z4, z6) = (cyclic(2), cyclic(3), cyclic(4), cyclic(6));
    out.push(klein_four());
    out.push(product(&[&z2, &z4]));
    out.push(product(&[&z2, &z2, &z2]));
    out.push(product(&[&z3, &z3]));
    out.push(product(&[&z2, &z6]));
    out.push(product(&[&z4, &z4]));
    out.push(symmetric(3));
    for n in [4, 5, 6, 7, 8, 9, 10, 12, 15] {
        out.push(dihedral(n));
    }
    out.push(quaternion());
    out.push(dicyclic(3));
    out.push(dicyclic(5));
    out.push(alternating(4));
    out.push(symmetric(4));
    out.push(alternating(5));
    out.push(affine(5, 2));
    out.push(affine(7, 2));
    out.push(affine(11, 3));
    let s3 = symmetric(3);
    let d5 = dihedral(5);
    out.push(product(&[&z2, &s3]));
    out.push(product(&[&z3, &s3]));
    out.push(product(&[&s3, &s3]));
    out.push(product(&[&z4, &s3]));
    out.push(product(&[&z2, &d5]));
    out.push(product(&[&quaternion(), &z3]));
    out.push(product(&[&alternating(4), &z2]));
    out.push(product(&[&s3, &d5]));
    out.push(product(&[&z2, &z2, &s3]));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupOps;

    #[test]
    fn orders() {
        assert_eq!(trivial().order(), 1);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(dihedral(5).order(), 10);
        assert_eq!(quaternion().order(), 8);
        assert_eq!(dicyclic(3).order(), 12);
        assert_eq!(affine(5, 2).order(), 20);
        assert_eq!(affine(7, 2).order(), 21);
        assert_eq!(affine(11, 3).order(), 55);
        assert_eq!(klein_four().order(), 4);
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion();
        let involutions = (0..8).filter(|&x| q.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn corpus_within_bounds() {
        let all = bundled_groups();
        assert!(all.len() >= 40);
        assert!(all.iter().all(|g| g.order() <= 60));
    }
}
