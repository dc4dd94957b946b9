use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Operations shared by table-backed groups and implicit direct products.
pub trait GroupOps: Sync {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    fn element_order(&self, a: usize) -> usize {
        let e = self.identity();
        let mut x = a;
        let mut k = 1;
        while x != e {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }
}

/// A finite group given by its Cayley table. Element `identity` is the
/// neutral element; `table[a][b]` is the product `ab`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    name: Option<String>,
}

impl GroupOps for FiniteGroup {
    fn order(&self) -> usize {
        self.order
    }

    fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>, name: Option<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Validation(
                "group must have at least one element".into(),
            ));
        }
        if table.iter().any(|r| r.len() != n) {
            return Err(Error::Validation("Cayley table must be square".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::Validation("table entry out of range".into()));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let at = |a: usize, b: usize| flat[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::Validation("no two-sided identity".into()))?;
        let mut inverses = vec![usize::MAX; n];
        for (a, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| Error::Validation(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::Validation(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            table: flat,
            identity,
            inverses,
            name,
        })
    }

    /// For tables known to come from an associative operation.
    pub(crate) fn from_flat_unchecked(
        order: usize,
        table: Vec<usize>,
        identity: usize,
        name: Option<String>,
    ) -> Self {
        let mut inverses = vec![0; order];
        for a in 0..order {
            inverses[a] = (0..order)
                .find(|&b| table[a * order + b] == identity)
                .expect("group table has inverses");
        }
        FiniteGroup {
            order,
            table,
            identity,
            inverses,
            name,
        }
    }

    /// Closure of permutation generators on `0..degree`. Products compose
    /// right to left: `(ab)(x) = a(b(x))`. Elements are numbered in
    /// breadth-first discovery order from the identity.
    pub fn from_permutations(
        degree: usize,
        generators: &[Vec<usize>],
        name: Option<String>,
    ) -> Result<Self> {
        for g in generators {
            if g.len() != degree {
                return Err(Error::Validation(format!(
                    "generator {g:?} does not have degree {degree}"
                )));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::Validation(format!("{g:?} is not a permutation")));
                }
            }
        }
        let compose =
            |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&x| a[x]).collect() };
        let id: Vec<usize> = (0..degree).collect();
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in generators {
                let y = compose(&x, g);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                table[i * n + j] = index[&compose(a, b)];
            }
        }
        Ok(Self::from_flat_unchecked(n, table, 0, name))
    }

    /// External direct product; element `(x_1, ..., x_k)` gets index
    /// `x_1 * |G_2|...|G_k| + ... + x_k`.
    pub fn direct_product(factors: &[&FiniteGroup], name: Option<String>) -> Self {
        let orders: Vec<usize> = factors.iter().map(|g| g.order).collect();
        let n: usize = orders.iter().product();
        let decode = |mut x: usize| -> Vec<usize> {
            let mut c = vec![0; orders.len()];
            for i in (0..orders.len()).rev() {
                c[i] = x % orders[i];
                x /= orders[i];
            }
            c
        };
        let encode = |c: &[usize]| c.iter().zip(&orders).fold(0, |acc, (&x, &o)| acc * o + x);
        let coords: Vec<Vec<usize>> = (0..n).map(decode).collect();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, g)| g.mul(coords[a][i], coords[b][i]))
                    .collect();
                table[a * n + b] = encode(&prod);
            }
        }
        let identity = encode(&factors.iter().map(|g| g.identity).collect::<Vec<_>>());
        Self::from_flat_unchecked(n, table, identity, name)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Is `images` a group automorphism of `self`?
    pub fn is_automorphism(&self, images: &[usize]) -> bool {
        is_automorphism_of(self, images)
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson::Table {
            order: self.order,
            table: self.table_rows(),
            name: self.name.clone(),
        }
    }
}

pub(crate) fn is_automorphism_of<G: GroupOps + ?Sized>(g: &G, images: &[usize]) -> bool {
    let n = g.order();
    if images.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in images {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    (0..n).all(|a| (0..n).all(|b| images[g.mul(a, b)] == g.mul(images[a], images[b])))
}

/// Group input: a Cayley table, or permutation generators expanded to one.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupJson {
    Table {
        order: usize,
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Permutations {
        degree: usize,
        generators: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
}

impl TryFrom<GroupJson> for FiniteGroup {
    type Error = Error;

    fn try_from(j: GroupJson) -> Result<Self> {
        match j {
            GroupJson::Table { order, table, name } => {
                if table.len() != order {
                    return Err(Error::Validation(format!(
                        "order {order} but table has {} rows",
                        table.len()
                    )));
                }
                FiniteGroup::from_table(table, name)
            }
            GroupJson::Permutations {
                degree,
                generators,
                name,
            } => FiniteGroup::from_permutations(degree, &generators, name),
        }
    }
}
