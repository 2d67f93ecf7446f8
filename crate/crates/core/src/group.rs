//! Finite permutation groups materialized as full element lists.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::table::MulTable;

/// Default bound on the number of elements [`Group::closure`] may produce.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// Environment variable overriding [`DEFAULT_CLOSURE_CAP`].
pub const CLOSURE_CAP_ENV: &str = "DELTAGROUP_CLOSURE_CAP";

/// Closure cap from `DELTAGROUP_CLOSURE_CAP`, falling back to the default
/// when the variable is unset or unparsable.
pub fn closure_cap() -> usize {
    std::env::var(CLOSURE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&v: &usize| v > 0)
        .unwrap_or(DEFAULT_CLOSURE_CAP)
}

/// A small-groups library identifier `[order, index]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct GroupId {
    pub order: usize,
    pub index: usize,
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[ {}, {} ]", self.order, self.index)
    }
}

/// An immutable finite group of permutations.
///
/// `elements[0]` is always the identity. The element order is the
/// breadth-first order over generator words produced by [`Group::closure`].
#[derive(Clone)]
pub struct Group {
    elements: Vec<Permutation>,
    positions: HashMap<Permutation, usize>,
    generators: Vec<usize>,
    id: Option<GroupId>,
    name: Option<String>,
}

impl Group {
    /// Smallest set closed under composition containing `gens`.
    ///
    /// Elements are enumerated layer by layer: layer `k` holds the elements
    /// first reached by words of length `k`, sorted by image table.
    pub fn closure(gens: &[Permutation], cap: usize) -> Result<Group> {
        let first = gens.first().ok_or(Error::NoGenerators)?;
        let degree = first.degree();
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        let identity = Permutation::identity(degree);
        let mut elements = vec![identity.clone()];
        let mut positions = HashMap::new();
        positions.insert(identity, 0usize);
        let mut layer = vec![0usize];
        while !layer.is_empty() {
            let mut next: Vec<Permutation> = Vec::new();
            for &x in &layer {
                for g in gens {
                    let y = elements[x].compose_unchecked(g);
                    if !positions.contains_key(&y) {
                        next.push(y);
                    }
                }
            }
            next.sort_unstable();
            next.dedup();
            layer.clear();
            for y in next {
                if elements.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                positions.insert(y.clone(), elements.len());
                layer.push(elements.len());
                elements.push(y);
            }
        }
        let generators = gens.iter().map(|g| positions[g]).collect();
        Ok(Group {
            elements,
            positions,
            generators,
            id: None,
            name: None,
        })
    }

    /// Regular representation of an abstract group: element `g` acts on
    /// the points `1..=n` by left multiplication.
    pub fn from_table(table: &MulTable) -> Group {
        let gens = table.generating_set();
        Group::from_table_with_generators(table, &gens)
    }

    pub(crate) fn from_table_with_generators(table: &MulTable, gens: &[usize]) -> Group {
        let perms: Vec<Permutation> = if gens.is_empty() {
            vec![Permutation::identity(table.order().max(1))]
        } else {
            gens.iter().map(|&g| table.left_regular(g)).collect()
        };
        Group::closure(&perms, table.order().max(1))
            .expect("regular representation closes at the table order")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_id(mut self, id: GroupId) -> Result<Self> {
        if id.order != self.order() {
            return Err(Error::IdMismatch {
                id_order: id.order,
                order: self.order(),
            });
        }
        self.id = Some(id);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.elements[0].degree()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.generators.iter().map(|&i| &self.elements[i])
    }

    pub(crate) fn generator_positions(&self) -> &[usize] {
        &self.generators
    }

    pub fn id(&self) -> Option<GroupId> {
        self.id
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn position(&self, g: &Permutation) -> Option<usize> {
        self.positions.get(g).copied()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.positions.contains_key(g)
    }

    /// Cayley table indexed by positions in [`Group::elements`].
    pub fn multiplication_table(&self) -> MulTable {
        let n = self.order();
        let mut table = Vec::with_capacity(n * n);
        for a in &self.elements {
            for b in &self.elements {
                table.push(self.positions[&a.compose_unchecked(b)] as u32);
            }
        }
        MulTable::from_raw(n, table)
    }

    /// Same group with every point relabeled by `sigma`; metadata is kept.
    pub fn relabel(&self, sigma: &Permutation) -> Result<Group> {
        let gens = self
            .generators()
            .map(|g| g.conjugate_by(sigma))
            .collect::<Result<Vec<_>>>()?;
        let mut g = Group::closure(&gens, self.order())?;
        g.id = self.id;
        g.name = self.name.clone();
        Ok(g)
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("order", &self.order())
            .field("degree", &self.degree())
            .field("name", &self.name)
            .field("id", &self.id)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        s.parse::<Permutation>().unwrap().extend(n)
    }

    /// Naive fixpoint closure: keep multiplying everything by everything.
    fn brute_closure(gens: &[Permutation]) -> Vec<Permutation> {
        let mut set: std::collections::BTreeSet<Permutation> = gens.iter().cloned().collect();
        loop {
            let cur: Vec<_> = set.iter().cloned().collect();
            let before = set.len();
            for a in &cur {
                for b in &cur {
                    set.insert(a.compose(b).unwrap());
                }
            }
            if set.len() == before {
                return cur;
            }
        }
    }

    #[test]
    fn square_symmetries_close_to_order_eight() {
        let gens = [p("(1,2,3,4)", 4), p("(1,3)", 4)];
        let g = Group::closure(&gens, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(brute_closure(&gens).len(), 8);
        assert!(g.elements()[0].is_identity());
        for a in g.elements() {
            assert!(g.contains(&a.inverse()));
            for b in g.elements() {
                assert!(g.contains(&a.compose(b).unwrap()));
            }
        }
    }

    #[test]
    fn identity_generates_trivial_group() {
        let g = Group::closure(&[Permutation::identity(3)], 10).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn five_cycle_generates_order_five() {
        let g = Group::closure(&[p("(1,2,3,4,5)", 5)], 10).unwrap();
        assert_eq!(g.order(), 5);
    }

    #[test]
    fn cap_is_enforced() {
        let gens = [p("(1,2)", 5), p("(1,2,3,4,5)", 5)];
        assert!(matches!(
            Group::closure(&gens, 100),
            Err(Error::CapExceeded { cap: 100 })
        ));
        assert_eq!(Group::closure(&gens, 120).unwrap().order(), 120);
    }

    #[test]
    fn closure_errors() {
        assert!(matches!(Group::closure(&[], 10), Err(Error::NoGenerators)));
        assert!(Group::closure(&[p("(1,2)", 2), p("(1,2,3)", 3)], 10).is_err());
    }

    #[test]
    fn enumeration_order_is_deterministic() {
        let gens = [p("(1,2,3,4)", 4), p("(1,3)", 4)];
        let a = Group::closure(&gens, 100).unwrap();
        let b = Group::closure(&gens, 100).unwrap();
        assert_eq!(a.elements(), b.elements());
        // layer one is the generators, sorted
        let mut layer1 = gens.to_vec();
        layer1.sort();
        assert_eq!(&a.elements()[1..3], &layer1[..]);
    }

    #[test]
    fn regular_representation_round_trip() {
        let g = Group::closure(&[p("(1,2,3)", 3), p("(1,2)", 3)], 10).unwrap();
        let t = g.multiplication_table();
        let r = Group::from_table(&t);
        assert_eq!(r.order(), 6);
        assert_eq!(r.degree(), 6);
    }

    #[test]
    fn id_must_match_order() {
        let g = Group::closure(&[p("(1,2,3)", 3)], 10).unwrap();
        assert!(g.clone().with_id(GroupId { order: 3, index: 1 }).is_ok());
        assert!(g.with_id(GroupId { order: 4, index: 1 }).is_err());
    }
}
