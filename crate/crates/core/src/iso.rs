//! Isomorphism testing for small groups.
//!
//! Cheap invariants ([`Fingerprint`]) rule out most pairs. Survivors go to a
//! backtracking search that assigns images to a generating set of the first
//! group, one generator at a time, and extends the partial map over the
//! generated subgroup, rejecting as soon as it stops being an injective
//! homomorphism. Candidate images are restricted to elements with the same
//! local signature (order, conjugacy class size, number of square roots).

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::group::Group;
use crate::table::MulTable;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    /// Element order → number of elements of that order.
    pub order_spectrum: BTreeMap<u64, u64>,
    pub abelian: bool,
    pub center_order: usize,
    pub derived_order: usize,
    pub exponent: u64,
}

pub fn fingerprint(g: &Group) -> Fingerprint {
    fingerprint_table(&g.multiplication_table())
}

pub fn fingerprint_table(t: &MulTable) -> Fingerprint {
    let mut order_spectrum = BTreeMap::new();
    for o in t.element_orders() {
        *order_spectrum.entry(o).or_insert(0) += 1;
    }
    Fingerprint {
        order: t.order(),
        order_spectrum,
        abelian: t.is_abelian(),
        center_order: t.center().len(),
        derived_order: t.derived_subgroup().len(),
        exponent: t.exponent(),
    }
}

/// Per-element isomorphism invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct ElementSig {
    order: u64,
    class_size: usize,
    square_roots: usize,
}

/// A group prepared for repeated isomorphism tests.
#[derive(Clone, Debug)]
pub struct IsoData {
    table: MulTable,
    sigs: Vec<ElementSig>,
    gens: Vec<usize>,
    fingerprint: Fingerprint,
    sig_multiset: Vec<(ElementSig, usize)>,
}

impl IsoData {
    pub fn new(table: MulTable) -> IsoData {
        let n = table.order();
        let orders = table.element_orders();
        let classes = table.class_sizes();
        let mut roots = vec![0usize; n];
        for y in 0..n {
            roots[table.mul(y, y)] += 1;
        }
        let sigs: Vec<ElementSig> = (0..n)
            .map(|x| ElementSig {
                order: orders[x],
                class_size: classes[x],
                square_roots: roots[x],
            })
            .collect();
        let mut counts: BTreeMap<ElementSig, usize> = BTreeMap::new();
        for s in &sigs {
            *counts.entry(*s).or_insert(0) += 1;
        }
        let gens = choose_generators(&table, &sigs, &counts);
        let fingerprint = fingerprint_table(&table);
        IsoData {
            table,
            sigs,
            gens,
            fingerprint,
            sig_multiset: counts.into_iter().collect(),
        }
    }

    pub fn from_group(g: &Group) -> IsoData {
        IsoData::new(g.multiplication_table())
    }

    pub fn table(&self) -> &MulTable {
        &self.table
    }

    pub fn fingerprint(&self) -> &Fingerprint {
        &self.fingerprint
    }

    /// Generating set used as the domain of the search.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    /// Hashable invariant: equal for isomorphic groups.
    pub fn bucket_key(&self) -> BucketKey {
        BucketKey {
            fingerprint: self.fingerprint.clone(),
            sigs: self
                .sig_multiset
                .iter()
                .map(|(s, c)| (s.order, s.class_size, s.square_roots, *c))
                .collect(),
        }
    }

    /// An isomorphism `self → other` as an element map, if one exists.
    pub fn find_isomorphism(&self, other: &IsoData) -> Option<Vec<usize>> {
        let mut found = None;
        self.for_each_isomorphism(other, |map| {
            found = Some(map.to_vec());
            true
        });
        found
    }

    /// Every automorphism, as element maps.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each_isomorphism(self, |map| {
            out.push(map.to_vec());
            false
        });
        out
    }

    /// Calls `visit` on isomorphisms `self → other` until it returns `true`.
    pub fn for_each_isomorphism(&self, other: &IsoData, mut visit: impl FnMut(&[usize]) -> bool) {
        if self.fingerprint != other.fingerprint || self.sig_multiset != other.sig_multiset {
            return;
        }
        let n = self.table.order();
        let candidates: Vec<Vec<usize>> = self
            .gens
            .iter()
            .map(|&g| (0..n).filter(|&y| other.sigs[y] == self.sigs[g]).collect())
            .collect();
        let mut search = Search {
            a: &self.table,
            b: &other.table,
            gens: &self.gens,
            candidates: &candidates,
            map: vec![usize::MAX; n],
            used: vec![false; n],
            images: Vec::with_capacity(self.gens.len()),
            members: vec![0],
        };
        search.map[0] = 0;
        search.used[0] = true;
        search.extend(0, &mut visit);
    }

    pub fn is_isomorphic(&self, other: &IsoData) -> bool {
        self.find_isomorphism(other).is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BucketKey {
    fingerprint: Fingerprint,
    sigs: Vec<(u64, usize, usize, usize)>,
}

/// Greedy generating set: each step takes the element that enlarges the
/// generated subgroup most, preferring elements whose signature is rare.
fn choose_generators(
    t: &MulTable,
    sigs: &[ElementSig],
    counts: &BTreeMap<ElementSig, usize>,
) -> Vec<usize> {
    let n = t.order();
    let mut gens: Vec<usize> = Vec::new();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut size = 1;
    while size < n {
        let mut best: Option<(usize, usize, usize)> = None; // (size, rarity, element)
        for c in 1..n {
            if inside[c] {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(c);
            let s = t.subgroup(&trial).len();
            let rarity = counts[&sigs[c]];
            let better = match best {
                None => true,
                Some((bs, br, _)) => s > bs || (s == bs && rarity < br),
            };
            if better {
                best = Some((s, rarity, c));
            }
        }
        let (s, _, c) = best.expect("proper subgroup");
        gens.push(c);
        size = s;
        for x in t.subgroup(&gens) {
            inside[x] = true;
        }
    }
    gens
}

struct Search<'a> {
    a: &'a MulTable,
    b: &'a MulTable,
    gens: &'a [usize],
    candidates: &'a [Vec<usize>],
    map: Vec<usize>,
    used: Vec<bool>,
    images: Vec<usize>,
    /// Elements of the subgroup generated so far, in discovery order.
    members: Vec<usize>,
}

impl Search<'_> {
    /// Returns `true` once `visit` asks to stop.
    fn extend(&mut self, level: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if level == self.gens.len() {
            return self.members.len() == self.a.order() && visit(&self.map);
        }
        let g = self.gens[level];
        let candidates = self.candidates;
        for &y in &candidates[level] {
            if self.used[y] {
                continue;
            }
            let old_len = self.members.len();
            self.images.push(y);
            if self.close(level, old_len) && self.extend(level + 1, visit) {
                return true;
            }
            self.images.pop();
            for &x in &self.members[old_len..] {
                self.used[self.map[x]] = false;
                self.map[x] = usize::MAX;
            }
            self.members.truncate(old_len);
            debug_assert_eq!(self.map[g], usize::MAX);
        }
        false
    }

    /// Extends the map over `<gens[..=level]>`; old members only need the
    /// new generator, new members need every generator so far.
    fn close(&mut self, level: usize, old_len: usize) -> bool {
        let mut idx = 0;
        while idx < self.members.len() {
            let x = self.members[idx];
            let range = if idx < old_len { level..level + 1 } else { 0..level + 1 };
            for j in range {
                let z = self.a.mul(x, self.gens[j]);
                let fz = self.b.mul(self.map[x], self.images[j]);
                if self.map[z] == usize::MAX {
                    if self.used[fz] {
                        return false;
                    }
                    self.map[z] = fz;
                    self.used[fz] = true;
                    self.members.push(z);
                } else if self.map[z] != fz {
                    return false;
                }
            }
            idx += 1;
        }
        true
    }
}

pub fn is_isomorphic(g: &Group, h: &Group) -> bool {
    if g.order() != h.order() {
        return false;
    }
    IsoData::from_group(g).is_isomorphic(&IsoData::from_group(h))
}

/// Keeps the first representative of each isomorphism class, in input order.
pub fn dedupe(groups: Vec<Group>) -> Vec<Group> {
    let data: Vec<IsoData> = groups.iter().map(IsoData::from_group).collect();
    let keep = class_representatives(&data);
    let mut keep_mask = vec![false; groups.len()];
    for k in keep {
        keep_mask[k] = true;
    }
    groups
        .into_iter()
        .zip(keep_mask)
        .filter_map(|(g, k)| k.then_some(g))
        .collect()
}

/// Indices of the first member of each isomorphism class.
pub fn class_representatives(data: &[IsoData]) -> Vec<usize> {
    let mut buckets: HashMap<BucketKey, Vec<usize>> = HashMap::new();
    let mut reps = Vec::new();
    for (i, d) in data.iter().enumerate() {
        let bucket = buckets.entry(d.bucket_key()).or_default();
        if bucket.iter().any(|&r| data[r].is_isomorphic(d)) {
            continue;
        }
        bucket.push(i);
        reps.push(i);
    }
    reps
}
