//! Builds a complete small-groups catalog from scratch.
//!
//! Every solvable group `G` has a normal subgroup `N` of prime index `p`
//! (take a maximal subgroup containing the derived subgroup). Picking
//! `t ∈ G \ N`, the group is determined by the automorphism
//! `α = (x ↦ t x t⁻¹)` of `N` and by `z = tᵖ ∈ N`, subject to
//!
//! ```text
//! α(z) = z        and        αᵖ = conjugation by z
//! ```
//!
//! and conversely every such pair defines a group of order `p·|N|`. So the
//! groups of order `n` are found among the cyclic extensions of the groups
//! of order `n/p`, for every prime `p | n`. Pairs related by an
//! automorphism of `N`, or by replacing `t` with `n·t`, give isomorphic
//! groups; only one pair per orbit is built. The survivors are sorted into
//! isomorphism classes.
//!
//! The only non-solvable group below order 120 is A5, which is added
//! directly. Extensions of elementary abelian 2-groups of rank 5 or more by
//! `C2` are skipped (their automorphism groups are huge): a 2-group that is
//! not elementary abelian always has a maximal subgroup that is not
//! elementary abelian either, since every element lies in some maximal
//! subgroup. The elementary abelian group itself is added directly.
//!
//! Ids and names come from an optional reference catalog, matched by
//! isomorphism. Without one, classes are numbered by invariants.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use super::{Catalog, CatalogEntry};
use crate::constructors::{build, GroupSpec};
use crate::error::{Error, Result};
use crate::group::{Group, GroupId};
use crate::iso::{BucketKey, IsoData};
use crate::perm::Permutation;
use crate::table::MulTable;

/// Synthesis is only complete while A5 is the sole non-solvable group.
pub const MAX_SYNTH_ORDER: usize = 119;

#[derive(Clone, Debug, Default)]
pub struct SynthOptions {
    pub max_order: usize,
    /// Source of ids and names; should be complete through `max_order`.
    pub reference: Option<Catalog>,
}

/// A reference group prepared for matching.
#[derive(Clone, Debug)]
pub struct ReferenceEntry {
    pub id: GroupId,
    pub name: String,
    pub data: IsoData,
}

#[derive(Clone, Debug, Default)]
pub struct SynthReport {
    /// Classes found per order.
    pub classes: BTreeMap<usize, usize>,
    /// Extension tables built (after orbit reduction) per order.
    pub candidates: BTreeMap<usize, usize>,
}

#[derive(Clone)]
struct Class {
    data: IsoData,
    key: BucketKey,
    provenance: String,
    id: Option<GroupId>,
    name: Option<String>,
}

/// Synthesizes every group of order `1..=max_order`.
pub fn synthesize(opts: &SynthOptions) -> Result<(Catalog, SynthReport)> {
    if opts.max_order == 0 || opts.max_order > MAX_SYNTH_ORDER {
        return Err(Error::Synthesis(format!(
            "max order must be in 1..={MAX_SYNTH_ORDER}, got {}",
            opts.max_order
        )));
    }
    let reference = match &opts.reference {
        Some(c) => Some(prepare_reference(c, opts.max_order)?),
        None => None,
    };

    let mut report = SynthReport::default();
    let mut by_order: Vec<Vec<Class>> = vec![Vec::new(); opts.max_order + 1];
    for n in 1..=opts.max_order {
        let (mut classes, built) = classes_of_order(n, &by_order);
        assign_ids(n, &mut classes, reference.as_ref())?;
        report.classes.insert(n, classes.len());
        report.candidates.insert(n, built);
        by_order[n] = classes;
    }

    let mut catalog = Catalog::default();
    if opts.reference.as_ref().is_some_and(Catalog::gap_indexing) {
        catalog.comments.push(format!(" {}", super::GAP_INDEXING));
    }
    catalog.comments.push(format!(
        " every group of order at most {}, synthesized by `deltagroup catalog synthesize`",
        opts.max_order
    ));
    if reference.is_some() {
        catalog
            .comments
            .push(" ids and names matched by isomorphism against a reference catalog".into());
    }
    catalog.complete_orders = (1..=opts.max_order).collect();
    for classes in &by_order {
        for c in classes {
            catalog.entries.push(entry_for(c)?);
        }
    }
    catalog.sort();
    Ok((catalog, report))
}

fn prepare_reference(c: &Catalog, max_order: usize) -> Result<HashMap<usize, Vec<ReferenceEntry>>> {
    let prepared: Vec<Result<ReferenceEntry>> = c
        .entries
        .par_iter()
        .filter(|e| e.order <= max_order)
        .map(|e| {
            let g = e.group()?;
            Ok(ReferenceEntry {
                id: e.id(),
                name: e.name.clone(),
                data: IsoData::from_group(&g),
            })
        })
        .collect();
    let mut out: HashMap<usize, Vec<ReferenceEntry>> = HashMap::new();
    for r in prepared {
        let r = r?;
        out.entry(r.id.order).or_default().push(r);
    }
    Ok(out)
}

fn assign_ids(n: usize, classes: &mut [Class], reference: Option<&HashMap<usize, Vec<ReferenceEntry>>>) -> Result<()> {
    match reference.and_then(|r| r.get(&n)) {
        Some(refs) => {
            let matches: Vec<Option<usize>> = classes
                .par_iter()
                .map(|c| refs.iter().position(|r| r.data.is_isomorphic(&c.data)))
                .collect();
            let mut taken = HashSet::new();
            for (c, m) in classes.iter_mut().zip(matches) {
                let k = m.ok_or_else(|| {
                    Error::Synthesis(format!("a group of order {n} has no match in the reference catalog"))
                })?;
                if !taken.insert(k) {
                    return Err(Error::Synthesis(format!(
                        "reference entry {} matches two synthesized classes",
                        refs[k].id
                    )));
                }
                c.id = Some(refs[k].id);
                c.name = Some(refs[k].name.clone());
            }
        }
        None => {
            classes.sort_by(|a, b| a.key.cmp(&b.key));
            for (i, c) in classes.iter_mut().enumerate() {
                c.id = Some(GroupId { order: n, index: i + 1 });
                c.name = Some(format!("G{n}_{}", i + 1));
            }
        }
    }
    Ok(())
}

fn entry_for(c: &Class) -> Result<CatalogEntry> {
    let id = c.id.expect("ids assigned");
    let generators = small_degree_generators(c.data.table(), c.data.generators());
    let g = Group::closure(&generators, id.order.max(1))?;
    if g.order() != id.order {
        return Err(Error::Synthesis(format!("permutation representation of {id} is not faithful")));
    }
    Ok(CatalogEntry {
        order: id.order,
        index: id.index,
        name: c.name.clone().expect("names assigned"),
        generators,
        comments: vec![format!(" {}", c.provenance)],
    })
}

fn class_from_table(table: MulTable, provenance: String) -> Class {
    let data = IsoData::new(table);
    let key = data.bucket_key();
    Class {
        data,
        key,
        provenance,
        id: None,
        name: None,
    }
}

fn table_of(spec: &GroupSpec) -> MulTable {
    build(spec).expect("small constructor").multiplication_table()
}

fn primes_dividing(n: usize) -> Vec<usize> {
    (2..=n).filter(|&p| n.is_multiple_of(p) && (2..p).all(|q| p % q != 0)).collect()
}

fn elementary_abelian_rank(t: &MulTable) -> Option<u32> {
    let n = t.order();
    (n > 1 && n.is_power_of_two() && (0..n).all(|x| t.mul(x, x) == 0)).then(|| n.trailing_zeros())
}

/// All classes of order `n`, plus the number of extension tables built.
fn classes_of_order(n: usize, smaller: &[Vec<Class>]) -> (Vec<Class>, usize) {
    let mut classes: Vec<Class> = Vec::new();
    let mut buckets: HashMap<BucketKey, Vec<usize>> = HashMap::new();
    let mut add = |c: Class, classes: &mut Vec<Class>| {
        let bucket = buckets.entry(c.key.clone()).or_default();
        if bucket.iter().any(|&i| classes[i].data.is_isomorphic(&c.data)) {
            return;
        }
        bucket.push(classes.len());
        classes.push(c);
    };

    if n == 1 {
        let t = MulTable::from_raw(1, vec![0]);
        add(class_from_table(t, "trivial group".into()), &mut classes);
        return (classes, 0);
    }
    if n == 60 {
        add(
            class_from_table(table_of(&GroupSpec::Alternating(5)), "alternating group A5".into()),
            &mut classes,
        );
    }
    if n.is_power_of_two() && n >= 64 {
        let k = n.trailing_zeros() as usize;
        add(
            class_from_table(table_of(&GroupSpec::Abelian(vec![2; k])), "elementary abelian".into()),
            &mut classes,
        );
    }

    let mut built = 0;
    for p in primes_dividing(n) {
        for base in &smaller[n / p] {
            if p == 2 && elementary_abelian_rank(base.data.table()).is_some_and(|r| r >= 5) {
                continue;
            }
            let base_id = base.id.expect("smaller orders have ids");
            let tables = cyclic_extensions(&base.data, p);
            built += tables.len();
            let provenance = format!("cyclic extension of {} by C{p}", base_id);
            let candidates: Vec<Class> = tables
                .into_par_iter()
                .map(|t| class_from_table(t, provenance.clone()))
                .collect();
            for c in candidates {
                add(c, &mut classes);
            }
        }
    }
    (classes, built)
}

type Perm = Box<[u8]>;

fn compose(a: &[u8], b: &[u8]) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

fn inverse(a: &[u8]) -> Perm {
    let mut inv = vec![0u8; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u8;
    }
    inv.into()
}

/// Generators of the group formed by `all`, found greedily.
fn generators_of(all: &[Perm]) -> Vec<Perm> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut closure: HashSet<Perm> = HashSet::new();
    for a in all {
        if closure.len() == all.len() {
            break;
        }
        if closure.contains(a) {
            continue;
        }
        gens.push(a.clone());
        let id: Perm = (0..a.len() as u8).collect();
        closure.clear();
        closure.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = compose(g, &x);
                if closure.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        parent[hi] = lo;
    }
}

/// One multiplication table per orbit of admissible `(α, z)` pairs.
fn cyclic_extensions(base: &IsoData, p: usize) -> Vec<MulTable> {
    let t = base.table();
    let m = t.order();
    assert!(m * p <= 256, "element labels fit in a byte");

    let auts: Vec<Perm> = base
        .automorphisms()
        .into_iter()
        .map(|a| a.into_iter().map(|x| x as u8).collect())
        .collect();
    let aut_index: HashMap<Perm, usize> = auts.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();

    let conj = |z: usize| -> Perm { (0..m).map(|x| t.mul(t.mul(z, x), t.inverse(z)) as u8).collect() };
    let mut inner: HashMap<Perm, Vec<usize>> = HashMap::new();
    for z in 0..m {
        inner.entry(conj(z)).or_default().push(z);
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (i, a) in auts.iter().enumerate() {
        let mut ap: Perm = (0..m as u8).collect();
        for _ in 0..p {
            ap = compose(a, &ap);
        }
        if let Some(zs) = inner.get(&ap) {
            pairs.extend(zs.iter().filter(|&&z| a[z] as usize == z).map(|&z| (i, z)));
        }
    }
    let pair_index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &pz)| (pz, k)).collect();

    let mut parent: Vec<usize> = (0..pairs.len()).collect();
    let aut_gens = generators_of(&auts);
    let base_gens = base.generators();
    for (k, &(ai, z)) in pairs.iter().enumerate() {
        let alpha = &auts[ai];
        for beta in &aut_gens {
            let conj_alpha = compose(&compose(beta, alpha), &inverse(beta));
            let target = (aut_index[&conj_alpha], beta[z] as usize);
            union(&mut parent, k, pair_index[&target]);
        }
        for &g in base_gens {
            // t' = g·t acts as ι_g ∘ α, and t'^p = g·α(g)···α^{p-1}(g)·z
            let shifted = compose(&conj(g), alpha);
            let mut power = 0;
            let mut y = g;
            for _ in 0..p {
                power = t.mul(power, y);
                y = alpha[y] as usize;
            }
            let target = (aut_index[&shifted], t.mul(power, z));
            union(&mut parent, k, pair_index[&target]);
        }
    }

    (0..pairs.len())
        .filter(|&k| find(&mut parent, k) == k)
        .map(|k| {
            let (ai, z) = pairs[k];
            extension_table(t, &auts[ai], z, p)
        })
        .collect()
}

/// The group `N·⟨t⟩` with `t x t⁻¹ = α(x)` and `tᵖ = z`. Element `x·tⁱ`
/// has index `i·|N| + x`.
fn extension_table(t: &MulTable, alpha: &[u8], z: usize, p: usize) -> MulTable {
    let m = t.order();
    let n = m * p;
    // powers[i][y] = α^i(y)
    let mut powers: Vec<Vec<usize>> = vec![(0..m).collect()];
    for i in 1..p {
        let prev = &powers[i - 1];
        powers.push(prev.iter().map(|&y| alpha[y] as usize).collect());
    }
    let mut table = vec![0u32; n * n];
    for i in 0..p {
        for x in 0..m {
            let a = i * m + x;
            for j in 0..p {
                for y in 0..m {
                    let b = j * m + y;
                    let mut prod = t.mul(x, powers[i][y]);
                    let mut k = i + j;
                    if k >= p {
                        k -= p;
                        prod = t.mul(prod, z);
                    }
                    table[a * n + b] = (k * m + prod) as u32;
                }
            }
        }
    }
    let table = MulTable::from_raw(n, table);
    debug_assert!(n > 32 || table.is_group());
    table
}

/// A faithful permutation representation of modest degree: the disjoint
/// union of coset actions on cyclic subgroups, chosen greedily until the
/// intersection of their cores is trivial. Falls back to the regular
/// representation.
fn small_degree_generators(t: &MulTable, gens: &[usize]) -> Vec<Permutation> {
    let n = t.order();
    if n == 1 {
        return vec![Permutation::identity(1)];
    }
    let classes = conjugacy_classes(t);
    let mut kernel: Vec<bool> = vec![true; n];
    let mut subgroups: Vec<Vec<usize>> = Vec::new();
    let mut cyclic: Vec<Vec<usize>> = (0..n).map(|x| t.subgroup(&[x])).collect();
    cyclic.sort_by_key(|s| (std::cmp::Reverse(s.len()), s.clone()));
    cyclic.dedup_by(|a, b| {
        let (mut a, mut b) = (a.clone(), b.clone());
        a.sort_unstable();
        b.sort_unstable();
        a == b
    });
    while kernel.iter().filter(|&&k| k).count() > 1 {
        let current = kernel.iter().filter(|&&k| k).count();
        // best = (degree per removed kernel element, degree, new kernel)
        let mut best: Option<(f64, usize, Vec<bool>, Vec<usize>)> = None;
        for h in &cyclic {
            let inside = membership(n, h);
            let core: Vec<bool> = (0..n).map(|x| classes[x].iter().all(|&c| inside[c])).collect();
            let next: Vec<bool> = (0..n).map(|x| kernel[x] && core[x]).collect();
            let remaining = next.iter().filter(|&&k| k).count();
            if remaining == current {
                continue;
            }
            let degree = n / h.len();
            let score = degree as f64 / (current - remaining) as f64;
            if best.as_ref().is_none_or(|b| score < b.0 || (score == b.0 && degree < b.1)) {
                best = Some((score, degree, next, h.clone()));
            }
        }
        match best {
            Some((_, _, next, h)) => {
                kernel = next;
                subgroups.push(h);
            }
            None => {
                subgroups = vec![vec![0]];
                break;
            }
        }
    }

    // a single core-free subgroup sometimes beats the greedy union
    let core_free = cyclic.iter().find(|h| {
        let inside = membership(n, h);
        (1..n).all(|x| !classes[x].iter().all(|&c| inside[c]))
    });
    let total = |subs: &[Vec<usize>]| subs.iter().map(|h| n / h.len()).sum::<usize>();
    if let Some(h) = core_free {
        if n / h.len() <= total(&subgroups) {
            subgroups = vec![h.clone()];
        }
    }

    // point numbering: cosets of each subgroup in turn
    let mut coset_of: Vec<Vec<usize>> = Vec::new();
    let mut offset = 0;
    for h in &subgroups {
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for x in 0..n {
            if label[x] == usize::MAX {
                for &y in h {
                    label[t.mul(x, y)] = next;
                }
                next += 1;
            }
        }
        coset_of.push(label.iter().map(|l| l + offset).collect());
        offset += next;
    }
    let degree = offset;
    gens.iter()
        .map(|&g| {
            let mut images = vec![0usize; degree];
            for label in &coset_of {
                for x in 0..n {
                    images[label[x]] = label[t.mul(g, x)] + 1;
                }
            }
            Permutation::from_images(&images).expect("coset action is a permutation")
        })
        .collect()
}

fn membership(n: usize, sub: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; n];
    for &x in sub {
        inside[x] = true;
    }
    inside
}

/// Conjugacy class of each element.
fn conjugacy_classes(t: &MulTable) -> Vec<Vec<usize>> {
    let n = t.order();
    (0..n)
        .map(|x| {
            let mut c: Vec<usize> = (0..n).map(|g| t.mul(t.mul(g, x), t.inverse(g))).collect();
            c.sort_unstable();
            c.dedup();
            c
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::validate_catalog;

    #[test]
    fn counts_through_thirty_two() {
        let (catalog, report) = synthesize(&SynthOptions {
            max_order: 32,
            reference: None,
        })
        .unwrap();
        for n in 1..=32 {
            assert_eq!(
                report.classes[&n],
                crate::catalog::known_group_count(n).unwrap(),
                "order {n}"
            );
        }
        assert!(validate_catalog(&catalog).is_empty());
    }

    #[test]
    fn extensions_of_c4_by_c2() {
        let c4 = IsoData::from_group(&build(&"C4".parse().unwrap()).unwrap());
        let tables = cyclic_extensions(&c4, 2);
        assert!(tables.iter().all(MulTable::is_group));
        let data: Vec<IsoData> = tables.into_iter().map(IsoData::new).collect();
        // C8, C4xC2, D8, Q8 all contain a cyclic subgroup of index 2
        assert_eq!(crate::iso::class_representatives(&data).len(), 4);
    }

    #[test]
    fn small_degree_representations() {
        for (spec, degree) in [("C2xC4", 8), ("Q8", 8), ("D10", 5), ("C6", 5), ("S4", 6)] {
            let g = build(&spec.parse().unwrap()).unwrap();
            let data = IsoData::from_group(&g);
            let gens = small_degree_generators(data.table(), data.generators());
            assert_eq!(gens[0].degree(), degree, "{spec}");
            let h = Group::closure(&gens, 1000).unwrap();
            assert!(crate::iso::is_isomorphic(&g, &h));
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(synthesize(&SynthOptions {
            max_order: 120,
            reference: None
        })
        .is_err());
    }
}
