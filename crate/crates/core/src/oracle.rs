//! Exhaustive enumeration of all groups of order at most 10 by Cayley-table
//! backtracking.
//!
//! This module deliberately shares nothing with the constructors, the
//! catalog or the isomorphism search: it fills Cayley tables cell by cell
//! under Latin-square and associativity constraints, then keeps one table
//! per isomorphism class using a canonical relabeling. Agreement with the
//! rest of the crate is therefore independent evidence.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::Permutation;

/// Largest order the oracle accepts. Table counts grow like `(n-1)!`.
pub const MAX_ORDER: usize = 10;

const NONE: u8 = u8::MAX;

/// A complete group multiplication table, element 0 the identity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CayleyTable {
    n: usize,
    table: Vec<u8>,
}

impl CayleyTable {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    /// Latin rows and columns, identity row/column at 0, associativity.
    pub fn is_valid(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            if self.product(0, a) != a || self.product(a, 0) != a {
                return false;
            }
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                if std::mem::replace(&mut row[self.product(a, b)], true)
                    || std::mem::replace(&mut col[self.product(b, a)], true)
                {
                    return false;
                }
            }
        }
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    self.product(self.product(a, b), c) == self.product(a, self.product(b, c))
                })
            })
        })
    }

    /// Left multiplications as permutations of `1..=n`.
    pub fn to_group(&self) -> Group {
        let n = self.n;
        let gens: Vec<Permutation> = (0..n)
            .map(|g| {
                let images: Vec<usize> = (0..n).map(|h| self.product(g, h) + 1).collect();
                Permutation::from_images(&images).expect("Latin rows are bijections")
            })
            .collect();
        Group::closure(&gens, n).expect("regular representation has n elements")
    }

    /// Canonical form: the lexicographically least table over all
    /// relabelings induced by breadth-first enumeration from an ordered
    /// generating tuple of minimum size. Isomorphic tables, and only those,
    /// share a canonical form.
    pub fn canonical(&self) -> CayleyTable {
        let n = self.n;
        if n == 1 {
            return self.clone();
        }
        let rank = (1..=n)
            .find(|&r| tuples(n, r).any(|t| self.generates(&t)))
            .expect("the whole group generates itself");
        let mut best: Option<Vec<u8>> = None;
        for tuple in tuples(n, rank) {
            let Some(label) = self.bfs_labels(&tuple) else { continue };
            let mut unlabel = vec![0usize; n];
            for (x, &l) in label.iter().enumerate() {
                unlabel[l as usize] = x;
            }
            // build the relabeled table, abandoning it once it exceeds the best
            let mut cand = Vec::with_capacity(n * n);
            let mut state = std::cmp::Ordering::Equal;
            'fill: for i in 0..n {
                for j in 0..n {
                    let v = label[self.product(unlabel[i], unlabel[j])];
                    if state == std::cmp::Ordering::Equal {
                        if let Some(b) = &best {
                            state = v.cmp(&b[cand.len()]);
                            if state == std::cmp::Ordering::Greater {
                                break 'fill;
                            }
                        }
                    }
                    cand.push(v);
                }
            }
            if cand.len() == n * n && (best.is_none() || state == std::cmp::Ordering::Less) {
                best = Some(cand);
            }
        }
        CayleyTable {
            n,
            table: best.expect("some tuple generates"),
        }
    }

    fn generates(&self, gens: &[usize]) -> bool {
        self.bfs_labels(gens).is_some()
    }

    /// Labels in breadth-first discovery order, or `None` if `gens` does
    /// not generate.
    fn bfs_labels(&self, gens: &[usize]) -> Option<Vec<u8>> {
        let n = self.n;
        let mut label = vec![NONE; n];
        label[0] = 0;
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for &g in gens {
                let y = self.product(x, g);
                if label[y] == NONE {
                    label[y] = queue.len() as u8;
                    queue.push(y);
                }
            }
        }
        (queue.len() == n).then_some(label)
    }
}

/// Ordered tuples of distinct non-identity elements.
fn tuples(n: usize, r: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (n - 1).pow(r as u32);
    (0..total).filter_map(move |mut k| {
        let mut t = Vec::with_capacity(r);
        for _ in 0..r {
            t.push(1 + k % (n - 1));
            k /= n - 1;
        }
        let mut s = t.clone();
        s.sort_unstable();
        s.dedup();
        (s.len() == r).then_some(t)
    })
}

/// Backtracking state: a partial table with row/column usage and reverse
/// lookups, plus an undo trail.
struct Filler {
    n: usize,
    t: Vec<u8>,
    /// `row_of[q*n + v]`: the `p` with `p·q = v`, if assigned.
    row_of: Vec<u8>,
    /// `col_of[p*n + v]`: the `q` with `p·q = v`, if assigned.
    col_of: Vec<u8>,
    trail: Vec<usize>,
    queue: Vec<usize>,
    found: BTreeSet<CayleyTable>,
    tables_seen: u64,
}

impl Filler {
    fn new(n: usize) -> Filler {
        Filler {
            n,
            t: vec![NONE; n * n],
            row_of: vec![NONE; n * n],
            col_of: vec![NONE; n * n],
            trail: Vec::new(),
            queue: Vec::new(),
            found: BTreeSet::new(),
            tables_seen: 0,
        }
    }

    #[inline]
    fn get(&self, a: usize, b: usize) -> u8 {
        self.t[a * self.n + b]
    }

    /// Assigns `a·b = c`, or checks it when already assigned.
    fn set(&mut self, a: usize, b: usize, c: usize) -> bool {
        let n = self.n;
        let cur = self.t[a * n + b];
        if cur != NONE {
            return cur as usize == c;
        }
        if self.col_of[a * n + c] != NONE || self.row_of[b * n + c] != NONE {
            return false;
        }
        self.t[a * n + b] = c as u8;
        self.col_of[a * n + c] = b as u8;
        self.row_of[b * n + c] = a as u8;
        self.trail.push(a * n + b);
        self.queue.push(a * n + b);
        true
    }

    fn undo_to(&mut self, mark: usize) {
        let n = self.n;
        while self.trail.len() > mark {
            let cell = self.trail.pop().unwrap();
            let (a, b) = (cell / n, cell % n);
            let c = self.t[cell] as usize;
            self.t[cell] = NONE;
            self.col_of[a * n + c] = NONE;
            self.row_of[b * n + c] = NONE;
        }
    }

    /// Applies associativity to every triple involving a queued cell,
    /// deducing the fourth product whenever three are known.
    fn propagate(&mut self) -> bool {
        let n = self.n;
        while let Some(cell) = self.queue.pop() {
            let (a, b) = (cell / n, cell % n);
            let c = self.t[cell] as usize;
            for x in 0..n {
                // (a·b)·x = a·(b·x)
                let bx = self.get(b, x);
                let cx = self.get(c, x);
                if bx != NONE {
                    let abx = self.get(a, bx as usize);
                    if abx != NONE {
                        if !self.set(c, x, abx as usize) {
                            return false;
                        }
                    } else if cx != NONE && !self.set(a, bx as usize, cx as usize) {
                        return false;
                    }
                } else if cx != NONE {
                    let y = self.col_of[a * n + cx as usize];
                    if y != NONE && !self.set(b, x, y as usize) {
                        return false;
                    }
                }
                // (x·a)·b = x·(a·b)
                let xa = self.get(x, a);
                let xc = self.get(x, c);
                if xa != NONE {
                    let xab = self.get(xa as usize, b);
                    if xab != NONE {
                        if !self.set(x, c, xab as usize) {
                            return false;
                        }
                    } else if xc != NONE && !self.set(xa as usize, b, xc as usize) {
                        return false;
                    }
                } else if xc != NONE {
                    let w = self.row_of[b * n + xc as usize];
                    if w != NONE && !self.set(x, a, w as usize) {
                        return false;
                    }
                }
                // a = p·q: (p·q)·b = p·(q·b), with q = x
                let p = self.row_of[x * n + a];
                if p != NONE {
                    let qb = self.get(x, b);
                    if qb != NONE {
                        if !self.set(p as usize, qb as usize, c) {
                            return false;
                        }
                    } else {
                        let s = self.col_of[p as usize * n + c];
                        if s != NONE && !self.set(x, b, s as usize) {
                            return false;
                        }
                    }
                }
                // b = q·r: a·(q·r) = (a·q)·r, with r = x
                let q = self.row_of[x * n + b];
                if q != NONE {
                    let aq = self.get(a, q as usize);
                    if aq != NONE {
                        if !self.set(aq as usize, x, c) {
                            return false;
                        }
                    } else {
                        let t = self.row_of[x * n + c];
                        if t != NONE && !self.set(a, q as usize, t as usize) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Unassigned cell with the fewest admissible values.
    fn choose_cell(&self) -> Option<(usize, Vec<usize>)> {
        let n = self.n;
        let mut best: Option<(usize, Vec<usize>)> = None;
        for cell in 0..n * n {
            if self.t[cell] != NONE {
                continue;
            }
            let (a, b) = (cell / n, cell % n);
            let vals: Vec<usize> = (0..n)
                .filter(|&v| self.col_of[a * n + v] == NONE && self.row_of[b * n + v] == NONE)
                .collect();
            if best.as_ref().is_none_or(|(_, bv)| vals.len() < bv.len()) {
                let done = vals.len() <= 1;
                best = Some((cell, vals));
                if done {
                    break;
                }
            }
        }
        best
    }

    fn search(&mut self) {
        let Some((cell, vals)) = self.choose_cell() else {
            let table = CayleyTable {
                n: self.n,
                table: self.t.clone(),
            };
            debug_assert!(table.is_valid());
            self.tables_seen += 1;
            self.found.insert(table.canonical());
            return;
        };
        let (a, b) = (cell / self.n, cell % self.n);
        for v in vals {
            let mark = self.trail.len();
            self.queue.clear();
            if self.set(a, b, v) && self.propagate() {
                self.search();
            }
            self.queue.clear();
            self.undo_to(mark);
        }
    }
}

/// Every group table of order `n` up to isomorphism, as canonical tables in
/// increasing lexicographic order, plus the number of labeled tables seen.
pub fn enumerate_tables(n: usize) -> Result<(Vec<CayleyTable>, u64)> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::OracleRange {
            order: n,
            max: MAX_ORDER,
        });
    }
    let mut f = Filler::new(n);
    for x in 0..n {
        let ok = f.set(0, x, x) && f.set(x, 0, x);
        debug_assert!(ok);
    }
    if f.propagate() {
        f.search();
    }
    Ok((f.found.into_iter().collect(), f.tables_seen))
}

/// All groups of order `n` (1 ≤ n ≤ 10) up to isomorphism, one regular
/// permutation representation per class, in canonical-table order.
pub fn enumerate_order(n: usize) -> Result<Vec<Group>> {
    Ok(enumerate_tables(n)?
        .0
        .iter()
        .map(CayleyTable::to_group)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        let counts: Vec<usize> = (1..=7).map(|n| enumerate_tables(n).unwrap().0.len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 2, 1]);
        assert_eq!(counts.iter().sum::<usize>(), 9);
    }

    #[test]
    fn labeled_table_counts() {
        // labeled tables with fixed identity: Σ (n-1)!/|Aut(G)|
        // order 4: C4 (|Aut| 2) -> 3, C2² (|Aut| 6) -> 1
        assert_eq!(enumerate_tables(4).unwrap().1, 4);
        // order 6: C6 (2) -> 60, S3 (6) -> 20
        assert_eq!(enumerate_tables(6).unwrap().1, 80);
    }

    #[test]
    fn out_of_range() {
        assert!(enumerate_order(0).is_err());
        assert!(enumerate_order(11).is_err());
    }

    #[test]
    fn canonical_form_is_relabeling_invariant() {
        let (tables, _) = enumerate_tables(6).unwrap();
        for t in &tables {
            // relabel by swapping elements 2 and 3
            let sigma = |x: usize| match x {
                2 => 3,
                3 => 2,
                _ => x,
            };
            let mut r = vec![0u8; 36];
            for a in 0..6 {
                for b in 0..6 {
                    r[sigma(a) * 6 + sigma(b)] = sigma(t.product(a, b)) as u8;
                }
            }
            let r = CayleyTable { n: 6, table: r };
            assert!(r.is_valid());
            assert_eq!(r.canonical(), *t);
        }
    }
}
