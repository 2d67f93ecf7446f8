//! Abstract Cayley tables over element indices `0..n`, identity at 0.
//!
//! Permutation groups convert to tables for the work that needs many
//! products (isomorphism testing, extension synthesis); tables convert back
//! through the regular representation.

use crate::perm::{gcd, Permutation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulTable {
    n: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
}

impl MulTable {
    /// `table[a * n + b]` is the index of `a·b`. Index 0 must be the identity.
    pub fn from_raw(n: usize, table: Vec<u32>) -> MulTable {
        assert_eq!(table.len(), n * n);
        let mut inverses = vec![0u32; n];
        for a in 0..n {
            debug_assert_eq!(table[a] as usize, a, "index 0 is not a left identity");
            if let Some(b) = (0..n).find(|&b| table[a * n + b] == 0) {
                inverses[a] = b as u32;
            }
        }
        MulTable { n, table, inverses }
    }

    /// Checks identity at 0, the Latin property and associativity.
    pub fn is_group(&self) -> bool {
        let n = self.n;
        if n == 0 {
            return false;
        }
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return false;
            }
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                let r = self.mul(a, b);
                let c = self.mul(b, a);
                if r >= n || c >= n || std::mem::replace(&mut row[r], true) || std::mem::replace(&mut col[c], true) {
                    return false;
                }
            }
        }
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<u64> {
        (0..self.n).map(|a| self.element_order(a)).collect()
    }

    /// Left multiplication by `g` as a permutation of `1..=n`.
    pub fn left_regular(&self, g: usize) -> Permutation {
        Permutation::from_raw((0..self.n).map(|h| self.mul(g, h) as u32).collect())
    }

    /// Elements of the subgroup generated by `gens`, identity first, in
    /// breadth-first order.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        inside[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            i += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    out.push(y);
                }
            }
        }
        out
    }

    /// Greedy generating set: repeatedly adds the element that enlarges the
    /// generated subgroup the most (ties go to the smaller index).
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.n];
        inside[0] = true;
        let mut size = 1;
        while size < self.n {
            let mut best: Option<(usize, Vec<usize>)> = None;
            for c in 1..self.n {
                if inside[c] {
                    continue;
                }
                let mut trial = gens.clone();
                trial.push(c);
                let sub = self.subgroup(&trial);
                if best.as_ref().is_none_or(|(s, _)| sub.len() > *s) {
                    best = Some((sub.len(), trial));
                    if sub.len() == self.n {
                        break;
                    }
                }
            }
            let (s, trial) = best.expect("a proper subgroup misses some element");
            gens = trial;
            size = s;
            for x in self.subgroup(&gens) {
                inside[x] = true;
            }
        }
        gens
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        // a⁻¹ b⁻¹ a b
        self.mul(self.mul(self.inverse(a), self.inverse(b)), self.mul(a, b))
    }

    /// Commutator subgroup, closed from all commutators.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let mut comms = vec![false; self.n];
        for a in 0..self.n {
            for b in 0..self.n {
                comms[self.commutator(a, b)] = true;
            }
        }
        let gens: Vec<usize> = (1..self.n).filter(|&c| comms[c]).collect();
        self.subgroup(&gens)
    }

    pub fn exponent(&self) -> u64 {
        self.element_orders()
            .into_iter()
            .fold(1, |acc, o| acc / gcd(acc, o) * o)
    }

    /// Conjugacy class sizes indexed by element.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut size = vec![0usize; self.n];
        let mut seen = vec![false; self.n];
        for a in 0..self.n {
            if seen[a] {
                continue;
            }
            let mut class = Vec::new();
            for g in 0..self.n {
                let c = self.mul(self.mul(g, a), self.inverse(g));
                if !seen[c] {
                    seen[c] = true;
                    class.push(c);
                }
            }
            for &c in &class {
                size[c] = class.len();
            }
        }
        size
    }

    /// Whether `sub` (a subgroup given by its elements) is normal.
    pub fn is_normal(&self, sub: &[usize]) -> bool {
        let mut inside = vec![false; self.n];
        for &x in sub {
            inside[x] = true;
        }
        sub.iter()
            .all(|&h| (0..self.n).all(|g| inside[self.mul(self.mul(g, h), self.inverse(g))]))
    }

    /// Table of the subgroup on the listed elements (identity first),
    /// re-indexed `0..sub.len()`.
    pub fn restrict(&self, sub: &[usize]) -> MulTable {
        let mut pos = vec![u32::MAX; self.n];
        for (i, &x) in sub.iter().enumerate() {
            pos[x] = i as u32;
        }
        let m = sub.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in sub {
            for &b in sub {
                table.push(pos[self.mul(a, b)]);
            }
        }
        MulTable::from_raw(m, table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> MulTable {
        let t = (0..n).flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32)).collect();
        MulTable::from_raw(n, t)
    }

    #[test]
    fn cyclic_table_basics() {
        let t = cyclic(6);
        assert!(t.is_group());
        assert!(t.is_abelian());
        assert_eq!(t.element_orders(), vec![1, 6, 3, 2, 3, 6]);
        assert_eq!(t.exponent(), 6);
        assert_eq!(t.generating_set(), vec![1]);
        assert_eq!(t.derived_subgroup(), vec![0]);
        assert_eq!(t.inverse(2), 4);
        assert_eq!(t.subgroup(&[2]), vec![0, 2, 4]);
    }

    #[test]
    fn broken_tables_are_rejected() {
        let mut raw: Vec<u32> = (0..3).flat_map(|a| (0..3).map(move |b| ((a + b) % 3) as u32)).collect();
        raw[4] = 0; // 1·1 = 0 breaks the Latin property
        assert!(!MulTable::from_raw(3, raw).is_group());
    }
}
