//! Permutations of `{1..n}` with explicit image tables.
//!
//! Composition is right-to-left everywhere in the crate: `a.compose(&b)`
//! maps a point `p` to `a(b(p))`, so the right factor is applied first.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A bijection on the points `1..=degree`.
///
/// Images are stored 0-based; cycle notation and [`Permutation::image`]
/// speak 1-based points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree >= 1, "permutations act on at least one point");
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 1-based images, `images[i-1] = g(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::NotAPermutation("empty image table".into()));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &p in images {
            if p == 0 || p > n {
                return Err(Error::NotAPermutation(format!(
                    "image {p} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::NotAPermutation(format!("image {p} repeated")));
            }
            out.push((p - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    /// Zero-based constructor used by table-driven code. The caller
    /// guarantees that `images` is a bijection on `0..len`.
    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| v as usize == i)
        });
        Permutation { images }
    }

    /// Product of cycles (1-based points) on `degree` points. Cycles are
    /// multiplied right-to-left, like every other composition here.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut acc = Permutation::identity(degree);
        for cycle in cycles.iter().rev() {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            let mut seen = std::collections::HashSet::new();
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(Error::NotAPermutation(format!(
                        "point {p} outside 1..={degree}"
                    )));
                }
                if !seen.insert(p) {
                    return Err(Error::NotAPermutation(format!(
                        "point {p} repeated in a cycle"
                    )));
                }
                let next = cycle[(k + 1) % cycle.len()];
                images[p - 1] = (next - 1) as u32;
            }
            acc = Permutation { images }.compose_unchecked(&acc);
        }
        Ok(acc)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `p`.
    pub fn image(&self, p: usize) -> usize {
        self.images[p - 1] as usize + 1
    }

    /// 1-based image table.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize == i)
    }

    /// `self ∘ other`: the point `p` goes to `self(other(p))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other
                .images
                .iter()
                .map(|&p| self.images[p as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    /// `sigma ∘ self ∘ sigma⁻¹`, the same permutation with points relabeled by `sigma`.
    pub fn conjugate_by(&self, sigma: &Permutation) -> Result<Permutation> {
        Ok(sigma.compose(self)?.compose_unchecked(&sigma.inverse()))
    }

    /// Pads with fixed points up to `degree` (no-op when already that large).
    pub fn extend(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    /// Nontrivial cycles in 1-based points, each starting at its smallest
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Least `k >= 1` with `self^k = id`: the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.degree()];
        let mut acc = 1u64;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.images[p] as usize;
            }
            acc = lcm(acc, len);
        }
        acc
    }

    /// Largest point moved, or 0 for the identity.
    pub fn support_max(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &v)| v as usize != *i)
            .map(|(i, _)| i + 1)
            .max()
            .unwrap_or(0)
    }
}

pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    a.compose(b)
}

pub fn element_order(g: &Permutation) -> u64 {
    g.order()
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[deg {}]", self.degree())
    }
}

/// Error from [`parse_cycles`], with a 0-based byte column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSyntaxError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for CycleSyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column + 1, self.message)
    }
}

/// Parses juxtaposed cycles such as `(1,2,3)(4,5)`. The bare `()` stands
/// for the identity. Whitespace between tokens is ignored.
pub fn parse_cycles(text: &str) -> std::result::Result<Vec<Vec<usize>>, CycleSyntaxError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut cycles = Vec::new();
    let err = |column: usize, message: &str| CycleSyntaxError {
        column,
        message: message.to_string(),
    };
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == bytes.len() {
        return Err(err(i, "expected a cycle"));
    }
    let mut saw_identity = false;
    while i < bytes.len() {
        if bytes[i] != b'(' {
            return Err(err(i, "expected '('"));
        }
        let open = i;
        i += 1;
        skip_ws(&mut i);
        if i < bytes.len() && bytes[i] == b')' {
            i += 1;
            saw_identity = true;
            skip_ws(&mut i);
            continue;
        }
        let mut cycle = Vec::new();
        loop {
            skip_ws(&mut i);
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(err(i, "expected a point"));
            }
            let p: usize = text[start..i]
                .parse()
                .map_err(|_| err(start, "point out of range"))?;
            if p == 0 {
                return Err(err(start, "points are numbered from 1"));
            }
            if cycle.contains(&p) {
                return Err(err(start, &format!("duplicate point {p} in cycle")));
            }
            cycle.push(p);
            skip_ws(&mut i);
            match bytes.get(i) {
                Some(b',') => i += 1,
                Some(b')') => {
                    i += 1;
                    break;
                }
                _ => return Err(err(i, "expected ',' or ')'")),
            }
        }
        if cycle.len() < 2 {
            return Err(err(open, "a cycle needs at least two points"));
        }
        cycles.push(cycle);
        skip_ws(&mut i);
    }
    if saw_identity && !cycles.is_empty() {
        return Err(err(0, "'()' cannot be combined with other cycles"));
    }
    Ok(cycles)
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses cycle notation; the degree is the largest point mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let cycles = parse_cycles(s).map_err(|e| Error::NotAPermutation(e.to_string()))?;
        let degree = cycles.iter().flatten().copied().max().unwrap_or(1);
        Permutation::from_cycles(degree, &cycles)
    }
}
