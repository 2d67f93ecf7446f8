//! Permutation realizations of the standard small-group families and the
//! direct / semidirect product combinators.
//!
//! Every spec has an ordered generator list, which semidirect actions refer
//! to by position:
//!
//! | spec            | generators                                   |
//! |-----------------|----------------------------------------------|
//! | `Cn`            | `c`                                          |
//! | `Cn1x..xCnk`    | one generator per factor                     |
//! | `D2n`           | rotation `r` (order n), reflection `s`       |
//! | `Q4n`           | `a` (order 2n), `x` with `x² = aⁿ`           |
//! | `Sn`            | `(1,..,n)`, `(1,2)`                          |
//! | `An`            | `(1,2,3)` and an `n`- or `(n-1)`-cycle       |
//! | `SL(2,3)`       | `[[0,2],[1,0]]`, `[[1,1],[0,1]]`             |
//! | `GL(2,3)`       | the `SL(2,3)` pair and `diag(2,1)`           |
//! | `AxB`           | generators of `A`, then of `B`               |
//! | `N:A`           | generators of `N`, then of `A`               |
//!
//! A semidirect action lists, for each generator of the acting group, the
//! images of the normal generators as exponent vectors: the row
//! `[e1, .., er]` denotes the element `g1^e1 · g2^e2 ··· gr^er`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{closure_cap, Group, GroupId};
use crate::invariants::delta;
use crate::perm::Permutation;
use crate::table::MulTable;

/// Images of the normal subgroup's generators under one automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub images: Vec<Vec<i64>>,
}

impl Automorphism {
    /// `x ↦ x^k` on a cyclic group.
    pub fn power(k: i64) -> Self {
        Automorphism {
            images: vec![vec![k]],
        }
    }

    pub fn matrix(rows: &[&[i64]]) -> Self {
        Automorphism {
            images: rows.iter().map(|r| r.to_vec()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Abelian(Vec<usize>),
    /// Dihedral group of the given order `2n`.
    Dihedral(usize),
    /// Dicyclic group of the given order `4n`; `Q8`, `Q16`, ... are the
    /// generalized quaternion groups.
    Dicyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    Sl23,
    Gl23,
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    Semidirect {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: Vec<Automorphism>,
    },
}

impl GroupSpec {
    pub fn direct(a: GroupSpec, b: GroupSpec) -> GroupSpec {
        GroupSpec::DirectProduct(Box::new(a), Box::new(b))
    }

    pub fn semidirect(normal: GroupSpec, acting: GroupSpec, action: Vec<Automorphism>) -> GroupSpec {
        GroupSpec::Semidirect {
            normal: Box::new(normal),
            acting: Box::new(acting),
            action,
        }
    }

    /// Semidihedral group of order `2^k`, `k >= 4`: `C_{2^(k-1)} : C2` with `x ↦ x^(2^(k-2) - 1)`.
    pub fn semidihedral(order: usize) -> GroupSpec {
        GroupSpec::semidirect(
            GroupSpec::Cyclic(order / 2),
            GroupSpec::Cyclic(2),
            vec![Automorphism::power(order as i64 / 4 - 1)],
        )
    }

    /// Order implied by the family formula.
    pub fn expected_order(&self) -> Option<usize> {
        Some(match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Abelian(ns) => ns.iter().product(),
            GroupSpec::Dihedral(m) | GroupSpec::Dicyclic(m) => *m,
            GroupSpec::Symmetric(n) => (1..=*n).try_fold(1usize, |a, k| a.checked_mul(k))?,
            GroupSpec::Alternating(n) => {
                let f = (1..=*n).try_fold(1usize, |a, k| a.checked_mul(k))?;
                if *n >= 2 {
                    f / 2
                } else {
                    f
                }
            }
            GroupSpec::Sl23 => 24,
            GroupSpec::Gl23 => 48,
            GroupSpec::DirectProduct(a, b) => a.expected_order()?.checked_mul(b.expected_order()?)?,
            GroupSpec::Semidirect { normal, acting, .. } => {
                normal.expected_order()?.checked_mul(acting.expected_order()?)?
            }
        })
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSpec(m));
        match self {
            GroupSpec::Cyclic(0) => bad("cyclic order must be at least 1".into()),
            GroupSpec::Abelian(ns) if ns.is_empty() || ns.contains(&0) => {
                bad("abelian factors must be at least 1".into())
            }
            GroupSpec::Dihedral(m) if *m < 2 || m % 2 != 0 => {
                bad(format!("dihedral order must be even and at least 2, got {m}"))
            }
            GroupSpec::Dicyclic(m) if *m < 8 || m % 4 != 0 => {
                bad(format!("dicyclic order must be a multiple of 4 and at least 8, got {m}"))
            }
            GroupSpec::Symmetric(0) | GroupSpec::Alternating(0) => bad("degree must be at least 1".into()),
            GroupSpec::DirectProduct(a, b) => {
                a.validate()?;
                b.validate()
            }
            GroupSpec::Semidirect { normal, acting, .. } => {
                normal.validate()?;
                acting.validate()
            }
            _ => Ok(()),
        }
    }

    fn needs_parens(&self) -> bool {
        matches!(
            self,
            GroupSpec::DirectProduct(..) | GroupSpec::Semidirect { .. }
        ) || matches!(self, GroupSpec::Abelian(ns) if ns.len() > 1)
    }
}

impl fmt::Display for GroupSpec {
    /// Compact name in small-groups notation without spaces, e.g. `(C4xC2):C2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Abelian(ns) => {
                let parts: Vec<String> = ns.iter().map(|n| format!("C{n}")).collect();
                f.write_str(&parts.join("x"))
            }
            GroupSpec::Dihedral(m) => write!(f, "D{m}"),
            GroupSpec::Dicyclic(m) => write!(f, "Q{m}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Sl23 => f.write_str("SL(2,3)"),
            GroupSpec::Gl23 => f.write_str("GL(2,3)"),
            GroupSpec::DirectProduct(a, b) => {
                let wrap = |s: &GroupSpec| {
                    if matches!(s, GroupSpec::Semidirect { .. }) {
                        format!("({s})")
                    } else {
                        s.to_string()
                    }
                };
                write!(f, "{}x{}", wrap(a), wrap(b))
            }
            GroupSpec::Semidirect { normal, acting, .. } => {
                let wrap = |s: &GroupSpec| {
                    if s.needs_parens() {
                        format!("({s})")
                    } else {
                        s.to_string()
                    }
                };
                write!(f, "{}:{}", wrap(normal), wrap(acting))
            }
        }
    }
}

/// Builds `spec` with the closure cap from the environment.
pub fn build(spec: &GroupSpec) -> Result<Group> {
    build_with_cap(spec, closure_cap())
}

pub fn build_with_cap(spec: &GroupSpec, cap: usize) -> Result<Group> {
    spec.validate()?;
    if let Some(order) = spec.expected_order() {
        if order > cap {
            return Err(Error::CapExceeded { cap });
        }
    } else {
        return Err(Error::CapExceeded { cap });
    }
    let g = realize(spec, cap)?;
    debug_assert_eq!(Some(g.order()), spec.expected_order());
    Ok(g.with_name(spec.to_string()))
}

fn realize(spec: &GroupSpec, cap: usize) -> Result<Group> {
    let cycle = |n: usize, points: &[usize]| -> Permutation {
        Permutation::from_cycles(n, &[points.to_vec()]).expect("valid cycle")
    };
    let closure = |gens: Vec<Permutation>| Group::closure(&gens, cap);
    match spec {
        GroupSpec::Cyclic(n) => Ok(closure(vec![cyclic_generator(*n)])?),
        GroupSpec::Abelian(ns) => {
            let degree: usize = ns.iter().map(|&n| if n == 1 { 0 } else { n }).sum::<usize>().max(1);
            let mut offset = 0;
            let mut gens = Vec::new();
            for &n in ns {
                if n == 1 {
                    gens.push(Permutation::identity(degree));
                } else {
                    let pts: Vec<usize> = (offset + 1..=offset + n).collect();
                    gens.push(cycle(degree, &pts));
                    offset += n;
                }
            }
            closure(gens)
        }
        GroupSpec::Dihedral(m) => {
            let n = m / 2;
            match n {
                1 => closure(vec![Permutation::identity(2), cycle(2, &[1, 2])]),
                2 => closure(vec![cycle(4, &[1, 2]), cycle(4, &[3, 4])]),
                _ => {
                    let r = cycle(n, &(1..=n).collect::<Vec<_>>());
                    let mut images = vec![1usize];
                    images.extend((2..=n).map(|i| n + 2 - i));
                    let s = Permutation::from_images(&images)?;
                    closure(vec![r, s])
                }
            }
        }
        GroupSpec::Dicyclic(m) => {
            let table = dicyclic_table(m / 4);
            // a = a^1 x^0 at index 1, x = a^0 x^1 at index 2n
            Ok(Group::from_table_with_generators(&table, &[1, m / 2]))
        }
        GroupSpec::Symmetric(n) => match n {
            1 => closure(vec![Permutation::identity(1)]),
            2 => closure(vec![cycle(2, &[1, 2])]),
            _ => closure(vec![cycle(*n, &(1..=*n).collect::<Vec<_>>()), cycle(*n, &[1, 2])]),
        },
        GroupSpec::Alternating(n) => match n {
            1 | 2 => closure(vec![Permutation::identity(*n)]),
            3 => closure(vec![cycle(3, &[1, 2, 3])]),
            _ => {
                let long: Vec<usize> = if n % 2 == 1 { (1..=*n).collect() } else { (2..=*n).collect() };
                closure(vec![cycle(*n, &[1, 2, 3]), cycle(*n, &long)])
            }
        },
        GroupSpec::Sl23 => closure(vec![f3_matrix([[0, 2], [1, 0]]), f3_matrix([[1, 1], [0, 1]])]),
        GroupSpec::Gl23 => closure(vec![
            f3_matrix([[0, 2], [1, 0]]),
            f3_matrix([[1, 1], [0, 1]]),
            f3_matrix([[2, 0], [0, 1]]),
        ]),
        GroupSpec::DirectProduct(a, b) => {
            let ga = realize(a, cap)?;
            let gb = realize(b, cap)?;
            let (da, db) = (ga.degree(), gb.degree());
            let shift = |g: &Permutation, offset: usize| -> Permutation {
                let mut images: Vec<usize> = (1..=da + db).collect();
                for p in 1..=g.degree() {
                    images[offset + p - 1] = offset + g.image(p);
                }
                Permutation::from_images(&images).expect("shifted permutation")
            };
            let mut gens: Vec<Permutation> = ga.generators().map(|g| shift(g, 0)).collect();
            gens.extend(gb.generators().map(|g| shift(g, da)));
            closure(gens)
        }
        GroupSpec::Semidirect {
            normal,
            acting,
            action,
        } => semidirect(&realize(normal, cap)?, &realize(acting, cap)?, action, cap),
    }
}

fn cyclic_generator(n: usize) -> Permutation {
    if n == 1 {
        Permutation::identity(1)
    } else {
        Permutation::from_cycles(n, &[(1..=n).collect()]).expect("valid cycle")
    }
}

/// `a^i x^j` stored at index `j·2n + i`.
fn dicyclic_table(n: usize) -> MulTable {
    let m = 2 * n;
    let size = 2 * m;
    let idx = |i: usize, j: usize| j * m + i;
    let mut t = vec![0u32; size * size];
    for j1 in 0..2 {
        for i1 in 0..m {
            for j2 in 0..2 {
                for i2 in 0..m {
                    // a^i1 x^j1 · a^i2 x^j2 = a^(i1 ± i2) x^(j1 + j2), x² = a^n
                    let i2s = if j1 == 1 { (m - i2) % m } else { i2 };
                    let mut i = (i1 + i2s) % m;
                    let mut j = j1 + j2;
                    if j == 2 {
                        j = 0;
                        i = (i + n) % m;
                    }
                    t[idx(i1, j1) * size + idx(i2, j2)] = idx(i, j) as u32;
                }
            }
        }
    }
    MulTable::from_raw(size, t)
}

/// 2×2 matrix over F3 acting on the 8 nonzero column vectors.
fn f3_matrix(m: [[usize; 2]; 2]) -> Permutation {
    let vectors: Vec<(usize, usize)> = (0..3)
        .flat_map(|x| (0..3).map(move |y| (x, y)))
        .filter(|&v| v != (0, 0))
        .collect();
    let images: Vec<usize> = vectors
        .iter()
        .map(|&(x, y)| {
            let v = ((m[0][0] * x + m[0][1] * y) % 3, (m[1][0] * x + m[1][1] * y) % 3);
            vectors.iter().position(|&w| w == v).unwrap() + 1
        })
        .collect();
    Permutation::from_images(&images).expect("invertible matrix")
}

/// Element `g1^e1 ··· gr^er` of a table, exponents taken modulo the
/// generator orders.
fn power_product(t: &MulTable, gens: &[usize], exps: &[i64]) -> usize {
    let mut acc = 0;
    for (&g, &e) in gens.iter().zip(exps) {
        let o = t.element_order(g) as i64;
        let k = e.rem_euclid(o) as u64;
        acc = t.mul(acc, t.pow(g, k));
    }
    acc
}

/// Extends generator images to a map on all of the group, failing if the
/// images do not define an automorphism.
fn extend_automorphism(t: &MulTable, gens: &[usize], images: &[usize]) -> Result<Vec<usize>> {
    let n = t.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&g, &img) in gens.iter().zip(images) {
            let y = t.mul(x, g);
            let fy = t.mul(map[x], img);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return Err(Error::InvalidAction(
                    "generator images do not extend to a homomorphism".into(),
                ));
            }
        }
    }
    let mut hit = vec![false; n];
    for &v in &map {
        if v == usize::MAX || std::mem::replace(&mut hit[v], true) {
            return Err(Error::InvalidAction("action is not bijective".into()));
        }
    }
    Ok(map)
}

fn semidirect(normal: &Group, acting: &Group, action: &[Automorphism], cap: usize) -> Result<Group> {
    let tn = normal.multiplication_table();
    let ta = acting.multiplication_table();
    let ngens = normal.generator_positions().to_vec();
    let agens = acting.generator_positions().to_vec();
    if action.len() != agens.len() {
        return Err(Error::InvalidAction(format!(
            "{} automorphisms given for {} acting generators",
            action.len(),
            agens.len()
        )));
    }
    let (nn, na) = (tn.order(), ta.order());
    if nn * na > cap {
        return Err(Error::CapExceeded { cap });
    }
    let mut gen_autos = Vec::new();
    for auto in action {
        if auto.images.len() != ngens.len() || auto.images.iter().any(|r| r.len() != ngens.len()) {
            return Err(Error::InvalidAction(format!(
                "each automorphism needs {} rows of {} exponents",
                ngens.len(),
                ngens.len()
            )));
        }
        let images: Vec<usize> = auto.images.iter().map(|r| power_product(&tn, &ngens, r)).collect();
        gen_autos.push(extend_automorphism(&tn, &ngens, &images)?);
    }
    // a ↦ φ_a on all of the acting group; φ_{ab} = φ_a ∘ φ_b
    let mut phi: Vec<Option<Vec<usize>>> = vec![None; na];
    phi[0] = Some((0..nn).collect());
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let a = queue[i];
        i += 1;
        for (&g, auto) in agens.iter().zip(&gen_autos) {
            let b = ta.mul(a, g);
            let pa = phi[a].as_ref().unwrap();
            let composed: Vec<usize> = (0..nn).map(|x| pa[auto[x]]).collect();
            match &phi[b] {
                None => {
                    phi[b] = Some(composed);
                    queue.push(b);
                }
                Some(existing) if *existing != composed => {
                    return Err(Error::InvalidAction(
                        "action is not a homomorphism from the acting group".into(),
                    ))
                }
                Some(_) => {}
            }
        }
    }
    let phi: Vec<Vec<usize>> = phi.into_iter().map(|p| p.expect("acting group is generated")).collect();
    // (n, a) at index a·|N| + n; (n1,a1)(n2,a2) = (n1·φ_{a1}(n2), a1·a2)
    let size = nn * na;
    let mut t = vec![0u32; size * size];
    for a1 in 0..na {
        for n1 in 0..nn {
            let row = (a1 * nn + n1) * size;
            for a2 in 0..na {
                let a = ta.mul(a1, a2);
                for n2 in 0..nn {
                    let n = tn.mul(n1, phi[a1][n2]);
                    t[row + a2 * nn + n2] = (a * nn + n) as u32;
                }
            }
        }
    }
    let table = MulTable::from_raw(size, t);
    let mut gens: Vec<usize> = ngens.clone();
    gens.extend(agens.iter().map(|&a| a * nn));
    Ok(Group::from_table_with_generators(&table, &gens))
}

/// `D8 × C2^k`, order `2^(k+3)`, the family with `|G| = 8Δ(G)`.
pub fn d8_c2k_spec(k: usize) -> GroupSpec {
    if k == 0 {
        GroupSpec::Dihedral(8)
    } else {
        GroupSpec::direct(GroupSpec::Abelian(vec![2; k]), GroupSpec::Dihedral(8))
    }
}

pub fn build_d8_c2k(k: usize) -> Result<Group> {
    if k > 40 {
        return Err(Error::CapExceeded { cap: closure_cap() });
    }
    build(&d8_c2k_spec(k))
}

/// One row of the small-Δ tables: a spec, its library id and its Δ.
#[derive(Clone, Debug)]
pub struct FamilyEntry {
    pub spec: GroupSpec,
    pub id: GroupId,
    pub delta: u64,
}

fn gid(order: usize, index: usize) -> GroupId {
    GroupId { order, index }
}

/// Specs for every group with `1 <= Δ <= 5`.
pub fn family_specs() -> Vec<FamilyEntry> {
    use GroupSpec::*;
    let c = Cyclic;
    let e = |spec: GroupSpec, order: usize, index: usize, delta: u64| FamilyEntry {
        spec,
        id: gid(order, index),
        delta,
    };
    vec![
        e(c(3), 3, 1, 1),
        e(c(4), 4, 1, 1),
        e(Symmetric(3), 6, 1, 1),
        e(Dihedral(8), 8, 3, 1),
        e(c(6), 6, 2, 2),
        e(Abelian(vec![4, 2]), 8, 2, 2),
        e(Dihedral(12), 12, 4, 2),
        e(GroupSpec::direct(c(2), Dihedral(8)), 16, 11, 2),
        e(c(5), 5, 1, 3),
        e(Dicyclic(8), 8, 4, 3),
        e(Dihedral(10), 10, 1, 3),
        e(c(8), 8, 1, 4),
        e(Abelian(vec![3, 3]), 9, 2, 4),
        e(Alternating(4), 12, 3, 4),
        e(Abelian(vec![6, 2]), 12, 5, 4),
        // a ↦ ab, b ↦ b
        e(
            GroupSpec::semidirect(Abelian(vec![4, 2]), c(2), vec![Automorphism::matrix(&[&[1, 1], &[0, 1]])]),
            16,
            3,
            4,
        ),
        e(Dihedral(16), 16, 7, 4),
        e(Abelian(vec![4, 2, 2]), 16, 10, 4),
        // a ↦ a, b ↦ a²b
        e(
            GroupSpec::semidirect(Abelian(vec![4, 2]), c(2), vec![Automorphism::matrix(&[&[1, 0], &[2, 1]])]),
            16,
            13,
            4,
        ),
        e(
            GroupSpec::semidirect(Abelian(vec![3, 3]), c(2), vec![Automorphism::matrix(&[&[2, 0], &[0, 2]])]),
            18,
            4,
            4,
        ),
        e(GroupSpec::direct(Abelian(vec![2, 2]), Symmetric(3)), 24, 14, 4),
        e(GroupSpec::direct(Abelian(vec![2, 2]), Dihedral(8)), 32, 46, 4),
        e(c(7), 7, 1, 5),
        e(GroupSpec::semidirect(c(3), c(4), vec![Automorphism::power(2)]), 12, 1, 5),
        e(Dihedral(14), 14, 1, 5),
    ]
}

/// All 25 groups with `1 <= Δ <= 5`, built from specs and paired with their Δ.
pub fn family_suite() -> Result<Vec<(Group, u64)>> {
    family_specs()
        .into_iter()
        .map(|e| Ok((build(&e.spec)?.with_id(e.id)?, e.delta)))
        .collect()
}

/// Builds and returns `(group, Δ)`; convenience for the CLI.
pub fn build_with_delta(spec: &GroupSpec) -> Result<(Group, u64)> {
    let g = build(spec)?;
    let d = delta(&g)?;
    Ok((g, d))
}

// ---------------------------------------------------------------------------
// Spec expressions
//
//   expr    := term ('x' term)*
//   term    := primary (':' primary action)*
//   primary := '(' expr ')' | atom ('^' int)?
//   atom    := C<n> | D<n> | Q<n> | QD<n> | S<n> | A<n> | SL(2,3) | GL(2,3)
//   action  := '@' int | '@' matrix+        matrix := '[' row (';' row)* ']'
//   row     := int (',' int)*
//
// `Cn^k` is the k-fold power; `@k` means x ↦ x^k on a one-generator normal part.

struct SpecParser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> SpecParser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::InvalidSpec(format!("{msg} at column {}", self.i + 1)))
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.ws();
        if self.s[self.i..].starts_with(lit.as_bytes()) {
            self.i += lit.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.ws();
        let start = self.i;
        if self.i < self.s.len() && self.s[self.i] == b'-' {
            self.i += 1;
        }
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[start..self.i])
            .unwrap()
            .parse()
            .or_else(|_| {
                self.i = start;
                self.err("expected an integer")
            })
    }

    fn size(&mut self) -> Result<usize> {
        let v = self.int()?;
        if v < 1 {
            return self.err("sizes must be positive");
        }
        Ok(v as usize)
    }

    fn expr(&mut self) -> Result<GroupSpec> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'x') {
            self.i += 1;
            let rhs = self.term()?;
            acc = match (acc, rhs) {
                (GroupSpec::Cyclic(a), GroupSpec::Cyclic(b)) => GroupSpec::Abelian(vec![a, b]),
                (GroupSpec::Abelian(mut a), GroupSpec::Cyclic(b)) => {
                    a.push(b);
                    GroupSpec::Abelian(a)
                }
                (GroupSpec::Cyclic(a), GroupSpec::Abelian(b)) => {
                    GroupSpec::Abelian(std::iter::once(a).chain(b).collect())
                }
                (GroupSpec::Abelian(mut a), GroupSpec::Abelian(b)) => {
                    a.extend(b);
                    GroupSpec::Abelian(a)
                }
                (a, b) => GroupSpec::direct(a, b),
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GroupSpec> {
        let mut acc = self.primary()?;
        while self.peek() == Some(b':') {
            self.i += 1;
            let acting = self.primary()?;
            if !self.eat("@") {
                return self.err("semidirect product needs an action '@...'");
            }
            let mut action = Vec::new();
            if self.peek() == Some(b'[') {
                while self.eat("[") {
                    let mut rows = Vec::new();
                    loop {
                        let mut row = vec![self.int()?];
                        while self.eat(",") {
                            row.push(self.int()?);
                        }
                        rows.push(row);
                        if self.eat("]") {
                            break;
                        }
                        if !self.eat(";") {
                            return self.err("expected ';' or ']'");
                        }
                    }
                    action.push(Automorphism { images: rows });
                }
            } else {
                action.push(Automorphism::power(self.int()?));
            }
            acc = GroupSpec::semidirect(acc, acting, action);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<GroupSpec> {
        if self.eat("(") {
            let e = self.expr()?;
            if !self.eat(")") {
                return self.err("expected ')'");
            }
            return Ok(e);
        }
        let atom = if self.eat("SL(2,3)") {
            GroupSpec::Sl23
        } else if self.eat("GL(2,3)") {
            GroupSpec::Gl23
        } else if self.eat("QD") {
            let n = self.size()?;
            if n < 16 || !n.is_power_of_two() {
                return self.err("semidihedral order must be a power of two, at least 16");
            }
            GroupSpec::semidihedral(n)
        } else {
            match self.peek() {
                Some(b'C') => {
                    self.i += 1;
                    GroupSpec::Cyclic(self.size()?)
                }
                Some(b'D') => {
                    self.i += 1;
                    GroupSpec::Dihedral(self.size()?)
                }
                Some(b'Q') => {
                    self.i += 1;
                    GroupSpec::Dicyclic(self.size()?)
                }
                Some(b'S') => {
                    self.i += 1;
                    GroupSpec::Symmetric(self.size()?)
                }
                Some(b'A') => {
                    self.i += 1;
                    GroupSpec::Alternating(self.size()?)
                }
                _ => return self.err("expected a group"),
            }
        };
        if self.eat("^") {
            let k = self.size()?;
            return Ok(match atom {
                GroupSpec::Cyclic(n) => GroupSpec::Abelian(vec![n; k]),
                other => {
                    let mut acc = other.clone();
                    for _ in 1..k {
                        acc = GroupSpec::direct(acc, other.clone());
                    }
                    acc
                }
            });
        }
        Ok(atom)
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupSpec> {
        let mut p = SpecParser { s: s.as_bytes(), i: 0 };
        let spec = p.expr()?;
        if p.peek().is_some() {
            return p.err("unexpected trailing input");
        }
        spec.validate()?;
        Ok(spec)
    }
}
