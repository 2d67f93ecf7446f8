use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use super::Catalog;
use crate::group::{Group, GroupId};
use crate::iso::IsoData;
use crate::oracle;

/// Number of groups of each order `1..=256`, index `n - 1`.
const KNOWN_COUNTS: [u32; 256] = [
    1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15, 2, 2, 5, 4, 1, 4, 1, 51, 1, 2, 1,
    14, 1, 2, 2, 14, 1, 6, 1, 4, 2, 2, 1, 52, 2, 5, 1, 5, 1, 15, 2, 13, 2, 2, 1, 13, 1, 2, 4, 267, 1, 4, 1, 5,
    1, 4, 1, 50, 1, 2, 3, 4, 1, 6, 1, 52, 15, 2, 1, 15, 1, 2, 1, 12, 1, 10, 1, 4, 2, 2, 1, 231, 1, 5, 2, 16, 1,
    4, 1, 14, 2, 2, 1, 45, 1, 6, 2, 43, 1, 6, 1, 5, 4, 2, 1, 47, 2, 2, 1, 4, 5, 16, 1, 2328, 2, 4, 1, 10, 1, 2,
    5, 15, 1, 4, 1, 11, 1, 2, 1, 197, 1, 2, 6, 5, 1, 13, 1, 12, 2, 4, 2, 18, 1, 2, 1, 238, 1, 55, 1, 5, 2, 2,
    1, 57, 2, 4, 5, 4, 1, 4, 2, 42, 1, 2, 1, 37, 1, 4, 2, 12, 1, 6, 1, 4, 13, 4, 1, 1543, 1, 2, 2, 12, 1, 10,
    1, 52, 2, 2, 2, 12, 2, 2, 2, 51, 1, 12, 1, 5, 1, 2, 1, 177, 1, 2, 2, 15, 1, 6, 1, 197, 6, 2, 1, 15, 1, 4,
    2, 14, 1, 16, 1, 4, 2, 4, 1, 208, 1, 5, 67, 5, 2, 4, 1, 12, 1, 15, 1, 46, 2, 2, 1, 56092,
];

/// Largest order covered by [`known_group_count`].
pub const KNOWN_COUNTS_MAX: usize = KNOWN_COUNTS.len();

/// Number of isomorphism classes of groups of order `n`, for `1 <= n <= 256`.
pub fn known_group_count(n: usize) -> Option<usize> {
    n.checked_sub(1)
        .and_then(|i| KNOWN_COUNTS.get(i))
        .map(|&c| c as usize)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagnosticKind {
    /// The generators could not be closed (cap exceeded, bad degree).
    ClosureFailed(String),
    /// The generators close to a group of the wrong order.
    OrderMismatch { expected: usize, actual: usize },
    /// Isomorphic to an earlier entry of the same order.
    DuplicateClass { first: GroupId },
    /// A complete order lists the wrong number of classes.
    ClassCount { expected: usize, found: usize, source: CountSource },
    /// An exhaustively enumerated class has no isomorphic entry.
    MissingOracleClass { oracle_index: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountSource {
    Oracle,
    Classification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub order: usize,
    /// Entry concerned, if the diagnostic is about a single entry.
    pub id: Option<GroupId>,
    pub kind: DiagnosticKind,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(id) = self.id {
            write!(f, "{id}: ")?;
        } else {
            write!(f, "order {}: ", self.order)?;
        }
        match &self.kind {
            DiagnosticKind::ClosureFailed(m) => write!(f, "closure failed: {m}"),
            DiagnosticKind::OrderMismatch { expected, actual } => {
                write!(f, "generators close to order {actual}, expected {expected}")
            }
            DiagnosticKind::DuplicateClass { first } => write!(f, "isomorphic to {first}"),
            DiagnosticKind::ClassCount {
                expected,
                found,
                source,
            } => {
                let src = match source {
                    CountSource::Oracle => "exhaustive enumeration",
                    CountSource::Classification => "the known classification",
                };
                write!(
                    f,
                    "declared complete with {found} classes, {src} gives {expected}"
                )
            }
            DiagnosticKind::MissingOracleClass { oracle_index } => {
                write!(f, "enumerated class #{} has no isomorphic entry", oracle_index + 1)
            }
        }
    }
}

/// Re-closes every entry, then for each complete order checks that entries
/// are pairwise non-isomorphic and that the class count matches the
/// exhaustive enumeration (orders up to 10) and the known classification.
/// Duplicate classes are reported for every order, complete or not.
pub fn validate_catalog(catalog: &Catalog) -> Vec<Diagnostic> {
    let closed: Vec<Result<Group, Diagnostic>> = catalog
        .entries
        .par_iter()
        .map(|e| {
            let diag = |kind| Diagnostic {
                order: e.order,
                id: Some(e.id()),
                kind,
            };
            let g = Group::closure(&e.generators, crate::group::closure_cap())
                .map_err(|err| diag(DiagnosticKind::ClosureFailed(err.to_string())))?;
            if g.order() != e.order {
                return Err(diag(DiagnosticKind::OrderMismatch {
                    expected: e.order,
                    actual: g.order(),
                }));
            }
            Ok(g)
        })
        .collect();

    let mut diagnostics = Vec::new();
    let mut by_order: std::collections::BTreeMap<usize, Vec<(GroupId, &Group)>> = Default::default();
    for (e, r) in catalog.entries.iter().zip(&closed) {
        match r {
            Ok(g) => by_order.entry(e.order).or_default().push((e.id(), g)),
            Err(d) => diagnostics.push(d.clone()),
        }
    }

    let per_order: Vec<Vec<Diagnostic>> = by_order
        .par_iter()
        .map(|(&order, groups)| check_order(order, groups, catalog.complete_orders.contains(&order)))
        .collect();
    diagnostics.extend(per_order.into_iter().flatten());

    for &order in &catalog.complete_orders {
        if !by_order.contains_key(&order) {
            diagnostics.extend(check_order(order, &[], true));
        }
    }
    diagnostics.sort_by_key(|d| (d.order, d.id));
    diagnostics
}

fn check_order(order: usize, groups: &[(GroupId, &Group)], complete: bool) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let data: Vec<IsoData> = groups.par_iter().map(|(_, g)| IsoData::from_group(g)).collect();
    let mut reps: Vec<usize> = Vec::new();
    for (i, d) in data.iter().enumerate() {
        match reps.iter().find(|&&r| data[r].is_isomorphic(d)) {
            Some(&r) => out.push(Diagnostic {
                order,
                id: Some(groups[i].0),
                kind: DiagnosticKind::DuplicateClass { first: groups[r].0 },
            }),
            None => reps.push(i),
        }
    }
    if !complete {
        return out;
    }
    let found = reps.len();
    if let Some(oracle_groups) = oracle_classes(order) {
        if oracle_groups.len() != found {
            out.push(Diagnostic {
                order,
                id: None,
                kind: DiagnosticKind::ClassCount {
                    expected: oracle_groups.len(),
                    found,
                    source: CountSource::Oracle,
                },
            });
        }
        for (k, od) in oracle_groups.iter().enumerate() {
            if !reps.iter().any(|&r| data[r].is_isomorphic(od)) {
                out.push(Diagnostic {
                    order,
                    id: None,
                    kind: DiagnosticKind::MissingOracleClass { oracle_index: k },
                });
            }
        }
    }
    if let Some(expected) = known_group_count(order) {
        if expected != found {
            out.push(Diagnostic {
                order,
                id: None,
                kind: DiagnosticKind::ClassCount {
                    expected,
                    found,
                    source: CountSource::Classification,
                },
            });
        }
    }
    out
}

/// Exhaustively enumerated classes of `order`, computed once per process.
fn oracle_classes(order: usize) -> Option<Arc<Vec<IsoData>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<IsoData>>>>> = OnceLock::new();
    if order == 0 || order > oracle::MAX_ORDER {
        return None;
    }
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&order) {
        return Some(hit.clone());
    }
    let groups = oracle::enumerate_order(order).ok()?;
    let data = Arc::new(groups.iter().map(IsoData::from_group).collect::<Vec<_>>());
    cache.lock().unwrap().insert(order, data.clone());
    Some(data)
}
