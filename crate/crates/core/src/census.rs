//! The Δ census over a catalog and the group-by-group checks of the bound
//! `|G| <= 8Δ`, Miller's involution bound and the totient identities.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, CatalogEntry};
use crate::constructors::build_d8_c2k;
use crate::error::Result;
use crate::group::{Group, GroupId};
use crate::invariants::{order_census, DeltaReport, StarIdentity};
use crate::iso::IsoData;

/// One catalog group with its invariants.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupRecord {
    pub id: GroupId,
    pub name: String,
    pub report: DeltaReport,
    pub star: StarIdentity,
    #[serde(skip)]
    pub group: Option<Group>,
}

impl GroupRecord {
    pub fn from_entry(entry: &CatalogEntry) -> Result<GroupRecord> {
        GroupRecord::from_group(entry.group()?, entry.id(), entry.name.clone())
    }

    pub fn from_group(group: Group, id: GroupId, name: String) -> Result<GroupRecord> {
        let census = order_census(&group);
        Ok(GroupRecord {
            id,
            name,
            report: DeltaReport::from_census(&census)?,
            star: census.star_identity()?,
            group: Some(group),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Completeness {
    /// Every order up to `8δ` is covered exhaustively by the catalog.
    Complete,
    Partial,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusResult {
    pub delta_max: u64,
    /// δ → groups with `Δ = δ`, sorted by id. Holds every `1..=delta_max`.
    pub per_delta: BTreeMap<u64, Vec<GroupRecord>>,
    pub completeness: BTreeMap<u64, Completeness>,
    /// Elementary abelian 2-groups of order at most `8·delta_max`.
    pub delta_zero: Vec<GroupRecord>,
    /// Largest `n` with every order `1..=n` complete in the catalog.
    pub complete_through: usize,
}

/// Records for every catalog entry of order at most `max_order`, in
/// catalog id order.
pub fn survey(catalog: &Catalog, max_order: Option<usize>) -> Result<Vec<GroupRecord>> {
    let mut records = catalog
        .entries
        .par_iter()
        .filter(|e| max_order.is_none_or(|m| e.order <= m))
        .map(GroupRecord::from_entry)
        .collect::<Result<Vec<_>>>()?;
    records.sort_by_key(|r| r.id);
    Ok(records)
}

/// Buckets every catalog group of order at most `8·delta_max` by Δ.
pub fn run_census(catalog: &Catalog, delta_max: u64) -> Result<CensusResult> {
    let bound = 8 * delta_max as usize;
    let records = survey(catalog, Some(bound))?;
    let mut per_delta: BTreeMap<u64, Vec<GroupRecord>> = (1..=delta_max).map(|d| (d, Vec::new())).collect();
    let mut delta_zero = Vec::new();
    for r in records {
        match r.report.delta {
            0 => delta_zero.push(r),
            d if d <= delta_max => per_delta.get_mut(&d).unwrap().push(r),
            _ => {}
        }
    }
    let complete_through = (1..).take_while(|o| catalog.complete_orders.contains(o)).last().unwrap_or(0);
    let completeness = (1..=delta_max)
        .map(|d| {
            let c = if complete_through >= 8 * d as usize {
                Completeness::Complete
            } else {
                Completeness::Partial
            };
            (d, c)
        })
        .collect();
    Ok(CensusResult {
        delta_max,
        per_delta,
        completeness,
        delta_zero,
        complete_through,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `|G| > 8Δ` with `Δ > 0`.
    BoundExceeded { id: GroupId, order: usize, delta: u64 },
    /// `|G| = 8Δ` but `G` is not `D8 x C2^k`.
    EqualityOutsideFamily { id: GroupId, delta: u64 },
    /// Listed under a δ that differs from its recomputed Δ.
    WrongBucket { id: GroupId, bucket: u64, actual: u64 },
    /// `4·i₂ > 3|G|` for a group that is not elementary abelian.
    MillerExceeded { id: GroupId, order: usize, i2: u64 },
    /// `4·i₂ = 3|G|` but `G` is not `D8 x C2^k`.
    MillerEqualityOutsideFamily { id: GroupId },
    /// One of the totient identities fails.
    StarIdentity { id: GroupId, identity: StarIdentity },
    /// `Δ < |C(G)| - i₂` although `Δ > 0`.
    InvolutionChain { id: GroupId, delta: u64, cyclic_count: u64, i2: u64 },
    /// The element census is inconsistent (a broken closure).
    Census { id: GroupId, message: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BoundExceeded { id, order, delta } => {
                write!(f, "{id}: order {order} exceeds 8 x delta = {}", 8 * delta)
            }
            Violation::EqualityOutsideFamily { id, delta } => {
                write!(f, "{id}: order equals 8 x {delta} but the group is not D8 x C2^k")
            }
            Violation::WrongBucket { id, bucket, actual } => {
                write!(f, "{id}: listed with difference {bucket}, recomputed {actual}")
            }
            Violation::MillerExceeded { id, order, i2 } => {
                write!(f, "{id}: {i2} elements of order at most 2 exceed 3/4 of {order}")
            }
            Violation::MillerEqualityOutsideFamily { id } => {
                write!(f, "{id}: i2 = 3|G|/4 but the group is not D8 x C2^k")
            }
            Violation::StarIdentity { id, identity } => write!(
                f,
                "{id}: totient identities fail (sum n_d phi(d) = {}, |G| = {}, deficiency sum = {}, |C(G)| = {})",
                identity.generator_sum, identity.group_order, identity.deficiency_sum, identity.cyclic_count
            ),
            Violation::InvolutionChain {
                id,
                delta,
                cyclic_count,
                i2,
            } => write!(f, "{id}: delta {delta} < |C(G)| - i2 = {cyclic_count} - {i2}"),
            Violation::Census { id, message } => write!(f, "{id}: {message}"),
        }
    }
}

/// Memoized `D8 x C2^k` reference groups for equality checks.
#[derive(Default)]
pub struct EqualityFamily {
    cache: Mutex<HashMap<usize, IsoData>>,
}

impl EqualityFamily {
    /// Whether `g` is isomorphic to `D8 x C2^k` for some `k`.
    pub fn contains(&self, g: &Group) -> bool {
        let n = g.order();
        if n < 8 || !n.is_power_of_two() {
            return false;
        }
        let k = n.trailing_zeros() as usize - 3;
        let reference = {
            let mut cache = self.cache.lock().unwrap();
            cache
                .entry(k)
                .or_insert_with(|| IsoData::from_group(&build_d8_c2k(k).expect("D8 x C2^k fits the cap")))
                .clone()
        };
        reference.is_isomorphic(&IsoData::from_group(g))
    }
}

fn recompute(r: &GroupRecord) -> std::result::Result<DeltaReport, Violation> {
    match &r.group {
        Some(g) => DeltaReport::compute(g).map_err(|e| Violation::Census {
            id: r.id,
            message: e.to_string(),
        }),
        None => Ok(r.report),
    }
}

fn bound_checks(r: &GroupRecord, bucket: Option<u64>, family: &EqualityFamily) -> Vec<Violation> {
    let report = match recompute(r) {
        Ok(rep) => rep,
        Err(v) => return vec![v],
    };
    let mut out = Vec::new();
    if let Some(b) = bucket {
        if b != report.delta {
            out.push(Violation::WrongBucket {
                id: r.id,
                bucket: b,
                actual: report.delta,
            });
        }
    }
    let delta = report.delta;
    if delta == 0 {
        return out;
    }
    let order = report.group_order as usize;
    if order as u64 > 8 * delta {
        out.push(Violation::BoundExceeded { id: r.id, order, delta });
    } else if order as u64 == 8 * delta {
        let in_family = delta.is_power_of_two() && r.group.as_ref().is_some_and(|g| family.contains(g));
        if !in_family {
            out.push(Violation::EqualityOutsideFamily { id: r.id, delta });
        }
    }
    out
}

/// Checks every bucketed group: its Δ is the bucket's, `|G| <= 8Δ`, and
/// every equality case is `D8 x C2^k`.
pub fn verify_bound(result: &CensusResult) -> Vec<Violation> {
    let family = EqualityFamily::default();
    let items: Vec<(u64, &GroupRecord)> = result
        .per_delta
        .iter()
        .flat_map(|(&d, rs)| rs.iter().map(move |r| (d, r)))
        .collect();
    items
        .par_iter()
        .flat_map_iter(|&(d, r)| bound_checks(r, Some(d), &family))
        .collect()
}

/// The bound check on arbitrary records (no bucket assignment).
pub fn verify_bound_records(records: &[GroupRecord]) -> Vec<Violation> {
    let family = EqualityFamily::default();
    records
        .par_iter()
        .flat_map_iter(|r| bound_checks(r, None, &family))
        .collect()
}

/// `i₂ <= 3|G|/4` for every non-elementary-abelian record, with equality
/// only for `D8 x C2^k`.
pub fn verify_miller_records(records: &[GroupRecord]) -> Vec<Violation> {
    let family = EqualityFamily::default();
    records
        .par_iter()
        .filter(|r| !r.report.is_elementary_abelian_2())
        .filter_map(|r| {
            if !r.report.miller_ok() {
                Some(Violation::MillerExceeded {
                    id: r.id,
                    order: r.report.group_order as usize,
                    i2: r.report.i2,
                })
            } else if r.report.miller_equality() && !r.group.as_ref().is_some_and(|g| family.contains(g)) {
                Some(Violation::MillerEqualityOutsideFamily { id: r.id })
            } else {
                None
            }
        })
        .collect()
}

pub fn verify_miller(catalog: &Catalog) -> Result<Vec<Violation>> {
    Ok(verify_miller_records(&survey(catalog, None)?))
}

/// Both totient identities and the involution inequality
/// `Δ >= |C(G)| - i₂` for groups with `Δ > 0`.
pub fn verify_star_records(records: &[GroupRecord]) -> Vec<Violation> {
    let mut out = Vec::new();
    for r in records {
        if !r.star.holds() || r.star.deficiency_sum != r.report.delta {
            out.push(Violation::StarIdentity {
                id: r.id,
                identity: r.star,
            });
        }
        let rep = &r.report;
        if rep.delta > 0 && rep.delta + rep.i2 < rep.cyclic_count {
            out.push(Violation::InvolutionChain {
                id: r.id,
                delta: rep.delta,
                cyclic_count: rep.cyclic_count,
                i2: rep.i2,
            });
        }
    }
    out
}

/// Everything `verify` checks, over the whole catalog.
#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub groups: usize,
    pub bound: Vec<Violation>,
    pub miller: Vec<Violation>,
    pub star: Vec<Violation>,
    /// Ids of groups with `|G| = 8Δ`.
    pub equality_cases: Vec<GroupId>,
    /// Ids of groups with `i₂ = 3|G|/4`.
    pub miller_equality_cases: Vec<GroupId>,
}

impl VerifyReport {
    pub fn is_clean(&self) -> bool {
        self.bound.is_empty() && self.miller.is_empty() && self.star.is_empty()
    }
}

pub fn verify_catalog(catalog: &Catalog) -> Result<VerifyReport> {
    let records = survey(catalog, None)?;
    Ok(VerifyReport {
        groups: records.len(),
        bound: verify_bound_records(&records),
        miller: verify_miller_records(&records),
        star: verify_star_records(&records),
        equality_cases: records.iter().filter(|r| r.report.equality_case).map(|r| r.id).collect(),
        miller_equality_cases: records
            .iter()
            .filter(|r| !r.report.is_elementary_abelian_2() && r.report.miller_equality())
            .map(|r| r.id)
            .collect(),
    })
}
