//! Element-order census and the cyclic-subgroup deficiency.
//!
//! Every element generates exactly one cyclic subgroup, and a cyclic
//! subgroup of order `d` has `φ(d)` generators. So if `e_d` elements have
//! order `d`, there are `n_d = e_d / φ(d)` cyclic subgroups of order `d`, and
//!
//! ```text
//! Σ n_d·φ(d)     = |G|
//! Σ n_d·(φ(d)-1) = |G| - |C(G)| = Δ(G)
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Group;

/// Euler's totient.
pub fn euler_phi(d: u64) -> u64 {
    assert!(d >= 1, "phi is defined for positive integers");
    let mut n = d;
    let mut phi = d;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Number of elements of each order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCensus {
    pub counts: BTreeMap<u64, u64>,
}

impl OrderCensus {
    pub fn from_orders(orders: impl IntoIterator<Item = u64>) -> Self {
        let mut counts = BTreeMap::new();
        for o in orders {
            *counts.entry(o).or_insert(0) += 1;
        }
        OrderCensus { counts }
    }

    pub fn group_order(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, d: u64) -> u64 {
        self.counts.get(&d).copied().unwrap_or(0)
    }

    /// `n_d`, the number of cyclic subgroups of order `d`.
    pub fn cyclic_subgroups_of_order(&self, d: u64) -> Result<u64> {
        let e = self.count(d);
        let phi = euler_phi(d);
        if !e.is_multiple_of(phi) {
            return Err(Error::InconsistentCensus {
                order: d,
                count: e,
                phi,
            });
        }
        Ok(e / phi)
    }

    /// `(d, n_d)` for every order present.
    pub fn cyclic_counts(&self) -> Result<Vec<(u64, u64)>> {
        self.counts
            .keys()
            .map(|&d| Ok((d, self.cyclic_subgroups_of_order(d)?)))
            .collect()
    }

    pub fn cyclic_subgroup_count(&self) -> Result<u64> {
        Ok(self.cyclic_counts()?.into_iter().map(|(_, n)| n).sum())
    }

    /// Elements of order at most 2.
    pub fn i2(&self) -> u64 {
        self.count(1) + self.count(2)
    }

    /// Both sides of the totient identities, computed independently.
    pub fn star_identity(&self) -> Result<StarIdentity> {
        let counts = self.cyclic_counts()?;
        let generator_sum = counts.iter().map(|&(d, n)| n * euler_phi(d)).sum();
        let deficiency_sum = counts.iter().map(|&(d, n)| n * (euler_phi(d) - 1)).sum();
        let cyclic_count: u64 = counts.iter().map(|&(_, n)| n).sum();
        Ok(StarIdentity {
            group_order: self.group_order(),
            cyclic_count,
            generator_sum,
            deficiency_sum,
        })
    }
}

/// The two totient identities evaluated on one census.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarIdentity {
    pub group_order: u64,
    pub cyclic_count: u64,
    /// `Σ n_d φ(d)`, which must equal `group_order`.
    pub generator_sum: u64,
    /// `Σ n_d (φ(d) - 1)`, which must equal `group_order - cyclic_count`.
    pub deficiency_sum: u64,
}

impl StarIdentity {
    pub fn holds(&self) -> bool {
        self.generator_sum == self.group_order
            && self.deficiency_sum + self.cyclic_count == self.group_order
    }
}

pub fn order_census(g: &Group) -> OrderCensus {
    OrderCensus::from_orders(g.elements().iter().map(|e| e.order()))
}

pub fn cyclic_subgroup_count(g: &Group) -> Result<u64> {
    order_census(g).cyclic_subgroup_count()
}

/// `Δ(G) = |G| - |C(G)|`.
pub fn delta(g: &Group) -> Result<u64> {
    let census = order_census(g);
    let cyclic = census.cyclic_subgroup_count()?;
    debug_assert_eq!(
        census.star_identity()?.deficiency_sum,
        g.order() as u64 - cyclic
    );
    Ok(g.order() as u64 - cyclic)
}

pub fn i2(g: &Group) -> u64 {
    order_census(g).i2()
}

/// Per-group record for the census.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaReport {
    pub group_order: u64,
    pub cyclic_count: u64,
    pub delta: u64,
    pub i2: u64,
    /// `|G| <= 8Δ`; vacuously true when `Δ = 0`.
    pub bound_ok: bool,
    /// `|G| = 8Δ` with `Δ > 0`.
    pub equality_case: bool,
}

impl DeltaReport {
    pub fn from_census(census: &OrderCensus) -> Result<DeltaReport> {
        let group_order = census.group_order();
        let cyclic_count = census.cyclic_subgroup_count()?;
        let delta = group_order - cyclic_count;
        Ok(DeltaReport {
            group_order,
            cyclic_count,
            delta,
            i2: census.i2(),
            bound_ok: delta == 0 || group_order <= 8 * delta,
            equality_case: delta > 0 && group_order == 8 * delta,
        })
    }

    pub fn compute(g: &Group) -> Result<DeltaReport> {
        DeltaReport::from_census(&order_census(g))
    }

    /// `4·i₂ <= 3·|G|`.
    pub fn miller_ok(&self) -> bool {
        4 * self.i2 <= 3 * self.group_order
    }

    pub fn miller_equality(&self) -> bool {
        4 * self.i2 == 3 * self.group_order
    }

    /// Every element has order at most 2.
    pub fn is_elementary_abelian_2(&self) -> bool {
        self.i2 == self.group_order
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn group(gens: &[&str], n: usize) -> Group {
        let gens: Vec<_> = gens
            .iter()
            .map(|s| s.parse::<Permutation>().unwrap().extend(n))
            .collect();
        Group::closure(&gens, 1000).unwrap()
    }

    fn brute_phi(d: u64) -> u64 {
        (1..=d).filter(|&k| crate::perm::gcd(k, d) == 1).count() as u64
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(2), 1);
        assert_eq!(euler_phi(12), 4);
        for d in 1..=300 {
            assert_eq!(euler_phi(d), brute_phi(d), "d = {d}");
            if d > 2 {
                assert!(euler_phi(d) >= 2);
            }
        }
    }

    #[test]
    fn census_of_small_groups() {
        let c5 = group(&["(1,2,3,4,5)"], 5);
        assert_eq!(order_census(&c5).counts, BTreeMap::from([(1, 1), (5, 4)]));
        assert_eq!(cyclic_subgroup_count(&c5).unwrap(), 2);
        assert_eq!(i2(&c5), 1);

        let d8 = group(&["(1,2,3,4)", "(1,3)"], 4);
        assert_eq!(
            order_census(&d8).counts,
            BTreeMap::from([(1, 1), (2, 5), (4, 2)])
        );
        assert_eq!(cyclic_subgroup_count(&d8).unwrap(), 7);
        assert_eq!(delta(&d8).unwrap(), 1);
        assert_eq!(i2(&d8), 6);

        let klein = group(&["(1,2)", "(3,4)"], 4);
        assert_eq!(order_census(&klein).counts, BTreeMap::from([(1, 1), (2, 3)]));

        let c2_cubed = group(&["(1,2)", "(3,4)", "(5,6)"], 6);
        assert_eq!(cyclic_subgroup_count(&c2_cubed).unwrap(), 8);
        assert_eq!(delta(&c2_cubed).unwrap(), 0);
        assert_eq!(i2(&c2_cubed), 8);
    }

    #[test]
    fn s3_and_q8() {
        let s3 = group(&["(1,2,3)", "(1,2)"], 3);
        assert_eq!(delta(&s3).unwrap(), 1);
        // Q8 as a regular permutation group
        let q8 = group(&["(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)"], 8);
        assert_eq!(q8.order(), 8);
        assert_eq!(delta(&q8).unwrap(), 3);
    }

    #[test]
    fn broken_census_is_detected() {
        let census = OrderCensus::from_orders([1, 3]);
        assert!(matches!(
            census.cyclic_subgroup_count(),
            Err(Error::InconsistentCensus { order: 3, .. })
        ));
    }

    #[test]
    fn report_fields() {
        let d8 = group(&["(1,2,3,4)", "(1,3)"], 4);
        let r = DeltaReport::compute(&d8).unwrap();
        assert_eq!(
            r,
            DeltaReport {
                group_order: 8,
                cyclic_count: 7,
                delta: 1,
                i2: 6,
                bound_ok: true,
                equality_case: true
            }
        );
        assert!(r.miller_equality());
        let s = order_census(&d8).star_identity().unwrap();
        assert!(s.holds());
        assert_eq!((s.generator_sum, s.deficiency_sum), (8, 1));
    }
}
