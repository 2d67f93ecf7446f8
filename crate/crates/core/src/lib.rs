//! Cyclic-subgroup deficiency of finite groups.
//!
//! For a finite group `G` with set of cyclic subgroups `C(G)`, the
//! deficiency is `Δ(G) = |G| - |C(G)|`. It vanishes exactly on elementary
//! abelian 2-groups, and whenever `Δ(G) > 0` one has `|G| <= 8Δ(G)`, with
//! equality only for `D8 x C2^k`. This crate computes `Δ` and related
//! invariants for permutation groups, builds the standard small families,
//! tests isomorphism, reads and validates small-group catalogs, and runs
//! the per-`δ` census over a catalog.
//!
//! ```
//! use deltagroup::{constructors::build, invariants::delta};
//!
//! let d8 = build(&"D8".parse().unwrap()).unwrap();
//! assert_eq!(delta(&d8).unwrap(), 1);
//! ```

pub mod catalog;
pub mod census;
pub mod constructors;
pub mod error;
pub mod group;
pub mod invariants;
pub mod iso;
pub mod oracle;
pub mod perm;
pub mod report;
pub mod table;

pub use error::{Error, Result};
pub use group::{Group, GroupId};
pub use perm::Permutation;
