//! Finite `E`-Ehresmann semigroups and their Ehresmann categories.
//!
//! Given a finite semigroup `S` as a multiplication table and a
//! subsemilattice `E`, this crate derives `⁺`, `*` and the natural orders,
//! builds the Ehresmann category `C(S)`, and checks exactly (over `ℚ`)
//! whether the Möbius map `ℚS → ℚC(S)` is an algebra isomorphism. It also
//! computes `Reg_E(S)`, the EI property and Jacobson radicals.
//!
//! ```
//! use ehresmann::{algebra::verify_isomorphism, zoo, Order};
//!
//! let pt2 = zoo::pt_n(2).unwrap();
//! assert!(pt2.is_left_restriction());
//! let report = verify_isomorphism(&pt2, Order::Right, 1).unwrap();
//! assert!(report.passed());
//! assert_eq!(report.pairs_checked, 81);
//! ```

pub mod algebra;
pub mod category;
pub mod ehresmann;
pub mod interchange;
pub mod linalg;
pub mod partition;
pub mod poset;
pub mod radical;
pub mod relation;
pub mod rep;
pub mod report;
pub mod semigroup;
pub mod zoo;

/// Exact rationals used for every algebra coefficient.
pub type Rational = num_rational::BigRational;

pub use category::{build_category, EhresmannCategory};
pub use ehresmann::{derive_structure, EhresmannStructure, Order};
pub use poset::FinitePoset;
pub use relation::Relation;
pub use report::VerificationReport;
pub use semigroup::FiniteSemigroup;
