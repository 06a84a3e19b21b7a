//! Finite-ring workbench: build rings as operation tables, decide stable
//! range one, unit lifting modulo principal ideals, direct finiteness,
//! quasi-morphic and uniquely generated, and cross-check the implications
//! between them exhaustively.

pub mod budget;
pub mod enumerate;
pub mod error;
pub mod iso;
pub mod properties;
pub mod ring;
pub mod spec;
pub mod subsets;
pub mod theorems;
pub mod validate;
pub mod zint;

pub use budget::{Deadline, Timeout};
pub use error::{Result, RingError};
pub use iso::{canonical_form, isomorphic};
pub use properties::{evaluate, replay, Property, PropertyResult, Witness};
pub use ring::{Elem, FiniteRing, Side};
pub use spec::{construct, construct_with_cap, RingSpec};
pub use subsets::{annihilator, principal, units, ElementSubset, UnitKind};
pub use theorems::{run_suite, Catalog, Check, SuiteOptions, SuiteReport, TheoremReport, Verdict};
pub use validate::{validate, Axiom, ValidationReport};
