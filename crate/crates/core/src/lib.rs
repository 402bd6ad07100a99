//! Finite generalized groups represented as dense Cayley tables.
//!
//! A generalized group is an associative magma in which every element `x`
//! has a unique local identity `e(x)` (with `x e(x) = e(x) x = x`) and an
//! inverse `x⁻¹` with `x x⁻¹ = x⁻¹ x = e(x)`. Finite generalized groups
//! coincide with completely simple semigroups, so the generators here build
//! them as Rees matrix semigroups over small classical groups.
//!
//! The crate is organized bottom-up:
//!
//! * [`table`]: magmas, the JSON document format, primitive property scans.
//! * [`axioms`]: certification of the generalized-group axioms.
//! * [`subgroup`], [`morphism`], [`iso`]: subsets, homomorphisms, kernels,
//!   isomorphism search.
//! * [`construct`], [`bol`]: direct products, quotients, internal direct
//!   products, the Bol product `H × G` and its classifier.
//! * [`generators`]: classical groups, zero semigroups, Rees structures,
//!   exhaustive small-order enumeration.
//! * [`ledger`]: per-theorem verification with hypothesis tracking and
//!   counterexample search.
//!
//! Dense scans run on rayon when the `parallel` feature is enabled (the
//! default); see [`par::Exec`].

pub mod axioms;
pub mod bol;
pub mod construct;
pub mod error;
pub mod generators;
pub mod iso;
pub mod ledger;
pub mod morphism;
pub mod par;
pub mod subgroup;
pub mod table;
pub mod witness;

pub use axioms::{certify, gg_flags, local_identity, Axiom, Diagnostic, Flags, GGCertificate};
pub use bol::{bol_product, classify_bol, BolClass, BolReport};
pub use construct::{direct_product, internal_dp, quotient, CosetFamily, InternalDirectProduct};
pub use error::{Error, Result};
pub use generators::{enumerate_gg, gen_group, gen_rees, gen_zero, Family, ReesSpec, Side};
pub use iso::find_isomorphism;
pub use ledger::{
    search_counterexample, verify, verify_enumerate, verify_on, Inputs, SearchOutcome, TheoremId, VerificationReport,
};
pub use morphism::{
    enumerate_homomorphisms, image_subset, is_homomorphism, is_monomorphism, kernel_at, union_f, Morphism, MorphismDoc,
};
pub use par::Exec;
pub use subgroup::{enumerate_gsubgroups, subgroup_test, Criterion, Subset};
pub use table::{check_property, parse_magma, serialize_magma, FiniteMagma, Property, PropertyResult};
pub use witness::{Witness, WitnessContext, WitnessKind};
