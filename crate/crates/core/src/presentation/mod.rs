//! Finitely presented blueprints.
//!
//! A blueprint is presented by a commutative monoid with zero (generators
//! and monoid relations) and a list of generating pre-addition relations
//! between formal sums. Finite monoids are enumerated exactly; relations
//! are then decided by a bounded congruence search with sound refutations.

mod blueprint;
pub mod congruence;
mod monoid;
mod ring;

pub use blueprint::{
    check_axiom3, f1, f1n, from_monoid, from_ring, galois_action, holds, morphism_check, Axiom3,
    BlueprintMorphismData, BlueprintPresentation, FiniteBlueprint, FormalSum, MorphismViolation, RingTables,
};
pub use congruence::{Bounds, Verdict, DEFAULT_DEGREE, DEFAULT_DEPTH};
pub use monoid::{enumerate_monoid, Divergence, FiniteMonoid, MonoidPresentation, MonoidWord, ZERO};
pub use ring::{
    associated_ring, cyclotomic_polynomial, induced_map_is_well_defined, ring_iso_check, AssociatedRing, QuotientRing,
    RingIso,
};
