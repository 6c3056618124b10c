//! Blueprint algebra and the compactified arithmetic curve.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * finitely presented blueprints, the congruence engine deciding
//!   pre-addition relations, associated rings and cyclotomic blueprints
//!   ([`presentation`]),
//! * ideals, prime spectra, localizations and residue blueprints of finite
//!   blueprints ([`spectra`]),
//! * the compactified curve `Spec Z-bar`: sections, stalks and their ideal
//!   lattices ([`speczbar`]),
//! * combinatorial locally blueprinted spaces and fibre products over
//!   `F_{1^2}` ([`spaces`]),
//! * the measures on ideal spaces and the local zeta factors ([`zeta`]),
//! * Arakelov divisors, norms and classes ([`arakelov`]),
//! * blue modules and global sections of twists on the projective line
//!   over `F_{1^2}` ([`cohomology`]).

#![no_std]

extern crate alloc;

pub mod arakelov;
pub mod cohomology;
mod error;
pub mod hp;
pub mod presentation;
pub mod rational;
pub mod smith;
pub mod spaces;
pub mod spectra;
pub mod speczbar;
pub mod zeta;

pub use error::{Error, Result};
