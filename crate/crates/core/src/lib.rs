//! Finite racks, quandles, involutary racks and kei.
//!
//! * [`rack`] and [`perm`]: operation tables, axiom validation, the canonical
//!   automorphism `F(x) = x ▷ x` and the structural predicates.
//! * [`functors`]: permutation racks, quandle-ification and the power operations `Ψ^m`.
//! * [`free`]: integer models of the free permutation and the free rack on one generator.
//! * [`enumerate`]: isomorph-free censuses with a brute-force cross-check.
//! * [`homsearch`]: homomorphisms, inner groups and natural-center probes.
//! * [`io`], [`identities`], [`cli`]: the text format and the command front end.

pub mod cli;
pub mod enumerate;
pub mod error;
pub mod free;
pub mod functors;
pub mod homsearch;
pub mod identities;
pub mod io;
pub mod perm;
pub mod rack;

pub use enumerate::{brute_force_oracle, canonical_form, enumerate, CensusRecord, SearchConfig};
pub use error::{AxiomViolation, CapError, InputError, ValidationError};
pub use free::{free_rack_eval, FreeRackElement, RackWord};
pub use functors::{perm_to_rack, power_op, quandleify, rack_to_perm, trivial_quandle, FunctorTag, Structure};
pub use homsearch::{homs, natural_center, NaturalFamily, RackMorphism};
pub use io::RackFile;
pub use perm::Permutation;
pub use rack::{validate_rack, FiniteRack, StructureKind};
