//! Decidable models for the topology of ideal spaces of tensor products:
//! finite T0 spaces as posets, lower Vietoris hyperspaces, point-complete
//! envelopes, limit sets, the retraction-to-homeomorphism construction,
//! a symbolic cofinite space, and finite-dimensional C*-algebra ideal
//! lattices with the tensor maps Φ, Δ and Ψ.

pub mod cofinite;
pub mod cstar;
pub mod dot;
pub mod enumerate;
pub mod envelope;
pub mod error;
pub mod hyperspace;
pub mod limit;
pub mod poset;
pub mod report;
pub mod retraction;
pub mod subset;

pub use error::{CapacityError, PosetError, TopologyError};
pub use hyperspace::{build_hyperspace, ClosedSetFamily, DEFAULT_CAPACITY};
pub use poset::{FinitePoset, SpaceMap};
pub use subset::Subset;
