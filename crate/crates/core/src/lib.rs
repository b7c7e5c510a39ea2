//! Combinatorial and cohomological invariants of generic planar polygon
//! spaces, computed from length vectors or genetic codes.

pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod gale;
pub mod gf2;
pub mod identities;
pub mod invariants;
pub mod lengths;
pub mod realize;

pub use error::{Error, Result};
pub use gale::{gale_leq, GeneticCode, IndexSet, SubgeeTable};
pub use lengths::{family_vector, Family, LengthVector};
pub use realize::{is_realizable, lp_feasible, LinearSystem, Relation};
pub use cohomology::{build_presentation, dim_cohomology, r_power_is_zero, rank_trick_zero, Level};
pub use gf2::Gf2Matrix;
pub use invariants::{report, Cobordism, Immersion, InvariantReport, Parallelizability};
pub use catalog::{census, enumerate_codes, CatalogEntry, EnumerateOptions};
