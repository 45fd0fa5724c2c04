#![forbid(unsafe_code)]

//! A desk-scale laboratory for the open filter monad and its algebras.
//!
//! Everything works on small finite carriers, where every quantifier in the
//! definitions ranges over an enumerable set: ideals, Scott opens, way-below,
//! open filters, the filter-space topology, the monad unit and
//! multiplication, and the Eilenberg-Moore algebra laws are all computed by
//! literal enumeration. The headline fact this crate exercises is the
//! equivalence between continuous lattices and the algebras of the open
//! filter monad on T0 spaces: one direction builds the structure map
//! `r(v) = sup of the lower bounds of v` from a complete lattice, the other
//! recovers the lattice from any verified algebra through the specialization
//! order, and exhaustive search over all candidate structure maps probes
//! that no other algebras exist on small carriers.
//!
//! Checks return reports with one entry per law or claim and a concrete
//! witness on failure; carriers that outgrow their feasibility ceilings fail
//! loudly instead of being sampled.

pub mod algebra;
pub mod bits;
pub mod catalog;
pub mod dot;
pub mod filter;
pub mod io;
pub mod limits;
pub mod order;
pub mod report;
pub mod topology;

pub use algebra::{
    algebra_from_lattice, check_algebra, check_principal_filter_criterion, check_theorem_suite,
    filter_lower_bounds, lattice_from_algebra, roundtrip_check, structure_search, AlgebraError,
    PhiAlgebra,
};
pub use bits::BitSet;
pub use filter::{
    check_monad_laws, eta, is_open_filter, meets_filter, mu, open_filters, phi_map,
    principal_family, principal_filter, FilterConvention, FilterError, FilterSpace, MapCandidate,
    MonadError, MonadLawReport, OpenFilter,
};
pub use limits::{FeasibilityError, Limits};
pub use order::{FinitePoset, Ideal, PosetError};
pub use report::{ClaimEntry, LawEntry, Status, TheoremReport};
pub use topology::{scott_space, ContinuousMap, FiniteSpace, SpaceError};
