//! Exact combinatorial calculus for the classification data of smooth
//! irreducible representations of GL(n) over a p-adic field.
//!
//! Everything here is symbolic: supercuspidal representations are opaque
//! atoms carrying a degree, twists are exact rationals, and all higher
//! objects (segments, multisegments, Weil-Deligne skeletons, Tadic unitary
//! forms) are canonical multisets built from them. The crate computes
//! SL(2)-types, Klyachko types, Zelevinsky transposes and base-change
//! images, and exposes the predicates needed to machine-check the
//! compatibilities between those operations.
//!
//! - [`partitions`]: integer partitions as multisets of positive integers.
//! - [`cuspidal`]: twisted cuspidal atoms, segments and multisegments.
//! - [`weil_deligne`]: the skeleton `(semisimple multiset, Jordan partition)`
//!   and the segment-to-skeleton map `tau`.
//! - [`tadic`]: unitary forms `U(delta[sigma,n],r)`, transpose, SL(2)-type
//!   and Klyachko type.
//! - [`basechange`]: degree-preserving cuspidal splittings and the
//!   base-change compatibility checks.

pub mod basechange;
pub mod cuspidal;
pub mod partitions;
pub mod tadic;
pub mod weil_deligne;

pub use basechange::{
    check_bc_rec_compat, check_corollary_main, check_theorem_main, check_transpose_commutes,
    random_spec, BcError, BcSpec, SpecMode, SpecViolation, SpecViolations,
};
pub use cuspidal::{
    a_multisegment, Alphabet, CuspidalAtom, CuspidalError, Exponent, Multisegment, Segment,
    TwistedCuspidal,
};
pub use partitions::{Partition, PartitionError};
pub use tadic::{
    sl2_type_zelevinsky, KlyachkoType, OddDegree, TadicError, UnitaryFactor, UnitaryRep,
};
pub use weil_deligne::{tau, tau_segment, DimensionMismatch, WDClass};
