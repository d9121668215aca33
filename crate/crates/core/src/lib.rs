//! Linearly equivalent G-sets.
//!
//! Finite G-sets are stored in canonical form as multiplicity vectors over
//! the conjugacy classes of subgroups of `G`. Two G-sets are linearly
//! equivalent over a field of characteristic `p` exactly when they have the
//! same number of fixed points for every subgroup that is cyclic mod `p`,
//! and every verdict produced here is backed by such a table of fixed-point
//! counts.
//!
//! The crate is split along the lines of the computation:
//!
//! * [`perm`]: permutations, permutation groups, subgroup lattices,
//!   homomorphisms and structural queries (Sylow, Frattini, Frobenius).
//! * [`gsets`]: the G-set calculus (marks, restriction, induction, products).
//! * [`linequiv`]: equivalence certificates, bad-prime sets, similarity.
//! * [`constructions`]: explicit equivalent non-isomorphic pairs.
//! * [`beaulieu`]: lifting pairs to transitive `S_n`-sets without building `S_n`.
//! * [`search`]: exhaustive minimal-degree search.
//! * [`io`]: JSON documents for G-sets, certificates and reports.

pub mod beaulieu;
pub mod constructions;
mod error;
pub mod gsets;
pub mod io;
pub mod linalg;
pub mod linequiv;
pub mod perm;
pub mod search;

pub use error::{Error, Result};
pub use gsets::{CharacterVector, GSet, MarksTable};
pub use linequiv::{BadPrimeSet, EquivCertificate, Verdict};
pub use perm::{
    named_group, Caps, ElemSet, FrobeniusStructure, Homomorphism, PermGroup, Permutation,
    SubgroupLattice,
};

/// Characteristic of the coefficient field; `0` is the rational case.
pub type Characteristic = u32;
