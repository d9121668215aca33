//! Finite permutation groups: construction, subgroup lattices,
//! homomorphisms, structural queries and conjugacy testing.

mod elemset;
mod group;
mod hom;
mod iso;
mod lattice;
mod named;
mod permutation;
mod structure;

pub use elemset::ElemSet;
pub use group::{is_prime, p_part, prime_divisors, Caps, PermGroup};
pub use hom::{quotient_group, DirectProduct, Homomorphism};
pub use iso::{abstract_isomorphic, conjugacy_fingerprint, permutation_isomorphic, ConjugacyFingerprint};
pub use lattice::{SubgroupClass, SubgroupLattice};
pub use named::{named_group, named_group_with_caps};
pub use permutation::{cycle_type_histogram, Permutation};
pub use structure::{
    frattini_subgroup, frobenius_structure, is_cyclic_mod_p, is_solvable, sylow_subgroup,
    FrobeniusStructure,
};

/// Builds a group by closure of `gens`.
pub fn group_from_generators(
    degree: usize,
    gens: Vec<Permutation>,
    caps: Caps,
) -> crate::Result<std::sync::Arc<PermGroup>> {
    PermGroup::from_generators(degree, gens, caps).map(std::sync::Arc::new)
}
