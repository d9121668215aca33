use super::group::{is_prime, p_part};
use super::{ElemSet, PermGroup};
use crate::{Characteristic, Error, Result};

/// Whether the subgroup `set` of `g` is cyclic mod `p`: for `p = 0` it is
/// cyclic; for prime `p` it has a normal Sylow `p`-subgroup `P` with `H/P`
/// cyclic.
pub fn is_cyclic_mod_p(g: &PermGroup, set: &ElemSet, p: Characteristic) -> bool {
    let order = set.len();
    if p == 0 {
        return set.iter().any(|x| g.element_order(x) as usize == order);
    }
    let p = p as usize;
    let sylow_order = p_part(order, p);
    let p_elements = ElemSet::from_indices(
        g.order(),
        set.iter().filter(|&x| p_part(g.element_order(x) as usize, p) == g.element_order(x) as usize),
    );
    // the p-elements form a subgroup exactly when the Sylow p-subgroup is normal
    if p_elements.len() != sylow_order {
        return false;
    }
    let quotient_order = order / sylow_order;
    set.iter().any(|h| {
        let mut x = h;
        let mut k = 1;
        while !p_elements.contains(x) {
            x = g.mul(x, h);
            k += 1;
        }
        k == quotient_order
    })
}

/// A Sylow `q`-subgroup (the canonical representative of its class); the
/// trivial subgroup when `q` does not divide `|G|`.
pub fn sylow_subgroup(g: &PermGroup, q: u32) -> Result<ElemSet> {
    if !is_prime(q as u64) {
        return Err(Error::Spec(format!("{q} is not prime")));
    }
    let target = p_part(g.order(), q as usize);
    if target == 1 {
        return Ok(g.trivial_set());
    }
    let lattice = g.lattice()?;
    lattice
        .classes()
        .iter()
        .find(|c| c.order == target)
        .map(|c| c.rep().clone())
        .ok_or_else(|| Error::InternalInvariant(format!("no subgroup of order {target}")))
}

/// Intersection of all maximal subgroups.
pub fn frattini_subgroup(g: &PermGroup) -> Result<ElemSet> {
    let lattice = g.lattice()?;
    Ok(lattice
        .maximal_subgroups()
        .into_iter()
        .fold(g.full_set(), |acc, m| acc.intersection(m)))
}

/// Complement and kernel of a Frobenius group.
#[derive(Debug, Clone)]
pub struct FrobeniusStructure {
    pub complement: ElemSet,
    pub kernel: ElemSet,
    /// Lattice class of the complement.
    pub complement_class: usize,
    pub non_regular: bool,
}

/// Finds the first nontrivial proper subgroup class `H` (canonical class
/// order) with `H ∩ gHg⁻¹ = 1` for all `g ∉ H`, and the Frobenius kernel.
pub fn frobenius_structure(g: &PermGroup) -> Result<Option<FrobeniusStructure>> {
    let lattice = g.lattice()?;
    let full = lattice.full_class();
    for cid in 1..full {
        let class = lattice.class(cid);
        // trivially intersecting conjugates and self-normalizing
        if class.normalizer_order != class.order {
            continue;
        }
        let rep = class.rep();
        let trivial = g.trivial_set();
        if !class.members[1..]
            .iter()
            .all(|m| rep.intersection(m) == trivial)
        {
            continue;
        }
        let covered = class
            .members
            .iter()
            .fold(ElemSet::empty(g.order()), |acc, m| acc.union(m));
        let kernel = ElemSet::from_indices(
            g.order(),
            (0..g.order() as u32).filter(|&x| x == PermGroup::IDENTITY || !covered.contains(x)),
        );
        if !g.is_subgroup(&kernel) || !g.is_normal(&kernel) || kernel.len() * class.order != g.order() {
            return Err(Error::InternalInvariant(format!(
                "Frobenius kernel of order {} failed the subgroup check",
                kernel.len()
            )));
        }
        return Ok(Some(FrobeniusStructure {
            complement: rep.clone(),
            kernel,
            complement_class: cid,
            non_regular: class.order > 1,
        }));
    }
    Ok(None)
}

/// Derived series reaches the trivial group.
pub fn is_solvable(g: &PermGroup) -> bool {
    let mut current = g.full_set();
    loop {
        let members = current.to_vec();
        let mut commutators = Vec::new();
        for &a in &members {
            for &b in &members {
                let c = g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
                commutators.push(c);
            }
        }
        let next = g.closure(&commutators);
        if next.len() == 1 {
            return true;
        }
        if next == current {
            return false;
        }
        current = next;
    }
}
