use super::{class_of, GSet};
use crate::perm::{DirectProduct, ElemSet, Homomorphism};
use crate::{Error, Result};

/// Restriction along `ψ: H → G`: `H` acts on the points of `X` through `ψ`.
///
/// Each constituent `G/K` is realized as its left cosets, split into
/// `H`-orbits, and each orbit contributes `H/ψ⁻¹(gKg⁻¹)`.
pub fn restrict_along(psi: &Homomorphism, x: &GSet) -> Result<GSet> {
    let g = psi.target();
    let h = psi.source();
    if !x.group().same_as(g) {
        return Err(Error::GroupMismatch);
    }
    let mut out = GSet::empty(h.clone())?;
    let lattice = x.lattice();
    let gen_images: Vec<u32> = h.generator_indices().iter().map(|&s| psi.apply(s)).collect();
    for cid in x.stabilizer_classes() {
        let k = lattice.class(cid).rep();
        let (coset_of, reps) = left_cosets(g, k);
        let mut seen = vec![false; reps.len()];
        let mut orbit_stabs: Vec<usize> = Vec::new();
        for start in 0..reps.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = vec![start];
            let mut i = 0;
            while i < queue.len() {
                let c = queue[i];
                for &s in &gen_images {
                    let d = coset_of[g.mul(s, reps[c]) as usize] as usize;
                    if !seen[d] {
                        seen[d] = true;
                        queue.push(d);
                    }
                }
                i += 1;
            }
            let r = reps[start];
            let conj = g.conjugate_set(r, k);
            let stab = psi.preimage_of_set(&conj);
            orbit_stabs.push(class_of(h, &stab)?);
        }
        for s in orbit_stabs {
            out.mult[s] += x.mult[cid];
        }
    }
    Ok(out)
}

/// Left cosets `xK`, numbered by least element; returns the coset index of
/// every element and the least element of every coset.
pub(crate) fn left_cosets(g: &crate::PermGroup, k: &ElemSet) -> (Vec<u32>, Vec<u32>) {
    let n = g.order();
    let mut coset_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n as u32 {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        for y in k.iter() {
            coset_of[g.mul(x, y) as usize] = id;
        }
        reps.push(x);
    }
    (coset_of, reps)
}

/// Induction along `ψ: H → G`: `H/K ↦ G/ψ(K)` with the same multiplicity.
/// For injective `ψ` this is `G ×_H X`; for surjective `ψ` it is the orbit
/// space of `ker ψ`.
pub fn induce_along(psi: &Homomorphism, x: &GSet) -> Result<GSet> {
    if !x.group().same_as(psi.source()) {
        return Err(Error::GroupMismatch);
    }
    let g = psi.target();
    let mut out = GSet::empty(g.clone())?;
    let lattice = x.lattice();
    for cid in x.stabilizer_classes() {
        let image = psi.image_of_set(lattice.class(cid).rep());
        out.mult[class_of(g, &image)?] += x.mult[cid];
    }
    Ok(out)
}

/// `X × Y` over `G₁ × G₂`: `(G₁/H₁) × (G₂/H₂) ↦ (G₁×G₂)/(H₁×H₂)`.
pub fn exterior_product(product: &DirectProduct, x: &GSet, y: &GSet) -> Result<GSet> {
    if !x.group().same_as(&product.left) || !y.group().same_as(&product.right) {
        return Err(Error::GroupMismatch);
    }
    let mut out = GSet::empty(product.group.clone())?;
    let (lx, ly) = (x.lattice(), y.lattice());
    for a in x.stabilizer_classes() {
        for b in y.stabilizer_classes() {
            let set = product.product_set(lx.class(a).rep(), ly.class(b).rep());
            out.mult[class_of(&product.group, &set)?] += x.mult[a] * y.mult[b];
        }
    }
    Ok(out)
}
