//! Conjugacy of permutation groups inside `S_n` and abstract isomorphism.
//!
//! Both searches backtrack over images of a small generating set of the first
//! group, extending the partial map along the Cayley graph after each choice
//! and pruning on element-wise invariants (cycle type for conjugacy, element
//! order for abstract isomorphism).

use std::collections::{BTreeMap, HashMap};

use super::permutation::cycle_type_histogram;
use super::{ElemSet, PermGroup, Permutation};
use crate::{Error, Result};

/// Searches isomorphisms `H1 → H2` compatible with `compat`, calling `accept`
/// on each complete element map until it returns `Some`.
fn search_isomorphisms<T>(
    h1: &PermGroup,
    h2: &PermGroup,
    compat: &dyn Fn(u32, u32) -> bool,
    accept: &mut dyn FnMut(&[u32]) -> Option<T>,
) -> Option<T> {
    let gens = h1.subgroup_generators(&h1.full_set());
    if gens.is_empty() {
        return accept(&[PermGroup::IDENTITY]);
    }
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| (0..h2.order() as u32).filter(|&y| compat(g, y)).collect())
        .collect();
    let mut chosen = Vec::with_capacity(gens.len());
    backtrack(h1, h2, &gens, &candidates, &mut chosen, compat, accept)
}

fn backtrack<T>(
    h1: &PermGroup,
    h2: &PermGroup,
    gens: &[u32],
    candidates: &[Vec<u32>],
    chosen: &mut Vec<u32>,
    compat: &dyn Fn(u32, u32) -> bool,
    accept: &mut dyn FnMut(&[u32]) -> Option<T>,
) -> Option<T> {
    let level = chosen.len();
    for &c in &candidates[level] {
        chosen.push(c);
        if let Some(map) = extend_map(h1, h2, &gens[..=level], chosen, compat) {
            let result = if level + 1 == gens.len() {
                accept(&map)
            } else {
                backtrack(h1, h2, gens, candidates, chosen, compat, accept)
            };
            if result.is_some() {
                return result;
            }
        }
        chosen.pop();
    }
    None
}

/// Map on `⟨gens⟩` determined by `gens[i] -> images[i]`, if consistent,
/// injective and compatible. Unreached entries are `u32::MAX`.
fn extend_map(
    h1: &PermGroup,
    h2: &PermGroup,
    gens: &[u32],
    images: &[u32],
    compat: &dyn Fn(u32, u32) -> bool,
) -> Option<Vec<u32>> {
    let mut map = vec![u32::MAX; h1.order()];
    let mut used = vec![false; h2.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0u32];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (k, &g) in gens.iter().enumerate() {
            let y = h1.mul(g, x);
            let fy = h2.mul(images[k], map[x as usize]);
            let current = map[y as usize];
            if current == u32::MAX {
                if used[fy as usize] || !compat(y, fy) {
                    return None;
                }
                used[fy as usize] = true;
                map[y as usize] = fy;
                queue.push(y);
            } else if current != fy {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

fn order_histogram(g: &PermGroup) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for x in 0..g.order() as u32 {
        *h.entry(g.element_order(x)).or_insert(0) += 1;
    }
    h
}

/// Whether two groups are abstractly isomorphic.
pub fn abstract_isomorphic(h1: &PermGroup, h2: &PermGroup) -> Result<bool> {
    let cap = h1.caps().lattice;
    for h in [h1, h2] {
        if h.order() > cap {
            return Err(Error::CapExceeded {
                what: "isomorphism test group order",
                cap,
                reached: h.order(),
            });
        }
    }
    if h1.order() != h2.order() || order_histogram(h1) != order_histogram(h2) {
        return Ok(false);
    }
    let compat = |x: u32, y: u32| h1.element_order(x) == h2.element_order(y);
    Ok(search_isomorphisms(h1, h2, &compat, &mut |_| Some(())).is_some())
}

fn orbits(g: &PermGroup) -> Vec<Vec<usize>> {
    let n = g.degree();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            for gen in g.generators() {
                let y = gen.apply(orbit[i]);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        out.push(orbit);
    }
    out
}

/// Invariants of a permutation group that are preserved by conjugation in
/// `S_n`: order, cycle-type multiset and orbit-size multiset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjugacyFingerprint {
    pub order: usize,
    pub cycle_types: Vec<(Vec<u32>, usize)>,
    pub orbit_sizes: Vec<usize>,
}

pub fn conjugacy_fingerprint(g: &PermGroup) -> ConjugacyFingerprint {
    let mut orbit_sizes: Vec<usize> = orbits(g).iter().map(Vec::len).collect();
    orbit_sizes.sort_unstable();
    ConjugacyFingerprint {
        order: g.order(),
        cycle_types: cycle_type_histogram(g.elements()).into_iter().collect(),
        orbit_sizes,
    }
}

/// Canonical key of a subgroup of `g` up to `g`-conjugacy.
fn conjugacy_key(g: &PermGroup, set: &ElemSet) -> Vec<u32> {
    (0..g.order() as u32)
        .map(|t| g.conjugate_set(t, set).to_vec())
        .min()
        .expect("group is nonempty")
}

/// Returns `s` with `s H1 s⁻¹ = H2` if the two groups (same degree) are
/// conjugate in the symmetric group.
pub fn permutation_isomorphic(h1: &PermGroup, h2: &PermGroup) -> Option<Permutation> {
    if h1.degree() != h2.degree() || h1.order() != h2.order() {
        return None;
    }
    if h1.same_as(h2) {
        return Some(Permutation::identity(h1.degree()));
    }
    if conjugacy_fingerprint(h1) != conjugacy_fingerprint(h2) {
        return None;
    }
    let orbits1 = orbits(h1);
    let orbits2 = orbits(h2);
    let stabilizer = |g: &PermGroup, x: usize| -> ElemSet {
        ElemSet::from_indices(
            g.order(),
            (0..g.order() as u32).filter(|&e| g.element(e).apply(x) == x),
        )
    };
    let stabs1: Vec<ElemSet> = orbits1.iter().map(|o| stabilizer(h1, o[0])).collect();
    let stabs2: Vec<ElemSet> = orbits2.iter().map(|o| stabilizer(h2, o[0])).collect();
    let keys1: Vec<Vec<u32>> = stabs1.iter().map(|s| conjugacy_key(h1, s)).collect();
    let mut key_cache: HashMap<ElemSet, Vec<u32>> = HashMap::new();

    let compat = |x: u32, y: u32| h1.element(x).cycle_type() == h2.element(y).cycle_type();
    search_isomorphisms(h1, h2, &compat, &mut |map| {
        // pull the H2 point stabilizers back along the isomorphism
        let mut inverse = vec![0u32; h2.order()];
        for (x, &y) in map.iter().enumerate() {
            inverse[y as usize] = x as u32;
        }
        let pulled: Vec<ElemSet> = stabs2
            .iter()
            .map(|s| ElemSet::from_indices(h1.order(), s.iter().map(|y| inverse[y as usize])))
            .collect();
        let keys2: Vec<Vec<u32>> = pulled
            .iter()
            .map(|s| {
                key_cache
                    .entry(s.clone())
                    .or_insert_with(|| conjugacy_key(h1, s))
                    .clone()
            })
            .collect();
        // match orbits with conjugate stabilizers
        let mut used = vec![false; orbits2.len()];
        let mut matching = Vec::with_capacity(orbits1.len());
        for (i, k1) in keys1.iter().enumerate() {
            let j = (0..orbits2.len())
                .find(|&j| !used[j] && keys2[j] == *k1 && orbits2[j].len() == orbits1[i].len())?;
            used[j] = true;
            matching.push(j);
        }
        let mut images = vec![u32::MAX; h1.degree()];
        for (i, &j) in matching.iter().enumerate() {
            // t S1 t⁻¹ = pulled stabilizer of y; then y' = φ(t)⁻¹ y has stabilizer φ(S1)
            let t = (0..h1.order() as u32).find(|&t| h1.conjugate_set(t, &stabs1[i]) == pulled[j])?;
            let y0 = orbits2[j][0];
            let base = h2.element(h2.inv(map[t as usize])).apply(y0);
            // transversal walk over the orbit of x
            let x0 = orbits1[i][0];
            let mut word = vec![(x0, PermGroup::IDENTITY)];
            images[x0] = base as u32;
            let mut k = 0;
            while k < word.len() {
                let (z, h) = word[k];
                for &gen in h1.generator_indices() {
                    let z2 = h1.element(gen).apply(z);
                    if images[z2] == u32::MAX {
                        let h2_elt = h1.mul(gen, h);
                        images[z2] = h2.element(map[h2_elt as usize]).apply(base) as u32;
                        word.push((z2, h2_elt));
                    }
                }
                k += 1;
            }
        }
        let s = Permutation::from_images(images).ok()?;
        let s_inv = s.inverse();
        h1.generators()
            .iter()
            .all(|g| h2.index_of(&s.compose(g).compose(&s_inv)).is_some())
            .then_some(s)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{named_group, Caps};

    fn group(gens: &[&str], n: usize) -> PermGroup {
        let gens = gens.iter().map(|s| Permutation::parse(s, n).unwrap()).collect();
        PermGroup::from_generators(n, gens, Caps::default()).unwrap()
    }

    fn check_witness(h1: &PermGroup, h2: &PermGroup, s: &Permutation) {
        let s_inv = s.inverse();
        let mut img: Vec<Permutation> = h1.elements().iter().map(|g| s.compose(g).compose(&s_inv)).collect();
        img.sort();
        assert_eq!(img, h2.elements());
    }

    #[test]
    fn identical_groups_give_identity() {
        let h = group(&["(1 2)"], 4);
        assert!(permutation_isomorphic(&h, &h).unwrap().is_identity());
    }

    #[test]
    fn conjugate_transpositions() {
        let h1 = group(&["(1 2)"], 4);
        let h2 = group(&["(3 4)"], 4);
        let s = permutation_isomorphic(&h1, &h2).unwrap();
        check_witness(&h1, &h2, &s);
    }

    #[test]
    fn different_cycle_types_are_not_conjugate() {
        let h1 = group(&["(1 2)(3 4)"], 4);
        let h2 = group(&["(1 2)"], 4);
        assert!(permutation_isomorphic(&h1, &h2).is_none());
    }

    #[test]
    fn isomorphic_but_not_conjugate() {
        // two Klein groups in S4 with different cycle-type profiles
        let h1 = group(&["(1 2)(3 4)", "(1 3)(2 4)"], 4);
        let h2 = group(&["(1 2)", "(3 4)"], 4);
        assert!(abstract_isomorphic(&h1, &h2).unwrap());
        assert!(permutation_isomorphic(&h1, &h2).is_none());
    }

    #[test]
    fn conjugate_regular_groups() {
        let h1 = group(&["(1 2 3 4 5 6)", "(1 6)(2 5)(3 4)"], 6);
        let t = Permutation::parse("(1 3 5)(2 6)", 6).unwrap();
        let gens: Vec<Permutation> = h1.generators().iter().map(|g| t.conjugate(g)).collect();
        let h2 = PermGroup::from_generators(6, gens, Caps::default()).unwrap();
        let s = permutation_isomorphic(&h1, &h2).unwrap();
        check_witness(&h1, &h2, &s);
    }

    #[test]
    fn abstract_examples() {
        let c4 = named_group("C 4").unwrap();
        let k4 = named_group("E 2 2").unwrap();
        assert!(!abstract_isomorphic(&c4, &k4).unwrap());
        let d3 = named_group("D 3").unwrap();
        let s3 = named_group("S 3").unwrap();
        assert!(abstract_isomorphic(&d3, &s3).unwrap());
        let q8 = named_group("Q8").unwrap();
        let d4 = named_group("D 4").unwrap();
        assert!(!abstract_isomorphic(&q8, &d4).unwrap());
        assert_eq!(
            order_histogram(&q8).into_iter().collect::<Vec<_>>(),
            vec![(1, 1), (2, 1), (4, 6)]
        );
        assert_eq!(
            order_histogram(&d4).into_iter().collect::<Vec<_>>(),
            vec![(1, 1), (2, 5), (4, 2)]
        );
        let m = named_group("M 5 4 2").unwrap();
        assert!(abstract_isomorphic(&m, &m).unwrap());
    }
}
