//! Lifting faithful G-sets to transitive `S_n`-sets.
//!
//! A faithful G-set `X` of degree `n` gives an embedding `φ_X: G → S_n`, and
//! the `S_n`-set `S_n/φ_X(G)` is its lift. Everything here is computed inside
//! the images `H_X = φ_X(G)`; `S_n` itself is never enumerated.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::gsets::{left_cosets, GSet};
use crate::linequiv::Verdict;
use crate::perm::{
    abstract_isomorphic, conjugacy_fingerprint, cycle_type_histogram, is_cyclic_mod_p, is_prime,
    permutation_isomorphic, ConjugacyFingerprint, PermGroup, Permutation,
};
use crate::{Characteristic, Error, Result};

/// The image `φ_X(G) ≤ S_n` of a faithful G-set.
#[derive(Debug, Clone)]
pub struct LiftedSubgroup {
    pub n: usize,
    pub group: Arc<PermGroup>,
    pub source: GSet,
    /// For each point (0-based): stabilizer class, copy number within that
    /// constituent, and the least group element of the coset.
    pub point_labels: Vec<(usize, u64, u32)>,
}

/// Numbers the points of `x` and returns the permutation image of `G`.
///
/// Constituents are ordered by (index, class id) and repeated by
/// multiplicity; within a constituent, cosets are ordered by least element.
pub fn lift(x: &GSet) -> Result<LiftedSubgroup> {
    let g = x.group();
    let kernel = x.kernel();
    if kernel.len() != 1 {
        return Err(Error::NotFaithful {
            kernel_order: kernel.len(),
            kernel_gens: g.format_set_gens(&kernel),
        });
    }
    let lattice = x.lattice();
    let mut constituents = x.stabilizer_classes();
    constituents.sort_by_key(|&c| (lattice.class(c).index_in(g.order()), c));
    let n = x.degree() as usize;
    let mut labels = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    for c in constituents {
        let (coset_of, reps) = left_cosets(g, lattice.class(c).rep());
        for copy in 0..x.mult()[c] {
            let offset = labels.len() as u32;
            labels.extend(reps.iter().map(|&r| (c, copy, r)));
            blocks.push((offset, coset_of.clone(), reps.clone()));
        }
    }
    let image_of = |s: u32| -> Permutation {
        let mut images = vec![0u32; n];
        for (offset, coset_of, reps) in &blocks {
            for (i, &r) in reps.iter().enumerate() {
                images[*offset as usize + i] = offset + coset_of[g.mul(s, r) as usize];
            }
        }
        Permutation::from_images(images).expect("coset action is a permutation")
    };
    let gens: Vec<Permutation> = g.generator_indices().iter().map(|&s| image_of(s)).collect();
    let group = PermGroup::from_generators(n, gens, g.caps())?;
    if group.order() != g.order() {
        return Err(Error::InternalInvariant(format!(
            "faithful image has order {} instead of {}",
            group.order(),
            g.order()
        )));
    }
    Ok(LiftedSubgroup {
        n,
        group: Arc::new(group),
        source: x.clone(),
        point_labels: labels,
    })
}

/// `n!/|G|` as an expression, e.g. `"24!/12"`.
pub fn index_factorial_expr(n: usize, order: usize) -> String {
    format!("{n}!/{order}")
}

/// `n!/|G|` expanded.
pub fn index_expanded(n: usize, order: usize) -> BigUint {
    factorial(n) / BigUint::from(order)
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Cycle-type multisets of two lifted images, and whether they agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GassmannReport {
    pub equal: bool,
    pub cycle_types_x: BTreeMap<Vec<u32>, usize>,
    pub cycle_types_y: BTreeMap<Vec<u32>, usize>,
}

/// `S_n/H_X` and `S_n/H_Y` are linearly equivalent over `Q` exactly when
/// `H_X` and `H_Y` meet every conjugacy class of `S_n` (every cycle type) in
/// the same number of elements.
pub fn sym_gassmann_check(hx: &LiftedSubgroup, hy: &LiftedSubgroup) -> Result<GassmannReport> {
    if hx.n != hy.n {
        return Err(Error::DegreeMismatch(hx.n, hy.n));
    }
    let cycle_types_x = cycle_type_histogram(hx.group.elements());
    let cycle_types_y = cycle_type_histogram(hy.group.elements());
    Ok(GassmannReport {
        equal: cycle_types_x == cycle_types_y,
        cycle_types_x,
        cycle_types_y,
    })
}

/// One `S_n`-conjugacy class of cyclic-mod-`p` subgroups met by `H_X` or `H_Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymRow {
    pub order: usize,
    pub fingerprint: ConjugacyFingerprint,
    /// Generators of one member, in cycle notation on `1..n`.
    pub gens: Vec<String>,
    pub count_x: usize,
    pub count_y: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymEquivReport {
    pub p: Characteristic,
    pub gassmann: GassmannReport,
    pub rows: Vec<SymRow>,
    pub verdict: Verdict,
}

/// Representatives of the cyclic-mod-`p` subgroup classes of `h`, as groups,
/// with class sizes.
fn cyclic_mod_p_subgroups(h: &PermGroup, p: Characteristic) -> Result<Vec<(Arc<PermGroup>, usize)>> {
    let lattice = h.lattice()?;
    lattice
        .classes()
        .iter()
        .filter(|c| is_cyclic_mod_p(h, c.rep(), p))
        .map(|c| Ok((h.subgroup_as_group(c.rep())?, c.members.len())))
        .collect()
}

/// Compares, for every `S_n`-class `[C]` of cyclic-mod-`p` subgroups, the
/// number of members of `[C]` inside `H_X` and inside `H_Y`. Since
/// `#Fix_{S_n/H}(C) = #{C′ ≤ H : C′ ~ C}·|N_{S_n}(C)|/|H|` and `|H_X| = |H_Y|`,
/// equal counts everywhere is equality of all the relevant fixed-point counts.
pub fn sym_lin_equiv_modp(hx: &LiftedSubgroup, hy: &LiftedSubgroup, p: Characteristic) -> Result<SymEquivReport> {
    if hx.n != hy.n {
        return Err(Error::DegreeMismatch(hx.n, hy.n));
    }
    if p != 0 && !is_prime(p as u64) {
        return Err(Error::Spec(format!("characteristic {p} is neither 0 nor prime")));
    }
    let gassmann = sym_gassmann_check(hx, hy)?;
    let sx = cyclic_mod_p_subgroups(&hx.group, p)?;
    let sy = cyclic_mod_p_subgroups(&hy.group, p)?;
    // (representative, fingerprint, count in X, count in Y)
    let mut classes: Vec<(Arc<PermGroup>, ConjugacyFingerprint, usize, usize)> = Vec::new();
    for (side, list) in [(0, sx), (1, sy)] {
        for (sub, count) in list {
            let fp = conjugacy_fingerprint(&sub);
            let slot = classes
                .iter()
                .position(|(rep, f, _, _)| *f == fp && permutation_isomorphic(rep, &sub).is_some());
            let i = match slot {
                Some(i) => i,
                None => {
                    classes.push((sub, fp, 0, 0));
                    classes.len() - 1
                }
            };
            if side == 0 {
                classes[i].2 += count;
            } else {
                classes[i].3 += count;
            }
        }
    }
    let mut rows: Vec<SymRow> = classes
        .into_iter()
        .map(|(rep, fingerprint, count_x, count_y)| SymRow {
            order: rep.order(),
            gens: rep.generators().iter().map(|g| g.to_string()).collect(),
            fingerprint,
            count_x,
            count_y,
        })
        .collect();
    rows.sort_by(|a, b| (a.order, &a.fingerprint, &a.gens).cmp(&(b.order, &b.fingerprint, &b.gens)));
    let verdict = if rows.iter().all(|r| r.count_x == r.count_y) {
        Verdict::Equivalent
    } else {
        Verdict::Inequivalent
    };
    Ok(SymEquivReport {
        p,
        gassmann,
        rows,
        verdict,
    })
}

/// `S_n/H_X ≇ S_n/H_Y` exactly when `H_X` and `H_Y` are not conjugate;
/// returns that verdict and a conjugator when there is one.
pub fn sym_nonisomorphic(hx: &LiftedSubgroup, hy: &LiftedSubgroup) -> (bool, Option<Permutation>) {
    let witness = permutation_isomorphic(&hx.group, &hy.group);
    (witness.is_none(), witness)
}

/// Sufficient test that the lifts are not linearly equivalent in
/// characteristic `p`: some cyclic-mod-`p` subgroup `H₁` has a fixed-point
/// count on `X` matched by no subgroup `H₂ ≅ H₁` on `Y`.
///
/// If the lifts were equivalent, `φ_X(H₁)` would fix a point of
/// `S_n/φ_Y(G)`, so it would be `S_n`-conjugate to some `φ_Y(H₂)`; such an
/// `H₂` is isomorphic to `H₁` and has as many fixed points on `Y`.
pub fn ncong_criterion(x: &GSet, y: &GSet, p: Characteristic) -> Result<bool> {
    x.check_same_group(y)?;
    let g = x.group();
    let lattice = g.lattice()?;
    let groups: Vec<Arc<PermGroup>> = lattice
        .classes()
        .iter()
        .map(|c| g.subgroup_as_group(c.rep()))
        .collect::<Result<_>>()?;
    for h1 in crate::linequiv::cyclic_mod_p_classes(g, p)? {
        let target = x.fix_count_class(h1);
        let mut matched = false;
        for h2 in 0..lattice.class_count() {
            if y.fix_count_class(h2) == target && abstract_isomorphic(&groups[h1], &groups[h2])? {
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(true);
        }
    }
    Ok(false)
}
