//! Finite G-sets in canonical form.
//!
//! A G-set is a disjoint union of transitive pieces `G/H`, and two G-sets are
//! isomorphic exactly when they contain each `G/H` (up to conjugacy of `H`)
//! equally often. [`GSet`] stores that multiplicity vector, indexed by the
//! subgroup classes of the group's lattice.

mod functor;
mod marks;

use std::fmt;
use std::sync::Arc;

use crate::perm::{ElemSet, PermGroup, Permutation, SubgroupLattice};
use crate::{Error, Result};

pub use functor::{exterior_product, induce_along, restrict_along};
pub(crate) use functor::left_cosets;
pub use marks::{character_vector, marks_table, CharacterVector, MarksTable};

#[derive(Clone)]
pub struct GSet {
    group: Arc<PermGroup>,
    mult: Vec<u64>,
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_as(&other.group) && self.mult == other.mult
    }
}

impl Eq for GSet {}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GSet[{}]{:?}", self.group.label(), self.mult)
    }
}

impl fmt::Display for GSet {
    /// `2·G/1 ⊔ G/#3` style, using lattice class ids.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(c, &m)| if m == 1 { format!("G/#{c}") } else { format!("{m}·G/#{c}") })
            .collect();
        if parts.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{}", parts.join(" ⊔ "))
        }
    }
}

impl GSet {
    /// The empty G-set.
    pub fn empty(group: Arc<PermGroup>) -> Result<Self> {
        let classes = group.lattice()?.class_count();
        Ok(GSet {
            group,
            mult: vec![0; classes],
        })
    }

    pub fn from_mult(group: Arc<PermGroup>, mult: Vec<u64>) -> Result<Self> {
        let classes = group.lattice()?.class_count();
        if mult.len() != classes {
            return Err(Error::InternalInvariant(format!(
                "multiplicity vector of length {} for {classes} classes",
                mult.len()
            )));
        }
        Ok(GSet { group, mult })
    }

    /// `G/H` for the subgroup class `class`.
    pub fn transitive(group: Arc<PermGroup>, class: usize) -> Result<Self> {
        let mut x = Self::empty(group)?;
        x.mult[class] = 1;
        Ok(x)
    }

    /// `G/H` for an explicit subgroup `H`.
    pub fn coset_space(group: Arc<PermGroup>, subgroup: &ElemSet) -> Result<Self> {
        let class = class_of(&group, subgroup)?;
        Self::transitive(group, class)
    }

    /// Assembles a G-set from `(stabilizer generators, multiplicity)` pairs.
    pub fn make(group: Arc<PermGroup>, constituents: &[(Vec<Permutation>, u64)]) -> Result<Self> {
        let mut x = Self::empty(group.clone())?;
        for (gens, m) in constituents {
            let set = group.subgroup_from_perms(gens)?;
            let class = class_of(&group, &set)?;
            x.mult[class] += m;
        }
        Ok(x)
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        self.group.lattice().expect("lattice exists for every G-set group")
    }

    pub fn mult(&self) -> &[u64] {
        &self.mult
    }

    pub fn degree(&self) -> u64 {
        let order = self.group.order();
        self.lattice()
            .classes()
            .iter()
            .zip(&self.mult)
            .map(|(c, &m)| m * c.index_in(order) as u64)
            .sum()
    }

    /// Number of orbits.
    pub fn orbit_count(&self) -> u64 {
        self.mult.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    /// Classes occurring as point stabilizers.
    pub fn stabilizer_classes(&self) -> Vec<usize> {
        (0..self.mult.len()).filter(|&c| self.mult[c] > 0).collect()
    }

    pub fn disjoint_union(&self, other: &GSet) -> Result<GSet> {
        self.check_same_group(other)?;
        Ok(GSet {
            group: self.group.clone(),
            mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect(),
        })
    }

    /// `k · X`.
    pub fn scaled(&self, k: u64) -> GSet {
        GSet {
            group: self.group.clone(),
            mult: self.mult.iter().map(|m| m * k).collect(),
        }
    }

    pub fn check_same_group(&self, other: &GSet) -> Result<()> {
        if self.group.same_as(&other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// Isomorphism of G-sets is equality of canonical forms.
    pub fn is_isomorphic(&self, other: &GSet) -> Result<bool> {
        self.check_same_group(other)?;
        Ok(self.mult == other.mult)
    }

    /// Kernel of the action: the intersection of all point stabilizers.
    pub fn kernel(&self) -> ElemSet {
        let lattice = self.lattice();
        self.stabilizer_classes()
            .into_iter()
            .flat_map(|c| lattice.class(c).members.iter())
            .fold(self.group.full_set(), |acc, m| acc.intersection(m))
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel().len() == 1
    }

    /// `#Fix_X(K)` for the subgroup class `k`, from the lattice marks.
    pub fn fix_count_class(&self, k: usize) -> u64 {
        let lattice = self.lattice();
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(h, &m)| m * lattice.mark(k, h))
            .sum()
    }

    /// `#Fix_X(K)` for an arbitrary subgroup `K`.
    pub fn fix_count(&self, k: &ElemSet) -> Result<u64> {
        Ok(self.fix_count_class(class_of(&self.group, k)?))
    }

    /// `#Fix_X(K)` straight from the definition: for each constituent `G/H`
    /// count `L_K(H) = {g : K ⊆ gHg⁻¹}` by scanning `G`, and divide by `|H|`.
    /// Independent of the lattice marks.
    pub fn fix_count_scan(&self, k: &ElemSet) -> u64 {
        let g = &self.group;
        let lattice = self.lattice();
        let k_gens = g.subgroup_generators(k);
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(h, &m)| {
                let class = lattice.class(h);
                let rep = class.rep();
                // K ⊆ gHg⁻¹  ⟺  g⁻¹ K g ⊆ H
                let l = (0..g.order() as u32)
                    .filter(|&x| k_gens.iter().all(|&s| rep.contains(g.conj(g.inv(x), s))))
                    .count();
                m * (l / class.order) as u64
            })
            .sum()
    }

    /// `#Fix_X(⟨g⟩)` through the element-class shortcut
    /// `|L_{⟨g⟩}(H)| = |C_G(g)| · |g^G ∩ H|`.
    pub fn fix_count_element(&self, x: u32) -> u64 {
        let g = &self.group;
        let lattice = self.lattice();
        let class = &g.conjugacy_classes()[g.class_of(x)];
        let centralizer = g.centralizer_order(x) as u64;
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(h, &m)| {
                let sub = lattice.class(h);
                let meet = class.iter().filter(|&&y| sub.rep().contains(y)).count() as u64;
                m * centralizer * meet / sub.order as u64
            })
            .sum()
    }
}

pub(crate) fn class_of(group: &PermGroup, set: &ElemSet) -> Result<usize> {
    group
        .lattice()?
        .class_of(set)
        .ok_or_else(|| Error::NotSubgroup(format!("{:?}", group.format_set_gens(set))))
}

/// Cancels common constituents and divides by the gcd of what remains.
/// Linear equivalence and non-isomorphism are preserved.
pub fn reduce_pair(x: &GSet, y: &GSet) -> Result<(GSet, GSet)> {
    x.check_same_group(y)?;
    let mut a: Vec<u64> = Vec::with_capacity(x.mult.len());
    let mut b: Vec<u64> = Vec::with_capacity(x.mult.len());
    for (&p, &q) in x.mult.iter().zip(&y.mult) {
        let m = p.min(q);
        a.push(p - m);
        b.push(q - m);
    }
    let g = a.iter().chain(&b).fold(0u64, |acc, &v| num_integer::gcd(acc, v));
    if g > 1 {
        a.iter_mut().chain(b.iter_mut()).for_each(|v| *v /= g);
    }
    Ok((
        GSet {
            group: x.group.clone(),
            mult: a,
        },
        GSet {
            group: y.group.clone(),
            mult: b,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named_group;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn gset_make_examples() {
        let s3 = named_group("S 3").unwrap();
        let x = GSet::make(s3.clone(), &[(vec![], 2)]).unwrap();
        assert_eq!(x.degree(), 12);
        let empty = GSet::make(s3, &[]).unwrap();
        assert_eq!(empty.degree(), 0);
        assert!(empty.is_empty());

        let a4 = named_group("A 4").unwrap();
        let x = GSet::make(
            a4.clone(),
            &[
                (a4.generators().to_vec(), 1),
                (vec![p("(1 2)(3 4)", 4)], 1),
            ],
        )
        .unwrap();
        assert_eq!(x.degree(), 7);
        assert_eq!(x.orbit_count(), 2);
    }

    #[test]
    fn make_rejects_foreign_elements() {
        let a4 = named_group("A 4").unwrap();
        assert!(matches!(
            GSet::make(a4, &[(vec![p("(1 2)", 4)], 1)]),
            Err(Error::NotSubgroup(_))
        ));
    }

    #[test]
    fn fix_count_basics() {
        let s3 = named_group("S 3").unwrap();
        let lattice = s3.lattice().unwrap();
        let full = GSet::transitive(s3.clone(), lattice.full_class()).unwrap();
        let regular = GSet::transitive(s3.clone(), 0).unwrap();
        for k in 0..lattice.class_count() {
            assert_eq!(full.fix_count_class(k), 1);
            assert_eq!(regular.fix_count_class(k), if k == 0 { 6 } else { 0 });
        }
        let c2 = s3.closure(&[s3.index_of(&p("(1 2)", 3)).unwrap()]);
        let x = GSet::coset_space(s3.clone(), &c2).unwrap();
        assert_eq!(x.fix_count(&c2).unwrap(), 1);
        assert_eq!(x.fix_count_scan(&c2), 1);
    }

    #[test]
    fn three_routes_to_fixed_points_agree() {
        for spec in ["S 4", "D 6", "Q8", "M 5 4 2"] {
            let g = named_group(spec).unwrap();
            let lattice = g.lattice().unwrap();
            for h in 0..lattice.class_count() {
                let x = GSet::transitive(g.clone(), h).unwrap();
                for (k, class) in lattice.classes().iter().enumerate() {
                    assert_eq!(x.fix_count_class(k), x.fix_count_scan(class.rep()), "{spec}");
                }
                for e in 0..g.order() as u32 {
                    let cyc = g.closure(&[e]);
                    assert_eq!(x.fix_count_element(e), x.fix_count(&cyc).unwrap(), "{spec}");
                }
            }
        }
    }

    #[test]
    fn reduce_pair_examples() {
        let g = named_group("E 3 2").unwrap();
        let n = g.lattice().unwrap().class_count();
        let mk = |v: Vec<u64>| GSet::from_mult(g.clone(), v).unwrap();
        let mut xv = vec![0; n];
        xv[0] = 1;
        xv[n - 1] = 3;
        let mut yv = vec![0; n];
        yv[1..n - 1].iter_mut().for_each(|m| *m = 1);
        let (x, y) = (mk(xv), mk(yv));
        let z = mk((0..n as u64).collect());
        let base = reduce_pair(&x, &y).unwrap();
        assert_eq!(base, (x.clone(), y.clone()));
        assert_eq!(reduce_pair(&x.disjoint_union(&z).unwrap(), &y.disjoint_union(&z).unwrap()).unwrap(), base);
        assert_eq!(reduce_pair(&x.scaled(2), &y.scaled(2)).unwrap(), base);
    }

    #[test]
    fn kernel_of_non_faithful_set() {
        let a4 = named_group("A 4").unwrap();
        let pt = GSet::transitive(a4.clone(), a4.lattice().unwrap().full_class()).unwrap();
        assert_eq!(pt.scaled(7).kernel().len(), 12);
        assert!(!pt.is_faithful());
        assert!(GSet::transitive(a4, 0).unwrap().is_faithful());
    }
}
