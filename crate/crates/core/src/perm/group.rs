use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use super::{ElemSet, Permutation, SubgroupLattice};
use crate::{Error, Result};

/// Enumeration limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest group order whose elements are enumerated.
    pub order: usize,
    /// Largest group order whose subgroup lattice is enumerated.
    pub lattice: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            order: 10_080,
            lattice: 512,
        }
    }
}

/// Groups up to this order get a full multiplication table.
const TABLE_LIMIT: usize = 2048;

/// A finite permutation group with its elements enumerated.
///
/// Elements are sorted lexicographically by image tuple, so index `0` is the
/// identity and every "first" or "canonical" choice downstream is
/// deterministic.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    generator_indices: Vec<u32>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    classes: Vec<Vec<u32>>,
    class_of: Vec<u32>,
    table: Option<Vec<u32>>,
    caps: Caps,
    label: String,
    lattice: OnceLock<SubgroupLattice>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("label", &self.label)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish()
    }
}

impl PermGroup {
    /// Closes `gens` under composition (breadth-first until stable).
    pub fn from_generators(degree: usize, gens: Vec<Permutation>, caps: Caps) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Spec("degree must be positive".into()));
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::Spec(format!(
                "generator {g} has degree {} but the group has degree {degree}",
                g.degree()
            )));
        }
        let id = Permutation::identity(degree);
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut order_list = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let y = g.compose(&order_list[i]);
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), ());
                    order_list.push(y);
                    if order_list.len() > caps.order {
                        return Err(Error::CapExceeded {
                            what: "group order",
                            cap: caps.order,
                            reached: order_list.len(),
                        });
                    }
                    queue.push_back(order_list.len() - 1);
                }
            }
        }
        drop(seen);
        order_list.sort();
        let label = gens.iter().map(|g| format!("\"{g}\"")).collect::<Vec<_>>().join(" ");
        let label = format!("perm: {label} deg={degree}");
        Ok(Self::from_sorted_elements(degree, gens, order_list, caps, label))
    }

    fn from_sorted_elements(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
        caps: Caps,
        label: String,
    ) -> Self {
        let n = elements.len();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let inverse: Vec<u32> = elements.iter().map(|p| index[&p.inverse()]).collect();
        let generator_indices: Vec<u32> = generators.iter().map(|g| index[g]).collect();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; n * n];
            for (i, a) in elements.iter().enumerate() {
                for (j, b) in elements.iter().enumerate() {
                    t[i * n + j] = index[&a.compose(b)];
                }
            }
            t
        });
        let mut group = PermGroup {
            degree,
            generators,
            generator_indices,
            elements,
            index,
            inverse,
            orders: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
            table,
            caps,
            label,
            lattice: OnceLock::new(),
        };
        group.orders = (0..n as u32).map(|i| group.compute_order(i)).collect();
        group.compute_classes();
        group
    }

    pub(crate) fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Spec string that reproduces this group (see [`crate::named_group`]).
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_indices(&self) -> &[u32] {
        &self.generator_indices
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub const IDENTITY: u32 = 0;

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.order() + b as usize],
            None => self.index[&self.elements[a as usize].compose(&self.elements[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// `g a g⁻¹`.
    #[inline]
    pub fn conj(&self, g: u32, a: u32) -> u32 {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        let mut acc = Self::IDENTITY;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    fn compute_order(&self, a: u32) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != Self::IDENTITY {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_order(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n as u32 {
            if class_of[start as usize] != u32::MAX {
                continue;
            }
            let cid = classes.len() as u32;
            let mut members = vec![start];
            class_of[start as usize] = cid;
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for &g in &self.generator_indices {
                    let y = self.conj(g, x);
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = cid;
                        members.push(y);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    /// Element conjugacy classes, ordered by least member; class `0` is `{1}`.
    pub fn conjugacy_classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn class_of(&self, a: u32) -> usize {
        self.class_of[a as usize] as usize
    }

    pub fn centralizer_order(&self, a: u32) -> usize {
        self.order() / self.classes[self.class_of(a)].len()
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order()
    }

    pub fn full_set(&self) -> ElemSet {
        ElemSet::full(self.order())
    }

    pub fn trivial_set(&self) -> ElemSet {
        ElemSet::from_indices(self.order(), [Self::IDENTITY])
    }

    /// Subgroup generated by the given elements.
    pub fn closure(&self, gens: &[u32]) -> ElemSet {
        self.extend_closure(&self.trivial_set(), &[], gens)
    }

    /// Subgroup generated by `base` (a subgroup with generators `base_gens`)
    /// together with `extra`.
    pub(crate) fn extend_closure(&self, base: &ElemSet, base_gens: &[u32], extra: &[u32]) -> ElemSet {
        let mut set = base.clone();
        let mut list: Vec<u32> = base.to_vec();
        let gens: Vec<u32> = base_gens.iter().chain(extra).copied().collect();
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    list.push(y);
                }
            }
            i += 1;
        }
        set
    }

    pub fn is_subgroup(&self, set: &ElemSet) -> bool {
        if !set.contains(Self::IDENTITY) {
            return false;
        }
        let members = set.to_vec();
        members
            .iter()
            .all(|&a| members.iter().all(|&b| set.contains(self.mul(a, b))))
    }

    pub fn conjugate_set(&self, g: u32, set: &ElemSet) -> ElemSet {
        ElemSet::from_indices(self.order(), set.iter().map(|x| self.conj(g, x)))
    }

    pub fn is_normal(&self, set: &ElemSet) -> bool {
        self.generator_indices
            .iter()
            .all(|&g| set.iter().all(|x| set.contains(self.conj(g, x))))
    }

    /// A small generating set of the subgroup `set`: elements are taken
    /// greedily by decreasing order, then increasing index.
    pub fn subgroup_generators(&self, set: &ElemSet) -> Vec<u32> {
        let mut candidates: Vec<u32> = set.iter().filter(|&x| x != Self::IDENTITY).collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut span = self.trivial_set();
        for x in candidates {
            if span.len() == set.len() {
                break;
            }
            if !span.contains(x) {
                span = self.extend_closure(&span, &gens, &[x]);
                gens.push(x);
            }
        }
        gens
    }

    /// The subgroup `set` as a group in its own right (same degree).
    pub fn subgroup_as_group(&self, set: &ElemSet) -> Result<Arc<PermGroup>> {
        if !self.is_subgroup(set) {
            return Err(Error::NotSubgroup(format!("{set:?}")));
        }
        let gens: Vec<Permutation> = self
            .subgroup_generators(set)
            .into_iter()
            .map(|g| self.element(g).clone())
            .collect();
        let mut elements: Vec<Permutation> = set.iter().map(|x| self.element(x).clone()).collect();
        elements.sort();
        let label = gens.iter().map(|g| format!("\"{g}\"")).collect::<Vec<_>>().join(" ");
        let label = format!("perm: {label} deg={}", self.degree);
        Ok(Arc::new(Self::from_sorted_elements(
            self.degree,
            gens,
            elements,
            self.caps,
            label,
        )))
    }

    /// Resolves a list of permutations to the subgroup they generate.
    pub fn subgroup_from_perms(&self, gens: &[Permutation]) -> Result<ElemSet> {
        let idx = gens
            .iter()
            .map(|g| {
                self.index_of(g)
                    .ok_or_else(|| Error::NotSubgroup(format!("{g} is not an element of the group")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.closure(&idx))
    }

    /// Subgroup lattice, enumerated on first use.
    pub fn lattice(&self) -> Result<&SubgroupLattice> {
        if let Some(l) = self.lattice.get() {
            return Ok(l);
        }
        if self.order() > self.caps.lattice {
            return Err(Error::CapExceeded {
                what: "lattice group order",
                cap: self.caps.lattice,
                reached: self.order(),
            });
        }
        let lattice = SubgroupLattice::enumerate(self);
        let _ = self.lattice.set(lattice);
        Ok(self.lattice.get().expect("lattice just set"))
    }

    /// True if both describe the same set of permutations.
    pub fn same_as(&self, other: &PermGroup) -> bool {
        std::ptr::eq(self, other) || (self.degree == other.degree && self.elements == other.elements)
    }

    pub fn format_set_gens(&self, set: &ElemSet) -> Vec<String> {
        self.subgroup_generators(set)
            .into_iter()
            .map(|g| self.element(g).to_string())
            .collect()
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order() as u32;
        self.orders.contains(&n)
    }
}

/// Prime factors of `n`, ascending, without multiplicity.
pub fn prime_divisors(mut n: usize) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d as u32);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u32);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: usize) -> usize {
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn s3_from_generators() {
        let g = PermGroup::from_generators(3, vec![perm("(1 2)", 3), perm("(1 2 3)", 3)], Caps::default())
            .unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.element(0).is_identity());
        assert_eq!(g.conjugacy_classes().len(), 3);
        let sizes: usize = g.conjugacy_classes().iter().map(Vec::len).sum();
        assert_eq!(sizes, 6);
        assert!(!g.is_abelian());
        // elements sorted by image tuple
        assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn klein_group_has_four_classes() {
        let g = PermGroup::from_generators(
            4,
            vec![perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)],
            Caps::default(),
        )
        .unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.conjugacy_classes().len(), 4);
    }

    #[test]
    fn cap_exceeded_reports_partial_count() {
        let caps = Caps { order: 10, lattice: 10 };
        let err = PermGroup::from_generators(4, vec![perm("(1 2)", 4), perm("(1 2 3 4)", 4)], caps)
            .unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 10, reached: 11, .. }));
    }

    #[test]
    fn generators_must_share_degree() {
        assert!(PermGroup::from_generators(3, vec![perm("(1 2)", 4)], Caps::default()).is_err());
    }

    #[test]
    fn trivial_group_has_identity_only() {
        let g = PermGroup::from_generators(2, vec![], Caps::default()).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.is_cyclic());
    }

    #[test]
    fn number_theory_helpers() {
        assert_eq!(prime_divisors(36), vec![2, 3]);
        assert_eq!(prime_divisors(1), Vec::<u32>::new());
        assert_eq!(p_part(24, 2), 8);
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
    }
}
