use std::collections::HashMap;

use rayon::prelude::*;

use super::{ElemSet, PermGroup};

/// One conjugacy class of subgroups. `members[0]` is the canonical
/// representative: the member whose sorted element-index list is
/// lexicographically least.
#[derive(Debug, Clone)]
pub struct SubgroupClass {
    pub members: Vec<ElemSet>,
    pub order: usize,
    pub normalizer_order: usize,
    /// Generators of the representative.
    pub gens: Vec<u32>,
}

impl SubgroupClass {
    pub fn rep(&self) -> &ElemSet {
        &self.members[0]
    }

    /// Index `(G : H)` given the parent order.
    pub fn index_in(&self, group_order: usize) -> usize {
        group_order / self.order
    }
}

/// All subgroups of a group, partitioned into conjugacy classes.
///
/// Classes are sorted by (order, canonical representative), so the trivial
/// subgroup is class `0` and the whole group is the last class.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    classes: Vec<SubgroupClass>,
    lookup: HashMap<ElemSet, usize>,
    inclusion: Vec<Vec<bool>>,
    marks: Vec<Vec<u64>>,
}

impl SubgroupLattice {
    /// Cyclic-extension enumeration: start from the cyclic subgroups and keep
    /// adjoining one element from outside each known subgroup until no new
    /// subgroup appears.
    pub(crate) fn enumerate(g: &PermGroup) -> Self {
        let n = g.order();
        // one generator per cyclic subgroup
        let mut cyclic_gens: Vec<u32> = Vec::new();
        let mut cyclic_seen: HashMap<ElemSet, ()> = HashMap::new();
        for x in 0..n as u32 {
            let c = g.closure(&[x]);
            if cyclic_seen.insert(c, ()).is_none() {
                cyclic_gens.push(x);
            }
        }
        drop(cyclic_seen);

        let mut found: HashMap<ElemSet, usize> = HashMap::new();
        let mut subgroups: Vec<(ElemSet, Vec<u32>)> = Vec::new();
        let trivial = g.trivial_set();
        found.insert(trivial.clone(), 0);
        subgroups.push((trivial, Vec::new()));
        let mut i = 0;
        while i < subgroups.len() {
            let (base, base_gens) = subgroups[i].clone();
            let fresh: Vec<(ElemSet, Vec<u32>)> = cyclic_gens
                .par_iter()
                .filter(|&&x| !base.contains(x))
                .map(|&x| {
                    let mut gens = base_gens.clone();
                    gens.push(x);
                    (g.extend_closure(&base, &base_gens, &[x]), gens)
                })
                .collect();
            for (set, gens) in fresh {
                if !found.contains_key(&set) {
                    found.insert(set.clone(), subgroups.len());
                    subgroups.push((set, gens));
                }
            }
            i += 1;
        }

        // conjugacy classes via conjugation by the group generators
        let mut class_id = vec![usize::MAX; subgroups.len()];
        let mut raw_classes: Vec<Vec<usize>> = Vec::new();
        for s in 0..subgroups.len() {
            if class_id[s] != usize::MAX {
                continue;
            }
            let cid = raw_classes.len();
            class_id[s] = cid;
            let mut members = vec![s];
            let mut k = 0;
            while k < members.len() {
                let set = &subgroups[members[k]].0;
                for &gen in g.generator_indices() {
                    let c = g.conjugate_set(gen, set);
                    let idx = found[&c];
                    if class_id[idx] == usize::MAX {
                        class_id[idx] = cid;
                        members.push(idx);
                    }
                }
                k += 1;
            }
            raw_classes.push(members);
        }

        let mut classes: Vec<SubgroupClass> = raw_classes
            .into_iter()
            .map(|members| {
                let mut keyed: Vec<(Vec<u32>, usize)> = members
                    .into_iter()
                    .map(|m| (subgroups[m].0.to_vec(), m))
                    .collect();
                keyed.sort();
                let order = keyed[0].0.len();
                let rep_idx = keyed[0].1;
                let size = keyed.len();
                let members: Vec<ElemSet> = keyed.iter().map(|(_, m)| subgroups[*m].0.clone()).collect();
                let gens = g.subgroup_generators(&subgroups[rep_idx].0);
                SubgroupClass {
                    members,
                    order,
                    normalizer_order: n / size,
                    gens,
                }
            })
            .collect();
        classes.sort_by_cached_key(|c| (c.order, c.rep().to_vec()));

        let mut lookup = HashMap::new();
        for (cid, c) in classes.iter().enumerate() {
            for m in &c.members {
                lookup.insert(m.clone(), cid);
            }
        }

        let inclusion: Vec<Vec<bool>> = classes
            .iter()
            .map(|ci| {
                classes
                    .iter()
                    .map(|cj| ci.order <= cj.order && cj.members.iter().any(|m| ci.rep().is_subset(m)))
                    .collect()
            })
            .collect();

        // marks[k][h] = #Fix_{G/H}(K) = #{H' ~ H : K ⊆ H'} · |N(H)| / |H|
        let marks: Vec<Vec<u64>> = classes
            .par_iter()
            .map(|ck| {
                classes
                    .iter()
                    .map(|ch| {
                        if ck.order > ch.order || ch.order % ck.order != 0 {
                            return 0;
                        }
                        let containing =
                            ch.members.iter().filter(|m| ck.rep().is_subset(m)).count() as u64;
                        containing * (ch.normalizer_order / ch.order) as u64
                    })
                    .collect()
            })
            .collect();

        SubgroupLattice {
            classes,
            lookup,
            inclusion,
            marks,
        }
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn class(&self, id: usize) -> &SubgroupClass {
        &self.classes[id]
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn subgroup_count(&self) -> usize {
        self.classes.iter().map(|c| c.members.len()).sum()
    }

    pub fn trivial_class(&self) -> usize {
        0
    }

    pub fn full_class(&self) -> usize {
        self.classes.len() - 1
    }

    /// Class of an arbitrary subgroup, or `None` if `set` is not a subgroup.
    pub fn class_of(&self, set: &ElemSet) -> Option<usize> {
        self.lookup.get(set).copied()
    }

    /// Every subgroup, class by class.
    pub fn all_subgroups(&self) -> impl Iterator<Item = (usize, &ElemSet)> {
        self.classes
            .iter()
            .enumerate()
            .flat_map(|(cid, c)| c.members.iter().map(move |m| (cid, m)))
    }

    /// `true` if a member of class `i` lies inside a member of class `j`.
    pub fn included(&self, i: usize, j: usize) -> bool {
        self.inclusion[i][j]
    }

    /// `#Fix_{G/H_h}(H_k)` for class ids `k` (acting subgroup) and `h`
    /// (stabilizer).
    pub fn mark(&self, k: usize, h: usize) -> u64 {
        self.marks[k][h]
    }

    pub fn is_normal_class(&self, id: usize) -> bool {
        self.classes[id].members.len() == 1
    }

    /// Normal subgroups in class order.
    pub fn normal_subgroups(&self) -> Vec<usize> {
        (0..self.classes.len()).filter(|&c| self.is_normal_class(c)).collect()
    }

    /// Every maximal subgroup (all members of all maximal classes).
    pub fn maximal_subgroups(&self) -> Vec<&ElemSet> {
        let full = self.full_class();
        let mut out = Vec::new();
        for (cid, c) in self.classes.iter().enumerate() {
            if cid == full {
                continue;
            }
            let maximal = (0..full)
                .filter(|&j| j != cid && self.classes[j].order > c.order)
                .all(|j| !self.inclusion[cid][j]);
            if maximal {
                out.extend(c.members.iter());
            }
        }
        out
    }
}
