use std::sync::Arc;

use super::GSet;
use crate::linequiv::cyclic_mod_p_classes;
use crate::perm::PermGroup;
use crate::{Characteristic, Result};

/// Fixed-point counts `#Fix_{G/H}(C)` with rows the cyclic-mod-`p` subgroup
/// classes `C` and columns all subgroup classes `H`.
#[derive(Debug, Clone)]
pub struct MarksTable {
    pub group: Arc<PermGroup>,
    pub p: Characteristic,
    pub rows: Vec<usize>,
    pub columns: Vec<usize>,
    /// `entries[i][j] = #Fix_{G/columns[j]}(rows[i])`.
    pub entries: Vec<Vec<u64>>,
}

pub fn marks_table(group: &Arc<PermGroup>, p: Characteristic) -> Result<MarksTable> {
    let lattice = group.lattice()?;
    let rows = cyclic_mod_p_classes(group, p)?;
    let columns: Vec<usize> = (0..lattice.class_count()).collect();
    let entries = rows
        .iter()
        .map(|&k| columns.iter().map(|&h| lattice.mark(k, h)).collect())
        .collect();
    Ok(MarksTable {
        group: group.clone(),
        p,
        rows,
        columns,
        entries,
    })
}

/// Permutation character: `values[c] = #Fix_X(g)` for `g` in element class `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterVector {
    pub values: Vec<u64>,
}

/// Computed element by element from conjugacy-class intersections, without
/// the subgroup marks.
pub fn character_vector(x: &GSet) -> CharacterVector {
    let g = x.group();
    CharacterVector {
        values: g
            .conjugacy_classes()
            .iter()
            .map(|class| x.fix_count_element(class[0]))
            .collect(),
    }
}
