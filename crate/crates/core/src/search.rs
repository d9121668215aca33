//! Exhaustive minimal-degree search.
//!
//! `mindeg_p(G)` is the least degree of a pair of non-isomorphic G-sets that
//! are linearly equivalent in characteristic `p`. Degrees are scanned in
//! increasing order; at each degree every multiplicity vector is hashed by its
//! fixed-point counts on the cyclic-mod-`p` classes, and the first collision
//! is a witness.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::constructions::{build_exist_pair, maximal_family, VerifiedPair};
use crate::gsets::GSet;
use crate::linalg::rank;
use crate::linequiv::cyclic_mod_p_classes;
use crate::perm::{abstract_isomorphic, is_prime, is_solvable, named_group_with_caps, PermGroup};
use crate::{Caps, Characteristic, Error, Result};

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub group: Arc<PermGroup>,
    pub p: Characteristic,
    /// `None` is infinity.
    pub mindeg: Option<u64>,
    pub witness: Option<VerifiedPair>,
    /// Largest degree the search was allowed to reach.
    pub cap: u64,
    /// Multiplicity vectors examined.
    pub examined: u64,
    /// Rank over `Q` of the cyclic-mod-`p` marks matrix, and its column count.
    pub rank: usize,
    pub classes: usize,
}

/// Restricted marks: one column per subgroup class, rows the cyclic-mod-`p`
/// classes. Stored column-major for incremental fingerprints.
fn restricted_columns(g: &PermGroup, p: Characteristic) -> Result<(Vec<Vec<u64>>, usize)> {
    let lattice = g.lattice()?;
    let rows = cyclic_mod_p_classes(g, p)?;
    let columns: Vec<Vec<u64>> = (0..lattice.class_count())
        .map(|h| rows.iter().map(|&k| lattice.mark(k, h)).collect())
        .collect();
    let matrix: Vec<Vec<u64>> = (0..rows.len())
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect();
    Ok((columns, rank(&matrix)))
}

/// Default degree cap: `⌈3|G|/2⌉` in characteristic 0, otherwise the degree
/// of the pair built from the family of all maximal subgroups.
pub fn default_cap(g: &Arc<PermGroup>, p: Characteristic) -> Result<u64> {
    let fallback = (3 * g.order()).div_ceil(2) as u64;
    if p == 0 {
        return Ok(fallback);
    }
    match maximal_family(g, p).and_then(|f| build_exist_pair(&f, false)) {
        Ok(pair) => Ok(pair.degree().max(1)),
        Err(Error::InvalidFamily(_)) => Ok(fallback),
        Err(e) => Err(e),
    }
}

/// First and second vector seen for each fingerprint.
type Level = HashMap<Vec<u64>, (Vec<u64>, Option<Vec<u64>>)>;

/// Enumerates, in lexicographic order, every vector `m` over `degrees[from..]`
/// with `Σ m_i d_i = remaining`, recording fingerprints.
#[allow(clippy::too_many_arguments)]
fn enumerate(
    degrees: &[u64],
    columns: &[Vec<u64>],
    from: usize,
    remaining: u64,
    current: &mut Vec<u64>,
    fp: &mut Vec<u64>,
    level: &mut Level,
    examined: &mut u64,
) {
    if from == degrees.len() {
        if remaining == 0 {
            *examined += 1;
            match level.get_mut(fp.as_slice()) {
                None => {
                    level.insert(fp.clone(), (current.clone(), None));
                }
                Some((_, second @ None)) => *second = Some(current.clone()),
                Some(_) => {}
            }
        }
        return;
    }
    let d = degrees[from];
    let max = remaining / d;
    for m in 0..=max {
        current[from] = m;
        if m > 0 {
            for (f, c) in fp.iter_mut().zip(&columns[from]) {
                *f += c;
            }
        }
        enumerate(degrees, columns, from + 1, remaining - m * d, current, fp, level, examined);
    }
    if max > 0 {
        for (f, c) in fp.iter_mut().zip(&columns[from]) {
            *f -= c * max;
        }
    }
    current[from] = 0;
}

/// Least colliding pair of degree exactly `n`, and the number of vectors seen.
fn scan_degree(degrees: &[u64], columns: &[Vec<u64>], n: u64) -> (Option<(Vec<u64>, Vec<u64>)>, u64) {
    let k = degrees.len();
    let rows = columns[0].len();
    // split on the multiplicity of class 0, merged back in increasing order
    let parts: Vec<(Level, u64)> = (0..=n / degrees[0])
        .into_par_iter()
        .map(|m0| {
            let mut current = vec![0u64; k];
            current[0] = m0;
            let mut fp: Vec<u64> = columns[0].iter().map(|c| c * m0).collect();
            let mut level = Level::new();
            let mut examined = 0;
            if k == 1 {
                if m0 * degrees[0] == n {
                    examined = 1;
                    level.insert(fp, (current, None));
                }
            } else {
                enumerate(degrees, columns, 1, n - m0 * degrees[0], &mut current, &mut fp, &mut level, &mut examined);
            }
            (level, examined)
        })
        .collect();
    debug_assert!(rows > 0);
    let mut merged = Level::new();
    let mut examined = 0;
    for (level, count) in parts {
        examined += count;
        for (fp, (first, second)) in level {
            match merged.get_mut(&fp) {
                None => {
                    merged.insert(fp, (first, second));
                }
                Some((_, slot @ None)) => *slot = Some(first),
                Some(_) => {}
            }
        }
    }
    let best = merged
        .into_values()
        .filter_map(|(a, b)| b.map(|b| (a, b)))
        .min();
    (best, examined)
}

/// Minimal degree of a non-isomorphic pair equivalent in characteristic `p`.
///
/// Returns infinity when the restricted marks matrix has full column rank.
/// Fails with [`Error::SearchCapExceeded`] when no pair exists up to `cap`
/// although the kernel is nontrivial.
pub fn mindeg(g: &Arc<PermGroup>, p: Characteristic, cap: Option<u64>) -> Result<SearchResult> {
    if p != 0 && !is_prime(p as u64) {
        return Err(Error::Spec(format!("characteristic {p} is neither 0 nor prime")));
    }
    let lattice = g.lattice()?;
    let (columns, r) = restricted_columns(g, p)?;
    let classes = lattice.class_count();
    let cap = match cap {
        Some(c) => c,
        None => default_cap(g, p)?,
    };
    let mut result = SearchResult {
        group: g.clone(),
        p,
        mindeg: None,
        witness: None,
        cap,
        examined: 0,
        rank: r,
        classes,
    };
    if r == classes {
        return Ok(result);
    }
    let degrees: Vec<u64> = lattice
        .classes()
        .iter()
        .map(|c| c.index_in(g.order()) as u64)
        .collect();
    for n in 1..=cap {
        let (found, examined) = scan_degree(&degrees, &columns, n);
        result.examined += examined;
        if let Some((a, b)) = found {
            let x = GSet::from_mult(g.clone(), a)?;
            let y = GSet::from_mult(g.clone(), b)?;
            let pair = VerifiedPair::certify(x, y, &[p]).map_err(|e| {
                Error::InternalInvariant(format!("marks collision failed certification: {e}"))
            })?;
            result.mindeg = Some(n);
            result.witness = Some(pair);
            return Ok(result);
        }
    }
    Err(Error::SearchCapExceeded {
        cap: cap as usize,
        examined: result.examined,
    })
}

/// One bound from the ratio theorems, checked on a computed value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct RatioRow {
    pub group: String,
    pub order: usize,
    pub outcome: std::result::Result<Option<u64>, String>,
    /// `mindeg/|G|` in lowest terms, when finite.
    pub ratio: Option<Ratio<u64>>,
    pub checks: Vec<BoundCheck>,
}

/// For each group: `mindeg`, `mindeg/|G|`, and the applicable bounds in
/// characteristic 0 (at most 3/2; above 4/3 only for `C2×C2`; `(q+1)/q` for
/// dihedral groups of order `2q`, `q` an odd prime; solvable above 3/4).
pub fn mindeg_ratio_report(specs: &[&str], p: Characteristic, caps: Caps) -> Vec<RatioRow> {
    specs
        .iter()
        .map(|spec| match ratio_row(spec, p, caps) {
            Ok(row) => row,
            Err(e) => RatioRow {
                group: spec.trim().to_string(),
                order: 0,
                outcome: Err(e.to_string()),
                ratio: None,
                checks: Vec::new(),
            },
        })
        .collect()
}

fn ratio_row(spec: &str, p: Characteristic, caps: Caps) -> Result<RatioRow> {
    let g = named_group_with_caps(spec, caps)?;
    let order = g.order();
    let result = mindeg(&g, p, None);
    let mut row = RatioRow {
        group: g.label().to_string(),
        order,
        outcome: Ok(None),
        ratio: None,
        checks: Vec::new(),
    };
    let m = match result {
        Ok(r) => r.mindeg,
        Err(e) => {
            row.outcome = Err(e.to_string());
            return Ok(row);
        }
    };
    row.outcome = Ok(m);
    let Some(m) = m else { return Ok(row) };
    let ratio = Ratio::new(m, order as u64);
    row.ratio = Some(ratio);
    if p == 0 {
        row.checks.push(BoundCheck {
            name: "ratio <= 3/2",
            holds: ratio <= Ratio::new(3, 2),
        });
        let klein = named_group_with_caps("E 2 2", caps)?;
        let is_klein = order == 4 && abstract_isomorphic(&g, &klein)?;
        row.checks.push(BoundCheck {
            name: "ratio > 4/3 iff C2 x C2",
            holds: (ratio > Ratio::new(4, 3)) == is_klein,
        });
        if order % 2 == 0 && order / 2 > 2 && is_prime(order as u64 / 2) {
            let q = order as u64 / 2;
            let dihedral = named_group_with_caps(&format!("D {q}"), caps)?;
            if abstract_isomorphic(&g, &dihedral)? {
                row.checks.push(BoundCheck {
                    name: "dihedral ratio = (q+1)/q",
                    holds: ratio == Ratio::new(q + 1, q),
                });
            }
        }
        if ratio > Ratio::new(3, 4) {
            row.checks.push(BoundCheck {
                name: "ratio > 3/4 implies solvable",
                holds: is_solvable(&g),
            });
        }
    }
    Ok(row)
}
