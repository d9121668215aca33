//! Linear equivalence of G-sets over a field of characteristic `p`, decided
//! by comparing fixed points on cyclic-mod-`p` subgroups.

use std::fmt;
use crate::beaulieu::lift;
use crate::gsets::{character_vector, induce_along, GSet};
use crate::perm::{is_cyclic_mod_p, is_prime, permutation_isomorphic, prime_divisors, quotient_group, PermGroup};
use crate::{Characteristic, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equivalent,
    Inequivalent,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Equivalent => "equivalent",
            Verdict::Inequivalent => "inequivalent",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertRow {
    /// Lattice class id of the row subgroup.
    pub class: usize,
    /// Generators of the class representative, in cycle notation.
    pub gens: Vec<String>,
    pub fix_x: u64,
    pub fix_y: u64,
}

/// Per-class fixed-point comparison over every cyclic-mod-`p` subgroup class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivCertificate {
    pub char: Characteristic,
    pub verdict: Verdict,
    pub rows: Vec<CertRow>,
    /// Index into `rows` of the first disagreement.
    pub witness: Option<usize>,
}

impl EquivCertificate {
    pub fn is_equivalent(&self) -> bool {
        self.verdict == Verdict::Equivalent
    }

    pub fn witness_row(&self) -> Option<&CertRow> {
        self.witness.map(|i| &self.rows[i])
    }

    /// Re-derives every row from its printed generators with the definitional
    /// fixed-point scan, and checks that the rows cover exactly the
    /// cyclic-mod-`p` classes and that verdict and witness follow from them.
    pub fn recheck(&self, x: &GSet, y: &GSet) -> Result<bool> {
        x.check_same_group(y)?;
        let g = x.group();
        let degree = g.degree();
        let lattice = g.lattice()?;
        let mut classes = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let gens = row
                .gens
                .iter()
                .map(|s| crate::Permutation::parse(s, degree))
                .collect::<Result<Vec<_>>>()?;
            let set = g.subgroup_from_perms(&gens)?;
            if !is_cyclic_mod_p(g, &set, self.char) {
                return Ok(false);
            }
            if x.fix_count_scan(&set) != row.fix_x || y.fix_count_scan(&set) != row.fix_y {
                return Ok(false);
            }
            classes.push(lattice.class_of(&set));
        }
        let expected: Vec<Option<usize>> = cyclic_mod_p_classes(g, self.char)?.into_iter().map(Some).collect();
        let mut sorted = classes.clone();
        sorted.sort();
        if sorted != expected {
            return Ok(false);
        }
        let first_bad = self.rows.iter().position(|r| r.fix_x != r.fix_y);
        let verdict = if first_bad.is_none() {
            Verdict::Equivalent
        } else {
            Verdict::Inequivalent
        };
        Ok(first_bad == self.witness && verdict == self.verdict)
    }
}

fn check_char(p: Characteristic) -> Result<()> {
    if p == 0 || is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::Spec(format!("characteristic {p} is neither 0 nor prime")))
    }
}

/// Subgroup classes that are cyclic mod `p`, in class order.
pub fn cyclic_mod_p_classes(g: &PermGroup, p: Characteristic) -> Result<Vec<usize>> {
    check_char(p)?;
    let lattice = g.lattice()?;
    Ok(lattice
        .classes()
        .iter()
        .enumerate()
        .filter(|(_, c)| is_cyclic_mod_p(g, c.rep(), p))
        .map(|(i, _)| i)
        .collect())
}

/// Compares `#Fix_X(C)` and `#Fix_Y(C)` for every cyclic-mod-`p` class `C`.
pub fn lin_equiv(x: &GSet, y: &GSet, p: Characteristic) -> Result<EquivCertificate> {
    x.check_same_group(y)?;
    let g = x.group();
    let lattice = g.lattice()?;
    let rows: Vec<CertRow> = cyclic_mod_p_classes(g, p)?
        .into_iter()
        .map(|c| CertRow {
            class: c,
            gens: g.format_set_gens(lattice.class(c).rep()),
            fix_x: x.fix_count_class(c),
            fix_y: y.fix_count_class(c),
        })
        .collect();
    let witness = rows.iter().position(|r| r.fix_x != r.fix_y);
    Ok(EquivCertificate {
        char: p,
        verdict: if witness.is_none() {
            Verdict::Equivalent
        } else {
            Verdict::Inequivalent
        },
        rows,
        witness,
    })
}

/// Equality of permutation characters, computed element by element.
pub fn char0_oracle(x: &GSet, y: &GSet) -> Result<bool> {
    x.check_same_group(y)?;
    Ok(character_vector(x) == character_vector(y))
}

/// Characteristics at which a pair fails to be linearly equivalent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadPrimeSet {
    /// When false the pair is inequivalent in every characteristic and
    /// `primes` is empty.
    pub char0_equivalent: bool,
    pub primes: Vec<u32>,
}

pub fn bad_primes(x: &GSet, y: &GSet) -> Result<BadPrimeSet> {
    if !lin_equiv(x, y, 0)?.is_equivalent() {
        return Ok(BadPrimeSet {
            char0_equivalent: false,
            primes: Vec::new(),
        });
    }
    let mut primes = Vec::new();
    for q in prime_divisors(x.group().order()) {
        if !lin_equiv(x, y, q)?.is_equivalent() {
            primes.push(q);
        }
    }
    Ok(BadPrimeSet {
        char0_equivalent: true,
        primes,
    })
}

/// The faithful action of `G/ker` on `x`, when `x` has kernel `ker`.
fn faithful_quotient(x: &GSet) -> Result<GSet> {
    let kernel = x.kernel();
    if kernel.len() == 1 {
        return Ok(x.clone());
    }
    let (_, proj) = quotient_group(x.group(), &kernel)?;
    induce_along(&proj, x)
}

/// Similarity: isomorphism up to an automorphism of `G`, decided by
/// conjugacy of the lifted images in `S_n`. Non-faithful sets are first
/// replaced by their faithful quotients, which requires equal kernels.
pub fn similar(x: &GSet, y: &GSet) -> Result<bool> {
    x.check_same_group(y)?;
    if x.degree() != y.degree() {
        return Ok(false);
    }
    let (kx, ky) = (x.kernel(), y.kernel());
    if kx != ky {
        return Err(Error::KernelMismatch(kx.len(), ky.len()));
    }
    if x == y {
        return Ok(true);
    }
    let (fx, fy) = if kx.len() == 1 {
        (x.clone(), y.clone())
    } else {
        (faithful_quotient(x)?, faithful_quotient(y)?)
    };
    let (hx, hy) = (lift(&fx)?, lift(&fy)?);
    Ok(permutation_isomorphic(&hx.group, &hy.group).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named_group;
    use crate::perm::Permutation;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn a4_pair() -> (GSet, GSet) {
        let a4 = named_group("A 4").unwrap();
        let x = GSet::make(
            a4.clone(),
            &[(a4.generators().to_vec(), 1), (vec![p("(1 2)(3 4)", 4)], 1)],
        )
        .unwrap();
        let y = GSet::make(
            a4.clone(),
            &[
                (vec![p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)], 1),
                (vec![p("(1 2 3)", 4)], 1),
            ],
        )
        .unwrap();
        (x, y)
    }

    #[test]
    fn cyclic_mod_p_class_lists() {
        let a4 = named_group("A 4").unwrap();
        assert_eq!(cyclic_mod_p_classes(&a4, 0).unwrap().len(), 3);
        // A4 itself is cyclic mod 2: K4 is a normal Sylow subgroup with quotient C3
        assert_eq!(cyclic_mod_p_classes(&a4, 2).unwrap().len(), 5);
        let v4 = named_group("E 2 2").unwrap();
        assert_eq!(cyclic_mod_p_classes(&v4, 2).unwrap().len(), 5);
        assert!(cyclic_mod_p_classes(&v4, 4).is_err());
    }

    #[test]
    fn a4_pair_certificates() {
        let (x, y) = a4_pair();
        assert_eq!(x.degree(), 7);
        let c0 = lin_equiv(&x, &y, 0).unwrap();
        assert!(c0.is_equivalent());
        assert!(c0.recheck(&x, &y).unwrap());
        let c2 = lin_equiv(&x, &y, 2).unwrap();
        assert_eq!(c2.verdict, Verdict::Inequivalent);
        let w = c2.witness_row().unwrap();
        assert_eq!(x.lattice().class(w.class).order, 4);
        assert_eq!((w.fix_x, w.fix_y), (1, 3));
        assert!(c2.recheck(&x, &y).unwrap());
        assert!(lin_equiv(&x, &y, 3).unwrap().is_equivalent());
        assert_eq!(
            bad_primes(&x, &y).unwrap(),
            BadPrimeSet {
                char0_equivalent: true,
                primes: vec![2]
            }
        );
    }

    #[test]
    fn tampered_certificate_fails_recheck() {
        let (x, y) = a4_pair();
        let mut c = lin_equiv(&x, &y, 2).unwrap();
        c.rows[0].fix_x += 1;
        assert!(!c.recheck(&x, &y).unwrap());
        let mut c = lin_equiv(&x, &y, 2).unwrap();
        c.rows.pop();
        assert!(!c.recheck(&x, &y).unwrap());
        let mut c = lin_equiv(&x, &y, 0).unwrap();
        c.verdict = Verdict::Inequivalent;
        assert!(!c.recheck(&x, &y).unwrap());
    }

    #[test]
    fn oracle_examples() {
        let (x, y) = a4_pair();
        assert!(char0_oracle(&x, &y).unwrap());
        assert!(char0_oracle(&x, &x).unwrap());
        let s3 = named_group("S 3").unwrap();
        let reg = GSet::transitive(s3.clone(), 0).unwrap();
        let c2 = GSet::make(s3.clone(), &[(vec![p("(1 2)", 3)], 2)]).unwrap();
        assert_eq!(reg.degree(), c2.degree());
        assert!(!char0_oracle(&reg, &c2).unwrap());
        assert!(!lin_equiv(&reg, &c2, 0).unwrap().is_equivalent());
        assert!(!bad_primes(&reg, &c2).unwrap().char0_equivalent);
    }

    #[test]
    fn similarity_examples() {
        let (x, y) = a4_pair();
        assert!(similar(&x, &x).unwrap());
        assert!(!similar(&x, &y).unwrap());
        let s3 = named_group("S 3").unwrap();
        let a = GSet::make(s3.clone(), &[(vec![p("(1 2)", 3)], 1)]).unwrap();
        let b = GSet::make(s3.clone(), &[(vec![p("(1 3)", 3)], 1)]).unwrap();
        assert!(similar(&a, &b).unwrap());
        // Two C2 lines in C2² are swapped by an automorphism
        let v4 = named_group("E 2 2").unwrap();
        let l = v4.lattice().unwrap();
        let m1 = GSet::transitive(v4.clone(), 1).unwrap().disjoint_union(&GSet::transitive(v4.clone(), 0).unwrap()).unwrap();
        let m2 = GSet::transitive(v4.clone(), 2).unwrap().disjoint_union(&GSet::transitive(v4.clone(), 0).unwrap()).unwrap();
        assert_eq!(l.class(1).order, 2);
        assert!(similar(&m1, &m2).unwrap());
        let k1 = GSet::transitive(v4.clone(), 1).unwrap();
        let k2 = GSet::transitive(v4.clone(), 2).unwrap();
        assert!(matches!(similar(&k1, &k2), Err(Error::KernelMismatch(2, 2))));
    }
}
