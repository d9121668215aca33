//! Explicit pairs of non-isomorphic, linearly equivalent G-sets.

use std::collections::HashMap;
use std::sync::Arc;

use crate::gsets::{exterior_product, induce_along, reduce_pair, restrict_along, GSet};
use crate::linequiv::{bad_primes, cyclic_mod_p_classes, lin_equiv, EquivCertificate};
use crate::perm::{
    abstract_isomorphic, frattini_subgroup, frobenius_structure, is_cyclic_mod_p, is_prime, named_group_with_caps,
    prime_divisors, quotient_group, sylow_subgroup, DirectProduct, ElemSet, Homomorphism, PermGroup,
};
use crate::{Characteristic, Error, Result};

/// Largest family handled by [`build_exist_pair`] before the subset
/// multiplicities risk overflow.
const MAX_FAMILY: usize = 60;

/// A family of subgroups `M_1, …, M_ℓ` satisfying the three conditions:
/// the union `H` is a subgroup, each `M_i` is proper in `H`, and every
/// cyclic-mod-`p` subgroup of `H` lies in some `M_i`.
#[derive(Debug, Clone)]
pub struct FamilyM {
    pub group: Arc<PermGroup>,
    pub members: Vec<ElemSet>,
    pub union: ElemSet,
    pub p: Characteristic,
}

pub fn validate_family(group: &Arc<PermGroup>, members: Vec<ElemSet>, p: Characteristic) -> Result<FamilyM> {
    if members.is_empty() {
        return Err(Error::InvalidFamily(1));
    }
    let lattice = group.lattice()?;
    for (i, m) in members.iter().enumerate() {
        if lattice.class_of(m).is_none() {
            return Err(Error::NotSubgroup(format!("{:?}", group.format_set_gens(m))));
        }
        if members[..i].contains(m) {
            return Err(Error::Spec(format!(
                "family member {:?} listed twice",
                group.format_set_gens(m)
            )));
        }
    }
    let union = members
        .iter()
        .fold(ElemSet::empty(group.order()), |acc, m| acc.union(m));
    if !group.is_subgroup(&union) {
        return Err(Error::InvalidFamily(1));
    }
    if members.iter().any(|m| m.len() == union.len()) {
        return Err(Error::InvalidFamily(2));
    }
    let rows = cyclic_mod_p_classes(group, p)?;
    for (cid, c) in lattice.all_subgroups() {
        if rows.binary_search(&cid).is_ok() && c.is_subset(&union) && !members.iter().any(|m| c.is_subset(m)) {
            return Err(Error::InvalidFamily(3));
        }
    }
    Ok(FamilyM {
        group: group.clone(),
        members,
        union,
        p,
    })
}

/// The family of all maximal subgroups.
pub fn maximal_family(group: &Arc<PermGroup>, p: Characteristic) -> Result<FamilyM> {
    let members = group.lattice()?.maximal_subgroups().into_iter().cloned().collect();
    validate_family(group, members, p)
}

/// A pair with attached equivalence certificates.
#[derive(Debug, Clone)]
pub struct VerifiedPair {
    pub x: GSet,
    pub y: GSet,
    /// All with verdict equivalent.
    pub certificates: Vec<EquivCertificate>,
    /// Why `x` and `y` are not isomorphic.
    pub witness: String,
}

impl VerifiedPair {
    /// Certifies `x ~ y` at every characteristic in `chars` and `x ≇ y`.
    pub fn certify(x: GSet, y: GSet, chars: &[Characteristic]) -> Result<VerifiedPair> {
        x.check_same_group(&y)?;
        if x == y {
            return Err(Error::Isomorphic);
        }
        let mut chars = chars.to_vec();
        chars.sort_unstable();
        chars.dedup();
        let mut certificates = Vec::with_capacity(chars.len());
        for p in chars {
            let cert = lin_equiv(&x, &y, p)?;
            if !cert.is_equivalent() {
                return Err(Error::NotEquivalent(p));
            }
            certificates.push(cert);
        }
        let witness = nonisomorphism_witness(&x, &y);
        Ok(VerifiedPair {
            x,
            y,
            certificates,
            witness,
        })
    }

    pub fn chars(&self) -> Vec<Characteristic> {
        self.certificates.iter().map(|c| c.char).collect()
    }

    pub fn degree(&self) -> u64 {
        self.x.degree()
    }

    /// Independent re-verification of every stored claim.
    pub fn verify(&self) -> Result<bool> {
        if self.x == self.y
            || self.x.degree() != self.y.degree()
            || self.x.orbit_count() != self.y.orbit_count()
        {
            return Ok(false);
        }
        for c in &self.certificates {
            if !c.is_equivalent() || !c.recheck(&self.x, &self.y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// First subgroup class on which the fixed-point counts differ.
fn nonisomorphism_witness(x: &GSet, y: &GSet) -> String {
    let lattice = x.lattice();
    let g = x.group();
    for (k, class) in lattice.classes().iter().enumerate() {
        let (a, b) = (x.fix_count_class(k), y.fix_count_class(k));
        if a != b {
            return format!(
                "fixed points of <{}> (order {}): {a} vs {b}",
                g.format_set_gens(class.rep()).join(", "),
                class.order
            );
        }
    }
    "multiplicity vectors differ".to_string()
}

/// The pair `X_M`, `Y_M` of a valid family, reduced unless `raw`.
///
/// `X_M = #H·G/H ⊔ ⊔_{S even} #(∩_S M)·G/∩_S M` and
/// `Y_M = ⊔_{S odd} #(∩_S M)·G/∩_S M`, over nonempty index sets `S`.
pub fn build_exist_pair(family: &FamilyM, raw: bool) -> Result<VerifiedPair> {
    let (x, y) = exist_sets(family)?;
    let (x, y) = if raw { (x, y) } else { reduce_pair(&x, &y)? };
    VerifiedPair::certify(x, y, &[0, family.p])
}

fn exist_sets(family: &FamilyM) -> Result<(GSet, GSet)> {
    if family.members.len() > MAX_FAMILY {
        return Err(Error::CapExceeded {
            what: "family size",
            cap: MAX_FAMILY,
            reached: family.members.len(),
        });
    }
    let g = &family.group;
    let lattice = g.lattice()?;
    // intersection -> (number of even subsets, number of odd subsets)
    let mut counts: HashMap<ElemSet, (u64, u64)> = HashMap::new();
    for m in &family.members {
        let mut next = counts.clone();
        for (set, (even, odd)) in &counts {
            let e = next.entry(set.intersection(m)).or_default();
            e.0 += odd;
            e.1 += even;
        }
        next.entry(m.clone()).or_default().1 += 1;
        counts = next;
    }
    let overflow = || Error::CapExceeded {
        what: "family multiplicity",
        cap: u64::MAX as usize,
        reached: u64::MAX as usize,
    };
    let mut x = GSet::empty(g.clone())?.mult().to_vec();
    let mut y = x.clone();
    x[lattice.class_of(&family.union).expect("union is a subgroup")] += family.union.len() as u64;
    for (set, (even, odd)) in counts {
        let class = lattice.class_of(&set).expect("intersections of subgroups are subgroups");
        let size = set.len() as u64;
        x[class] = even.checked_mul(size).and_then(|v| v.checked_add(x[class])).ok_or_else(overflow)?;
        y[class] = odd.checked_mul(size).and_then(|v| v.checked_add(y[class])).ok_or_else(overflow)?;
    }
    Ok((GSet::from_mult(g.clone(), x)?, GSet::from_mult(g.clone(), y)?))
}

/// `X′ = |H|·G/G ⊔ G/1` and `Y′ = |H|·G/H ⊔ G/K` for a Frobenius group with
/// complement `H` and kernel `K`.
pub fn frobenius_pair(g: &Arc<PermGroup>) -> Result<VerifiedPair> {
    let f = frobenius_structure(g)?.filter(|f| f.non_regular).ok_or(Error::NotFrobenius)?;
    let lattice = g.lattice()?;
    let h = f.complement.len() as u64;
    let mut x = vec![0u64; lattice.class_count()];
    let mut y = x.clone();
    x[lattice.full_class()] = h;
    x[0] = 1;
    y[f.complement_class] = h;
    y[lattice.class_of(&f.kernel).expect("kernel is a subgroup")] += 1;
    VerifiedPair::certify(GSet::from_mult(g.clone(), x)?, GSet::from_mult(g.clone(), y)?, &[0])
}

/// Order `q^a` of a prime-power group, as `(q, a)`.
fn prime_power(order: usize) -> Option<(u32, u32)> {
    let primes = prime_divisors(order);
    match primes.as_slice() {
        [q] => {
            let mut a = 0;
            let mut n = order;
            while n > 1 {
                n /= *q as usize;
                a += 1;
            }
            Some((*q, a))
        }
        _ => None,
    }
}

/// The degree `q(q+1)` pair of a non-cyclic `q`-group, built on the Frattini
/// quotient `G̃` from the `q+1` maximal subgroups over a codimension-2
/// subspace `K`, then inflated to `G`. Certified at `0` and `p`.
pub fn qgroup_pair(g: &Arc<PermGroup>, p: Characteristic) -> Result<VerifiedPair> {
    let (q, _) = prime_power(g.order()).ok_or(Error::NotPrimePower(g.order()))?;
    if p == q {
        return Err(Error::SameCharacteristic(p));
    }
    if p != 0 && !is_prime(p as u64) {
        return Err(Error::Spec(format!("characteristic {p} is neither 0 nor prime")));
    }
    if g.is_cyclic() {
        return Err(Error::IsCyclic);
    }
    let phi = frattini_subgroup(g)?;
    let (gt, proj) = quotient_group(g, &phi)?;
    // basis of G̃ as an F_q-space, greedily from the generators then elements
    let mut basis: Vec<u32> = Vec::new();
    let mut span = gt.trivial_set();
    let candidates = gt.generator_indices().iter().copied().chain(0..gt.order() as u32);
    for e in candidates {
        if span.len() == gt.order() {
            break;
        }
        if !span.contains(e) {
            span = gt.extend_closure(&span, &basis, &[e]);
            basis.push(e);
        }
    }
    let k = gt.closure(&basis[2..]);
    let members: Vec<ElemSet> = gt
        .lattice()?
        .maximal_subgroups()
        .into_iter()
        .filter(|m| k.is_subset(m))
        .cloned()
        .collect();
    debug_assert_eq!(members.len(), q as usize + 1);
    let family = validate_family(&gt, members, p)?;
    let base = build_exist_pair(&family, false)?;
    inflate_pair(&proj, &base)
}

/// Induction of a pair along an injective homomorphism. With `guard`, first
/// checks that some stabilizer of `X` is abstractly non-isomorphic to every
/// stabilizer of `Y`, which forces the induced sets apart.
pub fn induce_pair(psi: &Homomorphism, pair: &VerifiedPair, guard: bool) -> Result<VerifiedPair> {
    if !psi.is_injective() {
        return Err(Error::NotInjective);
    }
    if guard {
        let h = psi.source();
        let lattice = h.lattice()?;
        let stabs = |set: &GSet| -> Result<Vec<Arc<PermGroup>>> {
            set.stabilizer_classes()
                .into_iter()
                .map(|c| h.subgroup_as_group(lattice.class(c).rep()))
                .collect()
        };
        let (sx, sy) = (stabs(&pair.x)?, stabs(&pair.y)?);
        let mut found = false;
        for a in &sx {
            let mut isolated = true;
            for b in &sy {
                if abstract_isomorphic(a, b)? {
                    isolated = false;
                    break;
                }
            }
            if isolated {
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::ObstructionFails);
        }
    }
    let x = induce_along(psi, &pair.x)?;
    let y = induce_along(psi, &pair.y)?;
    VerifiedPair::certify(x, y, &pair.chars())
}

/// Inflation of a pair over `G̃` to `G` along a surjection `π: G → G̃`.
pub fn inflate_pair(pi: &Homomorphism, pair: &VerifiedPair) -> Result<VerifiedPair> {
    if !pi.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let x = restrict_along(pi, &pair.x)?;
    let y = restrict_along(pi, &pair.y)?;
    VerifiedPair::certify(x, y, &pair.chars())
}

/// Which branch of [`bounded_pair`] produced the pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundedCase {
    /// Induced from a non-cyclic Sylow `q`-subgroup.
    Sylow { q: u32 },
    /// Inflated from a Frobenius quotient `G/N`.
    FrobeniusQuotient { normal_order: usize },
}

/// A pair of degree at most `3|G|/2` for non-cyclic `G`.
pub fn bounded_pair(g: &Arc<PermGroup>) -> Result<(VerifiedPair, BoundedCase)> {
    if g.is_cyclic() {
        return Err(Error::IsCyclic);
    }
    let bound = (3 * g.order()).div_ceil(2) as u64;
    let check = |pair: VerifiedPair, case: BoundedCase| -> Result<(VerifiedPair, BoundedCase)> {
        if pair.degree() > bound {
            return Err(Error::InternalInvariant(format!(
                "pair of degree {} exceeds {bound}",
                pair.degree()
            )));
        }
        Ok((pair, case))
    };
    for q in prime_divisors(g.order()) {
        let s = sylow_subgroup(g, q)?;
        let sg = g.subgroup_as_group(&s)?;
        if sg.is_cyclic() {
            continue;
        }
        let base = qgroup_pair(&sg, 0)?;
        let incl = Homomorphism::inclusion(sg, g.clone())?;
        return check(induce_pair(&incl, &base, true)?, BoundedCase::Sylow { q });
    }
    let lattice = g.lattice()?;
    for n in lattice.normal_subgroups() {
        let (quotient, proj) = quotient_group(g, lattice.class(n).rep())?;
        if !frobenius_structure(&quotient)?.is_some_and(|f| f.non_regular) {
            continue;
        }
        let base = frobenius_pair(&quotient)?;
        let case = BoundedCase::FrobeniusQuotient {
            normal_order: lattice.class(n).order,
        };
        return check(inflate_pair(&proj, &base)?, case);
    }
    Err(Error::InternalInvariant(
        "non-cyclic group with cyclic Sylow subgroups and no Frobenius quotient".into(),
    ))
}

/// A pair over `∏_{p∈P} C_p²` whose bad-prime set is exactly `P`.
pub fn prescribed_bad_primes_pair(primes: &[u32], caps: crate::Caps) -> Result<(Arc<PermGroup>, VerifiedPair)> {
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    if primes.is_empty() {
        return Err(Error::Spec("empty prime set".into()));
    }
    if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p as u64)) {
        return Err(Error::Spec(format!("{bad} is not prime")));
    }
    let order: u128 = primes.iter().map(|&p| (p as u128).pow(2)).product();
    if order > caps.lattice as u128 {
        return Err(Error::CapExceeded {
            what: "lattice group order",
            cap: caps.lattice,
            reached: order.min(usize::MAX as u128) as usize,
        });
    }
    let mut acc: Option<(Arc<PermGroup>, GSet, GSet)> = None;
    for &p in &primes {
        let g = named_group_with_caps(&format!("E {p} 2"), caps)?;
        let pair = qgroup_pair(&g, 0)?;
        acc = Some(match acc {
            None => (g, pair.x, pair.y),
            Some((h, x, y)) => {
                let prod = DirectProduct::new(h, g)?;
                let px = exterior_product(&prod, &x, &pair.x)?;
                let py = exterior_product(&prod, &y, &pair.y)?;
                (prod.group, px, py)
            }
        });
    }
    let (g, x, y) = acc.expect("at least one prime");
    let found = bad_primes(&x, &y)?;
    if !found.char0_equivalent || found.primes != primes {
        return Err(Error::InternalInvariant(format!(
            "bad primes {:?} differ from the request {primes:?}",
            found.primes
        )));
    }
    let good: Vec<u32> = std::iter::once(0)
        .chain(prime_divisors(g.order()).into_iter().filter(|p| !primes.contains(p)))
        .collect();
    let pair = VerifiedPair::certify(x, y, &good)?;
    Ok((g, pair))
}

/// The two degree-24 sets over `D6 = ⟨a, b | a⁶ = b² = (ab)² = 1⟩`
///
/// `X = G/⟨a²⟩ ⊔ G/⟨b⟩ ⊔ G/⟨ab⟩ ⊔ G/⟨a³⟩ ⊔ 2·G/G` and
/// `Y = G/⟨a²,b⟩ ⊔ G/⟨a²,ab⟩ ⊔ G/⟨a⟩ ⊔ G/1 ⊔ 2·G/⟨b,a³⟩`,
/// certified in characteristics 0, 2 and 3.
pub fn d6_pair(caps: crate::Caps) -> Result<VerifiedPair> {
    let g = named_group_with_caps("D 6", caps)?;
    let (a, b) = (g.generator_indices()[0], g.generator_indices()[1]);
    let a2 = g.mul(a, a);
    let a3 = g.mul(a2, a);
    let ab = g.mul(a, b);
    let lattice = g.lattice()?;
    let mut x = vec![0u64; lattice.class_count()];
    let mut y = x.clone();
    let class = |gens: &[u32]| lattice.class_of(&g.closure(gens)).expect("closure is a subgroup");
    for gens in [&[a2][..], &[b], &[ab], &[a3]] {
        x[class(gens)] += 1;
    }
    x[lattice.full_class()] += 2;
    for gens in [&[a2, b][..], &[a2, ab], &[a], &[]] {
        y[class(gens)] += 1;
    }
    y[class(&[b, a3])] += 2;
    VerifiedPair::certify(GSet::from_mult(g.clone(), x)?, GSet::from_mult(g, y)?, &[0, 2, 3])
}

/// Whether `G` is cyclic mod `p`.
pub fn group_is_cyclic_mod_p(g: &PermGroup, p: Characteristic) -> bool {
    is_cyclic_mod_p(g, &g.full_set(), p)
}
