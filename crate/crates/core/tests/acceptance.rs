//! Exit criteria. Each criterion prints one PASS/FAIL line; the test fails if
//! any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gassmann::beaulieu::{lift, sym_gassmann_check, sym_lin_equiv_modp, sym_nonisomorphic};
use gassmann::constructions::{bounded_pair, d6_pair, group_is_cyclic_mod_p, prescribed_bad_primes_pair, qgroup_pair};
use gassmann::gsets::{induce_along, marks_table, restrict_along};
use gassmann::linalg::kernel_basis;
use gassmann::linequiv::{bad_primes, char0_oracle, lin_equiv};
use gassmann::perm::{abstract_isomorphic, prime_divisors, quotient_group};
use gassmann::search::mindeg;
use gassmann::{named_group, Caps, ElemSet, GSet, Homomorphism, PermGroup, Permutation, Verdict};

const CORPUS: [&str; 15] = [
    "E 2 2",
    "E 3 2",
    "product(C 2, C 4)",
    "E 2 3",
    "D 3",
    "D 4",
    "D 5",
    "D 6",
    "D 7",
    "D 8",
    "A 4",
    "S 4",
    "Q8",
    "M 5 4 2",
    "M 7 3 2",
];

const SAMPLE_SEED: u64 = 0x6a55_6d61;
const SAMPLES_PER_GROUP: usize = 100;
const SAMPLE_MAX_DEGREE: u64 = 20;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn p(s: &str, n: usize) -> Permutation {
    Permutation::parse(s, n).unwrap()
}

fn group(spec: &str) -> Arc<PermGroup> {
    named_group(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    if elapsed > Duration::from_secs(limit_secs) {
        Err(format!("took {elapsed:.2?}, limit {limit_secs}s"))
    } else {
        Ok(())
    }
}

fn a4_paper_pair() -> (GSet, GSet) {
    let g = group("A 4");
    let x = GSet::make(g.clone(), &[(vec![p("(1 2 3)", 4), p("(1 2)(3 4)", 4)], 1), (vec![p("(1 2)(3 4)", 4)], 1)])
        .unwrap();
    let y = GSet::make(g, &[(vec![p("(1 2)(3 4)", 4), p("(1 3)(2 4)", 4)], 1), (vec![p("(1 2 3)", 4)], 1)]).unwrap();
    (x, y)
}

/// Brute-force bad primes: subgroups from pairs of elements, cyclic-mod-p
/// tested from element orders, fixed cosets counted directly.
mod oracle {
    use super::*;

    fn close(g: &PermGroup, seed: &[u32]) -> BTreeSet<u32> {
        let mut set: BTreeSet<u32> = seed.iter().copied().collect();
        set.insert(g.index_of(&Permutation::identity(g.degree())).unwrap());
        loop {
            let current: Vec<u32> = set.iter().copied().collect();
            let mut grew = false;
            for &a in &current {
                for &b in &current {
                    grew |= set.insert(g.mul(a, b));
                }
            }
            if !grew {
                return set;
            }
        }
    }

    fn two_generated_subgroups(g: &PermGroup) -> BTreeSet<BTreeSet<u32>> {
        let n = g.order() as u32;
        let mut out = BTreeSet::new();
        for a in 0..n {
            for b in a..n {
                out.insert(close(g, &[a, b]));
            }
        }
        out
    }

    fn is_prime_power_of(mut n: u32, p: u32) -> bool {
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }

    fn cyclic_mod(g: &PermGroup, k: &BTreeSet<u32>, p: u32) -> bool {
        let sylow: Vec<u32> = if p == 0 {
            Vec::new()
        } else {
            k.iter().copied().filter(|&x| is_prime_power_of(g.element_order(x), p)).collect()
        };
        let sylow_set = close(g, &sylow);
        if sylow_set.len() != sylow.len().max(1) {
            return false;
        }
        k.iter().any(|&x| {
            let mut seed = sylow.clone();
            seed.push(x);
            close(g, &seed) == *k
        })
    }

    fn fixed_cosets(g: &PermGroup, k: &BTreeSet<u32>, h: &ElemSet) -> u64 {
        let mut cosets = BTreeSet::new();
        for x in 0..g.order() as u32 {
            cosets.insert(h.iter().map(|y| g.mul(x, y)).min().unwrap());
        }
        cosets
            .into_iter()
            .filter(|&x| k.iter().all(|&a| h.contains(g.mul(g.mul(g.inv(x), a), x))))
            .count() as u64
    }

    fn fix(x: &GSet, k: &BTreeSet<u32>) -> u64 {
        let g = x.group();
        x.mult()
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(c, &m)| m * fixed_cosets(g, k, x.lattice().class(c).rep()))
            .sum()
    }

    pub fn equivalent(x: &GSet, y: &GSet, p: u32) -> bool {
        let g = x.group();
        two_generated_subgroups(g)
            .iter()
            .filter(|k| cyclic_mod(g, k, p))
            .all(|k| fix(x, k) == fix(y, k))
    }

    /// `None` when the pair is inequivalent in characteristic 0.
    pub fn bad_primes(x: &GSet, y: &GSet) -> Option<Vec<u32>> {
        if !equivalent(x, y, 0) {
            return None;
        }
        Some(
            prime_divisors(x.group().order())
                .into_iter()
                .filter(|&p| !equivalent(x, y, p))
                .collect(),
        )
    }
}

fn random_gset(g: &Arc<PermGroup>, rng: &mut ChaCha8Rng, degree: u64) -> GSet {
    let lattice = g.lattice().unwrap();
    let index: Vec<u64> = lattice.classes().iter().map(|c| c.index_in(g.order()) as u64).collect();
    let mut mult = vec![0u64; index.len()];
    let mut left = degree;
    while left > 0 {
        let fits: Vec<usize> = (0..index.len()).filter(|&c| index[c] <= left).collect();
        let c = fits[rng.gen_range(0..fits.len())];
        mult[c] += 1;
        left -= index[c];
    }
    GSet::from_mult(g.clone(), mult).unwrap()
}

/// Splits an integer kernel vector into positive and negative parts.
fn split(v: &[BigInt]) -> (Vec<u64>, Vec<u64>) {
    let part = |neg: bool| {
        v.iter()
            .map(|c| {
                if c.is_positive() != neg && !c.is_zero() {
                    c.abs().try_into().unwrap()
                } else {
                    0u64
                }
            })
            .collect()
    };
    (part(false), part(true))
}

/// Seeded sample: a quarter identical pairs, half independent random pairs
/// of equal degree, a quarter built from random integer combinations of the
/// characteristic-0 marks kernel.
fn sample_pairs(g: &Arc<PermGroup>, rng: &mut ChaCha8Rng) -> Vec<(GSet, GSet)> {
    let table = marks_table(g, 0).unwrap();
    let kernel = kernel_basis(&table.entries, table.columns.len());
    let index: Vec<u64> = {
        let lattice = g.lattice().unwrap();
        lattice.classes().iter().map(|c| c.index_in(g.order()) as u64).collect()
    };
    let degree_of = |m: &[u64]| m.iter().zip(&index).map(|(a, b)| a * b).sum::<u64>();
    let mut out = Vec::with_capacity(SAMPLES_PER_GROUP);
    for i in 0..SAMPLES_PER_GROUP {
        let degree = rng.gen_range(1..=SAMPLE_MAX_DEGREE);
        let pair = match i % 4 {
            0 => {
                let x = random_gset(g, rng, degree);
                (x.clone(), x)
            }
            3 if !kernel.is_empty() => {
                let mut v = vec![BigInt::zero(); index.len()];
                while v.iter().all(Zero::is_zero) {
                    for b in &kernel {
                        let c = BigInt::from(rng.gen_range(-1i64..=1));
                        for (vi, bi) in v.iter_mut().zip(b) {
                            *vi += &c * bi;
                        }
                    }
                }
                let (plus, minus) = split(&v);
                let d = degree_of(&plus);
                if d <= SAMPLE_MAX_DEGREE {
                    let pad = rng.gen_range(0..=SAMPLE_MAX_DEGREE - d);
                    let base = random_gset(g, rng, pad);
                    let x = base.disjoint_union(&GSet::from_mult(g.clone(), plus).unwrap()).unwrap();
                    let y = base.disjoint_union(&GSet::from_mult(g.clone(), minus).unwrap()).unwrap();
                    (x, y)
                } else {
                    (random_gset(g, rng, degree), random_gset(g, rng, degree))
                }
            }
            _ => (random_gset(g, rng, degree), random_gset(g, rng, degree)),
        };
        out.push(pair);
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = mindeg(&group("S 3"), 0, None).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(r.mindeg == Some(8), "mindeg(S3) = {:?}", r.mindeg);
    let w = r.witness.as_ref().ok_or("no witness")?;
    ensure!(w.verify().map_err(|e| e.to_string())?, "witness failed re-verification");
    ensure!(w.degree() == 8, "witness degree {}", w.degree());
    within(elapsed, 10)?;
    Ok(format!("mindeg 8, witness {} vs {} verified, {elapsed:.2?}", w.x, w.y))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let r = mindeg(&group("A 4"), 0, None).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(r.mindeg == Some(7), "mindeg(A4) = {:?}", r.mindeg);
    ensure!(r.witness.as_ref().unwrap().verify().unwrap(), "search witness failed re-verification");
    let (x, y) = a4_paper_pair();
    ensure!(x.degree() == 7 && y.degree() == 7, "degrees {} and {}", x.degree(), y.degree());
    let cert = lin_equiv(&x, &y, 0).map_err(|e| e.to_string())?;
    ensure!(cert.is_equivalent(), "explicit pair not equivalent at 0");
    ensure!(cert.recheck(&x, &y).unwrap(), "certificate recheck failed");
    ensure!(!x.is_isomorphic(&y).unwrap(), "explicit pair isomorphic");
    within(elapsed, 10)?;
    Ok(format!("mindeg 7, explicit pair equivalent and non-isomorphic, {elapsed:.2?}"))
}

fn criterion_3() -> Outcome {
    let c22 = mindeg(&group("E 2 2"), 0, None).map_err(|e| e.to_string())?;
    ensure!(c22.mindeg == Some(6), "mindeg(C2xC2) = {:?}", c22.mindeg);
    let mut seen = Vec::new();
    for n in [3u64, 5, 7] {
        let r = mindeg(&group(&format!("D {n}")), 0, None).map_err(|e| e.to_string())?;
        // (n+1)/n times the order 2n
        ensure!(r.mindeg == Some(2 * (n + 1)), "mindeg(D{n}) = {:?}, expected {}", r.mindeg, 2 * (n + 1));
        seen.push(format!("D{n}={}", 2 * (n + 1)));
    }
    Ok(format!("C2xC2=6, {}", seen.join(", ")))
}

fn criterion_4() -> Outcome {
    let (x, y) = a4_paper_pair();
    let computed = bad_primes(&x, &y).map_err(|e| e.to_string())?;
    let expected = oracle::bad_primes(&x, &y).ok_or("oracle: A4 pair inequivalent at 0")?;
    ensure!(expected == vec![2], "oracle gives {expected:?}");
    ensure!(computed.char0_equivalent && computed.primes == expected, "computed {:?}", computed.primes);

    let d6 = d6_pair(Caps::default()).map_err(|e| e.to_string())?;
    let computed = bad_primes(&d6.x, &d6.y).map_err(|e| e.to_string())?;
    let expected = oracle::bad_primes(&d6.x, &d6.y).ok_or("oracle: D6 pair inequivalent at 0")?;
    ensure!(expected.is_empty() && computed.primes.is_empty(), "D6 bad primes {:?} / {expected:?}", computed.primes);
    ensure!(d6.chars() == vec![0, 2, 3], "certificates at {:?}", d6.chars());
    for c in &d6.certificates {
        ensure!(c.verdict == Verdict::Equivalent && c.recheck(&d6.x, &d6.y).unwrap(), "certificate at {} invalid", c.char);
    }
    Ok("A4 pair {2}, D6 pair {} with certificates at 0, 2, 3".into())
}

fn criterion_5() -> Outcome {
    let d6 = d6_pair(Caps::default()).map_err(|e| e.to_string())?;
    ensure!(!d6.x.is_isomorphic(&d6.y).unwrap(), "D6 pair isomorphic");
    let g = d6.x.group().clone();
    let lattice = g.lattice().unwrap();
    let mut checked = 0;
    for c in 0..lattice.class_count() {
        if c == lattice.full_class() {
            continue;
        }
        let h = g.subgroup_as_group(lattice.class(c).rep()).unwrap();
        let incl = Homomorphism::inclusion(h, g.clone()).unwrap();
        let rx = restrict_along(&incl, &d6.x).unwrap();
        let ry = restrict_along(&incl, &d6.y).unwrap();
        ensure!(rx.is_isomorphic(&ry).unwrap(), "restriction to class {c} (order {}) differs", lattice.class(c).order);
        checked += 1;
    }
    Ok(format!("{checked} proper subgroup classes, all restrictions isomorphic"))
}

fn criterion_6() -> Outcome {
    let pair = qgroup_pair(&group("E 3 2"), 0).map_err(|e| e.to_string())?;
    ensure!(pair.degree() == 12, "degree {}", pair.degree());
    ensure!(pair.degree() * 3 == 4 * 9, "degree differs from (q+1)/q * 9");
    for (p, want) in [(0, true), (2, true), (3, false)] {
        let cert = lin_equiv(&pair.x, &pair.y, p).map_err(|e| e.to_string())?;
        ensure!(cert.is_equivalent() == want, "characteristic {p}: {}", cert.verdict);
    }
    ensure!(!pair.x.is_isomorphic(&pair.y).unwrap(), "pair isomorphic");
    Ok(format!("degree 12: {} vs {}", pair.x, pair.y))
}

fn criterion_7() -> Outcome {
    let mut worst = (0u64, 1u64, "");
    for spec in CORPUS {
        let g = group(spec);
        let (pair, _) = bounded_pair(&g).map_err(|e| format!("{spec}: {e}"))?;
        let order = g.order() as u64;
        ensure!(2 * pair.degree() <= 3 * order, "{spec}: degree {} over order {order}", pair.degree());
        ensure!(pair.verify().map_err(|e| e.to_string())?, "{spec}: pair failed re-verification");
        ensure!(lin_equiv(&pair.x, &pair.y, 0).unwrap().is_equivalent(), "{spec}: not equivalent at 0");
        if pair.degree() * worst.1 > worst.0 * order {
            worst = (pair.degree(), order, spec);
        }
    }
    Ok(format!("{} groups, largest ratio {}/{} ({})", CORPUS.len(), worst.0, worst.1, worst.2))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let d6 = d6_pair(Caps::default()).map_err(|e| e.to_string())?;
    let hx = lift(&d6.x).map_err(|e| e.to_string())?;
    let hy = lift(&d6.y).map_err(|e| e.to_string())?;
    ensure!(hx.n == 24 && hy.n == 24, "lifted degrees {} and {}", hx.n, hy.n);
    let gassmann = sym_gassmann_check(&hx, &hy).map_err(|e| e.to_string())?;
    ensure!(gassmann.equal, "cycle types differ");
    for p in [2, 3] {
        let r = sym_lin_equiv_modp(&hx, &hy, p).map_err(|e| e.to_string())?;
        ensure!(r.verdict == Verdict::Equivalent, "characteristic {p}: {}", r.verdict);
    }
    let (noniso, conjugator) = sym_nonisomorphic(&hx, &hy);
    ensure!(noniso && conjugator.is_none(), "lifted images are conjugate");
    let elapsed = start.elapsed();
    within(elapsed, 60)?;
    Ok(format!("degree 24, Gassmann, equivalent at 2 and 3, not conjugate, {elapsed:.2?}"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let (mut pairs, mut equivalent, mut lifted) = (0, 0, 0);
    let mut disagreements = Vec::new();
    let (mut marks_disagree, mut oracle_only, mut twisted) = (0, 0, 0);
    for spec in CORPUS {
        let g = group(spec);
        for (x, y) in sample_pairs(&g, &mut rng) {
            pairs += 1;
            let oracle = char0_oracle(&x, &y).unwrap();
            let marks = lin_equiv(&x, &y, 0).unwrap().is_equivalent();
            equivalent += oracle as usize;
            if marks != oracle {
                marks_disagree += 1;
                disagreements.push(format!("{spec}: marks {marks}, oracle {oracle} on {x} vs {y}"));
            }
            if x.is_faithful() && y.is_faithful() {
                lifted += 1;
                let hx = lift(&x).unwrap();
                let hy = lift(&y).unwrap();
                let sym = x.degree() == y.degree() && sym_gassmann_check(&hx, &hy).unwrap().equal;
                if sym != oracle {
                    oracle_only += oracle as usize;
                    // conjugate lifts: Y is X twisted by an automorphism of G
                    twisted += sym_nonisomorphic(&hx, &hy).1.is_some() as usize;
                    disagreements.push(format!("{spec}: lifted Gassmann {sym}, oracle {oracle} on {x} vs {y}"));
                }
            }
        }
    }
    if !disagreements.is_empty() {
        return Err(format!(
            "{} disagreements over {pairs} pairs ({marks_disagree} marks vs oracle, {} lifted Gassmann vs oracle, of which {oracle_only} with the oracle equivalent and {twisted} with conjugate lifts); first: {}",
            disagreements.len(),
            disagreements.len() - marks_disagree,
            disagreements[0]
        ));
    }
    Ok(format!("{pairs} pairs ({equivalent} equivalent, {lifted} lifted), no disagreement"))
}

/// Induction and restriction identities along inclusions, projections and
/// their composites.
fn functor_identities(spec: &str) -> Result<usize, String> {
    let g = group(spec);
    let lattice = g.lattice().unwrap();
    let mut checks = 0;
    for nid in lattice.normal_subgroups() {
        let normal = lattice.class(nid).rep().clone();
        let (q, proj) = quotient_group(&g, &normal).unwrap();
        for hclass in lattice.classes() {
            let h = g.subgroup_as_group(hclass.rep()).unwrap();
            let images: Vec<Permutation> = h
                .generators()
                .iter()
                .map(|s| q.element(proj.apply(g.index_of(s).unwrap())).clone())
                .collect();
            let psi = Homomorphism::new(h.clone(), q.clone(), images).unwrap();
            let image_order = psi.image().len() as u64;
            let kernel = psi.kernel().clone();
            for kclass in h.lattice().unwrap().classes() {
                let k = kclass.rep();
                let x = GSet::coset_space(h.clone(), k).unwrap();
                let induced = induce_along(&psi, &x).unwrap();
                let expected = GSet::coset_space(q.clone(), &psi.image_of_set(k)).unwrap();
                ensure!(induced.is_isomorphic(&expected).unwrap(), "{spec}: induced coset space is not G/psi(K)");
                // (G : im psi) / (ker psi : K ∩ ker psi) * #(H/K)
                let num = (q.order() as u64 / image_order) * x.degree();
                let den = (kernel.len() / kernel.intersection(k).len()) as u64;
                ensure!(num.is_multiple_of(den) && induced.degree() == num / den, "{spec}: induced degree {}", induced.degree());
                checks += 1;
            }
        }
        // surjective: induction is the orbit space of the kernel
        for kclass in lattice.classes() {
            let k = kclass.rep();
            let x = GSet::coset_space(g.clone(), k).unwrap();
            let induced = induce_along(&proj, &x).unwrap();
            let mut gens = g.subgroup_generators(k);
            gens.extend(g.subgroup_generators(&normal));
            let kn = g.closure(&gens);
            ensure!(induced.degree() == (g.order() / kn.len()) as u64, "{spec}: orbit space size");
            checks += 1;
        }
        for c in 0..q.lattice().unwrap().class_count() {
            let y = GSet::transitive(q.clone(), c).unwrap().scaled(2);
            let back = induce_along(&proj, &restrict_along(&proj, &y).unwrap()).unwrap();
            ensure!(back.is_isomorphic(&y).unwrap(), "{spec}: inflation then induction is not the identity");
            checks += 1;
        }
    }
    for hclass in lattice.classes() {
        let h = g.subgroup_as_group(hclass.rep()).unwrap();
        let incl = Homomorphism::inclusion(h.clone(), g.clone()).unwrap();
        let index = (g.order() / h.order()) as u64;
        let hlat = h.lattice().unwrap();
        let mut x = GSet::empty(h.clone()).unwrap();
        for c in 0..hlat.class_count() {
            x = x.disjoint_union(&GSet::transitive(h.clone(), c).unwrap()).unwrap();
        }
        let induced = induce_along(&incl, &x).unwrap();
        ensure!(induced.degree() == index * x.degree(), "{spec}: injective degree formula");
        let stabs: Vec<Arc<PermGroup>> = (0..hlat.class_count())
            .map(|c| h.subgroup_as_group(hlat.class(c).rep()).unwrap())
            .collect();
        for c in induced.stabilizer_classes() {
            let s = g.subgroup_as_group(lattice.class(c).rep()).unwrap();
            let found = stabs.iter().any(|t| abstract_isomorphic(&s, t).unwrap());
            ensure!(found, "{spec}: induced stabilizer of order {} has no counterpart", s.order());
        }
        checks += 2;
    }
    Ok(checks)
}

fn criterion_10() -> Outcome {
    let mut identity_checks = 0;
    for spec in CORPUS {
        identity_checks += functor_identities(spec)?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut orbit_checks = 0;
    for spec in CORPUS {
        let g = group(spec);
        let mut pairs = sample_pairs(&g, &mut rng);
        let (built, _) = bounded_pair(&g).unwrap();
        pairs.push((built.x, built.y));
        for (x, y) in pairs {
            for p in [0u32, 2, 3, 5] {
                if lin_equiv(&x, &y, p).unwrap().is_equivalent() {
                    ensure!(x.orbit_count() == y.orbit_count(), "{spec}: orbit counts differ at {p} on {x} vs {y}");
                    orbit_checks += 1;
                }
            }
        }
    }

    let mut infinite = Vec::new();
    for spec in CORPUS {
        let g = group(spec);
        for p in [0u32, 2, 3, 5] {
            let is_infinite = match mindeg(&g, p, None) {
                Ok(r) => r.mindeg.is_none(),
                Err(gassmann::Error::SearchCapExceeded { .. }) => false,
                Err(e) => return Err(format!("{spec} at {p}: {e}")),
            };
            let cyclic = group_is_cyclic_mod_p(&g, p);
            ensure!(is_infinite == cyclic, "{spec} at {p}: infinite {is_infinite}, cyclic mod p {cyclic}");
            if is_infinite {
                infinite.push(format!("{spec}@{p}"));
            }
        }
    }

    for request in [vec![2u32], vec![3], vec![2, 3]] {
        let (_, pair) = prescribed_bad_primes_pair(&request, Caps::default()).map_err(|e| e.to_string())?;
        let got = bad_primes(&pair.x, &pair.y).unwrap();
        ensure!(got.char0_equivalent && got.primes == request, "requested {request:?}, got {:?}", got.primes);
    }

    Ok(format!(
        "{identity_checks} functor checks, {orbit_checks} orbit-count checks, infinite exactly at [{}], bad primes match",
        infinite.join(", ")
    ))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("mindeg of S3", criterion_1),
        ("mindeg of A4 and its explicit pair", criterion_2),
        ("mindeg of C2xC2 and dihedral groups", criterion_3),
        ("bad primes", criterion_4),
        ("restrictions of the D6 pair", criterion_5),
        ("q-group pair for C3xC3", criterion_6),
        ("bounded pairs over the corpus", criterion_7),
        ("symmetric-group lift of the D6 pair", criterion_8),
        ("oracle agreement on random pairs", criterion_9),
        ("property suites", criterion_10),
    ];
    let mut failed = Vec::new();
    println!();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why} [{elapsed:.2?}]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
