//! Group specs: `C n | D n | S n | A n | E q k | Q8 | M m n r |
//! product(spec, spec) | perm: "<cycles>" ... deg=n`.

use std::sync::Arc;

use super::group::is_prime;
use super::{Caps, DirectProduct, PermGroup, Permutation};
use crate::{Error, Result};

/// Builds the group described by `spec` with default caps.
pub fn named_group(spec: &str) -> Result<Arc<PermGroup>> {
    named_group_with_caps(spec, Caps::default())
}

pub fn named_group_with_caps(spec: &str, caps: Caps) -> Result<Arc<PermGroup>> {
    let spec = spec.trim();
    if let Some(inner) = spec.strip_prefix("product") {
        let inner = inner.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Spec(format!("malformed product in {spec:?}")))?;
        let (a, b) = split_top_level_comma(inner)
            .ok_or_else(|| Error::Spec(format!("product needs two factors in {spec:?}")))?;
        let left = named_group_with_caps(a, caps)?;
        let right = named_group_with_caps(b, caps)?;
        return Ok(DirectProduct::new(left, right)?.group);
    }
    if let Some(rest) = spec.strip_prefix("perm:") {
        return perm_spec(rest, caps, spec);
    }
    let toks: Vec<&str> = spec.split_whitespace().collect();
    let nums = |k: usize| -> Result<Vec<usize>> {
        if toks.len() != k + 1 {
            return Err(Error::Spec(format!("{:?} expects {k} parameter(s) in {spec:?}", toks[0])));
        }
        toks[1..]
            .iter()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Spec(format!("bad number {t:?} in {spec:?}")))
            })
            .collect()
    };
    let group = match toks.first().copied() {
        Some("C") => {
            let n = positive(nums(1)?[0], spec)?;
            regular(n, |x, y| (x + y) % n, &[1 % n], caps)?
        }
        Some("D") => {
            let n = positive(nums(1)?[0], spec)?;
            metacyclic(n, 2, (n as u64 + n as u64 - 1) % n as u64, caps)?
        }
        Some("M") => {
            let v = nums(3)?;
            let (m, n, r) = (positive(v[0], spec)?, positive(v[1], spec)?, v[2] as u64);
            if mod_pow(r, n as u64, m as u64) != 1 % m as u64 {
                return Err(Error::Presentation(format!("{r}^{n} is not 1 mod {m}")));
            }
            let twist = n as u64 * ((r + m as u64 - 1) % m as u64);
            if num_integer::gcd(m as u64, twist) != 1 {
                return Err(Error::Presentation(format!(
                    "gcd({m}, {n}·({r}-1)) = {} ≠ 1",
                    num_integer::gcd(m as u64, twist)
                )));
            }
            metacyclic(m, n, r % m as u64, caps)?
        }
        Some("E") => {
            let v = nums(2)?;
            let (q, k) = (v[0], positive(v[1], spec)?);
            if !is_prime(q as u64) {
                return Err(Error::Spec(format!("E needs a prime, got {q}")));
            }
            let size = q.checked_pow(k as u32).filter(|&s| s <= caps.order).ok_or(Error::CapExceeded {
                what: "group order",
                cap: caps.order,
                reached: caps.order + 1,
            })?;
            let gens: Vec<usize> = (0..k).map(|i| q.pow(i as u32)).collect();
            regular(
                size,
                |x, y| {
                    let (mut a, mut b, mut out, mut place) = (x, y, 0, 1);
                    for _ in 0..k {
                        out += ((a % q + b % q) % q) * place;
                        a /= q;
                        b /= q;
                        place *= q;
                    }
                    out
                },
                &gens,
                caps,
            )?
        }
        Some("Q8") if toks.len() == 1 => quaternion(caps)?,
        Some("S") => {
            let n = positive(nums(1)?[0], spec)?;
            let mut gens = Vec::new();
            if n >= 2 {
                gens.push(Permutation::parse("(1 2)", n)?);
                let cycle: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
                gens.push(Permutation::parse(&format!("({})", cycle.join(" ")), n)?);
            }
            PermGroup::from_generators(n, gens, caps)?
        }
        Some("A") => {
            let n = positive(nums(1)?[0], spec)?;
            let gens = (3..=n)
                .map(|i| Permutation::parse(&format!("(1 2 {i})"), n))
                .collect::<Result<Vec<_>>>()?;
            PermGroup::from_generators(n, gens, caps)?
        }
        _ => return Err(Error::Spec(format!("unknown group spec {spec:?}"))),
    };
    Ok(Arc::new(group.with_label(toks.join(" "))))
}

fn positive(n: usize, spec: &str) -> Result<usize> {
    if n == 0 {
        Err(Error::Spec(format!("parameter must be positive in {spec:?}")))
    } else {
        Ok(n)
    }
}

fn mod_pow(base: u64, exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    for _ in 0..exp {
        acc = acc * (base % m) % m;
    }
    acc
}

fn split_top_level_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let mut quoted = false;
    for (i, c) in s.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '(' if !quoted => depth += 1,
            ')' if !quoted => depth -= 1,
            ',' if !quoted && depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

fn perm_spec(rest: &str, caps: Caps, spec: &str) -> Result<Arc<PermGroup>> {
    let mut cycles = Vec::new();
    let mut degree = None;
    let mut s = rest.trim();
    while !s.is_empty() {
        if let Some(r) = s.strip_prefix('"') {
            let end = r
                .find('"')
                .ok_or_else(|| Error::Spec(format!("unterminated quote in {spec:?}")))?;
            cycles.push(&r[..end]);
            s = r[end + 1..].trim_start();
        } else if let Some(r) = s.strip_prefix("deg=") {
            let tok = r.split_whitespace().next().unwrap_or("");
            degree = Some(
                tok.parse::<usize>()
                    .map_err(|_| Error::Spec(format!("bad degree {tok:?} in {spec:?}")))?,
            );
            s = r[tok.len()..].trim_start();
        } else {
            return Err(Error::Spec(format!("unexpected text {s:?} in {spec:?}")));
        }
    }
    let degree = degree.ok_or_else(|| Error::Spec(format!("missing deg= in {spec:?}")))?;
    let gens = cycles
        .iter()
        .map(|c| Permutation::parse(c, degree))
        .collect::<Result<Vec<_>>>()?;
    let label = gens.iter().map(|g| format!("\"{g}\"")).collect::<Vec<_>>().join(" ");
    Ok(Arc::new(
        PermGroup::from_generators(degree, gens, caps)?.with_label(format!("perm: {label} deg={degree}")),
    ))
}

/// Left-regular representation of an abstract group on `0..size`, given its
/// multiplication and generator indices. Point `x+1` is abstract element `x`.
fn regular(
    size: usize,
    mul: impl Fn(usize, usize) -> usize,
    gens: &[usize],
    caps: Caps,
) -> Result<PermGroup> {
    if size > caps.order {
        return Err(Error::CapExceeded {
            what: "group order",
            cap: caps.order,
            reached: size,
        });
    }
    let perms = gens
        .iter()
        .map(|&g| Permutation::from_images((0..size).map(|x| mul(g, x) as u32).collect()))
        .collect::<Result<Vec<_>>>()?;
    let perms = if size == 1 { Vec::new() } else { perms };
    PermGroup::from_generators(size, perms, caps)
}

/// `⟨a, b | a^m = b^n = 1, b a b⁻¹ = a^r⟩`, element `a^i b^j` at `i + m j`.
fn metacyclic(m: usize, n: usize, r: u64, caps: Caps) -> Result<PermGroup> {
    let mut rpow = vec![1 % m as u64; n];
    for j in 1..n {
        rpow[j] = rpow[j - 1] * r % m as u64;
    }
    let mul = |x: usize, y: usize| {
        let (i, j) = (x % m, x / m);
        let (k, l) = (y % m, y / m);
        let a = (i as u64 + rpow[j] * k as u64) % m as u64;
        a as usize + m * ((j + l) % n)
    };
    regular(m * n, mul, &[1 % (m * n), m % (m * n)], caps)
}

/// `⟨a, b | a⁴ = 1, b² = a², b a b⁻¹ = a⁻¹⟩`, element `a^i b^j` at `i + 4 j`.
fn quaternion(caps: Caps) -> Result<PermGroup> {
    let mul = |x: usize, y: usize| {
        let (i, j) = (x % 4, x / 4);
        let (k, l) = (y % 4, y / 4);
        let k = if j == 1 { (4 - k) % 4 } else { k };
        if j == 1 && l == 1 {
            (i + k + 2) % 4
        } else {
            (i + k) % 4 + 4 * (j + l)
        }
    };
    regular(8, mul, &[1, 4], caps)
}
