//! JSON documents for G-sets, certificates, pairs and reports.
//!
//! G-set: `{"group": "<spec>", "orbits": [{"stab_gens": ["(1 2)"], "mult": 2}]}`.
//! Certificate: `{"char": p, "verdict": "equivalent", "rows": [{"gens": [..],
//! "fix_x": n, "fix_y": n}], "witness": <index|null>}`.

use std::collections::HashMap;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::beaulieu::{index_expanded, index_factorial_expr, LiftedSubgroup, SymEquivReport};
use crate::constructions::VerifiedPair;
use crate::gsets::GSet;
use crate::linequiv::{BadPrimeSet, CertRow, EquivCertificate, Verdict};
use crate::perm::{named_group_with_caps, ElemSet, PermGroup, Permutation};
use crate::search::SearchResult;
use crate::{Caps, Error, Result};

/// Groups built from spec strings, shared by label.
#[derive(Debug, Default)]
pub struct GroupCache {
    caps: Caps,
    groups: HashMap<String, Arc<PermGroup>>,
}

impl GroupCache {
    pub fn new(caps: Caps) -> Self {
        GroupCache {
            caps,
            groups: HashMap::new(),
        }
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn get(&mut self, spec: &str) -> Result<Arc<PermGroup>> {
        if let Some(g) = self.groups.get(spec) {
            return Ok(g.clone());
        }
        let g = named_group_with_caps(spec, self.caps)?;
        if let Some(existing) = self.groups.get(g.label()) {
            let existing = existing.clone();
            self.groups.insert(spec.to_string(), existing.clone());
            return Ok(existing);
        }
        self.groups.insert(g.label().to_string(), g.clone());
        self.groups.insert(spec.to_string(), g.clone());
        Ok(g)
    }

    /// Registers an already built group under its label.
    pub fn insert(&mut self, g: Arc<PermGroup>) {
        self.groups.insert(g.label().to_string(), g);
    }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Pretty-printed with a trailing newline.
pub fn to_pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn write_json(path: &Path, value: &Value) -> Result<()> {
    std::fs::write(path, to_pretty(value)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn field<'a>(obj: &'a Value, key: &str, pointer: &str) -> Result<&'a Value> {
    let map = obj
        .as_object()
        .ok_or_else(|| Error::schema(pointer_or_root(pointer), "expected an object"))?;
    map.get(key)
        .ok_or_else(|| Error::schema(pointer_or_root(pointer), format!("missing field {key:?}")))
}

fn pointer_or_root(p: &str) -> &str {
    if p.is_empty() {
        "/"
    } else {
        p
    }
}

fn as_u64(v: &Value, pointer: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::schema(pointer, "expected a non-negative integer"))
}

fn as_str<'a>(v: &'a Value, pointer: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| Error::schema(pointer, "expected a string"))
}

fn as_array<'a>(v: &'a Value, pointer: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::schema(pointer, "expected an array"))
}

/// Parses cycle strings against `degree`, reporting failures at `pointer/i`.
fn parse_gens(v: &Value, degree: usize, pointer: &str) -> Result<Vec<Permutation>> {
    as_array(v, pointer)?
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let here = format!("{pointer}/{i}");
            Permutation::parse(as_str(s, &here)?, degree).map_err(|e| Error::schema(here, e.to_string()))
        })
        .collect()
}

pub fn gset_to_json(x: &GSet) -> Value {
    let lattice = x.lattice();
    let g = x.group();
    let orbits: Vec<Value> = x
        .stabilizer_classes()
        .into_iter()
        .map(|c| {
            json!({
                "stab_gens": g.format_set_gens(lattice.class(c).rep()),
                "mult": x.mult()[c],
            })
        })
        .collect();
    json!({ "group": g.label(), "orbits": orbits })
}

/// Reads a G-set document; `pointer` is the location of `value` inside the
/// enclosing document (empty for a top-level G-set).
pub fn gset_from_json_at(value: &Value, cache: &mut GroupCache, pointer: &str) -> Result<GSet> {
    let spec_ptr = format!("{pointer}/group");
    let spec = as_str(field(value, "group", pointer)?, &spec_ptr)?;
    let g = cache.get(spec).map_err(|e| match e {
        Error::Spec(m) | Error::Presentation(m) | Error::Parse(m) => Error::schema(spec_ptr.clone(), m),
        other => other,
    })?;
    let orbits_ptr = format!("{pointer}/orbits");
    let orbits = as_array(field(value, "orbits", pointer)?, &orbits_ptr)?;
    let mut x = GSet::empty(g.clone())?;
    let lattice = g.lattice()?;
    let mut mult = x.mult().to_vec();
    for (i, orbit) in orbits.iter().enumerate() {
        let here = format!("{orbits_ptr}/{i}");
        let gens_ptr = format!("{here}/stab_gens");
        let gens = parse_gens(field(orbit, "stab_gens", &here)?, g.degree(), &gens_ptr)?;
        let m = as_u64(field(orbit, "mult", &here)?, &format!("{here}/mult"))?;
        let set = g
            .subgroup_from_perms(&gens)
            .map_err(|e| Error::schema(gens_ptr.clone(), e.to_string()))?;
        let class = lattice.class_of(&set).expect("closures are subgroups");
        mult[class] += m;
    }
    x = GSet::from_mult(g, mult)?;
    Ok(x)
}

pub fn gset_from_json(value: &Value, cache: &mut GroupCache) -> Result<GSet> {
    gset_from_json_at(value, cache, "")
}

pub fn certificate_to_json(cert: &EquivCertificate) -> Value {
    let rows: Vec<Value> = cert
        .rows
        .iter()
        .map(|r| json!({ "gens": r.gens, "fix_x": r.fix_x, "fix_y": r.fix_y }))
        .collect();
    json!({
        "char": cert.char,
        "verdict": cert.verdict.as_str(),
        "rows": rows,
        "witness": cert.witness,
    })
}

/// Reads a certificate over `g`; row classes are resolved from the
/// generators.
pub fn certificate_from_json_at(value: &Value, g: &PermGroup, pointer: &str) -> Result<EquivCertificate> {
    let p = as_u64(field(value, "char", pointer)?, &format!("{pointer}/char"))?;
    let verdict_ptr = format!("{pointer}/verdict");
    let verdict = match as_str(field(value, "verdict", pointer)?, &verdict_ptr)? {
        "equivalent" => Verdict::Equivalent,
        "inequivalent" => Verdict::Inequivalent,
        other => return Err(Error::schema(verdict_ptr, format!("unknown verdict {other:?}"))),
    };
    let rows_ptr = format!("{pointer}/rows");
    let lattice = g.lattice()?;
    let mut rows = Vec::new();
    for (i, row) in as_array(field(value, "rows", pointer)?, &rows_ptr)?.iter().enumerate() {
        let here = format!("{rows_ptr}/{i}");
        let gens_ptr = format!("{here}/gens");
        let gens = parse_gens(field(row, "gens", &here)?, g.degree(), &gens_ptr)?;
        let set = g
            .subgroup_from_perms(&gens)
            .map_err(|e| Error::schema(gens_ptr.clone(), e.to_string()))?;
        rows.push(CertRow {
            class: lattice.class_of(&set).expect("closures are subgroups"),
            gens: gens.iter().map(|p| p.to_string()).collect(),
            fix_x: as_u64(field(row, "fix_x", &here)?, &format!("{here}/fix_x"))?,
            fix_y: as_u64(field(row, "fix_y", &here)?, &format!("{here}/fix_y"))?,
        });
    }
    let witness_ptr = format!("{pointer}/witness");
    let witness = match field(value, "witness", pointer)? {
        Value::Null => None,
        v => {
            let w = as_u64(v, &witness_ptr)? as usize;
            if w >= rows.len() {
                return Err(Error::schema(witness_ptr, "witness index out of range"));
            }
            Some(w)
        }
    };
    let char = u32::try_from(p).map_err(|_| Error::schema(format!("{pointer}/char"), "characteristic too large"))?;
    Ok(EquivCertificate {
        char,
        verdict,
        rows,
        witness,
    })
}

pub fn bad_primes_to_json(b: &BadPrimeSet) -> Value {
    json!({ "char0_equivalent": b.char0_equivalent, "primes": b.primes })
}

pub fn pair_to_json(pair: &VerifiedPair) -> Value {
    json!({
        "group": pair.x.group().label(),
        "degree": pair.degree(),
        "x": gset_to_json(&pair.x),
        "y": gset_to_json(&pair.y),
        "certificates": pair.certificates.iter().map(certificate_to_json).collect::<Vec<_>>(),
        "witness": pair.witness,
    })
}

/// A stored pair: both G-sets plus whatever certificates were attached.
#[derive(Debug, Clone)]
pub struct StoredPair {
    pub x: GSet,
    pub y: GSet,
    pub certificates: Vec<EquivCertificate>,
}

pub fn pair_from_json(value: &Value, cache: &mut GroupCache) -> Result<StoredPair> {
    let x = gset_from_json_at(field(value, "x", "")?, cache, "/x")?;
    let y = gset_from_json_at(field(value, "y", "")?, cache, "/y")?;
    x.check_same_group(&y)?;
    let certificates = match value.get("certificates") {
        None | Some(Value::Null) => Vec::new(),
        Some(v) => as_array(v, "/certificates")?
            .iter()
            .enumerate()
            .map(|(i, c)| certificate_from_json_at(c, x.group(), &format!("/certificates/{i}")))
            .collect::<Result<_>>()?,
    };
    Ok(StoredPair { x, y, certificates })
}

/// Family document: `{"members": [["(1 2)(3 4)"], ...]}`, each member given
/// by generators.
pub fn family_from_json(value: &Value, g: &PermGroup) -> Result<Vec<ElemSet>> {
    let members = as_array(field(value, "members", "")?, "/members")?;
    members
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let here = format!("/members/{i}");
            let gens = parse_gens(m, g.degree(), &here)?;
            g.subgroup_from_perms(&gens).map_err(|e| Error::schema(here, e.to_string()))
        })
        .collect()
}

pub fn search_result_to_json(r: &SearchResult) -> Value {
    json!({
        "group": r.group.label(),
        "char": r.p,
        "mindeg": match r.mindeg {
            Some(n) => json!(n),
            None => json!("infinity"),
        },
        "witness": r.witness.as_ref().map(pair_to_json),
        "cap": r.cap,
        "examined": r.examined,
        "marks_rank": r.rank,
        "classes": r.classes,
    })
}

fn sym_report_to_json(r: &SymEquivReport) -> Value {
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            json!({
                "order": row.order,
                "gens": row.gens,
                "orbit_sizes": row.fingerprint.orbit_sizes,
                "count_x": row.count_x,
                "count_y": row.count_y,
            })
        })
        .collect();
    json!({ "char": r.p, "verdict": r.verdict.as_str(), "rows": rows })
}

fn cycle_types_to_json(h: &std::collections::BTreeMap<Vec<u32>, usize>) -> Value {
    Value::Array(
        h.iter()
            .map(|(t, c)| json!({ "cycle_type": t, "count": c }))
            .collect(),
    )
}

/// Beaulieu document: degree, order, index, the characteristic-0 cycle-type
/// comparison, the mod-`p` rows, and the conjugacy outcome.
pub fn beaulieu_report_to_json(
    hx: &LiftedSubgroup,
    gassmann_equal: bool,
    reports: &[SymEquivReport],
    conjugator: Option<&Permutation>,
    ncong: &[(u32, bool)],
    expand_bigints: bool,
) -> Value {
    let order = hx.group.order();
    let mut doc = Map::new();
    doc.insert("n".into(), json!(hx.n));
    doc.insert("order".into(), json!(order));
    doc.insert("index_factorial_expr".into(), json!(index_factorial_expr(hx.n, order)));
    if expand_bigints {
        doc.insert("index".into(), json!(index_expanded(hx.n, order).to_string()));
    }
    let cycle_types = reports.first().map(|r| &r.gassmann);
    doc.insert(
        "char0".into(),
        json!({
            "equivalent": gassmann_equal,
            "cycle_types_x": cycle_types.map(|g| cycle_types_to_json(&g.cycle_types_x)),
            "cycle_types_y": cycle_types.map(|g| cycle_types_to_json(&g.cycle_types_y)),
        }),
    );
    doc.insert(
        "modp".into(),
        Value::Array(reports.iter().filter(|r| r.p != 0).map(sym_report_to_json).collect()),
    );
    doc.insert("conjugate".into(), json!(conjugator.is_some()));
    doc.insert("conjugator".into(), json!(conjugator.map(|s| s.to_string())));
    doc.insert(
        "ncong".into(),
        Value::Array(
            ncong
                .iter()
                .map(|(p, v)| json!({ "char": p, "lifts_inequivalent": v }))
                .collect(),
        ),
    );
    Value::Object(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::d6_pair;
    use crate::linequiv::lin_equiv;

    #[test]
    fn gset_round_trip() {
        let pair = d6_pair(Caps::default()).unwrap();
        let mut cache = GroupCache::new(Caps::default());
        let doc = gset_to_json(&pair.x);
        let back = gset_from_json(&doc, &mut cache).unwrap();
        assert_eq!(back.mult(), pair.x.mult());
        assert!(back.group().same_as(pair.x.group()));
    }

    #[test]
    fn negative_multiplicity_is_schema_error() {
        let doc = json!({"group": "S 3", "orbits": [{"stab_gens": ["(1 2)"], "mult": -1}]});
        let err = gset_from_json(&doc, &mut GroupCache::new(Caps::default())).unwrap_err();
        assert_eq!(
            err,
            Error::Schema {
                pointer: "/orbits/0/mult".into(),
                message: "expected a non-negative integer".into()
            }
        );
    }

    #[test]
    fn schema_pointers() {
        let mut cache = GroupCache::new(Caps::default());
        let cases = [
            (json!({"orbits": []}), "/"),
            (json!({"group": "S 3", "orbits": [{"stab_gens": ["(1 9)"], "mult": 1}]}), "/orbits/0/stab_gens/0"),
            (json!({"group": "A 4", "orbits": [{"stab_gens": ["(1 2)"], "mult": 1}]}), "/orbits/0/stab_gens"),
            (json!({"group": "Z 3", "orbits": []}), "/group"),
            (json!({"group": "S 3", "orbits": {}}), "/orbits"),
        ];
        for (doc, pointer) in cases {
            match gset_from_json(&doc, &mut cache) {
                Err(Error::Schema { pointer: p, .. }) => assert_eq!(p, pointer, "{doc}"),
                other => panic!("{doc}: {other:?}"),
            }
        }
    }

    #[test]
    fn empty_orbits_is_empty_set() {
        let doc = json!({"group": "A 4", "orbits": []});
        let x = gset_from_json(&doc, &mut GroupCache::new(Caps::default())).unwrap();
        assert!(x.is_empty());
    }

    #[test]
    fn certificate_round_trip_and_recheck() {
        let pair = d6_pair(Caps::default()).unwrap();
        for cert in &pair.certificates {
            let doc = certificate_to_json(cert);
            let back = certificate_from_json_at(&doc, pair.x.group(), "").unwrap();
            assert_eq!(&back, cert);
            assert!(back.recheck(&pair.x, &pair.y).unwrap());
        }
        let doc = pair_to_json(&pair);
        let stored = pair_from_json(&doc, &mut GroupCache::new(Caps::default())).unwrap();
        assert_eq!(stored.certificates.len(), 3);
        let fresh = lin_equiv(&stored.x, &stored.y, 2).unwrap();
        assert_eq!(fresh.verdict, stored.certificates[1].verdict);
    }

    #[test]
    fn cache_shares_groups() {
        let mut cache = GroupCache::new(Caps::default());
        let a = cache.get("D 6").unwrap();
        let b = cache.get("D  6").unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
