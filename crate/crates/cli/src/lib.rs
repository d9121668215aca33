//! Command-line front end: argument parsing, dispatch, JSON payloads and
//! exit codes.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 input error, 3 cap exceeded,
//! 4 internal invariant violated.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use gassmann::beaulieu::{lift, ncong_criterion, sym_gassmann_check, sym_lin_equiv_modp, sym_nonisomorphic};
use gassmann::constructions::{
    bounded_pair, build_exist_pair, d6_pair, frobenius_pair, prescribed_bad_primes_pair, qgroup_pair,
    validate_family, BoundedCase, VerifiedPair,
};
use gassmann::gsets::{marks_table, GSet};
use gassmann::io::{
    bad_primes_to_json, beaulieu_report_to_json, certificate_from_json_at, certificate_to_json, family_from_json,
    gset_from_json, pair_from_json, pair_to_json, read_json, search_result_to_json, write_json, GroupCache,
};
use gassmann::linequiv::{bad_primes, lin_equiv, EquivCertificate};
use gassmann::perm::{is_solvable, prime_divisors};
use gassmann::search::{mindeg, mindeg_ratio_report};
use gassmann::{Caps, Error, PermGroup};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Outcome of one invocation.
#[derive(Debug, Clone)]
pub struct CommandResult {
    pub exit_code: i32,
    pub payload: Value,
    pub log: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "gassmann",
    version,
    about = "Construct and verify linearly equivalent, non-isomorphic G-sets",
    after_help = "Example:\n  gassmann construct --method d6 > d6.json\n  gassmann beaulieu --pair d6.json --char all"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Global {
    /// Largest group order enumerated element by element
    #[arg(long, global = true)]
    cap_order: Option<usize>,
    /// Largest group order whose subgroup lattice is enumerated
    #[arg(long, global = true)]
    cap_lattice: Option<usize>,
    /// Worker threads for parallel enumeration
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print big integers (such as n!/|G|) in full
    #[arg(long, global = true)]
    expand_bigints: bool,
    /// Config file with key = value lines (cap-order, cap-lattice, threads, expand-bigints)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, generators and conjugacy classes of a group
    #[command(after_help = "Example:\n  gassmann group --group \"M 5 4 2\"")]
    Group {
        #[arg(long)]
        group: String,
    },
    /// Subgroup classes with orders, normalizers and generators
    #[command(after_help = "Example:\n  gassmann lattice --group \"A 4\"")]
    Lattice {
        #[arg(long)]
        group: String,
    },
    /// Table of marks restricted to the cyclic-mod-p subgroup classes
    #[command(after_help = "Example:\n  gassmann tom --group \"A 4\" --char 2")]
    Tom {
        #[arg(long)]
        group: String,
        #[arg(long = "char", default_value_t = 0)]
        p: u32,
    },
    /// Linear equivalence certificate for two G-sets
    #[command(after_help = "Example:\n  gassmann check --x x.json --y y.json --char 2 --out cert.json")]
    Check {
        #[command(flatten)]
        input: PairInput,
        #[arg(long = "char", default_value_t = 0)]
        p: u32,
        /// Also write the certificate to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Characteristics at which a pair fails to be equivalent
    #[command(after_help = "Example:\n  gassmann badprimes --pair d6.json")]
    Badprimes {
        #[command(flatten)]
        input: PairInput,
    },
    /// Build a certified pair
    #[command(after_help = "Example:\n  gassmann construct --method qgroup --group \"E 3 2\" --char 2")]
    Construct {
        /// exist | frobenius | qgroup | bounded | d6 | badprimes
        #[arg(long)]
        method: String,
        #[arg(long)]
        group: Option<String>,
        /// Family file for --method exist: {"members": [["(1 2)"], ...]}
        #[arg(long)]
        family: Option<PathBuf>,
        /// Prime set for --method badprimes, comma separated
        #[arg(long)]
        primes: Option<String>,
        #[arg(long = "char", default_value_t = 0)]
        p: u32,
        /// Skip the reduction step (exist only)
        #[arg(long)]
        raw: bool,
    },
    /// Minimal degree of an equivalent non-isomorphic pair
    #[command(after_help = "Example:\n  gassmann mindeg --group \"S 3\"")]
    Mindeg {
        #[arg(long)]
        group: Option<String>,
        #[arg(long = "char", default_value_t = 0)]
        p: u32,
        #[arg(long)]
        cap: Option<u64>,
        /// File with one group spec per line; prints the ratio table instead
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Lift a faithful pair to symmetric-group sets and compare
    #[command(after_help = "Example:\n  gassmann beaulieu --pair d6.json --char all")]
    Beaulieu {
        #[arg(long)]
        pair: PathBuf,
        /// A prime, 0, or "all" (every prime dividing the group order)
        #[arg(long = "char", default_value = "all")]
        p: String,
    },
    /// Re-check stored certificates with an independent fixed-point count
    #[command(after_help = "Example:\n  gassmann verify-cert --cert cert.json --x x.json --y y.json")]
    VerifyCert {
        #[arg(long)]
        cert: Option<PathBuf>,
        #[command(flatten)]
        input: PairInput,
    },
}

#[derive(Args, Debug, Clone)]
struct PairInput {
    /// G-set file for X
    #[arg(long)]
    x: Option<PathBuf>,
    /// G-set file for Y
    #[arg(long)]
    y: Option<PathBuf>,
    /// Pair file holding both (as written by construct)
    #[arg(long)]
    pair: Option<PathBuf>,
}

struct Ctx {
    cache: GroupCache,
    expand_bigints: bool,
    log: Vec<String>,
}

impl Ctx {
    fn note(&mut self, line: impl Into<String>) {
        self.log.push(line.into());
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            return CommandResult {
                exit_code: code,
                payload: if code == EXIT_OK {
                    Value::Null
                } else {
                    json!({ "error": "usage", "message": e.to_string() })
                },
                log: e.to_string(),
            };
        }
    };
    let global = match merge_config(&cli.global) {
        Ok(g) => g,
        Err(e) => return failure(e, Vec::new()),
    };
    let mut caps = Caps::default();
    if let Some(c) = global.cap_order {
        caps.order = c;
    }
    if let Some(c) = global.cap_lattice {
        caps.lattice = c;
    }
    let mut ctx = Ctx {
        cache: GroupCache::new(caps),
        expand_bigints: global.expand_bigints,
        log: Vec::new(),
    };
    let started = Instant::now();
    let outcome = match global.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, &mut ctx)),
            Err(e) => Err(Error::Spec(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli.command, &mut ctx),
    };
    ctx.note(format!("elapsed {:.3}s", started.elapsed().as_secs_f64()));
    match outcome {
        Ok((exit_code, payload)) => CommandResult {
            exit_code,
            payload,
            log: ctx.log.join("\n"),
        },
        Err(e) => failure(e, ctx.log),
    }
}

fn failure(e: Error, mut log: Vec<String>) -> CommandResult {
    let (code, kind) = match &e {
        Error::CapExceeded { .. } | Error::SearchCapExceeded { .. } => (EXIT_CAP, "cap_exceeded"),
        Error::InternalInvariant(_) | Error::NotEquivalent(_) | Error::Isomorphic => (EXIT_INTERNAL, "internal"),
        _ => (EXIT_INPUT, "input"),
    };
    log.push(format!("error: {e}"));
    CommandResult {
        exit_code: code,
        payload: json!({ "error": kind, "message": e.to_string() }),
        log: log.join("\n"),
    }
}

/// Config values fill in whatever the command line left unset.
fn merge_config(global: &Global) -> gassmann::Result<Global> {
    let mut out = global.clone();
    let Some(path) = &global.config else {
        return Ok(out);
    };
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let table: toml::Table = text
        .parse()
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let int = |key: &str| -> gassmann::Result<Option<usize>> {
        match table.get(key) {
            None => Ok(None),
            Some(toml::Value::Integer(v)) if *v > 0 => Ok(Some(*v as usize)),
            Some(other) => Err(Error::Parse(format!("config {key}: expected a positive integer, got {other}"))),
        }
    };
    for key in table.keys() {
        if !["cap-order", "cap-lattice", "threads", "expand-bigints"].contains(&key.as_str()) {
            return Err(Error::Parse(format!("config: unknown key {key:?}")));
        }
    }
    out.cap_order = out.cap_order.or(int("cap-order")?);
    out.cap_lattice = out.cap_lattice.or(int("cap-lattice")?);
    out.threads = out.threads.or(int("threads")?);
    if !out.expand_bigints {
        out.expand_bigints = match table.get("expand-bigints") {
            None => false,
            Some(toml::Value::Boolean(b)) => *b,
            Some(other) => return Err(Error::Parse(format!("config expand-bigints: expected a boolean, got {other}"))),
        };
    }
    Ok(out)
}

type Outcome = gassmann::Result<(i32, Value)>;

fn dispatch(command: &Command, ctx: &mut Ctx) -> Outcome {
    match command {
        Command::Group { group } => cmd_group(ctx, group),
        Command::Lattice { group } => cmd_lattice(ctx, group),
        Command::Tom { group, p } => cmd_tom(ctx, group, *p),
        Command::Check { input, p, out } => cmd_check(ctx, input, *p, out.as_deref()),
        Command::Badprimes { input } => cmd_badprimes(ctx, input),
        Command::Construct {
            method,
            group,
            family,
            primes,
            p,
            raw,
        } => cmd_construct(ctx, method, group.as_deref(), family.as_deref(), primes.as_deref(), *p, *raw),
        Command::Mindeg { group, p, cap, report } => cmd_mindeg(ctx, group.as_deref(), *p, *cap, report.as_deref()),
        Command::Beaulieu { pair, p } => cmd_beaulieu(ctx, pair, p),
        Command::VerifyCert { cert, input } => cmd_verify(ctx, cert.as_deref(), input),
    }
}

fn load_group(ctx: &mut Ctx, spec: &str) -> gassmann::Result<Arc<PermGroup>> {
    let g = ctx.cache.get(spec)?;
    ctx.note(format!("group {} of order {}", g.label(), g.order()));
    Ok(g)
}

fn cmd_group(ctx: &mut Ctx, spec: &str) -> Outcome {
    let g = load_group(ctx, spec)?;
    let classes: Vec<Value> = g
        .conjugacy_classes()
        .iter()
        .map(|c| {
            json!({
                "rep": g.element(c[0]).to_string(),
                "size": c.len(),
                "element_order": g.element_order(c[0]),
            })
        })
        .collect();
    Ok((
        EXIT_OK,
        json!({
            "group": g.label(),
            "degree": g.degree(),
            "order": g.order(),
            "generators": g.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "abelian": g.is_abelian(),
            "cyclic": g.is_cyclic(),
            "solvable": is_solvable(&g),
            "conjugacy_classes": classes,
        }),
    ))
}

fn cmd_lattice(ctx: &mut Ctx, spec: &str) -> Outcome {
    let g = load_group(ctx, spec)?;
    let lattice = g.lattice()?;
    let classes: Vec<Value> = lattice
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "id": i,
                "order": c.order,
                "size": c.members.len(),
                "normalizer_order": c.normalizer_order,
                "normal": lattice.is_normal_class(i),
                "gens": g.format_set_gens(c.rep()),
            })
        })
        .collect();
    Ok((
        EXIT_OK,
        json!({
            "group": g.label(),
            "order": g.order(),
            "subgroup_count": lattice.subgroup_count(),
            "class_count": lattice.class_count(),
            "classes": classes,
        }),
    ))
}

fn cmd_tom(ctx: &mut Ctx, spec: &str, p: u32) -> Outcome {
    let g = load_group(ctx, spec)?;
    let t = marks_table(&g, p)?;
    let lattice = g.lattice()?;
    let describe = |c: &usize| json!({ "class": c, "order": lattice.class(*c).order, "gens": g.format_set_gens(lattice.class(*c).rep()) });
    Ok((
        EXIT_OK,
        json!({
            "group": g.label(),
            "char": p,
            "rows": t.rows.iter().map(describe).collect::<Vec<_>>(),
            "columns": t.columns.iter().map(describe).collect::<Vec<_>>(),
            "entries": t.entries,
        }),
    ))
}

/// Reads `X` and `Y` from `--pair` or from `--x` and `--y`, with any stored
/// certificates.
fn load_pair(ctx: &mut Ctx, input: &PairInput) -> gassmann::Result<(GSet, GSet, Vec<EquivCertificate>)> {
    match (&input.pair, &input.x, &input.y) {
        (Some(path), None, None) => {
            let stored = pair_from_json(&read_json(path)?, &mut ctx.cache)?;
            ctx.note(format!("read pair from {}", path.display()));
            Ok((stored.x, stored.y, stored.certificates))
        }
        (None, Some(px), Some(py)) => {
            let x = gset_from_json(&read_json(px)?, &mut ctx.cache)?;
            let y = gset_from_json(&read_json(py)?, &mut ctx.cache)?;
            x.check_same_group(&y)?;
            ctx.note(format!("read X from {} and Y from {}", px.display(), py.display()));
            Ok((x, y, Vec::new()))
        }
        _ => Err(Error::Spec("give either --pair, or both --x and --y".into())),
    }
}

fn cmd_check(ctx: &mut Ctx, input: &PairInput, p: u32, out: Option<&Path>) -> Outcome {
    let (x, y, _) = load_pair(ctx, input)?;
    let cert = lin_equiv(&x, &y, p)?;
    ctx.note(format!("characteristic {p}: {} over {} rows", cert.verdict, cert.rows.len()));
    let doc = certificate_to_json(&cert);
    if let Some(path) = out {
        write_json(path, &doc)?;
        ctx.note(format!("certificate written to {}", path.display()));
    }
    let code = if cert.is_equivalent() { EXIT_OK } else { EXIT_NEGATIVE };
    Ok((code, doc))
}

fn cmd_badprimes(ctx: &mut Ctx, input: &PairInput) -> Outcome {
    let (x, y, _) = load_pair(ctx, input)?;
    let b = bad_primes(&x, &y)?;
    let code = if b.char0_equivalent { EXIT_OK } else { EXIT_NEGATIVE };
    Ok((code, bad_primes_to_json(&b)))
}

fn parse_primes(text: &str) -> gassmann::Result<Vec<u32>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Spec(format!("bad prime {t:?} in --primes")))
        })
        .collect()
}

fn cmd_construct(
    ctx: &mut Ctx,
    method: &str,
    group: Option<&str>,
    family: Option<&Path>,
    primes: Option<&str>,
    p: u32,
    raw: bool,
) -> Outcome {
    let need_group = |ctx: &mut Ctx| -> gassmann::Result<Arc<PermGroup>> {
        let spec = group.ok_or_else(|| Error::Spec(format!("--method {method} needs --group")))?;
        load_group(ctx, spec)
    };
    let caps = ctx.cache.caps();
    let mut extra = serde_json::Map::new();
    let pair: VerifiedPair = match method {
        "exist" => {
            let g = need_group(ctx)?;
            let path = family.ok_or_else(|| Error::Spec("--method exist needs --family".into()))?;
            let members = family_from_json(&read_json(path)?, &g)?;
            let fam = validate_family(&g, members, p)?;
            build_exist_pair(&fam, raw)?
        }
        "frobenius" => frobenius_pair(&need_group(ctx)?)?,
        "qgroup" => qgroup_pair(&need_group(ctx)?, p)?,
        "bounded" => {
            let (pair, case) = bounded_pair(&need_group(ctx)?)?;
            let case = match case {
                BoundedCase::Sylow { q } => json!({ "kind": "sylow", "q": q }),
                BoundedCase::FrobeniusQuotient { normal_order } => {
                    json!({ "kind": "frobenius_quotient", "normal_order": normal_order })
                }
            };
            extra.insert("case".into(), case);
            pair
        }
        "d6" => d6_pair(caps)?,
        "badprimes" => {
            let list = parse_primes(primes.ok_or_else(|| Error::Spec("--method badprimes needs --primes".into()))?)?;
            let (g, pair) = prescribed_bad_primes_pair(&list, caps)?;
            ctx.cache.insert(g);
            extra.insert("bad_primes".into(), bad_primes_to_json(&bad_primes(&pair.x, &pair.y)?));
            pair
        }
        other => return Err(Error::Spec(format!("unknown method {other:?}"))),
    };
    if raw && method != "exist" {
        ctx.note("--raw only affects --method exist");
    }
    ctx.note(format!("{method} pair of degree {}", pair.degree()));
    let mut doc = pair_to_json(&pair);
    let obj = doc.as_object_mut().expect("pair document is an object");
    obj.insert("method".into(), json!(method));
    obj.extend(extra);
    Ok((EXIT_OK, doc))
}

fn cmd_mindeg(ctx: &mut Ctx, group: Option<&str>, p: u32, cap: Option<u64>, report: Option<&Path>) -> Outcome {
    if let Some(path) = report {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let specs: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
        let rows = mindeg_ratio_report(&specs, p, ctx.cache.caps());
        let mut all_hold = true;
        let table: Vec<Value> = rows
            .iter()
            .map(|r| {
                all_hold &= r.outcome.is_ok() && r.checks.iter().all(|c| c.holds);
                json!({
                    "group": r.group,
                    "order": r.order,
                    "mindeg": match &r.outcome {
                        Ok(Some(n)) => json!(n),
                        Ok(None) => json!("infinity"),
                        Err(e) => json!({ "error": e }),
                    },
                    "ratio": r.ratio.map(|q| format!("{}/{}", q.numer(), q.denom())),
                    "checks": r.checks.iter().map(|c| json!({ "bound": c.name, "holds": c.holds })).collect::<Vec<_>>(),
                })
            })
            .collect();
        let code = if all_hold { EXIT_OK } else { EXIT_NEGATIVE };
        return Ok((code, json!({ "char": p, "rows": table })));
    }
    let spec = group.ok_or_else(|| Error::Spec("mindeg needs --group or --report".into()))?;
    let g = load_group(ctx, spec)?;
    let r = mindeg(&g, p, cap)?;
    ctx.note(format!("examined {} vectors up to cap {}", r.examined, r.cap));
    Ok((EXIT_OK, search_result_to_json(&r)))
}

fn cmd_beaulieu(ctx: &mut Ctx, path: &Path, chars: &str) -> Outcome {
    let stored = pair_from_json(&read_json(path)?, &mut ctx.cache)?;
    let (x, y) = (stored.x, stored.y);
    let hx = lift(&x)?;
    let hy = lift(&y)?;
    ctx.note(format!("lifted into degree {} (image order {})", hx.n, hx.group.order()));
    let gassmann = sym_gassmann_check(&hx, &hy)?;
    let primes: Vec<u32> = match chars.trim() {
        "all" => prime_divisors(x.group().order()),
        t => {
            let p = t
                .parse::<u32>()
                .map_err(|_| Error::Spec(format!("--char expects a prime, 0 or \"all\", got {t:?}")))?;
            if p == 0 {
                Vec::new()
            } else {
                vec![p]
            }
        }
    };
    let mut reports = Vec::new();
    let mut ncong = Vec::new();
    // the cycle-type comparison rides along in every report; keep one even at p = 0
    reports.push(sym_lin_equiv_modp(&hx, &hy, 0)?);
    for &p in &primes {
        reports.push(sym_lin_equiv_modp(&hx, &hy, p)?);
        ncong.push((p, ncong_criterion(&x, &y, p)?));
    }
    let (noniso, conjugator) = sym_nonisomorphic(&hx, &hy);
    ctx.note(if noniso {
        "lifted images are not conjugate (exhaustive search)".to_string()
    } else {
        "lifted images are conjugate".to_string()
    });
    let all_equivalent = gassmann.equal && reports.iter().all(|r| r.verdict == gassmann::Verdict::Equivalent);
    let doc = beaulieu_report_to_json(
        &hx,
        gassmann.equal,
        &reports,
        conjugator.as_ref(),
        &ncong,
        ctx.expand_bigints,
    );
    let code = if all_equivalent && noniso { EXIT_OK } else { EXIT_NEGATIVE };
    Ok((code, doc))
}

fn cmd_verify(ctx: &mut Ctx, cert: Option<&Path>, input: &PairInput) -> Outcome {
    let (x, y, mut certs) = load_pair(ctx, input)?;
    if let Some(path) = cert {
        certs.push(certificate_from_json_at(&read_json(path)?, x.group(), "")?);
    }
    if certs.is_empty() {
        return Err(Error::Spec("no certificate to verify (use --cert or a pair file with certificates)".into()));
    }
    let mut results = Vec::new();
    let mut all_valid = true;
    for c in &certs {
        let valid = c.recheck(&x, &y)?;
        all_valid &= valid;
        ctx.note(format!("characteristic {}: {} ({})", c.char, c.verdict, if valid { "valid" } else { "INVALID" }));
        results.push(json!({ "char": c.char, "verdict": c.verdict.as_str(), "valid": valid }));
    }
    let code = if all_valid { EXIT_OK } else { EXIT_NEGATIVE };
    Ok((code, json!({ "valid": all_valid, "certificates": results })))
}
