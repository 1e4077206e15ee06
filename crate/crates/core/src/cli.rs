//! The `ptheta` command line: argument parsing, report assembly and exit codes.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 for usage, input or I/O errors.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;

use crate::corpus::{load_corpus, validate_corpus, Corpus};
use crate::equivalence::{act, classify, UnitAction};
use crate::error::{Error, Result};
use crate::jacobi::{derive_identity, FourParams};
use crate::partitions::{
    partition_counts, rogers_ramanujan_check, verify_identity, verify_theorem_72_2, Kind,
    PartitionIdentity, SpecialReport,
};
use crate::search::{export_records, run_search, SearchConfig};
use crate::selftest::{self, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(
    name = "ptheta",
    version,
    about = "Partition identities from theta-product identities"
)]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct IdentityArgs {
    #[arg(long)]
    modulus: i64,
    #[arg(long)]
    shift: i64,
    #[arg(long, default_value = "shifted")]
    kind: Kind,
    #[arg(long, value_delimiter = ',', required = true)]
    s: Vec<i64>,
    #[arg(long, value_delimiter = ',', required = true)]
    t: Vec<i64>,
}

impl IdentityArgs {
    fn identity(&self) -> Result<PartitionIdentity> {
        PartitionIdentity::new(
            self.modulus,
            self.s.clone(),
            self.t.clone(),
            self.kind,
            self.shift,
        )
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a corpus file (the built-in catalog by default).
    Verify {
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        modulus: Option<i64>,
        #[arg(long, default_value_t = 1000)]
        order: i64,
    },
    /// Verify a single identity.
    VerifyOne {
        #[command(flatten)]
        id: IdentityArgs,
        #[arg(long, default_value_t = 1000)]
        order: i64,
    },
    /// Derive an identity from five exponents at base n.
    Derive {
        #[arg(long, value_delimiter = ',', required = true)]
        params: Vec<i64>,
        #[arg(long)]
        base: i64,
        #[arg(long, default_value_t = 500)]
        order: i64,
    },
    /// Exhaustive parameter search.
    Search {
        #[arg(long = "n", value_delimiter = ',', required = true)]
        n: Vec<i64>,
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Write hits as corpus records to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split the identities of one modulus into equivalence classes.
    Classify {
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        modulus: i64,
        #[arg(long, default_value_t = 300)]
        order: i64,
    },
    /// Apply r ↦ αr to an identity given by label or by sets.
    Act {
        #[arg(long)]
        alpha: i64,
        #[arg(long, conflicts_with_all = ["modulus", "shift", "s", "t"])]
        label: Option<String>,
        #[arg(long)]
        modulus: Option<i64>,
        #[arg(long)]
        shift: Option<i64>,
        #[arg(long, default_value = "shifted")]
        kind: Kind,
        #[arg(long, value_delimiter = ',')]
        s: Option<Vec<i64>>,
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<i64>>,
        #[arg(long, default_value_t = 300)]
        order: i64,
    },
    /// The Rogers–Ramanujan-function identities or the modulus-72 dissection chain.
    Special {
        #[arg(long, conflicts_with = "thm72_2", required_unless_present = "thm72_2")]
        rr: bool,
        #[arg(long = "thm72-2")]
        thm72_2: bool,
        /// Defaults to 1000 for --rr and 600 for --thm72-2.
        #[arg(long)]
        order: Option<i64>,
    },
    /// Print p(S, n) for n = 0..=order.
    Expand {
        #[arg(long, value_delimiter = ',', required = true)]
        s: Vec<i64>,
        #[arg(long)]
        modulus: i64,
        #[arg(long)]
        order: i64,
    },
    /// Run the seeded property suites and mutation checks.
    Selftest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    fn of(pass: bool) -> Status {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Item {
    pub label: String,
    pub status: Status,
    pub first_failing_exponent: Option<i64>,
    pub details: Vec<String>,
}

impl Item {
    fn new(label: impl Into<String>, status: Status) -> Item {
        Item {
            label: label.into(),
            status,
            first_failing_exponent: None,
            details: Vec::new(),
        }
    }

    fn detail(mut self, d: impl Into<String>) -> Item {
        self.details.push(d.into());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub status: Status,
    pub items: Vec<Item>,
    /// A one-line summary, e.g. `7 classes`.
    pub summary: String,
    pub timing_ms: f64,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

struct Outcome {
    items: Vec<Item>,
    summary: String,
}

/// Parses `argv` (including the program name), runs the command and writes
/// the report to `out`; diagnostics go to `err`. Returns the exit code.
pub fn run_to(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let start = Instant::now();
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            Outcome {
                items: vec![Item::new(e.to_string(), Status::Error)],
                summary: "error".into(),
            }
        }
    };
    let status = if outcome.items.iter().any(|i| i.status == Status::Error) {
        Status::Error
    } else {
        Status::of(outcome.items.iter().all(|i| i.status == Status::Pass))
    };
    let report = Report {
        command: argv.iter().skip(1).cloned().collect(),
        status,
        items: outcome.items,
        summary: outcome.summary,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    let written = if cli.json {
        serde_json::to_writer_pretty(&mut *out, &report)
            .map_err(std::io::Error::other)
            .and_then(|_| writeln!(out))
    } else {
        write_text(&report, out)
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    report.exit_code()
}

/// Entry point for the binary.
pub fn run(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_to(argv, &mut stdout.lock(), &mut stderr.lock())
}

fn write_text(report: &Report, out: &mut dyn Write) -> std::io::Result<()> {
    for item in &report.items {
        let tag = match item.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        match item.first_failing_exponent {
            Some(n) => writeln!(out, "{tag}  {}  (first failure at n = {n})", item.label)?,
            None => writeln!(out, "{tag}  {}", item.label)?,
        }
        for d in &item.details {
            writeln!(out, "      {d}")?;
        }
    }
    writeln!(out, "{}", report.summary)
}

fn load(path: &Option<PathBuf>) -> Result<Corpus> {
    match path {
        Some(p) => load_corpus(p),
        None => Ok(Corpus::shipped()),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Verify {
            corpus,
            modulus,
            order,
        } => cmd_verify(&load(corpus)?, *modulus, *order),
        Command::VerifyOne { id, order } => cmd_verify_one(&id.identity()?, *order),
        Command::Derive {
            params,
            base,
            order,
        } => cmd_derive(&FourParams::from_slice(params, *base)?, *order),
        Command::Search {
            n,
            bound,
            workers,
            out,
        } => cmd_search(n, *bound, *workers, out.as_ref()),
        Command::Classify {
            corpus,
            modulus,
            order,
        } => cmd_classify(&load(corpus)?, *modulus, *order),
        Command::Act {
            alpha,
            label,
            modulus,
            shift,
            kind,
            s,
            t,
            order,
        } => {
            let id = match (label, modulus, shift, s, t) {
                (Some(l), ..) => Corpus::shipped()
                    .get(l)
                    .ok_or_else(|| Error::InvalidParams(format!("no corpus entry {l}")))?
                    .identity()?,
                (None, Some(m), Some(a), Some(s), Some(t)) => {
                    PartitionIdentity::new(*m, s.clone(), t.clone(), *kind, *a)?
                }
                _ => {
                    return Err(Error::InvalidParams(
                        "give --label or all of --modulus, --shift, --s, --t".into(),
                    ))
                }
            };
            cmd_act(*alpha, &id, *order)
        }
        Command::Special { rr, order, .. } => {
            if *rr {
                Ok(special(rogers_ramanujan_check(order.unwrap_or(1000))))
            } else {
                Ok(special(verify_theorem_72_2(order.unwrap_or(600))))
            }
        }
        Command::Expand { s, modulus, order } => cmd_expand(s, *modulus, *order),
        Command::Selftest => Ok(cmd_selftest(cli.seed)),
    }
}

fn cmd_verify(corpus: &Corpus, modulus: Option<i64>, order: i64) -> Result<Outcome> {
    let entries: Vec<_> = match modulus {
        Some(m) => corpus.with_modulus(m),
        None => corpus.entries.iter().collect(),
    };
    if entries.is_empty() {
        return Err(Error::InvalidParams("no corpus entries selected".into()));
    }
    let reports = validate_corpus(&entries, order);
    let passed = reports.iter().filter(|r| r.pass).count();
    let items = reports
        .into_iter()
        .map(|r| Item {
            label: r.label,
            status: Status::of(r.pass),
            first_failing_exponent: r.verify.as_ref().and_then(|v| v.first_failure),
            details: r.details,
        })
        .collect::<Vec<_>>();
    Ok(Outcome {
        summary: format!("{passed}/{} entries pass at order {order}", items.len()),
        items,
    })
}

fn cmd_verify_one(id: &PartitionIdentity, order: i64) -> Result<Outcome> {
    let r = verify_identity(id, order)?;
    let mut item = Item::new(id.to_string(), Status::of(r.pass));
    item.first_failing_exponent = r.first_failure;
    if let Some(w) = &r.witness {
        item = item.detail(format!("n = {}: p(S) = {}, p(T) = {}", w.n, w.p_s, w.p_t));
    }
    Ok(Outcome {
        summary: format!(
            "{} at order {order}",
            if r.pass { "holds" } else { "fails" }
        ),
        items: vec![item],
    })
}

fn cmd_derive(p: &FourParams, order: i64) -> Result<Outcome> {
    match derive_identity(p) {
        Ok(d) => {
            let v = verify_identity(&d.identity, order.max(d.identity.shift() + 2))?;
            let mut item = Item::new(d.identity.to_string(), Status::of(v.pass))
                .detail(format!("T1 = {}", d.terms.0))
                .detail(format!("T2 = {}", d.terms.1));
            item.first_failing_exponent = v.first_failure;
            Ok(Outcome {
                summary: format!("{p} derives {}", d.identity),
                items: vec![item],
            })
        }
        Err(reason) => Ok(Outcome {
            summary: format!("{p}: no identity ({reason})"),
            items: vec![Item::new(p.to_string(), Status::Fail).detail(reason.as_str())],
        }),
    }
}

fn cmd_search(
    n: &[i64],
    bound: Option<i64>,
    workers: usize,
    out: Option<&PathBuf>,
) -> Result<Outcome> {
    if let Some(&bad) = n.iter().find(|&&n| n < 2) {
        return Err(Error::InvalidParams(format!("base {bad} is too small")));
    }
    let cfg = SearchConfig {
        exponent_bound: bound,
        workers,
        ..SearchConfig::new(n.to_vec())
    };
    let result = run_search(&cfg);
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&export_records(&result.hits))
            .map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(path, text + "\n")
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    let mut items: Vec<Item> = result
        .hits
        .iter()
        .map(|h| {
            Item::new(h.identity.to_string(), Status::Pass)
                .detail(format!("params {} ({} tuples)", h.params, h.multiplicity))
        })
        .collect();
    items.extend(result.dilations.iter().map(|d| {
        Item::new(d.hit.identity.to_string(), Status::Pass)
            .detail(format!("dilation of {}", d.reduced))
            .detail(format!("params {}", d.hit.params))
    }));
    let st = &result.stats;
    if st.verification_failures > 0 {
        items.push(Item::new("verification", Status::Fail).detail(format!(
            "{} symbolic results failed verification",
            st.verification_failures
        )));
    }
    let hist: Vec<String> = st
        .failures
        .iter()
        .map(|(k, v)| format!("{k} {v}"))
        .collect();
    Ok(Outcome {
        summary: format!(
            "{} identities, {} dilations; {} tuples scanned; {}",
            result.hits.len(),
            result.dilations.len(),
            st.tuples,
            hist.join(", ")
        ),
        items,
    })
}

fn cmd_classify(corpus: &Corpus, modulus: i64, order: i64) -> Result<Outcome> {
    let ids = corpus
        .with_modulus(modulus)
        .into_iter()
        .map(|e| e.identity())
        .collect::<Result<Vec<_>>>()?;
    if ids.is_empty() {
        return Err(Error::InvalidParams(format!(
            "no corpus entries for modulus {modulus}"
        )));
    }
    let classes = classify(&ids, order)?;
    let items = classes
        .iter()
        .enumerate()
        .map(|(k, members)| {
            members.iter().fold(
                Item::new(
                    format!("class {} ({} members)", k + 1, members.len()),
                    Status::Pass,
                ),
                |item, m| item.detail(m.to_string()),
            )
        })
        .collect();
    Ok(Outcome {
        summary: format!("{} classes", classes.len()),
        items,
    })
}

fn cmd_act(alpha: i64, id: &PartitionIdentity, order: i64) -> Result<Outcome> {
    let u = UnitAction::new(alpha, id.modulus())?;
    match act(&u, id, order) {
        Ok(image) => Ok(Outcome {
            summary: format!("α = {} maps the identity to {image}", u.alpha()),
            items: vec![Item::new(image.to_string(), Status::Pass)],
        }),
        Err(e @ Error::NotAnIdentity { .. }) => Ok(Outcome {
            summary: e.to_string(),
            items: vec![Item::new(id.to_string(), Status::Fail).detail(e.to_string())],
        }),
        Err(e) => Err(e),
    }
}

fn special(r: SpecialReport) -> Outcome {
    let items = r
        .items
        .iter()
        .map(|c| {
            let mut item = Item::new(c.name.clone(), Status::of(c.pass));
            item.first_failing_exponent = c.first_failure;
            item
        })
        .collect();
    Outcome {
        summary: format!(
            "{} at order {}",
            if r.pass {
                "all checks pass"
            } else {
                "checks fail"
            },
            r.order
        ),
        items,
    }
}

fn cmd_expand(s: &[i64], modulus: i64, order: i64) -> Result<Outcome> {
    if order < 0 {
        return Err(Error::InvalidParams("order must be nonnegative".into()));
    }
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let counts: Vec<BigInt> = partition_counts(&sorted, modulus, order)?;
    let items = counts
        .iter()
        .enumerate()
        .map(|(n, c)| Item::new(format!("p(S, {n}) = {c}"), Status::Pass))
        .collect();
    Ok(Outcome {
        summary: format!("S = ±{sorted:?} (mod {modulus}), n = 0..={order}"),
        items,
    })
}

fn cmd_selftest(seed: u64) -> Outcome {
    let reports = selftest::run_all(seed);
    let items = reports
        .into_iter()
        .map(|r| {
            r.failures.iter().fold(
                Item::new(
                    format!("{} ({} cases)", r.name, r.cases),
                    Status::of(r.pass),
                ),
                |item, f| item.detail(f.clone()),
            )
        })
        .collect();
    Outcome {
        summary: format!("seed {seed}"),
        items,
    }
}
