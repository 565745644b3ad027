use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use strata::classify::Measure;
use strata::oracle::{sweep, DEFAULT_SEED};
use strata::report::{classify_report, endo_report, envelope, render, ClassifyReport, EndoReport};
use strata::tables::{reproduce_tables, TablesReport};
use strata::witness::{shipped, verify_id, IdOutcome, DEFAULT_DEPTH};

#[derive(Parser)]
#[command(
    name = "strata",
    version,
    about = "String numbers of abelian groups and their endomorphisms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Emit a versioned JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Add wall-clock time to the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Clone, Copy)]
struct Depth {
    /// Verification depth; falls back to STRATA_VERIFY_DEPTH, then 100.
    #[arg(long, env = "STRATA_VERIFY_DEPTH", default_value_t = DEFAULT_DEPTH)]
    depth: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Classify groups given in the descriptor language, e.g. "Z + Prufer(3)".
    Classify {
        #[arg(required = true)]
        descriptors: Vec<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Decide s, ns, s0 for an endomorphism of a finitely generated group.
    Endo {
        /// Group literal such as "Z^2" or "[4] + Z".
        group: String,
        /// Matrix literal acting on columns, rows separated by ';', e.g. "1,1;0,1".
        matrix: String,
        #[arg(long = "witness-depth", env = "STRATA_VERIFY_DEPTH", default_value_t = DEFAULT_DEPTH)]
        witness_depth: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Cross-check every finite group of order up to N against brute force.
    Oracle {
        #[arg(long = "max-order", default_value_t = 16)]
        max_order: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// List or verify the shipped string witnesses and certificates.
    Witness {
        #[command(subcommand)]
        action: WitnessAction,
    },
    /// Reproduce the string-number tables and diff them against the expected values.
    Tables {
        /// Prime at which the p-dependent rows are instantiated.
        #[arg(long, default_value_t = 2)]
        prime: u64,
        #[command(flatten)]
        depth: Depth,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum WitnessAction {
    List {
        #[command(flatten)]
        out: Output,
    },
    Verify {
        id: String,
        #[command(flatten)]
        depth: Depth,
        #[command(flatten)]
        out: Output,
    },
}

/// Writes to stdout, ignoring a closed pipe.
fn write_out(s: &str) {
    let _ = io::stdout().lock().write_all(s.as_bytes());
}

/// Prints a report as JSON or as text.
fn emit(
    out: Output,
    command: &str,
    inputs: Value,
    results: Value,
    start: Instant,
    text: impl FnOnce() -> String,
) {
    if out.json {
        let mut v = envelope(command, inputs, &results);
        if out.timing {
            v["timing_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
        }
        write_out(&format!("{}\n", render(&v)));
    } else {
        let mut s = text();
        if out.timing {
            s += &format!("time: {:.1} ms\n", start.elapsed().as_secs_f64() * 1e3);
        }
        write_out(&s);
    }
}

fn classify_text(r: &ClassifyReport) -> String {
    let c = &r.classification;
    let mut s = String::new();
    s += &format!("input:      {}\n", r.input);
    s += &format!("normalized: {}\n", c.normalized);
    s += "            s  ns s0 | s_t ns_t s0_t\n";
    let v = |m: Measure| c.verdicts.get(m).to_string();
    s += &format!(
        "verdicts:   {:<2} {:<2} {:<2} | {:<3} {:<4} {}\n",
        v(Measure::S),
        v(Measure::Ns),
        v(Measure::S0),
        v(Measure::STilde),
        v(Measure::NsTilde),
        v(Measure::S0Tilde)
    );
    s += &format!("hopf:       {}\n", c.hopf.name());
    for a in &c.assumptions {
        s += &format!("assumes:    {}\n", a);
    }
    s += "trace:\n";
    for t in &c.trace {
        s += &format!("  {}\n", t);
    }
    for x in &r.violations {
        s += &format!("violation:  {}\n", x);
    }
    s
}

fn endo_text(r: &EndoReport) -> String {
    let mut s = format!("group:  {}\nmatrix: {}\n", r.group, r.matrix);
    s += &format!("s = {}, ns = {}, s0 = {}\n", r.s, r.ns, r.s0);
    if let Some(o) = &r.order_on_core {
        s += &format!("order on the surjective core: {}\n", o);
    }
    if let Some(o) = r.matrix_order {
        s += &format!("matrix order: {}\n", o);
    }
    s += &format!(
        "surjective core generators: [{}]\n",
        r.surjective_core.join(", ")
    );
    if let Some(w) = &r.witness {
        s += &format!(
            "witness: {} string on {}\n  map: {}\n  sequence: {}\n  first members: {}\n  verified to depth {}: {}\n",
            w.kind.name(),
            w.carrier,
            w.map,
            w.generator,
            w.members.join(", "),
            w.verification.depth,
            if w.verification.passed { "pass" } else { "FAIL" }
        );
    }
    s
}

fn outcome_text(o: &IdOutcome) -> String {
    let mut s = format!(
        "{}: {} at depth {}",
        o.id,
        if o.passed { "pass" } else { "FAIL" },
        o.depth
    );
    if o.depth < o.requested_depth {
        s += &format!(" (requested {}, capped)", o.requested_depth);
    }
    s += "\n";
    if let Some(d) = &o.description {
        s += &format!(
            "  carrier: {}\n  map: {}\n  sequence: {}\n",
            d.carrier, d.map, d.generator
        );
    }
    if let Some(r) = &o.report {
        for c in &r.checks {
            s += &format!(
                "  [{}] {}: {}\n",
                if c.passed { "ok" } else { "fail" },
                c.check,
                c.detail
            );
        }
    }
    if let Some(c) = &o.certificate {
        s += &format!(
            "  {}\n",
            serde_json::to_string(c).expect("certificates serialize")
        );
    }
    s
}

fn tables_text(r: &TablesReport) -> String {
    let row = |label: &str, got: &[strata::Verdict]| {
        let cells: Vec<String> = got.iter().map(|v| format!("{:<4}", v.symbol())).collect();
        format!("  {:<10} {}\n", label, cells.join(" ").trim_end())
    };
    let mut s = format!(
        "string numbers (p = {}):\n  {:<10} s    ns   s0\n",
        r.prime, ""
    );
    for x in &r.plain {
        s += &row(&x.label, &x.got);
    }
    s += &format!(
        "hereditary string numbers (p = {}):\n  {:<10} s    ns   s0   s_t  ns_t s0_t\n",
        r.prime, ""
    );
    for x in &r.hereditary {
        s += &row(&x.label, &x.got);
    }
    s += &format!(
        "Bernoulli shifts on Z({})^(N), Z({})^(Z) at depth {}:\n  {:<10} s    ns   s0\n",
        r.bernoulli_modulus, r.bernoulli_modulus, r.depth, ""
    );
    for x in &r.bernoulli {
        s += &row(x.shift.name(), &x.got);
    }
    if r.diffs.is_empty() {
        s += "diffs: none\n";
    }
    for d in &r.diffs {
        s += &format!(
            "diff: {} / {} / {}: expected {}, got {}\n",
            d.table, d.row, d.column, d.expected, d.got
        );
    }
    s
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {}", message);
    ExitCode::from(2)
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run(cli: Cli) -> ExitCode {
    let start = Instant::now();
    match cli.command {
        Command::Classify { descriptors, out } => {
            let mut reports = Vec::new();
            for text in &descriptors {
                match classify_report(text) {
                    Ok(r) => reports.push(r),
                    Err(e) => {
                        eprintln!(
                            "  {}\n  {}^",
                            text,
                            " ".repeat(text[..e.position].chars().count())
                        );
                        return fail(e);
                    }
                }
            }
            let ok = reports.iter().all(|r| r.violations.is_empty());
            let results = if reports.len() == 1 {
                json!(reports[0])
            } else {
                json!(reports)
            };
            emit(
                out,
                "classify",
                json!({ "descriptors": descriptors }),
                results,
                start,
                || {
                    reports
                        .iter()
                        .map(classify_text)
                        .collect::<Vec<_>>()
                        .join("\n")
                },
            );
            status(ok)
        }
        Command::Endo {
            group,
            matrix,
            witness_depth,
            out,
        } => match endo_report(&group, &matrix, witness_depth) {
            Ok(r) => {
                let ok = r.witness.as_ref().is_none_or(|w| w.verification.passed);
                let inputs =
                    json!({ "group": group, "matrix": matrix, "witness_depth": witness_depth });
                emit(out, "endo", inputs, json!(r), start, || endo_text(&r));
                status(ok)
            }
            Err(e) => fail(e),
        },
        Command::Oracle {
            max_order,
            seed,
            out,
        } => {
            let r = sweep(max_order, seed);
            let ok = r.mismatches.is_empty();
            let inputs = json!({ "max_order": max_order, "seed": seed });
            emit(out, "oracle", inputs, json!(r), start, || {
                let mut s = format!(
                    "groups of order <= {}: {}\nendomorphisms checked: {}\nconfirmed (no string, sc and verdicts agree): {}\n",
                    r.max_order, r.groups_visited, r.endos_checked, r.confirmations
                );
                for m in &r.mismatches {
                    s += &format!("mismatch: {}\n", m);
                }
                s
            });
            status(ok)
        }
        Command::Witness {
            action: WitnessAction::List { out },
        } => {
            let entries = shipped();
            emit(
                out,
                "witness list",
                json!({}),
                json!(entries),
                start,
                || {
                    entries
                        .iter()
                        .map(|e| {
                            format!(
                                "{:<34} {:<11} {}\n",
                                e.id,
                                format!("{:?}", e.kind).to_lowercase(),
                                e.backs
                            )
                        })
                        .collect()
                },
            );
            ExitCode::SUCCESS
        }
        Command::Witness {
            action: WitnessAction::Verify { id, depth, out },
        } => match verify_id(&id, depth.depth) {
            Ok(o) => {
                let inputs = json!({ "id": id, "depth": depth.depth });
                emit(out, "witness verify", inputs, json!(o), start, || {
                    outcome_text(&o)
                });
                status(o.passed)
            }
            Err(e) => fail(e),
        },
        Command::Tables { prime, depth, out } => {
            if !strata::witness::carriers::is_prime(prime) {
                return fail(format!("{} is not prime", prime));
            }
            match reproduce_tables(prime, depth.depth) {
                Ok(r) => {
                    let inputs = json!({ "prime": prime, "depth": depth.depth });
                    emit(out, "tables", inputs, json!(r), start, || tables_text(&r));
                    status(r.diffs.is_empty())
                }
                Err(e) => fail(e),
            }
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}
