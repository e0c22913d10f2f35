use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rcswap::involution::{conj_empty, involute_traced, map_strict, InvolutionTrace};
use rcswap::oracle::{joint_distribution_par, verify_gf, verify_involution, JointDistribution};
use rcswap::qseries::{gf_closed, gf_sum_form, gf_symmetric};
use rcswap::{Error, Partition, RemainderDiagram, RemainderVector, SeriesTruncation};

/// Involutions on integer partitions that swap the number of parts
/// divisible by s with the number of s-cells.
#[derive(Parser)]
#[command(name = "rcswap", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Size, length, r_s, c_s, remainder and position sequences, s-cells.
    Stats {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        s: u64,
        #[arg(long)]
        partition: Partition,
        #[arg(long)]
        json: bool,
    },
    /// Apply an involution to a partition.
    Apply {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        s: u64,
        #[arg(long)]
        partition: Partition,
        #[arg(long, value_enum, default_value_t = Map::General)]
        map: Map,
        /// Print every intermediate remainder diagram.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
    },
    /// Generating function for a remainder sequence.
    Gf {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        s: u64,
        #[arg(long)]
        rem: RemainderVector,
        #[arg(long, required_unless_present = "sum_form")]
        r: Option<usize>,
        #[arg(long, required_unless_present = "sum_form")]
        c: Option<usize>,
        /// Use the factorial form instead of the binomial form.
        #[arg(long, conflicts_with = "sum_form")]
        symmetric: bool,
        /// Print the full series in q, R and C up to --max-degree.
        #[arg(long, requires = "max_degree")]
        sum_form: bool,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Joint distribution of (remainder sequence, r_s, c_s) over partitions of n.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        s: u64,
        #[arg(long, value_enum, default_value_t = GroupBy::Rem)]
        group_by: GroupBy,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Exhaustive checks of the involution and the generating functions.
    Verify {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3", value_parser = clap::value_parser!(u64).range(1..))]
        s: Vec<u64>,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// ASCII Ferrers diagram or remainder diagram.
    Render {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        s: u64,
        #[arg(long)]
        partition: Partition,
        #[arg(long, value_enum, default_value_t = What::Ferrers)]
        what: What,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Map {
    General,
    Strict,
    Empty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupBy {
    Rem,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Involution,
    Gf,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Ferrers,
    Diagram,
}

enum Failure {
    Usage(String),
    Counterexample(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Failure::Counterexample(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Counterexample(msg)) => {
            print!("{msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::Stats { s, partition, json } => Ok(stats(&partition, s as usize, json)),
        Command::Apply {
            s,
            partition,
            map,
            trace,
            json,
        } => apply(&partition, s as usize, map, trace, json),
        Command::Gf {
            s,
            rem,
            r,
            c,
            symmetric,
            sum_form,
            max_degree,
            json,
        } => gf(
            s as usize,
            &rem,
            r,
            c,
            symmetric,
            sum_form.then_some(max_degree).flatten(),
            json,
        ),
        Command::Table {
            n,
            s,
            group_by,
            format,
            jobs,
        } => {
            let dist = joint_distribution_par(n, s as usize, jobs)?;
            Ok(table(&dist, group_by, format))
        }
        Command::Verify {
            max_n,
            s,
            suite,
            jobs,
            json,
        } => {
            let s: Vec<usize> = s.into_iter().map(|x| x as usize).collect();
            verify(max_n, &s, suite, jobs, json)
        }
        Command::Render { s, partition, what } => {
            let art = match what {
                What::Ferrers => partition.render(),
                What::Diagram => RemainderDiagram::from_partition(&partition, s as usize).render(),
            };
            Ok(if art.is_empty() { art } else { art + "\n" })
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialise") + "\n"
}

fn stats(p: &Partition, s: usize, json: bool) -> String {
    let rem = p.remainder_sequence(s);
    let rows = p.row_positions(s);
    let cells = p.s_cells(s);
    if json {
        return pretty(&json!({
            "partition": p,
            "s": s,
            "size": p.size(),
            "length": p.len(),
            "r": p.r_stat(s),
            "c": p.c_stat(s),
            "rem": rem,
            "row_positions": rows.rows(),
            "s_cells": cells,
        }));
    }
    let list = |v: &[usize]| {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    let fields = [
        ("partition", format!("({p})")),
        ("s", s.to_string()),
        ("size", p.size().to_string()),
        ("length", p.len().to_string()),
        ("r", p.r_stat(s).to_string()),
        ("c", p.c_stat(s).to_string()),
        ("rem", format!("({})", list(rem.entries()))),
        ("row_positions", format!("({})", list(rows.rows()))),
        (
            "s_cells",
            format!(
                "[{}]",
                cells
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        ),
    ];
    let mut out = String::new();
    for (k, v) in fields {
        let _ = writeln!(out, "{k:<14}{v}");
    }
    out
}

fn apply(p: &Partition, s: usize, map: Map, trace: bool, json: bool) -> Result<String, Failure> {
    let (out, steps) = match map {
        Map::General => {
            let t = involute_traced(p, s)?;
            (t.output.clone(), Some(t))
        }
        Map::Strict => (map_strict(p, s)?, None),
        Map::Empty => (conj_empty(p, s)?, None),
    };
    if json {
        let mut v = json!({
            "input": p,
            "s": s,
            "output": out,
            "before": {"r": p.r_stat(s), "c": p.c_stat(s)},
            "after": {"r": out.r_stat(s), "c": out.c_stat(s)},
        });
        if let (true, Some(t)) = (trace, &steps) {
            v["trace"] = serde_json::to_value(t).expect("traces serialise");
        }
        return Ok(pretty(&v));
    }
    let mut text = format!("{out}\n");
    if trace {
        match &steps {
            Some(t) => text += &render_trace(t),
            None => {
                return Err(Failure::Usage(
                    "--trace is only available for --map general".into(),
                ))
            }
        }
    }
    Ok(text)
}

fn render_trace(t: &InvolutionTrace) -> String {
    let mut out = String::new();
    let mut section = |title: String, d: &RemainderDiagram| {
        let _ = write!(out, "\n{title}\n{}\n", d.render());
    };
    section(
        format!(
            "remainder diagram of ({}) for s = {}, rem = {:?}",
            t.input, t.s, t.remainders
        ),
        &t.diagram,
    );
    for step in &t.reduction.steps {
        section(
            format!("reduce at descent {} (case {:?})", step.descent, step.case),
            &step.diagram,
        );
    }
    section("conjugate".into(), &t.conjugate);
    for step in &t.expansion.steps {
        section(
            format!("undo descent {} (case {:?})", step.descent, step.case),
            &step.diagram,
        );
    }
    out
}

fn gf(
    s: usize,
    rem: &RemainderVector,
    r: Option<usize>,
    c: Option<usize>,
    symmetric: bool,
    max_degree: Option<usize>,
    json: bool,
) -> Result<String, Failure> {
    rem.check_modulus(s)?;
    let (poly, mut record) = match (max_degree, r, c) {
        (Some(n), _, _) => (
            gf_sum_form(s, rem, SeriesTruncation::new(n))?,
            json!({"s": s, "rem": rem, "max_degree": n}),
        ),
        (None, Some(r), Some(c)) => {
            let poly = if symmetric {
                gf_symmetric(s, rem, r, c)?
            } else {
                gf_closed(s, rem, r, c)?
            };
            (poly, json!({"s": s, "rem": rem, "r": r, "c": c}))
        }
        _ => {
            return Err(Failure::Usage(
                "--r and --c are required without --sum-form".into(),
            ))
        }
    };
    if json {
        record["display"] = json!(poly.to_string());
        record["terms"] = serde_json::to_value(&poly).expect("polynomials serialise");
        return Ok(pretty(&record));
    }
    Ok(format!("{poly}\n"))
}

fn table(dist: &JointDistribution, group_by: GroupBy, format: Format) -> String {
    match (group_by, format) {
        (GroupBy::Rem, Format::Csv) => dist.to_csv(),
        (GroupBy::None, Format::Csv) => {
            let mut out = String::from("r,c,count\n");
            for ((r, c), v) in dist.rc_marginal() {
                let _ = writeln!(out, "{r},{c},{v}");
            }
            out
        }
        (GroupBy::Rem, Format::Json) => {
            let mut groups: BTreeMap<&RemainderVector, Vec<Value>> = BTreeMap::new();
            for ((rem, r, c), v) in &dist.entries {
                groups
                    .entry(rem)
                    .or_default()
                    .push(json!({"r": r, "c": c, "count": v}));
            }
            let groups: Vec<Value> = groups
                .into_iter()
                .map(|(rem, rows)| json!({"rem": rem, "entries": rows}))
                .collect();
            pretty(&json!({"n": dist.n, "s": dist.s, "groups": groups}))
        }
        (GroupBy::None, Format::Json) => {
            let rows: Vec<Value> = dist
                .rc_marginal()
                .into_iter()
                .map(|((r, c), v)| json!({"r": r, "c": c, "count": v}))
                .collect();
            pretty(&json!({"n": dist.n, "s": dist.s, "entries": rows}))
        }
    }
}

fn verify(
    max_n: usize,
    s_values: &[usize],
    suite: Suite,
    jobs: usize,
    json: bool,
) -> Result<String, Failure> {
    let mut passed = true;
    let mut text = String::new();
    let mut record = json!({"max_n": max_n, "s": s_values});
    if suite != Suite::Gf {
        let report = verify_involution(max_n, s_values, jobs)?;
        passed &= report.passed;
        let _ = writeln!(
            text,
            "involution: {} checks, {} violations: {}",
            report.checked,
            report.violations.len(),
            verdict(report.passed)
        );
        for v in report.violations.iter().take(10) {
            let _ = writeln!(
                text,
                "  {}",
                serde_json::to_string(v).expect("violations serialise")
            );
        }
        record["involution"] = serde_json::to_value(&report).expect("reports serialise");
    }
    if suite != Suite::Involution {
        let mut reports = Vec::new();
        for &s in s_values {
            let report = verify_gf(max_n, s, jobs)?;
            passed &= report.passed;
            let _ = writeln!(
                text,
                "gf s={s}: {} checks, {} discrepancies: {}",
                report.checked,
                report.discrepancies.len(),
                verdict(report.passed)
            );
            for d in report.discrepancies.iter().take(10) {
                let _ = writeln!(
                    text,
                    "  {}",
                    serde_json::to_string(d).expect("discrepancies serialise")
                );
            }
            reports.push(report);
        }
        record["gf"] = serde_json::to_value(&reports).expect("reports serialise");
    }
    record["passed"] = json!(passed);
    let out = if json { pretty(&record) } else { text };
    if passed {
        Ok(out)
    } else {
        Err(Failure::Counterexample(out))
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
