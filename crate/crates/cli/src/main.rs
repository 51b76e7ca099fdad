//! `moy`: evaluate MOY graphs from the command line.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use moy_core::checks::{classical_report, run_suite, series_report, Suite};
use moy_core::cycles::{all_cycles, is_positive, CycleSet};
use moy_core::diagram::{
    builtin, builtin_text, parse_diagram, Coloring, PlanarDiagram, BUILTIN_NAMES,
};
use moy_core::genseries::{
    classical_series, cycle_polynomial, format_classical, generating_series_n,
};
use moy_core::homfly::{
    check_fphi, check_shift, homfly_series, specialize_to_n, HomflyCoeff, Truncation,
};
use moy_core::qtorus::cycle_signature;
use moy_core::report::CheckReport;
use moy_core::statesum::{moy_eval, StateSum};

#[derive(Parser)]
#[command(
    name = "moy",
    version,
    about = "Exact evaluation of colored MOY graphs"
)]
struct Cli {
    /// Print structured JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a built-in diagram as a diagram file.
    Builtin { name: String },
    /// List the cycles, their rotation numbers and pairings.
    Cycles { file: String },
    /// Evaluate one coloring by the state sum.
    Eval {
        file: String,
        #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Assignments `id=value,...`; omitted ids are 0.
        #[arg(long, default_value = "")]
        color: String,
    },
    /// Every nonzero evaluation at level N.
    Table {
        file: String,
        #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Expansion of the classical cycle polynomial to the N-th power.
    Classical {
        file: String,
        #[arg(long = "N")]
        n: u32,
        /// Compare against the state sum at q = 1.
        #[arg(long)]
        check: bool,
    },
    /// The generating series from the twisted product of cycle polynomials.
    Series {
        file: String,
        #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Compare against the state sum.
        #[arg(long)]
        check: bool,
    },
    /// The HOMFLY generating series of a positive diagram at truncation.
    Homfly {
        file: String,
        /// Bound on the rotation-weighted degree.
        #[arg(long = "max-x-degree")]
        max_degree: usize,
        /// Bound on the exponent of q^{1/4}.
        #[arg(long = "q-order", value_parser = clap::value_parser!(i64).range(0..))]
        q_order: i64,
        #[arg(long)]
        check: bool,
        #[arg(long = "check-shift")]
        check_shift: bool,
        /// Also substitute a = q^N.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        specialize: Option<u32>,
    },
    /// Run an invariant suite.
    Check {
        file: String,
        #[arg(long)]
        suite: Suite,
        #[arg(long = "N", value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
}

enum Failure {
    Input(String),
    Check,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

#[derive(Serialize)]
struct Entry<'a, V> {
    coloring: &'a Coloring,
    value: &'a V,
}

fn entries<V>(t: &BTreeMap<Coloring, V>) -> Vec<Entry<'_, V>> {
    t.iter()
        .map(|(coloring, value)| Entry { coloring, value })
        .collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check) => ExitCode::from(3),
    }
}

/// A path to a diagram file, or the name of a built-in diagram.
fn load(file: &str) -> Result<PlanarDiagram, Failure> {
    if Path::new(file).exists() {
        let text = std::fs::read_to_string(file).map_err(|e| format!("{file}: {e}"))?;
        parse_diagram(&text).map_err(|e| Failure::Input(format!("{file}: {e}")))
    } else if BUILTIN_NAMES.contains(&file) {
        Ok(builtin(file)?)
    } else {
        Err(Failure::Input(format!(
            "{file}: no such file, and not a built-in diagram ({})",
            BUILTIN_NAMES.join(", ")
        )))
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let structured = cli.json;
    match &cli.command {
        Command::Builtin { name } => Ok(builtin_text(name)? + "\n"),
        Command::Cycles { file } => {
            let d = load(file)?;
            let cs = all_cycles(&d)?;
            Ok(if structured {
                json(&cycles_json(&cs))
            } else {
                cycles_text(&cs)
            })
        }
        Command::Eval { file, n, color } => {
            let d = load(file)?;
            let gamma = Coloring::parse(&d, color)?;
            let p = moy_eval(&d, &gamma, *n)?;
            Ok(if structured {
                json(&Entry {
                    coloring: &gamma,
                    value: &p,
                })
            } else {
                format!("{p}\n")
            })
        }
        Command::Table { file, n } => {
            let d = load(file)?;
            let cs = all_cycles(&d)?;
            let t = StateSum::new(&d, &cs).table(*n);
            Ok(if structured {
                json(&entries(&t))
            } else {
                table_text(&t)
            })
        }
        Command::Classical { file, n, check } => {
            let d = load(file)?;
            let cs = all_cycles(&d)?;
            let s = classical_series(&d, &cs, *n);
            let report = check.then(|| classical_report(&d, &cs, *n));
            let body = if structured {
                json(&serde_json::json!({ "table": entries(&s), "report": report }))
            } else {
                let mut out = format!("P = {}\n", format_classical(&classical_series(&d, &cs, 1)));
                out += &table_text(&s);
                out
            };
            finish(body, report, structured)
        }
        Command::Series { file, n, check } => {
            let d = load(file)?;
            let cs = all_cycles(&d)?;
            let s = generating_series_n(&d, &cs, *n)?;
            let report = if *check {
                Some(series_report(&d, &cs, *n)?)
            } else {
                None
            };
            let body = if structured {
                json(&serde_json::json!({ "table": entries(&s), "report": report }))
            } else {
                let sig = cycle_signature(&cs);
                format!("P = {}\n{}", cycle_polynomial(&cs, &sig), table_text(&s))
            };
            finish(body, report, structured)
        }
        Command::Homfly {
            file,
            max_degree,
            q_order,
            check,
            check_shift: shift,
            specialize,
        } => {
            let d = load(file)?;
            let t = Truncation {
                max_degree: *max_degree,
                q_order: *q_order,
            };
            homfly(&d, t, *check, *shift, *specialize, structured)
        }
        Command::Check { file, suite, n } => {
            let d = load(file)?;
            let report = run_suite(&d, *suite, *n)?;
            let body = if structured {
                json(&report)
            } else {
                String::new()
            };
            finish(body, Some(report), structured)
        }
    }
}

/// Append the report in text mode and turn a failed report into exit code 3.
fn finish(
    mut body: String,
    report: Option<CheckReport>,
    structured: bool,
) -> Result<String, Failure> {
    let Some(r) = report else { return Ok(body) };
    if !structured {
        body += &format!("{r}\n");
    }
    if r.passed() {
        Ok(body)
    } else {
        print!("{body}");
        Err(Failure::Check)
    }
}

fn table_text<V: std::fmt::Display>(t: &BTreeMap<Coloring, V>) -> String {
    t.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
}

#[derive(Serialize)]
struct CycleJson {
    index: usize,
    edges: Vec<u32>,
    circles: Vec<u32>,
    halfedges: Vec<String>,
    rot: i64,
}

fn cycles_json(cs: &CycleSet) -> serde_json::Value {
    let cycles: Vec<CycleJson> = cs
        .iter()
        .enumerate()
        .map(|(index, c)| CycleJson {
            index,
            edges: c.edges.iter().copied().collect(),
            circles: c.circles.iter().copied().collect(),
            halfedges: c.halfedges.iter().map(|f| f.to_string()).collect(),
            rot: c.rot,
        })
        .collect();
    serde_json::json!({
        "cycles": cycles,
        "pairing_half_units": cs.pairing_matrix(),
        "positive": is_positive(cs),
    })
}

fn cycles_text(cs: &CycleSet) -> String {
    let mut out = format!(
        "{} cycles, {}\n",
        cs.len(),
        if is_positive(cs) {
            "positive"
        } else {
            "not positive"
        }
    );
    for (i, c) in cs.iter().enumerate() {
        let flags: Vec<String> = c.halfedges.iter().map(|f| f.to_string()).collect();
        out += &format!("C{i} {c} rot {} flags [{}]\n", c.rot, flags.join(" "));
    }
    out += "2<Ci,Cj>:\n";
    for row in cs.pairing_matrix() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        out += &format!("{}\n", cells.join(" "));
    }
    let sig = cycle_signature(cs);
    out += &format!("P = {}\n", cycle_polynomial(cs, &sig));
    out
}

#[derive(Serialize)]
struct HomflyJson<'a> {
    truncation: Truncation,
    table: Vec<Entry<'a, HomflyCoeff>>,
    reports: &'a [CheckReport],
    specialization: Option<serde_json::Value>,
}

fn homfly(
    d: &PlanarDiagram,
    t: Truncation,
    check: bool,
    shift: bool,
    specialize: Option<u32>,
    structured: bool,
) -> Result<String, Failure> {
    let f = homfly_series(d, t)?;
    let mut reports = Vec::new();
    if check {
        reports.push(check_fphi(d, t)?);
    }
    if shift {
        reports.push(check_shift(d, t)?);
    }
    let special = specialize
        .map(|n| specialize_to_n(&f, n).map(|s| (n, s)))
        .transpose()?;
    let body = if structured {
        json(&HomflyJson {
            truncation: t,
            table: entries(&f.table),
            reports: &reports,
            specialization: special
                .as_ref()
                .map(|(n, s)| serde_json::json!({ "N": n, "table": entries(s) })),
        })
    } else {
        let mut out = format!(
            "F through degree {}, q-order {} (units of q^{{1/4}})\n",
            t.max_degree, t.q_order
        );
        for (k, c) in &f.table {
            out += &format!("{k} [degree {}]: {}\n", c.degree, c.coeff);
        }
        if let Some((n, s)) = &special {
            out += &format!("a = q^{n}:\n");
            for (k, w) in s {
                out += &format!("{k}: {} + O(q^{{{}/4}})\n", w.poly, w.window + 1);
            }
        }
        for r in &reports {
            out += &format!("{r}\n");
        }
        out
    };
    if reports.iter().all(CheckReport::passed) {
        Ok(body)
    } else {
        print!("{body}");
        Err(Failure::Check)
    }
}
