//! Command-line front end.
//!
//! Every command renders into an [`Outcome`] holding the text for stdout and
//! stderr and the exit code, so the binary only prints and exits.
//!
//! Exit codes: 0 success, 2 parse error or non-prime input, 3 invalid
//! parameters, 4 out-of-scope verdict under `--strict`, 5 sweep violation,
//! 6 verification mismatch.

pub mod sweep;

use crate::arith::PrimeSet;
use crate::bruteforce::{find_hall_subgroups, verify_report, Budget, ConcreteGroup, GroupKind, VerificationOutcome};
use crate::classify::{classify, kpi_bound_almost_simple, ClassifyError, HallReport, KPi, OuterDescription};
use crate::extension::{burnside_cyclic, kpi_wreath_cyclic, ExtensionError};
use crate::groups::{Family, GroupError, GroupSpec};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fmt::Write as _;
use sweep::{run_sweep, SweepGrid, SweepOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_SCOPE: i32 = 4;
pub const EXIT_VIOLATION: i32 = 5;
pub const EXIT_MISMATCH: i32 = 6;

/// Largest prime for which `wreath` also runs the Burnside count.
pub const BURNSIDE_MAX_P: u64 = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "hallpi", version, about = "Hall subgroups of finite simple groups")]
pub struct Cli {
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the π-Hall subgroups of one group.
    Classify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        pi: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Treat out-of-scope verdicts and bounded answers as errors.
        #[arg(long)]
        strict: bool,
    },
    /// Classify a grid of groups and check the class-number bounds.
    Sweep {
        /// Comma list of families, or `none` for an empty grid.
        #[arg(long, default_value = "all")]
        families: String,
        #[arg(long, default_value_t = 50)]
        q_max: u64,
        #[arg(long, default_value_t = 12)]
        n_max: u32,
        /// Primes whose nonempty subsets form the π list.
        #[arg(long, default_value = "2,3,5,7")]
        primes: String,
        /// Keep only π containing 2 and 3.
        #[arg(long)]
        require_two_three: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Compare classifier reports with brute-force censuses.
    Verify {
        /// `GROUP:π`, e.g. `PSL(2,11):2,3`; repeatable. Defaults to the
        /// standard instance set.
        #[arg(long)]
        instance: Vec<String>,
        /// Maximum number of subgroup closures per search.
        #[arg(long)]
        budget: Option<u64>,
        /// Compare against this report (JSON) instead of a fresh
        /// classification; needs exactly one instance.
        #[arg(long)]
        report: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Number of Hall classes of K wr Z_p from k classes in K.
    Wreath {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Possible k_π^G(S) for an almost simple G with socle S.
    KpiBound {
        #[arg(long)]
        group: String,
        #[arg(long)]
        pi: String,
        /// trivial, diagonal-and-field or any.
        #[arg(long, default_value = "any")]
        outer: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Rendered result of one command.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            ..Default::default()
        }
    }

    fn fail(code: i32, msg: impl Into<String>) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
            code,
        }
    }
}

fn parse_group(text: &str) -> Result<GroupSpec, Outcome> {
    GroupSpec::parse_valid(text).map_err(group_error)
}

fn group_error(e: GroupError) -> Outcome {
    let code = match e {
        GroupError::Parse(_) => EXIT_PARSE,
        _ => EXIT_INVALID,
    };
    Outcome::fail(code, e.to_string())
}

fn parse_pi(text: &str) -> Result<PrimeSet, Outcome> {
    PrimeSet::parse(text).map_err(|e| Outcome::fail(EXIT_PARSE, e.to_string()))
}

fn classify_error(e: ClassifyError) -> Outcome {
    match e {
        ClassifyError::Invalid(g) => group_error(g),
        ClassifyError::Scope(s) => Outcome::fail(EXIT_SCOPE, s),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

pub const REPORT_CSV_HEADER: [&str; 9] = ["spec", "pi", "regime", "e_pi", "k_pi", "c_pi", "d_pi", "hall_order", "classes"];

fn report_csv_row(r: &HallReport) -> Vec<String> {
    let classes: Vec<String> = r.classes.iter().map(|c| format!("{}:{}", c.case_id, c.class_count)).collect();
    vec![
        r.spec.to_string(),
        r.pi.braces(),
        r.scope_tag.to_string(),
        r.e_pi.to_string(),
        r.k_pi.to_string(),
        r.c_pi.to_string(),
        r.d_pi.to_string(),
        r.hall_order.clone().unwrap_or_default(),
        classes.join(";"),
    ]
}

/// Plain-text rendering of a report.
pub fn report_text(r: &HallReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "group:      {}", r.spec);
    let _ = writeln!(s, "pi:         {}", r.pi.braces());
    let _ = writeln!(s, "regime:     {}", r.scope_tag);
    let _ = writeln!(s, "E_pi:       {}", r.e_pi);
    if let Some(h) = &r.hall_order {
        let _ = writeln!(s, "hall order: {h}");
    }
    let _ = writeln!(s, "k_pi:       {}", r.k_pi);
    let _ = writeln!(s, "C_pi:       {}", r.c_pi);
    let _ = writeln!(s, "D_pi:       {}", r.d_pi);
    for c in &r.classes {
        let _ = writeln!(s, "class {}: {} ({} class{})", c.case_id, c.structure, c.class_count, if c.class_count == 1 { "" } else { "es" });
        for cond in &c.conditions {
            let _ = writeln!(s, "  {}: {}", cond.check, cond.evaluated);
        }
        let _ = writeln!(s, "  {}", c.fusion_note);
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

fn is_bounded(r: &HallReport) -> bool {
    matches!(r.k_pi, KPi::Bound(_)) || r.e_pi.is_out_of_scope() || r.c_pi.is_out_of_scope() || r.d_pi.is_out_of_scope()
}

pub fn cmd_classify(group: &str, pi: &str, format: Format, strict: bool) -> Outcome {
    let (spec, pi) = match (parse_group(group), parse_pi(pi)) {
        (Ok(s), Ok(p)) => (s, p),
        (Err(e), _) | (_, Err(e)) => return e,
    };
    let report = match classify(&spec, &pi) {
        Ok(r) => r,
        Err(e) => return classify_error(e),
    };
    let stdout = match format {
        Format::Json => json(&report),
        Format::Csv => csv_text(&REPORT_CSV_HEADER, &[report_csv_row(&report)]),
        Format::Text => report_text(&report),
    };
    let mut out = Outcome::ok(stdout);
    if strict && is_bounded(&report) {
        out.code = EXIT_SCOPE;
        out.stderr = "error: the report contains out-of-scope verdicts\n".into();
    }
    out
}

fn parse_family(name: &str) -> Option<Vec<Family>> {
    let f = match name.trim().to_ascii_lowercase().as_str() {
        "all" => return Some(SweepGrid::default().families),
        "none" | "" => return Some(Vec::new()),
        "alt" => Family::Alt,
        "sym" => Family::Sym,
        "sporadic" => Family::Sporadic,
        "linear" | "psl" | "linear-unitary" => Family::LinearUnitary,
        "symplectic" | "psp" => Family::Symplectic,
        "orthogonal" | "o" => Family::Orthogonal,
        "g2" => Family::G2,
        "f4" => Family::F4,
        "e6" => Family::E6,
        "e7" => Family::E7,
        "e8" => Family::E8,
        "3d4" => Family::TriD4,
        "2g2" => Family::TwoG2,
        _ => return None,
    };
    Some(vec![f])
}

pub const SWEEP_CSV_HEADER: [&str; 8] = ["spec", "pi", "regime", "e_pi", "k_pi", "c_pi", "d_pi", "violations"];

/// Renders a sweep; the summary line comes last.
pub fn render_sweep(o: &SweepOutcome, format: Format) -> String {
    let summary = format!(
        "{} cells, {} skipped, {} violations",
        o.rows.len(),
        o.skipped.len(),
        o.violations
    );
    match format {
        Format::Json => json(&serde_json::json!({
            "schema": 1,
            "rows": o.rows,
            "skipped": o.skipped,
            "violations": o.violations,
            "summary": summary,
        })),
        Format::Csv => {
            let rows: Vec<Vec<String>> = o
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.spec.clone(),
                        r.pi.clone(),
                        r.regime.clone(),
                        r.e_pi.clone(),
                        r.k_pi.clone(),
                        r.c_pi.clone(),
                        r.d_pi.clone(),
                        r.violations.join("; "),
                    ]
                })
                .collect();
            let mut s = csv_text(&SWEEP_CSV_HEADER, &rows);
            let _ = writeln!(s, "# {summary}");
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &o.rows {
                let _ = writeln!(s, "{} {} [{}] E={} k={} C={} D={}", r.spec, r.pi, r.regime, r.e_pi, r.k_pi, r.c_pi, r.d_pi);
                for v in &r.violations {
                    let _ = writeln!(s, "  VIOLATION: {v}");
                }
            }
            let _ = writeln!(s, "{summary}");
            s
        }
    }
}

pub fn cmd_sweep(grid: &SweepGrid, format: Format) -> Outcome {
    let o = run_sweep(grid);
    let mut out = Outcome::ok(render_sweep(&o, format));
    if o.violations > 0 {
        out.code = EXIT_VIOLATION;
        for r in o.rows.iter().filter(|r| !r.violations.is_empty()) {
            let _ = writeln!(out.stderr, "violation: {} {}: {}", r.spec, r.pi, r.violations.join("; "));
        }
    }
    out
}

/// Instances checked by `verify` when none are given.
pub fn default_instances() -> Vec<String> {
    let mut v = Vec::new();
    for pi in ["2,3", "2,3,5"] {
        for q in [5, 7, 11, 13] {
            if pi.split(',').any(|r| r == q.to_string()) {
                continue;
            }
            v.push(format!("PSL(2,{q}):{pi}"));
            v.push(format!("SL(2,{q}):{pi}"));
        }
        for n in [5, 6, 7] {
            v.push(format!("Sym({n}):{pi}"));
            v.push(format!("Alt({n}):{pi}"));
        }
    }
    v
}

/// Census and comparison for one `GROUP:π` instance, against `golden` when
/// given and a fresh classification otherwise.
pub fn verify_instance(
    instance: &str,
    budget: &Budget,
    golden: Option<&HallReport>,
) -> Result<VerificationOutcome, Outcome> {
    let Some((g, p)) = instance.rsplit_once(':') else {
        return Err(Outcome::fail(EXIT_PARSE, format!("instance `{instance}` is not GROUP:π")));
    };
    let spec = parse_group(g.trim())?;
    let pi = parse_pi(p.trim())?;
    let Some((kind, param)) = GroupKind::from_spec(&spec) else {
        return Err(Outcome::fail(EXIT_INVALID, format!("no explicit construction for {spec}")));
    };
    let group = ConcreteGroup::build_with_budget(kind, param, budget)
        .map_err(|e| Outcome::fail(EXIT_INVALID, e.to_string()))?;
    let report = match golden {
        Some(r) => r.clone(),
        None => classify(&spec, &pi).map_err(classify_error)?,
    };
    let census = find_hall_subgroups(&group, &pi, budget);
    Ok(verify_report(&group, &report, &census, budget))
}

pub fn cmd_verify(instances: &[String], budget: &Budget, golden: Option<&HallReport>, format: Format) -> Outcome {
    let list = if instances.is_empty() {
        default_instances()
    } else {
        instances.to_vec()
    };
    if golden.is_some() && list.len() != 1 {
        return Outcome::fail(EXIT_PARSE, "--report needs exactly one --instance");
    }
    let mut results = Vec::new();
    for inst in &list {
        match verify_instance(inst, budget, golden) {
            Ok(v) => results.push(v),
            Err(e) => return e,
        }
    }
    let failed = results.iter().filter(|v| !v.passed).count();
    let stdout = match format {
        Format::Json => json(&serde_json::json!({"schema": 1, "instances": results, "failed": failed})),
        Format::Csv => {
            let rows: Vec<Vec<String>> = results
                .iter()
                .flat_map(|v| {
                    v.checks.iter().map(move |c| {
                        vec![
                            v.group.clone(),
                            v.pi.clone(),
                            c.field.clone(),
                            c.classify.clone(),
                            c.census.clone(),
                            if c.pass { "pass" } else { "fail" }.to_string(),
                        ]
                    })
                })
                .collect();
            csv_text(&["group", "pi", "field", "classify", "census", "result"], &rows)
        }
        Format::Text => {
            let mut s = String::new();
            for v in &results {
                let _ = writeln!(s, "{} {}: {}", v.group, v.pi, if v.passed { "pass" } else { "FAIL" });
                for c in &v.checks {
                    let mark = if c.pass { "ok" } else { "MISMATCH" };
                    let _ = writeln!(s, "  {:<10} classify={} census={} {mark}", c.field, c.classify, c.census);
                }
            }
            let _ = writeln!(s, "{} instances, {failed} failed", results.len());
            s
        }
    };
    let mut out = Outcome::ok(stdout);
    if failed > 0 {
        out.code = EXIT_MISMATCH;
        out.stderr = format!("error: {failed} instance(s) disagree\n");
    }
    out
}

#[derive(Debug, Serialize)]
struct WreathOut {
    k: u64,
    p: u64,
    k_pi: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    burnside: Option<u64>,
}

pub fn cmd_wreath(k: u64, p: u64, format: Format) -> Outcome {
    let value = match kpi_wreath_cyclic(k, p) {
        Ok(v) => v,
        Err(e @ ExtensionError::NotPrime(_)) => return Outcome::fail(EXIT_PARSE, e.to_string()),
        Err(e) => return Outcome::fail(EXIT_INVALID, e.to_string()),
    };
    let burnside = if p <= BURNSIDE_MAX_P {
        match burnside_cyclic(k, p as usize) {
            Ok(b) => Some(b),
            Err(e) => return Outcome::fail(EXIT_INVALID, e.to_string()),
        }
    } else {
        None
    };
    let w = WreathOut {
        k,
        p,
        k_pi: value.to_string(),
        burnside,
    };
    let stdout = match format {
        Format::Json => json(&w),
        Format::Csv => csv_text(
            &["k", "p", "k_pi", "burnside"],
            &[vec![k.to_string(), p.to_string(), w.k_pi.clone(), burnside.map(|b| b.to_string()).unwrap_or_default()]],
        ),
        Format::Text => match burnside {
            Some(b) => format!("{} (cross-check: {b})\n", w.k_pi),
            None => format!("{}\n", w.k_pi),
        },
    };
    let mut out = Outcome::ok(stdout);
    if burnside.is_some_and(|b| b.to_string() != w.k_pi) {
        out.code = EXIT_MISMATCH;
        out.stderr = "error: formula and Burnside count disagree\n".into();
    }
    out
}

pub fn cmd_kpi_bound(group: &str, pi: &str, outer: &str, format: Format) -> Outcome {
    let (spec, pi) = match (parse_group(group), parse_pi(pi)) {
        (Ok(s), Ok(p)) => (s, p),
        (Err(e), _) | (_, Err(e)) => return e,
    };
    let outer: OuterDescription = match outer.parse() {
        Ok(o) => o,
        Err(e) => return Outcome::fail(EXIT_PARSE, e),
    };
    let (bound, report) = match kpi_bound_almost_simple(&spec, &pi, outer) {
        Ok(x) => x,
        Err(e) => return classify_error(e),
    };
    let set: Vec<String> = bound.set.iter().map(u64::to_string).collect();
    let stdout = match format {
        Format::Json => json(&serde_json::json!({"schema": 1, "socle": report.spec.to_string(), "pi": pi.braces(), "bound": bound})),
        Format::Csv => csv_text(
            &["socle", "pi", "set", "exact", "reason"],
            &[vec![
                report.spec.to_string(),
                pi.braces(),
                set.join(";"),
                bound.exact.map(|e| e.to_string()).unwrap_or_default(),
                bound.reason.clone(),
            ]],
        ),
        Format::Text => {
            let mut s = format!("k_pi^G(S) in {{{}}}\n", set.join(","));
            if let Some(e) = bound.exact {
                let _ = writeln!(s, "exact: {e}");
            }
            let _ = writeln!(s, "{}", bound.reason);
            s
        }
    };
    Outcome::ok(stdout)
}

/// Runs a parsed command line.
pub fn run(cli: Cli) -> Outcome {
    let out = match cli.command {
        Command::Classify {
            group,
            pi,
            format,
            strict,
        } => cmd_classify(&group, &pi, format, strict),
        Command::Sweep {
            families,
            q_max,
            n_max,
            primes,
            require_two_three,
            format,
        } => {
            let mut fams = Vec::new();
            for name in families.split(',') {
                match parse_family(name) {
                    Some(f) => fams.extend(f),
                    None => return Outcome::fail(EXIT_PARSE, format!("unknown family `{name}`")),
                }
            }
            let primes = match parse_pi(&primes) {
                Ok(p) => p.small(),
                Err(e) => return e,
            };
            let grid = SweepGrid {
                families: fams,
                q_max,
                n_max,
                primes,
                require_two_three,
            };
            cmd_sweep(&grid, format)
        }
        Command::Verify {
            instance,
            budget,
            report,
            format,
        } => {
            let mut b = Budget::default();
            if let Some(c) = budget {
                b.max_closures = c;
            }
            let golden = match report {
                Some(path) => {
                    let text = match std::fs::read_to_string(&path) {
                        Ok(t) => t,
                        Err(e) => return Outcome::fail(EXIT_PARSE, format!("{}: {e}", path.display())),
                    };
                    match serde_json::from_str::<HallReport>(&text) {
                        Ok(r) => Some(r),
                        Err(e) => return Outcome::fail(EXIT_PARSE, format!("{}: {e}", path.display())),
                    }
                }
                None => None,
            };
            cmd_verify(&instance, &b, golden.as_ref(), format)
        }
        Command::Wreath { k, p, format } => cmd_wreath(k, p, format),
        Command::KpiBound {
            group,
            pi,
            outer,
            format,
        } => cmd_kpi_bound(&group, &pi, &outer, format),
    };
    match cli.out {
        Some(path) if out.code == EXIT_OK || !out.stdout.is_empty() => match std::fs::write(&path, &out.stdout) {
            Ok(()) => Outcome {
                stdout: String::new(),
                ..out
            },
            Err(e) => Outcome::fail(EXIT_INVALID, format!("{}: {e}", path.display())),
        },
        _ => out,
    }
}
