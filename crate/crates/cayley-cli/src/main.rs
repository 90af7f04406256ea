//! `cayley`: analyze finite groups given by descriptors or table files,
//! verify the structural bounds, test isoclinism, reduce to stem groups
//! and survey families.
//!
//! Exit codes: 0 success (all checks hold), 1 a bound verdict is false or
//! an internal invariant fired (either is a bug, the bounds are theorems),
//! 2 input error, 3 feasibility cap exceeded.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cayley::bounds::{
    self, extraspecial_gap_survey, survey_catalog, BoundReport, SurveyRow, TheoremId,
};
use cayley::catalog::{build_with_cap, parse_descriptor};
use cayley::group::GroupTable;
use cayley::invariants::{commutator_data, group_exponent, upper_central_series};
use cayley::isoclinism::{are_isoclinic, commutator_pairing, is_stem, stem_reduce};
use cayley::{Error, IsoclinismWitness};

const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Parser)]
#[command(
    name = "cayley",
    version,
    about = "Finite-group invariants, bound verification, isoclinism and surveys on explicit Cayley tables"
)]
struct Cli {
    /// Output format (csv is available for survey only)
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Largest group order the constructors may materialize
    #[arg(long, global = true, default_value_t = cayley::DEFAULT_ORDER_CAP)]
    max_order: usize,

    /// Cap on |G/Z(G)| for the isoclinism search
    #[arg(long, global = true, default_value_t = cayley::DEFAULT_SEARCH_CAP)]
    search_cap: usize,

    /// Tolerance for log2-domain bound comparisons (expert)
    #[arg(long, global = true, default_value_t = cayley::DEFAULT_LOG2_TOLERANCE)]
    tolerance: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the structural invariants of one group
    Analyze {
        /// Group descriptor, e.g. "D8", "C2 x Q8", "ES(3,2,+)", "table:g.tbl"
        descriptor: String,
    },
    /// Run bound checks and report verdicts; exits 1 on any violation
    Verify {
        descriptor: String,
        /// Comma-separated subset of checks (default: all), e.g.
        /// "neumann,theorem-b,podoski-szegedy"
        #[arg(long, value_delimiter = ',')]
        check: Vec<String>,
    },
    /// Decide whether two groups are isoclinic
    Isoclinic {
        left: String,
        right: String,
        /// Serialize the (phi, theta) witness
        #[arg(long)]
        emit_witness: bool,
    },
    /// Quotient toward a stem group of the same isoclinism class
    Stem {
        descriptor: String,
        /// Serialize the witness between input and result
        #[arg(long)]
        emit_witness: bool,
    },
    /// Tabulate invariants and verdicts over a family of groups
    Survey {
        /// Family to survey: the exponent-p extraspecial tower or the
        /// whole catalog
        #[arg(long, value_enum, ignore_case = true)]
        family: Family,
        /// Prime p (es family)
        #[arg(long)]
        p: Option<u64>,
        /// Largest extraspecial width m (es family)
        #[arg(long)]
        m_max: Option<u32>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Es,
    Catalog,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }
}

/// Maps library errors to exit codes. Order-cap breaches count as
/// feasibility (3) where the command enumerates or searches, and as input
/// errors (2) where the user named one concrete group.
fn classify(e: Error, cap_is_feasibility: bool) -> Failure {
    let code = match &e {
        Error::Infeasible { .. } => 3,
        Error::OrderCapExceeded { .. } if cap_is_feasibility => 3,
        Error::Internal { .. } => 1,
        _ => 2,
    };
    Failure { code, message: e.to_string() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(stdout) => {
            print!("{stdout}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("cayley: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Analyze { descriptor } => analyze(cli, descriptor),
        Command::Verify { descriptor, check } => verify(cli, descriptor, check),
        Command::Isoclinic { left, right, emit_witness } => {
            isoclinic(cli, left, right, *emit_witness)
        }
        Command::Stem { descriptor, emit_witness } => stem(cli, descriptor, *emit_witness),
        Command::Survey { family, p, m_max } => survey(cli, *family, *p, *m_max),
    }
}

fn load(cli: &Cli, descriptor: &str) -> Result<GroupTable, Failure> {
    let desc = parse_descriptor(descriptor).map_err(|e| classify(e, false))?;
    build_with_cap(&desc, cli.max_order).map_err(|e| classify(e, false))
}

fn reject_csv(cli: &Cli) -> Result<(), Failure> {
    if cli.format == Format::Csv {
        Err(Failure::input("csv output is only available for the survey command"))
    } else {
        Ok(())
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AnalyzeDoc<'a> {
    schema_version: &'a str,
    command: &'a str,
    descriptor: &'a str,
    order: u64,
    center_order: u64,
    second_center_order: u64,
    series_orders: Vec<u64>,
    nilpotency_class: Option<u64>,
    gamma2_order: u64,
    commutator_count: u64,
    k_equals_gamma2: bool,
    breadth: u64,
    exponent: u64,
}

fn analyze(cli: &Cli, descriptor: &str) -> Result<String, Failure> {
    reject_csv(cli)?;
    let g = load(cli, descriptor)?;
    let data = commutator_data(&g);
    let series = upper_central_series(&g);
    let doc = AnalyzeDoc {
        schema_version: SCHEMA_VERSION,
        command: "analyze",
        descriptor,
        order: g.order() as u64,
        center_order: series.center().order() as u64,
        second_center_order: series.second_center().order() as u64,
        series_orders: series.terms.iter().map(|t| t.order() as u64).collect(),
        nilpotency_class: series.nilpotency_class.map(|c| c as u64),
        gamma2_order: data.gamma2.order() as u64,
        commutator_count: data.commutator_set.len() as u64,
        k_equals_gamma2: data.k_equals_gamma2,
        breadth: data.breadth as u64,
        exponent: group_exponent(&g),
    };
    match cli.format {
        Format::Json => Ok(to_json(&doc)),
        _ => {
            let mut out = String::new();
            let _ = writeln!(out, "descriptor: {descriptor}");
            let _ = writeln!(out, "order: {}", doc.order);
            let _ = writeln!(out, "|Z(G)|: {}", doc.center_order);
            let _ = writeln!(out, "|Z2(G)|: {}", doc.second_center_order);
            let _ = writeln!(
                out,
                "upper central series orders: {}",
                join(&doc.series_orders)
            );
            let _ = writeln!(
                out,
                "nilpotency class: {}",
                doc.nilpotency_class
                    .map(|c| c.to_string())
                    .unwrap_or_else(|| "not nilpotent".into())
            );
            let _ = writeln!(out, "|gamma2(G)|: {}", doc.gamma2_order);
            let _ = writeln!(out, "|K(G)|: {}", doc.commutator_count);
            let _ = writeln!(
                out,
                "K(G) equals gamma2(G): {}",
                if doc.k_equals_gamma2 { "yes" } else { "no" }
            );
            let _ = writeln!(out, "breadth: {}", doc.breadth);
            let _ = writeln!(out, "exponent: {}", doc.exponent);
            Ok(out)
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct VerifyDoc<'a> {
    schema_version: &'a str,
    command: &'a str,
    descriptor: &'a str,
    all_hold: bool,
    reports: Vec<BoundReport>,
}

fn verify(cli: &Cli, descriptor: &str, check: &[String]) -> Result<String, Failure> {
    reject_csv(cli)?;
    let g = load(cli, descriptor)?;
    let selected: Vec<TheoremId> = if check.is_empty() {
        TheoremId::ALL.to_vec()
    } else {
        check
            .iter()
            .map(|name| {
                TheoremId::parse(name).ok_or_else(|| {
                    Failure::input(format!(
                        "unknown check `{name}` (valid: schur-witness, neumann, \
                         podoski-szegedy, theorem-b, proposition-2, lemma-1, bfc)"
                    ))
                })
            })
            .collect::<Result<_, _>>()?
    };
    let mut reports = Vec::new();
    for id in selected {
        let report = match id {
            TheoremId::SchurWitness => Ok(bounds::schur_witness(&g)),
            TheoremId::Neumann => bounds::neumann_check(&g, None),
            TheoremId::PodoskiSzegedy => bounds::podoski_szegedy_check(&g, cli.tolerance),
            TheoremId::TheoremB => bounds::theorem_b_check(&g, cli.tolerance),
            TheoremId::Proposition2 => bounds::proposition2_check(&g, None),
            TheoremId::Lemma1 => bounds::lemma1_check(&g, g.generators()),
            TheoremId::Bfc => Ok(bounds::bfc_report(&g)),
        }
        .map_err(|e| classify(e, false))?;
        reports.push(report);
    }
    let all_hold = reports.iter().all(|r| r.holds);
    let doc = VerifyDoc {
        schema_version: SCHEMA_VERSION,
        command: "verify",
        descriptor,
        all_hold,
        reports,
    };
    let rendered = match cli.format {
        Format::Json => to_json(&doc),
        _ => {
            let mut out = String::new();
            let _ = writeln!(out, "descriptor: {descriptor}");
            for r in &doc.reports {
                let _ = writeln!(out, "{}", render_report(r));
            }
            let _ = writeln!(out, "all hold: {}", if all_hold { "yes" } else { "no" });
            out
        }
    };
    if all_hold {
        Ok(rendered)
    } else {
        // a violated theorem signals an implementation bug
        print!("{rendered}");
        Err(Failure { code: 1, message: "a bound verdict is false".into() })
    }
}

fn render_report(r: &BoundReport) -> String {
    match r.rhs_log2 {
        None => match r.theorem_id {
            TheoremId::SchurWitness => format!(
                "{}: |G/Z| = {} with |gamma2| = {} (witness)",
                r.theorem_id, r.lhs, r.ingredients["gamma2Order"]
            ),
            _ => format!(
                "{}: breadth = {} with |gamma2| = {} (witness)",
                r.theorem_id, r.lhs, r.ingredients["gamma2Order"]
            ),
        },
        Some(log2) => {
            let rhs = match r.rhs_exact {
                Some(x) => x.to_string(),
                None => format!("2^{log2:.6}"),
            };
            let tight = if r.is_tight() { " (tight)" } else { "" };
            let verdict = if r.holds { "holds" } else { "VIOLATED" };
            format!("{}: {} <= {}{} {}", r.theorem_id, r.lhs, rhs, tight, verdict)
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct WitnessDoc {
    left_descriptor: String,
    right_descriptor: String,
    /// Image of each left coset (indices into the right coset list).
    phi: Vec<u16>,
    /// Image of each left gamma2 member position (positions on the right).
    theta: Vec<u16>,
    left_coset_reps: Vec<u16>,
    right_coset_reps: Vec<u16>,
    left_gamma2_members: Vec<u16>,
    right_gamma2_members: Vec<u16>,
    verified: bool,
}

fn witness_doc(
    left_desc: &str,
    right_desc: &str,
    left: &GroupTable,
    right: &GroupTable,
    w: &IsoclinismWitness,
) -> Result<WitnessDoc, Failure> {
    let pl = commutator_pairing(left).map_err(|e| classify(e, false))?;
    let pr = commutator_pairing(right).map_err(|e| classify(e, false))?;
    Ok(WitnessDoc {
        left_descriptor: left_desc.to_string(),
        right_descriptor: right_desc.to_string(),
        phi: w.phi.map.clone(),
        theta: w.theta.map.clone(),
        left_coset_reps: pl.quotient.coset_reps.clone(),
        right_coset_reps: pr.quotient.coset_reps.clone(),
        left_gamma2_members: pl.gamma2.members().to_vec(),
        right_gamma2_members: pr.gamma2.members().to_vec(),
        verified: w.verified,
    })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct IsoclinicDoc<'a> {
    schema_version: &'a str,
    command: &'a str,
    left: &'a str,
    right: &'a str,
    verdict: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessDoc>,
}

fn isoclinic(
    cli: &Cli,
    left: &str,
    right: &str,
    emit_witness: bool,
) -> Result<String, Failure> {
    reject_csv(cli)?;
    let gl = load(cli, left)?;
    let gr = load(cli, right)?;
    let outcome = match are_isoclinic(&gl, &gr, cli.search_cap) {
        Ok(found) => found,
        Err(Error::Infeasible { .. }) => {
            let doc = IsoclinicDoc {
                schema_version: SCHEMA_VERSION,
                command: "isoclinic",
                left,
                right,
                verdict: "INFEASIBLE",
                witness: None,
            };
            let rendered = match cli.format {
                Format::Json => to_json(&doc),
                _ => "INFEASIBLE\n".to_string(),
            };
            print!("{rendered}");
            return Err(Failure { code: 3, message: String::new() });
        }
        Err(e) => return Err(classify(e, false)),
    };
    let verdict = if outcome.is_some() { "ISOCLINIC" } else { "NOT_ISOCLINIC" };
    let witness = match (&outcome, emit_witness) {
        (Some(w), true) => Some(witness_doc(left, right, &gl, &gr, w)?),
        _ => None,
    };
    let doc = IsoclinicDoc {
        schema_version: SCHEMA_VERSION,
        command: "isoclinic",
        left,
        right,
        verdict,
        witness,
    };
    match cli.format {
        Format::Json => Ok(to_json(&doc)),
        _ => {
            let mut out = format!("{verdict}\n");
            if let Some(w) = &doc.witness {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(w).expect("serialize"));
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct StemDoc<'a> {
    schema_version: &'a str,
    command: &'a str,
    descriptor: &'a str,
    result_order: u64,
    kernel_order: u64,
    /// Members of the kernel; the result is the quotient of the input by
    /// this subgroup with minimal coset representatives.
    kernel_members: Vec<u16>,
    reached_stem: bool,
    result_is_stem: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessDoc>,
}

fn stem(cli: &Cli, descriptor: &str, emit_witness: bool) -> Result<String, Failure> {
    reject_csv(cli)?;
    let g = load(cli, descriptor)?;
    let r = stem_reduce(&g, cli.search_cap).map_err(|e| classify(e, true))?;
    let result_is_stem = is_stem(&r.quotient.table);
    let witness = if emit_witness {
        let right_desc = format!(
            "{descriptor} / [{}]",
            join(r.quotient.kernel.members())
        );
        Some(witness_doc(descriptor, &right_desc, &g, &r.quotient.table, &r.witness)?)
    } else {
        None
    };
    let doc = StemDoc {
        schema_version: SCHEMA_VERSION,
        command: "stem",
        descriptor,
        result_order: r.quotient.table.order() as u64,
        kernel_order: r.quotient.kernel.order() as u64,
        kernel_members: r.quotient.kernel.members().to_vec(),
        reached_stem: r.reached_stem,
        result_is_stem,
        witness,
    };
    match cli.format {
        Format::Json => Ok(to_json(&doc)),
        _ => {
            let mut out = String::new();
            let _ = writeln!(out, "descriptor: {descriptor}");
            let _ = writeln!(out, "result order: {}", doc.result_order);
            let _ = writeln!(out, "kernel order: {}", doc.kernel_order);
            let _ = writeln!(out, "kernel members: {}", join(&doc.kernel_members));
            let _ = writeln!(out, "reached stem: {}", yes_no(doc.reached_stem));
            let _ = writeln!(out, "result is stem: {}", yes_no(doc.result_is_stem));
            if let Some(w) = &doc.witness {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(w).expect("serialize"));
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SurveyDoc<'a> {
    schema_version: &'a str,
    command: &'a str,
    rows: Vec<SurveyRow>,
}

/// Fixed CSV column order; booleans as true/false, tightness ratios with
/// six decimals, empty where the bound is not an exact integer.
const CSV_HEADER: &str = "descriptor,order,center,secondCenter,gamma2,commutatorCount,breadth,\
nilpotencyClass,SCHUR_WITNESS,NEUMANN,PODOSKI_SZEGEDY,THEOREM_B,PROPOSITION_2,LEMMA_1,BFC,\
tightNEUMANN,tightPODOSKI_SZEGEDY,tightTHEOREM_B,tightPROPOSITION_2,tightLEMMA_1";

fn survey(
    cli: &Cli,
    family: Family,
    p: Option<u64>,
    m_max: Option<u32>,
) -> Result<String, Failure> {
    let rows = match family {
        Family::Es => {
            let p = p.ok_or_else(|| Failure::input("--p is required for --family es"))?;
            let m_max =
                m_max.ok_or_else(|| Failure::input("--m-max is required for --family es"))?;
            if parse_descriptor(&format!("ES({p},1,+)")).is_err() {
                return Err(Failure::input(format!("{p} is not prime")));
            }
            extraspecial_gap_survey(p, m_max, cli.max_order, cli.tolerance)
                .map_err(|e| classify(e, true))?
        }
        Family::Catalog => {
            survey_catalog(cli.max_order as u64, cli.max_order, cli.tolerance)
                .map_err(|e| classify(e, true))?
        }
    };
    match cli.format {
        Format::Json => Ok(to_json(&SurveyDoc {
            schema_version: SCHEMA_VERSION,
            command: "survey",
            rows,
        })),
        Format::Csv => {
            let mut out = String::new();
            let _ = writeln!(out, "{CSV_HEADER}");
            for r in &rows {
                let _ = writeln!(out, "{}", csv_row(r));
            }
            Ok(out)
        }
        Format::Human => {
            let mut out = String::new();
            for r in &rows {
                let class = r
                    .nilpotency_class
                    .map(|c| c.to_string())
                    .unwrap_or_else(|| "-".into());
                let held = r.holds.values().filter(|&&h| h).count();
                let tight: Vec<&String> = r
                    .tightness
                    .iter()
                    .filter(|(_, &v)| v == 1.0)
                    .map(|(k, _)| k)
                    .collect();
                let _ = write!(
                    out,
                    "{} order={} |Z|={} |Z2|={} |gamma2|={} |K|={} breadth={} class={} holds={}/{}",
                    r.descriptor,
                    r.order,
                    r.center_order,
                    r.second_center_order,
                    r.gamma2_order,
                    r.commutator_count,
                    r.breadth,
                    class,
                    held,
                    r.holds.len()
                );
                if tight.is_empty() {
                    let _ = writeln!(out);
                } else {
                    let _ = writeln!(
                        out,
                        " tight={}",
                        tight.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("+")
                    );
                }
            }
            Ok(out)
        }
    }
}

fn csv_row(r: &SurveyRow) -> String {
    let holds = |id: TheoremId| {
        r.holds.get(id.as_str()).map(|b| b.to_string()).unwrap_or_default()
    };
    let tight = |id: TheoremId| {
        r.tightness
            .get(id.as_str())
            .map(|v| format!("{v:.6}"))
            .unwrap_or_default()
    };
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.descriptor,
        r.order,
        r.center_order,
        r.second_center_order,
        r.gamma2_order,
        r.commutator_count,
        r.breadth,
        r.nilpotency_class.map(|c| c.to_string()).unwrap_or_default(),
        holds(TheoremId::SchurWitness),
        holds(TheoremId::Neumann),
        holds(TheoremId::PodoskiSzegedy),
        holds(TheoremId::TheoremB),
        holds(TheoremId::Proposition2),
        holds(TheoremId::Lemma1),
        holds(TheoremId::Bfc),
        tight(TheoremId::Neumann),
        tight(TheoremId::PodoskiSzegedy),
        tight(TheoremId::TheoremB),
        tight(TheoremId::Proposition2),
        tight(TheoremId::Lemma1),
    )
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string(doc).expect("report serialization is infallible");
    out.push('\n');
    out
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
