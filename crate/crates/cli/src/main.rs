//! Command-line workbench: construct fields, check bentness through both
//! oracles, build and puncture defining-set codes with closed-form verdicts,
//! and sweep whole family grids.
//!
//! Exit status is 0 exactly when every computed verdict is match or
//! not-applicable; any theory mismatch, oracle disagreement, or invalid
//! request exits nonzero, so the binary doubles as a CI oracle.  Output for
//! identical requests is byte-identical: no clocks, no randomness, and all
//! maps iterate in sorted order.

use std::collections::BTreeMap;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bentcode::catalog::{
    gold_is_bent, BentFamily, EpsilonPrediction, FamilyParams, FamilyRegistry,
};
use bentcode::codes::{
    build_report, defining_set, CodeReport, FamilyRecord, TheoryVerdict,
};
use bentcode::field::{make_field, make_field_unguarded, FieldElement, FieldRecord, FieldSpec};
use bentcode::quadform::FormClassification;

#[derive(Parser)]
#[command(
    name = "bentcode",
    about = "Exact workbench for codes built from quadratic functions over GF(p^m)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable report
    Text,
    /// Machine-readable report (round-trips byte-identically)
    Json,
    /// Weight-distribution rows `w,count` (code reports only)
    Csv,
}

#[derive(Args)]
struct FieldArgs {
    /// Field characteristic (an odd prime)
    #[arg(long)]
    p: u64,
    /// Extension degree m of GF(p^m)
    #[arg(long)]
    m: usize,
    /// Allow fields larger than the enumeration guard
    #[arg(long)]
    force_large: bool,
}

impl FieldArgs {
    fn build(&self) -> Result<FieldSpec> {
        let f = if self.force_large {
            make_field_unguarded(self.p, self.m)?
        } else {
            make_field(self.p, self.m)?
        };
        Ok(f)
    }
}

#[derive(Args)]
struct FamilyArgs {
    /// Family name (see `sweep` for the registry): planar-a..planar-e,
    /// gold, kasami, hg, poly
    #[arg(long)]
    family: String,
    /// Coefficient c as "a0,a1,..." (constant term first) or "g^t"
    #[arg(long)]
    c: Option<String>,
    /// Auxiliary element u, same syntax as --c
    #[arg(long)]
    u: Option<String>,
    /// Exponent index j (gold)
    #[arg(long)]
    j: Option<usize>,
    /// Exponent index k (planar-b, planar-e)
    #[arg(long)]
    k: Option<usize>,
    /// Step s (hg, planar-e)
    #[arg(long)]
    s: Option<usize>,
    /// Generator power t with c = g^t (gold)
    #[arg(long)]
    t: Option<u64>,
    /// Semicolon-separated coefficient list c_0;c_1;... (poly), each
    /// element in --c syntax
    #[arg(long)]
    coeffs: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Construct GF(p^m) and print its record
    Field {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build one family member and test bentness via rank and Walsh oracles
    BentCheck {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build the defining-set code of a family member and check it against
    /// the closed-form tables
    CodeBuild {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        family: FamilyArgs,
        /// Collapse the defining set to one representative per scalar orbit
        #[arg(long)]
        puncture: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build the punctured defining-set code (same as code-build --puncture)
    CodePuncture {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build codes across a family's parameter grid, or across every
    /// registered family when --family is omitted
    Sweep {
        #[command(flatten)]
        field: FieldArgs,
        /// Restrict the sweep to one family
        #[arg(long)]
        family: Option<String>,
        /// Keep sweeping past a theory mismatch instead of aborting
        #[arg(long)]
        keep_going: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run() -> Result<u8> {
    match Cli::parse().command {
        Command::Field { field, format } => run_field(&field, format),
        Command::BentCheck {
            field,
            family,
            format,
        } => run_bent_check(&field, &family, format),
        Command::CodeBuild {
            field,
            family,
            puncture,
            format,
        } => run_code_build(&field, &family, puncture, format),
        Command::CodePuncture {
            field,
            family,
            format,
        } => run_code_build(&field, &family, true, format),
        Command::Sweep {
            field,
            family,
            keep_going,
            format,
        } => run_sweep(&field, family.as_deref(), keep_going, format),
    }
}

// ---------------------------------------------------------------------------
// element and parameter parsing

/// "a0,a1,..." (constant term first, padded with zeros), "g" for the
/// generator, or "g^t" for a generator power.
fn parse_element(field: &FieldSpec, text: &str) -> Result<FieldElement> {
    let text = text.trim();
    if text == "g" {
        return Ok(field.generator().clone());
    }
    if let Some(power) = text.strip_prefix("g^") {
        let t: u64 = power
            .parse()
            .map_err(|_| bentcode::Error::BadElementSyntax(text.to_string()))?;
        return Ok(field.pow(field.generator(), t));
    }
    let coeffs: Vec<u64> = text
        .split(',')
        .map(|part| part.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bentcode::Error::BadElementSyntax(text.to_string()))?;
    Ok(field.element(&coeffs)?)
}

fn family_params(field: &FieldSpec, args: &FamilyArgs) -> Result<FamilyParams> {
    let mut params = FamilyParams::default();
    if let Some(c) = &args.c {
        params = params.c(parse_element(field, c).context("in --c")?);
    }
    if let Some(u) = &args.u {
        params = params.u(parse_element(field, u).context("in --u")?);
    }
    if let Some(j) = args.j {
        params = params.j(j);
    }
    if let Some(k) = args.k {
        params = params.k(k);
    }
    if let Some(s) = args.s {
        params = params.s(s);
    }
    if let Some(t) = args.t {
        params = params.t(t);
    }
    if let Some(list) = &args.coeffs {
        let coeffs: Vec<FieldElement> = list
            .split(';')
            .map(|part| parse_element(field, part))
            .collect::<Result<_>>()
            .context("in --coeffs")?;
        params = params.coeffs(coeffs);
    }
    Ok(params)
}

fn prediction_of(
    fam: &dyn BentFamily,
    field: &FieldSpec,
    params: &FamilyParams,
) -> Option<i8> {
    match fam.epsilon_predict(field, params) {
        Ok(EpsilonPrediction::Known(v)) => Some(v),
        _ => None,
    }
}

fn render_coeffs(coeffs: &[u64]) -> String {
    coeffs
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn render_params(params: &BTreeMap<String, String>) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

// ---------------------------------------------------------------------------
// field

fn run_field(args: &FieldArgs, format: Format) -> Result<u8> {
    let field = args.build()?;
    let record = FieldRecord::from(&field);
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&record)?),
        Format::Text => {
            println!("GF({}^{}) with {} elements", field.p(), field.m(), field.order());
            println!("modulus: {}", field.modulus_string());
            println!("generator: {}", render_coeffs(record.generator.as_slice()));
        }
        Format::Csv => bail!("csv output is only available for code reports"),
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// bent-check

#[derive(Serialize)]
struct BentCheckOutput {
    field: FieldRecord,
    family: FamilyRecord,
    bent_rank: bool,
    bent_walsh: bool,
    oracles_agree: bool,
    classification: FormClassification,
    epsilon_predicted: Option<i8>,
}

fn run_bent_check(field_args: &FieldArgs, fam_args: &FamilyArgs, format: Format) -> Result<u8> {
    let field = field_args.build()?;
    let registry = FamilyRegistry::standard();
    let fam = registry.get(&fam_args.family)?;
    let params = family_params(&field, fam_args)?;
    let q = fam.build(&field, &params)?;

    let bent_rank = q.is_bent_rank()?;
    let bent_walsh = q.is_bent_walsh();
    let output = BentCheckOutput {
        field: FieldRecord::from(&field),
        family: FamilyRecord {
            family: fam.name().to_string(),
            params: fam.canonical_params(&field, &params)?,
        },
        bent_rank,
        bent_walsh,
        oracles_agree: bent_rank == bent_walsh,
        classification: q.classify()?,
        epsilon_predicted: prediction_of(fam, &field, &params),
    };

    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&output)?),
        Format::Text => {
            println!(
                "family {} over GF({}^{}): {}",
                output.family.family,
                field.p(),
                field.m(),
                render_params(&output.family.params)
            );
            println!("bent (rank oracle): {}", output.bent_rank);
            println!("bent (walsh oracle): {}", output.bent_walsh);
            println!("oracles agree: {}", output.oracles_agree);
            let cls = &output.classification;
            println!(
                "classification: rank {} type {:?} epsilon {} zero-count {}",
                cls.rank, cls.canonical_type, cls.epsilon, cls.zero_count
            );
            match output.epsilon_predicted {
                Some(v) => println!("epsilon predicted: {v}"),
                None => println!("epsilon predicted: (none)"),
            }
        }
        Format::Csv => bail!("csv output is only available for code reports"),
    }

    if output.oracles_agree {
        Ok(0)
    } else {
        eprintln!("error: rank and Walsh oracles disagree");
        Ok(1)
    }
}

// ---------------------------------------------------------------------------
// code-build / code-puncture

fn run_code_build(
    field_args: &FieldArgs,
    fam_args: &FamilyArgs,
    puncture: bool,
    format: Format,
) -> Result<u8> {
    let field = field_args.build()?;
    let registry = FamilyRegistry::standard();
    let fam = registry.get(&fam_args.family)?;
    let params = family_params(&field, fam_args)?;
    let q = fam.build(&field, &params)?;

    let mut set = defining_set(&q);
    if puncture {
        set = set.puncture()?;
    }
    let record = FamilyRecord {
        family: fam.name().to_string(),
        params: fam.canonical_params(&field, &params)?,
    };
    let report = build_report(&set, Some(record), prediction_of(fam, &field, &params))?;

    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Csv => {
            println!("w,count");
            for row in &report.weights {
                println!("{},{}", row.w, row.count);
            }
        }
        Format::Text => print_report_text(&report, Some(&set.generator_matrix())),
    }

    Ok(exit_for(&report.theory_verdict))
}

fn exit_for(verdict: &TheoryVerdict) -> u8 {
    match verdict {
        TheoryVerdict::Match | TheoryVerdict::NotApplicable => 0,
        TheoryVerdict::Mismatch { .. } => 1,
    }
}

fn verdict_text(verdict: &TheoryVerdict) -> String {
    match verdict {
        TheoryVerdict::Match => "match".to_string(),
        TheoryVerdict::NotApplicable => "not-applicable".to_string(),
        TheoryVerdict::Mismatch { rows } => {
            let details: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "w={}: expected {}, got {}",
                        r.w,
                        r.expected.map_or("-".to_string(), |v| v.to_string()),
                        r.actual.map_or("-".to_string(), |v| v.to_string())
                    )
                })
                .collect();
            format!("mismatch ({})", details.join("; "))
        }
    }
}

fn print_report_text(report: &CodeReport, generator: Option<&Vec<Vec<u64>>>) {
    println!(
        "field: GF({}^{}), modulus {}",
        report.field.p,
        report.field.m,
        bentcode::field::poly_string(&report.field.modulus)
    );
    if let Some(fam) = &report.family {
        println!("family: {} {}", fam.family, render_params(&fam.params));
    }
    println!(
        "code: [{}, {}, {}] over F_{}",
        report.n, report.k, report.d, report.field.p
    );
    println!("enumerator: {}", report.enumerator);
    println!("weights:");
    for row in &report.weights {
        println!("  {}: {}", row.w, row.count);
    }
    match report.epsilon_predicted {
        Some(v) => println!(
            "epsilon: {} (predicted {v}, mismatch: {})",
            report.epsilon, report.epsilon_prediction_mismatch
        ),
        None => println!("epsilon: {}", report.epsilon),
    }
    println!("verdict: {}", verdict_text(&report.theory_verdict));
    println!(
        "griesmer: bound {}, meets: {}, optimal for n: {}",
        report.griesmer.bound, report.griesmer.meets, report.griesmer.optimal_for_n
    );
    if let Some(rows) = generator {
        println!("generator matrix:");
        for row in rows {
            println!(
                "  {}",
                row.iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            );
        }
    }
}

// ---------------------------------------------------------------------------
// sweep

#[derive(Serialize)]
struct SweepRow {
    family: String,
    params: BTreeMap<String, String>,
    n: u64,
    k: usize,
    d: u64,
    enumerator: String,
    verdict: TheoryVerdict,
}

#[derive(Serialize)]
struct SweepOutput {
    field: FieldRecord,
    rows: Vec<SweepRow>,
    matches: usize,
    mismatches: usize,
    not_applicable: usize,
    /// (j, t) points where the gold divisibility predicate was checked
    /// against the rank oracle (single-family gold sweeps only)
    gold_predicate_points: Option<usize>,
    aborted: bool,
}

fn run_sweep(
    field_args: &FieldArgs,
    family: Option<&str>,
    keep_going: bool,
    format: Format,
) -> Result<u8> {
    if format == Format::Csv {
        bail!("csv output is only available for code reports");
    }
    let field = field_args.build()?;
    let registry = FamilyRegistry::standard();
    let fams: Vec<&dyn BentFamily> = match family {
        Some(name) => vec![registry.get(name)?],
        None => registry.iter().collect(),
    };
    let single_gold = family == Some("gold");

    let mut rows = Vec::new();
    let mut predicate_points = None;
    let mut predicate_failures = 0usize;
    let mut aborted = false;

    'families: for fam in &fams {
        if single_gold {
            // a dedicated gold sweep first checks the divisibility
            // predicate against the rank oracle at every (j, t)
            let mut points = 0usize;
            for j in 1..=field.m() {
                for t in 0..field.order() - 1 {
                    let params = FamilyParams::default().j(j).t(t);
                    let q = fam.build(&field, &params)?;
                    points += 1;
                    if gold_is_bent(field.p(), field.m(), j, t) != q.is_bent_rank()? {
                        predicate_failures += 1;
                        if !keep_going {
                            aborted = true;
                            break;
                        }
                    }
                }
                if aborted {
                    break;
                }
            }
            predicate_points = Some(points);
            if aborted {
                break 'families;
            }
        }

        // gold's bent grid is unbounded in t; two representative points
        // stand in for it, every other family sweeps its whole grid
        let grid: Vec<FamilyParams> = if fam.name() == "gold" {
            fam.sweep_grid(&field).into_iter().take(2).collect()
        } else {
            fam.sweep_grid(&field)
        };
        for params in grid {
            let q = fam.build(&field, &params)?;
            let record = FamilyRecord {
                family: fam.name().to_string(),
                params: fam.canonical_params(&field, &params)?,
            };
            let report =
                build_report(&defining_set(&q), Some(record), prediction_of(*fam, &field, &params))?;
            let is_mismatch = matches!(report.theory_verdict, TheoryVerdict::Mismatch { .. });
            rows.push(SweepRow {
                family: fam.name().to_string(),
                params: report.family.as_ref().expect("attached above").params.clone(),
                n: report.n,
                k: report.k,
                d: report.d,
                enumerator: report.enumerator.clone(),
                verdict: report.theory_verdict.clone(),
            });
            if is_mismatch && !keep_going {
                aborted = true;
                break 'families;
            }
        }
    }

    let matches = rows
        .iter()
        .filter(|r| r.verdict == TheoryVerdict::Match)
        .count();
    let not_applicable = rows
        .iter()
        .filter(|r| r.verdict == TheoryVerdict::NotApplicable)
        .count();
    let mismatches = rows.len() - matches - not_applicable;

    let output = SweepOutput {
        field: FieldRecord::from(&field),
        rows,
        matches,
        mismatches,
        not_applicable,
        gold_predicate_points: predicate_points,
        aborted,
    };

    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&output)?),
        Format::Text => {
            println!(
                "sweep over GF({}^{}): {} rows",
                field.p(),
                field.m(),
                output.rows.len()
            );
            for row in &output.rows {
                println!(
                    "  {} {} -> [{}, {}, {}] {}",
                    row.family,
                    render_params(&row.params),
                    row.n,
                    row.k,
                    row.d,
                    verdict_text(&row.verdict)
                );
            }
            if let Some(points) = output.gold_predicate_points {
                println!(
                    "gold predicate vs rank oracle: {} points, {} disagreements",
                    points, predicate_failures
                );
            }
            println!(
                "summary: {} match, {} mismatch, {} not-applicable",
                output.matches, output.mismatches, output.not_applicable
            );
            if output.aborted {
                println!("aborted on first violation (rerun with --keep-going for the rest)");
            }
        }
        Format::Csv => unreachable!("rejected above"),
    }

    if output.mismatches == 0 && predicate_failures == 0 {
        Ok(0)
    } else {
        Ok(1)
    }
}
