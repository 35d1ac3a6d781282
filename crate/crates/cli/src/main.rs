use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use satlcp::encode::{
    detect_trivial, encode_clauses, partition_clauses, ClausePartition, InequalitySystem, TrivialityVerdict,
};
use satlcp::formula::{parse_dimacs, random_cnf, CnfFormula, DEFAULT_ORACLE_CAP};
use satlcp::lcp::{
    assemble_extended_lcp, build_certificate, check_conditions, compute_auxiliary, AuxiliaryVectors, LcpInstance,
};
use satlcp::lp::{build_lp, check_outcome, solve_simplex, LpInstance};
use satlcp::reduce::{reduce_to_3sat, ReductionSizes};
use satlcp::sizing::check_bounds;
use satlcp::verify::{
    compare_with_oracle_capped, records_to_csv, run_campaign, CampaignConfig, InstanceDescriptor, PipelineConfig,
    Verdict, VerificationRecord, VerifyError, DEFAULT_MAX_DIMENSION, SCHEMA_VERSION,
};

#[derive(Parser)]
#[command(
    name = "satlcp",
    version,
    about = "CNF to 3-SAT to LCP to LP pipeline with oracle cross-checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

/// Exactly one of `--input` or the generator flags `--n/--m`.
#[derive(Args, Clone)]
struct InputArgs {
    /// DIMACS CNF file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Generator: number of variables.
    #[arg(long)]
    n: Option<usize>,
    /// Generator: number of clauses.
    #[arg(long)]
    m: Option<usize>,
    /// Generator: literals per clause (default 3).
    #[arg(long)]
    k: Option<usize>,
    /// Generator: seed (default 0).
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print it as JSON or DIMACS.
    Parse {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Reduce to exact 3-SAT; DIMACS by default, JSON with the trace.
    Reduce {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the inequality system, clause partition and triviality verdict.
    Encode {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Print the auxiliary vectors and the extended LCP.
    BuildLcp {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Print the certificate and condition report.
    Certify {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Solve the pipeline LP, or an LP given as JSON with `--lp`.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        /// LP instance JSON (`a`, `b`, `cost`) instead of a formula.
        #[arg(long)]
        lp: Option<PathBuf>,
    },
    /// Run the pipeline and compare its verdict with the oracle.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_DIMENSION)]
        max_dimension: usize,
        /// Exit with status 3 when the verdict disagrees with the oracle.
        #[arg(long)]
        fail_on_disagreement: bool,
    },
    /// Seeded campaign over random instances plus the tiny family.
    Campaign {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        ratio_min: usize,
        #[arg(long, default_value_t = 6)]
        ratio_max: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Skip the exhaustive tiny family.
        #[arg(long)]
        no_tiny_family: bool,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        oracle_cap: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_DIMENSION)]
        max_dimension: usize,
        /// Record per-stage wall-clock timings (breaks byte-identical reruns).
        #[arg(long)]
        timings: bool,
        /// Write report.json, summary.csv and counterexamples/ here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Exit with status 3 when any record disagrees with the oracle.
        #[arg(long)]
        fail_on_disagreement: bool,
    },
    /// Print the size report.
    Size {
        #[command(flatten)]
        input: InputArgs,
    },
}

enum Failure {
    /// Exit 1.
    Input(anyhow::Error),
    /// Exit 2.
    Invariant(anyhow::Error),
    /// Exit 3.
    Disagreement(String),
}

type CliResult<T> = Result<T, Failure>;

fn input_err(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Input(e.into())
}

fn invariant_err(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Invariant(e.into())
}

fn verify_err(e: VerifyError) -> Failure {
    if e.is_input_error() {
        Failure::Input(e.into())
    } else {
        Failure::Invariant(e.into())
    }
}

fn load(args: &InputArgs) -> CliResult<(CnfFormula, InstanceDescriptor)> {
    match (&args.input, args.n, args.m) {
        (Some(path), None, None) => {
            if args.k.is_some() || args.seed.is_some() {
                return Err(input_err(anyhow!("--k and --seed only apply to the generator")));
            }
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(input_err)?;
            let f = parse_dimacs(&text)
                .with_context(|| format!("parsing {}", path.display()))
                .map_err(input_err)?;
            Ok((
                f,
                InstanceDescriptor::File {
                    path: path.display().to_string(),
                },
            ))
        }
        (None, Some(n), Some(m)) => {
            let k = args.k.unwrap_or(3);
            let seed = args.seed.unwrap_or(0);
            let f = random_cnf(n, m, k, seed).map_err(input_err)?;
            Ok((f, InstanceDescriptor::Random { n, m, k, seed }))
        }
        (Some(_), _, _) => Err(input_err(anyhow!(
            "use either --input or the generator flags, not both"
        ))),
        (None, None, None) => Err(input_err(anyhow!("an input is required: --input FILE or --n N --m M"))),
        (None, _, _) => Err(input_err(anyhow!("the generator needs both --n and --m"))),
    }
}

/// Writes to stdout; a closed pipe ends output quietly.
fn emit(text: &str) -> CliResult<()> {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(input_err(anyhow!("writing output: {e}"))),
        _ => Ok(()),
    }
}

fn print_json<T: Serialize>(v: &T) -> CliResult<()> {
    let s = serde_json::to_string_pretty(v).map_err(invariant_err)?;
    emit(&(s + "\n"))
}

fn unsupported(format: Format, command: &str) -> Failure {
    let name = format
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    input_err(anyhow!("--format {name} is not supported by `{command}`"))
}

struct Encoded {
    system: InequalitySystem,
    partition: ClausePartition,
    triviality: TrivialityVerdict,
}

fn encode(f: &CnfFormula) -> CliResult<Encoded> {
    let (three_sat, _) = reduce_to_3sat(f).map_err(input_err)?;
    let system = encode_clauses(&three_sat).map_err(invariant_err)?;
    let partition = partition_clauses(&system).map_err(invariant_err)?;
    let triviality = detect_trivial(&partition);
    Ok(Encoded {
        system,
        partition,
        triviality,
    })
}

fn fast_path_note(t: &TrivialityVerdict) -> serde_json::Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "fast_path": t,
        "note": "the clause partition is trivial; the witness satisfies every clause and no LCP is assembled",
    })
}

fn assemble(e: &Encoded) -> CliResult<(AuxiliaryVectors, LcpInstance)> {
    let aux = compute_auxiliary(&e.system);
    let inst = assemble_extended_lcp(&e.system, &e.partition, &aux).map_err(invariant_err)?;
    Ok((aux, inst))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Parse { input, format } => {
            let (f, _) = load(&input)?;
            match format {
                Format::Json => print_json(&f),
                Format::Text => emit(&f.to_dimacs()),
                Format::Csv => Err(unsupported(format, "parse")),
            }
        }
        Command::Reduce { input, format } => {
            let (f, _) = load(&input)?;
            let (three_sat, trace) = reduce_to_3sat(&f).map_err(input_err)?;
            match format {
                Format::Text => emit(&three_sat.to_cnf().to_dimacs()),
                Format::Json => print_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "dimacs": three_sat.to_cnf().to_dimacs(),
                    "sizes": ReductionSizes::measure(&f, &three_sat),
                    "three_sat": three_sat,
                    "trace": trace,
                })),
                Format::Csv => Err(unsupported(format, "reduce")),
            }
        }
        Command::Encode { input } => {
            let (f, _) = load(&input)?;
            let e = encode(&f)?;
            print_json(&json!({
                "schema_version": SCHEMA_VERSION,
                "system": e.system,
                "partition": e.partition,
                "triviality": e.triviality,
            }))
        }
        Command::BuildLcp { input } => {
            let (f, _) = load(&input)?;
            let e = encode(&f)?;
            if e.partition.is_trivial() {
                return print_json(&fast_path_note(&e.triviality));
            }
            let (aux, inst) = assemble(&e)?;
            print_json(&json!({
                "schema_version": SCHEMA_VERSION,
                "auxiliary": aux,
                "lcp": inst,
            }))
        }
        Command::Certify { input } => {
            let (f, _) = load(&input)?;
            let e = encode(&f)?;
            if e.partition.is_trivial() {
                return print_json(&fast_path_note(&e.triviality));
            }
            let (aux, inst) = assemble(&e)?;
            let cert = build_certificate(&inst, &aux);
            let conditions = check_conditions(&inst, &cert).map_err(invariant_err)?;
            print_json(&json!({
                "schema_version": SCHEMA_VERSION,
                "all_hold": conditions.all_hold(),
                "conditions": conditions,
                "certificate": cert,
            }))
        }
        Command::Solve { input, lp } => {
            let any_formula_flag = input.input.is_some() || input.n.is_some() || input.m.is_some();
            let lp = match lp {
                Some(path) => {
                    if any_formula_flag {
                        return Err(input_err(anyhow!("use either --lp or a formula input, not both")));
                    }
                    read_lp(&path)?
                }
                None => {
                    let (f, _) = load(&input)?;
                    let e = encode(&f)?;
                    if e.partition.is_trivial() {
                        return print_json(&fast_path_note(&e.triviality));
                    }
                    let (aux, inst) = assemble(&e)?;
                    let cert = build_certificate(&inst, &aux);
                    build_lp(&inst, &cert).map_err(invariant_err)?
                }
            };
            let outcome = solve_simplex(&lp);
            let valid = check_outcome(&lp, &outcome).map_err(invariant_err)?;
            if !valid {
                return Err(invariant_err(anyhow!(
                    "simplex outcome failed certificate verification"
                )));
            }
            print_json(&json!({
                "schema_version": SCHEMA_VERSION,
                "certificate_valid": valid,
                "outcome": outcome,
            }))
        }
        Command::Verify {
            input,
            format,
            oracle_cap,
            max_dimension,
            fail_on_disagreement,
        } => {
            let (f, descriptor) = load(&input)?;
            let mut record =
                compare_with_oracle_capped(&f, oracle_cap, &PipelineConfig { max_dimension }).map_err(verify_err)?;
            record.instance = descriptor;
            match format {
                Format::Json => print_json(&record)?,
                Format::Csv => emit(&records_to_csv(std::slice::from_ref(&record)).map_err(invariant_err)?)?,
                Format::Text => emit(&record_text(&record))?,
            }
            if fail_on_disagreement && record.agreement != Some(true) {
                return Err(Failure::Disagreement(
                    "pipeline verdict disagrees with the oracle".into(),
                ));
            }
            Ok(())
        }
        Command::Campaign {
            seed,
            count,
            n_min,
            n_max,
            ratio_min,
            ratio_max,
            k,
            no_tiny_family,
            oracle_cap,
            max_dimension,
            timings,
            out_dir,
            format,
            fail_on_disagreement,
        } => {
            let config = CampaignConfig {
                seed,
                count,
                n_min,
                n_max,
                ratio_min,
                ratio_max,
                k,
                include_tiny_family: !no_tiny_family,
                oracle_cap,
                max_dimension,
                record_timings: timings,
            };
            let report = run_campaign(&config).map_err(verify_err)?;
            let json = report.to_json().map_err(invariant_err)?;
            let csv = report.to_csv().map_err(invariant_err)?;
            if let Some(dir) = &out_dir {
                write_file(&dir.join("report.json"), &(json.clone() + "\n"))?;
                write_file(&dir.join("summary.csv"), &csv)?;
                report.write_bundle(dir).map_err(invariant_err)?;
            }
            match format {
                Format::Json => emit(&(json + "\n"))?,
                Format::Csv => emit(&csv)?,
                Format::Text => {
                    let s = &report.summary;
                    let mut text = format!(
                        "records: {}\nagreements: {}\ndisagreements: {}\nindeterminate: {}\ncounterexamples: {}\n\
                         matrix (rows sat/fals/indet, cols oracle sat/fals):\n",
                        s.records,
                        s.agreements,
                        s.disagreements,
                        s.indeterminate,
                        report.counterexamples.len()
                    );
                    for (label, row) in ["satisfiable", "falsifiable", "indeterminate"]
                        .iter()
                        .zip(&report.matrix.cells)
                    {
                        text += &format!("  {label:>13}: {:>6} {:>6}\n", row[0], row[1]);
                    }
                    emit(&text)?;
                }
            }
            if fail_on_disagreement && report.summary.disagreements > 0 {
                return Err(Failure::Disagreement(format!(
                    "{} record(s) disagree with the oracle",
                    report.summary.disagreements
                )));
            }
            Ok(())
        }
        Command::Size { input } => {
            let (f, _) = load(&input)?;
            let e = encode(&f)?;
            let (n, m) = (f.num_vars() as u64, f.num_clauses() as u64);
            let report = if e.partition.is_trivial() {
                check_bounds(n, m, &e.system, None)
            } else {
                let (aux, inst) = assemble(&e)?;
                let cert = build_certificate(&inst, &aux);
                check_bounds(n, m, &e.system, Some((&inst, &cert)))
            };
            print_json(&report)
        }
    }
}

fn read_lp(path: &Path) -> CliResult<LpInstance> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(input_err)?;
    let lp: LpInstance = serde_json::from_str(&text)
        .with_context(|| format!("parsing LP JSON in {}", path.display()))
        .map_err(input_err)?;
    LpInstance::new(lp.a, lp.b, lp.cost).map_err(input_err)
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)
            .with_context(|| format!("creating {}", parent.display()))
            .map_err(input_err)?;
    }
    fs::write(path, contents)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(input_err)
}

fn record_text(r: &VerificationRecord) -> String {
    let verdict = match &r.pipeline_verdict {
        Verdict::Satisfiable { assignment } => format!(
            "satisfiable {}",
            assignment
                .values()
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect::<String>()
        ),
        Verdict::Falsifiable => "falsifiable".to_string(),
        Verdict::Indeterminate { reason } => format!("indeterminate ({reason:?})"),
    };
    let opt = |o: Option<String>| o.unwrap_or_else(|| "-".to_string());
    format!(
        "n: {}\nm: {}\nverdict: {verdict}\noracle: {}\nagreement: {}\nfast_path: {}\nlp_status: {}\nobjective: {}\n",
        r.n,
        r.m,
        opt(r.oracle_verdict.map(|o| format!("{o:?}").to_lowercase())),
        opt(r.agreement.map(|a| a.to_string())),
        opt(r.fast_path.clone()),
        opt(r.lp_status.clone()),
        opt(r.objective.as_ref().map(satlcp::rational::to_wire)),
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(e)) => {
            eprintln!("internal invariant violated: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Disagreement(msg)) => {
            eprintln!("disagreement: {msg}");
            ExitCode::from(3)
        }
    }
}
