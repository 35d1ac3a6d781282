//! Seeded verification campaigns: instance generation, parallel evaluation,
//! the verdict-by-oracle agreement matrix, CSV summaries and counterexample
//! bundles.

use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    compare_with_oracle_capped, run_pipeline_with, InstanceDescriptor, OracleVerdict, PipelineConfig, PipelineDump,
    Verdict, VerificationRecord, VerifyError,
};
use crate::formula::{
    evaluate, parse_dimacs, prefix_clause_family, random_cnf, subset_formulas, CnfFormula, FormulaError,
};
use crate::rational;

/// Version of the campaign report, dump and CSV layouts.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub seed: u64,
    /// Number of random instances; the tiny family is extra.
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    /// Clause-to-variable ratio range; `m` is uniform on `[n·ratio_min, n·ratio_max]`.
    pub ratio_min: usize,
    pub ratio_max: usize,
    pub k: usize,
    pub include_tiny_family: bool,
    pub oracle_cap: usize,
    pub max_dimension: usize,
    pub record_timings: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: 0,
            count: 500,
            n_min: 3,
            n_max: 10,
            ratio_min: 1,
            ratio_max: 6,
            k: 3,
            include_tiny_family: true,
            oracle_cap: crate::formula::DEFAULT_ORACLE_CAP,
            max_dimension: super::DEFAULT_MAX_DIMENSION,
            record_timings: false,
        }
    }
}

impl CampaignConfig {
    fn validate(&self) -> Result<(), VerifyError> {
        let bad = |what: &str| Err(VerifyError::InvalidConfig(what.to_string()));
        if self.n_min > self.n_max || self.ratio_min > self.ratio_max {
            return bad("n or ratio range is empty");
        }
        if self.count > 0 && (self.k == 0 || self.k > self.n_min) {
            return bad("k must lie in 1..=n_min");
        }
        let tiny_n = if self.include_tiny_family { TINY_N } else { 0 };
        let widest = if self.count > 0 { self.n_max.max(tiny_n) } else { tiny_n };
        if widest > self.oracle_cap {
            return Err(FormulaError::CapExceeded {
                num_vars: widest,
                cap: self.oracle_cap,
            }
            .into());
        }
        Ok(())
    }
}

const TINY_N: usize = 3;
const TINY_MAX_M: usize = 2;

/// Every formula over 3 variables built from 1 or 2 clauses of the
/// prefix-clause family (14 + 91 = 105 formulas).
pub fn tiny_family() -> Vec<CnfFormula> {
    subset_formulas(TINY_N, &prefix_clause_family(TINY_N), TINY_MAX_M)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    pub index: usize,
    pub descriptor: InstanceDescriptor,
    pub formula: CnfFormula,
}

/// The deterministic instance stream: `count` random instances followed by
/// the tiny family. Instance `i` draws from ChaCha stream `i` of `seed`.
pub fn instances(config: &CampaignConfig) -> Result<Vec<InstanceSpec>, VerifyError> {
    config.validate()?;
    let mut out: Vec<InstanceSpec> = (0..config.count)
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(index as u64);
            let n = rng.random_range(config.n_min..=config.n_max);
            let m = rng.random_range(n * config.ratio_min..=n * config.ratio_max);
            let seed = rng.next_u64();
            let formula = random_cnf(n, m, config.k, seed)?;
            Ok(InstanceSpec {
                index,
                descriptor: InstanceDescriptor::Random {
                    n,
                    m,
                    k: config.k,
                    seed,
                },
                formula,
            })
        })
        .collect::<Result<_, FormulaError>>()?;
    if config.include_tiny_family {
        let base = out.len();
        out.extend(
            tiny_family()
                .into_iter()
                .enumerate()
                .map(|(member, formula)| InstanceSpec {
                    index: base + member,
                    descriptor: InstanceDescriptor::TinyFamily { member },
                    formula,
                }),
        );
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictRow {
    Satisfiable,
    Falsifiable,
    Indeterminate,
}

impl VerdictRow {
    fn index(self) -> usize {
        self as usize
    }
}

/// Pipeline verdict (rows) by oracle verdict (columns).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementMatrix {
    /// Rows: satisfiable, falsifiable, indeterminate. Columns: oracle
    /// satisfiable, oracle falsifiable.
    pub cells: [[usize; 2]; 3],
}

impl AgreementMatrix {
    pub fn add(&mut self, row: VerdictRow, oracle: OracleVerdict) {
        self.cells[row.index()][oracle_column(oracle)] += 1;
    }

    pub fn get(&self, row: VerdictRow, oracle: OracleVerdict) -> usize {
        self.cells[row.index()][oracle_column(oracle)]
    }

    pub fn total(&self) -> usize {
        self.cells.iter().flatten().sum()
    }
}

fn oracle_column(o: OracleVerdict) -> usize {
    match o {
        OracleVerdict::Satisfiable => 0,
        OracleVerdict::Falsifiable => 1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CounterexampleReason {
    Disagreement,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub index: usize,
    pub reason: CounterexampleReason,
    pub instance: InstanceDescriptor,
    pub dimacs: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub records: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub indeterminate: usize,
    pub fast_path: usize,
    pub lp_solved: usize,
    pub satisfiable_verdicts: usize,
    /// Satisfiable verdicts whose assignment passed re-evaluation.
    pub satisfiable_revalidated: usize,
    pub revalidation_failures: usize,
    pub reference_point_feasible: usize,
    pub optimum_complementary: usize,
    pub condition_a_holds: usize,
    pub condition_b_holds: usize,
    pub condition_c_holds: usize,
    pub condition_d_holds: usize,
    pub sign_constraints_hold: usize,
    pub z1_is_z_matrix: usize,
    pub z2_is_z_matrix: usize,
    pub size_c_b_within_nominal_range: usize,
    pub size_m_q_c_within_nominal_bound: usize,
    pub size_ratio_within_bound: usize,
    pub nominal_lower_le_upper: usize,
}

impl CampaignSummary {
    fn add(&mut self, r: &VerificationRecord, formula: &CnfFormula) {
        self.records += 1;
        match r.agreement {
            Some(true) => self.agreements += 1,
            _ => self.disagreements += 1,
        }
        let count = |b: bool| usize::from(b);
        self.indeterminate += count(matches!(r.pipeline_verdict, Verdict::Indeterminate { .. }));
        self.fast_path += count(r.fast_path.is_some());
        self.lp_solved += count(r.lp_status.is_some());
        if let Verdict::Satisfiable { assignment } = &r.pipeline_verdict {
            self.satisfiable_verdicts += 1;
            self.satisfiable_revalidated += count(evaluate(formula, assignment).unwrap_or(false));
        }
        self.revalidation_failures += count(r.revalidation_failed);
        self.reference_point_feasible += count(r.reference_point_feasible == Some(true));
        self.optimum_complementary += count(r.optimum_complementary == Some(true));
        if let Some(c) = &r.conditions {
            self.condition_a_holds += count(c.a);
            self.condition_b_holds += count(c.b);
            self.condition_c_holds += count(c.c);
            self.condition_d_holds += count(c.d);
            self.sign_constraints_hold += count(c.sign_constraints);
            self.z1_is_z_matrix += count(c.z1_is_z_matrix);
            self.z2_is_z_matrix += count(c.z2_is_z_matrix);
        }
        let f = &r.size.flags;
        self.size_c_b_within_nominal_range += count(f.c_b_within_nominal_range);
        self.size_m_q_c_within_nominal_bound += count(f.m_q_c_within_nominal_bound == Some(true));
        self.size_ratio_within_bound += count(f.ratio_within_bound == Some(true));
        self.nominal_lower_le_upper += count(f.nominal_lower_le_upper);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub schema_version: u32,
    pub config: CampaignConfig,
    pub matrix: AgreementMatrix,
    pub summary: CampaignSummary,
    pub counterexamples: Vec<Counterexample>,
    pub records: Vec<VerificationRecord>,
}

/// Runs every instance (in parallel) and aggregates in index order.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport, VerifyError> {
    let specs = instances(config)?;
    let pipeline = PipelineConfig {
        max_dimension: config.max_dimension,
    };
    let records: Vec<VerificationRecord> = specs
        .par_iter()
        .map(|spec| {
            let mut rec = compare_with_oracle_capped(&spec.formula, config.oracle_cap, &pipeline)?;
            rec.index = Some(spec.index);
            rec.instance = spec.descriptor.clone();
            if !config.record_timings {
                rec.timings = None;
            }
            Ok(rec)
        })
        .collect::<Result<_, VerifyError>>()?;

    let mut matrix = AgreementMatrix::default();
    let mut summary = CampaignSummary::default();
    let mut counterexamples = Vec::new();
    for (spec, rec) in specs.iter().zip(&records) {
        let oracle = rec
            .oracle_verdict
            .expect("oracle verdict is filled by compare_with_oracle");
        matrix.add(rec.pipeline_verdict.row(), oracle);
        summary.add(rec, &spec.formula);
        let reason = if matches!(rec.pipeline_verdict, Verdict::Indeterminate { .. }) {
            Some(CounterexampleReason::Indeterminate)
        } else if rec.agreement != Some(true) {
            Some(CounterexampleReason::Disagreement)
        } else {
            None
        };
        if let Some(reason) = reason {
            counterexamples.push(Counterexample {
                index: spec.index,
                reason,
                instance: spec.descriptor.clone(),
                dimacs: spec.formula.to_dimacs(),
            });
        }
    }

    Ok(CampaignReport {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        matrix,
        summary,
        counterexamples,
        records,
    })
}

#[derive(Debug, thiserror::Error)]
pub enum BundleError {
    #[error("I/O error at {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("counterexample {index} does not parse: {source}")]
    Parse {
        index: usize,
        #[source]
        source: FormulaError,
    },
    #[error("replaying counterexample {index} failed: {source}")]
    Replay {
        index: usize,
        #[source]
        source: VerifyError,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn write(path: PathBuf, contents: &[u8]) -> Result<(), BundleError> {
    fs::write(&path, contents).map_err(|source| BundleError::Io { path, source })
}

impl CampaignReport {
    pub fn to_json(&self) -> Result<String, serde_json::Error> {
        serde_json::to_string_pretty(self)
    }

    /// One CSV row per record.
    pub fn to_csv(&self) -> Result<String, BundleError> {
        records_to_csv(&self.records)
    }

    /// Writes `counterexamples/<index>.cnf` and `<index>.json` replay dumps
    /// under `dir`. Nothing is created when there are no counterexamples.
    pub fn write_bundle(&self, dir: &Path) -> Result<Vec<PathBuf>, BundleError> {
        if self.counterexamples.is_empty() {
            return Ok(Vec::new());
        }
        let root = dir.join("counterexamples");
        fs::create_dir_all(&root).map_err(|source| BundleError::Io {
            path: root.clone(),
            source,
        })?;
        let pipeline = PipelineConfig {
            max_dimension: self.config.max_dimension,
        };
        let mut written = Vec::new();
        for cx in &self.counterexamples {
            let f = parse_dimacs(&cx.dimacs).map_err(|source| BundleError::Parse {
                index: cx.index,
                source,
            })?;
            let run = run_pipeline_with(&f, &pipeline).map_err(|source| BundleError::Replay {
                index: cx.index,
                source,
            })?;
            let mut record = self.records[cx.index].clone();
            record.timings = None;
            let dump = PipelineDump::new(&f, record, run.artifacts);
            let cnf = root.join(format!("{:05}.cnf", cx.index));
            let json = root.join(format!("{:05}.json", cx.index));
            write(cnf.clone(), cx.dimacs.as_bytes())?;
            write(json.clone(), serde_json::to_string_pretty(&dump)?.as_bytes())?;
            written.push(cnf);
            written.push(json);
        }
        Ok(written)
    }
}

/// CSV with a header line and one row per record.
pub fn records_to_csv(records: &[VerificationRecord]) -> Result<String, BundleError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(CsvRow::from(r))?;
    }
    let bytes = w.into_inner().map_err(|e| BundleError::Io {
        path: PathBuf::from("<csv buffer>"),
        source: e.into_error(),
    })?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[derive(Serialize)]
struct CsvRow {
    index: Option<usize>,
    source: &'static str,
    n: usize,
    m: usize,
    seed: Option<u64>,
    three_sat_vars: usize,
    three_sat_clauses: usize,
    pipeline_verdict: VerdictRow,
    indeterminate_reason: Option<super::IndeterminateReason>,
    oracle_verdict: Option<OracleVerdict>,
    agreement: Option<bool>,
    fast_path: Option<String>,
    lp_status: Option<String>,
    objective: Option<String>,
    optimum_complementary: Option<bool>,
    condition_a: Option<bool>,
    condition_b: Option<bool>,
    condition_c: Option<bool>,
    condition_d: Option<bool>,
    size_c_b: u64,
    size_m_q_c: Option<u64>,
    c_b_within_nominal_range: bool,
    m_q_c_within_nominal_bound: Option<bool>,
}

impl From<&VerificationRecord> for CsvRow {
    fn from(r: &VerificationRecord) -> Self {
        let (source, seed) = match &r.instance {
            InstanceDescriptor::Random { seed, .. } => ("random", Some(*seed)),
            InstanceDescriptor::TinyFamily { .. } => ("tiny_family", None),
            InstanceDescriptor::File { .. } => ("file", None),
            InstanceDescriptor::Inline => ("inline", None),
        };
        let cond = r.conditions.as_ref();
        CsvRow {
            index: r.index,
            source,
            n: r.n,
            m: r.m,
            seed,
            three_sat_vars: r.three_sat_vars,
            three_sat_clauses: r.three_sat_clauses,
            pipeline_verdict: r.pipeline_verdict.row(),
            indeterminate_reason: match r.pipeline_verdict {
                Verdict::Indeterminate { reason } => Some(reason),
                _ => None,
            },
            oracle_verdict: r.oracle_verdict,
            agreement: r.agreement,
            fast_path: r.fast_path.clone(),
            lp_status: r.lp_status.clone(),
            objective: r.objective.as_ref().map(rational::to_wire),
            optimum_complementary: r.optimum_complementary,
            condition_a: cond.map(|c| c.a),
            condition_b: cond.map(|c| c.b),
            condition_c: cond.map(|c| c.c),
            condition_d: cond.map(|c| c.d),
            size_c_b: r.size.measured_size_c_b,
            size_m_q_c: r.size.measured_size_m_q_c,
            c_b_within_nominal_range: r.size.flags.c_b_within_nominal_range,
            m_q_c_within_nominal_bound: r.size.flags.m_q_c_within_nominal_bound,
        }
    }
}
