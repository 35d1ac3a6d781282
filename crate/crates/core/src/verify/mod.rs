//! End-to-end pipeline runs, verdict extraction from LP optima, and
//! comparison against the enumeration oracle.
//!
//! The pipeline's verdict is an observation under test. A `Satisfiable`
//! verdict is only ever returned after its assignment has been re-evaluated
//! against the input formula; `Falsifiable` verdicts are cross-checked by the
//! oracle in [`compare_with_oracle`].

mod campaign;

pub use campaign::{
    instances, records_to_csv, run_campaign, tiny_family, AgreementMatrix, BundleError, CampaignConfig, CampaignReport,
    CampaignSummary, Counterexample, CounterexampleReason, InstanceSpec, VerdictRow, SCHEMA_VERSION,
};

use std::time::Instant;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::encode::{
    detect_trivial, encode_clauses, partition_clauses, ClausePartition, EncodeError, InequalitySystem,
    TrivialityVerdict,
};
use crate::formula::{brute_force_sat_with_cap, evaluate, Assignment, CnfFormula, FormulaError, DEFAULT_ORACLE_CAP};
use crate::lcp::{
    assemble_extended_lcp, build_certificate, check_conditions, compute_auxiliary, verify_complementarity,
    ConditionReport, LcpError, LcpInstance, MangasarianCertificate,
};
use crate::lp::{build_lp, check_outcome, solve_simplex, LpError, LpInstance, LpOutcome};
use crate::rational::{self, Rational};
use crate::reduce::{lift_assignment, reduce_to_3sat, ReduceError, ReductionTrace, ThreeSatFormula};
use crate::sizing::{check_bounds, SizeReport};

/// Default cap on the extended LCP dimension `N + M + 2`.
pub const DEFAULT_MAX_DIMENSION: usize = 2000;

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error(transparent)]
    Lcp(#[from] LcpError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("LP reported infeasible, but the assembled instance always has a feasible point")]
    UnexpectedInfeasible,
    #[error("LCP dimension {dimension} exceeds the cap of {cap}")]
    DimensionCapExceeded { dimension: usize, cap: usize },
    #[error("invalid campaign configuration: {0}")]
    InvalidConfig(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl VerifyError {
    /// Input-side errors (bad formula, caps) as opposed to broken invariants.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            VerifyError::Formula(_)
                | VerifyError::Reduce(ReduceError::EmptyClause(_))
                | VerifyError::DimensionCapExceeded { .. }
                | VerifyError::InvalidConfig(_)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndeterminateReason {
    FractionalX,
    MixedSignal,
    SolverUnbounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Satisfiable { assignment: Assignment },
    Falsifiable,
    Indeterminate { reason: IndeterminateReason },
}

impl Verdict {
    pub fn row(&self) -> VerdictRow {
        match self {
            Verdict::Satisfiable { .. } => VerdictRow::Satisfiable,
            Verdict::Falsifiable => VerdictRow::Falsifiable,
            Verdict::Indeterminate { .. } => VerdictRow::Indeterminate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleVerdict {
    Satisfiable,
    Falsifiable,
}

/// Reads the verdict off an LP outcome: `x` is the first `N` coordinates,
/// every later coordinate is an artificial `y`.
pub fn extract_solution(out: &LpOutcome, inst: &LcpInstance, trace: &ReductionTrace) -> Result<Verdict, VerifyError> {
    let point = match out {
        LpOutcome::Infeasible { .. } => return Err(VerifyError::UnexpectedInfeasible),
        LpOutcome::Unbounded { .. } => {
            return Ok(Verdict::Indeterminate {
                reason: IndeterminateReason::SolverUnbounded,
            })
        }
        LpOutcome::Optimal { point, .. } => point,
    };
    let n = inst.layout.n;
    if point.len() != inst.dimension() {
        return Err(LpError::DimensionMismatch {
            what: "LP point",
            expected: inst.dimension(),
            found: point.len(),
        }
        .into());
    }
    let (x, y) = point.split_at(n);
    let integral = x.iter().all(|v| v.is_zero() || v.is_one());
    let artificial = y.iter().any(Signed::is_positive);
    Ok(match (integral, artificial) {
        (true, false) => {
            let a3 = Assignment(x.iter().map(|v| v.is_one()).collect());
            Verdict::Satisfiable {
                assignment: lift_assignment(trace, &a3)?,
            }
        }
        (true, true) => Verdict::Falsifiable,
        (false, false) => Verdict::Indeterminate {
            reason: IndeterminateReason::FractionalX,
        },
        (false, true) => Verdict::Indeterminate {
            reason: IndeterminateReason::MixedSignal,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub max_dimension: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            max_dimension: DEFAULT_MAX_DIMENSION,
        }
    }
}

/// Wall-clock milliseconds per stage.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StageTimings {
    pub reduce_ms: f64,
    pub encode_ms: f64,
    pub lcp_ms: f64,
    pub certificate_ms: f64,
    pub conditions_ms: f64,
    pub lp_build_ms: f64,
    pub simplex_ms: f64,
    pub extract_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionSummary {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
    pub sign_constraints: bool,
    pub z1_is_z_matrix: bool,
    pub z2_is_z_matrix: bool,
    pub b_violations: usize,
    pub c_violations: usize,
}

impl From<&ConditionReport> for ConditionSummary {
    fn from(r: &ConditionReport) -> Self {
        ConditionSummary {
            a: r.a_product_identity.holds,
            b: r.b_nonnegative.holds,
            c: r.c_positive.holds,
            d: r.d_positive.holds,
            sign_constraints: r.sign_constraints.holds,
            z1_is_z_matrix: r.z_matrix_z1.holds,
            z2_is_z_matrix: r.z_matrix_z2.holds,
            b_violations: r.b_nonnegative.violations,
            c_violations: r.c_positive.violations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum InstanceDescriptor {
    Random { n: usize, m: usize, k: usize, seed: u64 },
    TinyFamily { member: usize },
    File { path: String },
    Inline,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub index: Option<usize>,
    pub instance: InstanceDescriptor,
    pub n: usize,
    pub m: usize,
    pub three_sat_vars: usize,
    pub three_sat_clauses: usize,
    /// `"all_false"` or `"all_true"` when the trivial fast path answered.
    pub fast_path: Option<String>,
    pub pipeline_verdict: Verdict,
    /// Set when an LP-derived assignment failed re-evaluation and was downgraded.
    pub revalidation_failed: bool,
    pub oracle_verdict: Option<OracleVerdict>,
    pub agreement: Option<bool>,
    pub conditions: Option<ConditionSummary>,
    pub lp_status: Option<String>,
    pub lp_certificate_valid: Option<bool>,
    /// Whether `u = (0, e_K, 0, …)` satisfied the LP constraints.
    pub reference_point_feasible: Option<bool>,
    #[serde(with = "rational::wire_opt")]
    pub objective: Option<Rational>,
    pub optimum_complementary: Option<bool>,
    pub size: SizeReport,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<StageTimings>,
}

/// Every intermediate artifact of one pipeline run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineArtifacts {
    pub three_sat: ThreeSatFormula,
    pub trace: ReductionTrace,
    pub system: InequalitySystem,
    pub partition: ClausePartition,
    pub triviality: TrivialityVerdict,
    pub lcp: Option<LcpInstance>,
    pub certificate: Option<MangasarianCertificate>,
    pub conditions: Option<ConditionReport>,
    pub lp: Option<LpInstance>,
    pub outcome: Option<LpOutcome>,
}

#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub verdict: Verdict,
    /// Oracle fields are unset.
    pub record: VerificationRecord,
    pub artifacts: PipelineArtifacts,
}

fn elapsed_ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1000.0
}

pub fn run_pipeline(f: &CnfFormula) -> Result<PipelineRun, VerifyError> {
    run_pipeline_with(f, &PipelineConfig::default())
}

pub fn run_pipeline_with(f: &CnfFormula, config: &PipelineConfig) -> Result<PipelineRun, VerifyError> {
    let start = Instant::now();
    let mut timings = StageTimings::default();

    let t = Instant::now();
    let (three_sat, trace) = reduce_to_3sat(f)?;
    timings.reduce_ms = elapsed_ms(t);

    let t = Instant::now();
    let system = encode_clauses(&three_sat)?;
    let partition = partition_clauses(&system)?;
    let triviality = detect_trivial(&partition);
    timings.encode_ms = elapsed_ms(t);

    let n = f.num_vars() as u64;
    let m = f.num_clauses() as u64;
    let mut artifacts = PipelineArtifacts {
        three_sat,
        trace,
        system,
        partition,
        triviality,
        lcp: None,
        certificate: None,
        conditions: None,
        lp: None,
        outcome: None,
    };
    let mut record = VerificationRecord {
        index: None,
        instance: InstanceDescriptor::Inline,
        n: f.num_vars(),
        m: f.num_clauses(),
        three_sat_vars: artifacts.three_sat.num_vars(),
        three_sat_clauses: artifacts.three_sat.num_clauses(),
        fast_path: None,
        pipeline_verdict: Verdict::Falsifiable,
        revalidation_failed: false,
        oracle_verdict: None,
        agreement: None,
        conditions: None,
        lp_status: None,
        lp_certificate_valid: None,
        reference_point_feasible: None,
        objective: None,
        optimum_complementary: None,
        size: check_bounds(n, m, &artifacts.system, None),
        timings: None,
    };

    let candidate = if let Some(witness) = artifacts.triviality.witness() {
        record.fast_path = Some(
            match artifacts.triviality {
                TrivialityVerdict::TrivialAllTrue(_) => "all_true",
                _ => "all_false",
            }
            .to_string(),
        );
        Verdict::Satisfiable {
            assignment: lift_assignment(&artifacts.trace, witness)?,
        }
    } else {
        let dimension = artifacts.system.num_vars() + artifacts.system.num_clauses() + 2;
        if dimension > config.max_dimension {
            return Err(VerifyError::DimensionCapExceeded {
                dimension,
                cap: config.max_dimension,
            });
        }
        let t = Instant::now();
        let aux = compute_auxiliary(&artifacts.system);
        let inst = assemble_extended_lcp(&artifacts.system, &artifacts.partition, &aux)?;
        timings.lcp_ms = elapsed_ms(t);

        let t = Instant::now();
        let cert = build_certificate(&inst, &aux);
        timings.certificate_ms = elapsed_ms(t);

        let t = Instant::now();
        let conditions = check_conditions(&inst, &cert)?;
        timings.conditions_ms = elapsed_ms(t);
        record.conditions = Some(ConditionSummary::from(&conditions));

        let t = Instant::now();
        let lp = build_lp(&inst, &cert)?;
        let reference_ok = lp.is_feasible(&inst.reference_feasible_point());
        record.reference_point_feasible = Some(reference_ok);
        timings.lp_build_ms = elapsed_ms(t);
        if !reference_ok {
            return Err(VerifyError::Invariant(
                "reference point (0, e_K, 0, …) violates the LP constraints".into(),
            ));
        }

        let t = Instant::now();
        let outcome = solve_simplex(&lp);
        timings.simplex_ms = elapsed_ms(t);
        let certificate_ok = check_outcome(&lp, &outcome)?;
        record.lp_certificate_valid = Some(certificate_ok);
        record.lp_status = Some(outcome.kind().to_string());
        if !certificate_ok {
            return Err(VerifyError::Invariant(
                "LP outcome failed certificate verification".into(),
            ));
        }

        let t = Instant::now();
        let verdict = extract_solution(&outcome, &inst, &artifacts.trace)?;
        if let LpOutcome::Optimal { point, value, .. } = &outcome {
            record.objective = Some(value.clone());
            record.optimum_complementary = Some(verify_complementarity(&inst, point)?);
        }
        timings.extract_ms = elapsed_ms(t);

        record.size = check_bounds(n, m, &artifacts.system, Some((&inst, &cert)));
        artifacts.lcp = Some(inst);
        artifacts.certificate = Some(cert);
        artifacts.conditions = Some(conditions);
        artifacts.lp = Some(lp);
        artifacts.outcome = Some(outcome);
        verdict
    };

    // Never trust an assignment that has not been evaluated.
    let verdict = match candidate {
        Verdict::Satisfiable { assignment } if !evaluate(f, &assignment)? => {
            record.revalidation_failed = true;
            Verdict::Indeterminate {
                reason: IndeterminateReason::MixedSignal,
            }
        }
        other => other,
    };

    timings.total_ms = elapsed_ms(start);
    record.pipeline_verdict = verdict.clone();
    record.timings = Some(timings);
    Ok(PipelineRun {
        verdict,
        record,
        artifacts,
    })
}

/// Agreement: a re-validated satisfying assignment against a satisfiable
/// oracle, or `Falsifiable` against a falsifiable oracle. Indeterminate
/// never agrees.
pub fn agrees(f: &CnfFormula, verdict: &Verdict, oracle: OracleVerdict) -> bool {
    match (verdict, oracle) {
        (Verdict::Satisfiable { assignment }, OracleVerdict::Satisfiable) => evaluate(f, assignment).unwrap_or(false),
        (Verdict::Falsifiable, OracleVerdict::Falsifiable) => true,
        _ => false,
    }
}

pub fn compare_with_oracle(f: &CnfFormula) -> Result<VerificationRecord, VerifyError> {
    compare_with_oracle_capped(f, DEFAULT_ORACLE_CAP, &PipelineConfig::default())
}

pub fn compare_with_oracle_capped(
    f: &CnfFormula,
    oracle_cap: usize,
    config: &PipelineConfig,
) -> Result<VerificationRecord, VerifyError> {
    // Check the cap before paying for the pipeline.
    if f.num_vars() > oracle_cap {
        return Err(FormulaError::CapExceeded {
            num_vars: f.num_vars(),
            cap: oracle_cap,
        }
        .into());
    }
    let run = run_pipeline_with(f, config)?;
    let oracle = match brute_force_sat_with_cap(f, oracle_cap)? {
        Some(_) => OracleVerdict::Satisfiable,
        None => OracleVerdict::Falsifiable,
    };
    let mut record = run.record;
    record.agreement = Some(agrees(f, &run.verdict, oracle));
    record.oracle_verdict = Some(oracle);
    Ok(record)
}

/// Replay dump written for every counterexample.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PipelineDump {
    pub schema_version: u32,
    pub formula_dimacs: String,
    pub three_sat_dimacs: String,
    pub record: VerificationRecord,
    pub artifacts: PipelineArtifacts,
}

impl PipelineDump {
    pub fn new(f: &CnfFormula, record: VerificationRecord, artifacts: PipelineArtifacts) -> Self {
        PipelineDump {
            schema_version: SCHEMA_VERSION,
            formula_dimacs: f.to_dimacs(),
            three_sat_dimacs: artifacts.three_sat.to_cnf().to_dimacs(),
            record,
            artifacts,
        }
    }
}
