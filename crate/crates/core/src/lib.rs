//! Exact reduction pipeline from CNF satisfiability to a linear
//! complementarity problem and an LP, with brute-force cross-checking.
//!
//! Stages, in order: [`formula`] (CNF, DIMACS, oracle), [`reduce`] (exact
//! 3-SAT), [`encode`] (inequality system and clause partition), [`lcp`]
//! (extended LCP and certificate checks), [`lp`] (exact simplex), [`verify`]
//! (verdicts and campaigns) and [`sizing`] (encoding-size accounting).

pub mod encode;
pub mod formula;
pub mod lcp;
pub mod lp;
pub mod rational;
pub mod reduce;
pub mod sizing;
pub mod verify;

pub use formula::{evaluate, parse_dimacs, Assignment, Clause, CnfFormula, Literal};
pub use rational::{Matrix, Rational};
pub use verify::{compare_with_oracle, run_campaign, run_pipeline, Verdict, VerificationRecord};
