//! CNF to exact-3-SAT clause splitting and padding.
//!
//! Every output clause carries exactly three distinct variables. Fresh
//! variables are numbered after the input's `n`, allocated in clause order,
//! so a 3-SAT assignment lifts back to the input by prefix restriction.

use serde::{Deserialize, Serialize};

use crate::formula::{Assignment, Clause, CnfFormula, Literal};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error("clause {0} is empty")]
    EmptyClause(usize),
    #[error("assignment has {found} values, reduced formula has {expected} variables")]
    LengthMismatch { expected: usize, found: usize },
    #[error("clause {0} does not have exactly three distinct variables")]
    NotThreeSat(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeSatFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
    original_vars: usize,
}

impl ThreeSatFormula {
    /// Validates the exact-3 shape.
    pub fn new(num_vars: usize, clauses: Vec<Clause>, original_vars: usize) -> Result<Self, ReduceError> {
        for (i, c) in clauses.iter().enumerate() {
            let mut vars: Vec<u32> = c.literals().iter().map(|l| l.variable()).collect();
            vars.sort_unstable();
            vars.dedup();
            if c.len() != 3 || vars.len() != 3 || vars[2] as usize > num_vars {
                return Err(ReduceError::NotThreeSat(i));
            }
        }
        assert!(num_vars >= original_vars);
        Ok(ThreeSatFormula {
            num_vars,
            clauses,
            original_vars,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn original_vars(&self) -> usize {
        self.original_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn to_cnf(&self) -> CnfFormula {
        CnfFormula::new(self.num_vars, self.clauses.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    /// Source clause index for every output clause.
    pub source_clause: Vec<usize>,
    /// Fresh variables, always `n+1..=N`.
    pub auxiliary: Vec<u32>,
    /// Input clauses removed as tautologies.
    pub dropped_tautologies: Vec<usize>,
    pub original_vars: usize,
}

pub fn reduce_to_3sat(formula: &CnfFormula) -> Result<(ThreeSatFormula, ReductionTrace), ReduceError> {
    let n = formula.num_vars();
    let mut next_var = n as u32;
    let mut fresh = || {
        next_var += 1;
        next_var
    };
    let mut clauses = Vec::new();
    let mut trace = ReductionTrace {
        source_clause: Vec::new(),
        auxiliary: Vec::new(),
        dropped_tautologies: Vec::new(),
        original_vars: n,
    };

    for (idx, clause) in formula.clauses().iter().enumerate() {
        if clause.is_empty() {
            return Err(ReduceError::EmptyClause(idx));
        }
        if clause.is_tautology() {
            trace.dropped_tautologies.push(idx);
            continue;
        }
        let lits = clause.literals();
        let mut out: Vec<Clause> = Vec::new();
        match lits.len() {
            1 => {
                let (a, b) = (fresh(), fresh());
                trace.auxiliary.extend([a, b]);
                for (na, nb) in [(false, false), (true, false), (false, true), (true, true)] {
                    out.push(Clause::new([lits[0], Literal::new(a, na), Literal::new(b, nb)]));
                }
            }
            2 => {
                let z = fresh();
                trace.auxiliary.push(z);
                out.push(Clause::new([lits[0], lits[1], Literal::pos(z)]));
                out.push(Clause::new([lits[0], lits[1], Literal::neg(z)]));
            }
            3 => out.push(clause.clone()),
            k => {
                // (l1 ∨ l2 ∨ z1)(¬z1 ∨ l3 ∨ z2)…(¬z_{k-3} ∨ l_{k-1} ∨ l_k)
                let links: Vec<u32> = (0..k - 3).map(|_| fresh()).collect();
                trace.auxiliary.extend(&links);
                out.push(Clause::new([lits[0], lits[1], Literal::pos(links[0])]));
                for i in 1..k - 3 {
                    out.push(Clause::new([
                        Literal::neg(links[i - 1]),
                        lits[i + 1],
                        Literal::pos(links[i]),
                    ]));
                }
                out.push(Clause::new([Literal::neg(links[k - 4]), lits[k - 2], lits[k - 1]]));
            }
        }
        trace.source_clause.extend(std::iter::repeat_n(idx, out.len()));
        clauses.extend(out);
    }

    let three = ThreeSatFormula::new(next_var as usize, clauses, n)?;
    Ok((three, trace))
}

/// Restricts a 3-SAT assignment to the original variables.
pub fn lift_assignment(trace: &ReductionTrace, a3: &Assignment) -> Result<Assignment, ReduceError> {
    let expected = trace.original_vars + trace.auxiliary.len();
    if a3.len() != expected {
        return Err(ReduceError::LengthMismatch {
            expected,
            found: a3.len(),
        });
    }
    Ok(Assignment(a3.values()[..trace.original_vars].to_vec()))
}

/// Output sizes against the `n·m` clause and `n + n·m` variable bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionSizes {
    pub clauses: usize,
    pub clause_bound: usize,
    pub vars: usize,
    pub var_bound: usize,
}

impl ReductionSizes {
    pub fn measure(input: &CnfFormula, output: &ThreeSatFormula) -> Self {
        let (n, m) = (input.num_vars(), input.num_clauses());
        ReductionSizes {
            clauses: output.num_clauses(),
            clause_bound: n * m,
            vars: output.num_vars(),
            var_bound: n + n * m,
        }
    }

    pub fn clauses_within(&self) -> bool {
        self.clauses <= self.clause_bound
    }

    pub fn vars_within(&self) -> bool {
        self.vars <= self.var_bound
    }
}
