//! CNF data model, DIMACS I/O, evaluation and the enumeration oracle.

use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Default variable cap for [`brute_force_sat`].
pub const DEFAULT_ORACLE_CAP: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("missing `p cnf <vars> <clauses>` header")]
    MissingHeader,
    #[error("header declares {expected} clauses but {found} were read")]
    ClauseCountMismatch { expected: usize, found: usize },
    #[error("line {line}: literal {literal} is outside 1..={num_vars}")]
    VariableOutOfRange { line: usize, literal: i64, num_vars: usize },
    #[error("line {line}: malformed token {token:?}")]
    MalformedToken { line: usize, token: String },
    #[error("assignment has {found} values, formula has {expected} variables")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{num_vars} variables exceeds the enumeration cap of {cap}")]
    CapExceeded { num_vars: usize, cap: usize },
    #[error("cannot draw {k} distinct variables out of {n}")]
    InvalidShape { n: usize, k: usize },
}

/// A propositional variable (1-based) or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    variable: u32,
    negated: bool,
}

impl Literal {
    pub fn new(variable: u32, negated: bool) -> Self {
        assert!(variable >= 1, "variables are 1-based");
        Literal { variable, negated }
    }

    pub fn pos(variable: u32) -> Self {
        Self::new(variable, false)
    }

    pub fn neg(variable: u32) -> Self {
        Self::new(variable, true)
    }

    /// From a signed DIMACS integer.
    pub fn from_dimacs(v: i64) -> Self {
        assert!(v != 0, "0 is the clause terminator, not a literal");
        Self::new(v.unsigned_abs() as u32, v < 0)
    }

    pub fn to_dimacs(self) -> i64 {
        let v = i64::from(self.variable);
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn variable(self) -> u32 {
        self.variable
    }

    /// Zero-based column index of the variable.
    pub fn index(self) -> usize {
        self.variable as usize - 1
    }

    pub fn is_negated(self) -> bool {
        self.negated
    }

    pub fn negate(self) -> Self {
        Literal {
            negated: !self.negated,
            ..self
        }
    }

    pub fn is_true_under(self, values: &[bool]) -> bool {
        values[self.index()] != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A disjunction of literals. Duplicate literals are removed on construction;
/// complementary pairs (tautologies) are kept.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    /// Panics on an empty literal list.
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Self {
        let mut out: Vec<Literal> = Vec::new();
        for lit in literals {
            if !out.contains(&lit) {
                out.push(lit);
            }
        }
        assert!(!out.is_empty(), "empty clause");
        Clause { literals: out }
    }

    pub fn from_dimacs(lits: &[i64]) -> Self {
        Self::new(lits.iter().map(|&v| Literal::from_dimacs(v)))
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn is_tautology(&self) -> bool {
        self.literals.iter().any(|l| self.literals.contains(&l.negate()))
    }

    pub fn is_satisfied_by(&self, values: &[bool]) -> bool {
        self.literals.iter().any(|l| l.is_true_under(values))
    }

    pub fn max_variable(&self) -> u32 {
        self.literals.iter().map(|l| l.variable).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    /// Panics if a clause mentions a variable beyond `num_vars`.
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Self {
        assert!(
            clauses.iter().all(|c| c.max_variable() as usize <= num_vars),
            "clause variable exceeds num_vars"
        );
        CnfFormula { num_vars, clauses }
    }

    pub fn from_dimacs_clauses(num_vars: usize, clauses: &[&[i64]]) -> Self {
        Self::new(num_vars, clauses.iter().map(|c| Clause::from_dimacs(c)).collect())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// Serializes to DIMACS: header line, then one zero-terminated clause per line.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause.literals() {
                out.push_str(&lit.to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn all(num_vars: usize, value: bool) -> Self {
        Assignment(vec![value; num_vars])
    }

    /// Variable `j` (zero-based) takes bit `j` of `mask`.
    pub fn from_mask(num_vars: usize, mask: u64) -> Self {
        Assignment((0..num_vars).map(|j| mask >> j & 1 == 1).collect())
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn parse_dimacs(text: &str) -> Result<CnfFormula, FormulaError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<i64> = Vec::new();

    'lines: for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            // SATLIB end marker; anything after it is padding.
            break;
        }
        if line.starts_with('p') {
            let fields: Vec<&str> = line.split_whitespace().collect();
            let malformed = || FormulaError::MalformedToken {
                line: line_no,
                token: line.to_string(),
            };
            if header.is_some() || fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(malformed());
            }
            let n = fields[2].parse().map_err(|_| malformed())?;
            let m = fields[3].parse().map_err(|_| malformed())?;
            header = Some((n, m));
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(FormulaError::MissingHeader);
        };
        for token in line.split_whitespace() {
            if token.starts_with('%') {
                break 'lines;
            }
            let v: i64 = token.parse().map_err(|_| FormulaError::MalformedToken {
                line: line_no,
                token: token.to_string(),
            })?;
            if v == 0 {
                if current.is_empty() {
                    return Err(FormulaError::MalformedToken {
                        line: line_no,
                        token: "0 (empty clause)".to_string(),
                    });
                }
                clauses.push(Clause::from_dimacs(&current));
                current.clear();
            } else if v.unsigned_abs() as usize > num_vars {
                return Err(FormulaError::VariableOutOfRange {
                    line: line_no,
                    literal: v,
                    num_vars,
                });
            } else {
                current.push(v);
            }
        }
    }

    let (num_vars, expected) = header.ok_or(FormulaError::MissingHeader)?;
    if !current.is_empty() {
        return Err(FormulaError::MalformedToken {
            line: text.lines().count(),
            token: "<end of input inside clause>".to_string(),
        });
    }
    if clauses.len() != expected {
        return Err(FormulaError::ClauseCountMismatch {
            expected,
            found: clauses.len(),
        });
    }
    Ok(CnfFormula { num_vars, clauses })
}

pub fn evaluate(formula: &CnfFormula, a: &Assignment) -> Result<bool, FormulaError> {
    if a.len() != formula.num_vars {
        return Err(FormulaError::LengthMismatch {
            expected: formula.num_vars,
            found: a.len(),
        });
    }
    Ok(formula.clauses.iter().all(|c| c.is_satisfied_by(a.values())))
}

pub fn brute_force_sat(formula: &CnfFormula) -> Result<Option<Assignment>, FormulaError> {
    brute_force_sat_with_cap(formula, DEFAULT_ORACLE_CAP)
}

/// Enumerates assignments in counting order (variable 1 is the lowest bit,
/// false before true) and returns the first satisfying one.
pub fn brute_force_sat_with_cap(formula: &CnfFormula, cap: usize) -> Result<Option<Assignment>, FormulaError> {
    let n = formula.num_vars;
    if n > cap || n >= 64 {
        return Err(FormulaError::CapExceeded { num_vars: n, cap });
    }
    // Per clause: a bit set for each positive / negated variable.
    let masks: Vec<(u64, u64)> = formula
        .clauses
        .iter()
        .map(|c| {
            c.literals().iter().fold((0u64, 0u64), |(p, q), l| {
                let bit = 1u64 << l.index();
                if l.is_negated() {
                    (p, q | bit)
                } else {
                    (p | bit, q)
                }
            })
        })
        .collect();
    let found = (0u64..1u64 << n).find(|&mask| masks.iter().all(|&(pos, neg)| mask & pos != 0 || !mask & neg != 0));
    Ok(found.map(|mask| Assignment::from_mask(n, mask)))
}

/// Uniform random k-CNF: each clause draws `k` distinct variables without
/// replacement (listed in ascending order) and a fair sign for each.
pub fn random_cnf(n: usize, m: usize, k: usize, seed: u64) -> Result<CnfFormula, FormulaError> {
    if k == 0 || k > n {
        return Err(FormulaError::InvalidShape { n, k });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clauses = (0..m)
        .map(|_| {
            let mut vars = sample(&mut rng, n, k).into_vec();
            vars.sort_unstable();
            Clause::new(
                vars.into_iter()
                    .map(|v| Literal::new(v as u32 + 1, rng.random_bool(0.5))),
            )
        })
        .collect();
    Ok(CnfFormula::new(n, clauses))
}

/// Clauses over the variable prefixes `1..=w` for every width `w ≤ n`, with
/// every sign pattern: `2 + 4 + … + 2ⁿ` clauses in total. Enumerating subsets
/// of this family gives a fixed exhaustive test corpus of mixed clause widths.
pub fn prefix_clause_family(n: usize) -> Vec<Clause> {
    let mut out = Vec::new();
    for width in 1..=n {
        for signs in 0u32..1 << width {
            out.push(Clause::new(
                (0..width).map(|j| Literal::new(j as u32 + 1, signs >> j & 1 == 1)),
            ));
        }
    }
    out
}

/// All formulas over `n` variables whose clause list is a subset (in family
/// order) of `family` with between 1 and `max_m` clauses.
pub fn subset_formulas(n: usize, family: &[Clause], max_m: usize) -> Vec<CnfFormula> {
    fn rec(n: usize, family: &[Clause], start: usize, left: usize, acc: &mut Vec<Clause>, out: &mut Vec<CnfFormula>) {
        if !acc.is_empty() {
            out.push(CnfFormula::new(n, acc.clone()));
        }
        if left == 0 {
            return;
        }
        for i in start..family.len() {
            acc.push(family[i].clone());
            rec(n, family, i + 1, left - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, family, 0, max_m, &mut Vec::new(), &mut out);
    out
}
