//! Clause-to-inequality encoding `Cx + b ≥ 0` and the K/L/Q/R partition.
//!
//! A clause with positive literals `I` and negated literals `J` holds iff
//! `Σ_{i∈I} x_i + Σ_{j∈J} (1 − x_j) ≥ 1`, i.e. `a·x + (|J| − 1) ≥ 0` with
//! `a ∈ {−1, 0, 1}ᴺ`. With exactly three literals per clause, `b ∈ {−1, 0, 1, 2}`
//! and the count of positive entries fixes the clause's block:
//!
//! | positives | b  | block |
//! |-----------|----|-------|
//! | 3         | −1 | K     |
//! | 0         | 2  | L     |
//! | 1         | 1  | Q     |
//! | 2         | 0  | R     |

use serde::{Deserialize, Serialize};

use crate::formula::Assignment;
use crate::reduce::ThreeSatFormula;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EncodeError {
    #[error("clause {0} does not have exactly three distinct variables")]
    NotThreeSat(usize),
    #[error("row {row}: {reason}")]
    InvalidRow { row: usize, reason: String },
    #[error("row {0} cannot be classified into K, L, Q or R")]
    UnclassifiableRow(usize),
    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// One row of `C`: three `(column, ±1)` entries with distinct, ascending columns.
pub type Row = [(usize, i8); 3];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SystemWire", into = "SystemWire")]
pub struct InequalitySystem {
    num_vars: usize,
    rows: Vec<Row>,
    b: Vec<i64>,
}

impl InequalitySystem {
    /// Builds a system from explicit rows and offsets, rejecting any row that
    /// is not three distinct in-range `±1` entries or whose `b` disagrees
    /// with its negative count.
    pub fn new(num_vars: usize, mut rows: Vec<Row>, b: Vec<i64>) -> Result<Self, EncodeError> {
        if rows.len() != b.len() {
            return Err(EncodeError::DimensionMismatch {
                expected: rows.len(),
                found: b.len(),
            });
        }
        for (i, row) in rows.iter_mut().enumerate() {
            row.sort_unstable_by_key(|e| e.0);
            let bad = |reason: &str| EncodeError::InvalidRow {
                row: i,
                reason: reason.to_string(),
            };
            if row[0].0 == row[1].0 || row[1].0 == row[2].0 {
                return Err(bad("repeated column"));
            }
            if row[2].0 >= num_vars {
                return Err(bad("column out of range"));
            }
            if row.iter().any(|e| e.1 != 1 && e.1 != -1) {
                return Err(bad("coefficient outside {-1, +1}"));
            }
            let negatives = row.iter().filter(|e| e.1 < 0).count() as i64;
            if b[i] != negatives - 1 {
                return Err(bad(&format!("b = {} but row has {negatives} negative entries", b[i])));
            }
        }
        Ok(InequalitySystem { num_vars, rows, b })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn dense_row(&self, i: usize) -> Vec<i64> {
        let mut out = vec![0; self.num_vars];
        for &(j, v) in &self.rows[i] {
            out[j] = i64::from(v);
        }
        out
    }

    /// `(C x + b)_i` for a 0/1 vector `x`.
    pub fn slack(&self, i: usize, x: &[bool]) -> i64 {
        self.rows[i]
            .iter()
            .filter(|(j, _)| x[*j])
            .map(|&(_, v)| i64::from(v))
            .sum::<i64>()
            + self.b[i]
    }
}

#[derive(Serialize, Deserialize)]
struct SystemWire {
    num_vars: usize,
    num_clauses: usize,
    /// `(row, column, value)` triplets of `C`.
    entries: Vec<(usize, usize, i8)>,
    b: Vec<i64>,
}

impl From<InequalitySystem> for SystemWire {
    fn from(sys: InequalitySystem) -> Self {
        SystemWire {
            num_vars: sys.num_vars,
            num_clauses: sys.rows.len(),
            entries: sys
                .rows
                .iter()
                .enumerate()
                .flat_map(|(i, row)| row.iter().map(move |&(j, v)| (i, j, v)))
                .collect(),
            b: sys.b,
        }
    }
}

impl TryFrom<SystemWire> for InequalitySystem {
    type Error = EncodeError;

    fn try_from(w: SystemWire) -> Result<Self, EncodeError> {
        let mut per_row: Vec<Vec<(usize, i8)>> = vec![Vec::new(); w.num_clauses];
        for (i, j, v) in w.entries {
            per_row
                .get_mut(i)
                .ok_or(EncodeError::UnclassifiableRow(i))?
                .push((j, v));
        }
        let rows = per_row
            .into_iter()
            .enumerate()
            .map(|(i, r)| {
                <Row>::try_from(r.as_slice()).map_err(|_| EncodeError::InvalidRow {
                    row: i,
                    reason: format!("{} nonzeros, expected 3", r.len()),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        InequalitySystem::new(w.num_vars, rows, w.b)
    }
}

pub fn encode_clauses(f: &ThreeSatFormula) -> Result<InequalitySystem, EncodeError> {
    let mut rows = Vec::with_capacity(f.num_clauses());
    let mut b = Vec::with_capacity(f.num_clauses());
    for (i, clause) in f.clauses().iter().enumerate() {
        let lits = clause.literals();
        if lits.len() != 3 {
            return Err(EncodeError::NotThreeSat(i));
        }
        let row: Row = [0, 1, 2].map(|t| (lits[t].index(), if lits[t].is_negated() { -1 } else { 1 }));
        b.push(lits.iter().filter(|l| l.is_negated()).count() as i64 - 1);
        rows.push(row);
    }
    InequalitySystem::new(f.num_vars(), rows, b).map_err(|e| match e {
        EncodeError::InvalidRow { row, .. } => EncodeError::NotThreeSat(row),
        other => other,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClausePartition {
    pub num_vars: usize,
    pub k: Vec<usize>,
    pub l: Vec<usize>,
    pub q: Vec<usize>,
    pub r: Vec<usize>,
}

impl ClausePartition {
    /// Row indices in block order K, L, Q, R.
    pub fn ordered_rows(&self) -> Vec<usize> {
        self.k
            .iter()
            .chain(&self.l)
            .chain(&self.q)
            .chain(&self.r)
            .copied()
            .collect()
    }

    pub fn num_clauses(&self) -> usize {
        self.k.len() + self.l.len() + self.q.len() + self.r.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.k.is_empty() || self.l.is_empty()
    }
}

pub fn partition_clauses(sys: &InequalitySystem) -> Result<ClausePartition, EncodeError> {
    let mut part = ClausePartition {
        num_vars: sys.num_vars(),
        k: Vec::new(),
        l: Vec::new(),
        q: Vec::new(),
        r: Vec::new(),
    };
    for (i, row) in sys.rows().iter().enumerate() {
        let positives = row.iter().filter(|e| e.1 > 0).count();
        let block = match (positives, sys.b()[i]) {
            (3, -1) => &mut part.k,
            (0, 2) => &mut part.l,
            (1, 1) => &mut part.q,
            (2, 0) => &mut part.r,
            _ => return Err(EncodeError::UnclassifiableRow(i)),
        };
        block.push(i);
    }
    Ok(part)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "witness", rename_all = "snake_case")]
pub enum TrivialityVerdict {
    NonTrivial,
    /// No all-positive clause: `x = 0` satisfies every row.
    TrivialAllFalse(Assignment),
    /// No all-negative clause: `x = e` satisfies every row.
    TrivialAllTrue(Assignment),
}

impl TrivialityVerdict {
    pub fn witness(&self) -> Option<&Assignment> {
        match self {
            TrivialityVerdict::NonTrivial => None,
            TrivialityVerdict::TrivialAllFalse(a) | TrivialityVerdict::TrivialAllTrue(a) => Some(a),
        }
    }
}

pub fn detect_trivial(part: &ClausePartition) -> TrivialityVerdict {
    if part.k.is_empty() {
        TrivialityVerdict::TrivialAllFalse(Assignment::all(part.num_vars, false))
    } else if part.l.is_empty() {
        TrivialityVerdict::TrivialAllTrue(Assignment::all(part.num_vars, true))
    } else {
        TrivialityVerdict::NonTrivial
    }
}

/// Whether `Cx + b ≥ 0` holds for the 0/1 vector `x`.
pub fn feasibility_check(sys: &InequalitySystem, x: &[bool]) -> Result<bool, EncodeError> {
    if x.len() != sys.num_vars() {
        return Err(EncodeError::DimensionMismatch {
            expected: sys.num_vars(),
            found: x.len(),
        });
    }
    Ok((0..sys.num_clauses()).all(|i| sys.slack(i, x) >= 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{evaluate, random_cnf, Clause, CnfFormula};
    use crate::reduce::reduce_to_3sat;
    use proptest::prelude::*;

    fn three_sat(n: usize, clauses: &[&[i64]]) -> ThreeSatFormula {
        ThreeSatFormula::new(n, clauses.iter().map(|c| Clause::from_dimacs(c)).collect(), n).unwrap()
    }

    #[test]
    fn encodes_block_representatives() {
        let f = three_sat(3, &[&[1, 2, 3], &[-1, -2, -3], &[1, -2, 3], &[1, -2, -3]]);
        let sys = encode_clauses(&f).unwrap();
        assert_eq!(sys.dense_row(0), vec![1, 1, 1]);
        assert_eq!(sys.dense_row(1), vec![-1, -1, -1]);
        assert_eq!(sys.dense_row(2), vec![1, -1, 1]);
        assert_eq!(sys.b(), &[-1, 2, 0, 1]);
        let part = partition_clauses(&sys).unwrap();
        assert_eq!(
            (part.k.clone(), part.l.clone(), part.q.clone(), part.r.clone()),
            (vec![0], vec![1], vec![3], vec![2])
        );
        assert_eq!(part.ordered_rows(), vec![0, 1, 3, 2]);
    }

    #[test]
    fn partition_single_k() {
        let sys = encode_clauses(&three_sat(3, &[&[1, 2, 3]])).unwrap();
        let part = partition_clauses(&sys).unwrap();
        assert_eq!(part.k, vec![0]);
        assert!(part.l.is_empty() && part.q.is_empty() && part.r.is_empty());
    }

    #[test]
    fn mismatched_b_is_rejected() {
        let rows = vec![[(0, 1), (1, 1), (2, 1)]];
        assert!(matches!(
            InequalitySystem::new(3, rows.clone(), vec![0]),
            Err(EncodeError::InvalidRow { row: 0, .. })
        ));
        assert!(InequalitySystem::new(3, rows, vec![-1]).is_ok());
        assert!(matches!(
            InequalitySystem::new(3, vec![[(0, 1), (0, 1), (2, 1)]], vec![-1]),
            Err(EncodeError::InvalidRow { .. })
        ));
    }

    #[test]
    fn triviality_cases() {
        let all_neg = encode_clauses(&three_sat(3, &[&[-1, 2, 3], &[-1, -2, -3]])).unwrap();
        let v = detect_trivial(&partition_clauses(&all_neg).unwrap());
        assert_eq!(v, TrivialityVerdict::TrivialAllFalse(Assignment::all(3, false)));

        let no_l = encode_clauses(&three_sat(3, &[&[1, 2, 3], &[-1, 2, 3]])).unwrap();
        let v = detect_trivial(&partition_clauses(&no_l).unwrap());
        assert_eq!(v, TrivialityVerdict::TrivialAllTrue(Assignment::all(3, true)));

        let both = encode_clauses(&three_sat(3, &[&[1, 2, 3], &[-1, -2, -3]])).unwrap();
        assert_eq!(
            detect_trivial(&partition_clauses(&both).unwrap()),
            TrivialityVerdict::NonTrivial
        );
    }

    #[test]
    fn feasibility_examples() {
        let sys = encode_clauses(&three_sat(3, &[&[1, 2, 3]])).unwrap();
        assert!(feasibility_check(&sys, &[true, false, false]).unwrap());
        assert!(!feasibility_check(&sys, &[false, false, false]).unwrap());
        assert_eq!(
            feasibility_check(&sys, &[true]),
            Err(EncodeError::DimensionMismatch { expected: 3, found: 1 })
        );
    }

    #[test]
    fn json_round_trip() {
        let sys = encode_clauses(&three_sat(4, &[&[1, -2, 4], &[-1, -3, -4]])).unwrap();
        let s = serde_json::to_string(&sys).unwrap();
        let back: InequalitySystem = serde_json::from_str(&s).unwrap();
        assert_eq!(back, sys);
        let tampered = s.replace("\"b\":[0,2]", "\"b\":[1,2]");
        assert!(serde_json::from_str::<InequalitySystem>(&tampered).is_err());
    }

    proptest! {
        #[test]
        fn feasibility_equals_evaluation(n in 3usize..=9, m in 0usize..=12, seed in any::<u64>()) {
            let f = random_cnf(n, m, 3, seed).unwrap();
            let (t, _) = reduce_to_3sat(&f).unwrap();
            let sys = encode_clauses(&t).unwrap();
            let cnf: CnfFormula = t.to_cnf();
            let part = partition_clauses(&sys).unwrap();
            prop_assert_eq!(part.num_clauses(), sys.num_clauses());
            for mask in 0..1u64 << t.num_vars() {
                let a = Assignment::from_mask(t.num_vars(), mask);
                prop_assert_eq!(feasibility_check(&sys, a.values()).unwrap(), evaluate(&cnf, &a).unwrap());
            }
            if let Some(w) = detect_trivial(&part).witness() {
                prop_assert!(evaluate(&cnf, w).unwrap());
            }
        }
    }
}
