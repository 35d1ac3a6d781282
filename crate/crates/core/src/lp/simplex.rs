//! Dense-tableau two-phase primal simplex with Bland's rule.
//!
//! Row `i` of `A u ≥ b` becomes `σᵢ(Aᵢu − sᵢ) = σᵢbᵢ` with `σᵢ = −1` when
//! `bᵢ ≤ 0` (the surplus `sᵢ` then starts basic) and `σᵢ = +1` otherwise,
//! in which case an artificial column is added for phase one. With this
//! layout the reduced cost of `sᵢ` is exactly the inequality multiplier
//! `yᵢ`, which is how duals and Farkas certificates are read off.

use num_traits::{One, Signed, Zero};

use super::{LpInstance, LpOutcome};
use crate::rational::Rational;

struct Tableau {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<Rational>>,
    /// Reduced costs; the last entry is minus the objective value.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    /// Columns that may never enter (artificials during phase two).
    frozen_from: usize,
}

impl Tableau {
    fn width(&self) -> usize {
        self.obj.len() - 1
    }

    fn rhs(&self, i: usize) -> &Rational {
        self.rows[i].last().expect("nonempty row")
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let inv = self.rows[r][col].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let support: Vec<usize> = (0..self.rows[r].len())
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let eliminate = |row: &mut Vec<Rational>| {
            let factor = row[col].clone();
            if factor.is_zero() {
                return;
            }
            for &j in &support {
                let delta = &factor * &pivot_row[j];
                row[j] -= delta;
            }
        };
        for row in self.rows.iter_mut() {
            if !row.is_empty() {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.rows[r] = pivot_row;
        self.basis[r] = col;
    }

    /// Recomputes the reduced-cost row for `cost` (indexed by column).
    fn set_objective(&mut self, cost: &[Rational]) {
        let mut obj: Vec<Rational> = cost.to_vec();
        obj.push(Rational::zero());
        for (i, &bcol) in self.basis.iter().enumerate() {
            let cb = &cost[bcol];
            if cb.is_zero() {
                continue;
            }
            for (j, v) in self.rows[i].iter().enumerate() {
                if !v.is_zero() {
                    obj[j] -= cb * v;
                }
            }
        }
        self.obj = obj;
    }

    /// Runs Bland pivots until optimal (`None`) or an unbounded column is found.
    fn optimize(&mut self) -> Option<usize> {
        loop {
            let col = (0..self.frozen_from.min(self.width())).find(|&j| self.obj[j].is_negative())?;
            let mut best: Option<(Rational, usize, usize)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &best {
                    None => true,
                    Some((r, _, b)) => ratio < *r || (ratio == *r && self.basis[i] < *b),
                };
                if better {
                    best = Some((ratio, i, self.basis[i]));
                }
            }
            match best {
                None => return Some(col),
                Some((_, r, _)) => self.pivot(r, col),
            }
        }
    }

    fn column_values(&self, len: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); len];
        for (i, &bcol) in self.basis.iter().enumerate() {
            if bcol < len {
                x[bcol] = self.rhs(i).clone();
            }
        }
        x
    }
}

/// Solves `min cost·u  s.t.  A u ≥ b, u ≥ 0` exactly.
pub fn solve_simplex(lp: &LpInstance) -> LpOutcome {
    let (m, n) = (lp.num_rows(), lp.num_vars());
    let sign: Vec<bool> = lp.b.iter().map(|b| b.is_positive()).collect();
    let art_rows: Vec<usize> = (0..m).filter(|&i| sign[i]).collect();
    let width = n + m + art_rows.len();

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![Rational::zero(); width + 1];
        let flip = |v: &Rational| if sign[i] { v.clone() } else { -v };
        for (j, a) in lp.a.row(i).iter().enumerate() {
            if !a.is_zero() {
                row[j] = flip(a);
            }
        }
        row[n + i] = flip(&-Rational::one());
        row[width] = flip(&lp.b[i]);
        if sign[i] {
            let art = n + m + art_rows.binary_search(&i).expect("artificial row");
            row[art] = Rational::one();
            basis.push(art);
        } else {
            basis.push(n + i);
        }
        rows.push(row);
    }

    let mut t = Tableau {
        rows,
        obj: Vec::new(),
        basis,
        frozen_from: width,
    };

    // Phase one: minimize the sum of artificials.
    if !art_rows.is_empty() {
        let mut phase_one = vec![Rational::zero(); width];
        for c in phase_one.iter_mut().skip(n + m) {
            *c = Rational::one();
        }
        t.set_objective(&phase_one);
        let unbounded = t.optimize();
        debug_assert!(unbounded.is_none(), "phase one is bounded below by zero");
        let infeasibility = -t.obj[width].clone();
        if infeasibility.is_positive() {
            let multipliers = (0..m).map(|i| t.obj[n + i].clone()).collect();
            return LpOutcome::Infeasible { multipliers };
        }
        // Drive zero-level artificials out of the basis where possible;
        // rows that are zero over the real columns keep theirs, frozen.
        for r in 0..m {
            if t.basis[r] >= n + m {
                if let Some(col) = (0..n + m).find(|&j| !t.rows[r][j].is_zero()) {
                    t.pivot(r, col);
                }
            }
        }
        t.frozen_from = n + m;
    }

    let mut cost = lp.cost.clone();
    cost.resize(width, Rational::zero());
    t.set_objective(&cost);

    if let Some(col) = t.optimize() {
        let point = t.column_values(n);
        let mut ray = vec![Rational::zero(); n];
        if col < n {
            ray[col] = Rational::one();
        }
        for (i, &bcol) in t.basis.iter().enumerate() {
            if bcol < n {
                ray[bcol] = -t.rows[i][col].clone();
            }
        }
        return LpOutcome::Unbounded { point, ray };
    }

    let point = t.column_values(n);
    let value = lp.objective(&point);
    let dual = (0..m).map(|i| t.obj[n + i].clone()).collect();
    let mut basis = t.basis.clone();
    basis.sort_unstable();
    LpOutcome::Optimal {
        point,
        value,
        basis,
        dual,
    }
}
