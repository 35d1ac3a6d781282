//! Linear programs `min cost·u  s.t.  A u ≥ b, u ≥ 0` over exact rationals.

mod simplex;

pub use simplex::solve_simplex;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::lcp::{LcpInstance, MangasarianCertificate};
use crate::rational::{self, Matrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpInstance {
    pub a: Matrix,
    #[serde(with = "rational::wire_vec")]
    pub b: Vec<Rational>,
    #[serde(with = "rational::wire_vec")]
    pub cost: Vec<Rational>,
}

impl LpInstance {
    pub fn new(a: Matrix, b: Vec<Rational>, cost: Vec<Rational>) -> Result<Self, LpError> {
        let lp = LpInstance { a, b, cost };
        lp.check_shape()?;
        Ok(lp)
    }

    pub fn num_vars(&self) -> usize {
        self.a.cols()
    }

    pub fn num_rows(&self) -> usize {
        self.a.rows()
    }

    fn check_shape(&self) -> Result<(), LpError> {
        if self.b.len() != self.a.rows() {
            return Err(LpError::DimensionMismatch {
                what: "right-hand side",
                expected: self.a.rows(),
                found: self.b.len(),
            });
        }
        if self.cost.len() != self.a.cols() {
            return Err(LpError::DimensionMismatch {
                what: "cost vector",
                expected: self.a.cols(),
                found: self.cost.len(),
            });
        }
        Ok(())
    }

    /// `u ≥ 0` and `A u ≥ b`.
    pub fn is_feasible(&self, u: &[Rational]) -> bool {
        u.len() == self.num_vars()
            && u.iter().all(|x| !x.is_negative())
            && self.a.mul_vec(u).iter().zip(&self.b).all(|(lhs, rhs)| lhs >= rhs)
    }

    pub fn objective(&self, u: &[Rational]) -> Rational {
        rational::dot(&self.cost, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LpOutcome {
    Optimal {
        #[serde(with = "rational::wire_vec")]
        point: Vec<Rational>,
        #[serde(with = "rational::wire")]
        value: Rational,
        /// Basic columns of the standard form: `0..n` structural,
        /// `n..n+m` surplus of row `i - n`, `≥ n+m` a redundant-row artificial.
        basis: Vec<usize>,
        /// Row multipliers `y ≥ 0` with `yᵀA ≤ cost` and `yᵀb = value`.
        #[serde(with = "rational::wire_vec")]
        dual: Vec<Rational>,
    },
    Infeasible {
        /// `y ≥ 0` with `yᵀA ≤ 0` and `yᵀb > 0`.
        #[serde(with = "rational::wire_vec")]
        multipliers: Vec<Rational>,
    },
    Unbounded {
        #[serde(with = "rational::wire_vec")]
        point: Vec<Rational>,
        /// `d ≥ 0` with `A d ≥ 0` and `cost·d < 0`.
        #[serde(with = "rational::wire_vec")]
        ray: Vec<Rational>,
    },
}

impl LpOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            LpOutcome::Optimal { .. } => "optimal",
            LpOutcome::Infeasible { .. } => "infeasible",
            LpOutcome::Unbounded { .. } => "unbounded",
        }
    }

    pub fn optimal_value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

/// `min (rᵀ + sᵀM) u  s.t.  M u + q ≥ 0, u ≥ 0`, i.e. `A = M`, `b = −q`.
pub fn build_lp(inst: &LcpInstance, cert: &MangasarianCertificate) -> Result<LpInstance, LpError> {
    let d = inst.dimension();
    for (what, found) in [("s", cert.s.len()), ("r", cert.r.len()), ("q", inst.q.len())] {
        if found != d {
            return Err(LpError::DimensionMismatch {
                what,
                expected: d,
                found,
            });
        }
    }
    let cost = inst
        .matrix
        .vec_mul(&cert.s)
        .into_iter()
        .zip(&cert.r)
        .map(|(x, r)| x + r)
        .collect();
    LpInstance::new(inst.matrix.clone(), inst.q.iter().map(|x| -x).collect(), cost)
}

/// Re-verifies an outcome's certificate from scratch.
pub fn check_outcome(lp: &LpInstance, out: &LpOutcome) -> Result<bool, LpError> {
    lp.check_shape()?;
    let (m, n) = (lp.num_rows(), lp.num_vars());
    let expect = |what, expected, found: usize| {
        if expected == found {
            Ok(())
        } else {
            Err(LpError::DimensionMismatch { what, expected, found })
        }
    };
    Ok(match out {
        LpOutcome::Optimal {
            point,
            value,
            basis,
            dual,
        } => {
            expect("primal point", n, point.len())?;
            expect("dual vector", m, dual.len())?;
            let ax = lp.a.mul_vec(point);
            let yta = lp.a.vec_mul(dual);
            let primal_ok = lp.is_feasible(point);
            let value_ok = &lp.objective(point) == value;
            let dual_ok = dual.iter().all(|y| !y.is_negative()) && yta.iter().zip(&lp.cost).all(|(lhs, c)| lhs <= c);
            let duality_ok = &rational::dot(dual, &lp.b) == value;
            let slackness_ok = dual
                .iter()
                .zip(ax.iter().zip(&lp.b))
                .all(|(y, (lhs, rhs))| y.is_zero() || lhs == rhs)
                && point
                    .iter()
                    .zip(yta.iter().zip(&lp.cost))
                    .all(|(x, (lhs, c))| x.is_zero() || lhs == c);
            let basis_ok = basis.len() == m
                && point.iter().enumerate().all(|(j, x)| x.is_zero() || basis.contains(&j))
                && ax
                    .iter()
                    .zip(&lp.b)
                    .enumerate()
                    .all(|(i, (lhs, rhs))| lhs == rhs || basis.contains(&(n + i)));
            primal_ok && value_ok && dual_ok && duality_ok && slackness_ok && basis_ok
        }
        LpOutcome::Infeasible { multipliers } => {
            expect("multipliers", m, multipliers.len())?;
            multipliers.iter().all(|y| !y.is_negative())
                && lp.a.vec_mul(multipliers).iter().all(|v| !v.is_positive())
                && rational::dot(multipliers, &lp.b).is_positive()
        }
        LpOutcome::Unbounded { point, ray } => {
            expect("primal point", n, point.len())?;
            expect("ray", n, ray.len())?;
            lp.is_feasible(point)
                && ray.iter().all(|d| !d.is_negative())
                && lp.a.mul_vec(ray).iter().all(|v| !v.is_negative())
                && lp.objective(ray).is_negative()
        }
    })
}
