//! Brute-force LP classification by enumerating basic solutions.
//!
//! Shares no code with the simplex path; used by unit and acceptance tests.

use num_rational::BigRational as Rational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleClass {
    Optimal(Rational),
    Infeasible,
    Unbounded,
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[r].clone();
                for (v, pv) in m[i].iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    pivots
}

fn subsets(total: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, total: usize, left: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..total {
            acc.push(i);
            rec(i + 1, total, left - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, total, size, &mut Vec::new(), &mut out);
    out
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).fold(Rational::zero(), |s, v| s + v)
}

/// `a` rows, `b`, `c` for `min c·u, A u ≥ b, u ≥ 0`.
pub fn enumerate_lp(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> OracleClass {
    let n = c.len();
    // All constraints as g·u ≥ h: the rows of A, then u_j ≥ 0.
    let mut g: Vec<Vec<Rational>> = a.to_vec();
    let mut h: Vec<Rational> = b.to_vec();
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        g.push(e);
        h.push(Rational::zero());
    }
    let feasible = |u: &[Rational]| g.iter().zip(&h).all(|(row, hv)| &dot(row, u) >= hv);

    let mut best: Option<Rational> = None;
    for s in subsets(g.len(), n) {
        let mut sys: Vec<Vec<Rational>> = s
            .iter()
            .map(|&i| {
                let mut row = g[i].clone();
                row.push(h[i].clone());
                row
            })
            .collect();
        let piv = rref(&mut sys, n);
        if piv.len() < n {
            continue;
        }
        let u: Vec<Rational> = (0..n).map(|j| sys[j][n].clone()).collect();
        if feasible(&u) {
            let v = dot(c, &u);
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
    }
    let Some(best) = best else {
        return OracleClass::Infeasible;
    };

    // Extreme rays of {d ≥ 0, A d ≥ 0}: one-dimensional null spaces of
    // n−1 active cone constraints.
    let cone_ok = |d: &[Rational]| g.iter().all(|row| !dot(row, d).is_negative());
    for s in subsets(g.len(), n - 1) {
        let mut sys: Vec<Vec<Rational>> = s.iter().map(|&i| g[i].clone()).collect();
        let piv = if sys.is_empty() { Vec::new() } else { rref(&mut sys, n) };
        if piv.len() != n - 1 {
            continue;
        }
        let free = (0..n).find(|j| !piv.contains(j)).expect("one free column");
        let mut d = vec![Rational::zero(); n];
        d[free] = Rational::one();
        for (r, &pc) in piv.iter().enumerate() {
            d[pc] = -sys[r][free].clone();
        }
        for dir in [d.clone(), d.iter().map(|x| -x).collect::<Vec<_>>()] {
            if cone_ok(&dir) && dot(c, &dir).is_negative() {
                return OracleClass::Unbounded;
            }
        }
    }
    OracleClass::Optimal(best)
}
