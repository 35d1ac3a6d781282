//! LCP formulations of the inequality system and the certificate matrices
//! for the LCP-as-LP conditions.
//!
//! Extended layout (`D = N + M + 2`), rows and columns in block order
//! `x_N, y_K, y_L, y_Q, y_R, y_v, y_w`:
//!
//! ```text
//!        [ −I   0  0  0  0  0  0 ]        [  e_N ]
//!        [ C_K  I  0  0  0  0  0 ]        [ −e_K ]
//!        [ C_L  0  I  0  0  0  0 ]        [ 2e_L ]
//!   M =  [ C_Q  0  0  I  0  0  0 ]   q =  [  e_Q ]
//!        [ C_R  0  0  0  I  0  0 ]        [  0_R ]
//!        [ vᵀ   0  0  0  0  1  0 ]        [  0   ]
//!        [ wᵀ   0  0  0  0  0  1 ]        [  0   ]
//! ```
//!
//! `Z¹` has the same shape with `C` replaced by `P = min(C, 0)`, `−I` kept,
//! and zero `v`/`w` rows; `Z² = M Z¹`.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::encode::{ClausePartition, InequalitySystem};
use crate::rational::{self, int, Matrix, Rational};

/// Default cap on `N` for [`lcp_has_binary_solution`].
pub const DEFAULT_LCP_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LcpError {
    #[error("{num_vars} variables exceeds the enumeration cap of {cap}")]
    CapExceeded { num_vars: usize, cap: usize },
    #[error("instance is trivial (K or L empty); the fast path applies")]
    TrivialInstance,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// The `(N + M)`-dimensional LCP `[−I 0; C 0] (x, Γ) + (e, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicLcpInstance {
    pub num_vars: usize,
    pub num_clauses: usize,
    pub matrix: Matrix,
    #[serde(with = "rational::wire_vec")]
    pub q: Vec<Rational>,
}

pub fn build_basic_lcp(sys: &InequalitySystem) -> BasicLcpInstance {
    let (n, m) = (sys.num_vars(), sys.num_clauses());
    let mut matrix = Matrix::zeros(n + m, n + m);
    for i in 0..n {
        matrix[(i, i)] = int(-1);
    }
    for (i, row) in sys.rows().iter().enumerate() {
        for &(j, v) in row {
            matrix[(n + i, j)] = int(v.into());
        }
    }
    let q = std::iter::repeat_n(Rational::one(), n)
        .chain(sys.b().iter().map(|&b| int(b)))
        .collect();
    BasicLcpInstance {
        num_vars: n,
        num_clauses: m,
        matrix,
        q,
    }
}

/// Searches `x ∈ {0,1}ᴺ` (counting order, variable 1 lowest bit) with `Γ = 0`
/// that solves the basic LCP, checking feasibility and complementarity on
/// the instance matrix itself.
pub fn lcp_has_binary_solution(inst: &BasicLcpInstance, cap: usize) -> Result<Option<Vec<bool>>, LcpError> {
    let (n, d) = (inst.num_vars, inst.num_vars + inst.num_clauses);
    if n > cap || n >= 64 {
        return Err(LcpError::CapExceeded { num_vars: n, cap });
    }
    for mask in 0u64..1u64 << n {
        let mut u = vec![Rational::zero(); d];
        for (j, uj) in u.iter_mut().enumerate().take(n) {
            if mask >> j & 1 == 1 {
                *uj = Rational::one();
            }
        }
        if lcp_solves(&inst.matrix, &inst.q, &u) {
            return Ok(Some((0..n).map(|j| mask >> j & 1 == 1).collect()));
        }
    }
    Ok(None)
}

fn lcp_solves(matrix: &Matrix, q: &[Rational], u: &[Rational]) -> bool {
    if u.iter().any(Signed::is_negative) {
        return false;
    }
    let w: Vec<Rational> = matrix.mul_vec(u).into_iter().zip(q).map(|(a, b)| a + b).collect();
    w.iter().all(|x| !x.is_negative()) && rational::dot(u, &w).is_zero()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxiliaryVectors {
    /// Column sums of `C`.
    pub g: Vec<i64>,
    /// `max(−g, 0)`.
    pub v: Vec<i64>,
    /// Column sums of `C − P`, plus `v`.
    pub h: Vec<i64>,
    pub w: Vec<i64>,
    /// `min(C, 0)`, one dense row per clause in original clause order.
    pub p: Vec<Vec<i64>>,
}

pub fn compute_auxiliary(sys: &InequalitySystem) -> AuxiliaryVectors {
    let n = sys.num_vars();
    let mut g = vec![0i64; n];
    let mut pos_count = vec![0i64; n];
    let mut p = Vec::with_capacity(sys.num_clauses());
    for (i, row) in sys.rows().iter().enumerate() {
        let dense = sys.dense_row(i);
        for &(j, c) in row {
            g[j] += i64::from(c);
            if c > 0 {
                pos_count[j] += 1;
            }
        }
        p.push(dense.into_iter().map(|c| c.min(0)).collect());
    }
    let v: Vec<i64> = g.iter().map(|&gi| if gi < 0 { -gi } else { 0 }).collect();
    let h: Vec<i64> = pos_count.iter().zip(&v).map(|(a, b)| a + b).collect();
    AuxiliaryVectors {
        g,
        v,
        w: h.clone(),
        h,
        p,
    }
}

/// Block extents of an extended instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockLayout {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub q: usize,
    pub r: usize,
}

impl BlockLayout {
    pub fn clauses(&self) -> usize {
        self.k + self.l + self.q + self.r
    }

    pub fn dimension(&self) -> usize {
        self.n + self.clauses() + 2
    }

    pub fn k_range(&self) -> std::ops::Range<usize> {
        self.n..self.n + self.k
    }

    pub fn clause_range(&self) -> std::ops::Range<usize> {
        self.n..self.n + self.clauses()
    }

    pub fn v_index(&self) -> usize {
        self.n + self.clauses()
    }

    pub fn w_index(&self) -> usize {
        self.v_index() + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcpInstance {
    pub layout: BlockLayout,
    /// Original clause index of each clause-block row, in block order.
    pub row_order: Vec<usize>,
    pub matrix: Matrix,
    #[serde(with = "rational::wire_vec")]
    pub q: Vec<Rational>,
}

impl LcpInstance {
    pub fn dimension(&self) -> usize {
        self.layout.dimension()
    }

    /// `u = (0_N, e_K, 0, …, 0)`, feasible for every assembled instance.
    pub fn reference_feasible_point(&self) -> Vec<Rational> {
        let mut u = vec![Rational::zero(); self.dimension()];
        for i in self.layout.k_range() {
            u[i] = Rational::one();
        }
        u
    }

    /// `Mu + q ≥ 0` and `u ≥ 0`.
    pub fn is_feasible(&self, u: &[Rational]) -> bool {
        u.len() == self.dimension()
            && u.iter().all(|x| !x.is_negative())
            && self
                .matrix
                .mul_vec(u)
                .iter()
                .zip(&self.q)
                .all(|(a, b)| !(a + b).is_negative())
    }
}

pub fn assemble_extended_lcp(
    sys: &InequalitySystem,
    part: &ClausePartition,
    aux: &AuxiliaryVectors,
) -> Result<LcpInstance, LcpError> {
    if part.is_trivial() {
        return Err(LcpError::TrivialInstance);
    }
    if part.num_clauses() != sys.num_clauses() {
        return Err(LcpError::DimensionMismatch {
            expected: sys.num_clauses(),
            found: part.num_clauses(),
        });
    }
    let layout = BlockLayout {
        n: sys.num_vars(),
        k: part.k.len(),
        l: part.l.len(),
        q: part.q.len(),
        r: part.r.len(),
    };
    let (n, d) = (layout.n, layout.dimension());
    let row_order = part.ordered_rows();
    let mut matrix = Matrix::zeros(d, d);
    let mut q = vec![Rational::zero(); d];

    for i in 0..n {
        matrix[(i, i)] = int(-1);
        q[i] = Rational::one();
    }
    let offsets = [(-1, layout.k), (2, layout.l), (1, layout.q), (0, layout.r)];
    let mut row = n;
    for (q_value, count) in offsets {
        for _ in 0..count {
            let clause = row_order[row - n];
            for &(j, c) in &sys.rows()[clause] {
                matrix[(row, j)] = int(c.into());
            }
            matrix[(row, row)] = Rational::one();
            q[row] = int(q_value);
            row += 1;
        }
    }
    for (idx, vec) in [(layout.v_index(), &aux.v), (layout.w_index(), &aux.w)] {
        for (j, &val) in vec.iter().enumerate() {
            matrix[(idx, j)] = int(val);
        }
        matrix[(idx, idx)] = Rational::one();
    }
    Ok(LcpInstance {
        layout,
        row_order,
        matrix,
        q,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MangasarianCertificate {
    pub z1: Matrix,
    pub z2: Matrix,
    #[serde(with = "rational::wire_vec")]
    pub r: Vec<Rational>,
    #[serde(with = "rational::wire_vec")]
    pub s: Vec<Rational>,
    #[serde(with = "rational::wire_vec")]
    pub c: Vec<Rational>,
}

pub fn build_certificate(inst: &LcpInstance, aux: &AuxiliaryVectors) -> MangasarianCertificate {
    let layout = inst.layout;
    let (n, d) = (layout.n, layout.dimension());
    let mut z1 = Matrix::identity(d);
    for i in 0..n {
        z1[(i, i)] = int(-1);
    }
    for (offset, &clause) in inst.row_order.iter().enumerate() {
        for (j, &pij) in aux.p[clause].iter().enumerate() {
            if pij != 0 {
                z1[(n + offset, j)] = int(pij);
            }
        }
    }
    let z2 = inst.matrix.mul(&z1);

    // s_N = e + g − eᵀP + v; every other block is 1.
    let mut s = vec![Rational::one(); d];
    for (j, sj) in s.iter_mut().enumerate().take(n) {
        let p_col: i64 = aux.p.iter().map(|row| row[j]).sum();
        *sj = int(1 + aux.g[j] - p_col + aux.v[j]);
    }
    MangasarianCertificate {
        z1,
        z2,
        r: vec![Rational::zero(); d],
        s,
        c: vec![Rational::zero(); d],
    }
}

/// Location and value of the first entry that breaks a condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub row: Option<usize>,
    pub col: usize,
    #[serde(with = "rational::wire")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub holds: bool,
    /// Number of entries that break the condition.
    pub violations: usize,
    pub witness: Option<Witness>,
}

impl ConditionCheck {
    fn from_violations(mut found: impl Iterator<Item = Witness>) -> Self {
        match found.next() {
            None => ConditionCheck {
                holds: true,
                violations: 0,
                witness: None,
            },
            Some(first) => ConditionCheck {
                holds: false,
                violations: 1 + found.count(),
                witness: Some(first),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    /// `M Z¹ = Z² + q cᵀ`.
    pub a_product_identity: ConditionCheck,
    /// `rᵀZ¹ + sᵀZ² ≥ 0`.
    pub b_nonnegative: ConditionCheck,
    /// `rᵀZ¹ + sᵀZ² + cᵀ > 0`.
    pub c_positive: ConditionCheck,
    /// `r + s > 0`.
    pub d_positive: ConditionCheck,
    /// `c, r, s ≥ 0`.
    pub sign_constraints: ConditionCheck,
    pub z_matrix_z1: ConditionCheck,
    pub z_matrix_z2: ConditionCheck,
    /// The row vector `rᵀZ¹ + sᵀZ²`.
    #[serde(with = "rational::wire_vec")]
    pub combined: Vec<Rational>,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        [
            &self.a_product_identity,
            &self.b_nonnegative,
            &self.c_positive,
            &self.d_positive,
            &self.sign_constraints,
            &self.z_matrix_z1,
            &self.z_matrix_z2,
        ]
        .iter()
        .all(|c| c.holds)
    }
}

fn vector_check(v: &[Rational], bad: impl Fn(&Rational) -> bool) -> ConditionCheck {
    ConditionCheck::from_violations(v.iter().enumerate().filter(|(_, x)| bad(x)).map(|(j, x)| Witness {
        row: None,
        col: j,
        value: x.clone(),
    }))
}

fn z_matrix_check(m: &Matrix) -> ConditionCheck {
    ConditionCheck::from_violations(
        m.triplets()
            .filter(|(i, j, v)| i != j && v.is_positive())
            .map(|(i, j, v)| Witness {
                row: Some(i),
                col: j,
                value: v.clone(),
            }),
    )
}

pub fn check_conditions(inst: &LcpInstance, cert: &MangasarianCertificate) -> Result<ConditionReport, LcpError> {
    let d = inst.dimension();
    for found in [
        cert.z1.rows(),
        cert.z1.cols(),
        cert.z2.rows(),
        cert.z2.cols(),
        cert.r.len(),
        cert.s.len(),
        cert.c.len(),
        inst.q.len(),
    ] {
        if found != d {
            return Err(LcpError::DimensionMismatch { expected: d, found });
        }
    }

    let product = inst.matrix.mul(&cert.z1);
    let mut residuals = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let rhs = &cert.z2[(i, j)] + &inst.q[i] * &cert.c[j];
            let diff = &product[(i, j)] - rhs;
            if !diff.is_zero() {
                residuals.push(Witness {
                    row: Some(i),
                    col: j,
                    value: diff,
                });
            }
        }
    }
    let a = ConditionCheck::from_violations(residuals.into_iter());

    let combined: Vec<Rational> = cert
        .z1
        .vec_mul(&cert.r)
        .into_iter()
        .zip(cert.z2.vec_mul(&cert.s))
        .map(|(x, y)| x + y)
        .collect();
    let b = vector_check(&combined, |x| x.is_negative());
    let with_c: Vec<Rational> = combined.iter().zip(&cert.c).map(|(x, c)| x + c).collect();
    let c = vector_check(&with_c, |x| !x.is_positive());
    let r_plus_s: Vec<Rational> = cert.r.iter().zip(&cert.s).map(|(r, s)| r + s).collect();
    let dd = vector_check(&r_plus_s, |x| !x.is_positive());
    let signs: Vec<Rational> = cert.c.iter().chain(&cert.r).chain(&cert.s).cloned().collect();
    let sign_constraints = vector_check(&signs, |x| x.is_negative());

    Ok(ConditionReport {
        a_product_identity: a,
        b_nonnegative: b,
        c_positive: c,
        d_positive: dd,
        sign_constraints,
        z_matrix_z1: z_matrix_check(&cert.z1),
        z_matrix_z2: z_matrix_check(&cert.z2),
        combined,
    })
}

/// `u ≥ 0`, `Mu + q ≥ 0` and `uᵀ(Mu + q) = 0`, exactly.
pub fn verify_complementarity(inst: &LcpInstance, u: &[Rational]) -> Result<bool, LcpError> {
    if u.len() != inst.dimension() {
        return Err(LcpError::DimensionMismatch {
            expected: inst.dimension(),
            found: u.len(),
        });
    }
    Ok(lcp_solves(&inst.matrix, &inst.q, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::{encode_clauses, partition_clauses};
    use crate::formula::Clause;
    use crate::reduce::ThreeSatFormula;

    fn system(n: usize, clauses: &[&[i64]]) -> InequalitySystem {
        let f = ThreeSatFormula::new(n, clauses.iter().map(|c| Clause::from_dimacs(c)).collect(), n).unwrap();
        encode_clauses(&f).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn basic_lcp_single_clause() {
        let inst = build_basic_lcp(&system(3, &[&[1, 2, 3]]));
        let expected = Matrix::from_i64_rows(&[
            vec![-1, 0, 0, 0],
            vec![0, -1, 0, 0],
            vec![0, 0, -1, 0],
            vec![1, 1, 1, 0],
        ]);
        assert_eq!(inst.matrix, expected);
        assert_eq!(inst.q, ints(&[1, 1, 1, -1]));
    }

    #[test]
    fn basic_lcp_binary_search() {
        let inst = build_basic_lcp(&system(3, &[&[1, 2, 3]]));
        assert_eq!(
            lcp_has_binary_solution(&inst, DEFAULT_LCP_CAP).unwrap(),
            Some(vec![true, false, false])
        );
        let empty = build_basic_lcp(&system(2, &[]));
        assert_eq!(
            lcp_has_binary_solution(&empty, DEFAULT_LCP_CAP).unwrap(),
            Some(vec![false, false])
        );
        assert_eq!(
            lcp_has_binary_solution(&inst, 2),
            Err(LcpError::CapExceeded { num_vars: 3, cap: 2 })
        );
    }

    #[test]
    fn basic_lcp_contradiction_has_no_binary_solution() {
        use crate::formula::CnfFormula;
        use crate::reduce::reduce_to_3sat;
        let f = CnfFormula::from_dimacs_clauses(1, &[&[1], &[-1]]);
        let (t, _) = reduce_to_3sat(&f).unwrap();
        let inst = build_basic_lcp(&encode_clauses(&t).unwrap());
        assert_eq!(lcp_has_binary_solution(&inst, DEFAULT_LCP_CAP).unwrap(), None);
    }

    #[test]
    fn auxiliary_single_positive_clause() {
        let aux = compute_auxiliary(&system(3, &[&[1, 2, 3]]));
        assert_eq!(aux.g, vec![1, 1, 1]);
        assert_eq!(aux.v, vec![0, 0, 0]);
        assert_eq!(aux.p, vec![vec![0, 0, 0]]);
        assert_eq!(aux.h, vec![1, 1, 1]);
        assert_eq!(aux.w, vec![1, 1, 1]);
    }

    #[test]
    fn auxiliary_opposed_clauses() {
        let aux = compute_auxiliary(&system(3, &[&[1, 2, 3], &[-1, -2, -3]]));
        assert_eq!(aux.g, vec![0, 0, 0]);
        assert_eq!(aux.v, vec![0, 0, 0]);
        assert_eq!(aux.p, vec![vec![0, 0, 0], vec![-1, -1, -1]]);
        assert_eq!(aux.h, vec![1, 1, 1]);
        assert_eq!(aux.w, vec![1, 1, 1]);
    }

    #[test]
    fn auxiliary_negative_column_sum() {
        let aux = compute_auxiliary(&system(4, &[&[-1, -2, 3], &[-1, 2, -4], &[1, 2, 3]]));
        assert_eq!(aux.g, vec![-1, 1, 2, -1]);
        assert_eq!(aux.v, vec![1, 0, 0, 1]);
        // positives per column: 1, 2, 2, 0
        assert_eq!(aux.h, vec![2, 2, 2, 1]);
    }

    fn opposed_instance() -> (InequalitySystem, LcpInstance, AuxiliaryVectors) {
        let sys = system(3, &[&[1, 2, 3], &[-1, -2, -3]]);
        let part = partition_clauses(&sys).unwrap();
        let aux = compute_auxiliary(&sys);
        let inst = assemble_extended_lcp(&sys, &part, &aux).unwrap();
        (sys, inst, aux)
    }

    #[test]
    fn extended_layout() {
        let (_, inst, _) = opposed_instance();
        assert_eq!(inst.dimension(), 7);
        assert_eq!(inst.q, ints(&[1, 1, 1, -1, 2, 0, 0]));
        let expected = Matrix::from_i64_rows(&[
            vec![-1, 0, 0, 0, 0, 0, 0],
            vec![0, -1, 0, 0, 0, 0, 0],
            vec![0, 0, -1, 0, 0, 0, 0],
            vec![1, 1, 1, 1, 0, 0, 0],
            vec![-1, -1, -1, 0, 1, 0, 0],
            vec![0, 0, 0, 0, 0, 1, 0],
            vec![1, 1, 1, 0, 0, 0, 1],
        ]);
        assert_eq!(inst.matrix, expected);
    }

    #[test]
    fn extended_rows_grouped_by_block() {
        // clause order R, Q, L, K -> block order K, L, Q, R
        let sys = system(3, &[&[1, 2, -3], &[1, -2, -3], &[-1, -2, -3], &[1, 2, 3]]);
        let part = partition_clauses(&sys).unwrap();
        let aux = compute_auxiliary(&sys);
        let inst = assemble_extended_lcp(&sys, &part, &aux).unwrap();
        assert_eq!(inst.row_order, vec![3, 2, 1, 0]);
        assert_eq!(inst.q[3..7], ints(&[-1, 2, 1, 0])[..]);
        for i in 0..3 {
            for j in 3..inst.dimension() {
                assert!(inst.matrix[(i, j)].is_zero());
            }
        }
        assert_eq!(inst.matrix[(7, 7)], int(1));
        assert_eq!(inst.matrix[(8, 8)], int(1));
    }

    #[test]
    fn trivial_partition_refused() {
        let sys = system(3, &[&[1, 2, 3]]);
        let part = partition_clauses(&sys).unwrap();
        let aux = compute_auxiliary(&sys);
        assert_eq!(assemble_extended_lcp(&sys, &part, &aux), Err(LcpError::TrivialInstance));
    }

    #[test]
    fn certificate_blocks() {
        let (sys, inst, aux) = opposed_instance();
        let cert = build_certificate(&inst, &aux);
        let n = 3;
        for i in 0..n {
            for j in 0..n {
                assert_eq!(cert.z2[(i, j)], int(if i == j { 1 } else { 0 }));
            }
        }
        for (offset, &clause) in inst.row_order.iter().enumerate() {
            let c = sys.dense_row(clause);
            for (j, &cj) in c.iter().enumerate().take(n) {
                let expected = -cj + cj.min(0);
                assert_eq!(cert.z2[(n + offset, j)], int(expected));
                assert!(expected <= 0);
            }
        }
        // s_N = e + g − eᵀP + v = 1 + 0 + 1 + 0
        assert_eq!(cert.s, ints(&[2, 2, 2, 1, 1, 1, 1]));
        assert!(cert.s[..n].iter().all(|x| x >= &int(1)));
    }

    #[test]
    fn conditions_on_opposed_instance() {
        let (_, inst, aux) = opposed_instance();
        let cert = build_certificate(&inst, &aux);
        let rep = check_conditions(&inst, &cert).unwrap();
        assert!(rep.a_product_identity.holds);
        assert!(rep.d_positive.holds);
        assert!(rep.z_matrix_z1.holds && rep.z_matrix_z2.holds);
        // Column j ≤ N of sᵀZ² is 1 − (positives_j + v_j) = 0 here.
        assert_eq!(rep.combined, ints(&[0, 0, 0, 1, 1, 1, 1]));
        assert!(rep.b_nonnegative.holds);
        assert!(!rep.c_positive.holds);
        assert_eq!(rep.c_positive.violations, 3);
    }

    #[test]
    fn tampered_certificate_fails_product_identity() {
        let (_, inst, aux) = opposed_instance();
        let mut cert = build_certificate(&inst, &aux);
        cert.z2[(3, 0)] = int(5);
        let rep = check_conditions(&inst, &cert).unwrap();
        assert!(!rep.a_product_identity.holds);
        assert_eq!(
            rep.a_product_identity.witness,
            Some(Witness {
                row: Some(3),
                col: 0,
                value: int(-6)
            })
        );
        assert!(!rep.z_matrix_z2.holds);
        cert.s.pop();
        assert!(matches!(
            check_conditions(&inst, &cert),
            Err(LcpError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn complementarity_examples() {
        let (_, inst, _) = opposed_instance();
        let zero = vec![Rational::zero(); 7];
        // q has −1 in the K block, so u = 0 is infeasible.
        assert!(!verify_complementarity(&inst, &zero).unwrap());
        // x = (1,0,0): K row 1−1 = 0, L row −1+2 = 1, x rows (0,1,1), v 0, w 1; all complementary.
        let u = ints(&[1, 0, 0, 0, 0, 0, 0]);
        assert!(verify_complementarity(&inst, &u).unwrap());
        assert!(inst.is_feasible(&inst.reference_feasible_point()));
        assert!(verify_complementarity(&inst, &zero[..3]).is_err());
    }

    #[test]
    fn zero_is_complementary_when_q_nonnegative() {
        let inst = build_basic_lcp(&system(3, &[&[-1, 2, 3]]));
        let zero = vec![Rational::zero(); 4];
        assert!(lcp_solves(&inst.matrix, &inst.q, &zero));
    }
}
