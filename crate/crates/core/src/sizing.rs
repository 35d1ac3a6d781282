//! Encoding-size accounting for the inequality system and the extended LCP,
//! reported next to the nominal size and operation-count bounds.
//!
//! Measured sizes follow two fixed conventions:
//!
//! * `size_of_system`: 2 bits per entry of `C` (values in {−1, 0, 1}) and of
//!   `b` (values in {−1, …, 2}), plus a header of `⌈log₂(N+1)⌉ + ⌈log₂(M+1)⌉`
//!   bits for the dimensions.
//! * `M`, `q` and the LP cost vector use the standard rational encoding
//!   length: a rational `p/q` costs `1 + ⌈log₂(|p|+1)⌉ + ⌈log₂(q+1)⌉` bits,
//!   a `r × c` matrix costs `r·c` plus the sum over its entries, and a
//!   vector of length `k` costs `k` plus the sum over its entries.
//!
//! The nominal bounds are pure functions of the original `n` and `m`.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::encode::InequalitySystem;
use crate::lcp::{LcpInstance, MangasarianCertificate};
use crate::lp::build_lp;
use crate::rational::{self, Matrix, Rational};

/// `⌈log₂(x + 1)⌉`, which is the bit length of `x`.
fn bits(x: u64) -> u64 {
    u64::from(u64::BITS - x.leading_zeros())
}

fn big_bits(x: &BigInt) -> u64 {
    x.magnitude().bits()
}

fn rational_size(r: &Rational) -> u64 {
    1 + big_bits(r.numer()) + big_bits(r.denom())
}

fn vector_size(v: &[Rational]) -> u64 {
    v.len() as u64 + v.iter().map(rational_size).sum::<u64>()
}

fn matrix_size(m: &Matrix) -> u64 {
    let zero_entries = (m.rows() * m.cols()) as u64 - m.triplets().count() as u64;
    // A zero costs 1 + 0 + 1 bits.
    (m.rows() * m.cols()) as u64 + 2 * zero_entries + m.triplets().map(|(_, _, v)| rational_size(v)).sum::<u64>()
}

/// Bits to encode `(C, b)` under the fixed 2-bit-per-entry convention.
pub fn size_of_system(sys: &InequalitySystem) -> u64 {
    let (n, m) = (sys.num_vars() as u64, sys.num_clauses() as u64);
    2 * n * m + 2 * m + bits(n) + bits(m)
}

/// `⌈(n + nm + 5)^3.5⌉ · size_c_b`, exactly: the 3.5 power is taken as the
/// ceiling square root of the integer 7th power.
pub fn operation_bound(n: u64, m: u64, size_c_b: u64) -> BigUint {
    let base = BigUint::from(n + n * m + 5);
    let seventh = base.pow(7);
    let mut root = seventh.sqrt();
    if &root * &root < seventh {
        root += BigUint::one();
    }
    root * BigUint::from(size_c_b)
}

mod biguint_string {
    use num_bigint::BigUint;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        String::deserialize(d)?.parse().map_err(de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeFlags {
    /// `nominal_lower ≤ measured_size_c_b ≤ nominal_upper`.
    pub c_b_within_nominal_range: bool,
    /// `measured_size_m_q_c ≤ nominal_bound_mqc`; absent for fast-path instances.
    pub m_q_c_within_nominal_bound: Option<bool>,
    /// `measured_size_m_q_c / measured_size_c_b ≤ ratio_bound`.
    pub ratio_within_bound: Option<bool>,
    pub nominal_lower_le_upper: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeReport {
    pub n: u64,
    pub m: u64,
    pub measured_size_c_b: u64,
    /// `3m(n+1)`.
    pub nominal_lower: u64,
    /// `3m(3n+4)`.
    pub nominal_upper: u64,
    pub measured_size_m_q_c: Option<u64>,
    /// `2(n + nm + 5)²`.
    pub nominal_bound_mqc: u64,
    /// `n + nm + 5`.
    pub ratio_bound: u64,
    #[serde(with = "rational::wire_opt")]
    pub measured_ratio: Option<Rational>,
    #[serde(with = "biguint_string")]
    pub operation_bound: BigUint,
    pub flags: SizeFlags,
}

/// Builds the size report for an original formula with `n` variables and
/// `m` clauses. `lcp` is absent when the fast path skipped assembly.
pub fn check_bounds(
    n: u64,
    m: u64,
    sys: &InequalitySystem,
    lcp: Option<(&LcpInstance, &MangasarianCertificate)>,
) -> SizeReport {
    let measured_c_b = size_of_system(sys);
    let nominal_lower = 3 * m * (n + 1);
    let nominal_upper = 3 * m * (3 * n + 4);
    let dim = n + n * m + 5;
    let nominal_bound_mqc = 2 * dim * dim;

    let measured_mqc = lcp.and_then(|(inst, cert)| {
        let lp = build_lp(inst, cert).ok()?;
        Some(matrix_size(&inst.matrix) + vector_size(&inst.q) + vector_size(&lp.cost))
    });
    let measured_ratio = measured_mqc
        .and_then(|mqc| (measured_c_b > 0).then(|| Rational::new(BigInt::from(mqc), BigInt::from(measured_c_b))));

    SizeReport {
        n,
        m,
        measured_size_c_b: measured_c_b,
        nominal_lower,
        nominal_upper,
        measured_size_m_q_c: measured_mqc,
        nominal_bound_mqc,
        ratio_bound: dim,
        operation_bound: operation_bound(n, m, measured_c_b),
        flags: SizeFlags {
            c_b_within_nominal_range: (nominal_lower..=nominal_upper).contains(&measured_c_b),
            m_q_c_within_nominal_bound: measured_mqc.map(|s| s <= nominal_bound_mqc),
            ratio_within_bound: measured_ratio
                .as_ref()
                .map(|r| r <= &Rational::from_integer(BigInt::from(dim))),
            nominal_lower_le_upper: nominal_lower <= nominal_upper,
        },
        measured_ratio,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::encode_clauses;
    use crate::formula::Clause;
    use crate::rational::int;
    use crate::reduce::ThreeSatFormula;
    use num_traits::Zero;

    fn system(n: usize, clauses: &[&[i64]]) -> InequalitySystem {
        let f = ThreeSatFormula::new(n, clauses.iter().map(|c| Clause::from_dimacs(c)).collect(), n).unwrap();
        encode_clauses(&f).unwrap()
    }

    #[test]
    fn system_size_examples() {
        assert_eq!(size_of_system(&system(3, &[&[1, 2, 3]])), 11);
        // m = 0: header only, ⌈log₂ 4⌉ + ⌈log₂ 1⌉
        assert_eq!(size_of_system(&system(3, &[])), 2);
        let one = system(4, &[&[1, 2, 3]]);
        let two = system(4, &[&[1, 2, 3], &[1, -2, 4]]);
        let header = |n: u64, m: u64| bits(n) + bits(m);
        assert_eq!(
            size_of_system(&two) - header(4, 2),
            2 * (size_of_system(&one) - header(4, 1))
        );
    }

    #[test]
    fn ceil_log2_plus_one() {
        for (x, expected) in [(0u64, 0u64), (1, 1), (2, 2), (3, 2), (4, 3), (7, 3), (8, 4)] {
            assert_eq!(bits(x), expected, "x = {x}");
        }
    }

    #[test]
    fn nominal_bounds_for_three_by_one() {
        let rep = check_bounds(3, 1, &system(3, &[&[1, 2, 3]]), None);
        assert_eq!(rep.nominal_lower, 12);
        assert_eq!(rep.nominal_upper, 39);
        assert_eq!(rep.nominal_bound_mqc, 242);
        assert_eq!(rep.ratio_bound, 11);
        assert!(rep.flags.nominal_lower_le_upper);
        assert!(!rep.flags.c_b_within_nominal_range);
        assert_eq!(rep.measured_size_m_q_c, None);
    }

    #[test]
    fn operation_bound_examples() {
        assert_eq!(operation_bound(0, 0, 1), BigUint::from(280u32));
        assert_eq!(operation_bound(0, 0, 0), BigUint::zero());
        // (3 + 3 + 5)^7 = 19487171, ⌈√·⌉ = 4415 (4414² = 19483396 < it ≤ 4415² = 19492225)
        assert_eq!(operation_bound(3, 1, 2), BigUint::from(2 * 4415u32));
        let mut prev = BigUint::zero();
        for n in 0..40 {
            let v = operation_bound(n, 3, 17);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn rational_sizes() {
        assert_eq!(rational_size(&int(0)), 2);
        assert_eq!(rational_size(&int(-1)), 3);
        assert_eq!(rational_size(&crate::rational::ratio(3, 4)), 1 + 2 + 3);
        let m = Matrix::from_i64_rows(&[vec![0, 1], vec![-1, 0]]);
        assert_eq!(matrix_size(&m), 4 + 2 + 3 + 3 + 2);
    }
}
