//! Design parameters computed from recurrences, without enumeration.
//!
//! * b_k, the number of zero-sum k-subsets of F_{2^m}^* (the weight-k
//!   codewords of the length 2^m − 1 Hamming code), from
//!   (k+1)b_{k+1} + b_k + (v−k+1)b_{k−1} = C(v, k).
//! * r_k from r_{k+1} = b_k − r_k + δ_k·C(2^{m−1}−1, k/2).
//! * λ_k from λ_{k+1} = (2^m−k−1)λ_k/(k−1) + δ_k·C(2^{m−1}−2, k/2−1).
//! * λ'_k from λ'_{k+1} = (2^{m+1}−2k−2)λ'_k/(k−1) + δ_k·2^{k−2}·C(2^{m−1}−2, k/2−1),
//!   checked against λ'_k = 2^{k−3}λ_k.
//!
//! Here δ_k is 0 for odd k, +1 for k ≡ 2 and −1 for k ≡ 0 (mod 4). All
//! arithmetic is exact; every division asserts a zero remainder first.
//! Sequences are indexed by k; the boundary entry at k = 2^m − 3 is stored as
//! zero by definition rather than produced by a recurrence step.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{DesignError, Result};
use crate::field::BinaryField;

/// C(n, r) as an exact integer; zero when r > n.
pub fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut c = BigInt::one();
    for t in 0..r {
        c *= n - t;
        c /= t + 1;
    }
    c
}

fn exact_div(numerator: BigInt, denominator: impl Into<BigInt>, what: &str) -> Result<BigInt> {
    let denominator = denominator.into();
    let (q, rem) = numerator.div_rem(&denominator);
    if !rem.is_zero() {
        return Err(DesignError::Consistency(format!(
            "{what}: {numerator} is not divisible by {denominator}"
        )));
    }
    Ok(q)
}

fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// cos(kπ/2) as an exact integer: 1, 0, −1, 0 for k ≡ 0, 1, 2, 3 (mod 4).
pub fn cos_half_pi(k: u64) -> i32 {
    match k % 4 {
        0 => 1,
        2 => -1,
        _ => 0,
    }
}

fn field(m: u32) -> Result<BinaryField> {
    BinaryField::new(m)
}

/// b_0, …, b_{k_max} for v = 2^m − 1, with b_0 = 1 and b_1 = b_2 = 0.
pub fn hamming_b(m: u32, k_max: u64) -> Result<Vec<BigInt>> {
    let v = u64::from(field(m)?.nonzero_count());
    if k_max > v {
        return Err(DesignError::Range {
            what: "k_max",
            value: k_max,
            min: 0,
            max: v,
        });
    }
    let mut b = vec![BigInt::one(), BigInt::zero(), BigInt::zero()];
    // C(v, k), advanced alongside k
    let mut choose = binomial(v, 2);
    for k in 2..k_max {
        let rhs = &choose - &b[k as usize] - (v - k + 1) * &b[k as usize - 1];
        b.push(exact_div(rhs, k + 1, "Hamming weight recursion")?);
        choose = choose * (v - k) / (k + 1);
    }
    b.truncate(k_max as usize + 1);
    Ok(b)
}

fn top_k(m: u32) -> u64 {
    (1u64 << m) - 3
}

/// r_k for k = 0..=2^m − 3 (entries below k = 3 are zero).
pub fn r_recurrence(m: u32) -> Result<Vec<BigInt>> {
    let top = top_k(field(m)?.exponent());
    let b = hamming_b(m, top)?;
    let half = (1u64 << (m - 1)) - 1;
    let mut r = vec![BigInt::zero(); top as usize + 1];
    r[3] = BigInt::from((1u64 << m) - 2) / 2;
    for k in 3..top - 1 {
        let correction = BigInt::from(cos_half_pi(k)) * binomial(half, k / 2);
        let next = &b[k as usize] - &r[k as usize] - correction;
        r[k as usize + 1] = next;
    }
    r[top as usize] = BigInt::zero();
    Ok(r)
}

/// λ_{k+1} from λ_k, one case per residue of k mod 4.
pub fn lambda_step(lambda_k: &BigInt, k: u64, m: u32) -> Result<BigInt> {
    let q = 1u64 << m;
    let base = exact_div(lambda_k * (q - k - 1), k - 1, "lambda recurrence")?;
    let correction = || binomial(q / 2 - 2, k / 2 - 1);
    Ok(match k % 4 {
        1 | 3 => base,
        2 => base + correction(),
        _ => base - correction(),
    })
}

/// λ_{k+1} from λ_k through the single formula with the cosine factor.
pub fn unified_lambda_step(lambda_k: &BigInt, k: u64, m: u32) -> Result<BigInt> {
    let q = 1u64 << m;
    let base = exact_div(lambda_k * (q - k - 1), k - 1, "lambda recurrence")?;
    Ok(base - BigInt::from(cos_half_pi(k)) * binomial(q / 2 - 2, (k - 2) / 2))
}

/// λ_k for k = 0..=2^m − 3 (entries below k = 3 are zero), seeded by λ_3 = 1.
pub fn lambda_recurrence(m: u32) -> Result<Vec<BigInt>> {
    let top = top_k(field(m)?.exponent());
    let mut lambda = vec![BigInt::zero(); top as usize + 1];
    lambda[3] = BigInt::one();
    for k in 3..top - 1 {
        lambda[k as usize + 1] = lambda_step(&lambda[k as usize], k, m)?;
    }
    lambda[top as usize] = BigInt::zero();
    Ok(lambda)
}

/// λ'_k for k = 0..=2^m − 3, from its own recurrence seeded by λ'_3 = 1.
/// Every entry is checked against 2^{k−3}·λ_k.
pub fn lambda_prime_recurrence(m: u32) -> Result<Vec<BigInt>> {
    let lambda = lambda_recurrence(m)?;
    let top = top_k(field(m)?.exponent());
    let q = 1u64 << m;
    let mut prime = vec![BigInt::zero(); top as usize + 1];
    prime[3] = BigInt::one();
    for k in 3..top - 1 {
        let base = exact_div(
            &prime[k as usize] * (2 * q - 2 * k - 2),
            k - 1,
            "lambda' recurrence",
        )?;
        let correction = BigInt::from(cos_half_pi(k)) * pow2(k - 2) * binomial(q / 2 - 2, (k - 2) / 2);
        prime[k as usize + 1] = base - correction;
    }
    prime[top as usize] = BigInt::zero();
    for k in 3..top {
        let lifted = pow2(k - 3) * &lambda[k as usize];
        if prime[k as usize] != lifted {
            return Err(DesignError::Consistency(format!(
                "lambda'_{k} = {} but 2^{}·lambda_{k} = {lifted}",
                prime[k as usize],
                k - 3
            )));
        }
    }
    Ok(prime)
}

/// One row of a [`ParamTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamRow {
    pub k: u64,
    pub b: BigInt,
    pub r: BigInt,
    pub lambda: BigInt,
    pub lambda_prime: BigInt,
}

/// b_k, r_k, λ_k, λ'_k for k = 2..=2^m − 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamTable {
    pub m: u32,
    pub rows: Vec<ParamRow>,
}

impl ParamTable {
    /// Runs every recurrence and checks r_k(k−1) = λ_k(2^m − 2) and
    /// b_k·k = (2^m − 1)·r_k on the rows where the design exists.
    pub fn compute(m: u32) -> Result<Self> {
        let top = top_k(field(m)?.exponent());
        let b = hamming_b(m, top)?;
        let r = r_recurrence(m)?;
        let lambda = lambda_recurrence(m)?;
        let prime = lambda_prime_recurrence(m)?;
        let v = (1u64 << m) - 1;
        let rows: Vec<ParamRow> = (2..=top)
            .map(|k| ParamRow {
                k,
                b: b[k as usize].clone(),
                r: r[k as usize].clone(),
                lambda: lambda[k as usize].clone(),
                lambda_prime: prime[k as usize].clone(),
            })
            .collect();
        for row in &rows {
            if [&row.b, &row.r, &row.lambda, &row.lambda_prime]
                .iter()
                .any(|x| x.is_negative())
            {
                return Err(DesignError::Consistency(format!("negative entry at k = {}", row.k)));
            }
            if row.k < 3 || row.k > top - 1 {
                continue;
            }
            if &row.r * (row.k - 1) != &row.lambda * (v - 1) {
                return Err(DesignError::Consistency(format!(
                    "r(k-1) != lambda(v-1) at k = {}",
                    row.k
                )));
            }
            if &row.b * row.k != &row.r * v {
                return Err(DesignError::Consistency(format!("bk != vr at k = {}", row.k)));
            }
        }
        Ok(ParamTable { m, rows })
    }

    pub fn row(&self, k: u64) -> Option<&ParamRow> {
        self.rows.iter().find(|r| r.k == k)
    }
}

fn closed_form_range(m: u32, k: u64) -> Result<()> {
    if !(3..=7).contains(&k) {
        return Err(DesignError::Range {
            what: "closed-form k",
            value: k,
            min: 3,
            max: 7,
        });
    }
    if k >= 5 && m < 4 {
        return Err(DesignError::Range {
            what: "closed-form m",
            value: m.into(),
            min: 4,
            max: 16,
        });
    }
    field(m).map(|_| ())
}

/// λ_k from the tabulated closed forms, 3 ≤ k ≤ 7 (m ≥ 4 for k ≥ 5).
pub fn closed_form_lambda(m: u32, k: u64) -> Result<BigInt> {
    closed_form_range(m, k)?;
    let q = BigInt::from(1u64 << m);
    let f = |c: i64| &q - c;
    let (num, den) = match k {
        3 => (BigInt::one(), 1),
        4 => (f(4), 2),
        5 => (f(4) * f(8), 6),
        6 => (f(4) * f(6) * f(8), 24),
        _ => (f(4) * f(6) * (&q * &q - 15 * &q + 71), 120),
    };
    exact_div(num, den, "closed-form lambda")
}

/// λ'_k from the tabulated closed forms in F_{2^{m+1}}, 3 ≤ k ≤ 7.
pub fn closed_form_lambda_prime(m: u32, k: u64) -> Result<BigInt> {
    closed_form_range(m, k)?;
    let big = BigInt::from(2u64 << m);
    let f = |c: i64| &big - c;
    let (num, den) = match k {
        3 => (BigInt::one(), 1),
        4 => (f(8), 2),
        5 => (f(8) * f(16), 6),
        6 => (f(8) * f(12) * f(16), 24),
        _ => (f(8) * f(12) * (&big * &big - 30 * &big + 284), 120),
    };
    exact_div(num, den, "closed-form lambda'")
}

/// The earlier construction's balance parameter, ∏_{i=3}^{k−1}(2^m − 2^i)/(k−2)!,
/// kept as a comparison column only. It is zero once k > m and is not a
/// parameter of any design built here.
pub fn prior_work_lambda(m: u32, k: u64) -> Result<BigInt> {
    if !(3..=7).contains(&k) {
        return Err(DesignError::Range {
            what: "reference k",
            value: k,
            min: 3,
            max: 7,
        });
    }
    field(m)?;
    let q = BigInt::from(1u64 << m);
    let num: BigInt = (3..k).map(|i| &q - pow2(i)).product();
    let den: BigInt = (1..=k - 2).map(BigInt::from).product();
    exact_div(num, den, "reference lambda")
}

/// The closed forms for one k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormRow {
    pub k: u64,
    pub lambda: BigInt,
    pub lambda_prime: BigInt,
    pub prior_work_lambda: BigInt,
}

/// Closed-form λ_k, λ'_k and the reference column for k = 3..=7; needs m ≥ 4.
pub fn closed_forms(m: u32) -> Result<Vec<ClosedFormRow>> {
    (3..=7)
        .map(|k| {
            Ok(ClosedFormRow {
                k,
                lambda: closed_form_lambda(m, k)?,
                lambda_prime: closed_form_lambda_prime(m, k)?,
                prior_work_lambda: prior_work_lambda(m, k)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().copied().map(BigInt::from).collect()
    }

    #[test]
    fn hamming_small() {
        assert_eq!(hamming_b(3, 7).unwrap(), ints(&[1, 0, 0, 7, 7, 0, 0, 1]));
        let b4 = hamming_b(4, 15).unwrap();
        assert_eq!(b4[3], BigInt::from(35));
        assert_eq!(b4[4], BigInt::from(105));
        assert!(hamming_b(3, 8).is_err());
        assert_eq!(hamming_b(3, 1).unwrap(), ints(&[1, 0]));
    }

    #[test]
    fn r_small() {
        let r = r_recurrence(3).unwrap();
        assert_eq!(r[3..].to_vec(), ints(&[3, 4, 0]));
        let r = r_recurrence(4).unwrap();
        assert_eq!(r[3], BigInt::from(7));
        assert_eq!(r[4], BigInt::from(28));
        assert_eq!(r[13], BigInt::zero());
    }

    #[test]
    fn lambda_values() {
        let l4 = lambda_recurrence(4).unwrap();
        assert_eq!(l4[3..=7].to_vec(), ints(&[1, 6, 16, 40, 87]));
        let l5 = lambda_recurrence(5).unwrap();
        assert_eq!(l5[4], BigInt::from(14));
        assert_eq!(l5[5], BigInt::from(112));
        let l3 = lambda_recurrence(3).unwrap();
        assert_eq!(l3[2..].to_vec(), ints(&[0, 1, 2, 0]));
    }

    #[test]
    fn lambda_prime_values() {
        assert_eq!(lambda_prime_recurrence(3).unwrap()[4], BigInt::from(4));
        let p4 = lambda_prime_recurrence(4).unwrap();
        assert_eq!(p4[4], BigInt::from(12));
        assert_eq!(p4[5], BigInt::from(64));
        assert_eq!(lambda_prime_recurrence(5).unwrap()[4], BigInt::from(28));
    }

    #[test]
    fn cosine_lookup() {
        assert_eq!([0, 1, 2, 3, 4, 5].map(cos_half_pi), [1, 0, -1, 0, 1, 0]);
    }

    #[test]
    fn unified_step_matches_cases() {
        // (m = 4, k = 4): 11·6/3 − C(6, 1)
        assert_eq!(
            unified_lambda_step(&BigInt::from(6), 4, 4).unwrap(),
            BigInt::from(16)
        );
        for m in 3..=8 {
            let lambda = lambda_recurrence(m).unwrap();
            for k in 3..(1u64 << m) - 4 {
                let l = &lambda[k as usize];
                assert_eq!(unified_lambda_step(l, k, m).unwrap(), lambda_step(l, k, m).unwrap());
            }
        }
    }

    #[test]
    fn last_step_lands_on_boundary_zero() {
        for m in 3..=8 {
            let top = (1u64 << m) - 3;
            let lambda = lambda_recurrence(m).unwrap();
            assert!(lambda_step(&lambda[top as usize - 1], top - 1, m).unwrap().is_zero());
        }
    }

    #[test]
    fn table_rows() {
        let t = ParamTable::compute(4).unwrap();
        assert_eq!(t.rows.first().unwrap().k, 2);
        assert_eq!(t.rows.last().unwrap().k, 13);
        let row2 = t.row(2).unwrap();
        assert!(row2.b.is_zero() && row2.r.is_zero() && row2.lambda.is_zero());
        let row4 = t.row(4).unwrap();
        assert_eq!(row4.lambda, BigInt::from(6));
        assert_eq!(row4.lambda_prime, BigInt::from(12));
        assert!(t.row(13).unwrap().lambda.is_zero());
        assert!(t.row(14).is_none());
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form_lambda(4, 7).unwrap(), BigInt::from(87));
        assert_eq!(closed_form_lambda(4, 6).unwrap(), BigInt::from(40));
        assert_eq!(closed_form_lambda_prime(4, 4).unwrap(), BigInt::from(12));
        assert_eq!(prior_work_lambda(4, 7).unwrap(), BigInt::zero());
        assert_eq!(prior_work_lambda(5, 5).unwrap(), BigInt::from(64));
        assert!(closed_form_lambda(3, 5).is_err());
        assert_eq!(closed_form_lambda(3, 4).unwrap(), BigInt::from(2));
        assert!(closed_form_lambda(4, 8).is_err());
        assert!(closed_forms(3).is_err());
        assert_eq!(closed_forms(4).unwrap().len(), 5);
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 7), BigInt::zero());
        assert_eq!(binomial(7, 0), BigInt::one());
        assert_eq!(binomial(31, 4), BigInt::from(31_465));
    }
}
