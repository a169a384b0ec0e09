//! Enumerators checked against brute-force filters over every k-subset.
//!
//! The oracle never uses the prefix search or last-slot lookup: it walks all
//! combinations of the ground set and tests each family predicate with plain
//! set operations.

use std::collections::BTreeSet;

use design_forge::blocks::{enumerate_ijl, enumerate_u, enumerate_w, enumerate_w_pair, groups_u2};
use design_forge::params::binomial;
use design_forge::{BlockFamily, FieldElement};
use itertools::Itertools;
use num_bigint::BigInt;

fn fe(v: u32) -> FieldElement {
    FieldElement::new(v)
}

fn xor(set: &[u32]) -> u32 {
    set.iter().fold(0, |a, &x| a ^ x)
}

fn shifted(set: &[u32], alpha: u32) -> BTreeSet<u32> {
    set.iter().map(|&x| x ^ alpha).collect()
}

fn brute(ground: impl Iterator<Item = u32>, k: usize, keep: impl Fn(&[u32]) -> bool) -> Vec<Vec<u32>> {
    ground.combinations(k).filter(|c| keep(c)).collect()
}

fn listed(family: &BlockFamily) -> Vec<Vec<u32>> {
    family
        .blocks()
        .iter()
        .map(|b| b.values().collect())
        .collect()
}

#[test]
fn zero_sum_families_match_brute_force() {
    for m in 3..=4u32 {
        let q = 1u32 << m;
        for k in 3..=(q as usize - 4) {
            let expected = brute(1..q, k, |c| xor(c) == 0);
            assert_eq!(listed(&enumerate_w(m, k).unwrap()), expected, "m={m} k={k}");
        }
    }
}

#[test]
fn frozen_zero_sum_counts() {
    // brute-force counts for m = 4, k = 0..15
    let frozen = [1, 0, 0, 35, 105, 168, 280, 435, 435, 280, 168, 105, 35, 0, 0, 1];
    for (k, &count) in frozen.iter().enumerate().take(13).skip(3) {
        assert_eq!(enumerate_w(4, k).unwrap().len(), count);
    }
    assert_eq!(enumerate_w(3, 4).unwrap().len(), 7);
}

#[test]
fn pair_families_match_brute_force() {
    for (i, j) in [(1, 2), (3, 7), (5, 10), (15, 14)] {
        for k in 3..=7 {
            let expected = brute(1..16, k, |c| xor(c) == 0 && c.contains(&i) && c.contains(&j));
            let got = enumerate_w_pair(4, k, fe(i), fe(j)).unwrap();
            assert_eq!(listed(&got), expected, "i={i} j={j} k={k}");
        }
    }
}

#[test]
fn ijl_families_match_brute_force_and_case_formula() {
    for m in 3..=4u32 {
        let q = 1u32 << m;
        let cosets_outside = u64::from(q / 2 - 1);
        for alpha in 1..q {
            for k in 2..=(q as usize - 2) {
                let ground = || (1..q).filter(move |&x| x != alpha);
                let i_exp = brute(ground(), k, |c| xor(c) == alpha);
                let j_exp = brute(ground(), k, |c| xor(c) == 0);
                let l_exp = brute(1..q, k, |c| shifted(c, alpha) == c.iter().copied().collect());
                let (i, j, l) = enumerate_ijl(m, k, fe(alpha)).unwrap();
                assert_eq!(listed(&i), i_exp);
                assert_eq!(listed(&j), j_exp);
                assert_eq!(listed(&l), l_exp);

                let (ni, nj) = (BigInt::from(i.len()), BigInt::from(j.len()));
                let correction = binomial(cosets_outside, k as u64 / 2);
                match k % 4 {
                    1 | 3 => assert_eq!(ni, nj),
                    2 => assert_eq!(ni, nj + correction),
                    _ => assert_eq!(ni, nj - correction),
                }
                if k % 2 == 0 {
                    assert_eq!(BigInt::from(l.len()), binomial(cosets_outside, k as u64 / 2));
                }
            }
        }
    }
}

#[test]
fn frozen_ijl_counts() {
    let (i, j, l) = enumerate_ijl(3, 2, fe(1)).unwrap();
    assert_eq!((i.len(), j.len(), l.len()), (3, 0, 3));
    let (i, j, l) = enumerate_ijl(4, 4, fe(5)).unwrap();
    assert_eq!((i.len(), j.len(), l.len()), (56, 77, 21));
}

#[test]
fn lifted_families_match_brute_force() {
    let cases: &[(u32, &[u32], &[usize])] = &[(3, &[1, 2, 6, 9, 15], &[3, 4]), (4, &[1, 17, 31], &[3, 4])];
    for &(m, alphas, ks) in cases {
        let q = 2u32 << m;
        for &alpha in alphas {
            for &k in ks {
                let expected = brute((1..q).filter(|&x| x != alpha), k, |c| {
                    xor(c) == alpha && shifted(c, alpha).is_disjoint(&c.iter().copied().collect())
                });
                let got = enumerate_u(m, k, fe(alpha)).unwrap();
                assert_eq!(listed(&got), expected, "m={m} alpha={alpha} k={k}");
            }
        }
    }
    assert_eq!(enumerate_u(3, 3, fe(1)).unwrap().len(), 28);
}

#[test]
fn groups_match_brute_force() {
    for alpha in 1..32u32 {
        let expected = brute((1..32).filter(|&x| x != alpha), 2, |c| c[0] ^ c[1] == alpha);
        assert_eq!(listed(&groups_u2(4, fe(alpha)).unwrap()), expected);
    }
}
