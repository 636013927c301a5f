//! Independent oracles shared by the integration tests. Nothing here calls
//! the search or certificate code it is used to check.

#![allow(dead_code)]

use std::collections::HashSet;

use vcone::{ConceptClass, Hypothesis};

/// VC dimension by scanning every subset of the domain as a bitmask.
pub fn brute_vc(class: &ConceptClass) -> usize {
    let n = class.n();
    assert!(n <= 16, "oracle is exponential in the domain size");
    let rows: Vec<u32> = class
        .hypotheses()
        .iter()
        .map(|h| (0..n).fold(0u32, |acc, i| acc | (h.get(i) as u32) << i))
        .collect();
    let mut best = 0;
    for mask in 0u32..1 << n {
        let k = mask.count_ones() as usize;
        if k <= best {
            continue;
        }
        let seen: HashSet<u32> = rows.iter().map(|r| r & mask).collect();
        if seen.len() == 1 << k {
            best = k;
        }
    }
    best
}

/// Number of distinct restrictions of `class` to the bitmask `mask`.
pub fn brute_pattern_count(class: &ConceptClass, mask: u32) -> usize {
    let n = class.n();
    class
        .hypotheses()
        .iter()
        .map(|h| (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| h.get(i)).collect::<Vec<_>>())
        .collect::<HashSet<_>>()
        .len()
}

/// Expected closed-segment error by enumerating all `N^m` rank sequences:
/// a sample whose top rank is `r` misses `N - r` of the `N` points.
pub fn brute_expected_error(n: u64, m: u32) -> (u128, u128) {
    let mut total: u128 = 0;
    let count = (n as u128).pow(m);
    let mut digits = vec![1u64; m as usize];
    loop {
        let top = *digits.iter().max().unwrap();
        total += (n - top) as u128;
        let mut i = 0;
        loop {
            if i == digits.len() {
                return (total, count * n as u128);
            }
            if digits[i] < n {
                digits[i] += 1;
                break;
            }
            digits[i] = 1;
            i += 1;
        }
    }
}

/// Parse `'0'/'1'` strings.
pub fn hyps(rows: &[&str]) -> Vec<Hypothesis> {
    rows.iter().map(|r| r.parse().unwrap()).collect()
}

pub fn class(rows: &[&str]) -> ConceptClass {
    ConceptClass::from_bit_strings(rows).unwrap()
}

/// Random class of VC dimension at most 1 on `n` points: principal
/// down-sets of the forest `parents`, XORed with `f`, plus `f` itself.
pub fn tree_class(parents: &[Option<usize>], tops: &[usize], f: &Hypothesis) -> ConceptClass {
    let n = parents.len();
    let mut hs = vec![f.clone()];
    for &x in tops {
        let mut down = vec![false; n];
        let mut cur = Some(x);
        while let Some(c) = cur {
            down[c] = true;
            cur = parents[c];
        }
        hs.push(Hypothesis::from_fn(n, |i| f.get(i) ^ down[i]));
    }
    ConceptClass::new(vcone::Domain::numbered(n).unwrap(), hs).unwrap()
}
