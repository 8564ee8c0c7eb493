//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use cayleyrank::paren::eval_parenthesized;
use cayleyrank::{CayleyTable, ElementSequence, Parenthesization};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Naive fixpoint: add every product of two members until nothing changes.
pub fn naive_closure(t: &CayleyTable, s: &[usize]) -> Vec<bool> {
    let n = t.order();
    let mut inside = vec![false; n];
    for &x in s {
        inside[x] = true;
    }
    loop {
        let mut next = inside.clone();
        for x in 0..n {
            for y in 0..n {
                if inside[x] && inside[y] {
                    next[t.op(x, y)] = true;
                }
            }
        }
        if next == inside {
            return inside;
        }
        inside = next;
    }
}

pub fn naive_generates(t: &CayleyTable, s: &[usize]) -> bool {
    naive_closure(t, s).iter().all(|&b| b)
}

pub fn mask_elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Minimum generating-set size over all subsets of every size.
pub fn naive_rank(t: &CayleyTable) -> usize {
    let n = t.order();
    (0..1u64 << n)
        .filter(|&m| naive_generates(t, &mask_elements(m)))
        .map(|m| m.count_ones() as usize)
        .min()
        .expect("the full set generates")
}

/// Values of every parenthesized product of every sequence over `s` with
/// at most `max_len` leaves.
pub fn explicit_products(t: &CayleyTable, s: &[usize], max_len: usize) -> Vec<bool> {
    let n = t.order();
    let mut hit = vec![false; n];
    for len in 1..=max_len {
        let trees = Parenthesization::all(len);
        let total = s.len().pow(len as u32);
        for mut i in 0..total {
            let mut seq = Vec::with_capacity(len);
            for _ in 0..len {
                seq.push(s[i % s.len()]);
                i /= s.len();
            }
            let seq = ElementSequence::new(seq, n).unwrap();
            for p in &trees {
                hit[eval_parenthesized(t, &seq, p).unwrap()] = true;
            }
        }
    }
    hit
}

/// Values reachable as products with at most `max_leaves` leaves, by leaf count.
pub fn leaf_count_products(t: &CayleyTable, s: &[usize], max_leaves: usize) -> Vec<bool> {
    let n = t.order();
    let mut by_len: Vec<Vec<bool>> = vec![vec![false; n]; max_leaves + 1];
    for &x in s {
        by_len[1][x] = true;
    }
    for len in 2..=max_leaves {
        let mut acc = vec![false; n];
        for a in 1..len {
            for x in (0..n).filter(|&x| by_len[a][x]) {
                for y in (0..n).filter(|&y| by_len[len - a][y]) {
                    acc[t.op(x, y)] = true;
                }
            }
        }
        by_len[len] = acc;
    }
    (0..n).map(|x| by_len.iter().any(|v| v[x])).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_subset(rng: &mut ChaCha8Rng, n: usize, max_size: usize) -> Vec<usize> {
    let size = rng.gen_range(0..=max_size.min(n));
    let mut out: Vec<usize> = (0..size).map(|_| rng.gen_range(0..n)).collect();
    out.sort_unstable();
    out.dedup();
    out
}
