//! Quasigroup isomorphism through cube generating sequences, with a
//! permutation search as the reference.
//!
//! Cube mode fixes one cube generating sequence `g` of `G` and looks for a
//! sequence `h` of the same length in `H` whose cube covers `H` and whose
//! cube products satisfy exactly the same relations
//! `P(g^ε) = P(g^η) · P(g^ν)` over all triples of cube indices. The map
//! `P(g^ε) ↦ P(h^ε)` is then an isomorphism; it is re-verified over all
//! `n²` pairs before being returned.

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::paren::{cube_table, eval_parenthesized, ElementSequence, Parenthesization};
use crate::rank::{ceil_log2, quasigroup_cube_rank, random_sequence, RankSearch, Witness};
use crate::seed::derive_seed;
use crate::table::CayleyTable;

const CHUNK: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub g: ElementSequence,
    pub h: ElementSequence,
    pub tree: Parenthesization,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum IsoVerdict {
    /// `map[x]` is the image in `H` of `x` in `G`.
    Isomorphic {
        map: Vec<usize>,
        certificate: Option<Certificate>,
    },
    NotIsomorphic { reason: String },
    Exhausted { candidates_examined: u64 },
}

impl IsoVerdict {
    pub fn answer(&self) -> Option<bool> {
        match self {
            IsoVerdict::Isomorphic { .. } => Some(true),
            IsoVerdict::NotIsomorphic { .. } => Some(false),
            IsoVerdict::Exhausted { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoMode {
    Cube,
    Brute,
}

/// How many candidate sequences to look at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tries {
    /// Every sequence, in lexicographic order.
    Exhaustive,
    /// This many seeded random sequences.
    Random(u64),
}

fn not_iso(reason: impl Into<String>) -> IsoVerdict {
    IsoVerdict::NotIsomorphic { reason: reason.into() }
}

/// Backtracking search over bijections, assigning images in element order
/// and checking every product whose three entries are already mapped.
pub fn brute_force_isomorphic(g: &CayleyTable, h: &CayleyTable, budget: &Budget) -> Result<IsoVerdict> {
    let n = g.order();
    if n != h.order() {
        return Ok(not_iso(format!("orders differ: {n} vs {}", h.order())));
    }
    if n > budget.brute_iso_max_order {
        return Err(Error::Budget {
            what: "order for permutation search",
            requested: n,
            limit: budget.brute_iso_max_order,
        });
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g, h, &mut map, &mut used, 0) {
        assert!(g.is_isomorphism(h, &map));
        return Ok(IsoVerdict::Isomorphic { map, certificate: None });
    }
    Ok(not_iso("no bijection preserves the operation"))
}

fn consistent(g: &CayleyTable, h: &CayleyTable, map: &[usize], x: usize) -> bool {
    // pairs involving x with both factors mapped
    for y in 0..=x {
        for (a, b) in [(x, y), (y, x)] {
            let p = g.op(a, b);
            if map[p] != usize::MAX && map[p] != h.op(map[a], map[b]) {
                return false;
            }
        }
    }
    // x as a product of already mapped factors
    for a in 0..x {
        for b in 0..x {
            if g.op(a, b) == x && map[x] != h.op(map[a], map[b]) {
                return false;
            }
        }
    }
    true
}

fn extend(g: &CayleyTable, h: &CayleyTable, map: &mut [usize], used: &mut [bool], x: usize) -> bool {
    let n = map.len();
    if x == n {
        return true;
    }
    for y in 0..n {
        if used[y] {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if consistent(g, h, map, x) && extend(g, h, map, used, x + 1) {
            return true;
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    false
}

fn sequence_at(mut index: usize, n: usize, len: usize) -> ElementSequence {
    let mut digits = vec![0; len];
    for d in digits.iter_mut().rev() {
        *d = index % n;
        index /= n;
    }
    ElementSequence::new_unchecked(digits)
}

fn covers(t: &CayleyTable, s: &ElementSequence, p: &Parenthesization, max_bits: usize) -> bool {
    crate::paren::cube_set_within(t, s, p, max_bits).map(|c| c.is_full()) == Ok(true)
}

/// A cube generating sequence of the given length under the balanced
/// parenthesization.
pub fn find_cube_generating_sequence(
    t: &CayleyTable,
    length: usize,
    tries: Tries,
    seed: u64,
    budget: &Budget,
) -> Result<Option<(ElementSequence, Parenthesization)>> {
    if !t.is_latin_square() {
        return Err(Error::NotQuasigroup);
    }
    if length == 0 {
        return Err(Error::InvalidArgument("sequence length must be positive".into()));
    }
    if length - 1 > budget.cube_bits {
        return Err(Error::Budget {
            what: "cube enumeration bits",
            requested: length - 1,
            limit: budget.cube_bits,
        });
    }
    let n = t.order();
    let tree = Parenthesization::balanced(length);
    if (1usize << (length - 1).min(63)) < n {
        return Ok(None);
    }
    let found = match tries {
        Tries::Random(count) => (0..count)
            .into_par_iter()
            .find_first(|&j| covers(t, &random_sequence(n, length, seed, j), &tree, usize::MAX))
            .map(|j| random_sequence(n, length, seed, j)),
        Tries::Exhaustive => {
            let total = (n as u64)
                .checked_pow(length as u32)
                .filter(|&c| c <= budget.nodes)
                .ok_or(Error::Budget {
                    what: "sequences for exhaustive enumeration",
                    requested: length,
                    limit: budget.nodes as usize,
                })? as usize;
            first_index(total, |i| covers(t, &sequence_at(i, n, length), &tree, usize::MAX))
                .map(|(i, _)| sequence_at(i, n, length))
        }
    };
    Ok(found.map(|s| (s, tree)))
}

/// First index in `0..total` satisfying `pred`, and how many were looked at.
fn first_index(total: usize, pred: impl Fn(usize) -> bool + Sync) -> Option<(usize, u64)> {
    let mut begin = 0;
    while begin < total {
        let end = (begin + CHUNK).min(total);
        if let Some(off) = (begin..end).into_par_iter().position_first(&pred) {
            return Some((begin + off, (begin + off + 1) as u64));
        }
        begin = end;
    }
    None
}

pub fn product_equality(
    t: &CayleyTable,
    s1: &ElementSequence,
    p1: &Parenthesization,
    s2: &ElementSequence,
    p2: &Parenthesization,
) -> Result<bool> {
    Ok(eval_parenthesized(t, s1, p1)? == eval_parenthesized(t, s2, p2)?)
}

/// Cheap invariants that settle non-isomorphism.
fn invariant_mismatch(g: &CayleyTable, h: &CayleyTable) -> Option<String> {
    if g.order() != h.order() {
        return Some(format!("orders differ: {} vs {}", g.order(), h.order()));
    }
    let (kg, kh) = (g.classify(), h.classify());
    if kg.associative != kh.associative {
        return Some("one table is associative and the other is not".into());
    }
    if kg.left_identities.len() != kh.left_identities.len() || kg.right_identities.len() != kh.right_identities.len() {
        return Some("identity structure differs".into());
    }
    None
}

/// Whether `ph` satisfies the same product relations as `pg` over every
/// triple of cube indices, and if so the induced map.
fn triple_check(g: &CayleyTable, h: &CayleyTable, pg: &[u32], ph: &[u32]) -> Option<Vec<usize>> {
    let m = pg.len();
    for e in 0..m {
        for a in 0..m {
            for b in 0..m {
                let lhs = pg[e] as usize == g.op(pg[a] as usize, pg[b] as usize);
                let rhs = ph[e] as usize == h.op(ph[a] as usize, ph[b] as usize);
                if lhs != rhs {
                    return None;
                }
            }
        }
    }
    let mut map = vec![usize::MAX; g.order()];
    for (&x, &y) in pg.iter().zip(ph) {
        let slot = &mut map[x as usize];
        if *slot != usize::MAX && *slot != y as usize {
            return None;
        }
        *slot = y as usize;
    }
    (g.is_isomorphism(h, &map)).then_some(map)
}

pub fn quasigroup_isomorphic(
    g: &CayleyTable,
    h: &CayleyTable,
    mode: IsoMode,
    tries: u64,
    seed: u64,
    budget: &Budget,
) -> Result<IsoVerdict> {
    if !g.is_latin_square() || !h.is_latin_square() {
        return Err(Error::NotQuasigroup);
    }
    if let Some(reason) = invariant_mismatch(g, h) {
        return Ok(not_iso(reason));
    }
    if mode == IsoMode::Brute {
        return brute_force_isomorphic(g, h, budget);
    }

    let n = g.order();
    let max_len = budget.iso_cube_bits + 1;
    let g_seq = match quasigroup_cube_rank(g, max_len, tries, seed, budget)? {
        RankSearch::Found(report) => match report.witness {
            Witness::Sequence { sequence, .. } => sequence,
            Witness::Set { .. } => unreachable!("cube rank reports carry sequences"),
        },
        RankSearch::NoneUpTo { .. } => {
            return Err(Error::Budget {
                what: "cube bits for the isomorphism triple check",
                requested: max_len,
                limit: budget.iso_cube_bits,
            })
        }
        RankSearch::Exhausted { candidates_examined, .. } => {
            return Ok(IsoVerdict::Exhausted { candidates_examined })
        }
    };
    let len = g_seq.len();
    debug_assert!(len > ceil_log2(n));
    let tree = Parenthesization::balanced(len);
    let pg = cube_table(g, &g_seq, &tree, budget.iso_cube_bits)?;

    let check = |h_seq: &ElementSequence| -> Option<Vec<usize>> {
        let ph = cube_table(h, h_seq, &tree, budget.iso_cube_bits).ok()?;
        let mut seen = vec![false; n];
        ph.iter().for_each(|&y| seen[y as usize] = true);
        if !seen.iter().all(|&b| b) {
            return None;
        }
        triple_check(g, h, &pg, &ph)
    };
    let accept = |h_seq: ElementSequence| {
        let map = check(&h_seq).expect("accepted candidate passes the check");
        assert!(g.is_isomorphism(h, &map), "cube-mode bijection failed re-verification");
        IsoVerdict::Isomorphic {
            map,
            certificate: Some(Certificate {
                g: g_seq.clone(),
                h: h_seq,
                tree: tree.clone(),
            }),
        }
    };

    let total = (n as u64).checked_pow(len as u32).filter(|&c| c <= budget.nodes);
    match total {
        Some(total) => {
            let total = total as usize;
            match first_index(total, |i| check(&sequence_at(i, n, len)).is_some()) {
                Some((i, _)) => Ok(accept(sequence_at(i, n, len))),
                None => Ok(not_iso("no image sequence reproduces the cube relations")),
            }
        }
        None => {
            let stream_seed = derive_seed(seed, u64::MAX, 0);
            match (0..tries)
                .into_par_iter()
                .find_first(|&j| check(&random_sequence(n, len, stream_seed, j)).is_some())
            {
                Some(j) => Ok(accept(random_sequence(n, len, stream_seed, j))),
                None => Ok(IsoVerdict::Exhausted { candidates_examined: tries }),
            }
        }
    }
}
