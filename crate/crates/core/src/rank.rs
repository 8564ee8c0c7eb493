//! Rank searches: minimum generating sets, cube generating sequences,
//! generalized rank, the rank of a generated submagma, and ring rank.
//!
//! Subsets are enumerated by size, then lexicographically; the first hit
//! wins. Candidates are tested in parallel chunks and the first hit by
//! position is kept, so results and `candidates_examined` (the position of
//! the hit in enumeration order) do not depend on the thread count.

use std::ops::RangeInclusive;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::membership::{closure, subring_closure};
use crate::paren::{cube_set_within, ElementSequence, Parenthesization};
use crate::ring::RingTable;
use crate::seed::derive_seed;
use crate::set::ElementSet;
use crate::table::CayleyTable;

const CHUNK: usize = 1 << 12;

/// Exhaustive cube-rank search is used up to this order.
pub const CUBE_EXHAUSTIVE_MAX_ORDER: usize = 16;

pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// The size bound used by log-bounded searches; at least 1 so that the
/// trivial structure (rank 1) is covered.
pub fn log_bound(n: usize) -> usize {
    ceil_log2(n).max(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    LogBounded,
    Randomized,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Set { elements: ElementSet },
    Sequence { sequence: ElementSequence, tree: Parenthesization },
}

impl Witness {
    pub fn size(&self) -> usize {
        match self {
            Witness::Set { elements } => elements.len(),
            Witness::Sequence { sequence, .. } => sequence.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    /// Sizes below this were excluded by the search.
    pub lower_bound: usize,
    pub witness: Witness,
    pub method: Method,
    pub candidates_examined: u64,
    pub exact: bool,
}

/// Outcome of a yes/no rank question.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Decision {
    Yes { witness: Witness, candidates_examined: u64 },
    No { candidates_examined: u64 },
    /// The budget ran out; every size below `lower_bound` was excluded.
    Exhausted { lower_bound: usize, candidates_examined: u64 },
}

impl Decision {
    pub fn answer(&self) -> Option<bool> {
        match self {
            Decision::Yes { .. } => Some(true),
            Decision::No { .. } => Some(false),
            Decision::Exhausted { .. } => None,
        }
    }
}

/// Outcome of a cube-rank search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum RankSearch {
    Found(RankReport),
    /// Exhaustive search showed that no sequence of length `<= max_len` works.
    NoneUpTo { max_len: usize, candidates_examined: u64 },
    /// Search stopped without a definitive answer.
    Exhausted { lower_bound: usize, candidates_examined: u64 },
}

pub(crate) enum SubsetSearch {
    Found { set: Vec<usize>, examined: u64 },
    NotFound { examined: u64 },
    OutOfBudget { size: usize, examined: u64 },
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// First subset of `universe` (by size in `sizes`, then lex) satisfying
/// `pred`. A size whose subsets would push the count past `limit` is not
/// started.
pub(crate) fn search_subsets<F>(universe: &[usize], sizes: RangeInclusive<usize>, limit: u64, pred: F) -> SubsetSearch
where
    F: Fn(&[usize]) -> bool + Sync,
{
    let mut examined = 0u64;
    for m in sizes {
        if m > universe.len() {
            break;
        }
        if examined.saturating_add(binomial(universe.len(), m)) > limit {
            return SubsetSearch::OutOfBudget { size: m, examined };
        }
        let mut combos = universe.iter().copied().combinations(m);
        loop {
            let chunk: Vec<Vec<usize>> = combos.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            if let Some(i) = chunk.par_iter().position_first(|c| pred(c)) {
                examined += i as u64 + 1;
                return SubsetSearch::Found {
                    set: chunk.into_iter().nth(i).unwrap(),
                    examined,
                };
            }
            examined += chunk.len() as u64;
        }
    }
    SubsetSearch::NotFound { examined }
}

fn set_of(n: usize, xs: &[usize]) -> ElementSet {
    ElementSet::from_elements(n, xs.iter().copied()).expect("subset of 0..n")
}

fn generates(t: &CayleyTable, xs: &[usize]) -> bool {
    closure(t, &set_of(t.order(), xs)).is_full()
}

/// Re-checks a report's witness against the table. Every report built in
/// this module passes through here.
pub fn verify_report(t: &CayleyTable, report: &RankReport, cube_bits: usize) -> bool {
    if report.witness.size() != report.rank {
        return false;
    }
    match &report.witness {
        Witness::Set { elements } => closure(t, elements).is_full(),
        Witness::Sequence { sequence, tree } => {
            let covers = cube_set_within(t, sequence, tree, cube_bits).map(|c| c.is_full()) == Ok(true);
            // the distinct elements of a cube generating sequence generate
            covers && closure(t, &sequence.to_set(t.order())).is_full()
        }
    }
}

fn checked(t: &CayleyTable, report: RankReport) -> RankReport {
    assert!(
        verify_report(t, &report, usize::MAX),
        "rank witness failed re-verification: {report:?}"
    );
    report
}

/// Greedy generating set: add the least element outside the current
/// closure, then drop any element the others already generate.
pub fn greedy_generating_set(t: &CayleyTable) -> ElementSet {
    let n = t.order();
    let mut gens = ElementSet::empty(n);
    let mut reach = ElementSet::empty(n);
    while !reach.is_full() {
        let x = (0..n).find(|&x| !reach.contains(x)).unwrap();
        gens.insert(x);
        reach = closure(t, &gens);
    }
    for x in gens.to_vec() {
        let rest = gens.without(x);
        if closure(t, &rest).is_full() {
            gens = rest;
        }
    }
    gens
}

/// Is there a generating set of size at most `k`? `k` is clamped at `n`.
pub fn rank_decision(t: &CayleyTable, k: usize, budget: &Budget) -> Result<Decision> {
    let n = t.order();
    let k = k.min(n);
    if k == 0 {
        return Ok(Decision::No { candidates_examined: 0 });
    }
    let universe: Vec<usize> = (0..n).collect();
    let cap = if n > budget.rank_max_order { 0 } else { budget.rank_max_subset };
    let top = k.min(cap);
    let outcome = if top >= 1 {
        search_subsets(&universe, 1..=top, budget.nodes, |s| generates(t, s))
    } else {
        SubsetSearch::OutOfBudget { size: 1, examined: 0 }
    };
    let (stopped_at, examined) = match outcome {
        SubsetSearch::Found { set, examined } => {
            return Ok(Decision::Yes {
                witness: Witness::Set { elements: set_of(n, &set) },
                candidates_examined: examined,
            })
        }
        SubsetSearch::NotFound { examined } if top == k => {
            return Ok(Decision::No { candidates_examined: examined })
        }
        SubsetSearch::NotFound { examined } => (top + 1, examined),
        SubsetSearch::OutOfBudget { size, examined } => (size, examined),
    };
    if k == n {
        // the whole structure generates itself
        return Ok(Decision::Yes {
            witness: Witness::Set { elements: ElementSet::full(n) },
            candidates_examined: examined,
        });
    }
    Ok(Decision::Exhausted {
        lower_bound: stopped_at,
        candidates_examined: examined,
    })
}

/// Minimum generating set of a group, searching sizes up to `⌈log₂ n⌉`.
pub fn group_rank(t: &CayleyTable, budget: &Budget) -> Result<RankReport> {
    if !t.is_group() {
        return Err(Error::NotGroup);
    }
    let n = t.order();
    let universe: Vec<usize> = (0..n).collect();
    match search_subsets(&universe, 1..=log_bound(n), budget.nodes, |s| generates(t, s)) {
        SubsetSearch::Found { set, examined } => Ok(checked(
            t,
            RankReport {
                rank: set.len(),
                lower_bound: set.len(),
                witness: Witness::Set { elements: set_of(n, &set) },
                method: Method::LogBounded,
                candidates_examined: examined,
                exact: true,
            },
        )),
        SubsetSearch::NotFound { .. } => unreachable!("a group of order {n} has a generating set of size <= ceil(log2 n)"),
        SubsetSearch::OutOfBudget { size, examined } => Ok(best_effort(t, size, examined)),
    }
}

fn best_effort(t: &CayleyTable, lower_bound: usize, examined: u64) -> RankReport {
    let gens = greedy_generating_set(t);
    let exact = gens.len() <= lower_bound;
    checked(
        t,
        RankReport {
            rank: gens.len(),
            lower_bound: lower_bound.min(gens.len()),
            witness: Witness::Set { elements: gens },
            method: Method::Exhaustive,
            candidates_examined: examined,
            exact,
        },
    )
}

/// Rank (minimum generating-set size) of any table. Groups use the log
/// bound; other tables are searched exhaustively within the budget's order
/// and subset-size caps, falling back to a greedy upper bound.
pub fn lower_rank(t: &CayleyTable, budget: &Budget) -> Result<RankReport> {
    if t.is_group() {
        return group_rank(t, budget);
    }
    let n = t.order();
    if n > budget.rank_max_order {
        return Ok(best_effort(t, 1, 0));
    }
    let universe: Vec<usize> = (0..n).collect();
    let top = n.min(budget.rank_max_subset);
    match search_subsets(&universe, 1..=top, budget.nodes, |s| generates(t, s)) {
        SubsetSearch::Found { set, examined } => Ok(checked(
            t,
            RankReport {
                rank: set.len(),
                lower_bound: set.len(),
                witness: Witness::Set { elements: set_of(n, &set) },
                method: Method::Exhaustive,
                candidates_examined: examined,
                exact: true,
            },
        )),
        SubsetSearch::NotFound { examined } => Ok(best_effort(t, top + 1, examined)),
        SubsetSearch::OutOfBudget { size, examined } => Ok(best_effort(t, size, examined)),
    }
}

fn covers(t: &CayleyTable, seq: &ElementSequence, tree: &Parenthesization) -> bool {
    cube_set_within(t, seq, tree, usize::MAX).map(|c| c.is_full()) == Ok(true)
}

fn sequence_at(mut index: usize, n: usize, len: usize) -> Vec<usize> {
    let mut digits = vec![0; len];
    for d in digits.iter_mut().rev() {
        *d = index % n;
        index /= n;
    }
    digits
}

/// Minimum length of a cube generating sequence under the balanced
/// parenthesization.
///
/// Lengths whose cubes are too small to cover (`2^(m-1) < n`) are skipped.
/// Up to order 16 every sequence of each length is tried in lexicographic
/// order; above that, `tries` seeded random sequences are drawn per length
/// and the result is an upper bound.
pub fn quasigroup_cube_rank(
    t: &CayleyTable,
    max_len: usize,
    tries: u64,
    seed: u64,
    budget: &Budget,
) -> Result<RankSearch> {
    if !t.is_latin_square() {
        return Err(Error::NotQuasigroup);
    }
    let n = t.order();
    let start = 1 + ceil_log2(n);
    let top = max_len.min(budget.cube_bits + 1);
    let mut examined = 0u64;
    if n <= CUBE_EXHAUSTIVE_MAX_ORDER {
        for len in start..=top {
            let total = (n as u64).checked_pow(len as u32).filter(|&c| c <= budget.nodes.saturating_sub(examined));
            let Some(total) = total else {
                return Ok(RankSearch::Exhausted {
                    lower_bound: len,
                    candidates_examined: examined,
                });
            };
            let tree = Parenthesization::balanced(len);
            let total = total as usize;
            let mut begin = 0;
            while begin < total {
                let end = (begin + CHUNK * 4).min(total);
                let hit = (begin..end).into_par_iter().position_first(|i| {
                    let seq = ElementSequence::new_unchecked(sequence_at(i, n, len));
                    covers(t, &seq, &tree)
                });
                if let Some(off) = hit {
                    examined += off as u64 + 1;
                    let seq = ElementSequence::new_unchecked(sequence_at(begin + off, n, len));
                    return Ok(RankSearch::Found(checked(
                        t,
                        RankReport {
                            rank: len,
                            lower_bound: len,
                            witness: Witness::Sequence { sequence: seq, tree },
                            method: Method::Exhaustive,
                            candidates_examined: examined,
                            exact: true,
                        },
                    )));
                }
                examined += (end - begin) as u64;
                begin = end;
            }
        }
        if top < max_len {
            return Ok(RankSearch::Exhausted {
                lower_bound: top + 1,
                candidates_examined: examined,
            });
        }
        return Ok(RankSearch::NoneUpTo {
            max_len,
            candidates_examined: examined,
        });
    }

    for len in start..=top {
        let tree = Parenthesization::balanced(len);
        let hit = (0..tries).into_par_iter().find_first(|&j| covers(t, &random_sequence(n, len, seed, j), &tree));
        if let Some(j) = hit {
            examined += j + 1;
            return Ok(RankSearch::Found(checked(
                t,
                RankReport {
                    rank: len,
                    lower_bound: start,
                    witness: Witness::Sequence {
                        sequence: random_sequence(n, len, seed, j),
                        tree,
                    },
                    method: Method::Randomized,
                    candidates_examined: examined,
                    exact: len == start,
                },
            )));
        }
        examined += tries;
    }
    Ok(RankSearch::Exhausted {
        lower_bound: start,
        candidates_examined: examined,
    })
}

/// The `j`-th random sequence of length `len` for `seed`.
pub(crate) fn random_sequence(n: usize, len: usize, seed: u64, j: u64) -> ElementSequence {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, len as u64, j));
    ElementSequence::new_unchecked((0..len).map(|_| rng.gen_range(0..n)).collect())
}

/// Is there a cube generating sequence of length at most `k`?
pub fn quasigroup_rank_decision(t: &CayleyTable, k: usize, tries: u64, seed: u64, budget: &Budget) -> Result<Decision> {
    if !t.is_latin_square() {
        return Err(Error::NotQuasigroup);
    }
    if k == 0 {
        return Ok(Decision::No { candidates_examined: 0 });
    }
    Ok(match quasigroup_cube_rank(t, k, tries, seed, budget)? {
        RankSearch::Found(report) => Decision::Yes {
            witness: report.witness,
            candidates_examined: report.candidates_examined,
        },
        RankSearch::NoneUpTo { candidates_examined, .. } => Decision::No { candidates_examined },
        RankSearch::Exhausted {
            lower_bound,
            candidates_examined,
        } => Decision::Exhausted {
            lower_bound,
            candidates_examined,
        },
    })
}

/// Is there `S ⊆ T` with `|S| <= k` and `T ⊆ <S>`?
pub fn generalized_rank(t: &CayleyTable, target: &ElementSet, k: usize, budget: &Budget) -> Result<Decision> {
    let n = t.order();
    if target.universe() != n {
        return Err(Error::InvalidArgument(format!(
            "target set is over {} elements, structure has {n}",
            target.universe()
        )));
    }
    let universe = target.to_vec();
    let k = k.min(universe.len());
    let pred = |s: &[usize]| target.is_subset(&closure(t, &set_of(n, s)));
    Ok(match search_subsets(&universe, 0..=k, budget.nodes, pred) {
        SubsetSearch::Found { set, examined } => Decision::Yes {
            witness: Witness::Set { elements: set_of(n, &set) },
            candidates_examined: examined,
        },
        SubsetSearch::NotFound { examined } => Decision::No { candidates_examined: examined },
        SubsetSearch::OutOfBudget { size, examined } => Decision::Exhausted {
            lower_bound: size,
            candidates_examined: examined,
        },
    })
}

/// Rank of `<S>`, computed on the restricted table and reported in the
/// original labels. The empty submagma has rank 0.
pub fn submagma_rank(t: &CayleyTable, s: &ElementSet, budget: &Budget) -> Result<RankReport> {
    let n = t.order();
    if s.universe() != n {
        return Err(Error::InvalidArgument(format!(
            "generator set is over {} elements, structure has {n}",
            s.universe()
        )));
    }
    let generated = closure(t, s);
    let Some((sub, labels)) = t.restrict(&generated) else {
        return Ok(RankReport {
            rank: 0,
            lower_bound: 0,
            witness: Witness::Set { elements: ElementSet::empty(n) },
            method: Method::Exhaustive,
            candidates_examined: 0,
            exact: true,
        });
    };
    let mut report = lower_rank(&sub, budget)?;
    if let Witness::Set { elements } = &report.witness {
        let mapped = ElementSet::from_elements(n, elements.iter().map(|i| labels[i]))?;
        report.witness = Witness::Set { elements: mapped };
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViaRank {
    pub rank_without: usize,
    pub rank_with: usize,
    /// `None` when either rank is only a bound.
    pub verdict: Option<bool>,
}

/// Decides `h ∈ <S>` by comparing `rank <S>` with `rank <S ∪ {h}>`.
pub fn membership_via_rank(t: &CayleyTable, h: usize, s: &ElementSet, budget: &Budget) -> Result<ViaRank> {
    if h >= t.order() {
        return Err(Error::ElementOutOfRange { element: h, n: t.order() });
    }
    let without = submagma_rank(t, s, budget)?;
    let with = submagma_rank(t, &s.with(h), budget)?;
    Ok(ViaRank {
        rank_without: without.rank,
        rank_with: with.rank,
        verdict: (without.exact && with.exact).then_some(without.rank == with.rank),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingRankReport {
    pub ring: RankReport,
    pub additive: RankReport,
    pub multiplicative: RankReport,
}

/// Ring rank, searching sizes up to `⌈log₂ n⌉` with the subring closure,
/// alongside the ranks of the additive group and multiplicative monoid.
pub fn ring_rank(r: &RingTable, budget: &Budget) -> Result<RingRankReport> {
    let n = r.order();
    let universe: Vec<usize> = (0..n).collect();
    let gen = |s: &[usize]| subring_closure(r, &set_of(n, s)).is_full();
    let ring = match search_subsets(&universe, 1..=log_bound(n), budget.nodes, gen) {
        SubsetSearch::Found { set, examined } => RankReport {
            rank: set.len(),
            lower_bound: set.len(),
            witness: Witness::Set { elements: set_of(n, &set) },
            method: Method::LogBounded,
            candidates_examined: examined,
            exact: true,
        },
        SubsetSearch::NotFound { .. } => unreachable!("generators of the additive group generate the ring"),
        SubsetSearch::OutOfBudget { size, examined } => {
            let additive = group_rank(r.add_table(), budget)?;
            RankReport {
                lower_bound: size.min(additive.rank),
                exact: additive.rank <= size,
                candidates_examined: examined,
                ..additive
            }
        }
    };
    if let Witness::Set { elements } = &ring.witness {
        assert!(subring_closure(r, elements).is_full(), "ring rank witness failed re-verification");
    }
    Ok(RingRankReport {
        ring,
        additive: group_rank(r.add_table(), budget)?,
        multiplicative: lower_rank(r.mul_table(), budget)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, tuple_to_bits};

    fn b() -> Budget {
        Budget::default()
    }

    fn set(n: usize, xs: &[usize]) -> ElementSet {
        ElementSet::from_elements(n, xs.iter().copied()).unwrap()
    }

    #[test]
    fn log_helpers() {
        assert_eq!([1, 2, 3, 4, 5, 8, 9, 16, 17].map(ceil_log2), [0, 1, 2, 2, 3, 3, 4, 4, 5]);
        assert_eq!(log_bound(1), 1);
        assert_eq!(binomial(20, 6), 38760);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn rank_decision_examples() {
        let rz = corpus::right_zero(4);
        assert_eq!(rank_decision(&rz, 3, &b()).unwrap().answer(), Some(false));
        assert_eq!(rank_decision(&rz, 4, &b()).unwrap().answer(), Some(true));
        assert_eq!(rank_decision(&corpus::cyclic(6), 1, &b()).unwrap().answer(), Some(true));
        assert_eq!(rank_decision(&rz, 0, &b()).unwrap().answer(), Some(false));
        assert_eq!(rank_decision(&rz, 99, &b()).unwrap().answer(), Some(true));
    }

    #[test]
    fn rank_decision_reports_exhaustion() {
        let rz = corpus::right_zero(10);
        let tight = Budget { rank_max_subset: 3, ..b() };
        assert_eq!(
            rank_decision(&rz, 9, &tight).unwrap(),
            Decision::Exhausted { lower_bound: 4, candidates_examined: 10 + 45 + 120 }
        );
        assert_eq!(rank_decision(&rz, 10, &tight).unwrap().answer(), Some(true));
    }

    #[test]
    fn group_rank_examples() {
        for k in 1..=4 {
            let r = group_rank(&corpus::elementary_abelian(k), &b()).unwrap();
            assert_eq!(r.rank, k);
            assert!(r.exact);
            assert_eq!(r.method, Method::LogBounded);
        }
        assert_eq!(group_rank(&corpus::cyclic(6), &b()).unwrap().rank, 1);
        let trivial = group_rank(&corpus::cyclic(1), &b()).unwrap();
        assert_eq!(trivial.rank, 1);
        assert_eq!(group_rank(&corpus::right_zero(3), &b()), Err(Error::NotGroup));
    }

    #[test]
    fn lower_rank_of_right_zero() {
        // n = 1 is the trivial group and goes through the group search
        for n in 1..=8 {
            let r = lower_rank(&corpus::right_zero(n), &b().unbounded_subsets()).unwrap();
            assert_eq!((r.rank, r.exact), (n, true));
        }
        assert_eq!(lower_rank(&corpus::right_zero(2), &b()).unwrap().method, Method::Exhaustive);
        // one past the subset cap the greedy bound meets the excluded sizes
        assert!(lower_rank(&corpus::right_zero(7), &b()).unwrap().exact);
        // beyond that the report is a bound
        let r = lower_rank(&corpus::right_zero(9), &b()).unwrap();
        assert_eq!((r.rank, r.lower_bound, r.exact), (9, 7, false));
        let r = lower_rank(&corpus::right_zero(9), &b().unbounded_subsets()).unwrap();
        assert_eq!((r.rank, r.exact), (9, true));
    }

    #[test]
    fn cube_rank_examples() {
        let q = corpus::small_quasigroup();
        let RankSearch::Found(r) = quasigroup_cube_rank(&q, 6, 0, 0, &b()).unwrap() else {
            panic!("cube rank search failed");
        };
        assert_eq!(r.rank, 3);
        match &r.witness {
            Witness::Sequence { sequence, .. } => assert_eq!(sequence.as_slice(), &[0, 1, 0]),
            other => panic!("unexpected witness {other:?}"),
        }
        let RankSearch::Found(r) = quasigroup_cube_rank(&corpus::elementary_abelian(3), 6, 0, 0, &b()).unwrap() else {
            panic!("cube rank search failed");
        };
        assert_eq!(r.rank, 4);
        let RankSearch::Found(r) = quasigroup_cube_rank(&corpus::cyclic(1), 3, 0, 0, &b()).unwrap() else {
            panic!("cube rank search failed");
        };
        assert_eq!(r.rank, 1);
        assert_eq!(
            quasigroup_cube_rank(&q, 2, 0, 0, &b()).unwrap(),
            RankSearch::NoneUpTo { max_len: 2, candidates_examined: 0 }
        );
        assert_eq!(quasigroup_cube_rank(&corpus::right_zero(2), 3, 0, 0, &b()), Err(Error::NotQuasigroup));
    }

    #[test]
    fn quasigroup_rank_decision_examples() {
        let q = corpus::small_quasigroup();
        assert_eq!(quasigroup_rank_decision(&q, 3, 0, 0, &b()).unwrap().answer(), Some(true));
        assert_eq!(quasigroup_rank_decision(&q, 2, 0, 0, &b()).unwrap().answer(), Some(false));
        assert_eq!(quasigroup_rank_decision(&q, 0, 0, 0, &b()).unwrap().answer(), Some(false));
    }

    #[test]
    fn randomized_cube_rank_is_an_upper_bound() {
        let t = corpus::random_latin_square(20, 3);
        let RankSearch::Found(r) = quasigroup_cube_rank(&t, 24, 200, 11, &b()).unwrap() else {
            panic!("no sequence found");
        };
        assert_eq!(r.method, Method::Randomized);
        assert!(r.rank >= 6);
        assert_eq!(quasigroup_cube_rank(&t, 24, 200, 11, &b()).unwrap(), RankSearch::Found(r));
    }

    #[test]
    fn generalized_rank_examples() {
        let z6 = corpus::cyclic(6);
        assert_eq!(generalized_rank(&z6, &set(6, &[]), 0, &b()).unwrap().answer(), Some(true));
        match generalized_rank(&z6, &set(6, &[0, 2, 4]), 1, &b()).unwrap() {
            Decision::Yes { witness: Witness::Set { elements }, .. } => assert_eq!(elements.to_vec(), vec![2]),
            other => panic!("unexpected {other:?}"),
        }
        let rz = corpus::right_zero(4);
        assert_eq!(
            generalized_rank(&rz, &ElementSet::full(4), 3, &b()).unwrap().answer(),
            rank_decision(&rz, 3, &b()).unwrap().answer()
        );
    }

    #[test]
    fn submagma_rank_examples() {
        let z6 = corpus::cyclic(6);
        assert_eq!(submagma_rank(&z6, &set(6, &[2]), &b()).unwrap().rank, 1);
        assert_eq!(submagma_rank(&z6, &set(6, &[]), &b()).unwrap().rank, 0);
        let whole = submagma_rank(&z6, &ElementSet::full(6), &b()).unwrap();
        assert_eq!(whole.rank, group_rank(&z6, &b()).unwrap().rank);
        let r = submagma_rank(&z6, &set(6, &[3, 4]), &b()).unwrap();
        assert_eq!(r.witness, Witness::Set { elements: set(6, &[1]) });
    }

    #[test]
    fn membership_via_rank_examples() {
        let q = corpus::small_quasigroup();
        assert_eq!(membership_via_rank(&q, 2, &set(3, &[1]), &b()).unwrap().verdict, Some(true));
        assert_eq!(membership_via_rank(&q, 1, &set(3, &[1]), &b()).unwrap().verdict, Some(true));
        // <2> and <2, 3> in Z/6 are both cyclic, so the ranks agree although 3 ∉ <2>
        let z6 = corpus::cyclic(6);
        let v = membership_via_rank(&z6, 3, &set(6, &[2]), &b()).unwrap();
        assert_eq!((v.rank_without, v.rank_with, v.verdict), (1, 1, Some(true)));
    }

    #[test]
    fn ring_rank_examples() {
        let cube = corpus::ring_boolean_cube(3);
        let r = ring_rank(&cube, &b()).unwrap();
        assert_eq!((r.ring.rank, r.additive.rank, r.multiplicative.rank), (2, 3, 4));
        let pair = set(8, &[tuple_to_bits(&[0, 1, 1]), tuple_to_bits(&[1, 1, 0])]);
        assert!(subring_closure(&cube, &pair).is_full());
        for p in [2, 3, 5] {
            assert_eq!(ring_rank(&corpus::ring_modular(p), &b()).unwrap().ring.rank, 1);
        }
        assert_eq!(ring_rank(&corpus::ring_gf4(), &b()).unwrap().ring.rank, 1);
        assert_eq!(ring_rank(&corpus::ring_modular(1), &b()).unwrap().ring.rank, 1);
    }

    #[test]
    fn greedy_set_generates() {
        for (_, t) in corpus::structure_corpus(10) {
            assert!(closure(&t, &greedy_generating_set(&t)).is_full());
        }
    }
}
