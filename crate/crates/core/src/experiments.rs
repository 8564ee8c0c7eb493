//! Corpus sweeps behind the `experiment` command.

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::corpus;
use crate::error::{Error, Result};
use crate::membership::{subring_graph_reachable, unital_subring_closure, GraphLabels};
use crate::rank::{ceil_log2, lower_rank, quasigroup_cube_rank, random_sequence, RankSearch};
use crate::seed::derive_seed;
use crate::paren::{cube_set_within, Parenthesization};
use crate::set::ElementSet;
use crate::variants::{check_chain, Chain};

#[derive(Debug, Clone, Serialize)]
pub struct ChainRow {
    pub name: String,
    pub order: usize,
    pub kind: &'static str,
    pub chain: Chain,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainSweep {
    pub structures: usize,
    pub violations: usize,
    pub rows: Vec<ChainRow>,
}

/// The five rank variants on every corpus structure of order `<= max_n`.
pub fn chain_sweep(max_n: usize, budget: &Budget) -> Result<ChainSweep> {
    let mut rows = Vec::new();
    for (name, t) in corpus::structure_corpus(max_n) {
        let chain = check_chain(&t, budget)?;
        rows.push(ChainRow {
            name,
            order: t.order(),
            kind: t.classify().kind.as_str(),
            chain,
        });
    }
    Ok(ChainSweep {
        structures: rows.len(),
        violations: rows.iter().filter(|r| !r.chain.holds).count(),
        rows,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RandomCubeParams {
    pub orders: Vec<usize>,
    pub factors: Vec<f64>,
    pub instances: u64,
    pub tries: u64,
    /// Random sequences per instance used for the success-rate estimate.
    pub samples: u64,
    pub seed: u64,
}

impl Default for RandomCubeParams {
    fn default() -> Self {
        RandomCubeParams {
            orders: vec![8, 16, 32],
            factors: vec![2.0, 3.0, 4.0],
            instances: 40,
            tries: 1000,
            samples: 16,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RandomCubeRow {
    pub order: usize,
    pub factor: f64,
    pub length: usize,
    pub instances: u64,
    /// Instances where some try within the limit was cube generating.
    pub found: u64,
    pub found_fraction: f64,
    /// Mean 1-based index of the first successful try over found instances.
    pub mean_first_success: Option<f64>,
    pub sampled: u64,
    pub sampled_generating: u64,
    pub sample_rate: f64,
}

/// Sequence length `⌈c · log₂ n⌉`, at least 1.
pub fn sweep_length(n: usize, c: f64) -> usize {
    ((c * (n as f64).log2()).ceil() as usize).max(1)
}

/// Random Latin squares of each order; per instance, seeded random
/// sequences of length `⌈c · log₂ n⌉` under the balanced parenthesization.
pub fn random_cube_sweep(p: &RandomCubeParams, budget: &Budget) -> Result<Vec<RandomCubeRow>> {
    let mut rows = Vec::new();
    for &n in &p.orders {
        let tables: Vec<_> = (0..p.instances)
            .into_par_iter()
            .map(|i| corpus::random_latin_square(n, derive_seed(p.seed, n as u64, i)))
            .collect();
        for &c in &p.factors {
            let length = sweep_length(n, c);
            if length - 1 > budget.cube_bits {
                return Err(Error::Budget {
                    what: "cube enumeration bits",
                    requested: length - 1,
                    limit: budget.cube_bits,
                });
            }
            let tree = Parenthesization::balanced(length);
            let per_instance: Vec<(Option<u64>, u64)> = tables
                .par_iter()
                .enumerate()
                .map(|(i, t)| {
                    let search_seed = derive_seed(p.seed, (1 << 32) | n as u64, i as u64);
                    let first = (0..p.tries).into_par_iter().find_first(|&j| {
                        cube_set_within(t, &random_sequence(n, length, search_seed, j), &tree, budget.cube_bits)
                            .map(|s| s.is_full())
                            .unwrap_or(false)
                    });
                    let sample_seed = derive_seed(p.seed, (2 << 32) | n as u64, i as u64);
                    let hits = (0..p.samples)
                        .filter(|&j| {
                            cube_set_within(t, &random_sequence(n, length, sample_seed, j), &tree, budget.cube_bits)
                                .map(|s| s.is_full())
                                .unwrap_or(false)
                        })
                        .count() as u64;
                    (first, hits)
                })
                .collect();
            let firsts: Vec<u64> = per_instance.iter().filter_map(|(f, _)| f.map(|j| j + 1)).collect();
            let found = firsts.len() as u64;
            let sampled = p.samples * p.instances;
            let sampled_generating: u64 = per_instance.iter().map(|(_, h)| h).sum();
            rows.push(RandomCubeRow {
                order: n,
                factor: c,
                length,
                instances: p.instances,
                found,
                found_fraction: ratio(found, p.instances),
                mean_first_success: (!firsts.is_empty())
                    .then(|| firsts.iter().sum::<u64>() as f64 / firsts.len() as f64),
                sampled,
                sampled_generating,
                sample_rate: ratio(sampled_generating, sampled),
            });
        }
    }
    Ok(rows)
}

fn ratio(a: u64, b: u64) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SubringQuery {
    pub ring: String,
    pub target: usize,
    pub generators: Vec<usize>,
    pub graph: bool,
    pub closure: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubringRow {
    pub ring: String,
    pub order: usize,
    pub queries: u64,
    pub disagreements_strict: u64,
    pub disagreements_with_unit: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubringComparison {
    /// Generator sets of every size up to this were tried.
    pub max_generators: usize,
    pub queries: u64,
    pub disagreements_strict: u64,
    pub disagreements_with_unit: u64,
    pub rows: Vec<SubringRow>,
    /// The first few disagreements of the strict label set.
    pub examples: Vec<SubringQuery>,
}

impl SubringComparison {
    pub fn agrees(&self) -> bool {
        self.disagreements_strict == 0
    }
}

/// Compares the path formulation of subring membership with the closure of
/// `S ∪ {1}` under subtraction and multiplication, for every target and
/// every generator set of size `<= max_generators`, on every corpus ring of
/// order `<= max_n`.
pub fn subring_comparison(max_n: usize, max_generators: usize) -> SubringComparison {
    use itertools::Itertools;

    let mut rows = Vec::new();
    let mut examples = Vec::new();
    for (name, r) in corpus::ring_corpus() {
        let n = r.order();
        if n > max_n {
            continue;
        }
        let mut row = SubringRow {
            ring: name.clone(),
            order: n,
            queries: 0,
            disagreements_strict: 0,
            disagreements_with_unit: 0,
        };
        for size in 0..=max_generators.min(n) {
            for gens in (0..n).combinations(size) {
                let s = ElementSet::from_elements(n, gens.iter().copied()).expect("in range");
                let oracle = unital_subring_closure(&r, &s);
                let strict = subring_graph_reachable(&r, &s, GraphLabels::Strict);
                let with_unit = subring_graph_reachable(&r, &s, GraphLabels::WithUnit);
                for h in 0..n {
                    row.queries += 1;
                    if strict.contains(h) != oracle.contains(h) {
                        row.disagreements_strict += 1;
                        if examples.len() < 10 {
                            examples.push(SubringQuery {
                                ring: name.clone(),
                                target: h,
                                generators: gens.clone(),
                                graph: strict.contains(h),
                                closure: oracle.contains(h),
                            });
                        }
                    }
                    if with_unit.contains(h) != oracle.contains(h) {
                        row.disagreements_with_unit += 1;
                    }
                }
            }
        }
        rows.push(row);
    }
    SubringComparison {
        max_generators,
        queries: rows.iter().map(|r| r.queries).sum(),
        disagreements_strict: rows.iter().map(|r| r.disagreements_strict).sum(),
        disagreements_with_unit: rows.iter().map(|r| r.disagreements_with_unit).sum(),
        rows,
        examples,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GapRow {
    pub name: String,
    pub order: usize,
    pub set_rank: usize,
    pub cube_rank: Option<usize>,
    /// `ceil(log2 n) + 1`: no shorter sequence has a large enough cube.
    pub cube_length_floor: usize,
    pub gap: Option<bool>,
}

/// Generating-set rank against cube rank on the quasigroup corpus.
pub fn gap_search(max_n: usize, budget: &Budget) -> Result<Vec<GapRow>> {
    let mut rows = Vec::new();
    for (name, t) in corpus::quasigroup_corpus(max_n) {
        let n = t.order();
        let set_rank = lower_rank(&t, budget)?;
        let cube = match quasigroup_cube_rank(&t, budget.cube_bits + 1, 1000, 0, budget)? {
            RankSearch::Found(r) if r.exact => Some(r.rank),
            _ => None,
        };
        rows.push(GapRow {
            name,
            order: n,
            set_rank: set_rank.rank,
            cube_rank: cube,
            cube_length_floor: ceil_log2(n) + 1,
            gap: cube.filter(|_| set_rank.exact).map(|c| set_rank.rank < c),
        });
    }
    Ok(rows)
}
