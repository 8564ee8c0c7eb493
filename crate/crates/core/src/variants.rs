//! Independence and the five rank variants.
//!
//! All five are computed from one table holding the closure of every
//! subset, built in parallel as an indexed collect.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::membership::closure;
use crate::rank::{ceil_log2, lower_rank};
use crate::set::ElementSet;
use crate::table::CayleyTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankVariant {
    Small,
    Lower,
    Intermediate,
    Upper,
    Large,
}

impl RankVariant {
    /// In chain order.
    pub const ALL: [RankVariant; 5] = [
        RankVariant::Small,
        RankVariant::Lower,
        RankVariant::Intermediate,
        RankVariant::Upper,
        RankVariant::Large,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RankVariant::Small => "small",
            RankVariant::Lower => "lower",
            RankVariant::Intermediate => "intermediate",
            RankVariant::Upper => "upper",
            RankVariant::Large => "large",
        }
    }
}

impl fmt::Display for RankVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RankVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RankVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown rank variant {s:?}")))
    }
}

/// `x ∉ <S \ {x}>` for every `x ∈ S`.
pub fn is_independent(t: &CayleyTable, s: &ElementSet) -> bool {
    s.iter().all(|x| !closure(t, &s.without(x)).contains(x))
}

/// Closure of every subset of a table with at most 64 elements, indexed by
/// bit mask.
pub struct ClosureTable {
    n: usize,
    closures: Vec<u64>,
}

impl ClosureTable {
    pub fn new(t: &CayleyTable) -> Self {
        let n = t.order();
        assert!(n < 32, "closure table over 2^{n} subsets");
        let closures = (0..1u64 << n)
            .into_par_iter()
            .map(|mask| closure(t, &ElementSet::from_mask(n, mask)).mask())
            .collect();
        ClosureTable { n, closures }
    }

    fn full(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn generates(&self, mask: u64) -> bool {
        self.closures[mask as usize] == self.full()
    }

    pub fn independent(&self, mask: u64) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            if self.closures[(mask & !bit) as usize] & bit != 0 {
                return false;
            }
            rest &= rest - 1;
        }
        true
    }

    /// All five variants, in chain order.
    pub fn variants(&self) -> Chain {
        let n = self.n;
        let mut all_generate = vec![true; n + 1];
        let mut all_independent = vec![true; n + 1];
        let mut lower = n;
        let mut intermediate = 0;
        let mut upper = 0;
        for mask in 1..=self.full() {
            let size = mask.count_ones() as usize;
            let gen = self.generates(mask);
            let ind = self.independent(mask);
            all_generate[size] &= gen;
            all_independent[size] &= ind;
            if gen {
                lower = lower.min(size);
            }
            if ind {
                upper = upper.max(size);
                if gen {
                    intermediate = intermediate.max(size);
                }
            }
        }
        let large = (1..=n).find(|&k| all_generate[k]).unwrap_or(n);
        let small = (1..=n).take_while(|&k| all_independent[k]).last().unwrap_or(0);
        Chain::new([small, lower, intermediate, upper, large])
    }

    /// Lexicographically least set of extremal size for `v`, if `v` is
    /// realized by a single set.
    pub fn witness(&self, v: RankVariant) -> Option<ElementSet> {
        let pick = |keep: &dyn Fn(u64) -> bool, largest: bool| {
            let mut best: Option<(usize, Vec<usize>, u64)> = None;
            for mask in 1..=self.full() {
                if !keep(mask) {
                    continue;
                }
                let size = mask.count_ones() as usize;
                let elems = ElementSet::from_mask(self.n, mask).to_vec();
                let better = match &best {
                    None => true,
                    Some((s, e, _)) => {
                        let size_better = if largest { size > *s } else { size < *s };
                        size_better || (size == *s && elems < *e)
                    }
                };
                if better {
                    best = Some((size, elems, mask));
                }
            }
            best.map(|(_, _, mask)| ElementSet::from_mask(self.n, mask))
        };
        match v {
            RankVariant::Lower => pick(&|m| self.generates(m), false),
            RankVariant::Intermediate => pick(&|m| self.generates(m) && self.independent(m), true),
            RankVariant::Upper => pick(&|m| self.independent(m), true),
            RankVariant::Small | RankVariant::Large => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub small: usize,
    pub lower: usize,
    pub intermediate: usize,
    pub upper: usize,
    pub large: usize,
    pub holds: bool,
}

impl Chain {
    fn new([small, lower, intermediate, upper, large]: [usize; 5]) -> Self {
        Chain {
            small,
            lower,
            intermediate,
            upper,
            large,
            holds: small <= lower && lower <= intermediate && intermediate <= upper && upper <= large,
        }
    }

    pub fn get(&self, v: RankVariant) -> usize {
        match v {
            RankVariant::Small => self.small,
            RankVariant::Lower => self.lower,
            RankVariant::Intermediate => self.intermediate,
            RankVariant::Upper => self.upper,
            RankVariant::Large => self.large,
        }
    }

    pub fn as_tuple(&self) -> (usize, usize, usize, usize, usize) {
        (self.small, self.lower, self.intermediate, self.upper, self.large)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum VariantOutcome {
    Value { value: usize, witness: Option<ElementSet> },
    /// Order above the enumeration budget; the value lies in the range.
    Exhausted { lower_bound: usize, upper_bound: usize },
}

fn closure_table(t: &CayleyTable, budget: &Budget) -> Option<ClosureTable> {
    (t.order() <= budget.variant_max_order.min(30)).then(|| ClosureTable::new(t))
}

pub fn rank_variant(t: &CayleyTable, v: RankVariant, budget: &Budget) -> Result<VariantOutcome> {
    let n = t.order();
    if let Some(table) = closure_table(t, budget) {
        return Ok(VariantOutcome::Value {
            value: table.variants().get(v),
            witness: table.witness(v),
        });
    }
    let (lower_bound, upper_bound) = match v {
        RankVariant::Small => (0, n),
        _ => {
            let r = lower_rank(t, budget)?;
            match v {
                RankVariant::Lower => {
                    if r.exact {
                        return Ok(VariantOutcome::Value {
                            value: r.rank,
                            witness: match r.witness {
                                crate::rank::Witness::Set { elements } => Some(elements),
                                _ => None,
                            },
                        });
                    }
                    (r.lower_bound, r.rank)
                }
                _ => (r.lower_bound, n),
            }
        }
    };
    Ok(VariantOutcome::Exhausted {
        lower_bound,
        upper_bound,
    })
}

/// All five variants and whether `small <= lower <= intermediate <= upper <= large`.
pub fn check_chain(t: &CayleyTable, budget: &Budget) -> Result<Chain> {
    closure_table(t, budget)
        .map(|table| table.variants())
        .ok_or(Error::Budget {
            what: "order for rank-variant enumeration",
            requested: t.order(),
            limit: budget.variant_max_order,
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndependenceBound {
    pub upper_rank: usize,
    pub bound: usize,
    pub holds: bool,
}

/// Compares the largest independent set of a group with `⌈log₂ n⌉`.
pub fn max_independent_bound_check(t: &CayleyTable, budget: &Budget) -> Result<IndependenceBound> {
    if !t.is_group() {
        return Err(Error::NotGroup);
    }
    let upper_rank = check_chain(t, budget)?.upper;
    let bound = ceil_log2(t.order());
    Ok(IndependenceBound {
        upper_rank,
        bound,
        holds: upper_rank <= bound,
    })
}
