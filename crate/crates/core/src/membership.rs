//! Membership decision procedures.
//!
//! `closure` is the reference semantics for every procedure here: the
//! least set containing `S` and closed under the operation. The closure
//! of the empty set is empty.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::paren::{cube_eval, CubeIndex, ElementSequence, Parenthesization};
use crate::ring::RingTable;
use crate::set::ElementSet;
use crate::table::CayleyTable;

/// A target element, a generating set and optional size/depth bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipQuery {
    pub target: usize,
    pub generators: ElementSet,
    pub bounds: Option<(usize, usize)>,
}

impl MembershipQuery {
    pub fn new(n: usize, target: usize, generators: &[usize]) -> Result<Self> {
        check_element(target, n)?;
        Ok(MembershipQuery {
            target,
            generators: ElementSet::from_elements(n, generators.iter().copied())?,
            bounds: None,
        })
    }

    pub fn with_bounds(mut self, k: usize, d: usize) -> Result<Self> {
        check_bounds(k, d)?;
        self.bounds = Some((k, d));
        Ok(self)
    }
}

fn check_element(h: usize, n: usize) -> Result<()> {
    if h >= n {
        Err(Error::ElementOutOfRange { element: h, n })
    } else {
        Ok(())
    }
}

fn check_set(s: &ElementSet, n: usize) -> Result<()> {
    if s.universe() != n {
        return Err(Error::InvalidArgument(format!(
            "generator set is over {} elements, structure has {n}",
            s.universe()
        )));
    }
    Ok(())
}

fn check_bounds(k: usize, d: usize) -> Result<()> {
    if k == 0 || d == 0 {
        return Err(Error::InvalidArgument(format!(
            "sequence length and depth bounds must be positive (got k = {k}, d = {d})"
        )));
    }
    Ok(())
}

/// Least fixpoint of `C ← C ∪ C·C` seeded with `S`.
///
/// Worklist form: each newly added element is multiplied on both sides by
/// every element already present, so every pair is probed once.
pub fn closure(t: &CayleyTable, s: &ElementSet) -> ElementSet {
    let mut set = s.clone();
    let mut members: Vec<usize> = s.to_vec();
    let mut next = 0;
    while next < members.len() {
        let x = members[next];
        next += 1;
        let mut i = 0;
        // members grows while we scan; new entries are handled when their turn comes
        while i < next {
            let y = members[i];
            i += 1;
            for z in [t.op(x, y), t.op(y, x)] {
                if set.insert(z) {
                    members.push(z);
                }
            }
        }
        if set.is_full() {
            break;
        }
    }
    set
}

pub fn submagma_membership(t: &CayleyTable, h: usize, s: &ElementSet) -> Result<bool> {
    check_element(h, t.order())?;
    check_set(s, t.order())?;
    Ok(s.contains(h) || closure(t, s).contains(h))
}

/// Membership in a subsemigroup as reachability: in an associative table
/// every element of `<S>` is a word `s1·…·sm`, i.e. reachable from some
/// generator by repeatedly multiplying on the right by generators.
///
/// With `strict` the table is checked for associativity first.
pub fn subsemigroup_membership(t: &CayleyTable, h: usize, s: &ElementSet, strict: bool) -> Result<bool> {
    check_element(h, t.order())?;
    check_set(s, t.order())?;
    if strict && !t.is_associative() {
        return Err(Error::NotAssociative);
    }
    let gens = s.to_vec();
    let mut seen = s.clone();
    let mut queue = gens.clone();
    while let Some(x) = queue.pop() {
        if x == h {
            return Ok(true);
        }
        for &g in &gens {
            let y = t.op(x, g);
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    Ok(seen.contains(h))
}

/// Whether some cube index sends `(s, p)` to `h`. Stops at the first hit.
pub fn cube_membership(
    t: &CayleyTable,
    h: usize,
    s: &ElementSequence,
    p: &Parenthesization,
    max_bits: usize,
) -> Result<bool> {
    check_element(h, t.order())?;
    if !t.is_latin_square() {
        return Err(Error::NotQuasigroup);
    }
    let k = s.optional_len();
    if k > max_bits {
        return Err(Error::Budget {
            what: "cube enumeration bits",
            requested: k,
            limit: max_bits,
        });
    }
    for bits in 0..(1u64 << k) {
        if cube_eval(t, s, p, CubeIndex::new(bits, k))? == h {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Result of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum BoundedVerdict {
    Member {
        sequence: ElementSequence,
        tree: Parenthesization,
        spent: u64,
    },
    NotMember {
        spent: u64,
    },
    Exhausted {
        spent: u64,
    },
}

impl BoundedVerdict {
    /// `Some(answer)` when the search was conclusive.
    pub fn answer(&self) -> Option<bool> {
        match self {
            BoundedVerdict::Member { .. } => Some(true),
            BoundedVerdict::NotMember { .. } => Some(false),
            BoundedVerdict::Exhausted { .. } => None,
        }
    }
}

/// Whether `h = P(s)` for some sequence `s` over `S` of length at most `k`
/// and some parenthesization `P` of depth at most `d`.
///
/// The search tabulates, for each leaf count `L <= k` and depth bound
/// `δ <= d`, the set of values of all such products; each entry is the
/// union over the root split `L = a + b` of `V[a][δ-1] · V[b][δ-1]`. A
/// witness is rebuilt by taking the smallest leaf count, then the smallest
/// split, then the least left and right factors. `node_budget` caps the
/// number of table products; running out yields `Exhausted`.
pub fn bounded_subquasigroup_membership(
    t: &CayleyTable,
    h: usize,
    s: &ElementSet,
    k: usize,
    d: usize,
    node_budget: u64,
) -> Result<BoundedVerdict> {
    let n = t.order();
    check_element(h, n)?;
    check_set(s, n)?;
    check_bounds(k, d)?;
    if !t.is_latin_square() {
        return Err(Error::NotQuasigroup);
    }
    if s.is_empty() {
        return Ok(BoundedVerdict::NotMember { spent: 0 });
    }
    // trees with L leaves have depth at most L - 1
    let d = d.min(k - 1);
    // values[len][depth], len in 1..=k, depth in 0..=d
    let mut values: Vec<Vec<ElementSet>> = vec![Vec::new(); k + 1];
    values[1] = vec![s.clone(); d + 1];
    let mut spent: u64 = 0;
    let mut found_len = if s.contains(h) { Some(1) } else { None };
    for len in 2..=k {
        if found_len.is_some() {
            break;
        }
        let mut row = vec![ElementSet::empty(n); d + 1];
        for depth in 1..=d {
            let mut acc = ElementSet::empty(n);
            for a in 1..len {
                let left = &values[a][depth - 1];
                let right = &values[len - a][depth - 1];
                let cost = (left.len() * right.len()) as u64;
                if spent + cost > node_budget {
                    return Ok(BoundedVerdict::Exhausted { spent });
                }
                spent += cost;
                for x in left.iter() {
                    for y in right.iter() {
                        acc.insert(t.op(x, y));
                    }
                }
                if acc.is_full() {
                    break;
                }
            }
            row[depth] = acc;
        }
        if row[d].contains(h) {
            found_len = Some(len);
        }
        values[len] = row;
    }
    let Some(len) = found_len else {
        return Ok(BoundedVerdict::NotMember { spent });
    };
    let mut leaves = Vec::with_capacity(len);
    let tree = rebuild(t, &values, h, len, d, &mut leaves);
    Ok(BoundedVerdict::Member {
        sequence: ElementSequence::new_unchecked(leaves),
        tree,
        spent,
    })
}

fn rebuild(
    t: &CayleyTable,
    values: &[Vec<ElementSet>],
    h: usize,
    len: usize,
    depth: usize,
    leaves: &mut Vec<usize>,
) -> Parenthesization {
    if len == 1 {
        leaves.push(h);
        return Parenthesization::leaf();
    }
    for a in 1..len {
        let left = &values[a][depth - 1];
        let right = &values[len - a][depth - 1];
        for x in left.iter() {
            for y in right.iter() {
                if t.op(x, y) == h {
                    let l = rebuild(t, values, x, a, depth - 1, leaves);
                    let r = rebuild(t, values, y, len - a, depth - 1, leaves);
                    return Parenthesization::join(&l, &r);
                }
            }
        }
    }
    unreachable!("value {h} was recorded as reachable with {len} leaves")
}

/// Membership in a subgroup as reachability from the identity in the Cayley
/// graph with edges `x → x·s` for `s ∈ S ∪ S⁻¹`. `S = ∅` gives `false`.
pub fn subgroup_membership(t: &CayleyTable, h: usize, s: &ElementSet) -> Result<bool> {
    check_element(h, t.order())?;
    check_set(s, t.order())?;
    if !t.is_group() {
        return Err(Error::NotGroup);
    }
    if s.is_empty() {
        return Ok(false);
    }
    let e = t.identity().expect("groups have an identity");
    let inv = t.inverses(e).expect("groups have inverses");
    let mut steps: Vec<usize> = s.iter().flat_map(|g| [g, inv[g]]).collect();
    steps.sort_unstable();
    steps.dedup();
    let mut seen = ElementSet::empty(t.order());
    seen.insert(e);
    let mut queue = vec![e];
    while let Some(x) = queue.pop() {
        if x == h {
            return Ok(true);
        }
        for &g in &steps {
            let y = t.op(x, g);
            if seen.insert(y) {
                queue.push(y);
            }
        }
    }
    Ok(false)
}

/// Least set containing `S` closed under both ring operations.
pub fn subring_closure(r: &RingTable, s: &ElementSet) -> ElementSet {
    let mut set = s.clone();
    let mut members: Vec<usize> = s.to_vec();
    let mut next = 0;
    while next < members.len() {
        let x = members[next];
        next += 1;
        for i in 0..next {
            let y = members[i];
            for z in [r.add(x, y), r.mul(x, y), r.mul(y, x)] {
                if set.insert(z) {
                    members.push(z);
                }
            }
        }
    }
    set
}

pub fn subring_membership(r: &RingTable, h: usize, s: &ElementSet) -> Result<bool> {
    check_element(h, r.order())?;
    check_set(s, r.order())?;
    Ok(subring_closure(r, s).contains(h))
}

/// Least set containing `S ∪ {1}` closed under subtraction and
/// multiplication: the subring with identity generated by `S`.
pub fn unital_subring_closure(r: &RingTable, s: &ElementSet) -> ElementSet {
    let mut set = s.with(r.one());
    let mut members: Vec<usize> = set.to_vec();
    let mut next = 0;
    while next < members.len() {
        let x = members[next];
        next += 1;
        for i in 0..next {
            let y = members[i];
            for z in [r.sub(x, y), r.sub(y, x), r.mul(x, y), r.mul(y, x)] {
                if set.insert(z) {
                    members.push(z);
                }
            }
        }
    }
    set
}

/// Edge labels admitted by [`subring_membership_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphLabels {
    /// `a ∈ S ∪ {1}`, `b ∈ {0} ∪ S ∪ -S`.
    Strict,
    /// As `Strict`, with `b = ±1` also allowed.
    WithUnit,
}

/// Elements reachable from `1` along edges `x → x·a - b`.
pub fn subring_graph_reachable(r: &RingTable, s: &ElementSet, labels: GraphLabels) -> ElementSet {
    let mut mults: Vec<usize> = s.to_vec();
    mults.push(r.one());
    let mut subs: Vec<usize> = vec![r.zero()];
    subs.extend(s.iter());
    subs.extend(s.iter().map(|x| r.neg(x)));
    if labels == GraphLabels::WithUnit {
        subs.push(r.one());
        subs.push(r.neg(r.one()));
    }
    mults.sort_unstable();
    mults.dedup();
    subs.sort_unstable();
    subs.dedup();

    let mut seen = ElementSet::empty(r.order());
    seen.insert(r.one());
    let mut queue = vec![r.one()];
    while let Some(x) = queue.pop() {
        for &a in &mults {
            let xa = r.mul(x, a);
            for &b in &subs {
                let y = r.sub(xa, b);
                if seen.insert(y) {
                    queue.push(y);
                }
            }
        }
    }
    seen
}

/// Directed-path formulation of subring membership: is `h` reachable from
/// `1` along edges `x → x·a - b` with labels drawn from `S`?
pub fn subring_membership_graph(r: &RingTable, h: usize, s: &ElementSet, labels: GraphLabels) -> Result<bool> {
    check_element(h, r.order())?;
    check_set(s, r.order())?;
    Ok(subring_graph_reachable(r, s, labels).contains(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, tuple_to_bits};

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;

    fn set(n: usize, xs: &[usize]) -> ElementSet {
        ElementSet::from_elements(n, xs.iter().copied()).unwrap()
    }

    #[test]
    fn closure_examples() {
        let z6 = corpus::cyclic(6);
        assert!(closure(&z6, &set(6, &[])).is_empty());
        assert_eq!(closure(&z6, &set(6, &[2])).to_vec(), vec![0, 2, 4]);
        assert!(closure(&z6, &set(6, &[2, 3])).is_full());
    }

    #[test]
    fn submagma_examples() {
        let q = corpus::small_quasigroup();
        assert_eq!(submagma_membership(&q, C, &set(3, &[B])), Ok(true));
        assert_eq!(submagma_membership(&q, B, &set(3, &[B])), Ok(true));
        assert_eq!(submagma_membership(&q, A, &set(3, &[])), Ok(false));
        assert!(submagma_membership(&q, 3, &set(3, &[B])).is_err());
    }

    #[test]
    fn subsemigroup_examples() {
        let rz = corpus::right_zero(3);
        assert_eq!(subsemigroup_membership(&rz, A, &set(3, &[B, C]), true), Ok(false));
        assert_eq!(subsemigroup_membership(&rz, B, &set(3, &[B, C]), true), Ok(true));
        let z6 = corpus::cyclic(6);
        assert_eq!(subsemigroup_membership(&z6, 1, &set(6, &[2, 3]), true), Ok(true));
        assert_eq!(
            subsemigroup_membership(&corpus::small_quasigroup(), A, &set(3, &[B]), true),
            Err(Error::NotAssociative)
        );
    }

    #[test]
    fn cube_membership_examples() {
        let q = corpus::small_quasigroup();
        let s = ElementSequence::new(vec![A, B], 3).unwrap();
        let p = Parenthesization::balanced(2);
        assert_eq!(cube_membership(&q, A, &s, &p, 24), Ok(true));
        assert_eq!(cube_membership(&q, C, &s, &p, 24), Ok(false));
        let worked = ElementSequence::new(vec![A, C, A, B], 3).unwrap();
        let tree: Parenthesization = "(0 ((1 2) 3))".parse().unwrap();
        assert_eq!(cube_membership(&q, A, &worked, &tree, 24), Ok(true));
        assert_eq!(
            cube_membership(&corpus::right_zero(3), A, &s, &p, 24),
            Err(Error::NotQuasigroup)
        );
        assert!(matches!(cube_membership(&q, A, &worked, &tree, 2), Err(Error::Budget { .. })));
    }

    #[test]
    fn bounded_examples() {
        let q = corpus::small_quasigroup();
        let b = set(3, &[B]);
        assert_eq!(
            bounded_subquasigroup_membership(&q, B, &b, 1, 1, u64::MAX).unwrap().answer(),
            Some(true)
        );
        assert_eq!(
            bounded_subquasigroup_membership(&q, C, &b, 2, 1, u64::MAX).unwrap().answer(),
            Some(false)
        );
        match bounded_subquasigroup_membership(&q, C, &b, 3, 2, u64::MAX).unwrap() {
            BoundedVerdict::Member { sequence, tree, .. } => {
                assert_eq!(sequence.as_slice(), &[B, B, B]);
                assert_eq!(tree.to_string(), "(0 (1 2))");
                assert_eq!(crate::paren::eval_parenthesized(&q, &sequence, &tree), Ok(C));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        assert_eq!(
            bounded_subquasigroup_membership(&q, A, &set(3, &[]), 3, 3, u64::MAX).unwrap().answer(),
            Some(false)
        );
    }

    #[test]
    fn bounded_budget_and_arguments() {
        let q = corpus::random_latin_square(8, 1);
        let s = set(8, &[1, 2]);
        assert!(matches!(
            bounded_subquasigroup_membership(&q, 0, &s, 6, 6, 3),
            Ok(BoundedVerdict::Exhausted { .. }) | Ok(BoundedVerdict::Member { .. })
        ));
        assert!(matches!(
            bounded_subquasigroup_membership(&q, 0, &s, 0, 1, 10),
            Err(Error::InvalidArgument(_))
        ));
        assert_eq!(
            bounded_subquasigroup_membership(&corpus::right_zero(2), 0, &set(2, &[0]), 2, 1, 10),
            Err(Error::NotQuasigroup)
        );
    }

    #[test]
    fn subgroup_examples() {
        let z6 = corpus::cyclic(6);
        assert_eq!(subgroup_membership(&z6, 3, &set(6, &[2])), Ok(false));
        assert_eq!(subgroup_membership(&z6, 0, &set(6, &[5])), Ok(true));
        assert_eq!(subgroup_membership(&z6, 2, &set(6, &[4])), Ok(true));
        assert_eq!(subgroup_membership(&z6, 0, &set(6, &[])), Ok(false));
        assert_eq!(
            subgroup_membership(&corpus::small_quasigroup(), 0, &set(3, &[1])),
            Err(Error::NotGroup)
        );
    }

    #[test]
    fn subring_examples() {
        let cube = corpus::ring_boolean_cube(3);
        let s = set(8, &[tuple_to_bits(&[0, 1, 1]), tuple_to_bits(&[1, 1, 0])]);
        assert!(subring_closure(&cube, &s).is_full());
        assert_eq!(subring_membership(&cube, tuple_to_bits(&[1, 1, 1]), &s), Ok(true));
        assert!(subring_closure(&cube, &set(8, &[])).is_empty());

        let z6 = corpus::ring_modular(6);
        assert_eq!(subring_closure(&z6, &set(6, &[2])).to_vec(), vec![0, 2, 4]);
        assert_eq!(subring_membership(&z6, 4, &set(6, &[4])), Ok(true));
        assert_eq!(subring_membership(&z6, 3, &set(6, &[2])), Ok(false));
    }

    #[test]
    fn subring_graph_examples() {
        let cube = corpus::ring_boolean_cube(3);
        let s = set(8, &[tuple_to_bits(&[0, 1, 1]), tuple_to_bits(&[1, 1, 0])]);
        assert_eq!(subring_membership_graph(&cube, cube.one(), &s, GraphLabels::Strict), Ok(true));
        assert_eq!(subring_membership_graph(&cube, 0, &s, GraphLabels::Strict), Ok(true));
        assert_eq!(
            subring_membership_graph(&cube, 0, &s, GraphLabels::Strict),
            Ok(unital_subring_closure(&cube, &s).contains(0))
        );

        let z6 = corpus::ring_modular(6);
        let empty = set(6, &[]);
        assert_eq!(subring_membership_graph(&z6, 1, &empty, GraphLabels::Strict), Ok(true));
        assert_eq!(subring_membership_graph(&z6, 2, &empty, GraphLabels::Strict), Ok(false));
        // the unital closure of ∅ is all of Z/6, so the strict graph misses 2
        assert!(unital_subring_closure(&z6, &empty).contains(2));
        assert_eq!(subring_membership_graph(&z6, 2, &empty, GraphLabels::WithUnit), Ok(true));
    }

    #[test]
    fn query_validation() {
        assert!(MembershipQuery::new(3, 3, &[0]).is_err());
        assert!(MembershipQuery::new(3, 0, &[5]).is_err());
        let q = MembershipQuery::new(3, 0, &[1]).unwrap();
        assert!(q.clone().with_bounds(0, 1).is_err());
        assert_eq!(q.with_bounds(2, 1).unwrap().bounds, Some((2, 1)));
    }
}
