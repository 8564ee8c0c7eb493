//! Element sequences, parenthesizations, parenthesized products and cubes.
//!
//! A parenthesization is a binary tree whose leaves are the positions
//! `0..=k` of a sequence, left to right. Trees are stored in postfix form,
//! which keeps evaluation a single pass over a small stack.
//!
//! The cube of a sequence `(g0, ..., gk)` is the set of products obtained
//! when each position `i >= 1` is kept or deleted according to bit `i - 1`
//! of a cube index. A subtree whose leaves are all deleted contributes
//! nothing, and a node with one empty side takes the other side's value.
//! Position 0 is never deleted.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::set::ElementSet;
use crate::table::CayleyTable;

/// A nonempty sequence of elements, positions `0..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ElementSequence(Vec<usize>);

impl ElementSequence {
    pub fn new(elems: Vec<usize>, n: usize) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::LeafMismatch("sequence must be nonempty".into()));
        }
        if let Some(&x) = elems.iter().find(|&&x| x >= n) {
            return Err(Error::ElementOutOfRange { element: x, n });
        }
        Ok(ElementSequence(elems))
    }

    pub(crate) fn new_unchecked(elems: Vec<usize>) -> Self {
        debug_assert!(!elems.is_empty());
        ElementSequence(elems)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of optional positions, `k`.
    pub fn optional_len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// The distinct elements of the sequence.
    pub fn to_set(&self, n: usize) -> ElementSet {
        let mut set = ElementSet::empty(n);
        for &x in &self.0 {
            set.insert(x);
        }
        set
    }
}

/// Selection bits `(ε1, ..., εk)`; bit `i - 1` keeps position `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubeIndex {
    bits: u64,
    len: usize,
}

impl CubeIndex {
    pub fn new(bits: u64, len: usize) -> Self {
        assert!(len < 64, "cube index length must be below 64");
        CubeIndex {
            bits: bits & ((1u64 << len) - 1),
            len,
        }
    }

    pub fn from_bools(eps: &[bool]) -> Self {
        let bits = eps
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &e)| acc | (u64::from(e) << i));
        CubeIndex::new(bits, eps.len())
    }

    pub fn zeros(len: usize) -> Self {
        CubeIndex::new(0, len)
    }

    pub fn ones(len: usize) -> Self {
        CubeIndex::new(u64::MAX, len)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Whether sequence position `pos` survives. Position 0 always does.
    #[inline]
    pub fn keeps(&self, pos: usize) -> bool {
        pos == 0 || self.bits >> (pos - 1) & 1 == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Step {
    Leaf(u32),
    Join,
}

/// A binary tree over the positions `0..leaves`, in order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Parenthesization {
    leaves: usize,
    depth: usize,
    postfix: Vec<Step>,
}

impl Parenthesization {
    /// The single-leaf tree.
    pub fn leaf() -> Self {
        Parenthesization {
            leaves: 1,
            depth: 0,
            postfix: vec![Step::Leaf(0)],
        }
    }

    /// `(left · right)`, with `right`'s positions shifted past `left`'s.
    pub fn join(left: &Parenthesization, right: &Parenthesization) -> Self {
        let shift = left.leaves as u32;
        let mut postfix = Vec::with_capacity(left.postfix.len() + right.postfix.len() + 1);
        postfix.extend_from_slice(&left.postfix);
        postfix.extend(right.postfix.iter().map(|s| match *s {
            Step::Leaf(p) => Step::Leaf(p + shift),
            Step::Join => Step::Join,
        }));
        postfix.push(Step::Join);
        Parenthesization {
            leaves: left.leaves + right.leaves,
            depth: 1 + left.depth.max(right.depth),
            postfix,
        }
    }

    /// Balanced tree with `leaves` leaves and depth `⌈log₂ leaves⌉`; odd
    /// splits put the extra leaf on the left.
    pub fn balanced(leaves: usize) -> Self {
        assert!(leaves >= 1, "a parenthesization needs at least one leaf");
        fn build(len: usize) -> Parenthesization {
            if len == 1 {
                Parenthesization::leaf()
            } else {
                let left = len.div_ceil(2);
                Parenthesization::join(&build(left), &build(len - left))
            }
        }
        build(leaves)
    }

    /// Left comb `((g0·g1)·g2)·…`.
    pub fn left_comb(leaves: usize) -> Self {
        assert!(leaves >= 1);
        let mut p = Parenthesization::leaf();
        for _ in 1..leaves {
            p = Parenthesization::join(&p, &Parenthesization::leaf());
        }
        p
    }

    /// Every tree with `leaves` leaves (Catalan many), in a fixed order.
    pub fn all(leaves: usize) -> Vec<Parenthesization> {
        assert!(leaves >= 1);
        let mut catalog: Vec<Vec<Parenthesization>> = vec![Vec::new(), vec![Self::leaf()]];
        for len in 2..=leaves {
            let mut shapes = Vec::new();
            for split in 1..len {
                for l in &catalog[split] {
                    for r in &catalog[len - split] {
                        shapes.push(Self::join(l, r));
                    }
                }
            }
            catalog.push(shapes);
        }
        catalog.swap_remove(leaves)
    }

    pub fn leaves(&self) -> usize {
        self.leaves
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    fn check(&self, s: &ElementSequence) -> Result<()> {
        if s.len() != self.leaves {
            return Err(Error::LeafMismatch(format!(
                "tree has {} leaves but the sequence has {} positions",
                self.leaves,
                s.len()
            )));
        }
        Ok(())
    }

    /// Evaluates the tree, with `value(pos)` giving each leaf (or `None`
    /// for a deleted leaf).
    #[inline]
    fn fold(&self, t: &CayleyTable, mut value: impl FnMut(usize) -> Option<usize>) -> Option<usize> {
        let mut stack: Vec<Option<usize>> = Vec::with_capacity(self.depth + 2);
        for step in &self.postfix {
            match *step {
                Step::Leaf(p) => stack.push(value(p as usize)),
                Step::Join => {
                    let r = stack.pop().expect("postfix underflow");
                    let l = stack.pop().expect("postfix underflow");
                    stack.push(match (l, r) {
                        (Some(a), Some(b)) => Some(t.op(a, b)),
                        (Some(a), None) => Some(a),
                        (None, r) => r,
                    });
                }
            }
        }
        stack.pop().flatten()
    }
}

impl fmt::Display for Parenthesization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut stack: Vec<String> = Vec::new();
        for step in &self.postfix {
            match *step {
                Step::Leaf(p) => stack.push(p.to_string()),
                Step::Join => {
                    let r = stack.pop().unwrap();
                    let l = stack.pop().unwrap();
                    stack.push(format!("({l} {r})"));
                }
            }
        }
        f.write_str(&stack.pop().unwrap_or_default())
    }
}

impl fmt::Debug for Parenthesization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Parenthesization({self})")
    }
}

impl Serialize for Parenthesization {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses the `Display` form: a position, or `(left right)`. Positions must
/// read `0, 1, 2, ...` from left to right.
impl FromStr for Parenthesization {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let tokens: Vec<String> = src
            .replace('(', " ( ")
            .replace(')', " ) ")
            .split_whitespace()
            .map(str::to_owned)
            .collect();
        let mut pos = 0;
        let mut next_leaf = 0usize;
        let tree = parse_node(&tokens, &mut pos, &mut next_leaf)?;
        if pos != tokens.len() {
            return Err(Error::LeafMismatch(format!(
                "trailing input after tree: {}",
                tokens[pos..].join(" ")
            )));
        }
        Ok(tree)
    }
}

fn parse_node(tokens: &[String], pos: &mut usize, next_leaf: &mut usize) -> Result<Parenthesization> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| Error::LeafMismatch("unexpected end of tree".into()))?;
    *pos += 1;
    if tok == "(" {
        let left = parse_node(tokens, pos, next_leaf)?;
        let right = parse_node(tokens, pos, next_leaf)?;
        match tokens.get(*pos) {
            Some(t) if t == ")" => *pos += 1,
            _ => return Err(Error::LeafMismatch("expected ')' after two subtrees".into())),
        }
        Ok(Parenthesization::join(&left, &right))
    } else {
        let leaf: usize = tok
            .parse()
            .map_err(|_| Error::LeafMismatch(format!("bad leaf token {tok:?}")))?;
        if leaf != *next_leaf {
            return Err(Error::LeafMismatch(format!(
                "leaf {leaf} found where position {} was expected",
                next_leaf
            )));
        }
        *next_leaf += 1;
        Ok(Parenthesization::leaf())
    }
}

/// `P(g0, ..., gk)`.
pub fn eval_parenthesized(t: &CayleyTable, s: &ElementSequence, p: &Parenthesization) -> Result<usize> {
    p.check(s)?;
    Ok(p
        .fold(t, |pos| Some(s.0[pos]))
        .expect("position 0 is always present"))
}

/// `P(g0, g1^ε1, ..., gk^εk)`.
pub fn cube_eval(
    t: &CayleyTable,
    s: &ElementSequence,
    p: &Parenthesization,
    e: CubeIndex,
) -> Result<usize> {
    p.check(s)?;
    if e.len() != s.optional_len() {
        return Err(Error::LeafMismatch(format!(
            "cube index has {} bits, sequence has {} optional positions",
            e.len(),
            s.optional_len()
        )));
    }
    Ok(p
        .fold(t, |pos| e.keeps(pos).then(|| s.0[pos]))
        .expect("position 0 is always present"))
}

const EMPTY: u32 = u32::MAX;

/// The product for every cube index, indexed by `CubeIndex::bits()`.
///
/// Each subtree's values are computed once per assignment of its own
/// selection bits and combined upward, so the cost is about
/// `depth · 2^k` products rather than `k · 2^k`.
pub fn cube_table(
    t: &CayleyTable,
    s: &ElementSequence,
    p: &Parenthesization,
    max_bits: usize,
) -> Result<Vec<u32>> {
    p.check(s)?;
    let k = s.optional_len();
    if k > max_bits {
        return Err(Error::Budget {
            what: "cube enumeration bits",
            requested: k,
            limit: max_bits,
        });
    }
    // each stack entry: values indexed by the local bits of the subtree's
    // optional positions, plus how many such bits it has
    let mut stack: Vec<(Vec<u32>, usize)> = Vec::new();
    for step in &p.postfix {
        match *step {
            Step::Leaf(0) => stack.push((vec![s.0[0] as u32], 0)),
            Step::Leaf(q) => stack.push((vec![EMPTY, s.0[q as usize] as u32], 1)),
            Step::Join => {
                let (right, rb) = stack.pop().expect("postfix underflow");
                let (left, lb) = stack.pop().expect("postfix underflow");
                let mut out = Vec::with_capacity(left.len() * right.len());
                for &b in &right {
                    for &a in &left {
                        out.push(match (a, b) {
                            (EMPTY, b) => b,
                            (a, EMPTY) => a,
                            (a, b) => t.op(a as usize, b as usize) as u32,
                        });
                    }
                }
                stack.push((out, lb + rb));
            }
        }
    }
    let (values, bits) = stack.pop().expect("empty tree");
    debug_assert_eq!(bits, k);
    Ok(values)
}

/// `cube_P(S)` with the default enumeration limit of 24 optional positions.
pub fn cube_set(t: &CayleyTable, s: &ElementSequence, p: &Parenthesization) -> Result<ElementSet> {
    cube_set_within(t, s, p, crate::Budget::default().cube_bits)
}

pub fn cube_set_within(
    t: &CayleyTable,
    s: &ElementSequence,
    p: &Parenthesization,
    max_bits: usize,
) -> Result<ElementSet> {
    let values = cube_table(t, s, p, max_bits)?;
    let mut set = ElementSet::empty(t.order());
    for v in values {
        set.insert(v as usize);
        if set.is_full() {
            break;
        }
    }
    Ok(set)
}
