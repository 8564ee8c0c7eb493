use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::table::CayleyTable;

/// The ring axiom that failed, with a witness where one exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum RingAxiom {
    NotAbelian { x: usize, y: usize },
    AdditionNotAssociative { x: usize, y: usize, z: usize },
    NoZero,
    NoNegative { x: usize },
    MultiplicationNotAssociative { x: usize, y: usize, z: usize },
    NoOne,
    DistributivityFail { a: usize, b: usize, c: usize, side: Side },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl RingAxiom {
    pub fn name(&self) -> &'static str {
        match self {
            RingAxiom::NotAbelian { .. } => "not-abelian",
            RingAxiom::AdditionNotAssociative { .. } => "addition-not-associative",
            RingAxiom::NoZero => "no-zero",
            RingAxiom::NoNegative { .. } => "no-negative",
            RingAxiom::MultiplicationNotAssociative { .. } => "multiplication-not-associative",
            RingAxiom::NoOne => "no-one",
            RingAxiom::DistributivityFail { .. } => "distributivity-fail",
        }
    }
}

impl fmt::Display for RingAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingAxiom::NotAbelian { x, y } => write!(f, "not-abelian: {x}+{y} != {y}+{x}"),
            RingAxiom::AdditionNotAssociative { x, y, z } => {
                write!(f, "addition-not-associative at ({x}, {y}, {z})")
            }
            RingAxiom::NoZero => f.write_str("no-zero"),
            RingAxiom::NoNegative { x } => write!(f, "no-negative for {x}"),
            RingAxiom::MultiplicationNotAssociative { x, y, z } => {
                write!(f, "multiplication-not-associative at ({x}, {y}, {z})")
            }
            RingAxiom::NoOne => f.write_str("no-one"),
            RingAxiom::DistributivityFail { a, b, c, side } => {
                write!(f, "distributivity-fail ({side:?}) at ({a}, {b}, {c})")
            }
        }
    }
}

/// A finite ring with identity given by its two operation tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingTable {
    add: CayleyTable,
    mul: CayleyTable,
    zero: usize,
    one: usize,
    neg: Vec<usize>,
}

impl RingTable {
    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn add_table(&self) -> &CayleyTable {
        &self.add
    }

    pub fn mul_table(&self) -> &CayleyTable {
        &self.mul
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add.op(x, y)
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul.op(x, y)
    }

    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add.op(x, self.neg[y])
    }
}

/// Checks the ring axioms and locates `0`, `1` and negation.
pub fn validate_ring(add: CayleyTable, mul: CayleyTable) -> Result<RingTable> {
    let n = add.order();
    if mul.order() != n {
        return Err(Error::OrderMismatch {
            left: n,
            right: mul.order(),
        });
    }
    let fail = |axiom| Err(Error::Ring(axiom));

    for x in 0..n {
        for y in (x + 1)..n {
            if add.op(x, y) != add.op(y, x) {
                return fail(RingAxiom::NotAbelian { x, y });
            }
        }
    }
    if let Some((x, y, z)) = add.non_associative_triple() {
        return fail(RingAxiom::AdditionNotAssociative { x, y, z });
    }
    let Some(zero) = add.identity() else {
        return fail(RingAxiom::NoZero);
    };
    let mut neg = Vec::with_capacity(n);
    for x in 0..n {
        match (0..n).find(|&y| add.op(x, y) == zero) {
            Some(y) => neg.push(y),
            None => return fail(RingAxiom::NoNegative { x }),
        }
    }
    if let Some((x, y, z)) = mul.non_associative_triple() {
        return fail(RingAxiom::MultiplicationNotAssociative { x, y, z });
    }
    let Some(one) = mul.identity() else {
        return fail(RingAxiom::NoOne);
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let bc = add.op(b, c);
                if mul.op(a, bc) != add.op(mul.op(a, b), mul.op(a, c)) {
                    return fail(RingAxiom::DistributivityFail { a, b, c, side: Side::Left });
                }
                if mul.op(bc, a) != add.op(mul.op(b, a), mul.op(c, a)) {
                    return fail(RingAxiom::DistributivityFail { a, b, c, side: Side::Right });
                }
            }
        }
    }
    Ok(RingTable {
        add,
        mul,
        zero,
        one,
        neg,
    })
}
