//! Cayley tables and structure classification.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::set::ElementSet;

/// The operation table of a finite magma on the elements `0..n`.
///
/// Entries are stored row-major; `table[x][y]` is `x · y`. Every entry is
/// checked to lie in `0..n` on construction, so the operation is closed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    n: usize,
    entries: Vec<u32>,
}

impl CayleyTable {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::RowLength {
                    row: i,
                    len: row.len(),
                    n,
                });
            }
            for x in row {
                if x >= n {
                    return Err(Error::ElementOutOfRange { element: x, n });
                }
                entries.push(x as u32);
            }
        }
        Ok(CayleyTable { n, entries })
    }

    /// Builds a table from an operation. Panics if `op` leaves `0..n`.
    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        assert!(n >= 1, "a Cayley table needs at least one element");
        let mut entries = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let z = op(x, y);
                assert!(z < n, "{x}·{y} = {z} is outside 0..{n}");
                entries.push(z as u32);
            }
        }
        CayleyTable { n, entries }
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Checked lookup of `x · y`.
    pub fn product(&self, x: usize, y: usize) -> Result<usize> {
        for e in [x, y] {
            if e >= self.n {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    n: self.n,
                });
            }
        }
        Ok(self.op(x, y))
    }

    /// Unchecked lookup of `x · y`; indices must be in range.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.entries[x * self.n + y] as usize
    }

    pub fn row(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.entries[x * self.n..(x + 1) * self.n]
            .iter()
            .map(|&v| v as usize)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| self.row(x).collect()).collect()
    }

    pub fn is_latin_square(&self) -> bool {
        let n = self.n;
        let mut seen = vec![0usize; n];
        let mut stamp = 0;
        for x in 0..n {
            stamp += 1;
            for y in 0..n {
                let v = self.op(x, y);
                if seen[v] == stamp {
                    return false;
                }
                seen[v] = stamp;
            }
        }
        for y in 0..n {
            stamp += 1;
            for x in 0..n {
                let v = self.op(x, y);
                if seen[v] == stamp {
                    return false;
                }
                seen[v] = stamp;
            }
        }
        true
    }

    /// Light's test: the plain check of `(x·y)·z = x·(y·z)` over all triples.
    pub fn is_associative(&self) -> bool {
        self.non_associative_triple().is_none()
    }

    /// First triple (in lexicographic order) violating associativity.
    pub fn non_associative_triple(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.op(x, y);
                for z in 0..n {
                    if self.op(xy, z) != self.op(x, self.op(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Elements `e` with `e·x = x` for every `x`.
    pub fn left_identities(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&e| (0..self.n).all(|x| self.op(e, x) == x))
            .collect()
    }

    /// Elements `e` with `x·e = x` for every `x`.
    pub fn right_identities(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&e| (0..self.n).all(|x| self.op(x, e) == x))
            .collect()
    }

    /// The two-sided identity, if there is one (it is unique when it exists).
    pub fn identity(&self) -> Option<usize> {
        (0..self.n).find(|&e| (0..self.n).all(|x| self.op(e, x) == x && self.op(x, e) == x))
    }

    /// Two-sided inverses with respect to `identity`, when every element has one.
    pub fn inverses(&self, identity: usize) -> Option<Vec<usize>> {
        (0..self.n)
            .map(|x| {
                (0..self.n).find(|&y| self.op(x, y) == identity && self.op(y, x) == identity)
            })
            .collect()
    }

    pub fn classify(&self) -> StructureKind {
        let associative = self.is_associative();
        let latin_square = self.is_latin_square();
        let left_identities = self.left_identities();
        let right_identities = self.right_identities();
        let identity = self.identity();
        let has_inverses = identity.is_some_and(|e| self.inverses(e).is_some());
        let kind = match (associative, latin_square, identity.is_some()) {
            (true, true, _) => Kind::Group,
            (false, true, true) => Kind::Loop,
            (false, true, false) => Kind::Quasigroup,
            (true, false, true) => Kind::Monoid,
            (true, false, false) => Kind::Semigroup,
            (false, false, _) => Kind::Magma,
        };
        StructureKind {
            order: self.n,
            associative,
            latin_square,
            left_identities,
            right_identities,
            identity,
            has_inverses,
            kind,
        }
    }

    pub fn is_group(&self) -> bool {
        self.is_latin_square() && self.is_associative()
    }

    /// Restriction of the operation to a subset closed under it, relabelled
    /// to `0..|subset|` in increasing order. Returns the table and the map
    /// from new labels back to the original elements.
    pub fn restrict(&self, closed: &ElementSet) -> Option<(CayleyTable, Vec<usize>)> {
        let elements = closed.to_vec();
        if elements.is_empty() {
            return None;
        }
        let mut index = vec![usize::MAX; self.n];
        for (i, &x) in elements.iter().enumerate() {
            index[x] = i;
        }
        let m = elements.len();
        let mut entries = Vec::with_capacity(m * m);
        for &x in &elements {
            for &y in &elements {
                let z = index[self.op(x, y)];
                assert!(z != usize::MAX, "restrict() needs a subset closed under the operation");
                entries.push(z as u32);
            }
        }
        Some((CayleyTable { n: m, entries }, elements))
    }

    /// Table of the same operation with every element `x` renamed to `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> CayleyTable {
        assert_eq!(perm.len(), self.n);
        let mut entries = vec![0u32; self.n * self.n];
        for x in 0..self.n {
            for y in 0..self.n {
                entries[perm[x] * self.n + perm[y]] = perm[self.op(x, y)] as u32;
            }
        }
        CayleyTable { n: self.n, entries }
    }

    /// Whether `map` is a bijective homomorphism from `self` onto `other`,
    /// checked over all `n²` pairs.
    pub fn is_isomorphism(&self, other: &CayleyTable, map: &[usize]) -> bool {
        if self.n != other.n || map.len() != self.n {
            return false;
        }
        let mut hit = vec![false; self.n];
        for &y in map {
            if y >= self.n || std::mem::replace(&mut hit[y], true) {
                return false;
            }
        }
        (0..self.n).all(|x| (0..self.n).all(|y| map[self.op(x, y)] == other.op(map[x], map[y])))
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CayleyTable")
            .field("n", &self.n)
            .field("rows", &self.rows())
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Magma,
    Semigroup,
    Monoid,
    Quasigroup,
    Loop,
    Group,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Magma => "magma",
            Kind::Semigroup => "semigroup",
            Kind::Monoid => "monoid",
            Kind::Quasigroup => "quasigroup",
            Kind::Loop => "loop",
            Kind::Group => "group",
        }
    }

    pub fn is_quasigroup(self) -> bool {
        matches!(self, Kind::Quasigroup | Kind::Loop | Kind::Group)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Structural flags of a table and the most specific label they support.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureKind {
    pub order: usize,
    pub associative: bool,
    pub latin_square: bool,
    pub left_identities: Vec<usize>,
    pub right_identities: Vec<usize>,
    pub identity: Option<usize>,
    pub has_inverses: bool,
    pub kind: Kind,
}

impl StructureKind {
    pub fn has_left_identity(&self) -> bool {
        !self.left_identities.is_empty()
    }

    pub fn has_right_identity(&self) -> bool {
        !self.right_identities.is_empty()
    }

    pub fn has_two_sided_identity(&self) -> bool {
        self.identity.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;

    #[test]
    fn small_quasigroup_products() {
        let q = corpus::small_quasigroup();
        assert_eq!(q.product(B, A), Ok(C));
        // b·(a·b) = b·b = a, but (b·a)·b = c·b = c
        assert_eq!(q.op(B, q.op(A, B)), A);
        assert_eq!(q.op(q.op(B, A), B), C);
    }

    #[test]
    fn right_zero_products() {
        let t = corpus::right_zero(5);
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(t.product(x, y), Ok(y));
            }
        }
    }

    #[test]
    fn singleton_magma() {
        let t = CayleyTable::from_rows(vec![vec![0]]).unwrap();
        assert_eq!(t.product(0, 0), Ok(0));
        assert!(t.is_latin_square());
        assert_eq!(t.classify().kind, Kind::Group);
    }

    #[test]
    fn product_rejects_out_of_range() {
        let t = corpus::cyclic(3);
        assert_eq!(t.product(0, 3), Err(Error::ElementOutOfRange { element: 3, n: 3 }));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(CayleyTable::from_rows(vec![]), Err(Error::EmptyTable));
        assert_eq!(
            CayleyTable::from_rows(vec![vec![0, 1], vec![0]]),
            Err(Error::RowLength { row: 1, len: 1, n: 2 })
        );
        assert_eq!(
            CayleyTable::from_rows(vec![vec![0, 2], vec![0, 1]]),
            Err(Error::ElementOutOfRange { element: 2, n: 2 })
        );
    }

    #[test]
    fn latin_square_verdicts() {
        assert!(corpus::small_quasigroup().is_latin_square());
        assert!(!corpus::right_zero(3).is_latin_square());
        assert!(corpus::cyclic(7).is_latin_square());
    }

    #[test]
    fn associativity_verdicts() {
        let q = corpus::small_quasigroup();
        assert!(!q.is_associative());
        assert_eq!(q.non_associative_triple(), Some((1, 0, 0)));
        assert!(corpus::right_zero(3).is_associative());
        assert!(corpus::cyclic(3).is_associative());
    }

    #[test]
    fn classify_worked_examples() {
        let q = corpus::small_quasigroup().classify();
        assert_eq!(q.kind, Kind::Quasigroup);
        assert_eq!(q.left_identities, vec![A]);
        assert!(!q.has_right_identity());

        let z = corpus::right_zero(3).classify();
        assert_eq!(z.kind, Kind::Semigroup);
        assert!(!z.latin_square);
        assert_eq!(z.left_identities, vec![0, 1, 2]);
        assert!(z.right_identities.is_empty());

        let g = corpus::cyclic(3).classify();
        assert_eq!(g.kind, Kind::Group);
        assert_eq!(g.identity, Some(0));
        assert!(g.has_inverses);
    }

    #[test]
    fn classify_monoid_and_loop() {
        // multiplication mod 4 has identity 1 but 0 and 2 have no inverse
        let m = CayleyTable::from_fn(4, |x, y| x * y % 4).classify();
        assert_eq!(m.kind, Kind::Monoid);
        assert!(!m.has_inverses);

        // the smallest non-associative loop has order 5
        let l = CayleyTable::from_rows(vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ])
        .unwrap()
        .classify();
        assert_eq!(l.kind, Kind::Loop);
        assert!(l.kind.is_quasigroup());
    }

    #[test]
    fn restrict_remaps_indices() {
        let c6 = corpus::cyclic(6);
        let sub = ElementSet::from_elements(6, [0, 2, 4]).unwrap();
        let (t, back) = c6.restrict(&sub).unwrap();
        assert_eq!(back, vec![0, 2, 4]);
        assert_eq!(t, corpus::cyclic(3));
    }

    #[test]
    fn relabel_is_an_isomorphism() {
        let q = corpus::small_quasigroup();
        let perm = [2, 0, 1];
        let r = q.relabel(&perm);
        assert!(q.is_isomorphism(&r, &perm));
        assert!(!q.is_isomorphism(&r, &[0, 1, 2]));
    }
}
