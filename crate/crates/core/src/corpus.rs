//! Deterministic generators for test structures.
//!
//! Everything seeded goes through `ChaCha8Rng::seed_from_u64`, so the same
//! family, parameters and seed always give the same table.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{validate_ring, RingTable};
use crate::table::CayleyTable;

/// ℤ/nℤ under addition.
pub fn cyclic(n: usize) -> CayleyTable {
    CayleyTable::from_fn(n, |x, y| (x + y) % n)
}

/// (ℤ/2ℤ)^k. Element `x` is the bit string of `x`, most significant
/// coordinate first; addition is XOR.
pub fn elementary_abelian(k: usize) -> CayleyTable {
    CayleyTable::from_fn(1 << k, |x, y| x ^ y)
}

/// `x · y = y`.
pub fn right_zero(n: usize) -> CayleyTable {
    CayleyTable::from_fn(n, |_, y| y)
}

/// `x · y = x`.
pub fn left_zero(n: usize) -> CayleyTable {
    CayleyTable::from_fn(n, |x, _| x)
}

/// `x · y = 0`.
pub fn null_semigroup(n: usize) -> CayleyTable {
    CayleyTable::from_fn(n, |_, _| 0)
}

/// ℤ/nℤ under multiplication.
pub fn multiplicative_monoid(n: usize) -> CayleyTable {
    CayleyTable::from_fn(n, |x, y| x * y % n)
}

/// The order-3 quasigroup with left identity `a = 0` and no right identity.
pub fn small_quasigroup() -> CayleyTable {
    CayleyTable::from_rows(vec![vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]])
        .expect("static table")
}

/// The non-associative loop of order 5.
pub fn loop5() -> CayleyTable {
    CayleyTable::from_rows(vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 4, 2],
        vec![2, 4, 0, 1, 3],
        vec![3, 2, 4, 0, 1],
        vec![4, 3, 1, 2, 0],
    ])
    .expect("static table")
}

/// Componentwise product; `(x1, x2)` has index `x1 · |t2| + x2`.
pub fn direct_product(t1: &CayleyTable, t2: &CayleyTable) -> CayleyTable {
    let m = t2.order();
    CayleyTable::from_fn(t1.order() * m, |x, y| {
        t1.op(x / m, y / m) * m + t2.op(x % m, y % m)
    })
}

/// Dihedral group of order `2m`; `r^i s^j` has index `i + m·j`.
pub fn dihedral(m: usize) -> CayleyTable {
    assert!(m >= 1);
    CayleyTable::from_fn(2 * m, |x, y| {
        let (i, j) = (x % m, x / m);
        let (k, l) = (y % m, y / m);
        // r^i s^j r^k s^l = r^(i ± k) s^(j + l)
        let rot = if j == 0 { (i + k) % m } else { (i + m - k) % m };
        rot + m * ((j + l) % 2)
    })
}

/// Quaternion group Q8: index `2·u + s` for unit `u ∈ {1, i, j, k}` and sign `s`.
pub fn quaternion() -> CayleyTable {
    // unit products: (unit, sign flip)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    CayleyTable::from_fn(8, |x, y| {
        let (u, s) = UNIT[x / 2][y / 2];
        2 * u + ((x % 2 + y % 2 + s) % 2)
    })
}

/// The group generated by permutations of `0..degree`, elements numbered in
/// order of discovery starting from the identity.
pub fn permutation_group(generators: &[Vec<usize>]) -> CayleyTable {
    let degree = generators.first().map_or(1, Vec::len);
    let identity: Vec<usize> = (0..degree).collect();
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut i = 0;
    while i < elements.len() {
        for g in generators {
            let p: Vec<usize> = (0..degree).map(|x| g[elements[i][x]]).collect();
            if !index.contains_key(&p) {
                index.insert(p.clone(), elements.len());
                elements.push(p);
            }
        }
        i += 1;
    }
    // (x · y)(v) = y(x(v)): apply x first
    CayleyTable::from_fn(elements.len(), |x, y| {
        let p: Vec<usize> = (0..degree).map(|v| elements[y][elements[x][v]]).collect();
        index[&p]
    })
}

pub fn alternating4() -> CayleyTable {
    permutation_group(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

pub fn symmetric(degree: usize) -> CayleyTable {
    if degree <= 1 {
        return cyclic(1);
    }
    let mut swap: Vec<usize> = (0..degree).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (0..degree).map(|x| (x + 1) % degree).collect();
    permutation_group(&[swap, cycle])
}

/// Random Latin square, filled row by row. Each row is a perfect matching of
/// columns to the symbols still free in that column, found by augmenting-path
/// backtracking over shuffled candidate lists.
pub fn random_latin_square(n: usize, seed: u64) -> CayleyTable {
    assert!(n >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = vec![vec![false; n]; n]; // used[col][symbol]
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let mut candidates: Vec<Vec<usize>> = (0..n)
            .map(|c| {
                let mut free: Vec<usize> = (0..n).filter(|&s| !used[c][s]).collect();
                free.shuffle(&mut rng);
                free
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let mut owner = vec![usize::MAX; n]; // symbol -> column
        for &c in &order {
            let mut seen = vec![false; n];
            let placed = augment(c, &candidates, &mut owner, &mut seen);
            assert!(placed, "a Latin rectangle row always extends");
        }
        let mut row = vec![0; n];
        for (s, &c) in owner.iter().enumerate() {
            row[c] = s;
            used[c][s] = true;
        }
        candidates.clear();
        rows.push(row);
    }
    CayleyTable::from_rows(rows).expect("generated rows are in range")
}

fn augment(col: usize, candidates: &[Vec<usize>], owner: &mut [usize], seen: &mut [bool]) -> bool {
    for &s in &candidates[col] {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        if owner[s] == usize::MAX || augment(owner[s], candidates, owner, seen) {
            owner[s] = col;
            return true;
        }
    }
    false
}

/// Uniformly random operation table.
pub fn random_magma(n: usize, seed: u64) -> CayleyTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries: Vec<usize> = (0..n * n).map(|_| rng.gen_range(0..n)).collect();
    CayleyTable::from_fn(n, |x, y| entries[x * n + y])
}

/// Seeded permutation of `0..n`.
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    perm
}

/// `t` with its elements relabelled by a seeded permutation.
pub fn shuffled(t: &CayleyTable, seed: u64) -> CayleyTable {
    t.relabel(&random_permutation(t.order(), seed))
}

/// ℤ/nℤ with addition and multiplication mod n.
pub fn ring_modular(n: usize) -> RingTable {
    validate_ring(cyclic(n), multiplicative_monoid(n)).expect("ℤ/nℤ is a ring")
}

/// (ℤ/2ℤ)^k with componentwise operations, indexed as in [`elementary_abelian`].
pub fn ring_boolean_cube(k: usize) -> RingTable {
    validate_ring(
        elementary_abelian(k),
        CayleyTable::from_fn(1 << k, |x, y| x & y),
    )
    .expect("boolean cube is a ring")
}

/// The field with four elements, `a + b·w` at index `2a + b` where `w² = w + 1`.
pub fn ring_gf4() -> RingTable {
    let mul = |x: usize, y: usize| {
        let (a, b, c, d) = (x >> 1, x & 1, y >> 1, y & 1);
        // (a + bw)(c + dw) = ac + (ad + bc)w + bd(w + 1)
        let constant = (a * c + b * d) % 2;
        let linear = (a * d + b * c + b * d) % 2;
        2 * constant + linear
    };
    validate_ring(elementary_abelian(2), CayleyTable::from_fn(4, mul)).expect("GF(4) is a ring")
}

/// Upper triangular 2×2 matrices over 𝔽₂, `[[a, b], [0, c]]` at index `4a + 2b + c`.
pub fn ring_upper_triangular_f2() -> RingTable {
    let mul = |x: usize, y: usize| {
        let (a, b, c) = (x >> 2 & 1, x >> 1 & 1, x & 1);
        let (d, e, f) = (y >> 2 & 1, y >> 1 & 1, y & 1);
        let (p, q, r) = (a * d % 2, (a * e + b * f) % 2, c * f % 2);
        4 * p + 2 * q + r
    };
    validate_ring(elementary_abelian(3), CayleyTable::from_fn(8, mul))
        .expect("upper triangular matrices form a ring")
}

/// Coordinates of a boolean-cube element, most significant first.
pub fn bits_to_tuple(x: usize, k: usize) -> Vec<usize> {
    (0..k).map(|i| x >> (k - 1 - i) & 1).collect()
}

pub fn tuple_to_bits(coords: &[usize]) -> usize {
    coords.iter().fold(0, |acc, &c| acc << 1 | (c & 1))
}

pub type Named<T> = (String, T);

/// Groups of order at most `max_n`: cyclic, elementary abelian, direct
/// products, dihedral, Q8, A4 and shuffled copies.
pub fn group_corpus(max_n: usize) -> Vec<Named<CayleyTable>> {
    let mut out: Vec<Named<CayleyTable>> = Vec::new();
    for n in 1..=max_n.min(24) {
        out.push((format!("Z{n}"), cyclic(n)));
    }
    for k in 1..=4 {
        out.push((format!("Z2^{k}"), elementary_abelian(k)));
    }
    for (a, b) in [(2, 3), (2, 4), (3, 3), (2, 6), (2, 8), (4, 4)] {
        out.push((format!("Z{a}xZ{b}"), direct_product(&cyclic(a), &cyclic(b))));
    }
    out.push(("Z2xZ2xZ4".into(), direct_product(&elementary_abelian(2), &cyclic(4))));
    for m in 2..=8 {
        out.push((format!("D{m}"), dihedral(m)));
    }
    out.push(("Q8".into(), quaternion()));
    out.push(("A4".into(), alternating4()));
    out.push(("Z2xS3".into(), direct_product(&cyclic(2), &dihedral(3))));
    let shuffles = [
        ("Z6", cyclic(6)),
        ("Z12", cyclic(12)),
        ("Z2^3", elementary_abelian(3)),
        ("Z2xZ4", direct_product(&cyclic(2), &cyclic(4))),
        ("D4", dihedral(4)),
        ("Q8", quaternion()),
        ("Z2^4", elementary_abelian(4)),
    ];
    for (i, (name, t)) in shuffles.into_iter().enumerate() {
        out.push((format!("shuffled({name})"), shuffled(&t, 100 + i as u64)));
    }
    out.retain(|(_, t)| t.order() <= max_n);
    out
}

/// Latin squares of order at most `max_n`: groups, the order-3 quasigroup,
/// the order-5 loop, random squares and shuffled copies.
pub fn quasigroup_corpus(max_n: usize) -> Vec<Named<CayleyTable>> {
    let mut out = group_corpus(max_n);
    out.push(("small-quasigroup".into(), small_quasigroup()));
    out.push(("shuffled(small-quasigroup)".into(), shuffled(&small_quasigroup(), 7)));
    out.push(("loop5".into(), loop5()));
    for n in 2..=max_n.min(10) {
        for seed in 1..=3 {
            out.push((format!("latin({n},{seed})"), random_latin_square(n, seed)));
        }
    }
    out.retain(|(_, t)| t.order() <= max_n);
    out
}

/// Every table family of order at most `max_n`, including semigroups,
/// monoids and random magmas.
pub fn structure_corpus(max_n: usize) -> Vec<Named<CayleyTable>> {
    let mut out = quasigroup_corpus(max_n);
    for n in 1..=8 {
        out.push((format!("right-zero({n})"), right_zero(n)));
    }
    for n in 2..=6 {
        out.push((format!("left-zero({n})"), left_zero(n)));
        out.push((format!("null({n})"), null_semigroup(n)));
    }
    for n in 2..=10 {
        out.push((format!("mul({n})"), multiplicative_monoid(n)));
    }
    for n in 2..=6 {
        for seed in 1..=2 {
            out.push((format!("magma({n},{seed})"), random_magma(n, seed)));
        }
    }
    out.retain(|(_, t)| t.order() <= max_n);
    out
}

/// Rings of order at most 16.
pub fn ring_corpus() -> Vec<Named<RingTable>> {
    let mut out: Vec<Named<RingTable>> = (1..=16)
        .map(|n| (format!("Z/{n}"), ring_modular(n)))
        .collect();
    for k in 1..=4 {
        out.push((format!("F2^{k}"), ring_boolean_cube(k)));
    }
    out.push(("GF4".into(), ring_gf4()));
    out.push(("UT2(F2)".into(), ring_upper_triangular_f2()));
    out
}

/// Generator families reachable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Cyclic,
    ElementaryAbelian,
    RightZero,
    LeftZero,
    Null,
    MulMonoid,
    SmallQuasigroup,
    Loop5,
    Dihedral,
    Quaternion,
    Alternating4,
    Symmetric,
    RandomLatin,
    RandomMagma,
    RingModular,
    RingBooleanCube,
    RingGf4,
    RingUpperTriangular,
}

impl Family {
    pub const ALL: [Family; 18] = [
        Family::Cyclic,
        Family::ElementaryAbelian,
        Family::RightZero,
        Family::LeftZero,
        Family::Null,
        Family::MulMonoid,
        Family::SmallQuasigroup,
        Family::Loop5,
        Family::Dihedral,
        Family::Quaternion,
        Family::Alternating4,
        Family::Symmetric,
        Family::RandomLatin,
        Family::RandomMagma,
        Family::RingModular,
        Family::RingBooleanCube,
        Family::RingGf4,
        Family::RingUpperTriangular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Cyclic => "cyclic",
            Family::ElementaryAbelian => "elementary-abelian",
            Family::RightZero => "right-zero",
            Family::LeftZero => "left-zero",
            Family::Null => "null",
            Family::MulMonoid => "mul-monoid",
            Family::SmallQuasigroup => "small-quasigroup",
            Family::Loop5 => "loop5",
            Family::Dihedral => "dihedral",
            Family::Quaternion => "quaternion",
            Family::Alternating4 => "alternating4",
            Family::Symmetric => "symmetric",
            Family::RandomLatin => "random-latin",
            Family::RandomMagma => "random-magma",
            Family::RingModular => "ring-modular",
            Family::RingBooleanCube => "ring-boolean-cube",
            Family::RingGf4 => "ring-gf4",
            Family::RingUpperTriangular => "ring-upper-triangular",
        }
    }

    /// Number of integer parameters the family takes.
    pub fn arity(self) -> usize {
        match self {
            Family::SmallQuasigroup
            | Family::Loop5
            | Family::Quaternion
            | Family::Alternating4
            | Family::RingGf4
            | Family::RingUpperTriangular => 0,
            _ => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("unknown family {s:?}"),
            })
    }
}

/// A family, its size parameters and a seed (ignored by unseeded families).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    pub family: Family,
    pub params: Vec<usize>,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generated {
    Table(CayleyTable),
    Ring(RingTable),
}

/// Orders above this are refused by [`CorpusSpec::generate`].
pub const MAX_GENERATED_ORDER: usize = 1 << 12;

impl CorpusSpec {
    pub fn new(family: Family, params: Vec<usize>, seed: u64) -> Self {
        CorpusSpec { family, params, seed }
    }

    pub fn generate(&self) -> Result<Generated> {
        if self.params.len() != self.family.arity() {
            return Err(Error::Parse {
                line: 0,
                message: format!(
                    "{} takes {} parameter(s), got {}",
                    self.family,
                    self.family.arity(),
                    self.params.len()
                ),
            });
        }
        let p = self.params.first().copied().unwrap_or(0);
        let order = match self.family {
            Family::ElementaryAbelian | Family::RingBooleanCube => 1usize.checked_shl(p as u32),
            Family::Dihedral => p.checked_mul(2),
            Family::Symmetric => (1..=p).try_fold(1usize, |a, b| a.checked_mul(b)),
            _ => Some(p),
        };
        if self.family.arity() == 1 {
            match order {
                Some(0) => {
                    return Err(Error::EmptyTable);
                }
                Some(m) if m <= MAX_GENERATED_ORDER => {}
                _ => {
                    return Err(Error::Budget {
                        what: "generated order",
                        requested: order.unwrap_or(usize::MAX),
                        limit: MAX_GENERATED_ORDER,
                    })
                }
            }
        }
        Ok(match self.family {
            Family::Cyclic => Generated::Table(cyclic(p)),
            Family::ElementaryAbelian => Generated::Table(elementary_abelian(p)),
            Family::RightZero => Generated::Table(right_zero(p)),
            Family::LeftZero => Generated::Table(left_zero(p)),
            Family::Null => Generated::Table(null_semigroup(p)),
            Family::MulMonoid => Generated::Table(multiplicative_monoid(p)),
            Family::SmallQuasigroup => Generated::Table(small_quasigroup()),
            Family::Loop5 => Generated::Table(loop5()),
            Family::Dihedral => Generated::Table(dihedral(p)),
            Family::Quaternion => Generated::Table(quaternion()),
            Family::Alternating4 => Generated::Table(alternating4()),
            Family::Symmetric => Generated::Table(symmetric(p)),
            Family::RandomLatin => Generated::Table(random_latin_square(p, self.seed)),
            Family::RandomMagma => Generated::Table(random_magma(p, self.seed)),
            Family::RingModular => Generated::Ring(ring_modular(p)),
            Family::RingBooleanCube => Generated::Ring(ring_boolean_cube(p)),
            Family::RingGf4 => Generated::Ring(ring_gf4()),
            Family::RingUpperTriangular => Generated::Ring(ring_upper_triangular_f2()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::Kind;

    #[test]
    fn cyclic_three_matches_printed_group() {
        assert_eq!(
            cyclic(3).rows(),
            vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]
        );
        assert_eq!(cyclic(1).rows(), vec![vec![0]]);
    }

    #[test]
    fn right_zero_three_matches_printed_semigroup() {
        assert_eq!(right_zero(3).rows(), vec![vec![0, 1, 2]; 3]);
    }

    #[test]
    fn right_zero_is_associative_and_not_latin() {
        for n in 1..=8 {
            let t = right_zero(n);
            assert!(t.is_associative());
            assert_eq!(t.is_latin_square(), n == 1);
        }
    }

    #[test]
    fn small_quasigroup_flags() {
        let q = small_quasigroup();
        assert!(q.is_latin_square());
        assert!(!q.is_associative());
        assert_eq!(q.left_identities(), vec![0]);
    }

    #[test]
    fn products_and_families_classify() {
        assert_eq!(direct_product(&cyclic(2), &cyclic(2)), elementary_abelian(2));
        assert_eq!(direct_product(&dihedral(3), &cyclic(4)).classify().kind, Kind::Group);
        let latin = direct_product(&small_quasigroup(), &random_latin_square(4, 3));
        assert!(latin.is_latin_square());
        assert_eq!(quaternion().classify().kind, Kind::Group);
        assert_eq!(alternating4().order(), 12);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(dihedral(1).order(), 2);
        assert_eq!(loop5().classify().kind, Kind::Loop);
    }

    #[test]
    fn quaternion_is_non_abelian_with_one_involution() {
        let q = quaternion();
        assert!((0..8).any(|x| (0..8).any(|y| q.op(x, y) != q.op(y, x))));
        let involutions = (1..8).filter(|&x| q.op(x, x) == 0).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn random_latin_squares_are_latin() {
        assert_eq!(random_latin_square(1, 9).rows(), vec![vec![0]]);
        for n in 2..=32 {
            for seed in 0..3 {
                assert!(random_latin_square(n, seed).is_latin_square(), "n={n} seed={seed}");
            }
        }
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(random_latin_square(9, 4), random_latin_square(9, 4));
        assert_ne!(random_latin_square(9, 4), random_latin_square(9, 5));
        assert_eq!(random_magma(5, 1), random_magma(5, 1));
        assert_eq!(shuffled(&cyclic(7), 2), shuffled(&cyclic(7), 2));
    }

    #[test]
    fn shuffling_preserves_structure() {
        for (name, t) in quasigroup_corpus(8) {
            let s = shuffled(&t, 11);
            assert_eq!(s.classify().kind, t.classify().kind, "{name}");
            assert!(s.is_latin_square());
        }
    }

    #[test]
    fn corpora_pass_their_validators() {
        for (name, t) in group_corpus(24) {
            assert_eq!(t.classify().kind, Kind::Group, "{name}");
        }
        for (name, t) in quasigroup_corpus(10) {
            assert!(t.is_latin_square(), "{name}");
        }
        for (name, t) in structure_corpus(10) {
            if name.starts_with("right-zero") || name.starts_with("null") || name.starts_with("left-zero") {
                assert!(t.is_associative(), "{name}");
            }
        }
        // ring_corpus() validates every ring while building it
        assert_eq!(ring_corpus().len(), 22);
        assert!(structure_corpus(10).len() >= 50);
    }

    #[test]
    fn boolean_cube_coordinates() {
        assert_eq!(bits_to_tuple(6, 3), vec![1, 1, 0]);
        assert_eq!(tuple_to_bits(&[0, 1, 1]), 3);
        let r = ring_boolean_cube(3);
        assert_eq!(r.mul(tuple_to_bits(&[0, 1, 1]), tuple_to_bits(&[1, 1, 0])), tuple_to_bits(&[0, 1, 0]));
    }

    #[test]
    fn spec_generation() {
        let spec = CorpusSpec::new(Family::Cyclic, vec![3], 0);
        assert_eq!(spec.generate().unwrap(), Generated::Table(cyclic(3)));
        assert!("bogus".parse::<Family>().is_err());
        assert!(CorpusSpec::new(Family::Cyclic, vec![], 0).generate().is_err());
        assert!(CorpusSpec::new(Family::Cyclic, vec![0], 0).generate().is_err());
        assert!(CorpusSpec::new(Family::ElementaryAbelian, vec![40], 0).generate().is_err());
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
    }

    #[test]
    fn gf4_is_a_field() {
        let r = ring_gf4();
        for x in 1..4 {
            assert!((1..4).any(|y| r.mul(x, y) == r.one()));
        }
    }
}
