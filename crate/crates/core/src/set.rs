use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense membership vector over the elements `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    n: usize,
    words: Vec<u64>,
    len: usize,
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        ElementSet {
            n,
            words: vec![0; n.div_ceil(64)],
            len: 0,
        }
    }

    pub fn full(n: usize) -> Self {
        let mut set = Self::empty(n);
        for x in 0..n {
            set.insert(x);
        }
        set
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(n: usize, elements: I) -> Result<Self> {
        let mut set = Self::empty(n);
        for x in elements {
            if x >= n {
                return Err(Error::ElementOutOfRange { element: x, n });
            }
            set.insert(x);
        }
        Ok(set)
    }

    /// Builds a set from the low `n` bits of `mask`. Only meaningful for `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= 64);
        let mask = if n == 64 { mask } else { mask & ((1u64 << n) - 1) };
        let mut words = vec![0; n.div_ceil(64)];
        if let Some(w) = words.first_mut() {
            *w = mask;
        }
        ElementSet {
            n,
            words,
            len: mask.count_ones() as usize,
        }
    }

    /// The set as a bit mask. Panics if `n > 64`.
    pub fn mask(&self) -> u64 {
        assert!(self.n <= 64, "mask() needs n <= 64");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_full(&self) -> bool {
        self.len == self.n
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.n && self.words[x / 64] >> (x % 64) & 1 == 1
    }

    /// Returns true when `x` was not already present.
    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        assert!(x < self.n, "element {x} out of range for order {}", self.n);
        let word = &mut self.words[x / 64];
        let bit = 1u64 << (x % 64);
        if *word & bit == 0 {
            *word |= bit;
            self.len += 1;
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, x: usize) -> bool {
        if x >= self.n {
            return false;
        }
        let word = &mut self.words[x / 64];
        let bit = 1u64 << (x % 64);
        if *word & bit != 0 {
            *word &= !bit;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    pub fn without(&self, x: usize) -> Self {
        let mut set = self.clone();
        set.remove(x);
        set
    }

    pub fn with(&self, x: usize) -> Self {
        let mut set = self.clone();
        set.insert(x);
        set
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        self.len = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + tz)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}
