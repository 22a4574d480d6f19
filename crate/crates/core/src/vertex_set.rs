//! Dense vertex subsets.
//!
//! A [`VertexSet`] is a bitset over `0..universe`. Its hex encoding reads the
//! membership pattern as a big-endian integer where bit `i` is vertex `i`,
//! padded to `ceil(universe / 4)` digits (at least one).

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    /// Builds a set from member indices; fails if any index is out of range.
    pub fn from_members<I: IntoIterator<Item = usize>>(universe: usize, members: I) -> Result<Self> {
        let mut s = Self::empty(universe);
        for v in members {
            if v >= universe {
                return Err(Error::InvalidParameter(format!(
                    "vertex {v} outside universe of size {universe}"
                )));
            }
            s.insert(v);
        }
        Ok(s)
    }

    /// Set from a single-word mask. Only valid for universes of at most 64.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        debug_assert!(universe <= 64);
        let mut s = Self::empty(universe);
        if universe > 0 {
            let keep = if universe == 64 { u64::MAX } else { (1u64 << universe) - 1 };
            s.words[0] = mask & keep;
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.universe {
            self.words[v / 64] &= !(1 << (v % 64));
        }
    }

    pub fn complement(&self) -> Self {
        let mut c = Self::empty(self.universe);
        for v in 0..self.universe {
            if !self.contains(v) {
                c.insert(v);
            }
        }
        c
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn to_hex(&self) -> String {
        let digits = self.universe.div_ceil(4).max(1);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut nibble = 0u8;
            for b in 0..4 {
                if self.contains(d * 4 + b) {
                    nibble |= 1 << b;
                }
            }
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }

    pub fn from_hex(universe: usize, hex: &str) -> Result<Self> {
        let mut s = Self::empty(universe);
        for (d, c) in hex.chars().rev().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| Error::InvalidParameter(format!("bad hex digit {c:?}")))?;
            for b in 0..4 {
                if nibble >> b & 1 == 1 {
                    let v = d * 4 + b;
                    if v >= universe {
                        return Err(Error::InvalidParameter(format!(
                            "hex pattern sets vertex {v} outside universe {universe}"
                        )));
                    }
                    s.insert(v);
                }
            }
        }
        Ok(s)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

/// Deserializes from a hex pattern; the universe is inferred as four bits per digit.
impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let hex = String::deserialize(d)?;
        VertexSet::from_hex(hex.len() * 4, &hex).map_err(serde::de::Error::custom)
    }
}
