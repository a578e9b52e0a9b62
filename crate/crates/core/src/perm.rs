//! Permutation words, position-acting generators and dense ranking.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `[n]` written as the word `w[1] w[2] … w[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    word: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).collect(),
        }
    }

    pub fn from_word(word: Vec<u8>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &s in &word {
            let s = s as usize;
            if s == 0 || s > n || seen[s] {
                return Err(Error::InvalidArgument(format!("{word:?} is not a permutation of [{n}]")));
            }
            seen[s] = true;
        }
        Ok(Permutation { word })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// Symbol at 1-based `position`.
    pub fn at(&self, position: usize) -> u8 {
        self.word[position - 1]
    }

    pub fn is_even(&self) -> bool {
        let n = self.word.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.word[i] as usize - 1;
            }
        }
        (n - cycles).is_multiple_of(2)
    }

    /// Lexicographic rank in `0..n!` (Lehmer code).
    pub fn rank(&self) -> usize {
        rank_word(&self.word)
    }

    pub fn unrank(n: usize, rank: usize) -> Self {
        Permutation {
            word: unrank_word(n, rank),
        }
    }

    /// Applies a position generator on the right: `(w·s)[i] = w[s(i)]`.
    pub fn act(&self, g: &PositionMap) -> Permutation {
        Permutation {
            word: g.apply(&self.word),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbols(f, self.word.iter().map(|&s| s as i32), self.word.len())
    }
}

fn write_symbols(f: &mut fmt::Formatter<'_>, symbols: impl Iterator<Item = i32>, n: usize) -> fmt::Result {
    let sep = if n >= 10 { " " } else { "" };
    for (i, s) in symbols.enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{s}")?;
    }
    Ok(())
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn rank_word<T: Copy + Into<i32>>(word: &[T]) -> usize {
    let n = word.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = word[i + 1..]
            .iter()
            .filter(|&&x| x.into().abs() < word[i].into().abs())
            .count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

fn unrank_word(n: usize, mut rank: usize) -> Vec<u8> {
    let mut digits = vec![0; n];
    for i in (0..n).rev() {
        let base = n - i;
        digits[i] = rank % base;
        rank /= base;
    }
    let mut pool: Vec<u8> = (1..=n as u8).collect();
    digits.into_iter().map(|d| pool.remove(d)).collect()
}

/// A rearrangement of word positions: `apply(w)[i] = w[src[i]]` (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionMap {
    src: Vec<usize>,
}

impl PositionMap {
    pub fn identity(n: usize) -> Self {
        PositionMap { src: (0..n).collect() }
    }

    /// Product of disjoint position cycles, 1-based. In a cycle `(a b c)` the
    /// symbol in position `a` moves to `b`, `b` to `c`, and `c` back to `a`.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut src: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for &p in *cycle {
                if p == 0 || p > n || used[p - 1] {
                    return Err(Error::InvalidArgument(format!("bad cycle {cycle:?} on {n} positions")));
                }
                used[p - 1] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                src[next - 1] = p - 1;
            }
        }
        Ok(PositionMap { src })
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        Self::from_cycles(n, &[&[i, j]])
    }

    /// Whether the map moves the 1-based `position`.
    pub fn moves(&self, position: usize) -> bool {
        self.src[position - 1] != position - 1
    }

    pub fn inverse(&self) -> PositionMap {
        let mut src = vec![0; self.src.len()];
        for (i, &s) in self.src.iter().enumerate() {
            src[s] = i;
        }
        PositionMap { src }
    }

    #[inline]
    pub fn apply<T: Copy>(&self, word: &[T]) -> Vec<T> {
        self.src.iter().map(|&s| word[s]).collect()
    }
}

/// A signed permutation: each symbol of `[n]` once, each with a sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    word: Vec<i8>,
}

impl SignedPermutation {
    pub fn from_word(word: Vec<i8>) -> Result<Self> {
        let abs: Vec<u8> = word.iter().map(|s| s.unsigned_abs()).collect();
        Permutation::from_word(abs)?;
        Ok(SignedPermutation { word })
    }

    pub fn word(&self) -> &[i8] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// The `i`-th prefix reversal: reverse and negate the first `i` symbols.
    pub fn prefix_reversal(&self, i: usize) -> SignedPermutation {
        let mut word = self.word.clone();
        word[..i].reverse();
        for s in &mut word[..i] {
            *s = -*s;
        }
        SignedPermutation { word }
    }

    /// Dense index: `rank(|w|) * 2^n + sign bits`, bit `j` set when position
    /// `j + 1` carries a negative symbol.
    pub fn index(&self) -> usize {
        let n = self.word.len();
        let signs = self
            .word
            .iter()
            .enumerate()
            .filter(|(_, &s)| s < 0)
            .fold(0usize, |acc, (j, _)| acc | 1 << j);
        (rank_word(&self.word) << n) | signs
    }

    pub fn from_index(n: usize, index: usize) -> Self {
        let abs = unrank_word(n, index >> n);
        let word = abs
            .into_iter()
            .enumerate()
            .map(|(j, s)| if index >> j & 1 == 1 { -(s as i8) } else { s as i8 })
            .collect();
        SignedPermutation { word }
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_symbols(f, self.word.iter().map(|&s| s as i32), self.word.len())
    }
}
