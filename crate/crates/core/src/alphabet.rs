//! Words over `Z_q`, their canonical ranking, and coordinate arithmetic.
//!
//! A word is a fixed-length tuple of symbols in `[0, q)`. Words are
//! ordered by rank: the base-`q` integer whose most significant digit is
//! symbol 0. Componentwise addition mod `q` is defined for every `q >= 2`
//! (the group `Z_q^n`); multiplicative inverses additionally require `q`
//! prime.

use crate::error::{Error, Result};

/// Trial-division primality; alphabet sizes stay tiny.
pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Symbol alphabet `{0, .., q-1}` with its primality cached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alphabet {
    q: u32,
    prime: bool,
}

impl Alphabet {
    pub fn new(q: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::AlphabetTooSmall { q });
        }
        Ok(Alphabet {
            q,
            prime: is_prime(q),
        })
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn is_prime(&self) -> bool {
        self.prime
    }

    pub fn require_prime(&self) -> Result<()> {
        if self.prime {
            Ok(())
        } else {
            Err(Error::NotPrime { q: self.q })
        }
    }
}

/// Fixed-length tuple of symbols. `Ord` is lexicographic, which for words
/// of equal length coincides with rank order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    symbols: Vec<u32>,
}

impl Word {
    pub fn new(symbols: Vec<u32>) -> Self {
        Word { symbols }
    }

    pub fn zero(n: usize) -> Self {
        Word {
            symbols: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, i: usize) -> u32 {
        self.symbols[i]
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn is_zero(&self) -> bool {
        self.symbols.iter().all(|&s| s == 0)
    }

    fn check_symbols(&self, q: u32) -> Result<()> {
        for &s in &self.symbols {
            if s >= q {
                return Err(Error::SymbolOutOfRange { symbol: s, q });
            }
        }
        Ok(())
    }
}

fn check_same_len(u: &Word, v: &Word) -> Result<()> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(())
}

/// Componentwise sum mod `q`.
pub fn word_add(u: &Word, v: &Word, q: u32) -> Result<Word> {
    check_same_len(u, v)?;
    u.check_symbols(q)?;
    v.check_symbols(q)?;
    Ok(Word::new(
        u.symbols
            .iter()
            .zip(&v.symbols)
            .map(|(&a, &b)| (a + b) % q)
            .collect(),
    ))
}

/// Componentwise difference mod `q`.
pub fn word_sub(u: &Word, v: &Word, q: u32) -> Result<Word> {
    check_same_len(u, v)?;
    u.check_symbols(q)?;
    v.check_symbols(q)?;
    Ok(Word::new(
        u.symbols
            .iter()
            .zip(&v.symbols)
            .map(|(&a, &b)| (a + q - b) % q)
            .collect(),
    ))
}

/// Restriction of `w` to the 0-based coordinates in `indices`, which must
/// be strictly increasing. The empty index set yields the empty word.
pub fn project(w: &Word, indices: &[usize]) -> Result<Word> {
    debug_assert!(indices.windows(2).all(|p| p[0] < p[1]));
    let mut out = Vec::with_capacity(indices.len());
    for &i in indices {
        if i >= w.len() {
            return Err(Error::IndexOutOfRange {
                index: i as u64,
                bound: w.len() as u64,
            });
        }
        out.push(w.symbol(i));
    }
    Ok(Word::new(out))
}

/// Multiplicative inverse in `F_q` by the extended Euclidean algorithm.
pub fn field_inv(a: u32, q: u32) -> Result<u32> {
    if !is_prime(q) {
        return Err(Error::NotPrime { q });
    }
    let a = a % q;
    if a == 0 {
        return Err(Error::ZeroInverse);
    }
    let (mut r0, mut r1) = (q as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    debug_assert_eq!(r0, 1);
    Ok(t0.rem_euclid(q as i64) as u32)
}

/// Word at rank `idx` in the `n`-fold space over `Z_q`.
pub fn unrank(idx: u64, n: usize, q: u32) -> Result<Word> {
    Space::new(q, n)?.word(idx)
}

/// Rank of `w` in the `|w|`-fold space over `Z_q`.
pub fn rank(w: &Word, q: u32) -> Result<u64> {
    Space::new(q, w.len())?.rank(w)
}

/// Text form of a word: concatenated digits for `q <= 10`, comma
/// separated decimals above that.
pub fn format_word(w: &Word, q: u32) -> String {
    if q <= 10 {
        w.symbols.iter().map(|s| s.to_string()).collect()
    } else {
        w.symbols
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Inverse of [`format_word`]; symbols are validated against `q`.
pub fn parse_word(text: &str, q: u32) -> Result<Word> {
    let bad = |msg: &str| Error::Parse {
        line: 0,
        msg: msg.to_string(),
    };
    let symbols: Vec<u32> = if q <= 10 {
        text.trim()
            .chars()
            .map(|c| c.to_digit(10).ok_or_else(|| bad("expected a digit")))
            .collect::<Result<_>>()?
    } else {
        let t = text.trim();
        if t.is_empty() {
            Vec::new()
        } else {
            t.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u32>()
                        .map_err(|_| bad("expected a number"))
                })
                .collect::<std::result::Result<_, _>>()?
        }
    };
    let w = Word::new(symbols);
    w.check_symbols(q)?;
    Ok(w)
}

/// The word space `Z_q^n` with overflow-checked size and rank arithmetic.
///
/// Ranks are base-`q` expansions with symbol 0 most significant, so rank
/// order equals lexicographic order on words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Space {
    q: u32,
    n: usize,
    size: u64,
}

impl Space {
    pub fn new(q: u32, n: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::AlphabetTooSmall { q });
        }
        let mut size: u64 = 1;
        for _ in 0..n {
            size = size.checked_mul(q as u64).ok_or(Error::SpaceExceeded {
                needed: (q as u128).pow(n as u32),
                max_space: u64::MAX,
            })?;
        }
        Ok(Space { q, n, size })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn rank(&self, w: &Word) -> Result<u64> {
        if w.len() != self.n {
            return Err(Error::LengthMismatch {
                left: w.len(),
                right: self.n,
            });
        }
        w.check_symbols(self.q)?;
        let mut r: u64 = 0;
        for &s in w.symbols() {
            r = r * self.q as u64 + s as u64;
        }
        Ok(r)
    }

    pub fn word(&self, idx: u64) -> Result<Word> {
        if idx >= self.size {
            return Err(Error::IndexOutOfRange {
                index: idx,
                bound: self.size,
            });
        }
        let mut symbols = vec![0u32; self.n];
        let mut rest = idx;
        for k in (0..self.n).rev() {
            symbols[k] = (rest % self.q as u64) as u32;
            rest /= self.q as u64;
        }
        Ok(Word::new(symbols))
    }

    /// Rank of the componentwise sum; digitwise, no word materialized.
    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.q == 2 {
            return a ^ b;
        }
        let q = self.q as u64;
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut pow = 1u64;
        for _ in 0..self.n {
            out += (a % q + b % q) % q * pow;
            a /= q;
            b /= q;
            pow *= q;
        }
        out
    }

    /// Rank of the componentwise difference.
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if self.q == 2 {
            return a ^ b;
        }
        let q = self.q as u64;
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut pow = 1u64;
        for _ in 0..self.n {
            out += (a % q + q - b % q) % q * pow;
            a /= q;
            b /= q;
            pow *= q;
        }
        out
    }

    /// Rank of the scalar multiple `c * x`.
    pub fn scale(&self, c: u32, x: u64) -> u64 {
        let q = self.q as u64;
        let c = c as u64 % q;
        let mut x = x;
        let mut out = 0u64;
        let mut pow = 1u64;
        for _ in 0..self.n {
            out += x % q * c % q * pow;
            x /= q;
            pow *= q;
        }
        out
    }
}
