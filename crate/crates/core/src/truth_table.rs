//! Bit-packed truth tables.
//!
//! Index `m` encodes the input point: bit `i` of `m` is 0 when `x_{i+1} = +1`
//! and 1 when `x_{i+1} = -1`. A stored bit of 1 means `f(x) = +1`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{invalid, Error, Result};

/// Default cap on the number of variables for anything materialized as a
/// truth table.
pub const DEFAULT_MAX_VARS: usize = 24;

/// Upper limit the cap can be raised to through `BOOLSTAB_MAX_N`.
pub const ABSOLUTE_MAX_VARS: usize = 30;

pub const MAX_VARS_ENV: &str = "BOOLSTAB_MAX_N";

/// The active brute-force cap: `BOOLSTAB_MAX_N` if set and valid, otherwise
/// [`DEFAULT_MAX_VARS`]. Read once per process.
pub fn max_vars() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MAX_VARS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| (1..=ABSOLUTE_MAX_VARS).contains(&v))
            .unwrap_or(DEFAULT_MAX_VARS)
    })
}

pub(crate) fn check_vars(n: usize) -> Result<()> {
    if n == 0 {
        return invalid("a Boolean function needs at least one variable");
    }
    let cap = max_vars();
    if n > cap {
        return Err(Error::ResourceLimit { n, cap });
    }
    Ok(())
}

/// The full value table of an `n`-variable Boolean function.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

pub(crate) fn word_count(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

fn tail_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

impl TruthTable {
    /// Builds a table from `f(index) -> is +1`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> bool) -> Result<Self> {
        check_vars(n)?;
        let len = 1usize << n;
        let mut words = vec![0u64; word_count(n)];
        for m in 0..len {
            if f(m) {
                words[m >> 6] |= 1 << (m & 63);
            }
        }
        Ok(Self { n, words })
    }

    /// Wraps packed words; bit `m & 63` of word `m >> 6` is the value at `m`.
    pub fn from_words(n: usize, words: Vec<u64>) -> Result<Self> {
        check_vars(n)?;
        if words.len() != word_count(n) {
            return invalid(format!(
                "expected {} words for n={n}, got {}",
                word_count(n),
                words.len()
            ));
        }
        if n < 6 && words[0] & !tail_mask(n) != 0 {
            return invalid("bits set beyond the end of the table");
        }
        Ok(Self { n, words })
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        let fill = if value { tail_mask(n) } else { 0 };
        check_vars(n)?;
        Ok(Self {
            n,
            words: vec![fill; word_count(n)],
        })
    }

    /// The dictator `f(x) = x_i` (1-based `i`).
    pub fn dictator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return invalid(format!("variable {i} out of range 1..={n}"));
        }
        Self::from_fn(n, |m| m >> (i - 1) & 1 == 0)
    }

    /// `x_1 x_2 ... x_n`.
    pub fn parity(n: usize) -> Result<Self> {
        Self::from_fn(n, |m| m.count_ones() % 2 == 0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of entries, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// True when `f = +1` at index `m`.
    #[inline]
    pub fn get(&self, m: usize) -> bool {
        self.words[m >> 6] >> (m & 63) & 1 == 1
    }

    /// `f` at index `m` as `+1` or `-1`.
    #[inline]
    pub fn value(&self, m: usize) -> i8 {
        if self.get(m) {
            1
        } else {
            -1
        }
    }

    /// Evaluates `f` at a point of `{-1, 1}^n`.
    pub fn eval(&self, x: &[i8]) -> Result<i8> {
        if x.len() != self.n {
            return invalid(format!("point has {} coordinates, expected {}", x.len(), self.n));
        }
        let mut m = 0;
        for (i, &xi) in x.iter().enumerate() {
            match xi {
                1 => {}
                -1 => m |= 1 << i,
                _ => return invalid("coordinates must be +1 or -1"),
            }
        }
        Ok(self.value(m))
    }

    /// Number of inputs mapped to +1.
    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// `-f`.
    pub fn negated(&self) -> Self {
        let mask = tail_mask(self.n);
        Self {
            n: self.n,
            words: self.words.iter().map(|w| !w & mask).collect(),
        }
    }

    /// `x -> f(x')` where `x'` has coordinate `i` (1-based) negated.
    pub fn with_input_negated(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.n {
            return invalid(format!("variable {i} out of range 1..={}", self.n));
        }
        let bit = 1 << (i - 1);
        Self::from_fn(self.n, |m| self.get(m ^ bit))
    }

    /// `g(x) = f(y)` with `y_{perm[i]} = x_i` (0-based permutation).
    pub fn with_inputs_permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return invalid("permutation length must equal n");
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return invalid("not a permutation");
            }
        }
        Self::from_fn(self.n, |m| {
            let mut src = 0;
            for (i, &p) in perm.iter().enumerate() {
                src |= (m >> i & 1) << p;
            }
            self.get(src)
        })
    }

    fn hex_digits(&self) -> usize {
        (self.len() / 4).max(1)
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruthTable")
            .field("n", &self.n)
            .field("hex", &hex_body(self))
            .finish()
    }
}

fn hex_body(tt: &TruthTable) -> String {
    let digits = tt.hex_digits();
    let mut s = String::with_capacity(digits);
    for d in (0..digits).rev() {
        let nibble = (tt.words[d >> 4] >> ((d & 15) * 4)) & 0xf;
        s.push(char::from_digit(nibble as u32, 16).unwrap());
    }
    s
}

/// `n=<n>` on the first line, then the table as one lowercase hex number whose
/// least significant bit is index 0.
impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "{}", hex_body(self))
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty truth table".into()))?;
        let n: usize = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header {header:?}, expected n=<int>")))?;
        check_vars(n)?;
        let hex: String = lines.flat_map(|l| l.chars()).filter(|c| !c.is_whitespace()).collect();
        let tt = Self {
            n,
            words: vec![0; word_count(n)],
        };
        let digits = tt.hex_digits();
        if hex.len() != digits {
            return Err(Error::Parse(format!(
                "expected {digits} hex digits for n={n}, found {}",
                hex.len()
            )));
        }
        let mut words = tt.words;
        for (pos, c) in hex.chars().rev().enumerate() {
            let nibble = c
                .to_digit(16)
                .filter(|_| !c.is_ascii_uppercase())
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {c:?}")))?;
            words[pos >> 4] |= (nibble as u64) << ((pos & 15) * 4);
        }
        if n < 6 && words[0] & !tail_mask(n) != 0 {
            return Err(Error::Parse("hex value has bits beyond 2^n".into()));
        }
        Ok(Self { n, words })
    }
}

/// `Maj_n(x) = sgn(x_1 + ... + x_n)` for odd `n`.
pub fn majority(n: usize) -> Result<TruthTable> {
    if n.is_multiple_of(2) {
        return invalid(format!("majority needs odd n, got {n}"));
    }
    // sum = n - 2 * (number of -1 coordinates)
    TruthTable::from_fn(n, |m| 2 * m.count_ones() as usize <= n)
}
