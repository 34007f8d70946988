//! Integer-weight linear threshold functions and closed forms for their
//! low-degree Fourier weight.
//!
//! `f(x) = sgn(w0 + w1 x1 + ... + wn xn)` with `sgn(0) = +1` everywhere.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::binomial::binomial;
use crate::dyadic::Dyadic;
use crate::error::{invalid, Result};
use crate::truth_table::{check_vars, word_count, TruthTable};

/// `sgn` with the `sgn(0) = +1` convention, as "is +1".
#[inline]
pub fn sgn_is_positive(z: i128) -> bool {
    z >= 0
}

/// `sgn(w0 + sum_i w_i x_i)` with integer weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedLTF {
    w0: i64,
    weights: Vec<i64>,
}

impl WeightedLTF {
    pub fn new(w0: i64, weights: Vec<i64>) -> Result<Self> {
        if weights.is_empty() {
            return invalid("an LTF needs at least one variable");
        }
        Ok(Self { w0, weights })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn threshold(&self) -> i64 {
        self.w0
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// All variable weights zero: the function is the constant `sgn(w0)`.
    pub fn is_degenerate(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    pub fn linear_form(&self, x: &[i8]) -> i128 {
        self.w0 as i128
            + self
                .weights
                .iter()
                .zip(x)
                .map(|(&w, &xi)| w as i128 * xi as i128)
                .sum::<i128>()
    }

    pub fn eval(&self, x: &[i8]) -> i8 {
        if sgn_is_positive(self.linear_form(x)) {
            1
        } else {
            -1
        }
    }

    /// Multiplies every weight, including `w0`, by `k`.
    pub fn scaled(&self, k: i64) -> Self {
        Self {
            w0: self.w0 * k,
            weights: self.weights.iter().map(|w| w * k).collect(),
        }
    }

    /// Materializes the truth table. The low six variables are tabulated once;
    /// the remaining ones contribute a per-word offset.
    pub fn realize(&self) -> Result<TruthTable> {
        let n = self.n();
        check_vars(n)?;
        let signed = |w: i64, minus: bool| if minus { -(w as i128) } else { w as i128 };
        let low = n.min(6);
        let low_sums: Vec<i128> = (0..1usize << low)
            .map(|j| (0..low).map(|i| signed(self.weights[i], j >> i & 1 == 1)).sum())
            .collect();
        let word = |q: usize| -> u64 {
            let high: i128 = self.w0 as i128
                + (6..n)
                    .map(|i| signed(self.weights[i], q >> (i - 6) & 1 == 1))
                    .sum::<i128>();
            low_sums
                .iter()
                .enumerate()
                .filter(|(_, &s)| sgn_is_positive(high + s))
                .fold(0u64, |acc, (j, _)| acc | 1 << j)
        };
        let count = word_count(n);
        let words: Vec<u64> = if count >= 1 << 10 {
            (0..count).into_par_iter().map(word).collect()
        } else {
            (0..count).map(word).collect()
        };
        TruthTable::from_words(n, words)
    }
}

/// `sgn(w0 + w1 * sum_{u in T} x_u + w2 * sum_{v not in T} x_v)` with `|T| = t`.
///
/// `T` is laid out as the last `t` coordinates. Constructing with `t > n/2`
/// swaps the roles of the two blocks so that `t <= n/2` holds; the realized
/// table is unchanged because the swapped block is then placed first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoBlockLTF {
    n: usize,
    t: usize,
    w0: i64,
    w1: i64,
    w2: i64,
    t_first: bool,
}

impl TwoBlockLTF {
    pub fn new(n: usize, t: usize, w0: i64, w1: i64, w2: i64) -> Result<Self> {
        if n == 0 {
            return invalid("n must be at least 1");
        }
        if t > n {
            return invalid(format!("block size {t} exceeds n = {n}"));
        }
        if w1 == 0 || w2 == 0 {
            return invalid("block weights must be non-zero");
        }
        Ok(if 2 * t > n {
            Self {
                n,
                t: n - t,
                w0,
                w1: w2,
                w2: w1,
                t_first: true,
            }
        } else {
            Self {
                n,
                t,
                w0,
                w1,
                w2,
                t_first: false,
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// `(w0, w1, w2)` after canonicalization.
    pub fn weights(&self) -> (i64, i64, i64) {
        (self.w0, self.w1, self.w2)
    }

    pub fn to_weighted(&self) -> WeightedLTF {
        let (rest, block) = (self.n - self.t, self.t);
        let weights = if self.t_first {
            std::iter::repeat_n(self.w1, block)
                .chain(std::iter::repeat_n(self.w2, rest))
                .collect()
        } else {
            std::iter::repeat_n(self.w2, rest)
                .chain(std::iter::repeat_n(self.w1, block))
                .collect()
        };
        WeightedLTF {
            w0: self.w0,
            weights,
        }
    }

    pub fn realize(&self) -> Result<TruthTable> {
        self.to_weighted().realize()
    }

    fn form(&self, i: usize, t: usize, j: usize, rest: usize) -> i128 {
        self.w1 as i128 * (2 * i as i128 - t as i128)
            + self.w2 as i128 * (2 * j as i128 - rest as i128)
    }

    /// Pairs `(i, j)` counting the `+1` coordinates in `T` and its complement
    /// whose linear form lies in the band that determines `f^(empty)`.
    pub fn s0(&self) -> Vec<(usize, usize)> {
        let (t, rest, w0) = (self.t, self.n - self.t, self.w0 as i128);
        pairs(t, rest, |i, j| {
            let a = self.form(i, t, j, rest);
            if w0 >= 0 {
                -w0 <= a && a <= w0
            } else {
                w0 < a && a < -w0
            }
        })
    }

    /// Counts for `T` minus one coordinate where that coordinate is pivotal.
    /// Empty when `t = 0`.
    pub fn s1(&self) -> Vec<(usize, usize)> {
        if self.t == 0 {
            return Vec::new();
        }
        let (t, rest) = (self.t - 1, self.n - self.t);
        let band = (self.w1 as i128).abs();
        pairs(t, rest, |i, j| {
            let b = self.w0 as i128 + self.form(i, t, j, rest);
            -band <= b && b < band
        })
    }

    /// Counts for the complement minus one coordinate where that coordinate
    /// is pivotal.
    pub fn s2(&self) -> Vec<(usize, usize)> {
        if self.n == self.t {
            return Vec::new();
        }
        let (t, rest) = (self.t, self.n - self.t - 1);
        let band = (self.w2 as i128).abs();
        pairs(t, rest, |i, j| {
            let b = self.w0 as i128 + self.form(i, t, j, rest);
            -band <= b && b < band
        })
    }

    /// `W^(0)[f] = [sum_{S0} C(t,i) C(n-t,j)]^2 / 2^(2n)`.
    pub fn closed_w0(&self) -> Dyadic {
        let (t, rest) = (self.t as u64, (self.n - self.t) as u64);
        let s = weighted_sum(&self.s0(), t, rest);
        Dyadic::new(BigInt::from(&s * &s), 2 * self.n as u64)
    }

    /// `W^(1)[f] = t [sum_{S1} C(t-1,i) C(n-t,j)]^2 / 2^(2n-2)
    ///           + (n-t) [sum_{S2} C(t,i) C(n-t-1,j)]^2 / 2^(2n-2)`.
    pub fn closed_w1(&self) -> Dyadic {
        let (n, t) = (self.n as u64, self.t as u64);
        let e = 2 * n - 2;
        let in_block = if t == 0 {
            Dyadic::zero()
        } else {
            let s = weighted_sum(&self.s1(), t - 1, n - t);
            Dyadic::new(BigInt::from(t * (&s * &s)), e)
        };
        let outside = if n == t {
            Dyadic::zero()
        } else {
            let s = weighted_sum(&self.s2(), t, n - t - 1);
            Dyadic::new(BigInt::from((n - t) * (&s * &s)), e)
        };
        in_block + outside
    }
}

fn pairs(t: usize, rest: usize, keep: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    (0..=t)
        .flat_map(|i| (0..=rest).map(move |j| (i, j)))
        .filter(|&(i, j)| keep(i, j))
        .collect()
}

fn weighted_sum(set: &[(usize, usize)], a: u64, b: u64) -> BigUint {
    set.iter()
        .map(|&(i, j)| binomial(a, i as u64) * binomial(b, j as u64))
        .sum()
}

/// `W^(1)[Maj_n] = n [C(n-1, (n-1)/2) / 2^(n-1)]^2` for odd `n`.
pub fn maj_w1_closed(n: usize) -> Result<Dyadic> {
    if n.is_multiple_of(2) {
        return invalid(format!("majority needs odd n, got {n}"));
    }
    let n = n as u64;
    let c = binomial(n - 1, (n - 1) / 2);
    Ok(Dyadic::new(BigInt::from(n * (&c * &c)), 2 * n - 2))
}

/// The two summands of `W^(1)[g_n]`: the weight-2 block contribution
/// `(n-3) [8 C(n-4,(n-5)/2) / 2^(n-1)]^2` and the weight-1 block contribution
/// `3 [2 C(n-3,(n-3)/2) / 2^(n-1)]^2`.
pub fn g_w1_terms(n: usize) -> Result<(Dyadic, Dyadic)> {
    check_g_index(n)?;
    let n = n as u64;
    let e = 2 * n - 2;
    let heavy = if n == 3 {
        Dyadic::zero()
    } else {
        let c = binomial(n - 4, (n - 5) / 2);
        Dyadic::new(BigInt::from((n - 3) * 64 * (&c * &c)), e)
    };
    let c = binomial(n - 3, (n - 3) / 2);
    let light = Dyadic::new(BigInt::from(12u64 * (&c * &c)), e);
    Ok((heavy, light))
}

/// Closed form for `W^(1)[g_n]`, odd `n >= 3`.
pub fn g_w1_closed(n: usize) -> Result<Dyadic> {
    let (a, b) = g_w1_terms(n)?;
    Ok(a + b)
}

fn check_g_index(n: usize) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return invalid(format!("family needs odd n >= 3, got {n}"));
    }
    Ok(())
}

/// `g_n = sgn(2(x_1 + ... + x_{n-3}) + x_{n-2} + x_{n-1} + x_n)`.
pub fn make_g(n: usize) -> Result<WeightedLTF> {
    check_g_index(n)?;
    let mut w = vec![2; n - 3];
    w.extend([1, 1, 1]);
    WeightedLTF::new(0, w)
}

/// `h_n = sgn(2(x_1 + ... + x_{n-3}) - (x_{n-2} + x_{n-1} + x_n))`.
pub fn make_h(n: usize) -> Result<WeightedLTF> {
    check_g_index(n)?;
    let mut w = vec![2; n - 3];
    w.extend([-1, -1, -1]);
    WeightedLTF::new(0, w)
}

/// `g_n` in two-block form: `T` = last three coordinates, `w1 = 1`, `w2 = 2`.
pub fn g_two_block(n: usize) -> Result<TwoBlockLTF> {
    check_g_index(n)?;
    TwoBlockLTF::new(n, 3, 0, 1, 2)
}

pub fn h_two_block(n: usize) -> Result<TwoBlockLTF> {
    check_g_index(n)?;
    TwoBlockLTF::new(n, 3, 0, -1, 2)
}

/// A run of `size` consecutive variables sharing one weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub size: usize,
    pub weight: i64,
}

/// An LTF whose variables fall into blocks of equal weight. Low-level weights
/// are obtained by enumerating how many `+1`s each block holds, so `n` is not
/// limited by the truth-table cap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockLTF {
    w0: i64,
    blocks: Vec<Block>,
}

impl BlockLTF {
    pub fn new(w0: i64, blocks: Vec<Block>) -> Result<Self> {
        let blocks: Vec<Block> = blocks.into_iter().filter(|b| b.size > 0).collect();
        if blocks.is_empty() {
            return invalid("at least one non-empty block is required");
        }
        Ok(Self { w0, blocks })
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn threshold(&self) -> i64 {
        self.w0
    }

    /// Blocks laid out in order, first block on the first coordinates.
    pub fn to_weighted(&self) -> WeightedLTF {
        WeightedLTF {
            w0: self.w0,
            weights: self
                .blocks
                .iter()
                .flat_map(|b| std::iter::repeat_n(b.weight, b.size))
                .collect(),
        }
    }

    /// `W^(0)[f] = f^(empty)^2`.
    pub fn w0_weight(&self) -> Dyadic {
        let n = self.n() as u64;
        let positive = count_points(&self.blocks, |a| sgn_is_positive(self.w0 as i128 + a));
        // f^(empty) = (pos - neg) / 2^n = (2 pos - 2^n) / 2^n
        let diff = BigInt::from(positive) * 2 - (BigInt::one() << n);
        Dyadic::new(&diff * &diff, 2 * n)
    }

    /// Influence of any variable in block `b`.
    pub fn block_influence(&self, b: usize) -> Result<Dyadic> {
        let Some(block) = self.blocks.get(b) else {
            return invalid(format!("block {b} out of range"));
        };
        if block.weight == 0 {
            return Ok(Dyadic::zero());
        }
        let mut reduced = self.blocks.clone();
        reduced[b].size -= 1;
        let band = (block.weight as i128).abs();
        let pivotal = count_points(&reduced, |a| {
            let v = self.w0 as i128 + a;
            -band <= v && v < band
        });
        Ok(Dyadic::new(BigInt::from(pivotal), self.n() as u64 - 1))
    }

    /// `W^(1)[f] = sum_i Inf_i(f)^2`, valid because the function is an LTF.
    pub fn w1_weight(&self) -> Dyadic {
        (0..self.blocks.len())
            .map(|b| {
                let inf = self.block_influence(b).expect("block index in range");
                Dyadic::from_integer(self.blocks[b].size as i64) * inf.square()
            })
            .sum()
    }

    /// `W^{<=1}[f]`.
    pub fn cumulative_w1(&self) -> Dyadic {
        self.w0_weight() + self.w1_weight()
    }
}

/// Number of points of `{-1,1}^n` whose block linear form satisfies `keep`.
fn count_points(blocks: &[Block], keep: impl Fn(i128) -> bool) -> BigUint {
    let tables: Vec<Vec<BigUint>> = blocks
        .iter()
        .map(|b| (0..=b.size as u64).map(|c| binomial(b.size as u64, c)).collect())
        .collect();
    let mut counts = vec![0usize; blocks.len()];
    let mut total = BigUint::zero();
    loop {
        let form: i128 = blocks
            .iter()
            .zip(&counts)
            .map(|(b, &c)| b.weight as i128 * (2 * c as i128 - b.size as i128))
            .sum();
        if keep(form) {
            total += counts
                .iter()
                .zip(&tables)
                .map(|(&c, t)| &t[c])
                .product::<BigUint>();
        }
        // odometer over count vectors
        let mut k = 0;
        loop {
            if k == blocks.len() {
                return total;
            }
            if counts[k] < blocks[k].size {
                counts[k] += 1;
                break;
            }
            counts[k] = 0;
            k += 1;
        }
    }
}

/// `g_n` as a block LTF.
pub fn g_blocks(n: usize) -> Result<BlockLTF> {
    check_g_index(n)?;
    BlockLTF::new(
        0,
        vec![
            Block { size: n - 3, weight: 2 },
            Block { size: 3, weight: 1 },
        ],
    )
}

/// `f_n^(w)` for `n = t^2`, `t` odd `>= 3`: `t` blocks of `t` variables.
///
/// When `(t+1)/2` is even the threshold is `2w+t-1` and block `k` has weight
/// `2w+k-1`; when it is odd the threshold is `2w+t` and block `k` has weight
/// `2w+k`.
pub fn f_blocks(n: usize, w: i64) -> Result<BlockLTF> {
    let t = (n as f64).sqrt().round() as usize;
    if t * t != n || t < 3 || t.is_multiple_of(2) {
        return invalid(format!("n must be the square of an odd t >= 3, got {n}"));
    }
    if w < 1 {
        return invalid(format!("w must be positive, got {w}"));
    }
    let ti = t as i64;
    let (w0, base) = if t.div_ceil(2).is_multiple_of(2) {
        (2 * w + ti - 1, 2 * w - 1)
    } else {
        (2 * w + ti, 2 * w)
    };
    BlockLTF::new(
        w0,
        (1..=ti)
            .map(|k| Block {
                size: t,
                weight: base + k,
            })
            .collect(),
    )
}

pub fn make_f(n: usize, w: i64) -> Result<WeightedLTF> {
    Ok(f_blocks(n, w)?.to_weighted())
}
