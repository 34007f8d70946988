//! Exact Walsh-Hadamard spectrum, level weights and the stability polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::dyadic::Dyadic;
use crate::error::{invalid, Result};
use crate::truth_table::TruthTable;

const PAR_MIN_LEN: usize = 1 << 14;

/// All `2^n` Fourier coefficients of a Boolean function.
///
/// Mask `S` has bit `i` set iff variable `i+1` is in the set. Coefficients are
/// held as the integers `2^n * f^(S)` and handed out as exact [`Dyadic`]s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierSpectrum {
    n: usize,
    scaled: Vec<i32>,
}

/// Computes `f^(S) = 2^-n * sum_x f(x) prod_{i in S} x_i` for every `S` with an
/// in-place butterfly, `O(n 2^n)`.
pub fn fourier_transform(tt: &TruthTable) -> FourierSpectrum {
    let len = tt.len();
    let mut data: Vec<i32> = if len >= PAR_MIN_LEN {
        (0..len)
            .into_par_iter()
            .map(|m| tt.value(m) as i32)
            .collect()
    } else {
        (0..len).map(|m| tt.value(m) as i32).collect()
    };
    walsh_hadamard_in_place(&mut data);
    FourierSpectrum {
        n: tt.n(),
        scaled: data,
    }
}

fn butterfly(chunk: &mut [i32], half: usize) {
    let (lo, hi) = chunk.split_at_mut(half);
    for (a, b) in lo.iter_mut().zip(hi) {
        let (u, v) = (*a, *b);
        *a = u + v;
        *b = u - v;
    }
}

/// Unnormalized Walsh-Hadamard transform. The length must be a power of two.
pub fn walsh_hadamard_in_place(data: &mut [i32]) {
    let len = data.len();
    debug_assert!(len.is_power_of_two());
    let mut half = 1;
    while half < len {
        let width = 2 * half;
        if len < PAR_MIN_LEN {
            data.chunks_mut(width).for_each(|c| butterfly(c, half));
        } else if len / width >= 64 {
            data.par_chunks_mut(width).for_each(|c| butterfly(c, half));
        } else {
            for chunk in data.chunks_mut(width) {
                let (lo, hi) = chunk.split_at_mut(half);
                lo.par_iter_mut()
                    .zip(hi.par_iter_mut())
                    .with_min_len(4096)
                    .for_each(|(a, b)| {
                        let (u, v) = (*a, *b);
                        *a = u + v;
                        *b = u - v;
                    });
            }
        }
        half = width;
    }
}

impl FourierSpectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.scaled.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `2^n * f^(S)` for every mask.
    pub fn scaled(&self) -> &[i32] {
        &self.scaled
    }

    pub fn coeff(&self, mask: usize) -> Dyadic {
        Dyadic::new(self.scaled[mask], self.n as u64)
    }

    pub fn coeffs(&self) -> Vec<Dyadic> {
        (0..self.len()).map(|s| self.coeff(s)).collect()
    }

    /// `W^(k)` for every `k` in `0..=n`, computed in one pass.
    pub fn level_weights(&self) -> Vec<Dyadic> {
        let fold = |mut acc: Vec<u128>, (s, &c): (usize, &i32)| {
            acc[s.count_ones() as usize] += (c as i64 * c as i64) as u128;
            acc
        };
        let sums: Vec<u128> = if self.len() >= PAR_MIN_LEN {
            self.scaled
                .par_iter()
                .enumerate()
                .fold(|| vec![0u128; self.n + 1], fold)
                .reduce(
                    || vec![0u128; self.n + 1],
                    |mut a, b| {
                        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                        a
                    },
                )
        } else {
            self.scaled
                .iter()
                .enumerate()
                .fold(vec![0u128; self.n + 1], fold)
        };
        sums.into_iter()
            .map(|s| Dyadic::new(BigInt::from(s), 2 * self.n as u64))
            .collect()
    }

    /// `W^(k)[f]`, the squared Fourier mass on sets of size `k`.
    pub fn level_weight(&self, k: usize) -> Result<Dyadic> {
        if k > self.n {
            return invalid(format!("level {k} out of range 0..={}", self.n));
        }
        let sum: u128 = self
            .scaled
            .iter()
            .enumerate()
            .filter(|(s, _)| s.count_ones() as usize == k)
            .map(|(_, &c)| (c as i64 * c as i64) as u128)
            .sum();
        Ok(Dyadic::new(BigInt::from(sum), 2 * self.n as u64))
    }

    /// `W^{<=k}[f] = W^(0) + ... + W^(k)`.
    pub fn cumulative_weight(&self, k: usize) -> Result<Dyadic> {
        if k > self.n {
            return invalid(format!("level {k} out of range 0..={}", self.n));
        }
        Ok(self.level_weights().into_iter().take(k + 1).sum())
    }

    pub fn stability_polynomial(&self) -> StabilityPolynomial {
        StabilityPolynomial {
            weights: self.level_weights(),
        }
    }

    /// JSON array of `"<numerator>/2^<e>"` strings, one per mask.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs()
                .iter()
                .map(|c| c.to_pow2_string().into())
                .collect(),
        )
    }
}

/// `Stab_rho(f) = sum_k rho^k W^(k)[f]`, stored by its exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StabilityPolynomial {
    weights: Vec<Dyadic>,
}

impl StabilityPolynomial {
    /// Validates that the weights are non-negative and sum to one.
    pub fn new(weights: Vec<Dyadic>) -> Result<Self> {
        if weights.is_empty() {
            return invalid("a stability polynomial needs at least one weight");
        }
        if weights.iter().any(Dyadic::is_negative) {
            return invalid("level weights must be non-negative");
        }
        if weights.iter().sum::<Dyadic>() != Dyadic::one() {
            return invalid("level weights must sum to 1");
        }
        Ok(Self { weights })
    }

    /// Degree bound `n` (the polynomial has `n + 1` coefficients).
    pub fn n(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weights(&self) -> &[Dyadic] {
        &self.weights
    }

    pub fn weight(&self, k: usize) -> Option<&Dyadic> {
        self.weights.get(k)
    }

    /// Horner evaluation in `f64`.
    pub fn eval(&self, rho: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&rho) {
            return invalid(format!("rho must lie in [0, 1], got {rho}"));
        }
        Ok(self
            .weights
            .iter()
            .rev()
            .fold(0.0, |acc, w| acc * rho + w.to_f64()))
    }

    /// Exact value at a rational point (any rational, no range check).
    pub fn eval_exact(&self, rho: &BigRational) -> BigRational {
        self.weights
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, w| acc * rho + w.to_rational())
    }

    /// Coefficient-wise difference `self - other`, padded to the longer length.
    pub fn difference(&self, other: &Self) -> Vec<Dyadic> {
        let len = self.weights.len().max(other.weights.len());
        let zero = Dyadic::zero();
        (0..len)
            .map(|k| {
                self.weights.get(k).unwrap_or(&zero) - other.weights.get(k).unwrap_or(&zero)
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.weights
                .iter()
                .map(|w| w.to_pow2_string().into())
                .collect(),
        )
    }

    /// Human-readable form such as `0.75ρ + 0.25ρ^3`. Weights of the small
    /// functions printed this way are short dyadics, so the decimals are exact.
    pub fn pretty(&self) -> String {
        let terms: Vec<String> = self
            .weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(k, w)| {
                let c = w.to_f64();
                match (k, c == 1.0) {
                    (0, _) => format!("{c}"),
                    (1, true) => "ρ".to_string(),
                    (1, false) => format!("{c}ρ"),
                    (_, true) => format!("ρ^{k}"),
                    (_, false) => format!("{c}ρ^{k}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// Sign of `sum_k c_k (p/q)^k`, computed from integer numerators over a common
/// power of two so no rational normalization is needed. `q` must be positive.
pub(crate) fn sign_at(coeffs: &[Dyadic], p: &BigInt, q: &BigInt) -> std::cmp::Ordering {
    let e = coeffs.iter().map(Dyadic::exponent).max().unwrap_or(0);
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numerator() << (e - c.exponent()))
        .collect();
    let deg = ints.len().saturating_sub(1);
    // sum_k A_k p^k q^(deg-k), Horner in p with q powers folded in
    let mut q_pow = BigInt::one();
    let mut acc = BigInt::zero();
    for (k, a) in ints.iter().enumerate().rev() {
        if k == deg {
            acc = a.clone();
        } else {
            q_pow *= q;
            acc = acc * p + a * &q_pow;
        }
    }
    acc.cmp(&BigInt::zero())
}
