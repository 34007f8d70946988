//! Brute-force oracles shared by the integration suites. Nothing here calls
//! the butterfly transform or the word-level influence code.

#![allow(dead_code)]

use boolstab::{Dyadic, TruthTable, WeightedLTF};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_table(rng: &mut impl Rng, n: usize) -> TruthTable {
    TruthTable::from_fn(n, |_| rng.gen()).unwrap()
}

/// Coordinates of the point encoded by index `m`.
pub fn point(n: usize, m: usize) -> Vec<i8> {
    (0..n).map(|i| if m >> i & 1 == 0 { 1 } else { -1 }).collect()
}

/// `2^n f^(S)` straight from the definition, `O(4^n)` overall.
pub fn naive_scaled_coeff(tt: &TruthTable, mask: usize) -> i64 {
    let n = tt.n();
    (0..tt.len())
        .map(|m| {
            let x = point(n, m);
            let chi: i64 = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| x[i] as i64)
                .product();
            tt.eval(&x).unwrap() as i64 * chi
        })
        .sum()
}

pub fn naive_coeffs(tt: &TruthTable) -> Vec<Dyadic> {
    (0..tt.len())
        .map(|s| Dyadic::new(naive_scaled_coeff(tt, s), tt.n() as u64))
        .collect()
}

pub fn naive_level_weights(tt: &TruthTable) -> Vec<Dyadic> {
    let n = tt.n();
    let mut sums = vec![0i128; n + 1];
    for s in 0..tt.len() {
        let c = naive_scaled_coeff(tt, s) as i128;
        sums[s.count_ones() as usize] += c * c;
    }
    sums.into_iter()
        .map(|v| Dyadic::new(BigInt::from(v), 2 * n as u64))
        .collect()
}

/// `Pr_x[f(x) != f(x^(+i))]` by visiting every point.
pub fn naive_influence(tt: &TruthTable, i: usize) -> Dyadic {
    let n = tt.n();
    let flips = (0..tt.len())
        .filter(|&m| {
            let x = point(n, m);
            let mut y = x.clone();
            y[i - 1] = -y[i - 1];
            tt.eval(&x).unwrap() != tt.eval(&y).unwrap()
        })
        .count();
    Dyadic::new(flips as i64, n as u64)
}

pub fn random_ltf(rng: &mut impl Rng, n: usize, max_weight: i64) -> WeightedLTF {
    let w0 = rng.gen_range(-max_weight..=max_weight);
    let weights = (0..n)
        .map(|_| rng.gen_range(-max_weight..=max_weight))
        .collect();
    WeightedLTF::new(w0, weights).unwrap()
}
