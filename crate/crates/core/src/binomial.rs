use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `C(n, k)` exactly; zero when `k > n`.
///
/// Multiplicative formula `prod (n - k + i) / i`. Each partial product is
/// itself a binomial coefficient, so every division is exact.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `n!`.
pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}
