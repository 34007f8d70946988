//! Exact univariate polynomials over the rationals, just enough to decide
//! whether a polynomial is non-negative on `[0, 1]` via Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dyadic::Dyadic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoly {
    /// Low-to-high coefficients with no trailing zeros.
    coeffs: Vec<BigRational>,
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_dyadics(coeffs: &[Dyadic]) -> Self {
        Self::new(coeffs.iter().map(Dyadic::to_rational).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.coeffs.last().expect("non-zero polynomial")
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Polynomial long division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        if rem.len() < divisor.coeffs.len() {
            return (Self::new(vec![]), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / divisor.lead();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    fn monic(&self) -> Self {
        let lead = self.lead().clone();
        Self::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Same distinct roots, each simple.
    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            self.clone()
        } else {
            self.div_rem(&g).0
        }
    }

    fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.clone(), self.derivative()];
        while !chain.last().unwrap().is_zero() {
            let k = chain.len();
            let r = chain[k - 2].div_rem(&chain[k - 1]).1;
            chain.push(Self::new(r.coeffs.into_iter().map(|c| -c).collect()));
        }
        chain.pop();
        chain
    }

    /// Distinct roots in the open interval `(a, b)`; `a` and `b` must not be
    /// roots.
    fn count_roots(chain: &[Self], a: &BigRational, b: &BigRational) -> usize {
        let variations = |x: &BigRational| {
            let signs: Vec<bool> = chain
                .iter()
                .map(|p| p.eval(x))
                .filter(|v| !v.is_zero())
                .map(|v| v.is_positive())
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        variations(a) - variations(b)
    }

    /// Exact test that `self(x) >= 0` for every `x` in `[0, 1]`.
    ///
    /// Roots at the endpoints are divided out first (`x` at 0, `1 - x` at 1,
    /// both positive inside the interval). The remainder must be positive at
    /// both endpoints and at one point between each consecutive pair of its
    /// isolated interior roots.
    pub fn nonnegative_on_unit_interval(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let zero = BigRational::zero();
        let one = BigRational::one();
        let x = Self::new(vec![zero.clone(), one.clone()]);
        let one_minus_x = Self::new(vec![one.clone(), -one.clone()]);
        let mut q = self.clone();
        while q.eval(&zero).is_zero() {
            q = q.div_rem(&x).0;
        }
        while q.eval(&one).is_zero() {
            q = q.div_rem(&one_minus_x).0;
        }
        if q.eval(&zero).is_negative() || q.eval(&one).is_negative() {
            return false;
        }
        let s = q.square_free();
        if s.degree() == 0 {
            return true;
        }
        let chain = s.sturm_chain();
        let mut isolated: Vec<(BigRational, BigRational)> = Vec::new();
        let mut stack = vec![(zero, one)];
        while let Some((a, b)) = stack.pop() {
            match Self::count_roots(&chain, &a, &b) {
                0 => {}
                1 => isolated.push((a, b)),
                _ => {
                    // split at a non-root point near the midpoint
                    let mut frac = rat(1, 2);
                    let mid = loop {
                        let m = &a + (&b - &a) * &frac;
                        if !s.eval(&m).is_zero() {
                            break m;
                        }
                        frac = (frac + rat(1, 3)) / rat(2, 1);
                    };
                    stack.push((a, mid.clone()));
                    stack.push((mid, b));
                }
            }
        }
        isolated.sort();
        isolated
            .iter()
            .take(isolated.len().saturating_sub(1))
            .all(|(_, b)| q.eval(b).is_positive())
    }
}
