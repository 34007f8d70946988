//! Stirling enclosures and the large-`n` behaviour of `W^(1)[g_n]`.
//!
//! Floating bounds are evaluated in log space and exponentiated once, then
//! widened outward by [`RELATIVE_SLACK`] to absorb rounding.

use std::io::{self, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::dyadic::Dyadic;
use crate::error::{invalid, Error, Result};
use crate::ltf::{g_w1_closed, g_w1_terms, maj_w1_closed};

/// Outward relative widening applied to every floating bound.
pub const RELATIVE_SLACK: f64 = 1e-12;

/// Margin required before a strict inequality is asserted through `f64`.
pub const GUARD_MARGIN: f64 = 1e-9;

/// `2/pi` to 30 significant digits.
pub const TWO_OVER_PI_DIGITS: &str = "0.636619772367581343075535053490";

pub fn two_over_pi() -> f64 {
    TWO_OVER_PI_DIGITS.parse().expect("valid decimal literal")
}

/// A closed interval `[lower, upper]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundPair {
    pub lower: f64,
    pub upper: f64,
}

impl BoundPair {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if lower.is_nan() || upper.is_nan() || lower > upper {
            return Err(Error::Invariant(format!(
                "lower bound {lower} exceeds upper bound {upper}"
            )));
        }
        Ok(Self { lower, upper })
    }

    fn from_logs(ln_lower: f64, ln_upper: f64) -> Result<Self> {
        Self::new(
            ln_lower.exp() * (1.0 - RELATIVE_SLACK),
            ln_upper.exp() * (1.0 + RELATIVE_SLACK),
        )
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    /// Exact containment of a rational, comparing the endpoints as exact
    /// binary fractions.
    pub fn contains_exact(&self, x: &BigRational) -> bool {
        match (
            BigRational::from_float(self.lower),
            BigRational::from_float(self.upper),
        ) {
            (Some(lo), Some(hi)) => &lo <= x && x <= &hi,
            _ => false,
        }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// `sqrt(2 pi m) (m/e)^m exp(1/(12m+1)) <= m! <= sqrt(2 pi m) (m/e)^m exp(1/(12m))`.
pub fn factorial_bounds(m: u64) -> Result<BoundPair> {
    if !(1..=170).contains(&m) {
        return invalid(format!("factorial bounds need 1 <= m <= 170, got {m}"));
    }
    let mf = m as f64;
    let base = 0.5 * (2.0 * std::f64::consts::PI * mf).ln() + mf * mf.ln() - mf;
    BoundPair::from_logs(base + 1.0 / (12.0 * mf + 1.0), base + 1.0 / (12.0 * mf))
}

/// Bounds on `C(m, k)` for `1 <= k <= m - 1`, with `p = k/m`, `q = 1 - p`:
/// `(2 pi m p q)^(-1/2) (p^p q^q)^(-m)` times
/// `exp(1/(12m+1) - 1/(12k) - 1/(12(m-k)))` below and
/// `exp(1/(12m) - 1/(12k+1) - 1/(12(m-k)+1))` above.
pub fn binomial_bounds(m: u64, k: u64) -> Result<BoundPair> {
    if k == 0 || k >= m {
        return invalid(format!("binomial bounds need 1 <= k <= m-1, got m={m}, k={k}"));
    }
    let (mf, kf, rf) = (m as f64, k as f64, (m - k) as f64);
    // m p q = k (m-k) / m;  -m (p ln p + q ln q) = -k ln(k/m) - (m-k) ln((m-k)/m)
    let base = -0.5 * (2.0 * std::f64::consts::PI * kf * rf / mf).ln()
        - kf * (kf / mf).ln()
        - rf * (rf / mf).ln();
    let lower = 1.0 / (12.0 * mf + 1.0) - 1.0 / (12.0 * kf) - 1.0 / (12.0 * rf);
    let upper = 1.0 / (12.0 * mf) - 1.0 / (12.0 * kf + 1.0) - 1.0 / (12.0 * rf + 1.0);
    BoundPair::from_logs(base + lower, base + upper)
}

/// The split `W^(1)[g_n] = A_n + B_n` with exact parts and their enclosures.
#[derive(Clone, Debug, PartialEq)]
pub struct AnBn {
    pub n: usize,
    /// `(n-3) [8 C(n-4,(n-5)/2) / 2^(n-1)]^2`.
    pub a: Dyadic,
    /// `3 [2 C(n-3,(n-3)/2) / 2^(n-1)]^2`.
    pub b: Dyadic,
    pub a_bounds: BoundPair,
    pub b_bounds: BoundPair,
}

/// Exact `A_n`, `B_n` and their Stirling enclosures, odd `n >= 7`.
///
/// `A_n` lies between `(2/pi) [(n-4)/(n-3)]^(n-3) [(n-5)/(n-4)]^-(n-4)` times
/// `exp(2/(12n-47) - 2/(6n-30) - 2/(6n-18))` and the same main factor times
/// `exp(2/(12n-48) - 2/(6n-29) - 2/(6n-17))`. `B_n` lies between
/// `3/(2 pi (n-3))` times `exp(2/(12n-35) - 4/(6n-18))` and
/// `exp(2/(12n-36) - 4/(6n-17))`.
pub fn an_bn(n: usize) -> Result<AnBn> {
    if n < 7 || n.is_multiple_of(2) {
        return invalid(format!("A_n/B_n enclosures need odd n >= 7, got {n}"));
    }
    let (a, b) = g_w1_terms(n)?;
    let nf = n as f64;
    let ln_two_over_pi = two_over_pi().ln();
    let ln_a_main = ln_two_over_pi + (nf - 3.0) * ((nf - 4.0) / (nf - 3.0)).ln()
        - (nf - 4.0) * ((nf - 5.0) / (nf - 4.0)).ln();
    let a_bounds = BoundPair::from_logs(
        ln_a_main + 2.0 / (12.0 * nf - 47.0) - 2.0 / (6.0 * nf - 30.0) - 2.0 / (6.0 * nf - 18.0),
        ln_a_main + 2.0 / (12.0 * nf - 48.0) - 2.0 / (6.0 * nf - 29.0) - 2.0 / (6.0 * nf - 17.0),
    )?;
    let ln_b_main = (3.0 / (2.0 * std::f64::consts::PI)).ln() - (nf - 3.0).ln();
    let b_bounds = BoundPair::from_logs(
        ln_b_main + 2.0 / (12.0 * nf - 35.0) - 2.0 / (6.0 * nf - 18.0) - 2.0 / (6.0 * nf - 18.0),
        ln_b_main + 2.0 / (12.0 * nf - 36.0) - 2.0 / (6.0 * nf - 17.0) - 2.0 / (6.0 * nf - 17.0),
    )?;
    Ok(AnBn {
        n,
        a,
        b,
        a_bounds,
        b_bounds,
    })
}

/// Checks exactly, for every odd `n` in `[3, n_max - 2]`, that
/// `W^(1)[g_n] > W^(1)[g_{n+2}]` and that
/// `W^(1)[g_{n+2}] / W^(1)[Maj_n] = (4n-1)/(4n)`.
pub fn decreasing_check(n_max: usize) -> Result<bool> {
    if n_max < 5 || n_max.is_multiple_of(2) {
        return invalid(format!("n_max must be odd and >= 5, got {n_max}"));
    }
    let mut current = g_w1_closed(3)?;
    for n in (3..=n_max - 2).step_by(2) {
        let next = g_w1_closed(n + 2)?;
        if next >= current {
            return Ok(false);
        }
        let ratio = next.to_rational() / maj_w1_closed(n)?.to_rational();
        let expected = BigRational::new(BigInt::from(4 * n - 1), BigInt::from(4 * n));
        if ratio != expected {
            return Ok(false);
        }
        current = next;
    }
    Ok(true)
}

/// `W^(1)[g_n] - 2/pi` in `f64`.
pub fn limit_gap(n: usize) -> Result<f64> {
    if n < 5 || n.is_multiple_of(2) {
        return invalid(format!("limit gap needs odd n >= 5, got {n}"));
    }
    Ok(g_w1_closed(n)?.to_f64() - two_over_pi())
}

/// One row of the asymptotics table.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticsRow {
    pub n: usize,
    pub w1_g: Dyadic,
    pub w1_maj: Dyadic,
    pub ratio: f64,
    pub gap: f64,
    /// Present for `n >= 7`.
    pub enclosures: Option<(BoundPair, BoundPair)>,
}

/// Rows for odd `n` from 5 to `n_max`.
pub fn asymptotics_table(n_max: usize) -> Result<Vec<AsymptoticsRow>> {
    if n_max < 5 {
        return invalid(format!("n_max must be >= 5, got {n_max}"));
    }
    (5..=n_max)
        .step_by(2)
        .map(|n| {
            let w1_g = g_w1_closed(n)?;
            let w1_maj = maj_w1_closed(n)?;
            let ratio = (w1_g.to_rational() / w1_maj.to_rational())
                .to_f64()
                .unwrap_or(f64::NAN);
            let enclosures = if n >= 7 {
                let ab = an_bn(n)?;
                Some((ab.a_bounds, ab.b_bounds))
            } else {
                None
            };
            Ok(AsymptoticsRow {
                n,
                gap: w1_g.to_f64() - two_over_pi(),
                w1_maj,
                ratio,
                enclosures,
                w1_g,
            })
        })
        .collect()
}

pub const CSV_HEADER: &str =
    "n,W1_g_exact,W1_g_float,W1_maj_float,ratio,gap_to_2_over_pi,A_lower,A_upper,B_lower,B_upper";

pub fn write_csv<W: Write>(rows: &[AsymptoticsRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        let bounds = match &r.enclosures {
            Some((a, b)) => format!("{:e},{:e},{:e},{:e}", a.lower, a.upper, b.lower, b.upper),
            None => ",,,".to_string(),
        };
        writeln!(
            out,
            "{},{},{},{},{},{:e},{}",
            r.n,
            r.w1_g.to_pow2_string(),
            r.w1_g.to_f64(),
            r.w1_maj.to_f64(),
            r.ratio,
            r.gap,
            bounds
        )?;
    }
    Ok(())
}
