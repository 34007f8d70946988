//! Comparing noise stability against majority.
//!
//! The central quantity is `D(rho) = Stab_rho(f) - Stab_rho(Maj_n)
//! = sum_k a_k rho^k` with `a_k = W^(k)[f] - W^(k)[Maj_n]`. All sign decisions
//! are made in exact arithmetic at rational points.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::json;

use crate::dyadic::Dyadic;
use crate::error::{invalid, Error, Result};
use crate::fourier::{fourier_transform, sign_at, StabilityPolynomial};
use crate::influence::local_monotonicity;
use crate::ltf::{g_two_block, g_w1_closed, maj_w1_closed};
use crate::poly::RationalPoly;
use crate::truth_table::{majority, TruthTable};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Outcome of comparing `Stab_rho(f)` with `Stab_rho(Maj_n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport {
    pub n: usize,
    /// `a_k` for `k = 0..=n`.
    pub weight_gap: Vec<Dyadic>,
    /// Grid resolution `N`; the grid is `{k/N : 0 <= k <= N}`.
    pub grid: usize,
    /// Sign of `D(k/N)` for each grid point.
    pub sign_pattern: Vec<i8>,
    /// `min(1, -a_1/(n-1))` when `a_0 = 0` and `a_1 < 0`.
    pub delta_constructive: Option<f64>,
    /// Largest grid point `rho*` with `D < 0` on every grid point of `(0, rho*]`.
    pub delta_empirical: f64,
    /// `Stab_rho(f) >= Stab_rho(Maj_n)` at every grid point.
    pub dominated_on_unit_interval: bool,
}

fn sign_of(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

fn ratio_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Stability polynomial of `Maj_n` from its truth table.
pub fn majority_polynomial(n: usize) -> Result<StabilityPolynomial> {
    Ok(fourier_transform(&majority(n)?).stability_polynomial())
}

/// Compares `f` against `Maj_n` on the grid `{k / rho_grid}`.
pub fn compare(f: &TruthTable, rho_grid: usize) -> Result<ComparisonReport> {
    let n = f.n();
    if n.is_multiple_of(2) {
        return invalid(format!("comparison with majority needs odd n, got {n}"));
    }
    if rho_grid < 2 {
        return invalid("rho grid needs at least 2 intervals");
    }
    let poly = fourier_transform(f).stability_polynomial();
    let maj = majority_polynomial(n)?;
    let gap = poly.difference(&maj);
    let q = BigInt::from(rho_grid);
    let sign_pattern: Vec<i8> = (0..=rho_grid)
        .into_par_iter()
        .map(|k| sign_of(sign_at(&gap, &BigInt::from(k), &q)))
        .collect();
    let run = sign_pattern[1..].iter().take_while(|&&s| s < 0).count();
    let mut report = ComparisonReport {
        n,
        grid: rho_grid,
        delta_empirical: run as f64 / rho_grid as f64,
        dominated_on_unit_interval: sign_pattern.iter().all(|&s| s >= 0),
        sign_pattern,
        weight_gap: gap,
        delta_constructive: None,
    };
    report.delta_constructive = constructive_delta(&report).ok().and_then(|d| d.to_f64());
    Ok(report)
}

impl ComparisonReport {
    /// `D` at an exact rational point.
    pub fn difference_at(&self, rho: &BigRational) -> BigRational {
        self.weight_gap
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, a| acc * rho + a.to_rational())
    }

    /// Sign of `D(rho)`, exact.
    pub fn difference_sign_at(&self, rho: &BigRational) -> Ordering {
        sign_at(&self.weight_gap, rho.numer(), rho.denom())
    }

    /// Maximal runs of equal sign as `(from, to, sign)` over the grid.
    pub fn sign_runs(&self) -> Vec<(f64, f64, i8)> {
        let step = self.grid as f64;
        let mut runs: Vec<(usize, usize, i8)> = Vec::new();
        for (k, &s) in self.sign_pattern.iter().enumerate() {
            match runs.last_mut() {
                Some(last) if last.2 == s => last.1 = k,
                _ => runs.push((k, k, s)),
            }
        }
        runs.into_iter()
            .map(|(a, b, s)| (a as f64 / step, b as f64 / step, s))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let runs: Vec<serde_json::Value> = self
            .sign_runs()
            .into_iter()
            .map(|(from, to, sign)| json!({ "from": from, "to": to, "sign": sign }))
            .collect();
        json!({
            "schema": REPORT_SCHEMA_VERSION,
            "n": self.n,
            "weight_gap": self.weight_gap.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            "grid": self.grid,
            "sign_runs": runs,
            "delta_constructive": self.delta_constructive,
            "delta_constructive_exact": constructive_delta(self).ok().map(|d| ratio_string(&d)),
            "delta_empirical": self.delta_empirical,
            "dominated_on_unit_interval": self.dominated_on_unit_interval,
        })
    }
}

/// `delta0 = min(1, -a_1/(n-1))`. On `(0, delta0]` the tail
/// `rho (a_2 + rho a_3 + ... )` stays below `-a_1` because every `a_k < 1`,
/// so `D < 0` there. The value is checked at `delta0 / 2` before returning.
pub fn constructive_delta(report: &ComparisonReport) -> Result<BigRational> {
    let zero = Dyadic::zero();
    let a0 = report.weight_gap.first().unwrap_or(&zero);
    let a1 = report.weight_gap.get(1).unwrap_or(&zero);
    if !a0.is_zero() {
        return Err(Error::PreconditionFailed(format!("a_0 = {a0} is not zero")));
    }
    if !a1.is_negative() {
        return Err(Error::PreconditionFailed(format!("a_1 = {a1} is not negative")));
    }
    let one = BigRational::one();
    let delta = if report.n <= 1 {
        one
    } else {
        let bound = -a1.to_rational() / BigRational::from_integer(BigInt::from(report.n - 1));
        bound.min(one)
    };
    let probe = &delta / BigRational::from_integer(2.into());
    if report.difference_sign_at(&probe) != Ordering::Less {
        return Err(Error::Invariant(format!(
            "D({}) is not negative",
            ratio_string(&probe)
        )));
    }
    Ok(delta)
}

/// `W^(1)[g_n] / W^(1)[Maj_n] = [(n-1)/(n-2)]^2 (4n-9)/(4n)`.
pub fn ratio_identity(n: usize) -> Result<BigRational> {
    if n < 3 || n.is_multiple_of(2) {
        return invalid(format!("ratio identity needs odd n >= 3, got {n}"));
    }
    let r = |p: usize, q: usize| BigRational::new(BigInt::from(p), BigInt::from(q));
    let base = r(n - 1, n - 2);
    Ok(&base * &base * r(4 * n - 9, 4 * n))
}

/// `W^(1)[g_n] / W^(1)[Maj_n]` from the two closed forms.
pub fn closed_form_ratio(n: usize) -> Result<BigRational> {
    Ok(g_w1_closed(n)?.to_rational() / maj_w1_closed(n)?.to_rational())
}

/// True iff `g_n` is balanced and `W^(1)[g_n] < W^(1)[Maj_n]` strictly, which
/// makes `g_n` less stable than majority for small `rho`. Uses closed forms
/// only, so any odd `n >= 3` is accepted.
pub fn verify_counterexample(n: usize) -> Result<bool> {
    if n < 3 || n.is_multiple_of(2) {
        return invalid(format!("counterexample check needs odd n >= 3, got {n}"));
    }
    let balanced = g_two_block(n)?.closed_w0().is_zero();
    Ok(balanced && g_w1_closed(n)? < maj_w1_closed(n)?)
}

/// Result of enumerating every `n`-variable function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    pub functions: usize,
    pub locally_monotone: usize,
    /// Distinct stability polynomials, in ascending coefficient order.
    pub polynomials: Vec<StabilityPolynomial>,
}

/// Enumerates all `2^(2^n)` functions on `n <= 4` variables, keeps the
/// locally monotone ones and collects their distinct stability polynomials.
pub fn search_locally_monotone(n: usize) -> Result<SearchResult> {
    if !(1..=4).contains(&n) {
        return invalid(format!("exhaustive search supports 1 <= n <= 4, got {n}"));
    }
    let size = 1usize << n;
    let total = 1u64 << size;
    let found: Vec<StabilityPolynomial> = (0..total)
        .into_par_iter()
        .filter_map(|bits| {
            let tt = TruthTable::from_words(n, vec![bits]).expect("fits one word");
            local_monotonicity(&tt)?;
            Some(fourier_transform(&tt).stability_polynomial())
        })
        .collect();
    let locally_monotone = found.len();
    let polynomials: BTreeSet<StabilityPolynomial> = found.into_iter().collect();
    Ok(SearchResult {
        n,
        functions: total as usize,
        locally_monotone,
        polynomials: polynomials.into_iter().collect(),
    })
}

/// Evidence that `Stab_rho(p) >= Stab_rho(Maj_n)` on `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationCheck {
    /// Non-negative at every `k / grid`, exact.
    pub grid_ok: bool,
    /// `D(0) >= 0` and `D(1) = 0`.
    pub endpoints_ok: bool,
    /// Root isolation proves `D >= 0` on the whole interval.
    pub roots_ok: bool,
}

impl DominationCheck {
    pub fn holds(&self) -> bool {
        self.grid_ok && self.endpoints_ok && self.roots_ok
    }
}

pub fn dominates_majority(p: &StabilityPolynomial, grid: usize) -> Result<DominationCheck> {
    let n = p.n();
    if grid == 0 {
        return invalid("grid must be positive");
    }
    let maj = majority_polynomial(n)?;
    let gap = p.difference(&maj);
    let q = BigInt::from(grid);
    let grid_ok = (0..=grid)
        .into_par_iter()
        .all(|k| sign_at(&gap, &BigInt::from(k), &q) != Ordering::Less);
    let d = RationalPoly::from_dyadics(&gap);
    let zero = BigRational::zero();
    let endpoints_ok = !d.eval(&zero).is_negative() && d.eval(&BigRational::one()).is_zero();
    Ok(DominationCheck {
        grid_ok,
        endpoints_ok,
        roots_ok: d.nonnegative_on_unit_interval(),
    })
}
