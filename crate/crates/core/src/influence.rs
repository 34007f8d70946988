//! Influences, local monotonicity and balance, computed word-at-a-time on the
//! packed table.

use rayon::prelude::*;

use crate::dyadic::Dyadic;
use crate::error::{invalid, Result};
use crate::truth_table::TruthTable;

/// Word masks selecting the positions whose index has bit `i` clear.
const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

const PAR_MIN_WORDS: usize = 1 << 12;

/// Calls `visit(a, b, mask)` over aligned words holding `f` at `x_var = +1`
/// (`a`) and `x_var = -1` (`b`); only the bits in `mask` are meaningful.
/// The visitor results are summed.
fn pair_words<F>(tt: &TruthTable, var: usize, visit: F) -> u64
where
    F: Fn(u64, u64, u64) -> u64 + Sync,
{
    let words = tt.words();
    if var < 6 {
        let shift = 1 << var;
        let mask = LOW_HALF[var];
        let f = |&w: &u64| visit(w, w >> shift, mask);
        if words.len() >= PAR_MIN_WORDS {
            words.par_iter().map(f).sum()
        } else {
            words.iter().map(f).sum()
        }
    } else {
        let stride = 1 << (var - 6);
        let f = |j: usize| {
            if j & stride == 0 {
                visit(words[j], words[j + stride], u64::MAX)
            } else {
                0
            }
        };
        if words.len() >= PAR_MIN_WORDS {
            (0..words.len()).into_par_iter().map(f).sum()
        } else {
            (0..words.len()).map(f).sum()
        }
    }
}

/// Number of unordered pairs `{x, x^(+i)}` on which `f` differs (0-based var).
fn sensitive_pairs(tt: &TruthTable, var: usize) -> u64 {
    pair_words(tt, var, |a, b, mask| ((a ^ b) & mask).count_ones() as u64)
}

/// Per-variable influences `Inf_i(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfluenceVector {
    values: Vec<Dyadic>,
}

impl InfluenceVector {
    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Dyadic] {
        &self.values
    }

    /// Influence of variable `i` (1-based).
    pub fn get(&self, i: usize) -> Option<&Dyadic> {
        i.checked_sub(1).and_then(|k| self.values.get(k))
    }

    /// Total influence `sum_i Inf_i(f)`.
    pub fn total(&self) -> Dyadic {
        self.values.iter().sum()
    }

    pub fn sum_of_squares(&self) -> Dyadic {
        self.values.iter().map(Dyadic::square).sum()
    }
}

/// `Inf_i(f) = Pr_x[f(x) != f(x^(+i))]` for 1-based `i`.
///
/// Each sensitive pair contributes both of its points, so the value is
/// `pairs / 2^(n-1)`.
pub fn influence(tt: &TruthTable, i: usize) -> Result<Dyadic> {
    if i == 0 || i > tt.n() {
        return invalid(format!("variable {i} out of range 1..={}", tt.n()));
    }
    Ok(Dyadic::new(sensitive_pairs(tt, i - 1), tt.n() as u64 - 1))
}

pub fn influences(tt: &TruthTable) -> InfluenceVector {
    InfluenceVector {
        values: (1..=tt.n())
            .map(|i| influence(tt, i).expect("index in range"))
            .collect(),
    }
}

/// Direction in which `f` is monotone in one variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Monotone {
    /// Non-decreasing; also reported for variables `f` ignores.
    Increasing,
    Decreasing,
}

impl Monotone {
    pub fn sign(self) -> i8 {
        match self {
            Monotone::Increasing => 1,
            Monotone::Decreasing => -1,
        }
    }
}

/// Per-variable monotonicity direction, or `None` if some variable admits
/// neither direction.
pub fn local_monotonicity(tt: &TruthTable) -> Option<Vec<Monotone>> {
    (0..tt.n())
        .map(|var| {
            // a: f at x_var = +1, b: f at x_var = -1
            let up_violations = pair_words(tt, var, |a, b, m| (!a & b & m).count_ones() as u64);
            if up_violations == 0 {
                return Some(Monotone::Increasing);
            }
            let down_violations =
                pair_words(tt, var, |a, b, m| (a & !b & m).count_ones() as u64);
            (down_violations == 0).then_some(Monotone::Decreasing)
        })
        .collect()
}

/// True iff `f` takes each value on exactly half the inputs.
pub fn is_balanced(tt: &TruthTable) -> bool {
    2 * tt.count_ones() == tt.len() as u64
}
