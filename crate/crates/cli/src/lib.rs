//! Command implementations behind the `boolstab` binary. Every command writes
//! its result to the given writer; nothing here touches process state.

use std::io::{self, Write};
use std::path::PathBuf;

use boolstab::asymptotics::{asymptotics_table, decreasing_check, write_csv};
use boolstab::conjecture::{compare, dominates_majority, search_locally_monotone};
use boolstab::ltf::{g_w1_closed, maj_w1_closed};
use boolstab::{
    fourier_transform, monte_carlo_stability, Dyadic, Error, FourierSpectrum, StabilityPolynomial,
    TruthTable,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

mod spec;

pub use spec::{FunctionSpec, SpecError};

/// Version tag written into every JSON document.
pub const JSON_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    /// 2 for usage and parse problems, 3 when the truth-table cap is hit,
    /// 4 for a violated internal invariant, 1 if output could not be written.
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Core(Error::ResourceLimit { .. }) => 3,
            Self::Core(Error::Invariant(_)) => 4,
            Self::Output(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

/// Decimal expansion of `r` when it terminates, otherwise `p/q`.
pub fn format_exact(r: &BigRational) -> String {
    let denom = r.denom();
    let twos = denom.trailing_zeros().unwrap_or(0);
    let mut rest = denom >> twos;
    let five = BigInt::from(5);
    let mut fives = 0u64;
    while (&rest % &five).is_zero() {
        rest /= &five;
        fives += 1;
    }
    if !rest.is_one() {
        return format!("{}/{}", r.numer(), denom);
    }
    let scale = twos.max(fives);
    if scale == 0 {
        return r.numer().to_string();
    }
    let scaled = r.numer() * num_traits::pow(BigInt::from(10), scale as usize) / denom;
    let digits = scaled.abs().to_string();
    let scale = scale as usize;
    let padded = format!("{digits:0>width$}", width = scale + 1);
    let (int, frac) = padded.split_at(padded.len() - scale);
    let sign = if scaled.is_negative() { "-" } else { "" };
    format!("{sign}{int}.{frac}")
}

/// Accepts `p/q` or a plain decimal such as `0.25`, kept exact.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || CliError::Usage(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int.is_empty() && frac.is_empty())
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    let r = BigRational::new(digits, num_traits::pow(BigInt::from(10), frac.len()));
    Ok(if negative { -r } else { r })
}

fn parse_rho(s: &str) -> Result<BigRational> {
    let rho = parse_rational(s)?;
    if rho.is_negative() || rho > BigRational::one() {
        return usage(format!("rho must lie in [0, 1], got {s}"));
    }
    Ok(rho)
}

fn dyadic_value(d: &Dyadic, float: bool) -> Value {
    if float {
        json!(d.to_f64())
    } else {
        json!(d.to_string())
    }
}

fn dyadic_text(d: &Dyadic, float: bool) -> String {
    if float {
        format!("{:?}", d.to_f64())
    } else {
        d.to_string()
    }
}

fn subset_label(mask: usize, n: usize, sep: &str) -> String {
    let members: Vec<String> = (0..n)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    members.join(sep)
}

fn write_json(out: &mut impl Write, value: &Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SpectrumOptions {
    /// Level weights instead of individual coefficients.
    pub levels: bool,
    /// Only `W^{<=k}`; implies `levels`.
    pub cumulative: Option<usize>,
    pub format: Format,
    pub float: bool,
}

pub fn spectrum(tt: &TruthTable, opts: SpectrumOptions, out: &mut impl Write) -> Result<()> {
    let s = fourier_transform(tt);
    if opts.levels || opts.cumulative.is_some() {
        levels(&s, opts, out)
    } else {
        coefficients(&s, opts, out)
    }
}

fn levels(s: &FourierSpectrum, opts: SpectrumOptions, out: &mut impl Write) -> Result<()> {
    let weights = s.level_weights();
    let cumulative = opts.cumulative.map(|k| s.cumulative_weight(k)).transpose()?;
    match opts.format {
        Format::Json => {
            let mut doc = json!({
                "schema": JSON_SCHEMA_VERSION,
                "n": s.n(),
                "levels": weights.iter().map(|w| dyadic_value(w, opts.float)).collect::<Vec<_>>(),
            });
            if let (Some(k), Some(c)) = (opts.cumulative, &cumulative) {
                doc["cumulative"] = json!({ "k": k, "value": dyadic_value(c, opts.float) });
            }
            write_json(out, &doc)
        }
        Format::Csv => {
            if let (Some(k), Some(c)) = (opts.cumulative, &cumulative) {
                writeln!(out, "k,cumulative_weight")?;
                writeln!(out, "{k},{}", dyadic_text(c, opts.float))?;
            } else {
                writeln!(out, "level,weight")?;
                for (k, w) in weights.iter().enumerate() {
                    writeln!(out, "{k},{}", dyadic_text(w, opts.float))?;
                }
            }
            Ok(())
        }
        Format::Text => {
            if let Some(c) = &cumulative {
                writeln!(out, "{}", dyadic_text(c, opts.float))?;
            } else {
                for (k, w) in weights.iter().enumerate() {
                    writeln!(out, "{k}\t{}", dyadic_text(w, opts.float))?;
                }
            }
            Ok(())
        }
    }
}

fn coefficients(s: &FourierSpectrum, opts: SpectrumOptions, out: &mut impl Write) -> Result<()> {
    let n = s.n();
    match opts.format {
        Format::Json => {
            let coeffs: Vec<Value> = (0..s.len())
                .map(|m| dyadic_value(&s.coeff(m), opts.float))
                .collect();
            write_json(
                out,
                &json!({ "schema": JSON_SCHEMA_VERSION, "n": n, "coefficients": coeffs }),
            )
        }
        Format::Csv => {
            writeln!(out, "subset,coefficient")?;
            for m in 0..s.len() {
                let c = s.coeff(m);
                writeln!(out, "{},{}", subset_label(m, n, " "), dyadic_text(&c, opts.float))?;
            }
            Ok(())
        }
        Format::Text => {
            for m in 0..s.len() {
                let c = s.coeff(m);
                if !c.is_zero() {
                    let label = format!("{{{}}}", subset_label(m, n, ","));
                    writeln!(out, "{label}\t{}", dyadic_text(&c, opts.float))?;
                }
            }
            Ok(())
        }
    }
}

/// `Stab_rho(f)` at one point. `rho` may be a decimal or `p/q` and is kept
/// exact, so decimal input gives an exact decimal result.
pub fn stab_at(tt: &TruthTable, rho: &str, float: bool, out: &mut impl Write) -> Result<()> {
    let rho = parse_rho(rho)?;
    let value = fourier_transform(tt).stability_polynomial().eval_exact(&rho);
    if float {
        writeln!(out, "{:?}", value.to_f64().unwrap_or(f64::NAN))?;
    } else {
        writeln!(out, "{}", format_exact(&value))?;
    }
    Ok(())
}

/// CSV table of `Stab_rho(f)` at `rho = k / grid`, `k = 0..=grid`.
pub fn stab_grid(tt: &TruthTable, grid: usize, out: &mut impl Write) -> Result<()> {
    if grid == 0 {
        return usage("grid must be positive");
    }
    let poly = fourier_transform(tt).stability_polynomial();
    writeln!(out, "rho,stab,stab_exact")?;
    let q = BigInt::from(grid);
    for k in 0..=grid {
        let rho = BigRational::new(BigInt::from(k), q.clone());
        let value = poly.eval_exact(&rho);
        writeln!(
            out,
            "{:?},{:?},{}",
            k as f64 / grid as f64,
            value.to_f64().unwrap_or(f64::NAN),
            format_exact(&value)
        )?;
    }
    Ok(())
}

pub fn compare_report(tt: &TruthTable, grid: usize, out: &mut impl Write) -> Result<()> {
    let report = compare(tt, grid)?;
    write_json(out, &report.to_json())
}

fn weights_text(p: &StabilityPolynomial) -> String {
    let w: Vec<String> = p.weights().iter().map(Dyadic::to_string).collect();
    format!("({})", w.join(", "))
}

/// Every locally monotone function on three variables, grouped by stability
/// polynomial, each checked against `Maj_3`.
pub fn search3(json: bool, out: &mut impl Write) -> Result<()> {
    let res = search_locally_monotone(3)?;
    let mut rows = Vec::new();
    for p in &res.polynomials {
        rows.push((p, dominates_majority(p, 1000)?.holds()));
    }
    if json {
        let polys: Vec<Value> = rows
            .iter()
            .map(|(p, dom)| {
                json!({
                    "weights": p.weights().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    "dominates_majority": dom,
                })
            })
            .collect();
        return write_json(
            out,
            &json!({
                "schema": JSON_SCHEMA_VERSION,
                "n": res.n,
                "functions": res.functions,
                "locally_monotone": res.locally_monotone,
                "polynomials": polys,
            }),
        );
    }
    writeln!(out, "functions: {}", res.functions)?;
    writeln!(out, "locally monotone: {}", res.locally_monotone)?;
    writeln!(out, "distinct stability polynomials: {}", rows.len())?;
    for (p, dom) in rows {
        writeln!(
            out,
            "{:<28} {:<42} dominates Maj_3: {}",
            weights_text(p),
            p.pretty(),
            if dom { "yes" } else { "no" }
        )?;
    }
    Ok(())
}

/// Single odd `n`: whether `g_n` beats majority at level one.
pub fn counterexample(n: usize, out: &mut impl Write) -> Result<()> {
    let holds = boolstab::conjecture::verify_counterexample(n)?;
    let g = g_w1_closed(n)?;
    let maj = maj_w1_closed(n)?;
    let relation = match g.cmp(&maj) {
        std::cmp::Ordering::Less => "<",
        std::cmp::Ordering::Equal => "=",
        std::cmp::Ordering::Greater => ">",
    };
    writeln!(out, "n={n}: {holds} (W1[g_{n}] = {g} {relation} W1[Maj_{n}] = {maj})")?;
    Ok(())
}

/// Compresses sorted odd values into `a..b` runs.
fn odd_runs(values: &[usize]) -> String {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for &v in values {
        match runs.last_mut() {
            Some(r) if r.1 + 2 == v => r.1 = v,
            _ => runs.push((v, v)),
        }
    }
    let parts: Vec<String> = runs
        .into_iter()
        .map(|(a, b)| if a == b { a.to_string() } else { format!("{a}..{b}") })
        .collect();
    parts.join(", ")
}

/// Every odd `n` in `3..=n_max`, summarized as runs.
pub fn counterexample_range(n_max: usize, out: &mut impl Write) -> Result<()> {
    if n_max < 3 || n_max.is_multiple_of(2) {
        return usage(format!("--n-max must be odd and >= 3, got {n_max}"));
    }
    let (mut yes, mut no) = (Vec::new(), Vec::new());
    for n in (3..=n_max).step_by(2) {
        if boolstab::conjecture::verify_counterexample(n)? {
            yes.push(n);
        } else {
            no.push(n);
        }
    }
    let mut parts = Vec::new();
    if !yes.is_empty() {
        parts.push(format!("true for all odd {}", odd_runs(&yes)));
    }
    if !no.is_empty() {
        parts.push(format!("false at {}", odd_runs(&no)));
    }
    writeln!(out, "{}", parts.join("; "))?;
    Ok(())
}

pub fn asymptotics(n_max: usize, csv: bool, out: &mut impl Write) -> Result<()> {
    if n_max < 5 || n_max.is_multiple_of(2) {
        return usage(format!("--n-max must be odd and >= 5, got {n_max}"));
    }
    let rows = asymptotics_table(n_max)?;
    if csv {
        write_csv(&rows, &mut *out)?;
        return Ok(());
    }
    writeln!(
        out,
        "{:>5}  {:<14} {:<14} {:<14} {:<12} {:<29} B_n enclosure",
        "n", "W1[g_n]", "W1[Maj_n]", "ratio", "gap to 2/pi", "A_n enclosure"
    )?;
    for r in &rows {
        let (a, b) = match &r.enclosures {
            Some((a, b)) => (
                format!("[{:.10}, {:.10}]", a.lower, a.upper),
                format!("[{:.6e}, {:.6e}]", b.lower, b.upper),
            ),
            None => ("-".into(), "-".into()),
        };
        writeln!(
            out,
            "{:>5}  {:<14.12} {:<14.12} {:<14.12} {:<12.6e} {:<29} {}",
            r.n,
            r.w1_g.to_f64(),
            r.w1_maj.to_f64(),
            r.ratio,
            r.gap,
            a,
            b
        )?;
    }
    writeln!(
        out,
        "strictly decreasing on odd 3..{n_max}: {}",
        decreasing_check(n_max)?
    )?;
    Ok(())
}

pub fn monte_carlo(
    tt: &TruthTable,
    rho: f64,
    samples: u64,
    seed: u64,
    out: &mut impl Write,
) -> Result<()> {
    let est = monte_carlo_stability(tt, rho, samples, seed)?;
    let exact = fourier_transform(tt).stability_polynomial().eval(rho)?;
    writeln!(out, "estimate: {}", est.estimate)?;
    writeln!(out, "stderr: {}", est.stderr)?;
    writeln!(out, "samples: {}", est.samples)?;
    writeln!(out, "exact: {exact}")?;
    writeln!(out, "z: {:.3}", est.z_score(exact))?;
    Ok(())
}

/// The truth table in the on-disk format read back by `tt:<path>`.
pub fn table(tt: &TruthTable, out: &mut impl Write) -> Result<()> {
    write!(out, "{tt}")?;
    Ok(())
}
