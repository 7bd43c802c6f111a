//! Command implementations behind the `tft` binary: forward/inverse
//! transforms of coefficient files, multiplication, a bound-verification
//! sweep, and text schedule diagrams.
//!
//! Everything is text-in, text-out so outputs diff cleanly. Exit codes:
//! 0 success, 1 contract violation (unreadable or invalid input), 2
//! internal invariant failure (a verification that should have held did
//! not).

use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::invtft::inv_tft;
use crate::plan::TransformPlan;
use crate::polymul::{multiply_schoolbook, multiply_tft, Polynomial};
use crate::ring::{FieldElement, PrimeField};
use crate::tft::{for_each_scheduled_butterfly, tft_cost_bound, tft_forward};
use crate::transform::OpCounter;

/// CLI failure carrying its process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad input: file, flags, or values violate a documented contract.
    #[error("{0}")]
    Contract(String),
    /// A check the tool performs on its own output failed.
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Contract(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

fn contract(err: impl std::fmt::Display) -> CliError {
    CliError::Contract(err.to_string())
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Textual coefficient file: `modulus <P>`, an optional `n <power-of-two>`
/// line, then whitespace-separated residues, low degree first. Residues
/// are reduced mod P on load.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientFile {
    pub modulus: u64,
    pub declared_n: Option<usize>,
    pub residues: Vec<u64>,
}

impl CoefficientFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut tokens = text.split_whitespace().peekable();
        match tokens.next() {
            Some("modulus") => {}
            other => {
                return Err(CliError::Contract(format!(
                    "expected leading `modulus <P>` line, found {other:?}"
                )))
            }
        }
        let modulus: u64 = tokens
            .next()
            .ok_or_else(|| CliError::Contract("missing modulus value".into()))?
            .parse()
            .map_err(|e| CliError::Contract(format!("bad modulus: {e}")))?;
        let declared_n = if tokens.peek() == Some(&"n") {
            tokens.next();
            let n: usize = tokens
                .next()
                .ok_or_else(|| CliError::Contract("missing n value".into()))?
                .parse()
                .map_err(|e| CliError::Contract(format!("bad n: {e}")))?;
            if n < 2 || !n.is_power_of_two() {
                return Err(CliError::Contract(format!(
                    "n must be a power of two >= 2, got {n}"
                )));
            }
            Some(n)
        } else {
            None
        };
        let mut residues = Vec::new();
        for tok in tokens {
            let v: u64 = tok
                .parse()
                .map_err(|e| CliError::Contract(format!("bad residue {tok:?}: {e}")))?;
            residues.push(v % modulus);
        }
        Ok(CoefficientFile {
            modulus,
            declared_n,
            residues,
        })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Contract(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn render(&self) -> String {
        let mut out = format!("modulus {}\n", self.modulus);
        if let Some(n) = self.declared_n {
            let _ = writeln!(out, "n {n}");
        }
        let values: Vec<String> = self.residues.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "{}", values.join(" "));
        out
    }

    pub fn save(&self, path: &Path) -> CliResult<()> {
        std::fs::write(path, self.render())
            .map_err(|e| CliError::Contract(format!("{}: {e}", path.display())))
    }

    fn field(&self) -> CliResult<PrimeField> {
        PrimeField::new(self.modulus).map_err(contract)
    }

    /// Declared transform size, or the smallest power of two covering
    /// `min_len`.
    fn transform_size(&self, min_len: usize) -> CliResult<usize> {
        let inferred = min_len.max(self.residues.len()).max(2).next_power_of_two();
        match self.declared_n {
            None => Ok(inferred),
            Some(n) if n >= inferred => Ok(n),
            Some(n) => Err(CliError::Contract(format!(
                "declared n {n} too small for {} values",
                min_len.max(self.residues.len())
            ))),
        }
    }

    /// Buffer of size `n` with the residues in front, checking that
    /// everything at index `ell` or later is zero.
    fn buffer(&self, field: PrimeField, n: usize, ell: usize) -> CliResult<Vec<FieldElement>> {
        let mut buf: Vec<FieldElement> = self.residues.iter().map(|&v| field.element(v)).collect();
        buf.resize(n, FieldElement::ZERO);
        if let Some(idx) = buf[ell..].iter().position(|v| !v.is_zero()) {
            return Err(CliError::Contract(format!(
                "input position {} must be zero (ell = {ell})",
                ell + idx
            )));
        }
        Ok(buf)
    }
}

fn values_line(values: &[FieldElement]) -> String {
    if values.is_empty() {
        return "values: (none)".into();
    }
    let rendered: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("values: {}", rendered.join(" "))
}

/// Forward truncated transform of a coefficient file; prints measured
/// operation counts next to the worst-case bound.
pub fn cmd_tft(input: &Path, output: Option<&Path>, ell: Option<usize>) -> CliResult<String> {
    let file = CoefficientFile::load(input)?;
    let field = file.field()?;
    let ell = ell.unwrap_or(file.residues.len());
    let n = file.transform_size(ell)?;
    let plan = TransformPlan::new(field, n).map_err(contract)?;
    let mut buf = file.buffer(field, n, ell)?;

    let mut ctr = OpCounter::new();
    tft_forward(&mut buf, ell, &plan, &mut ctr).map_err(contract)?;
    let (add_bound, mul_bound) = tft_cost_bound(n, ell).map_err(contract)?;

    let mut report = format!(
        "n={n} ell={ell} modulus={} root={}\n",
        field.modulus(),
        plan.omega()
    );
    let _ = writeln!(
        report,
        "ops:   add={} mul={}",
        ctr.additions, ctr.multiplications
    );
    let _ = writeln!(report, "bound: add<={add_bound} mul<={mul_bound}");
    report.push_str(&values_line(&buf[..ell]));
    if let Some(path) = output {
        CoefficientFile {
            modulus: field.modulus(),
            declared_n: Some(n),
            residues: buf[..ell].iter().map(|v| v.value()).collect(),
        }
        .save(path)?;
        let _ = write!(report, "\nwrote {}", path.display());
    }
    Ok(report)
}

/// Inverse truncated transform; refuses inputs whose tail is not zero.
pub fn cmd_invtft(input: &Path, output: Option<&Path>, ell: Option<usize>) -> CliResult<String> {
    let file = CoefficientFile::load(input)?;
    let field = file.field()?;
    let ell = ell.unwrap_or(file.residues.len());
    let n = file.transform_size(ell)?;
    let plan = TransformPlan::new(field, n).map_err(contract)?;
    let mut buf = file.buffer(field, n, ell)?;

    let mut ctr = OpCounter::new();
    inv_tft(&mut buf, ell, &plan, &mut ctr).map_err(contract)?;

    let mut report = format!("n={n} ell={ell} modulus={}\n", field.modulus());
    let _ = writeln!(
        report,
        "ops:   add={} mul={}",
        ctr.additions, ctr.multiplications
    );
    report.push_str(&values_line(&buf[..ell]));
    if let Some(path) = output {
        CoefficientFile {
            modulus: field.modulus(),
            declared_n: Some(n),
            residues: buf[..ell].iter().map(|v| v.value()).collect(),
        }
        .save(path)?;
        let _ = write!(report, "\nwrote {}", path.display());
    }
    Ok(report)
}

/// Polynomial product of two coefficient files, optionally cross-checked
/// against the quadratic method.
pub fn cmd_mul(lhs: &Path, rhs: &Path, output: Option<&Path>, verify: bool) -> CliResult<String> {
    let a = CoefficientFile::load(lhs)?;
    let b = CoefficientFile::load(rhs)?;
    if a.modulus != b.modulus {
        return Err(CliError::Contract(format!(
            "moduli differ: {} vs {}",
            a.modulus, b.modulus
        )));
    }
    let field = a.field()?;
    let p = Polynomial::from_integers(field, &a.residues);
    let q = Polynomial::from_integers(field, &b.residues);
    let product = multiply_tft(&p, &q, field).map_err(contract)?;

    let mut report = format!(
        "deg_lhs={} deg_rhs={} product_len={} modulus={}\n",
        fmt_degree(&p),
        fmt_degree(&q),
        product.coeffs().len(),
        field.modulus()
    );
    if verify {
        let expected = multiply_schoolbook(&p, &q, field);
        if expected != product {
            return Err(CliError::Internal(
                "transform product disagrees with schoolbook product".into(),
            ));
        }
        report.push_str("verify: ok (matches schoolbook)\n");
    }
    report.push_str(&values_line(product.coeffs()));
    if let Some(path) = output {
        let residues: Vec<u64> = if product.is_zero() {
            vec![0]
        } else {
            product.coeffs().iter().map(|v| v.value()).collect()
        };
        CoefficientFile {
            modulus: field.modulus(),
            declared_n: None,
            residues,
        }
        .save(path)?;
        let _ = write!(report, "\nwrote {}", path.display());
    }
    Ok(report)
}

fn fmt_degree(p: &Polynomial) -> String {
    match p.degree() {
        Some(d) => d.to_string(),
        None => "-inf".into(),
    }
}

/// For every output count `1..=n`: random data, forward transform, bound
/// check, inverse transform, round-trip check. One table row each.
pub fn cmd_sweep(n: usize, modulus: u64, seed: u64, inject_failure: bool) -> CliResult<String> {
    let field = PrimeField::new(modulus).map_err(contract)?;
    let plan = TransformPlan::new(field, n).map_err(contract)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut report = format!("seed: {seed}\nmodulus: {modulus}\nn: {n}\n");
    let _ = writeln!(
        report,
        "{:>6} {:>10} {:>10} {:>10} {:>10}  status",
        "ell", "adds", "add_bound", "muls", "mul_bound"
    );
    let mut failures = 0usize;
    for ell in 1..=n {
        let original: Vec<FieldElement> = (0..ell)
            .map(|_| field.element(rng.gen()))
            .chain(std::iter::repeat_n(FieldElement::ZERO, n - ell))
            .collect();
        let mut buf = original.clone();
        let mut ctr = OpCounter::new();
        tft_forward(&mut buf, ell, &plan, &mut ctr).map_err(contract)?;
        let (add_bound, mul_bound) = tft_cost_bound(n, ell).map_err(contract)?;

        for slot in buf[ell..].iter_mut() {
            *slot = FieldElement::ZERO;
        }
        inv_tft(&mut buf, ell, &plan, &mut OpCounter::new()).map_err(contract)?;
        if inject_failure && ell == n {
            buf[0] = field.add(buf[0], FieldElement::ONE);
        }

        let within_bounds = ctr.additions <= add_bound && ctr.multiplications <= mul_bound;
        let round_trip = buf == original;
        let ok = within_bounds && round_trip;
        if !ok {
            failures += 1;
        }
        let status = match (within_bounds, round_trip) {
            (true, true) => "ok",
            (false, _) => "FAIL (bound exceeded)",
            (_, false) => "FAIL (round trip)",
        };
        let _ = writeln!(
            report,
            "{ell:>6} {:>10} {add_bound:>10} {:>10} {mul_bound:>10}  {status}",
            ctr.additions, ctr.multiplications
        );
    }
    if failures > 0 {
        let _ = write!(report, "FAILED ({failures}/{n} rows bad)");
        return Err(CliError::Internal(report));
    }
    let _ = write!(report, "all ok ({n}/{n})");
    Ok(report)
}

/// Which schedule to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum ScheduleMode {
    #[default]
    Dft,
    Tft,
}

/// ASCII butterfly grid: row `s=0` shows the inputs (`a` data, `0`
/// padding), each later row marks the butterflies executed at that stage
/// at their lower index: `x` for a full butterfly, `o` where only the
/// lower output is computed. Blank (`.`) columns are skipped work.
///
/// The diagram is derived from the same schedule enumerator the transform
/// executes, so its counts match the instrumented run by construction.
pub fn cmd_schedule(n: usize, ell: Option<usize>, mode: ScheduleMode) -> CliResult<String> {
    if n < 2 || !n.is_power_of_two() {
        return Err(CliError::Contract(format!(
            "n must be a power of two >= 2, got {n}"
        )));
    }
    let ell = match mode {
        ScheduleMode::Dft => n,
        ScheduleMode::Tft => ell.unwrap_or(n),
    };
    if ell < 1 || ell > n {
        return Err(CliError::Contract(format!(
            "ell {ell} out of range 1..={n}"
        )));
    }
    let p = n.trailing_zeros() as usize;
    let mode_name = match mode {
        ScheduleMode::Dft => "dft",
        ScheduleMode::Tft => "tft",
    };

    let mut rows = vec![vec!['.'; n]; p + 1];
    for (col, slot) in rows[0].iter_mut().enumerate() {
        *slot = if col < ell { 'a' } else { '0' };
    }
    let (mut butterflies, mut full, mut adds, mut muls) = (0u64, 0u64, 0u64, 0u64);
    for_each_scheduled_butterfly(p, ell, |b| {
        rows[b.stage][b.lo] = if b.compute_hi { 'x' } else { 'o' };
        butterflies += 1;
        adds += if b.compute_hi { 2 } else { 1 };
        if b.compute_hi {
            full += 1;
        }
        if b.block != 0 {
            muls += 1;
        }
    });

    let mut report = format!("schedule n={n} ell={ell} mode={mode_name} (p={p})\n");
    for (s, row) in rows.iter().enumerate() {
        let line: Vec<String> = row.iter().map(char::to_string).collect();
        let _ = writeln!(report, "s={s}  {}", line.join(" "));
    }
    let _ = writeln!(
        report,
        "butterflies: {butterflies} (full {full}, lower-only {})",
        butterflies - full
    );
    let _ = write!(report, "ops: add={adds} mul={muls}");
    Ok(report)
}
