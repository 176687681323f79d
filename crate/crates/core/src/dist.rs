//! Sign frequencies of μ over [1, n], the empirical and limiting step CDFs,
//! exact rational moment summaries, and the residual diagnostics that track
//! how fast the frequencies approach their limits.

use crate::arith::{MertensSeries, MobiusTable, OmegaTable};
use crate::error::{Error, Result};
use crate::sigfmt::sig12;
use crate::{Rational, SIGN_DENSITY, SQUAREFREE_DENSITY};
use std::io::Write;

/// Exact counts of μ = +1, −1, 0 on [1, n]: c1 + c2 + c3 = n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrequencyTriple {
    pub n: u64,
    pub c1: u64,
    pub c2: u64,
    pub c3: u64,
}

impl FrequencyTriple {
    /// ν₁ = c1/n as an exact rational.
    pub fn nu1(&self) -> Rational {
        Rational::new(self.c1 as i128, self.n as i128)
    }

    /// ν₂ = c2/n as an exact rational.
    pub fn nu2(&self) -> Rational {
        Rational::new(self.c2 as i128, self.n as i128)
    }

    /// ν₃ = c3/n as an exact rational.
    pub fn nu3(&self) -> Rational {
        Rational::new(self.c3 as i128, self.n as i128)
    }

    pub fn nu1_f64(&self) -> f64 {
        self.c1 as f64 / self.n as f64
    }

    pub fn nu2_f64(&self) -> f64 {
        self.c2 as f64 / self.n as f64
    }

    pub fn nu3_f64(&self) -> f64 {
        self.c3 as f64 / self.n as f64
    }
}

/// Count each μ value on [1, n].
pub fn frequencies(table: &MobiusTable, n: u64) -> Result<FrequencyTriple> {
    if n == 0 || n > table.limit() {
        return Err(Error::IndexOutOfRange {
            index: n,
            limit: table.limit(),
        });
    }
    let mut c1 = 0u64;
    let mut c2 = 0u64;
    for &v in &table.values()[1..=n as usize] {
        match v {
            1 => c1 += 1,
            -1 => c2 += 1,
            _ => {}
        }
    }
    Ok(FrequencyTriple {
        n,
        c1,
        c2,
        c3: n - c1 - c2,
    })
}

/// ν₁ − ν₂ as an exact rational, checked against M(n)/n.
///
/// The two sides count the same signed set, so any mismatch means one of the
/// tables is corrupt; that surfaces as an error rather than a wrong value.
pub fn density_identity(freq: &FrequencyTriple, series: &MertensSeries) -> Result<Rational> {
    if freq.n > series.limit() {
        return Err(Error::IndexOutOfRange {
            index: freq.n,
            limit: series.limit(),
        });
    }
    let gap = freq.nu1() - freq.nu2();
    let mertens = Rational::new(series.value(freq.n) as i128, freq.n as i128);
    if gap != mertens {
        return Err(Error::InconsistentTables(format!(
            "(c1 - c2)/n = {gap} but M(n)/n = {mertens} at n = {}",
            freq.n
        )));
    }
    Ok(gap)
}

/// The limiting step CDF: 0 for y < −1, then p, then 1 − p on [0, 1), then 1.
#[derive(Debug, Clone, Copy)]
pub struct LimitCdf {
    pub p: f64,
}

impl Default for LimitCdf {
    fn default() -> Self {
        LimitCdf { p: SIGN_DENSITY }
    }
}

impl LimitCdf {
    /// Piecewise value; boundaries belong to the upper piece, so eval(1) = 1.
    pub fn eval(&self, y: f64) -> f64 {
        if y < -1.0 {
            0.0
        } else if y < 0.0 {
            self.p
        } else if y < 1.0 {
            1.0 - self.p
        } else {
            1.0
        }
    }
}

/// The limiting step CDF with p = 3/π², rejecting non-finite arguments.
pub fn limit_cdf_eval(y: f64) -> Result<f64> {
    if !y.is_finite() {
        return Err(Error::Domain(format!(
            "CDF argument must be finite, got {y}"
        )));
    }
    Ok(LimitCdf::default().eval(y))
}

/// The empirical step CDF of μ on [1, n]: masses ν₂, ν₃, ν₁ at −1, 0, +1.
#[derive(Debug, Clone, Copy)]
pub struct EmpiricalCdf {
    pub n: u64,
    /// Cumulative mass on [−1, 0): ν₂.
    pub nu2: f64,
    /// Cumulative mass on [0, 1): ν₂ + ν₃.
    pub nu23: f64,
}

impl EmpiricalCdf {
    /// Piecewise value; boundaries belong to the upper piece, so eval(1) = 1.
    pub fn eval(&self, y: f64) -> f64 {
        if y < -1.0 {
            0.0
        } else if y < 0.0 {
            self.nu2
        } else if y < 1.0 {
            self.nu23
        } else {
            1.0
        }
    }
}

/// Build the empirical step CDF from exact sign counts.
pub fn empirical_cdf(freq: &FrequencyTriple) -> EmpiricalCdf {
    EmpiricalCdf {
        n: freq.n,
        nu2: freq.nu2_f64(),
        nu23: (freq.c2 + freq.c3) as f64 / freq.n as f64,
    }
}

/// sup_y |F_n(y) − F(y)|.
///
/// Both functions jump only at {−1, 0, 1} and agree on the outer pieces (0 and
/// 1), so the sup is the larger of the two inner piece differences.
pub fn cdf_sup_distance(empirical: &EmpiricalCdf, limit: &LimitCdf) -> f64 {
    let d_low = (empirical.nu2 - limit.p).abs();
    let d_high = (empirical.nu23 - (1.0 - limit.p)).abs();
    d_low.max(d_high)
}

/// Exact rational mean and variance of an integer-valued function on [1, n].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSummary {
    pub n: u64,
    pub mean: Rational,
    pub variance: Rational,
}

/// Moments of f over [1, n]: mean = (1/n) Σ f(i), variance = (1/n) Σ f(i)² − mean².
pub fn moments<F: FnMut(u64) -> i64>(mut f: F, n: u64) -> Result<MomentSummary> {
    if n == 0 {
        return Err(Error::Domain("moments need n >= 1".into()));
    }
    let mut sum = 0i128;
    let mut sum_sq = 0i128;
    for i in 1..=n {
        let v = f(i) as i128;
        sum += v;
        sum_sq += v * v;
    }
    let mean = Rational::new(sum, n as i128);
    let variance = Rational::new(sum_sq, n as i128) - mean * mean;
    Ok(MomentSummary { n, mean, variance })
}

/// Moments of μ on [1, n].
pub fn mobius_moments(table: &MobiusTable, n: u64) -> Result<MomentSummary> {
    if n > table.limit() {
        return Err(Error::IndexOutOfRange {
            index: n,
            limit: table.limit(),
        });
    }
    moments(|i| i64::from(table.value(i)), n)
}

/// Moments of |μ| on [1, n].
pub fn mobius_abs_moments(table: &MobiusTable, n: u64) -> Result<MomentSummary> {
    if n > table.limit() {
        return Err(Error::IndexOutOfRange {
            index: n,
            limit: table.limit(),
        });
    }
    moments(|i| i64::from(table.value(i).unsigned_abs() as i8), n)
}

/// Moments of ω on [1, n].
pub fn omega_moments(table: &OmegaTable, n: u64) -> Result<MomentSummary> {
    if n > table.limit() {
        return Err(Error::IndexOutOfRange {
            index: n,
            limit: table.limit(),
        });
    }
    moments(|i| i64::from(table.count(i)), n)
}

/// Distance of the sign frequencies from their limits at one checkpoint, raw
/// and √n-scaled. Two error mechanisms of unknown relative size drive the
/// decay, so both views are reported and neither is singled out.
#[derive(Debug, Clone, Copy)]
pub struct NuResidual {
    pub n: u64,
    /// ν₁ − 3/π².
    pub nu1_residual: f64,
    /// ν₂ − 3/π².
    pub nu2_residual: f64,
    /// (ν₁ + ν₂) − 6/π², the squarefree-density residual.
    pub squarefree_residual: f64,
    pub nu1_residual_scaled: f64,
    pub nu2_residual_scaled: f64,
    pub squarefree_residual_scaled: f64,
}

/// Residuals of (ν₁, ν₂, ν₁+ν₂) against (3/π², 3/π², 6/π²) per checkpoint.
pub fn nu_residuals(table: &MobiusTable, checkpoints: &[u64]) -> Result<Vec<NuResidual>> {
    checkpoints
        .iter()
        .map(|&n| {
            let freq = frequencies(table, n)?;
            let scale = (n as f64).sqrt();
            let nu1_residual = freq.nu1_f64() - SIGN_DENSITY;
            let nu2_residual = freq.nu2_f64() - SIGN_DENSITY;
            let squarefree_residual = (freq.c1 + freq.c2) as f64 / n as f64 - SQUAREFREE_DENSITY;
            Ok(NuResidual {
                n,
                nu1_residual,
                nu2_residual,
                squarefree_residual,
                nu1_residual_scaled: nu1_residual * scale,
                nu2_residual_scaled: nu2_residual * scale,
                squarefree_residual_scaled: squarefree_residual * scale,
            })
        })
        .collect()
}

/// One row of the frequency CSV.
#[derive(Debug, Clone, Copy)]
pub struct FreqRow {
    pub triple: FrequencyTriple,
    pub mertens: i64,
    pub sup_distance: f64,
}

/// Frequency, Mertens value, and CDF sup-distance per checkpoint.
pub fn build_freq_rows(
    table: &MobiusTable,
    series: &MertensSeries,
    checkpoints: &[u64],
) -> Result<Vec<FreqRow>> {
    let limit = LimitCdf::default();
    checkpoints
        .iter()
        .map(|&n| {
            let triple = frequencies(table, n)?;
            density_identity(&triple, series)?;
            let sup = cdf_sup_distance(&empirical_cdf(&triple), &limit);
            Ok(FreqRow {
                triple,
                mertens: series.value(n),
                sup_distance: sup,
            })
        })
        .collect()
}

/// Emit the frequency rows as CSV: header then one line per checkpoint, LF
/// endings, reals with 12 significant digits.
pub fn write_freq_csv<W: Write>(w: &mut W, rows: &[FreqRow]) -> Result<()> {
    writeln!(w, "n,nu1,nu2,nu3,mertens,sup_distance")?;
    for row in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            row.triple.n,
            sig12(row.triple.nu1_f64()),
            sig12(row.triple.nu2_f64()),
            sig12(row.triple.nu3_f64()),
            row.mertens,
            sig12(row.sup_distance)
        )?;
    }
    Ok(())
}
