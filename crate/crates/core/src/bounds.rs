//! Growth diagnostics for the Mertens function: normalized ratio tables,
//! the strict |M(n)| < √n scan, the frequency-space view (ν₁−ν₂)·√n, and the
//! comparison of actual M(n) against Monte Carlo walk ensembles.
//!
//! Finite data cannot decide between the candidate growth laws — the ratios
//! are reported descriptively, with running sups and no claimed limits.

use crate::arith::{MertensSeries, MobiusTable};
use crate::dist::frequencies;
use crate::error::{Error, Result};
use crate::sigfmt::sig12;
use crate::walk::Ensemble;
use crate::SIGN_DENSITY;
use std::io::Write;

/// Default exponent offset for the n^{1/2+ξ} denominator.
pub const DEFAULT_XI: f64 = 0.05;

/// One checkpoint of the normalized growth table.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthRow {
    pub n: u64,
    pub mertens: i64,
    /// M(n)/n, signed.
    pub density: f64,
    /// |M(n)| / n^{1/2}.
    pub ratio_sqrt: f64,
    /// |M(n)| / √(n · log log n).
    pub ratio_loglog: f64,
    /// |M(n)| / n^{1/2+ξ}.
    pub ratio_riemann: f64,
    /// (ν₁ − ν₂)·√n, signed; identically M(n)/√n.
    pub freq_gap_scaled: f64,
}

/// Normalized growth ratios over a set of checkpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub xi: f64,
    pub rows: Vec<GrowthRow>,
}

/// Candidate growth laws the ratios are normalized against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundFamily {
    /// The strict classical bound |M(n)| < √n.
    Mertens,
    /// |M(n)| ≤ C·√n for some constant — same ratio as `Infinite`; finite
    /// data cannot separate the two, only report the running sup.
    Constant,
    /// lim sup |M(n)|/√n = ∞ — tracked by the same ratio as `Constant`.
    Infinite,
    /// |M(n)| ≤ C·√(n · log log n).
    LogLog,
    /// M(n) = O(n^{1/2+ξ}).
    Riemann,
}

impl BoundFamily {
    pub fn label(&self) -> &'static str {
        match self {
            BoundFamily::Mertens => "mertens",
            BoundFamily::Constant => "constant",
            BoundFamily::Infinite => "infinite",
            BoundFamily::LogLog => "loglog",
            BoundFamily::Riemann => "riemann",
        }
    }
}

/// Running sup of one family's normalized ratio and where it was attained.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundVerdict {
    pub family: BoundFamily,
    pub sup_ratio: f64,
    pub at_n: u64,
    /// Only the strict `Mertens` bound can be violated; the others have no
    /// fixed constant to break.
    pub violated: bool,
}

fn validate_checkpoints(checkpoints: &[u64], limit: u64, min: u64) -> Result<()> {
    for &n in checkpoints {
        if n > limit {
            return Err(Error::IndexOutOfRange { index: n, limit });
        }
        if n < min {
            return Err(Error::Domain(format!(
                "checkpoint {n} below the minimum {min}"
            )));
        }
    }
    Ok(())
}

/// Tabulate the normalized ratios at the given checkpoints.
/// Requires every checkpoint in [16, series.limit] (log log needs n ≥ 16)
/// and 0 < ξ < 1/2.
pub fn growth_report(series: &MertensSeries, checkpoints: &[u64], xi: f64) -> Result<GrowthReport> {
    if !(xi > 0.0 && xi < 0.5) {
        return Err(Error::Domain(format!(
            "xi must lie strictly between 0 and 1/2, got {xi}"
        )));
    }
    validate_checkpoints(checkpoints, series.limit(), 16)?;
    let rows = checkpoints
        .iter()
        .map(|&n| {
            let m = series.value(n);
            let nf = n as f64;
            let abs_m = m.unsigned_abs() as f64;
            GrowthRow {
                n,
                mertens: m,
                density: m as f64 / nf,
                ratio_sqrt: abs_m / nf.sqrt(),
                ratio_loglog: abs_m / (nf * nf.ln().ln()).sqrt(),
                ratio_riemann: abs_m / nf.powf(0.5 + xi),
                freq_gap_scaled: m as f64 / nf.sqrt(),
            }
        })
        .collect();
    Ok(GrowthReport { xi, rows })
}

/// Scan every n in [2, limit] for the strict bound |M(n)| < √n.
/// The violation test is integer-exact (M(n)² ≥ n); the reported sup ratio is
/// the floating maximum of |M(n)|/√n and the first n attaining it.
pub fn mertens_bound_check(series: &MertensSeries) -> Result<BoundVerdict> {
    if series.limit() < 2 {
        return Err(Error::LimitOutOfRange {
            limit: series.limit(),
            max: u64::MAX,
        });
    }
    let mut sup_ratio = 0.0f64;
    let mut at_n = 2u64;
    let mut violated = false;
    for n in 2..=series.limit() {
        let m = series.value(n);
        let m2 = (m as i128) * (m as i128);
        if m2 >= n as i128 {
            violated = true;
        }
        let ratio = m.unsigned_abs() as f64 / (n as f64).sqrt();
        if ratio > sup_ratio {
            sup_ratio = ratio;
            at_n = n;
        }
    }
    Ok(BoundVerdict {
        family: BoundFamily::Mertens,
        sup_ratio,
        at_n,
        violated,
    })
}

/// Running sups of each family's normalized ratio over the report's
/// checkpoints, in a fixed family order.
pub fn bound_verdicts(report: &GrowthReport) -> Vec<BoundVerdict> {
    let families = [
        BoundFamily::Mertens,
        BoundFamily::Constant,
        BoundFamily::Infinite,
        BoundFamily::LogLog,
        BoundFamily::Riemann,
    ];
    families
        .iter()
        .map(|&family| {
            let ratio_of = |row: &GrowthRow| match family {
                BoundFamily::Mertens | BoundFamily::Constant | BoundFamily::Infinite => {
                    row.ratio_sqrt
                }
                BoundFamily::LogLog => row.ratio_loglog,
                BoundFamily::Riemann => row.ratio_riemann,
            };
            let mut sup_ratio = 0.0f64;
            let mut at_n = report.rows.first().map(|r| r.n).unwrap_or(0);
            for row in &report.rows {
                let r = ratio_of(row);
                if r > sup_ratio {
                    sup_ratio = r;
                    at_n = row.n;
                }
            }
            let violated = family == BoundFamily::Mertens && sup_ratio >= 1.0;
            BoundVerdict {
                family,
                sup_ratio,
                at_n,
                violated,
            }
        })
        .collect()
}

/// One point of the frequency-space growth view.
#[derive(Debug, Clone, PartialEq)]
pub struct FreqGapPoint {
    pub n: u64,
    /// (ν₁ − ν₂)·√n, computed from the sign counts.
    pub value: f64,
}

/// (ν₁ − ν₂)·√n at each checkpoint, computed from sign counts rather than
/// from M(n); the two routes agree to floating precision because
/// ν₁ − ν₂ = M(n)/n exactly.
pub fn freq_gap_curve(table: &MobiusTable, checkpoints: &[u64]) -> Result<Vec<FreqGapPoint>> {
    validate_checkpoints(checkpoints, table.limit(), 1)?;
    checkpoints
        .iter()
        .map(|&n| {
            let freq = frequencies(table, n)?;
            let gap = (freq.c1 as i64 - freq.c2 as i64) as f64 / n as f64;
            Ok(FreqGapPoint {
                n,
                value: gap * (n as f64).sqrt(),
            })
        })
        .collect()
}

/// Actual Mertens data held against a walk ensemble at one checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelRow {
    pub n: u64,
    /// |M(n)| / √(2pn).
    pub actual: f64,
    /// Nearest-rank 5%/50%/95% quantiles of |S_n|/√(2pn) across replicates.
    pub q05: f64,
    pub q50: f64,
    pub q95: f64,
    /// Whether the actual value lies inside [q05, q95].
    pub in_band: bool,
}

/// Nearest-rank quantile of an ascending-sorted slice: the value at rank
/// ceil(p·M), 1-based.
fn nearest_rank(sorted: &[f64], p: f64) -> f64 {
    let m = sorted.len();
    let rank = ((p * m as f64).ceil() as usize).clamp(1, m);
    sorted[rank - 1]
}

/// Compare |M(n)|/√(2pn) against the ensemble's quantiles of |S_n|/√(2pn)
/// at each requested checkpoint. Every requested checkpoint must have been
/// recorded by the ensemble.
pub fn model_vs_actual(
    series: &MertensSeries,
    ens: &Ensemble,
    checkpoints: &[u64],
) -> Result<Vec<ModelRow>> {
    validate_checkpoints(checkpoints, series.limit(), 1)?;
    checkpoints
        .iter()
        .map(|&n| {
            let snap = ens.snapshot_at(n).ok_or(Error::CheckpointMismatch(n))?;
            let scale = (2.0 * SIGN_DENSITY * n as f64).sqrt();
            let mut scaled: Vec<f64> = snap
                .iter()
                .map(|&s| s.unsigned_abs() as f64 / scale)
                .collect();
            scaled.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
            let actual = series.value(n).unsigned_abs() as f64 / scale;
            let q05 = nearest_rank(&scaled, 0.05);
            let q50 = nearest_rank(&scaled, 0.50);
            let q95 = nearest_rank(&scaled, 0.95);
            Ok(ModelRow {
                n,
                actual,
                q05,
                q50,
                q95,
                in_band: q05 <= actual && actual <= q95,
            })
        })
        .collect()
}

/// Emit the combined growth CSV. Model columns are left empty at checkpoints
/// the model table does not cover (or when no model table is supplied).
pub fn write_growth_csv<W: Write>(
    w: &mut W,
    report: &GrowthReport,
    model: Option<&[ModelRow]>,
) -> Result<()> {
    writeln!(
        w,
        "n,mertens,ratio_sqrt,ratio_loglog,ratio_riemann,freq_gap_scaled,model_q05,model_q50,model_q95,in_band"
    )?;
    for row in &report.rows {
        let model_row = model.and_then(|m| m.iter().find(|mr| mr.n == row.n));
        let (q05, q50, q95, in_band) = match model_row {
            Some(mr) => (
                sig12(mr.q05),
                sig12(mr.q50),
                sig12(mr.q95),
                mr.in_band.to_string(),
            ),
            None => (String::new(), String::new(), String::new(), String::new()),
        };
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            row.n,
            row.mertens,
            sig12(row.ratio_sqrt),
            sig12(row.ratio_loglog),
            sig12(row.ratio_riemann),
            sig12(row.freq_gap_scaled),
            q05,
            q50,
            q95,
            in_band
        )?;
    }
    Ok(())
}

/// The default geometric checkpoint grid: powers of ten from 10³ up to the
/// limit; a limit below 10³ falls back to the single checkpoint {limit} when
/// that is large enough for the growth table (≥ 16).
pub fn default_checkpoints(limit: u64) -> Vec<u64> {
    let mut cps = Vec::new();
    let mut n = 1_000u64;
    while n <= limit {
        cps.push(n);
        match n.checked_mul(10) {
            Some(next) => n = next,
            None => break,
        }
    }
    if cps.is_empty() && limit >= 16 {
        cps.push(limit);
    }
    cps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{mertens_series, sieve_mobius};
    use crate::walk::{monte_carlo, WalkMode, WalkParams};
    use std::sync::OnceLock;

    fn series_1e6() -> &'static (MobiusTable, MertensSeries) {
        static DATA: OnceLock<(MobiusTable, MertensSeries)> = OnceLock::new();
        DATA.get_or_init(|| {
            let table = sieve_mobius(1_000_000).unwrap();
            let series = mertens_series(&table);
            (table, series)
        })
    }

    #[test]
    fn growth_report_examples() {
        let (_, series) = series_1e6();
        let report = growth_report(series, &[16, 1_000, 10_000, 1_000_000], 0.05).unwrap();
        let r16 = &report.rows[0];
        assert_eq!(r16.mertens, -1);
        assert_eq!(r16.ratio_sqrt, 0.25);
        assert_eq!(r16.density, -1.0 / 16.0);
        let r6 = &report.rows[3];
        assert_eq!(r6.mertens, 212);
        assert!(
            r6.ratio_sqrt < 1.0,
            "|M|/sqrt(n) = {} at 1e6",
            r6.ratio_sqrt
        );
        assert_eq!(r6.ratio_sqrt, 212.0 / 1.0e3);

        assert!(growth_report(series, &[15], 0.05).is_err());
        assert!(growth_report(series, &[1_000_001], 0.05).is_err());
        assert!(growth_report(series, &[16], 0.0).is_err());
        assert!(growth_report(series, &[16], 0.5).is_err());
    }

    #[test]
    fn heavier_denominators_give_strictly_smaller_ratios() {
        let (_, series) = series_1e6();
        let report =
            growth_report(series, &[16, 100, 1_000, 10_000, 100_000, 1_000_000], 0.05).unwrap();
        for row in &report.rows {
            assert!(row.ratio_sqrt.is_finite() && row.ratio_loglog.is_finite());
            if row.mertens != 0 {
                assert!(row.ratio_loglog < row.ratio_sqrt, "n = {}", row.n);
                assert!(row.ratio_riemann < row.ratio_sqrt, "n = {}", row.n);
            }
        }
    }

    #[test]
    fn strict_bound_scan_examples() {
        let table10 = sieve_mobius(10).unwrap();
        let v10 = mertens_bound_check(&mertens_series(&table10)).unwrap();
        assert_eq!(v10.at_n, 5, "the deepest early excursion is M(5) = -2");
        assert!((v10.sup_ratio - 2.0 / 5.0f64.sqrt()).abs() < 1e-15);
        assert!(!v10.violated);

        let (_, series) = series_1e6();
        let v = mertens_bound_check(series).unwrap();
        assert!(
            !v.violated,
            "the strict bound holds on the whole computed range"
        );
        // The global maximum of |M(n)|/sqrt(n) on [2, 1e6] is still at n = 5.
        assert_eq!(v.at_n, 5);
        assert!((v.sup_ratio - 0.8944271909999159).abs() < 1e-12);
        assert!(
            v10.sup_ratio <= v.sup_ratio,
            "running sup must not shrink as the range grows"
        );

        // |M(2)| = 0: the scan's first point satisfies the bound trivially.
        let table2 = sieve_mobius(2).unwrap();
        let v2 = mertens_bound_check(&mertens_series(&table2)).unwrap();
        assert!(!v2.violated);
        assert_eq!(v2.sup_ratio, 0.0);
    }

    /// Full-range scan at the default sieve ceiling; ignored by default
    /// because it sieves 10⁸ values (~1 GB of prefix sums, minutes of work).
    /// Run with: cargo test -p mertens-core --release -- --ignored
    #[test]
    #[ignore]
    fn strict_bound_scan_to_1e8() {
        let table = sieve_mobius(100_000_000).unwrap();
        let series = mertens_series(&table);
        let v = mertens_bound_check(&series).unwrap();
        assert!(!v.violated);
        assert_eq!(v.at_n, 5);
    }

    #[test]
    fn freq_gap_matches_mertens_identity() {
        let (table, series) = series_1e6();
        let points = freq_gap_curve(table, &[10, 16, 100, 10_000, 1_000_000]).unwrap();
        assert!((points[0].value - (-0.31622776601683794)).abs() < 1e-12);
        let report = growth_report(series, &[16, 100, 10_000, 1_000_000], 0.05).unwrap();
        for row in &report.rows {
            let point = points.iter().find(|p| p.n == row.n).unwrap();
            assert!(
                (point.value - row.freq_gap_scaled).abs() < 1e-12,
                "count route {} vs prefix route {} at n = {}",
                point.value,
                row.freq_gap_scaled,
                row.n
            );
            assert!((point.value.abs() - row.ratio_sqrt).abs() < 1e-12);
        }
        assert!(points.last().unwrap().value.abs() < 1.0);
        assert!(freq_gap_curve(table, &[0]).is_err());
        assert!(freq_gap_curve(table, &[1_000_001]).is_err());
    }

    #[test]
    fn verdicts_cover_families_and_sups_are_monotone() {
        let (_, series) = series_1e6();
        let cps = [16u64, 100, 1_000, 10_000, 100_000, 1_000_000];
        let full = bound_verdicts(&growth_report(series, &cps, 0.05).unwrap());
        let prefix = bound_verdicts(&growth_report(series, &cps[..3], 0.05).unwrap());
        assert_eq!(full.len(), 5);
        let labels: Vec<_> = full.iter().map(|v| v.family.label()).collect();
        assert_eq!(
            labels,
            ["mertens", "constant", "infinite", "loglog", "riemann"]
        );
        for (p, f) in prefix.iter().zip(&full) {
            assert!(p.sup_ratio <= f.sup_ratio, "family {}", f.family.label());
        }
        assert!(full.iter().all(|v| !v.violated));
        // The sqrt-normalized families share one ratio by construction.
        assert_eq!(full[0].sup_ratio, full[1].sup_ratio);
        assert_eq!(full[1].sup_ratio, full[2].sup_ratio);
    }

    #[test]
    fn model_comparison_reproduces_planted_and_real_ensembles() {
        let (_, series) = series_1e6();
        // A single "replicate" whose snapshots are the actual M(n): the
        // actual value must sit exactly on every quantile and in the band.
        let cps = vec![1_000u64, 10_000];
        let planted = Ensemble {
            steps: 10_000,
            master_seed: 0,
            mode_label: "asymptotic",
            lil_n0: 1_000,
            terminal: vec![series.value(10_000)],
            lil_stats: None,
            checkpoints: cps.clone(),
            snapshots: cps.iter().map(|&n| vec![series.value(n)]).collect(),
        };
        let rows = model_vs_actual(series, &planted, &cps).unwrap();
        for row in &rows {
            assert_eq!(row.actual, row.q50, "n = {}", row.n);
            assert!(row.in_band);
        }

        let mut params = WalkParams::new(10_000, 400, WalkMode::Asymptotic, 101);
        params.checkpoints = vec![10_000];
        let ens = monte_carlo(&params).unwrap();
        let rows = model_vs_actual(series, &ens, &[10_000]).unwrap();
        let row = &rows[0];
        // Median of |N(0,1)| is about 0.674; wide band for Monte Carlo noise.
        assert!(
            (0.5..=0.9).contains(&row.q50),
            "ensemble median of the scaled excursion: {}",
            row.q50
        );
        assert!(row.q05 <= row.q50 && row.q50 <= row.q95);
        assert_eq!(row.in_band, row.q05 <= row.actual && row.actual <= row.q95);
        let expected_actual = 23.0 / (2.0 * SIGN_DENSITY * 10_000.0).sqrt();
        assert!((row.actual - expected_actual).abs() < 1e-12);

        assert!(matches!(
            model_vs_actual(series, &ens, &[5_000]),
            Err(Error::CheckpointMismatch(5_000))
        ));
    }

    #[test]
    fn growth_csv_is_stable_and_merges_model_columns() {
        let (_, series) = series_1e6();
        let report = growth_report(series, &[16, 10_000], 0.05).unwrap();
        let model = vec![ModelRow {
            n: 10_000,
            actual: 0.295,
            q05: 0.06,
            q50: 0.67,
            q95: 1.96,
            in_band: true,
        }];

        let mut with_model = Vec::new();
        write_growth_csv(&mut with_model, &report, Some(&model)).unwrap();
        let text = String::from_utf8(with_model).unwrap();
        assert!(text.starts_with(
            "n,mertens,ratio_sqrt,ratio_loglog,ratio_riemann,freq_gap_scaled,model_q05,model_q50,model_q95,in_band\n"
        ));
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("16,-1,0.250000000000,"));
        assert!(
            lines[1].ends_with(",,,"),
            "no model columns at n = 16: {}",
            lines[1]
        );
        assert!(
            lines[2].ends_with(",true"),
            "model row carries the band flag: {}",
            lines[2]
        );

        let mut rerun = Vec::new();
        write_growth_csv(&mut rerun, &report, Some(&model)).unwrap();
        assert_eq!(text.as_bytes(), rerun.as_slice());

        let mut without = Vec::new();
        write_growth_csv(&mut without, &report, None).unwrap();
        assert!(String::from_utf8(without)
            .unwrap()
            .lines()
            .nth(1)
            .unwrap()
            .ends_with(",,,"));
    }

    #[test]
    fn default_checkpoint_grid() {
        assert_eq!(
            default_checkpoints(1_000_000),
            vec![1_000, 10_000, 100_000, 1_000_000]
        );
        assert_eq!(
            default_checkpoints(5_000_000),
            vec![1_000, 10_000, 100_000, 1_000_000]
        );
        assert_eq!(default_checkpoints(500), vec![500]);
        assert_eq!(default_checkpoints(10), Vec::<u64>::new());
    }
}
