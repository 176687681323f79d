//! The lazy ±1/0 random walk whose step probabilities mirror the Möbius sign
//! frequencies: seeded path simulation, deterministic Monte Carlo ensembles,
//! the standard normal CDF, Kolmogorov–Smirnov distances, and the
//! iterated-logarithm statistic.
//!
//! Determinism contract: every replicate draws from its own ChaCha8 generator
//! seeded by [`replicate_seed`], so ensembles are bit-identical for a fixed
//! (master seed, steps, replicates, mode) no matter how many workers run them.

use crate::arith::MobiusTable;
use crate::dist::frequencies;
use crate::error::{Error, Result};
use crate::sigfmt::sig12;
use crate::SIGN_DENSITY;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::{PI, SQRT_2};
use std::io::Write;

/// Default ceiling on steps × replicates for one ensemble.
pub const DEFAULT_STEP_BUDGET: u128 = 1 << 31;

/// Default first index entering the iterated-logarithm statistic.
pub const DEFAULT_LIL_N0: u64 = 1_000;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64_finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for replicate r: the (r+1)-th output of the splitmix64 stream seeded
/// with the master seed. Distinct replicates get decorrelated generators and
/// the mapping is pure, so any work schedule reproduces the same ensemble.
pub fn replicate_seed(master_seed: u64, replicate: u64) -> u64 {
    splitmix64_finalize(
        master_seed.wrapping_add(replicate.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)),
    )
}

/// Uniform draw in [0, 1) from the top 53 bits of one u64 output.
#[inline]
fn uniform_unit<R: RngCore>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Map a uniform draw to a step by cumulative thresholds, in the pinned order
/// +1, then −1, then 0: u < up → +1, u < up_down → −1, else 0.
#[inline]
fn sample_step(u: f64, up: f64, up_down: f64) -> i64 {
    if u < up {
        1
    } else if u < up_down {
        -1
    } else {
        0
    }
}

/// Step law of the walk: P(+1), P(−1), P(0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepDistribution {
    pub p_up: f64,
    pub p_down: f64,
    pub p_stay: f64,
}

impl StepDistribution {
    /// Validated constructor: non-negative components summing to 1 within 1e−12.
    pub fn new(p_up: f64, p_down: f64, p_stay: f64) -> Result<Self> {
        let dist = StepDistribution {
            p_up,
            p_down,
            p_stay,
        };
        dist.validate()?;
        Ok(dist)
    }

    pub fn validate(&self) -> Result<()> {
        let parts = [self.p_up, self.p_down, self.p_stay];
        if parts.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::Domain(format!(
                "step probabilities must be non-negative: {self:?}"
            )));
        }
        let sum: f64 = parts.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!(
                "step probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(())
    }

    fn thresholds(&self) -> (f64, f64) {
        (self.p_up, self.p_up + self.p_down)
    }
}

/// The limiting step law (p, p, 1 − 2p) with p = 3/π².
pub fn asymptotic_step_dist() -> StepDistribution {
    StepDistribution {
        p_up: SIGN_DENSITY,
        p_down: SIGN_DENSITY,
        p_stay: 1.0 - 2.0 * SIGN_DENSITY,
    }
}

/// The step law at time i of the non-homogeneous chain: the sign frequencies
/// (ν₁, ν₂, ν₃) of μ over [1, i].
pub fn empirical_step_dist(table: &MobiusTable, i: u64) -> Result<StepDistribution> {
    let freq = frequencies(table, i)?;
    Ok(StepDistribution {
        p_up: freq.nu1_f64(),
        p_down: freq.nu2_f64(),
        p_stay: freq.nu3_f64(),
    })
}

/// How step distributions vary along a simulated path.
#[derive(Debug, Clone, Copy)]
pub enum WalkMode<'a> {
    /// Every step uses the limiting law (p, p, 1 − 2p).
    Asymptotic,
    /// Step n uses the sign frequencies over [1, n]; the table must cover the
    /// requested number of steps.
    Empirical(&'a MobiusTable),
    /// Every step uses the sign frequencies over [1, steps] — the
    /// homogeneous approximation at the walk's own horizon.
    EmpiricalFixed(&'a MobiusTable),
}

impl WalkMode<'_> {
    pub fn label(&self) -> &'static str {
        match self {
            WalkMode::Asymptotic => "asymptotic",
            WalkMode::Empirical(_) => "empirical",
            WalkMode::EmpiricalFixed(_) => "empirical-fixed",
        }
    }
}

/// Per-step sampling thresholds, resolved once per simulation.
enum StepProgram {
    Fixed {
        up: f64,
        up_down: f64,
    },
    /// thresholds for step n at index n − 1
    PerStep {
        up: Vec<f64>,
        up_down: Vec<f64>,
    },
}

impl StepProgram {
    #[inline]
    fn thresholds(&self, n: u64) -> (f64, f64) {
        match self {
            StepProgram::Fixed { up, up_down } => (*up, *up_down),
            StepProgram::PerStep { up, up_down } => {
                let i = (n - 1) as usize;
                (up[i], up_down[i])
            }
        }
    }
}

fn build_program(mode: &WalkMode, steps: u64) -> Result<StepProgram> {
    match mode {
        WalkMode::Asymptotic => {
            let (up, up_down) = asymptotic_step_dist().thresholds();
            Ok(StepProgram::Fixed { up, up_down })
        }
        WalkMode::EmpiricalFixed(table) => {
            let (up, up_down) = empirical_step_dist(table, steps)?.thresholds();
            Ok(StepProgram::Fixed { up, up_down })
        }
        WalkMode::Empirical(table) => {
            if steps > table.limit() {
                return Err(Error::IndexOutOfRange {
                    index: steps,
                    limit: table.limit(),
                });
            }
            let mut up = Vec::with_capacity(steps as usize);
            let mut up_down = Vec::with_capacity(steps as usize);
            let mut c1 = 0u64;
            let mut c2 = 0u64;
            for n in 1..=steps {
                match table.value(n) {
                    1 => c1 += 1,
                    -1 => c2 += 1,
                    _ => {}
                }
                up.push(c1 as f64 / n as f64);
                up_down.push((c1 + c2) as f64 / n as f64);
            }
            Ok(StepProgram::PerStep { up, up_down })
        }
    }
}

/// One realization S_0 = 0, S_1, …, S_N of the walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkPath {
    pub seed: u64,
    /// values[n] = S_n; length steps + 1.
    pub values: Vec<i64>,
}

impl WalkPath {
    pub fn steps(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn terminal(&self) -> i64 {
        *self.values.last().unwrap()
    }
}

/// Simulate one path of `steps` steps, fully determined by (steps, mode, seed).
pub fn simulate_path(steps: u64, mode: &WalkMode, seed: u64) -> Result<WalkPath> {
    if steps == 0 {
        return Err(Error::Domain("walk needs at least one step".into()));
    }
    let program = build_program(mode, steps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(steps as usize + 1);
    values.push(0i64);
    let mut s = 0i64;
    for n in 1..=steps {
        let (up, up_down) = program.thresholds(n);
        s += sample_step(uniform_unit(&mut rng), up, up_down);
        values.push(s);
    }
    Ok(WalkPath { seed, values })
}

/// Everything a Monte Carlo run depends on.
#[derive(Debug, Clone)]
pub struct WalkParams<'a> {
    pub steps: u64,
    pub replicates: u64,
    pub mode: WalkMode<'a>,
    pub master_seed: u64,
    /// Indices at which S_n is snapshot across replicates; sorted ascending.
    pub checkpoints: Vec<u64>,
    /// First index entering the per-replicate LIL statistic; must be ≥ 16.
    /// Replicates shorter than this record no LIL statistic.
    pub lil_n0: u64,
    /// Refuse runs with steps × replicates beyond this.
    pub step_budget: u128,
}

impl<'a> WalkParams<'a> {
    pub fn new(steps: u64, replicates: u64, mode: WalkMode<'a>, master_seed: u64) -> Self {
        WalkParams {
            steps,
            replicates,
            mode,
            master_seed,
            checkpoints: Vec::new(),
            lil_n0: DEFAULT_LIL_N0,
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }
}

/// A seeded collection of walk replicates: terminal values, iterated-logarithm
/// statistics, and checkpoint snapshots.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    pub steps: u64,
    pub master_seed: u64,
    pub mode_label: &'static str,
    pub lil_n0: u64,
    /// S_N per replicate, in replicate order.
    pub terminal: Vec<i64>,
    /// LIL statistic per replicate; None when steps < lil_n0.
    pub lil_stats: Option<Vec<f64>>,
    /// Snapshot indices, ascending.
    pub checkpoints: Vec<u64>,
    /// snapshots[c][r] = S at checkpoints[c] in replicate r.
    pub snapshots: Vec<Vec<i64>>,
}

impl Ensemble {
    pub fn replicates(&self) -> u64 {
        self.terminal.len() as u64
    }

    /// Snapshot row for a checkpoint, if the ensemble recorded it.
    pub fn snapshot_at(&self, n: u64) -> Option<&[i64]> {
        let idx = self.checkpoints.iter().position(|&c| c == n)?;
        Some(&self.snapshots[idx])
    }
}

struct ReplicateOut {
    terminal: i64,
    lil_max: Option<f64>,
    snaps: Vec<i64>,
}

fn run_replicate(
    steps: u64,
    program: &StepProgram,
    seed: u64,
    checkpoints: &[u64],
    lil_n0: u64,
    lil_denoms: &[f64],
) -> ReplicateOut {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = 0i64;
    let mut snaps = Vec::with_capacity(checkpoints.len());
    let mut next_cp = 0usize;
    let mut lil_max: Option<f64> = if lil_n0 <= steps { Some(0.0) } else { None };
    for n in 1..=steps {
        let (up, up_down) = program.thresholds(n);
        s += sample_step(uniform_unit(&mut rng), up, up_down);
        if next_cp < checkpoints.len() && checkpoints[next_cp] == n {
            snaps.push(s);
            next_cp += 1;
        }
        if n >= lil_n0 {
            let v = s.unsigned_abs() as f64 / lil_denoms[(n - lil_n0) as usize];
            let m = lil_max.as_mut().unwrap();
            if v > *m {
                *m = v;
            }
        }
    }
    ReplicateOut {
        terminal: s,
        lil_max,
        snaps,
    }
}

/// Run a seeded ensemble of independent replicates.
///
/// Replicate r draws from ChaCha8 seeded with `replicate_seed(master_seed, r)`
/// and replicates are collected in index order, so results are bit-identical
/// regardless of how many rayon workers participate.
pub fn monte_carlo(params: &WalkParams) -> Result<Ensemble> {
    let WalkParams {
        steps,
        replicates,
        ref mode,
        master_seed,
        ref checkpoints,
        lil_n0,
        step_budget,
    } = *params;
    if steps == 0 || replicates == 0 {
        return Err(Error::Domain(
            "ensemble needs steps >= 1 and replicates >= 1".into(),
        ));
    }
    let requested = steps as u128 * replicates as u128;
    if requested > step_budget {
        return Err(Error::BudgetExceeded {
            requested,
            budget: step_budget,
        });
    }
    if lil_n0 < 16 {
        return Err(Error::Domain(format!(
            "lil_n0 must be at least 16, got {lil_n0}"
        )));
    }
    let mut sorted_cps = checkpoints.clone();
    sorted_cps.sort_unstable();
    sorted_cps.dedup();
    if let Some(&bad) = sorted_cps.iter().find(|&&c| c == 0 || c > steps) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            limit: steps,
        });
    }

    let program = build_program(mode, steps)?;
    let lil_denoms: Vec<f64> = if lil_n0 <= steps {
        (lil_n0..=steps)
            .map(|n| {
                let n = n as f64;
                (2.0 * (2.0 * SIGN_DENSITY * n) * n.ln().ln()).sqrt()
            })
            .collect()
    } else {
        Vec::new()
    };

    let outs: Vec<ReplicateOut> = (0..replicates)
        .into_par_iter()
        .map(|r| {
            run_replicate(
                steps,
                &program,
                replicate_seed(master_seed, r),
                &sorted_cps,
                lil_n0,
                &lil_denoms,
            )
        })
        .collect();

    let terminal = outs.iter().map(|o| o.terminal).collect();
    let lil_stats = if lil_n0 <= steps {
        Some(outs.iter().map(|o| o.lil_max.unwrap()).collect())
    } else {
        None
    };
    let snapshots = (0..sorted_cps.len())
        .map(|c| outs.iter().map(|o| o.snaps[c]).collect())
        .collect();

    Ok(Ensemble {
        steps,
        master_seed,
        mode_label: mode.label(),
        lil_n0,
        terminal,
        lil_stats,
        checkpoints: sorted_cps,
        snapshots,
    })
}

/// erf by its confluent power series; used below √2·2 where it converges fast.
fn erf_series(x: f64) -> f64 {
    let x2 = 2.0 * x * x;
    let mut term = x;
    let mut sum = x;
    let mut k = 1u32;
    loop {
        term *= x2 / (2 * k + 1) as f64;
        sum += term;
        if term.abs() < sum.abs() * 1e-17 || k > 200 {
            break;
        }
        k += 1;
    }
    2.0 / PI.sqrt() * (-x * x).exp() * sum
}

/// erfc for x ≥ 2 by the Legendre continued fraction
/// erfc(x) = e^{−x²}/√π · 1/(x + (1/2)/(x + (2/2)/(x + (3/2)/(x + …)))),
/// evaluated with the modified Lentz scheme.
fn erfc_continued_fraction(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / x;
    let mut h = d;
    for k in 1..=300 {
        let a = k as f64 / 2.0;
        d = 1.0 / (x + a * d);
        c = x + a / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / PI.sqrt() * h
}

/// Complementary error function, series below 2 and continued fraction above,
/// reflected for negative arguments; accurate to ~1e−15.
fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        2.0 - erfc(-x)
    } else if x < 2.0 {
        1.0 - erf_series(x)
    } else if x > 30.0 {
        0.0
    } else {
        erfc_continued_fraction(x)
    }
}

/// Φ(y), the standard normal CDF, via Φ(y) = erfc(−y/√2)/2.
pub fn standard_normal_cdf(y: f64) -> f64 {
    0.5 * erfc(-y / SQRT_2)
}

/// A Kolmogorov–Smirnov comparison outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct KsResult {
    pub sample_size: usize,
    pub distance: f64,
    /// Which reference CDF the sample was held against.
    pub reference: String,
}

/// Two-sided KS sup-distance of a sample against a reference CDF:
/// max_i of max(i/M − F(x_(i)), F(x_(i)) − (i−1)/M) over the order statistics.
/// The sample need not be pre-sorted; a copy is sorted internally.
pub fn ks_distance<F: Fn(f64) -> f64>(sample: &[f64], cdf: F, reference: &str) -> Result<KsResult> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    if sample.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("KS sample must be finite".into()));
    }
    let mut xs = sample.to_vec();
    xs.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let m = xs.len() as f64;
    let mut distance: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        let above = (i + 1) as f64 / m - f;
        let below = f - i as f64 / m;
        distance = distance.max(above).max(below);
    }
    Ok(KsResult {
        sample_size: xs.len(),
        distance,
        reference: reference.to_string(),
    })
}

/// KS distance of the standardized terminal values S_N/√(2pN) against Φ.
pub fn clt_check(ens: &Ensemble) -> Result<KsResult> {
    if ens.replicates() < 100 {
        return Err(Error::Domain(format!(
            "clt_check needs at least 100 replicates, got {}",
            ens.replicates()
        )));
    }
    let sd = (2.0 * SIGN_DENSITY * ens.steps as f64).sqrt();
    let standardized: Vec<f64> = ens.terminal.iter().map(|&s| s as f64 / sd).collect();
    ks_distance(&standardized, standard_normal_cdf, "standard-normal")
}

/// max over n ∈ [n0, N] of |S_n| / √(2 · (2p·n) · log log n), the
/// iterated-logarithm statistic with the walk's variance 2pn.
pub fn lil_statistic(path: &WalkPath, n0: u64) -> Result<f64> {
    if n0 < 16 {
        return Err(Error::Domain(format!(
            "lil_statistic needs n0 >= 16, got {n0}"
        )));
    }
    let steps = path.steps();
    if n0 > steps {
        return Err(Error::IndexOutOfRange {
            index: n0,
            limit: steps,
        });
    }
    let mut max = 0.0f64;
    for n in n0..=steps {
        let nf = n as f64;
        let denom = (2.0 * (2.0 * SIGN_DENSITY * nf) * nf.ln().ln()).sqrt();
        let v = path.values[n as usize].unsigned_abs() as f64 / denom;
        if v > max {
            max = v;
        }
    }
    Ok(max)
}

/// One row of the per-replicate CSV.
#[derive(Debug, Clone)]
pub struct ReplicateRow {
    pub replicate: u64,
    pub terminal: i64,
    pub standardized: f64,
    pub lil_stat: Option<f64>,
}

/// Per-replicate terminal values, standardized by √(2pN), with LIL statistics.
pub fn build_replicate_rows(ens: &Ensemble) -> Vec<ReplicateRow> {
    let sd = (2.0 * SIGN_DENSITY * ens.steps as f64).sqrt();
    ens.terminal
        .iter()
        .enumerate()
        .map(|(r, &terminal)| ReplicateRow {
            replicate: r as u64,
            terminal,
            standardized: terminal as f64 / sd,
            lil_stat: ens.lil_stats.as_ref().map(|v| v[r]),
        })
        .collect()
}

/// Emit the per-replicate CSV: replicate, S_N, standardized, lil_stat (empty
/// when the run recorded none).
pub fn write_replicates_csv<W: Write>(w: &mut W, rows: &[ReplicateRow]) -> Result<()> {
    writeln!(w, "replicate,s_n,standardized,lil_stat")?;
    for row in rows {
        let lil = row.lil_stat.map(sig12).unwrap_or_default();
        writeln!(
            w,
            "{},{},{},{}",
            row.replicate,
            row.terminal,
            sig12(row.standardized),
            lil
        )?;
    }
    Ok(())
}

/// One row of the per-checkpoint CSV.
#[derive(Debug, Clone)]
pub struct CheckpointRow {
    pub n: u64,
    pub mean: f64,
    /// Sample variance of S_n across replicates (M − 1 divisor; 0 when M = 1).
    pub variance: f64,
    /// KS distance of S_n/√(2pn) against Φ.
    pub ks_distance: f64,
}

/// Mean, variance, and normal-CDF KS distance of S_n across replicates, per
/// recorded checkpoint.
pub fn build_checkpoint_rows(ens: &Ensemble) -> Result<Vec<CheckpointRow>> {
    let m = ens.replicates() as f64;
    ens.checkpoints
        .iter()
        .zip(&ens.snapshots)
        .map(|(&n, snap)| {
            let mean = snap.iter().map(|&s| s as f64).sum::<f64>() / m;
            let variance = if snap.len() > 1 {
                snap.iter().map(|&s| (s as f64 - mean).powi(2)).sum::<f64>() / (m - 1.0)
            } else {
                0.0
            };
            let sd = (2.0 * SIGN_DENSITY * n as f64).sqrt();
            let standardized: Vec<f64> = snap.iter().map(|&s| s as f64 / sd).collect();
            let ks = ks_distance(&standardized, standard_normal_cdf, "standard-normal")?;
            Ok(CheckpointRow {
                n,
                mean,
                variance,
                ks_distance: ks.distance,
            })
        })
        .collect()
}

/// Emit the per-checkpoint CSV.
pub fn write_checkpoints_csv<W: Write>(w: &mut W, rows: &[CheckpointRow]) -> Result<()> {
    writeln!(w, "checkpoint_n,mean,variance,ks_distance")?;
    for row in rows {
        writeln!(
            w,
            "{},{},{},{}",
            row.n,
            sig12(row.mean),
            sig12(row.variance),
            sig12(row.ks_distance)
        )?;
    }
    Ok(())
}
