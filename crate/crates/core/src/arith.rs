//! Segmented sieves for μ(i), ω(i), and the Mertens prefix sums, plus the
//! trial-division oracle the tests compare against and an on-disk cache for
//! sieved Möbius tables.

use crate::error::{Error, Result};
use rayon::prelude::*;
use std::fs;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

/// Default ceiling for sieve limits. One signed byte per integer puts the
/// Möbius table at this limit around 100 MB; raise it through [`SieveConfig`]
/// only with the memory to back it.
pub const DEFAULT_MAX_LIMIT: u64 = 100_000_000;

/// Default entries per independently sieved segment.
pub const DEFAULT_SEGMENT_LEN: usize = 1 << 20;

/// First bytes of a Möbius cache file.
pub const CACHE_MAGIC: [u8; 4] = *b"MOBI";

/// Cache format version this build reads and writes.
pub const CACHE_VERSION: u8 = 1;

/// Knobs for the segmented sieves.
#[derive(Debug, Clone)]
pub struct SieveConfig {
    /// Largest accepted limit; requests above it are rejected.
    pub max_limit: u64,
    /// Entries per independently processed segment.
    pub segment_len: usize,
    /// Sieve segments on the rayon pool. The assembled table is identical
    /// either way; this only affects wall-clock time.
    pub parallel: bool,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            max_limit: DEFAULT_MAX_LIMIT,
            segment_len: DEFAULT_SEGMENT_LEN,
            parallel: true,
        }
    }
}

/// μ(i) for 1 ≤ i ≤ limit, one signed byte per value.
///
/// values[i] is 0 exactly when some prime square divides i; otherwise +1 for an
/// even number of distinct prime factors and −1 for an odd number, so
/// values[1] = +1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusTable {
    limit: u64,
    /// Index 0 is an unused padding slot holding 0.
    values: Vec<i8>,
}

/// Prefix sums M(n) = Σ_{i≤n} μ(i) for 0 ≤ n ≤ limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MertensSeries {
    limit: u64,
    /// prefix[0] = 0, prefix[n] = prefix[n−1] + μ(n).
    prefix: Vec<i64>,
}

/// ω(i) — the number of distinct prime divisors — for 1 ≤ i ≤ limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaTable {
    limit: u64,
    /// Index 0 is an unused padding slot holding 0. ω fits a byte for any
    /// limit a u64 can express.
    counts: Vec<u8>,
}

/// Number of squarefree integers in [1, n].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquarefreeCount {
    pub n: u64,
    pub q: u64,
}

fn validate_limit(limit: u64, max: u64) -> Result<()> {
    if limit == 0 || limit > max {
        return Err(Error::LimitOutOfRange { limit, max });
    }
    Ok(())
}

/// Odd-indexed bool sieve for the base primes up to `bound`.
fn base_primes(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let bound = bound as usize;
    let mut composite = vec![false; bound + 1];
    let mut primes = Vec::new();
    for p in 2..=bound {
        if composite[p] {
            continue;
        }
        primes.push(p as u64);
        let mut m = p * p;
        while m <= bound {
            composite[m] = true;
            m += p;
        }
    }
    primes
}

/// Sieve μ over the window [lo, lo + out.len()).
///
/// Each base prime flips the sign of its multiples and divides it out of a
/// residual copy of the value; multiples of p² are zeroed. A residual > 1 after
/// all base primes is a single prime above √limit and flips the sign once more
/// (flipping a zeroed entry keeps it zero).
fn mobius_segment(primes: &[u64], lo: u64, out: &mut [i8]) {
    let hi = lo + out.len() as u64;
    out.fill(1);
    let mut rem: Vec<u64> = (lo..hi).collect();
    for &p in primes {
        let mut m = lo.div_ceil(p) * p;
        while m < hi {
            let idx = (m - lo) as usize;
            out[idx] = -out[idx];
            rem[idx] /= p;
            m += p;
        }
        let p2 = p * p;
        let mut m = lo.div_ceil(p2) * p2;
        while m < hi {
            out[(m - lo) as usize] = 0;
            m += p2;
        }
    }
    for (v, &r) in out.iter_mut().zip(&rem) {
        if r > 1 {
            *v = -*v;
        }
    }
}

/// Sieve ω over the window [lo, lo + out.len()).
fn omega_segment(primes: &[u64], lo: u64, out: &mut [u8]) {
    let hi = lo + out.len() as u64;
    out.fill(0);
    let mut rem: Vec<u64> = (lo..hi).collect();
    for &p in primes {
        let mut m = lo.div_ceil(p) * p;
        while m < hi {
            let idx = (m - lo) as usize;
            out[idx] += 1;
            let r = &mut rem[idx];
            while r.is_multiple_of(p) {
                *r /= p;
            }
            m += p;
        }
    }
    for (v, &r) in out.iter_mut().zip(&rem) {
        if r > 1 {
            *v += 1;
        }
    }
}

fn run_segments<T, F>(body: &mut [T], segment_len: usize, parallel: bool, per_segment: F)
where
    T: Send,
    F: Fn(u64, &mut [T]) + Sync,
{
    if parallel {
        body.par_chunks_mut(segment_len)
            .enumerate()
            .for_each(|(k, chunk)| per_segment(1 + (k * segment_len) as u64, chunk));
    } else {
        for (k, chunk) in body.chunks_mut(segment_len).enumerate() {
            per_segment(1 + (k * segment_len) as u64, chunk);
        }
    }
}

/// Sieve μ(i) for 1 ≤ i ≤ limit with the default configuration.
pub fn sieve_mobius(limit: u64) -> Result<MobiusTable> {
    sieve_mobius_with(limit, &SieveConfig::default())
}

/// Sieve μ(i) for 1 ≤ i ≤ limit.
///
/// Deterministic: the assembled table is byte-identical no matter how segments
/// are scheduled, because every segment writes a disjoint window of the output
/// from the same base-prime list.
pub fn sieve_mobius_with(limit: u64, cfg: &SieveConfig) -> Result<MobiusTable> {
    validate_limit(limit, cfg.max_limit)?;
    let primes = base_primes(limit.isqrt());
    let mut values = vec![0i8; limit as usize + 1];
    run_segments(
        &mut values[1..],
        cfg.segment_len.max(1),
        cfg.parallel,
        |lo, chunk| mobius_segment(&primes, lo, chunk),
    );
    Ok(MobiusTable { limit, values })
}

/// Sieve ω(i) for 1 ≤ i ≤ limit with the default configuration.
pub fn sieve_omega(limit: u64) -> Result<OmegaTable> {
    sieve_omega_with(limit, &SieveConfig::default())
}

/// Sieve ω(i) for 1 ≤ i ≤ limit.
pub fn sieve_omega_with(limit: u64, cfg: &SieveConfig) -> Result<OmegaTable> {
    validate_limit(limit, cfg.max_limit)?;
    let primes = base_primes(limit.isqrt());
    let mut counts = vec![0u8; limit as usize + 1];
    run_segments(
        &mut counts[1..],
        cfg.segment_len.max(1),
        cfg.parallel,
        |lo, chunk| omega_segment(&primes, lo, chunk),
    );
    Ok(OmegaTable { limit, counts })
}

/// μ(n) by full trial division, independent of any sieve. Test oracle; O(√n).
pub fn mobius_oracle(n: u64) -> i8 {
    assert!(n >= 1, "mobius_oracle argument must be positive");
    let mut n = n;
    let mut sign = 1i8;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Accumulate the Mertens prefix sums of a Möbius table.
pub fn mertens_series(table: &MobiusTable) -> MertensSeries {
    let mut prefix = Vec::with_capacity(table.values.len());
    prefix.push(0i64);
    let mut acc = 0i64;
    for &v in &table.values[1..] {
        acc += i64::from(v);
        prefix.push(acc);
    }
    MertensSeries {
        limit: table.limit,
        prefix,
    }
}

/// Count the squarefree integers in [1, n], i.e. those with μ ≠ 0.
pub fn squarefree_count(table: &MobiusTable, n: u64) -> Result<SquarefreeCount> {
    if n == 0 || n > table.limit {
        return Err(Error::IndexOutOfRange {
            index: n,
            limit: table.limit,
        });
    }
    let q = table.values[1..=n as usize]
        .iter()
        .filter(|&&v| v != 0)
        .count() as u64;
    Ok(SquarefreeCount { n, q })
}

impl MobiusTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// μ(i). Panics if i is 0 or beyond the table limit.
    pub fn value(&self, i: u64) -> i8 {
        assert!(
            i >= 1 && i <= self.limit,
            "index {i} out of range for table limit {}",
            self.limit
        );
        self.values[i as usize]
    }

    /// All values with the unused index-0 slot; values()[i] = μ(i) for i ≥ 1.
    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// Serialize as: magic "MOBI", version byte, limit as 8 little-endian
    /// bytes, then limit signed bytes μ(1)..μ(limit).
    pub fn write_cache<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(&CACHE_MAGIC)?;
        w.write_all(&[CACHE_VERSION])?;
        w.write_all(&self.limit.to_le_bytes())?;
        for chunk in self.values[1..].chunks(1 << 20) {
            let bytes: Vec<u8> = chunk.iter().map(|&v| v as u8).collect();
            w.write_all(&bytes)?;
        }
        Ok(())
    }

    /// Deserialize a [`MobiusTable::write_cache`] stream, validating magic,
    /// version, limit range, payload length, and that every value is in
    /// {−1, 0, +1}.
    pub fn read_cache<R: Read>(r: &mut R, max_limit: u64) -> Result<MobiusTable> {
        let mut header = [0u8; 13];
        r.read_exact(&mut header)
            .map_err(|_| Error::CacheFormat("truncated header".into()))?;
        if header[..4] != CACHE_MAGIC {
            return Err(Error::CacheFormat("bad magic".into()));
        }
        if header[4] != CACHE_VERSION {
            return Err(Error::CacheFormat(format!(
                "unsupported version {} (expected {CACHE_VERSION})",
                header[4]
            )));
        }
        let limit = u64::from_le_bytes(header[5..13].try_into().unwrap());
        if limit == 0 || limit > max_limit {
            return Err(Error::CacheFormat(format!(
                "cached limit {limit} outside supported range 1..={max_limit}"
            )));
        }
        let mut values = vec![0i8; limit as usize + 1];
        {
            let mut body = vec![0u8; limit as usize];
            r.read_exact(&mut body)
                .map_err(|_| Error::CacheFormat("truncated payload".into()))?;
            for (dst, &b) in values[1..].iter_mut().zip(&body) {
                let v = b as i8;
                if !(-1..=1).contains(&v) {
                    return Err(Error::CacheFormat(format!("invalid value byte {b:#04x}")));
                }
                *dst = v;
            }
        }
        let mut trailing = [0u8; 1];
        if r.read(&mut trailing)? != 0 {
            return Err(Error::CacheFormat("trailing data after payload".into()));
        }
        Ok(MobiusTable { limit, values })
    }

    /// Write the cache to `path` atomically (temp sibling, then rename).
    pub fn save_cache(&self, path: &Path) -> Result<()> {
        let tmp = sibling_tmp(path)?;
        let result = (|| -> Result<()> {
            let file = fs::File::create(&tmp)?;
            let mut w = BufWriter::new(file);
            self.write_cache(&mut w)?;
            w.flush()?;
            Ok(())
        })();
        match result {
            Ok(()) => {
                fs::rename(&tmp, path)?;
                Ok(())
            }
            Err(e) => {
                let _ = fs::remove_file(&tmp);
                Err(e)
            }
        }
    }

    /// Read a cache written by [`MobiusTable::save_cache`].
    pub fn load_cache(path: &Path, max_limit: u64) -> Result<MobiusTable> {
        let mut r = BufReader::new(fs::File::open(path)?);
        Self::read_cache(&mut r, max_limit)
    }
}

fn sibling_tmp(path: &Path) -> Result<std::path::PathBuf> {
    let name = path
        .file_name()
        .ok_or_else(|| Error::CacheFormat(format!("not a file path: {}", path.display())))?;
    let mut tmp_name = name.to_os_string();
    tmp_name.push(".tmp");
    Ok(path.with_file_name(tmp_name))
}

impl MertensSeries {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// M(n). Accepts n = 0 (empty sum); panics beyond the table limit.
    pub fn value(&self, n: u64) -> i64 {
        assert!(
            n <= self.limit,
            "index {n} out of range for series limit {}",
            self.limit
        );
        self.prefix[n as usize]
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }
}

impl OmegaTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// ω(i). Panics if i is 0 or beyond the table limit.
    pub fn count(&self, i: u64) -> u8 {
        assert!(
            i >= 1 && i <= self.limit,
            "index {i} out of range for table limit {}",
            self.limit
        );
        self.counts[i as usize]
    }

    /// All counts with the unused index-0 slot; counts()[i] = ω(i) for i ≥ 1.
    pub fn counts(&self) -> &[u8] {
        &self.counts
    }
}
