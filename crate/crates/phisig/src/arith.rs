//! Exact integer arithmetic: factorizations, the smallest-prime-factor sieve,
//! phi/sigma evaluation and composition words over them.

use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Default memory budget for sieve construction (4 GiB).
pub const DEFAULT_SIEVE_BUDGET_BYTES: u64 = 4 << 30;

const CACHE_MAGIC: &[u8; 4] = b"SPF1";

/// One of the two arithmetic functions the toolkit composes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Func {
    Phi,
    Sigma,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Phi => "phi",
            Func::Sigma => "sigma",
        }
    }

    /// Single-letter word symbol.
    pub fn letter(self) -> char {
        match self {
            Func::Phi => 'p',
            Func::Sigma => 's',
        }
    }

    /// Apply to a factored argument.
    pub fn apply(self, f: &Factorization) -> Result<u64> {
        match self {
            Func::Phi => Ok(f.phi()),
            Func::Sigma => f.sigma(),
        }
    }

    /// Value at a prime: phi(p) = p - 1, sigma(p) = p + 1.
    pub fn at_prime(self, p: u64) -> u64 {
        match self {
            Func::Phi => p - 1,
            Func::Sigma => p + 1,
        }
    }
}

impl FromStr for Func {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi" | "p" => Ok(Func::Phi),
            "sigma" | "s" => Ok(Func::Sigma),
            _ => Err(Error::WordSyntax {
                word: s.to_string(),
                reason: "expected phi|sigma|p|s".into(),
            }),
        }
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A nonempty composition word over {phi, sigma}.
///
/// Index 0 is the outermost function: for `w = [f1, f2, ..., fk]`, applying
/// the word to `m` computes `f1(f2(...fk(m)...))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArithWord(Vec<Func>);

impl ArithWord {
    pub fn new(symbols: Vec<Func>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::domain("composition word must be nonempty (k >= 1)"));
        }
        Ok(ArithWord(symbols))
    }

    pub fn single(f: Func) -> Self {
        ArithWord(vec![f])
    }

    /// The pure iterate phi_k.
    pub fn phi_iterate(k: usize) -> Result<Self> {
        Self::new(vec![Func::Phi; k])
    }

    /// The pure iterate sigma_k.
    pub fn sigma_iterate(k: usize) -> Result<Self> {
        Self::new(vec![Func::Sigma; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty() // never true: construction requires k >= 1
    }

    /// Outermost-first symbol slice.
    pub fn symbols(&self) -> &[Func] {
        &self.0
    }

    pub fn outermost(&self) -> Func {
        self.0[0]
    }

    /// Append an innermost function: the word computing `self(f(m))`.
    pub fn compose_inner(&self, f: Func) -> ArithWord {
        let mut v = self.0.clone();
        v.push(f);
        ArithWord(v)
    }
}

impl FromStr for ArithWord {
    type Err = Error;

    /// Accepts `p`/`s` strings read outermost-first ("ps" = phi∘sigma),
    /// the names `phi`/`sigma`, and the shorthands `phi^k`/`sigma^k`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |reason: &str| Error::WordSyntax {
            word: s.to_string(),
            reason: reason.into(),
        };
        if let Some((name, pow)) = s.split_once('^') {
            let f = Func::from_str(name)?;
            let k: usize = pow
                .parse()
                .map_err(|_| err("exponent must be a positive integer"))?;
            if k == 0 {
                return Err(err("exponent must be >= 1"));
            }
            return ArithWord::new(vec![f; k]);
        }
        match s {
            "phi" => return Ok(ArithWord::single(Func::Phi)),
            "sigma" => return Ok(ArithWord::single(Func::Sigma)),
            _ => {}
        }
        let mut v = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                'p' => v.push(Func::Phi),
                's' => v.push(Func::Sigma),
                _ => return Err(err("expected a string over {p, s}")),
            }
        }
        if v.is_empty() {
            return Err(err("word must be nonempty"));
        }
        ArithWord::new(v)
    }
}

impl fmt::Display for ArithWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for sym in &self.0 {
            write!(f, "{}", sym.letter())?;
        }
        Ok(())
    }
}

impl Serialize for ArithWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Prime factorization of a positive integer: strictly increasing primes,
/// all exponents >= 1, empty exactly for the value 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
    value: u64,
}

impl Factorization {
    /// The empty factorization of 1.
    pub fn one() -> Self {
        Factorization {
            factors: Vec::new(),
            value: 1,
        }
    }

    /// Build from (prime, exponent) pairs. Checks ordering, exponents and the
    /// product; primality of the bases is the caller's responsibility.
    pub fn from_parts(factors: Vec<(u64, u32)>) -> Result<Self> {
        let mut value: u64 = 1;
        let mut last = 1u64;
        for &(p, e) in &factors {
            if p <= last {
                return Err(Error::domain(format!(
                    "primes not strictly increasing at {p}"
                )));
            }
            if e == 0 {
                return Err(Error::domain(format!("zero exponent at prime {p}")));
            }
            last = p;
            let pe = p.checked_pow(e).ok_or(Error::Overflow {
                op: "prime power",
                input: p,
            })?;
            value = value.checked_mul(pe).ok_or(Error::Overflow {
                op: "factorization product",
                input: p,
            })?;
        }
        Ok(Factorization { factors, value })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Euler's totient: prod p^(e-1) (p-1); phi(1) = 1.
    pub fn phi(&self) -> u64 {
        let mut r: u64 = 1;
        for &(p, e) in &self.factors {
            r *= p.pow(e - 1) * (p - 1); // <= value, cannot overflow
        }
        r
    }

    /// Sum of divisors: prod (p^(e+1)-1)/(p-1); sigma(1) = 1.
    /// Exact; errors instead of wrapping when the result leaves u64.
    pub fn sigma(&self) -> Result<u64> {
        let mut r: u128 = 1;
        for &(p, e) in &self.factors {
            let p = p as u128;
            let mut term: u128 = 1;
            let mut acc: u128 = 1;
            for _ in 0..e {
                acc = acc.checked_mul(p).ok_or(Error::Overflow {
                    op: "sigma",
                    input: self.value,
                })?;
                term = term.checked_add(acc).ok_or(Error::Overflow {
                    op: "sigma",
                    input: self.value,
                })?;
            }
            r = r.checked_mul(term).ok_or(Error::Overflow {
                op: "sigma",
                input: self.value,
            })?;
        }
        u64::try_from(r).map_err(|_| Error::Overflow {
            op: "sigma",
            input: self.value,
        })
    }

    /// Number of prime factors with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// Prime factors strictly exceeding `z`, with multiplicity.
    pub fn big_omega_above(&self, z: f64) -> u32 {
        debug_assert!(z >= 1.0);
        self.factors
            .iter()
            .filter(|&&(p, _)| p as f64 > z)
            .map(|&(_, e)| e)
            .sum()
    }

    /// Split into the z-rough and z-smooth parts: `rough * smooth == value`,
    /// rough composed of primes > z, smooth of primes <= z.
    pub fn rough_smooth_split(&self, z: f64) -> (u64, u64) {
        debug_assert!(z >= 1.0);
        let mut rough: u64 = 1;
        let mut smooth: u64 = 1;
        for &(p, e) in &self.factors {
            let pe = p.pow(e);
            if p as f64 > z {
                rough *= pe;
            } else {
                smooth *= pe;
            }
        }
        (rough, smooth)
    }

    /// Largest prime factor, None for 1.
    pub fn largest_prime_factor(&self) -> Option<u64> {
        self.factors.last().map(|&(p, _)| p)
    }
}

/// Factor an isolated integer by trial division (wheel over 2, 3).
/// Intended for one-off values outside any sieve; range scans should go
/// through [`FactorSieve`].
pub fn trial_factorize(mut m: u64) -> Factorization {
    assert!(m >= 1, "trial_factorize requires m >= 1");
    let mut factors = Vec::new();
    for p in [2u64, 3] {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    let mut p = 5u64;
    let mut step = 2u64; // alternates 2, 4: 5, 7, 11, 13, ...
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += step;
        step = 6 - step;
    }
    if m > 1 {
        factors.push((m, 1));
    }
    let value = factors.iter().fold(1u64, |acc, &(p, e)| acc * p.pow(e));
    Factorization { factors, value }
}

/// Primality by trial division; companions [`trial_factorize`].
pub fn trial_is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m % 2 == 0 {
        return m == 2;
    }
    if m % 3 == 0 {
        return m == 3;
    }
    let mut p = 5u64;
    let mut step = 2u64;
    while p * p <= m {
        if m % p == 0 {
            return false;
        }
        p += step;
        step = 6 - step;
    }
    true
}

/// Smallest-prime-factor table up to `limit`, plus the primes it contains.
///
/// The shared engine for every range scan in the crate: factoring any
/// `m <= limit` walks the spf chain in O(Omega(m)) steps. Immutable after
/// construction, safe to share across threads.
#[derive(Debug)]
pub struct FactorSieve {
    limit: u64,
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl FactorSieve {
    /// Build with the default memory budget.
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with_budget(limit, DEFAULT_SIEVE_BUDGET_BYTES)
    }

    /// Build with an explicit memory budget in bytes.
    pub fn build_with_budget(limit: u64, budget_bytes: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::domain("sieve limit must be >= 2"));
        }
        Self::check_budget(limit, budget_bytes)?;
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::with_capacity(Self::prime_count_estimate(limit));
        // Linear sieve: each composite is struck exactly once, by its
        // smallest prime factor.
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let s = spf[i];
            for &p in &primes {
                if p > s {
                    break;
                }
                let ip = i * p as usize;
                if ip > n {
                    break;
                }
                spf[ip] = p;
            }
        }
        Ok(FactorSieve { limit, spf, primes })
    }

    fn check_budget(limit: u64, budget_bytes: u64) -> Result<()> {
        if limit > u32::MAX as u64 {
            return Err(Error::domain(format!(
                "sieve limit {limit} exceeds the 32-bit table format (max {})",
                u32::MAX
            )));
        }
        let required = (limit + 1) * 4 + Self::prime_count_estimate(limit) as u64 * 4;
        if required > budget_bytes {
            return Err(Error::Resource {
                limit,
                required_bytes: required,
                budget_bytes,
            });
        }
        Ok(())
    }

    fn prime_count_estimate(limit: u64) -> usize {
        if limit < 17 {
            return 8;
        }
        let x = limit as f64;
        (1.26 * x / x.ln()) as usize + 8
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Number of primes in the table.
    pub fn n_primes(&self) -> usize {
        self.primes.len()
    }

    fn range_check(&self, what: &str, m: u64) -> Result<()> {
        if m > self.limit {
            Err(Error::OutOfRange {
                what: what.to_string(),
                value: m,
                limit: self.limit,
            })
        } else {
            Ok(())
        }
    }

    /// Smallest prime factor of `m`, 2 <= m <= limit.
    pub fn spf(&self, m: u64) -> Result<u64> {
        self.range_check("spf", m)?;
        if m < 2 {
            return Err(Error::domain("spf is defined for m >= 2"));
        }
        Ok(self.spf[m as usize] as u64)
    }

    /// Full factorization of `m`, 1 <= m <= limit.
    pub fn factorize(&self, m: u64) -> Result<Factorization> {
        self.range_check("factorize", m)?;
        if m == 0 {
            return Err(Error::domain("factorize requires m >= 1"));
        }
        let value = m;
        let mut m = m as usize;
        let mut factors = Vec::new();
        while m > 1 {
            let p = self.spf[m] as usize;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            factors.push((p as u64, e));
        }
        Ok(Factorization { factors, value })
    }

    /// O(1) primality for m <= limit.
    pub fn is_prime(&self, m: u64) -> Result<bool> {
        self.range_check("is_prime", m)?;
        Ok(m >= 2 && self.spf[m as usize] as u64 == m)
    }

    /// #{p prime : p <= x}, for real x <= limit.
    pub fn prime_count(&self, x: f64) -> Result<u64> {
        if x.is_nan() || x > self.limit as f64 {
            return Err(Error::OutOfRange {
                what: "prime_count".to_string(),
                value: x.ceil() as u64,
                limit: self.limit,
            });
        }
        if x < 2.0 {
            return Ok(0);
        }
        let bound = x.floor() as u32;
        Ok(self.primes.partition_point(|&p| p <= bound) as u64)
    }

    /// Ascending primes in the table.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().map(|&p| p as u64)
    }

    /// Slice of primes p <= t.
    pub fn primes_upto(&self, t: f64) -> &[u32] {
        if t < 2.0 {
            return &[];
        }
        let bound = t.min(self.limit as f64).floor() as u32;
        let end = self.primes.partition_point(|&p| p <= bound);
        &self.primes[..end]
    }

    /// Write the cache format: magic "SPF1", limit as u64 LE, then
    /// spf[2..=limit] as u32 LE.
    pub fn write_cache<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&self.limit.to_le_bytes())?;
        let mut buf = Vec::with_capacity(4 << 16);
        for chunk in self.spf[2..].chunks(1 << 16) {
            buf.clear();
            for &v in chunk {
                buf.extend_from_slice(&v.to_le_bytes());
            }
            w.write_all(&buf)?;
        }
        Ok(())
    }

    pub fn write_cache_file(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_cache(&mut w)?;
        w.flush()?;
        Ok(())
    }

    /// Load a cache file, validating magic, limit, exact length and basic
    /// table sanity (each entry divides its index).
    pub fn load_cache_file(path: &Path) -> Result<Self> {
        Self::load_cache_file_with_budget(path, DEFAULT_SIEVE_BUDGET_BYTES)
    }

    pub fn load_cache_file_with_budget(path: &Path, budget_bytes: u64) -> Result<Self> {
        let bad = |reason: &str| Error::CacheFormat {
            path: path.to_path_buf(),
            reason: reason.to_string(),
        };
        let file = File::open(path)?;
        let file_len = file.metadata()?.len();
        let mut r = BufReader::new(file);

        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)
            .map_err(|_| bad("file shorter than header"))?;
        if &magic != CACHE_MAGIC {
            return Err(bad("bad magic bytes"));
        }
        let mut lim = [0u8; 8];
        r.read_exact(&mut lim)
            .map_err(|_| bad("file shorter than header"))?;
        let limit = u64::from_le_bytes(lim);
        if limit < 2 {
            return Err(bad("limit must be >= 2"));
        }
        if limit > u32::MAX as u64 {
            return Err(bad("limit exceeds the 32-bit table format"));
        }
        let expected = 12 + (limit - 1) * 4;
        if file_len < expected {
            return Err(bad("truncated: fewer entries than the stated limit"));
        }
        if file_len > expected {
            return Err(bad("trailing bytes after the stated limit"));
        }
        Self::check_budget(limit, budget_bytes)?;

        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut buf = vec![0u8; 4 << 16];
        let mut idx = 2usize;
        while idx <= n {
            let want = ((n + 1 - idx) * 4).min(buf.len());
            r.read_exact(&mut buf[..want])
                .map_err(|_| bad("truncated table"))?;
            for four in buf[..want].chunks_exact(4) {
                let v = u32::from_le_bytes(four.try_into().unwrap());
                let vu = v as u64;
                if vu < 2 || vu > idx as u64 || idx as u64 % vu != 0 {
                    return Err(bad("table entry does not divide its index"));
                }
                spf[idx] = v;
                idx += 1;
            }
        }
        let primes: Vec<u32> = (2..=n)
            .filter(|&m| spf[m] as usize == m)
            .map(|m| m as u32)
            .collect();
        Ok(FactorSieve { limit, spf, primes })
    }
}

/// Apply a composition word to `m`, innermost symbol first. Every value that
/// gets factored (the input and each intermediate) must stay within the sieve;
/// the final result is only returned, never factored.
pub fn iterate(sieve: &FactorSieve, w: &ArithWord, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::domain("iterate requires m >= 1"));
    }
    let mut v = m;
    for (i, f) in w.symbols().iter().rev().enumerate() {
        if v > sieve.limit() {
            return Err(Error::IterateOutOfRange {
                step: i + 1,
                symbol: f.name(),
                value: v,
                limit: sieve.limit(),
            });
        }
        v = f.apply(&sieve.factorize(v)?)?;
    }
    Ok(v)
}
