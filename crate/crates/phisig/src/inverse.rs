//! Exact preimage enumeration for phi, sigma, their iterates and arbitrary
//! composition words.
//!
//! Single-step preimages are enumerated by recursive divisor decomposition:
//! a solution m = prod p_i^{e_i} contributes a(p_i^{e_i}) per prime power, so
//! every preimage corresponds to an ordered choice of divisors d | n with
//! d = a(p^e) and strictly increasing primes. The prime ordering makes the
//! enumeration exhaustive and duplicate-free with no a-priori search bound.

use serde::Serialize;

use crate::arith::{trial_factorize, trial_is_prime, ArithWord, FactorSieve, Func};
use crate::error::{Error, Result};

/// Default cap on the size of one preimage level.
pub const DEFAULT_LEVEL_CAP: usize = 1_000_000;

/// The inverse-image tree of a composition word at one target value.
///
/// `levels[j-1]` (j = 1..=k) is the full preimage set of the target under the
/// outermost j symbols of the word, sorted ascending. If `truncated` is set a
/// size cap was hit and the last level stored is incomplete.
#[derive(Debug, Clone, Serialize)]
pub struct PreimageLevels {
    pub target: u64,
    pub word: ArithWord,
    pub levels: Vec<Vec<u64>>,
    pub truncated: bool,
}

impl PreimageLevels {
    /// The deepest (complete or partial) level.
    pub fn deepest(&self) -> &[u64] {
        self.levels.last().map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Preimage enumeration context: an optional sieve for fast factoring and
/// primality plus the per-level size cap.
#[derive(Clone, Copy)]
pub struct PreimageEngine<'a> {
    sieve: Option<&'a FactorSieve>,
    cap: usize,
}

impl Default for PreimageEngine<'_> {
    fn default() -> Self {
        PreimageEngine {
            sieve: None,
            cap: DEFAULT_LEVEL_CAP,
        }
    }
}

impl<'a> PreimageEngine<'a> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Use a sieve for values within its range; larger values fall back to
    /// trial division.
    pub fn with_sieve(sieve: &'a FactorSieve) -> Self {
        PreimageEngine {
            sieve: Some(sieve),
            cap: DEFAULT_LEVEL_CAP,
        }
    }

    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    fn factorize(&self, m: u64) -> Factors {
        match self.sieve {
            Some(s) if m <= s.limit() => {
                Factors(s.factorize(m).expect("in range").factors().to_vec())
            }
            _ => Factors(trial_factorize(m).factors().to_vec()),
        }
    }

    fn is_prime(&self, m: u64) -> bool {
        match self.sieve {
            Some(s) if m <= s.limit() => s.is_prime(m).expect("in range"),
            _ => trial_is_prime(m),
        }
    }

    /// All m with a(m) = n, sorted ascending, complete.
    pub fn preimages(&self, f: Func, n: u64) -> Result<Vec<u64>> {
        if n == 0 {
            return Err(Error::domain("preimage target must be >= 1"));
        }
        let factors = self.factorize(n);
        let mut out = Vec::new();
        match self.solve(f, n, &factors, 1, 1, &mut out) {
            Ok(()) => {}
            Err(Error::Truncated { cap, partial, .. }) => {
                return Err(Error::Truncated {
                    target: n,
                    cap,
                    partial,
                });
            }
            Err(e) => return Err(e),
        }
        out.sort_unstable();
        Ok(out)
    }

    pub fn phi_preimages(&self, n: u64) -> Result<Vec<u64>> {
        self.preimages(Func::Phi, n)
    }

    pub fn sigma_preimages(&self, n: u64) -> Result<Vec<u64>> {
        self.preimages(Func::Sigma, n)
    }

    /// Breadth-first inverse image of a composition word: level j holds the
    /// preimages under the outermost j symbols.
    pub fn iterated(&self, w: &ArithWord, n: u64) -> Result<PreimageLevels> {
        if n == 0 {
            return Err(Error::domain("preimage target must be >= 1"));
        }
        let mut levels: Vec<Vec<u64>> = Vec::with_capacity(w.len());
        let mut truncated = false;
        let mut targets: Vec<u64> = vec![n];
        for &f in w.symbols() {
            let mut level: Vec<u64> = Vec::new();
            'targets: for &t in &targets {
                match self.preimages(f, t) {
                    Ok(pre) => level.extend(pre),
                    Err(Error::Truncated { partial, .. }) => {
                        level.extend(partial);
                        truncated = true;
                    }
                    Err(e) => return Err(e),
                }
                if level.len() > self.cap {
                    level.truncate(self.cap);
                    truncated = true;
                }
                if truncated {
                    break 'targets;
                }
            }
            level.sort_unstable();
            levels.push(level);
            if truncated {
                break;
            }
            targets = levels.last().unwrap().clone();
        }
        Ok(PreimageLevels {
            target: n,
            word: w.clone(),
            levels,
            truncated,
        })
    }

    /// N_w(n): the exact size of the deepest preimage level. A truncated
    /// enumeration is an error, never a number.
    pub fn count(&self, w: &ArithWord, n: u64) -> Result<u64> {
        let tree = self.iterated(w, n)?;
        if tree.truncated {
            return Err(Error::Truncated {
                target: n,
                cap: self.cap,
                partial: tree.levels.last().cloned().unwrap_or_default(),
            });
        }
        Ok(tree.deepest().len() as u64)
    }

    /// Core recursion: extend a partial solution `prefix` (all primes
    /// <= min_prime used up) so that a(remaining part) = n.
    fn solve(
        &self,
        f: Func,
        n: u64,
        n_factors: &Factors,
        min_prime: u64,
        prefix: u64,
        out: &mut Vec<u64>,
    ) -> Result<()> {
        if n == 1 {
            if out.len() >= self.cap {
                out.sort_unstable();
                return Err(Error::Truncated {
                    target: n,
                    cap: self.cap,
                    partial: std::mem::take(out),
                });
            }
            out.push(prefix);
        }
        let mut divisors = n_factors.divisors();
        divisors.sort_unstable_by_key(|d| d.0);
        for (d, d_factors) in divisors {
            for (p, e) in self.prime_power_solutions(f, d, &d_factors) {
                if p <= min_prime {
                    continue;
                }
                let pe = match p.checked_pow(e) {
                    Some(v) => v,
                    None => {
                        return Err(Error::Overflow {
                            op: "preimage prime power",
                            input: p,
                        })
                    }
                };
                let next_prefix = match prefix.checked_mul(pe) {
                    Some(v) => v,
                    None => {
                        return Err(Error::Overflow {
                            op: "preimage product",
                            input: prefix,
                        })
                    }
                };
                let rest = n / d;
                let rest_factors = n_factors.quotient(&d_factors);
                self.solve(f, rest, &rest_factors, p, next_prefix, out)?;
            }
        }
        Ok(())
    }

    /// All prime powers p^e with a(p^e) = d.
    fn prime_power_solutions(&self, f: Func, d: u64, d_factors: &Factors) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        match f {
            Func::Phi => {
                // e = 1: phi(p) = p - 1
                if let Some(d1) = d.checked_add(1) {
                    if self.is_prime(d1) {
                        out.push((d1, 1));
                    }
                }
                // e >= 2: phi(p^e) = p^(e-1)(p-1), so p | d
                for &(p, _) in &d_factors.0 {
                    if d % (p - 1) == 0 {
                        let mut t = d / (p - 1);
                        let mut j = 0u32;
                        while t % p == 0 {
                            t /= p;
                            j += 1;
                        }
                        if t == 1 && j >= 1 {
                            out.push((p, j + 1));
                        }
                    }
                }
            }
            Func::Sigma => {
                // e = 1: sigma(p) = p + 1; smallest case d = 3 (p = 2)
                if d >= 3 && self.is_prime(d - 1) {
                    out.push((d - 1, 1));
                }
                // e >= 2: sigma(p^e) grows like p^e, so p is near d^(1/e);
                // the smallest candidate is sigma(2^e) = 2^(e+1) - 1
                let mut e = 2u32;
                while e <= 63 && ((1u128 << (e + 1)) - 1) <= d as u128 {
                    let guess = (d as f64).powf(1.0 / f64::from(e)) as u64;
                    for p in guess.saturating_sub(2)..=guess + 2 {
                        if p >= 2 && sigma_prime_power(p, e) == Some(d) && self.is_prime(p) {
                            out.push((p, e));
                            break; // sigma(p^e) is strictly increasing in p
                        }
                    }
                    e += 1;
                }
            }
        }
        out
    }
}

/// sigma(p^e) in u128 with early exit; None when it cannot equal a u64 target.
fn sigma_prime_power(p: u64, e: u32) -> Option<u64> {
    let p = p as u128;
    let mut acc: u128 = 1;
    let mut term: u128 = 1;
    for _ in 0..e {
        term = term.checked_mul(p)?;
        acc = acc.checked_add(term)?;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Lightweight factor list used inside the recursion.
#[derive(Clone)]
struct Factors(Vec<(u64, u32)>);

impl Factors {
    /// Every divisor of the represented value together with its own factors.
    fn divisors(&self) -> Vec<(u64, Factors)> {
        let mut out: Vec<(u64, Factors)> = vec![(1, Factors(Vec::new()))];
        for &(p, e) in &self.0 {
            let prior = out.len();
            let mut pe = 1u64;
            for j in 1..=e {
                pe *= p;
                for i in 0..prior {
                    let (d, fs) = &out[i];
                    let mut nf = fs.0.clone();
                    nf.push((p, j));
                    out.push((d * pe, Factors(nf)));
                }
            }
        }
        out
    }

    /// Factors of value / d given d's factors (d must divide the value).
    fn quotient(&self, d: &Factors) -> Factors {
        let mut q = Vec::with_capacity(self.0.len());
        for &(p, e) in &self.0 {
            let de =
                d.0.iter()
                    .find(|&&(dp, _)| dp == p)
                    .map(|&(_, de)| de)
                    .unwrap_or(0);
            if e > de {
                q.push((p, e - de));
            }
        }
        Factors(q)
    }
}

/// All m with phi(m) = n (standalone trial-division path, default cap).
pub fn phi_preimages(n: u64) -> Result<Vec<u64>> {
    PreimageEngine::new().phi_preimages(n)
}

/// All m with sigma(m) = n.
pub fn sigma_preimages(n: u64) -> Result<Vec<u64>> {
    PreimageEngine::new().sigma_preimages(n)
}

/// Inverse-image tree of a word at `n` with an explicit per-level cap.
pub fn iterated_preimages(w: &ArithWord, n: u64, cap: usize) -> Result<PreimageLevels> {
    PreimageEngine::new().cap(cap).iterated(w, n)
}

/// Exact N_w(n).
pub fn count_preimages(w: &ArithWord, n: u64) -> Result<u64> {
    PreimageEngine::new().count(w, n)
}
