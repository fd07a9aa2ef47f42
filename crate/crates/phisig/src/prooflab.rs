//! The growth gauges L(n) and L_{k,beta}(n), explicit lemma bounds with
//! empirical scans, the P/Q/R decomposition of a preimage set, and the
//! headline-ratio scan.

use serde::Serialize;

use crate::arith::{trial_factorize, ArithWord, FactorSieve, Func};
use crate::error::{Error, Result};
use crate::inverse::PreimageEngine;
use crate::parallel::{chunk_map, count_scan};
use crate::ser;

/// Below this, log log log n is not usable: n > e^e ~= 15.15 is required, and
/// the floor is pinned at 16.
pub const L_DOMAIN_FLOOR: f64 = 16.0;

fn l_domain_check(n: f64) -> Result<(f64, f64, f64)> {
    if !(n >= L_DOMAIN_FLOOR) {
        return Err(Error::domain(format!(
            "L-type gauges need n >= {L_DOMAIN_FLOOR} (log log log n), got {n}"
        )));
    }
    let ln = n.ln();
    let lln = ln.ln();
    Ok((ln, lln, lln.ln()))
}

/// L(n) = exp(log n * log log log n / log log n).
pub fn big_l(n: f64) -> Result<f64> {
    let (ln, lln, llln) = l_domain_check(n)?;
    Ok((ln * llln / lln).exp())
}

/// L_{k,beta}(n) = exp(log n * (log log log n)^beta / (log log n)^k).
/// Coincides with L(n) at (k, beta) = (1, 1).
pub fn l_k_beta(n: f64, k: u32, beta: f64) -> Result<f64> {
    let (ln, lln, llln) = l_domain_check(n)?;
    Ok((ln * llln.powf(beta) / lln.powi(k as i32)).exp())
}

/// The search limit x = n log(2n): every preimage of n under a word of fixed
/// length sits below it once n is large.
pub fn search_limit(n: u64) -> f64 {
    let n = n as f64;
    n * (2.0 * n).ln()
}

/// Empirical extrema for the sigma/phi comparison constants, with witnesses:
/// c1_hat = max sigma(n)/(n log log 3n), c2_hat = min phi(n) log log(3n)/n.
#[derive(Debug, Clone, Serialize)]
pub struct Lemma3Scan {
    pub n_min: u64,
    pub n_max: u64,
    #[serde(with = "ser::real")]
    pub c1_hat: f64,
    pub c1_arg: u64,
    #[serde(with = "ser::real")]
    pub c2_hat: f64,
    pub c2_arg: u64,
}

pub fn lemma3_ratios(
    sieve: &FactorSieve,
    n_min: u64,
    n_max: u64,
    workers: usize,
) -> Result<Lemma3Scan> {
    if n_min < 1 || n_min > n_max {
        return Err(Error::domain("need 1 <= n_min <= n_max"));
    }
    if n_max > sieve.limit() {
        return Err(Error::OutOfRange {
            what: "lemma3 scan".to_string(),
            value: n_max,
            limit: sieve.limit(),
        });
    }
    #[derive(Clone, Copy)]
    struct Extrema {
        c1: f64,
        c1_arg: u64,
        c2: f64,
        c2_arg: u64,
    }
    let partials = chunk_map(n_min, n_max, workers, |a, b| {
        let mut e = Extrema {
            c1: f64::NEG_INFINITY,
            c1_arg: 0,
            c2: f64::INFINITY,
            c2_arg: 0,
        };
        for n in a..=b {
            let f = sieve.factorize(n)?;
            let lll = (3.0 * n as f64).ln().ln();
            let r1 = f.sigma()? as f64 / (n as f64 * lll);
            let r2 = f.phi() as f64 * lll / n as f64;
            if r1 > e.c1 {
                e.c1 = r1;
                e.c1_arg = n;
            }
            if r2 < e.c2 {
                e.c2 = r2;
                e.c2_arg = n;
            }
        }
        Ok(e)
    })?;
    // strict comparisons keep the first witness, so the merge is order-stable
    let mut acc = Extrema {
        c1: f64::NEG_INFINITY,
        c1_arg: 0,
        c2: f64::INFINITY,
        c2_arg: 0,
    };
    for e in partials {
        if e.c1 > acc.c1 {
            acc.c1 = e.c1;
            acc.c1_arg = e.c1_arg;
        }
        if e.c2 < acc.c2 {
            acc.c2 = e.c2;
            acc.c2_arg = e.c2_arg;
        }
    }
    Ok(Lemma3Scan {
        n_min,
        n_max,
        c1_hat: acc.c1,
        c1_arg: acc.c1_arg,
        c2_hat: acc.c2,
        c2_arg: acc.c2_arg,
    })
}

/// Exact count of n <= x with d | a(n).
pub fn count_multiples(
    sieve: &FactorSieve,
    f: Func,
    d: u64,
    x: f64,
    workers: usize,
) -> Result<u64> {
    if d == 0 {
        return Err(Error::domain("d must be >= 1"));
    }
    if !x.is_finite() {
        return Err(Error::domain(format!("x must be finite, got {x}")));
    }
    let n_max = x.floor() as u64;
    if n_max > sieve.limit() {
        return Err(Error::OutOfRange {
            what: "count_multiples".to_string(),
            value: n_max,
            limit: sieve.limit(),
        });
    }
    if n_max == 0 {
        return Ok(0);
    }
    count_scan(1, n_max, workers, |n| {
        Ok(f.apply(&sieve.factorize(n)?)? % d == 0)
    })
}

/// The explicit multiple-count bound (x/d)(8 l log^2(ex))^l with l = Omega(d).
/// d = 1 is excluded: l = 0 degenerates the bound to x/d and invites misuse.
pub fn lemma4_bound(d: u64, x: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::domain(
            "lemma4 bound needs d >= 2 (so that Omega(d) >= 1)",
        ));
    }
    if !(x >= 1.0) {
        return Err(Error::domain("lemma4 bound needs x >= 1"));
    }
    let l = trial_factorize(d).big_omega();
    let log_ex = (std::f64::consts::E * x).ln();
    let base = 8.0 * f64::from(l) * log_ex * log_ex;
    Ok(x / d as f64 * base.powi(l as i32))
}

/// Threshold parameters for the preimage-set decomposition.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundParams {
    pub k: u32,
    #[serde(with = "ser::real")]
    pub alpha: f64,
    #[serde(with = "ser::real_opt")]
    pub beta: Option<f64>,
    #[serde(with = "ser::real")]
    pub eta: f64,
}

impl BoundParams {
    pub fn new(k: u32, alpha: f64, eta: f64) -> Result<Self> {
        Self::with_beta(k, alpha, None, eta)
    }

    pub fn with_beta(k: u32, alpha: f64, beta: Option<f64>, eta: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("k must be >= 1"));
        }
        if !(alpha < k as f64) {
            return Err(Error::domain(format!(
                "alpha must satisfy alpha < k, got alpha={alpha} k={k}"
            )));
        }
        if let Some(b) = beta {
            if !(alpha < b + 1.0 && b + 1.0 < k as f64) {
                return Err(Error::domain(format!(
                    "need alpha < beta+1 < k, got alpha={alpha} beta={b} k={k}"
                )));
            }
        }
        if !(eta > 0.0 && eta < 1.0) {
            return Err(Error::domain(format!("eta must lie in (0,1), got {eta}")));
        }
        Ok(BoundParams {
            k,
            alpha,
            beta,
            eta,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PartTotals {
    #[serde(with = "ser::count")]
    pub p: u64,
    #[serde(with = "ser::count")]
    pub q: u64,
    #[serde(with = "ser::count")]
    pub r: u64,
}

/// The preimage set S of an inner word at n, split into P (many large prime
/// factors), Q (many prime factors in total) and R (the rest), with the
/// per-part inverse-image totals under one more application of `func`.
#[derive(Debug, Clone, Serialize)]
pub struct PartitionReport {
    pub n: u64,
    pub k: u32,
    pub func: Func,
    pub inner_word: ArithWord,
    #[serde(with = "ser::real")]
    pub x: f64,
    #[serde(with = "ser::real")]
    pub z: f64,
    #[serde(with = "ser::real")]
    pub threshold_p: f64,
    #[serde(with = "ser::real")]
    pub threshold_q: f64,
    pub s: Vec<u64>,
    pub p: Vec<u64>,
    pub q: Vec<u64>,
    pub r: Vec<u64>,
    pub preimage_totals: PartTotals,
    pub params: BoundParams,
}

/// Decompose S = inner_word^{-1}(n). Membership uses >= on both thresholds:
/// P requires Omega_{>z}(l) >= log L_{k+1,alpha}(x), Q requires
/// Omega(l) >= log x / (log log x)^(k + 1/2), R takes strict failures of both.
/// S is recomputed from scratch so the report certifies itself.
pub fn partition_pqr(
    sieve: &FactorSieve,
    func: Func,
    inner_word: &ArithWord,
    n: u64,
    params: &BoundParams,
    cap: usize,
) -> Result<PartitionReport> {
    if n < 16 {
        return Err(Error::domain(format!("partition needs n >= 16, got {n}")));
    }
    let k = inner_word.len() as u32;
    if params.k != k {
        return Err(Error::domain(format!(
            "params.k = {} does not match inner word length {k}",
            params.k
        )));
    }
    let x = search_limit(n);
    let lx = x.ln();
    let llx = lx.ln();
    let lllx = llx.ln();
    let z = llx.sqrt().exp();
    let threshold_p = lx * lllx.powf(params.alpha) / llx.powi(k as i32 + 1);
    let threshold_q = lx / llx.powf(k as f64 + 0.5);

    let engine = PreimageEngine::with_sieve(sieve).cap(cap);
    let tree = engine.iterated(inner_word, n)?;
    if tree.truncated {
        return Err(Error::Truncated {
            target: n,
            cap,
            partial: tree.deepest().to_vec(),
        });
    }
    let s: Vec<u64> = tree.deepest().to_vec();

    let mut p = Vec::new();
    let mut q = Vec::new();
    let mut r = Vec::new();
    for &l in &s {
        let f = if l <= sieve.limit() {
            sieve.factorize(l)?
        } else {
            trial_factorize(l)
        };
        if f64::from(f.big_omega_above(z)) >= threshold_p {
            p.push(l);
        } else if f64::from(f.big_omega()) >= threshold_q {
            q.push(l);
        } else {
            r.push(l);
        }
    }

    let part_total = |part: &[u64]| -> Result<u64> {
        let mut total = 0u64;
        for &l in part {
            total += engine.preimages(func, l)?.len() as u64;
        }
        Ok(total)
    };
    let preimage_totals = PartTotals {
        p: part_total(&p)?,
        q: part_total(&q)?,
        r: part_total(&r)?,
    };

    Ok(PartitionReport {
        n,
        k,
        func,
        inner_word: inner_word.clone(),
        x,
        z,
        threshold_p,
        threshold_q,
        s,
        p,
        q,
        r,
        preimage_totals,
        params: *params,
    })
}

/// One row of the headline-ratio scan: ratio = N * L_{k,beta+1}(n) / n.
#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Row {
    pub n: u64,
    #[serde(with = "ser::count")]
    pub count: u64,
    #[serde(with = "ser::real")]
    pub ratio: f64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Scan {
    pub word: ArithWord,
    #[serde(with = "ser::real")]
    pub beta: f64,
    pub n_min: u64,
    pub n_max: u64,
    pub rows: Vec<Theorem1Row>,
    #[serde(with = "ser::real")]
    pub max_ratio: f64,
    pub argmax: u64,
}

/// Scan n in [n_min, n_max], computing the exact preimage count of the word
/// and the gauge ratio. Truncated enumerations become per-row error markers
/// rather than aborting the scan.
pub fn theorem1_scan(
    sieve: &FactorSieve,
    w: &ArithWord,
    beta: f64,
    n_min: u64,
    n_max: u64,
    cap: usize,
    workers: usize,
) -> Result<Theorem1Scan> {
    if n_min < 16 || n_min > n_max {
        return Err(Error::domain(
            "need 16 <= n_min <= n_max (L-gauge domain floor)",
        ));
    }
    let k = w.len() as u32;
    let engine = PreimageEngine::with_sieve(sieve).cap(cap);
    let chunks = chunk_map(n_min, n_max, workers, |a, b| {
        let mut rows = Vec::with_capacity((b - a + 1) as usize);
        for n in a..=b {
            match engine.count(w, n) {
                Ok(count) => {
                    let ratio = count as f64 * l_k_beta(n as f64, k, beta + 1.0)? / n as f64;
                    rows.push(Theorem1Row {
                        n,
                        count,
                        ratio,
                        error: None,
                    });
                }
                Err(e @ Error::Truncated { .. }) => {
                    rows.push(Theorem1Row {
                        n,
                        count: 0,
                        ratio: f64::NAN,
                        error: Some(e.to_string()),
                    });
                }
                Err(e) => return Err(e),
            }
        }
        Ok(rows)
    })?;
    let rows: Vec<Theorem1Row> = chunks.into_iter().flatten().collect();
    let mut max_ratio = f64::NEG_INFINITY;
    let mut argmax = n_min;
    for row in &rows {
        if row.error.is_none() && row.ratio > max_ratio {
            max_ratio = row.ratio;
            argmax = row.n;
        }
    }
    Ok(Theorem1Scan {
        word: w.clone(),
        beta,
        n_min,
        n_max,
        rows,
        max_ratio,
        argmax,
    })
}
