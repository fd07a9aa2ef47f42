//! Exact smooth-number statistics: Psi(x,y), the shifted-prime count Pi(x,y)
//! and the iterated-totient variant Phi_k(x,y), plus the Dickman rho function
//! and the asymptotic main terms rho_k.
//!
//! Smoothness is inclusive: "free of prime factors exceeding y" means every
//! prime factor satisfies p <= y. n = 1 is y-smooth for every y, and p = 2
//! always counts for Pi since p - 1 = 1.

use std::sync::OnceLock;

use serde::Serialize;

use crate::arith::FactorSieve;
use crate::error::{Error, Result};
use crate::parallel::{chunk_map, count_scan};
use crate::ser;

/// Both sides of the smooth-shifted-prime comparison at one (x, y).
#[derive(Debug, Clone, Serialize)]
pub struct SmoothCounts {
    #[serde(with = "ser::real")]
    pub x: f64,
    #[serde(with = "ser::real")]
    pub y: f64,
    #[serde(with = "ser::count")]
    pub psi: u64,
    #[serde(with = "ser::count")]
    pub pi_smooth: u64,
    #[serde(with = "ser::count")]
    pub pi_x: u64,
    #[serde(with = "ser::real")]
    pub lhs: f64,
    #[serde(with = "ser::real_opt")]
    pub rhs: Option<f64>,
    #[serde(with = "ser::real_opt")]
    pub ratio: Option<f64>,
}

fn check_range(sieve: &FactorSieve, what: &str, x: f64) -> Result<u64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("{what}: x must be finite, got {x}")));
    }
    let n_max = x.floor() as u64;
    if n_max > sieve.limit() {
        return Err(Error::OutOfRange {
            what: what.to_string(),
            value: n_max,
            limit: sieve.limit(),
        });
    }
    Ok(n_max)
}

fn is_smooth(sieve: &FactorSieve, mut m: u64, y: f64) -> bool {
    // walk the spf chain; no need for the full factorization
    while m > 1 {
        let p = sieve.spf(m).expect("in range");
        if p as f64 > y {
            return false;
        }
        while m % p == 0 {
            m /= p;
        }
    }
    true
}

/// Psi(x, y): integers n <= x free of prime factors exceeding y.
pub fn psi_count(sieve: &FactorSieve, x: f64, y: f64, workers: usize) -> Result<u64> {
    if !(y >= 1.0) {
        return Err(Error::domain(format!("y must be >= 1, got {y}")));
    }
    let n_max = check_range(sieve, "psi_count", x)?;
    if n_max == 0 {
        return Ok(0);
    }
    count_scan(1, n_max, workers, |n| Ok(is_smooth(sieve, n, y)))
}

/// Pi(x, y): primes p <= x with p - 1 free of prime factors exceeding y.
pub fn pi_smooth_shifted(sieve: &FactorSieve, x: f64, y: f64, workers: usize) -> Result<u64> {
    if !(y >= 1.0) {
        return Err(Error::domain(format!("y must be >= 1, got {y}")));
    }
    check_range(sieve, "pi_smooth_shifted", x)?;
    let primes = sieve.primes_upto(x);
    if primes.is_empty() {
        return Ok(0);
    }
    let partials = chunk_map(0, primes.len() as u64 - 1, workers, |a, b| {
        let mut c = 0u64;
        for &p in &primes[a as usize..=b as usize] {
            if is_smooth(sieve, p as u64 - 1, y) {
                c += 1;
            }
        }
        Ok(c)
    })?;
    Ok(partials.into_iter().sum())
}

/// Phi_k(x, y): m <= x whose k-th totient iterate is y-smooth. k = 0 is Psi.
pub fn phi_smooth_count(
    sieve: &FactorSieve,
    k: u32,
    x: f64,
    y: f64,
    workers: usize,
) -> Result<u64> {
    if !(y >= 1.0) {
        return Err(Error::domain(format!("y must be >= 1, got {y}")));
    }
    let n_max = check_range(sieve, "phi_smooth_count", x)?;
    if n_max == 0 {
        return Ok(0);
    }
    count_scan(1, n_max, workers, |m| {
        let mut v = m;
        for _ in 0..k {
            if v == 1 {
                break; // fixed point
            }
            // phi shrinks, so every iterate stays within the sieve
            v = sieve.factorize(v)?.phi();
        }
        Ok(is_smooth(sieve, v, y))
    })
}

/// Fill a [`SmoothCounts`] comparison at one grid point; requires x >= y.
pub fn hypothesis1_report(
    sieve: &FactorSieve,
    x: f64,
    y: f64,
    workers: usize,
) -> Result<SmoothCounts> {
    if !(x >= y) {
        return Err(Error::domain(format!(
            "hypothesis comparison needs x >= y, got x={x} y={y}"
        )));
    }
    let psi = psi_count(sieve, x, y, workers)?;
    let pi_smooth = pi_smooth_shifted(sieve, x, y, workers)?;
    let pi_x = sieve.prime_count(x)?;
    let lhs = psi as f64 / x;
    let rhs = (pi_x > 0).then(|| pi_smooth as f64 / pi_x as f64);
    let ratio = match rhs {
        Some(r) if pi_smooth > 0 => Some(lhs / r),
        _ => None,
    };
    Ok(SmoothCounts {
        x,
        y,
        psi,
        pi_smooth,
        pi_x,
        lhs,
        rhs,
        ratio,
    })
}

// Dickman rho: rho(u) = 1 on [0,1], u rho'(u) = -rho(u-1) beyond.
//
// Grid stepping cannot hold the invariants here: rho decays like
// exp(-u log u) while the delay equation also carries slowly-decaying
// solutions, so fixed-step truncation noise eventually dominates and the
// computed values go negative near u ~ 10 in f64. Instead rho is propagated
// interval by interval as a power series around each midpoint n + 1/2: the
// delayed term rho(u-1) reuses the previous interval's coefficients verbatim,
// 1/u expands geometrically (ratio <= 1/3), and integration is termwise.
// Truncation error is then negligible; what remains is f64 roundoff seeding
// the slow modes, an absolute floor near 1e-17, nine orders inside the 1e-8
// contract for u <= 20. Values stay positive and strictly decreasing across
// the whole domain, with full relative accuracy for u <~ 13.
const RHO_TERMS: usize = 48;
const RHO_MAX_U: usize = 64;

static RHO_SERIES: OnceLock<Vec<[f64; RHO_TERMS]>> = OnceLock::new();

fn rho_series() -> &'static [[f64; RHO_TERMS]] {
    RHO_SERIES.get_or_init(|| {
        let mut intervals: Vec<[f64; RHO_TERMS]> = Vec::with_capacity(RHO_MAX_U);
        let mut prev = [0.0f64; RHO_TERMS];
        prev[0] = 1.0; // rho = 1 on [0, 1]
        intervals.push(prev);
        for n in 1..RHO_MAX_U {
            let c = n as f64 + 0.5;
            // 1/u around c: sum (-1)^k t^k / c^(k+1)
            let mut inv_u = [0.0f64; RHO_TERMS];
            let mut pw = 1.0 / c;
            for v in inv_u.iter_mut() {
                *v = pw;
                pw *= -1.0 / c;
            }
            // derivative series: -(rho(u-1) * 1/u), Cauchy product
            let b = intervals[n - 1];
            let mut deriv = [0.0f64; RHO_TERMS];
            for (j, d) in deriv.iter_mut().enumerate() {
                let mut s = 0.0;
                for i in 0..=j {
                    s += b[i] * inv_u[j - i];
                }
                *d = -s;
            }
            let mut a = [0.0f64; RHO_TERMS];
            for j in 1..RHO_TERMS {
                a[j] = deriv[j - 1] / j as f64;
            }
            // continuity at the left knot: eval(prev, +1/2) = eval(a, -1/2)
            let left = eval_series(&intervals[n - 1], 0.5);
            a[0] = left - eval_series(&a, -0.5);
            intervals.push(a);
        }
        intervals
    })
}

fn eval_series(coeffs: &[f64; RHO_TERMS], t: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * t + c;
    }
    acc
}

/// Dickman's rho. Exact 1 on [0, 1]; series propagation beyond, absolute
/// accuracy well inside 1e-8 for u <= 20. Returns 0 above u = 64 where the
/// value sits below 1e-100.
pub fn dickman_rho(u: f64) -> Result<f64> {
    if !u.is_finite() || u < 0.0 {
        return Err(Error::domain(format!("rho requires u >= 0, got {u}")));
    }
    if u <= 1.0 {
        return Ok(1.0);
    }
    if u >= RHO_MAX_U as f64 {
        return Ok(0.0);
    }
    let n = u.floor() as usize;
    Ok(eval_series(&rho_series()[n], u - (n as f64 + 0.5)))
}

/// k-fold natural logarithm; errors when any intermediate is not positive,
/// naming the failing depth.
pub fn iterated_log(k: u32, u: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("iterated_log requires k >= 1"));
    }
    let mut v = u;
    for depth in 1..=k {
        if !(v > 0.0) {
            return Err(Error::domain(format!(
                "log_{depth} undefined: argument {v} is not positive (computing log_{k} of {u})"
            )));
        }
        v = v.ln();
    }
    Ok(v)
}

/// Asymptotic main term for rho_k with the o(1) set to 0:
/// rho_0(u) = (e / (u log u))^u, rho_k(u) = (1 / (log_k u log_{k+1} u))^u.
/// A trend gauge only; no numerical tolerance can be attached to it.
pub fn rho_k_asymptotic(k: u32, u: f64) -> Result<f64> {
    if k == 0 {
        if !(u > 0.0) {
            return Err(Error::domain("rho_0 main term requires u > 0"));
        }
        let lu = iterated_log(1, u)?;
        if lu <= 0.0 {
            return Err(Error::domain(format!(
                "log_1({u}) = {lu} <= 0: rho_0 main term undefined"
            )));
        }
        return Ok((std::f64::consts::E / (u * lu)).powf(u));
    }
    let lk = iterated_log(k, u)?;
    if lk <= 0.0 {
        return Err(Error::domain(format!(
            "log_{k}({u}) = {lk} <= 0: rho_{k} main term undefined"
        )));
    }
    let lk1 = iterated_log(k + 1, u)?;
    if lk1 <= 0.0 {
        return Err(Error::domain(format!(
            "log_{}({u}) = {lk1} <= 0: rho_{k} main term undefined",
            k + 1
        )));
    }
    Ok((1.0 / (lk * lk1)).powf(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::trial_factorize;

    fn sieve() -> FactorSieve {
        FactorSieve::build(10_000).unwrap()
    }

    #[test]
    fn psi_examples() {
        let s = sieve();
        assert_eq!(psi_count(&s, 100.0, 5.0, 2).unwrap(), 34);
        assert_eq!(psi_count(&s, 10.0, 1.0, 2).unwrap(), 1);
        for x in [10.0, 100.0, 999.5] {
            assert_eq!(psi_count(&s, x, x, 2).unwrap(), x.floor() as u64);
            assert_eq!(psi_count(&s, x, x + 5.0, 2).unwrap(), x.floor() as u64);
        }
    }

    #[test]
    fn pi_shift_examples() {
        let s = sieve();
        assert_eq!(pi_smooth_shifted(&s, 100.0, 3.0, 2).unwrap(), 10);
        assert_eq!(pi_smooth_shifted(&s, 2.0, 1.0, 2).unwrap(), 1);
        for x in [10.0, 100.0, 999.5] {
            assert_eq!(
                pi_smooth_shifted(&s, x, x, 2).unwrap(),
                s.prime_count(x).unwrap()
            );
        }
    }

    #[test]
    fn phi_smooth_examples() {
        let s = sieve();
        // k = 0 is Psi
        assert_eq!(phi_smooth_count(&s, 0, 100.0, 5.0, 2).unwrap(), 34);
        assert_eq!(phi_smooth_count(&s, 1, 30.0, 3.0, 2).unwrap(), 25);
        // the five failures at x = 30, y = 3
        for m in [11u64, 22, 23, 25, 29] {
            let v = trial_factorize(m).phi();
            assert!(!is_smooth(&s, v, 3.0), "phi({m}) = {v} should be 3-rough");
        }
        for x in [10.0, 100.0, 500.0] {
            assert_eq!(phi_smooth_count(&s, 3, x, x, 2).unwrap(), x.floor() as u64);
        }
    }

    #[test]
    fn hyp1_examples() {
        let s = sieve();
        let r = hypothesis1_report(&s, 100.0, 100.0, 2).unwrap();
        assert_eq!(r.ratio, Some(1.0));
        let r = hypothesis1_report(&s, 100.0, 3.0, 2).unwrap();
        assert_eq!(r.psi, 20);
        assert_eq!((r.lhs, r.rhs), (0.2, Some(0.4)));
        assert_eq!(r.ratio, Some(0.5));
        assert!(hypothesis1_report(&s, 3.0, 100.0, 2).is_err());
    }

    #[test]
    fn hyp1_trend_point_at_1e6() {
        // grid point x = 10^6, y = log^2 x; counts frozen from an independent
        // greatest-prime-factor sieve oracle
        let s = FactorSieve::build(1_000_000).unwrap();
        let y = (1e6f64).ln().powi(2);
        let r = hypothesis1_report(&s, 1e6, y, 4).unwrap();
        assert_eq!(r.psi, 131_397);
        assert_eq!(r.pi_smooth, 16_288);
        assert_eq!(r.pi_x, 78_498);
        let ratio = r.ratio.unwrap();
        assert!((ratio - 0.6332515782170924).abs() < 1e-12, "{ratio}");
    }

    #[test]
    fn hyp1_absent_ratio() {
        let s = sieve();
        // x < 2: no primes at all
        let r = hypothesis1_report(&s, 1.5, 1.0, 1).unwrap();
        assert_eq!(r.pi_x, 0);
        assert_eq!(r.rhs, None);
        assert_eq!(r.ratio, None);
    }

    #[test]
    fn counters_match_naive_brute_force() {
        let s = FactorSieve::build(10_000).unwrap();
        let gpf = |n: u64| trial_factorize(n).largest_prime_factor().unwrap_or(1);
        for y in [1.0, 2.0, 3.5, 7.0, 50.0, 1000.0] {
            for x in [1.0, 10.0, 100.0, 2500.0, 10_000.0] {
                let naive_psi = (1..=x as u64).filter(|&n| gpf(n) as f64 <= y).count() as u64;
                assert_eq!(psi_count(&s, x, y, 3).unwrap(), naive_psi, "psi({x},{y})");
                let naive_pi = (2..=x as u64)
                    .filter(|&p| crate::arith::trial_is_prime(p) && gpf(p - 1) as f64 <= y)
                    .count() as u64;
                assert_eq!(
                    pi_smooth_shifted(&s, x, y, 3).unwrap(),
                    naive_pi,
                    "pi({x},{y})"
                );
                let naive_phik = (1..=x as u64)
                    .filter(|&m| gpf(trial_factorize(m).phi()) as f64 <= y)
                    .count() as u64;
                assert_eq!(
                    phi_smooth_count(&s, 1, x, y, 3).unwrap(),
                    naive_phik,
                    "phi1({x},{y})"
                );
            }
        }
    }

    #[test]
    fn monotone_in_x_and_y() {
        let s = sieve();
        let mut prev = 0;
        for x in [50.0, 100.0, 400.0, 1600.0] {
            let v = psi_count(&s, x, 7.0, 2).unwrap();
            assert!(v >= prev);
            prev = v;
        }
        let mut prev = 0;
        for y in [1.0, 2.0, 5.0, 11.0, 2000.0] {
            let v = pi_smooth_shifted(&s, 2000.0, y, 2).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn rho_anchors() {
        assert_eq!(dickman_rho(0.0).unwrap(), 1.0);
        assert_eq!(dickman_rho(1.0).unwrap(), 1.0);
        assert_eq!(dickman_rho(0.37).unwrap(), 1.0);
        // closed form on [1,2]: rho(2) = 1 - log 2
        let r2 = dickman_rho(2.0).unwrap();
        assert!((r2 - (1.0 - std::f64::consts::LN_2)).abs() < 1e-9, "{r2}");
        // frozen fine-step oracle values
        for (u, expect) in [
            (2.5, 0.1303195618348171),
            (3.0, 0.04860838829310335),
            (4.0, 0.004910925648220687),
            (5.0, 0.0003547247005215202),
        ] {
            let r = dickman_rho(u).unwrap();
            assert!(
                (r - expect).abs() < 1e-8,
                "rho({u}) = {r}, expected {expect}"
            );
        }
        assert!(dickman_rho(-0.1).is_err());
        assert_eq!(dickman_rho(100.0).unwrap(), 0.0);
    }

    #[test]
    fn rho_positive_and_decreasing() {
        let mut prev = dickman_rho(1.0).unwrap();
        let mut u = 1.05;
        while u <= 20.0 {
            let v = dickman_rho(u).unwrap();
            assert!(v > 0.0, "rho({u})");
            assert!(
                v < prev,
                "rho({u}) = {v} not below rho({}) = {prev}",
                u - 0.05
            );
            prev = v;
            u += 0.05;
        }
    }

    #[test]
    fn iterated_log_examples() {
        assert!((iterated_log(1, std::f64::consts::E).unwrap() - 1.0).abs() < 1e-15);
        let ee = std::f64::consts::E.exp();
        assert!((iterated_log(2, ee).unwrap() - 1.0).abs() < 1e-14);
        let v = iterated_log(2, 1e6).unwrap();
        assert!((v - 2.625791914476011).abs() < 1e-12);
        // log log 1 = log 0: undefined at depth 2
        match iterated_log(2, 1.0) {
            Err(Error::Domain(msg)) => assert!(msg.contains("log_2"), "{msg}"),
            other => panic!("expected domain error, got {other:?}"),
        }
        assert!(iterated_log(0, 10.0).is_err());
    }

    #[test]
    fn rho_k_examples() {
        // k = 0, u = e: (e/(e * 1))^e = 1
        let v = rho_k_asymptotic(0, std::f64::consts::E).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        // k = 0, u = 10: direct formula
        let expect = (std::f64::consts::E / (10.0 * 10f64.ln())).powf(10.0);
        assert!((rho_k_asymptotic(0, 10.0).unwrap() - expect).abs() < 1e-15);
        // k = 1 at u = e^e: log u = e, log log u = 1 leaves (1/e)^u
        let ee = std::f64::consts::E.exp();
        let expect = (1.0 / std::f64::consts::E).powf(ee);
        assert!((rho_k_asymptotic(1, ee).unwrap() - expect).abs() < 1e-14);
        // failing depths are named
        match rho_k_asymptotic(1, 2.0) {
            // log log 2 < 0
            Err(Error::Domain(msg)) => assert!(msg.contains("log_2"), "{msg}"),
            other => panic!("expected domain error, got {other:?}"),
        }
        assert!(rho_k_asymptotic(0, 1.0).is_err());
    }
}
