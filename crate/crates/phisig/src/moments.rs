//! Moment-generating-function sums over ranges, with the matching analytic
//! upper-bound exponents and their explicit Rankin parameters.
//!
//! The analytic side reports proof-shape exponents: the O-constant is taken as
//! 1 and the value is a trend gauge, never asserted as a true upper bound.

use serde::Serialize;

use crate::arith::{FactorSieve, Factorization, Func};
use crate::error::{Error, Result};
use crate::parallel::{sum_scan, CompensatedSum};
use crate::ser;

/// sup B: B must stay below the cube root of 2.
pub const B_SUP: f64 = 1.2599210498948732;

/// Parameters for the large-prime-factor moment: z and A are derived from x
/// unless explicitly overridden (which marks the report non-paper-parameterized).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MomentParamsA {
    #[serde(with = "ser::real")]
    pub x: f64,
    #[serde(with = "ser::real")]
    pub eta: f64,
    #[serde(with = "ser::real")]
    pub z: f64,
    #[serde(rename = "a", with = "ser::real")]
    pub big_a: f64,
    pub paper_parameterized: bool,
}

impl MomentParamsA {
    /// Paper parameterization: z = exp((log log x)^(1/2)), A = (log log x)^(1-eta).
    pub fn new(x: f64, eta: f64) -> Result<Self> {
        if !(x >= 16.0) {
            return Err(Error::domain(format!("x must be >= 16, got {x}")));
        }
        if !(eta > 0.0 && eta < 1.0) {
            return Err(Error::domain(format!("eta must lie in (0,1), got {eta}")));
        }
        let llx = x.ln().ln();
        Ok(MomentParamsA {
            x,
            eta,
            z: llx.sqrt().exp(),
            big_a: llx.powf(1.0 - eta),
            paper_parameterized: true,
        })
    }

    /// Override z and/or A; the resulting report is flagged.
    pub fn with_overrides(x: f64, eta: f64, z: Option<f64>, big_a: Option<f64>) -> Result<Self> {
        let mut p = Self::new(x, eta)?;
        if z.is_none() && big_a.is_none() {
            return Ok(p);
        }
        if let Some(z) = z {
            if !(z >= 1.0) {
                return Err(Error::domain(format!("z must be >= 1, got {z}")));
            }
            p.z = z;
        }
        if let Some(a) = big_a {
            if !(a > 0.0) {
                return Err(Error::domain(format!("A must be > 0, got {a}")));
            }
            p.big_a = a;
        }
        p.paper_parameterized = false;
        Ok(p)
    }

    /// The analytic exponent is only a meaningful comparison when A < z^(1/3).
    pub fn analytic_comparison_meaningful(&self) -> bool {
        self.big_a < self.z.powf(1.0 / 3.0)
    }
}

/// Which explicit Rankin parameter the total-moment exponent uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
#[clap(rename_all = "lowercase")]
pub enum CVariant {
    /// c = 1 + (log x)^(-1/4)
    Quarter,
    /// c = 1 + (log x)^(-1/3), available through the sharpened prime-sum estimate
    Third,
}

/// Parameters for the total-prime-factor moment.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MomentParamsB {
    #[serde(with = "ser::real")]
    pub x: f64,
    #[serde(rename = "b", with = "ser::real")]
    pub big_b: f64,
    pub c_variant: CVariant,
}

impl MomentParamsB {
    pub fn new(x: f64, big_b: f64, c_variant: CVariant) -> Result<Self> {
        if !(x >= 16.0) {
            return Err(Error::domain(format!("x must be >= 16, got {x}")));
        }
        if !(big_b >= 1.0 && big_b < B_SUP) {
            return Err(Error::domain(format!(
                "B must satisfy 1 <= B < 2^(1/3) ~= {B_SUP}, got {big_b}"
            )));
        }
        Ok(MomentParamsB {
            x,
            big_b,
            c_variant,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum MomentParams {
    Rough(MomentParamsA),
    Total(MomentParamsB),
}

/// An empirical moment sum next to its proof-shape analytic exponent.
#[derive(Debug, Clone, Serialize)]
pub struct MomentReport {
    pub func: Func,
    pub params: MomentParams,
    #[serde(with = "ser::real")]
    pub empirical_sum: f64,
    #[serde(with = "ser::real")]
    pub empirical_log_excess: f64,
    #[serde(with = "ser::real")]
    pub analytic_exponent: f64,
    #[serde(with = "ser::real")]
    pub c_used: f64,
    #[serde(with = "ser::count")]
    pub n_terms: u64,
}

/// base^omega, switching to log space when the direct power would overflow.
fn pow_omega(base: f64, omega: u32) -> f64 {
    if omega == 0 {
        return 1.0;
    }
    let log_term = base.ln() * f64::from(omega);
    if log_term > 700.0 {
        log_term.exp()
    } else {
        base.powi(omega as i32)
    }
}

fn scan_bound(sieve: &FactorSieve, x: f64) -> Result<u64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("x must be finite, got {x}")));
    }
    let n_max = x.floor() as u64;
    if n_max > sieve.limit() {
        return Err(Error::OutOfRange {
            what: "moment scan".to_string(),
            value: n_max,
            limit: sieve.limit(),
        });
    }
    Ok(n_max)
}

/// Factor a(n), erroring when the image leaves the sieve.
fn image_factors(sieve: &FactorSieve, f: Func, n: u64) -> Result<Factorization> {
    let an = f.apply(&sieve.factorize(n)?)?;
    if an > sieve.limit() {
        return Err(Error::OutOfRange {
            what: format!("{}({n}) headroom", f.name()),
            value: an,
            limit: sieve.limit(),
        });
    }
    sieve.factorize(an)
}

/// Sum over n <= x of A^(Omega_{>z}(a(n))), streamed over the sieve in
/// deterministic chunks.
pub fn empirical_moment_rough(
    sieve: &FactorSieve,
    f: Func,
    p: &MomentParamsA,
    workers: usize,
) -> Result<MomentReport> {
    let n_max = scan_bound(sieve, p.x)?;
    let (exponent, c) = analytic_exponent_rough(p)?;
    let (z, a) = (p.z, p.big_a);
    let sum = sum_scan(1, n_max, workers, |n| {
        Ok(pow_omega(a, image_factors(sieve, f, n)?.big_omega_above(z)))
    })?;
    debug_assert!(sum > 0.0);
    Ok(MomentReport {
        func: f,
        params: MomentParams::Rough(*p),
        empirical_sum: sum,
        empirical_log_excess: (sum / p.x).ln(),
        analytic_exponent: exponent,
        c_used: c,
        n_terms: n_max,
    })
}

/// Sum over n <= x of B^(Omega(a(n))).
pub fn empirical_moment_total(
    sieve: &FactorSieve,
    f: Func,
    p: &MomentParamsB,
    workers: usize,
) -> Result<MomentReport> {
    let n_max = scan_bound(sieve, p.x)?;
    let (exponent, c) = analytic_exponent_total(p);
    let b = p.big_b;
    let sum = sum_scan(1, n_max, workers, |n| {
        Ok(pow_omega(b, image_factors(sieve, f, n)?.big_omega()))
    })?;
    debug_assert!(sum > 0.0);
    Ok(MomentReport {
        func: f,
        params: MomentParams::Total(*p),
        empirical_sum: sum,
        empirical_log_excess: (sum / p.x).ln(),
        analytic_exponent: exponent,
        c_used: c,
        n_terms: n_max,
    })
}

/// Rankin parameter and proof-shape exponent for the rough moment:
/// c = 1 + A / ((log x)^(1/(A+1)) (log z)^((A-1)/(A+1))),
/// exponent = (c-1) log x + Gamma(A) / ((c-1)^A (log z)^(A-1)).
pub fn analytic_exponent_rough(p: &MomentParamsA) -> Result<(f64, f64)> {
    let (x, a, z) = (p.x, p.big_a, p.z);
    if !(a > 0.0) {
        return Err(Error::domain("A must be > 0"));
    }
    if !(z > 1.0) {
        return Err(Error::domain("z must be > 1 for the analytic exponent"));
    }
    let lx = x.ln();
    let lz = z.ln();
    let c = 1.0 + a / (lx.powf(1.0 / (a + 1.0)) * lz.powf((a - 1.0) / (a + 1.0)));
    if c >= 2.0 {
        return Err(Error::domain(format!(
            "Rankin parameter c = {c} left (1,2); x too small for these parameters"
        )));
    }
    let exponent = (c - 1.0) * lx + gamma_fn(a)? / ((c - 1.0).powf(a) * lz.powf(a - 1.0));
    Ok((exponent, c))
}

/// Rankin parameter and proof-shape exponent for the total moment.
/// Quarter: c = 1 + (log x)^(-1/4), exponent = (c-1) log x + (c-1)^(-3).
/// Third:   c = 1 + (log x)^(-1/3), exponent = (c-1) log x + (c-1)^(-B).
pub fn analytic_exponent_total(p: &MomentParamsB) -> (f64, f64) {
    let lx = p.x.ln();
    match p.c_variant {
        CVariant::Quarter => {
            let c = 1.0 + lx.powf(-0.25);
            ((c - 1.0) * lx + (c - 1.0).powi(-3), c)
        }
        CVariant::Third => {
            let c = 1.0 + lx.powf(-1.0 / 3.0);
            ((c - 1.0) * lx + (c - 1.0).powf(-p.big_b), c)
        }
    }
}

/// The multiplicative g with g(p^e) = A^e - A^(e-1) for p > z and 0 otherwise;
/// g(1) = 1. Satisfies A^(Omega_{>z}(d)) = sum over r | d of g(r).
pub fn g_value(f: &Factorization, a: f64, z: f64) -> f64 {
    let mut v = 1.0;
    for &(p, e) in f.factors() {
        if p as f64 > z {
            let e = e as i32;
            v *= a.powi(e) - a.powi(e - 1);
        } else {
            return 0.0;
        }
    }
    v
}

/// S(T) = sum over primes p <= T of A^(Omega_{>z}(a(p))), exact.
/// Uses a(p) in {p-1, p+1} directly.
pub fn rough_prime_moment_sum(sieve: &FactorSieve, t: f64, f: Func, a: f64, z: f64) -> Result<f64> {
    if !t.is_finite() || t > sieve.limit() as f64 {
        return Err(Error::OutOfRange {
            what: "prime moment sum".to_string(),
            value: t.ceil() as u64,
            limit: sieve.limit(),
        });
    }
    let mut acc = CompensatedSum::new();
    for &p in sieve.primes_upto(t) {
        let v = f.at_prime(p as u64);
        if v > sieve.limit() {
            return Err(Error::OutOfRange {
                what: format!("{}({p}) headroom", f.name()),
                value: v,
                limit: sieve.limit(),
            });
        }
        acc.add(pow_omega(a, sieve.factorize(v)?.big_omega_above(z)));
    }
    Ok(acc.value())
}

// Lanczos approximation, g = 607/128, 15 coefficients.
const LANCZOS_G: f64 = 4.7421875;
const LANCZOS_COEFFS: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    3.3994649984811888699e-5,
    4.6523628927048575665e-5,
    -9.8374475304879564677e-5,
    1.5808870322491248884e-4,
    -2.1026444172410488319e-4,
    2.1743961811521264320e-4,
    -1.6431810653676389022e-4,
    8.4418223983852743293e-5,
    -2.6190838401581408670e-5,
    3.6899182659531622704e-6,
];

/// log Gamma for s > 0.
pub fn ln_gamma(s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::domain(format!("Gamma requires s > 0, got {s}")));
    }
    if s < 0.5 {
        // reflection: Gamma(s) Gamma(1-s) = pi / sin(pi s)
        let refl = std::f64::consts::PI / (std::f64::consts::PI * s).sin();
        return Ok(refl.ln() - ln_gamma(1.0 - s)?);
    }
    let x = s - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (k, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + k as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln())
}

/// Gamma(s) for s > 0, relative accuracy comfortably inside 1e-10.
pub fn gamma_fn(s: f64) -> Result<f64> {
    Ok(ln_gamma(s)?.exp())
}
