//! C ABI for the phisig toolkit.
//!
//! Conventions:
//! - Every fallible function returns a [`PhisigStatus`]; results go through
//!   out-pointers. `PHISIG_STATUS_OK` (0) means success.
//! - On failure a message is stored in a thread-local buffer, readable via
//!   [`phisig_last_error_message`] until the next failing call on the thread.
//! - Opaque handles (`PhisigSieve`, `PhisigList`) are heap allocations owned
//!   by the caller; release them with the matching `_free` function exactly
//!   once.
//!
//! # Safety (blanket)
//!
//! All `unsafe extern "C"` functions share the same contract: pointer
//! arguments must be valid for the duration of the call, out-pointers must be
//! writable, string arguments must be NUL-terminated, and handles must
//! originate from this library and must not be used after being freed.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use phisig::arith::{iterate, ArithWord, FactorSieve, Func};
use phisig::error::Error;
use phisig::inverse::PreimageEngine;
use phisig::moments;
use phisig::prooflab;
use phisig::smooth;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhisigStatus {
    Ok = 0,
    NullArgument = 1,
    OutOfRange = 2,
    Resource = 3,
    Overflow = 4,
    Domain = 5,
    Truncated = 6,
    CacheFormat = 7,
    WordSyntax = 8,
    Io = 9,
    InvalidUtf8 = 10,
    Panic = 11,
}

/// Opaque smallest-prime-factor sieve handle.
pub struct PhisigSieve(FactorSieve);

/// Opaque list of u64 values (sorted preimages).
pub struct PhisigList(Vec<u64>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> PhisigStatus {
    match err.kind() {
        "resource" => PhisigStatus::Resource,
        "out_of_range" => PhisigStatus::OutOfRange,
        "overflow" => PhisigStatus::Overflow,
        "domain" => PhisigStatus::Domain,
        "truncated" => PhisigStatus::Truncated,
        "cache_format" => PhisigStatus::CacheFormat,
        "word_syntax" => PhisigStatus::WordSyntax,
        "io" => PhisigStatus::Io,
        _ => PhisigStatus::Domain,
    }
}

fn fail(err: Error) -> PhisigStatus {
    set_error(&err.to_string());
    status_of(&err)
}

/// Run a fallible body, translating errors and panics into status codes.
fn guarded<F: FnOnce() -> Result<(), PhisigStatus>>(body: F) -> PhisigStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PhisigStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            PhisigStatus::Panic
        }
    }
}

unsafe fn cstr<'a>(ptr: *const c_char) -> Result<&'a str, PhisigStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(PhisigStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        PhisigStatus::InvalidUtf8
    })
}

unsafe fn out_ptr<'a, T>(ptr: *mut T) -> Result<&'a mut T, PhisigStatus> {
    if ptr.is_null() {
        set_error("null out-pointer");
        return Err(PhisigStatus::NullArgument);
    }
    Ok(&mut *ptr)
}

unsafe fn sieve_ref<'a>(ptr: *const PhisigSieve) -> Result<&'a FactorSieve, PhisigStatus> {
    if ptr.is_null() {
        set_error("null sieve handle");
        return Err(PhisigStatus::NullArgument);
    }
    Ok(&(*ptr).0)
}

fn parse_word(s: &str) -> Result<ArithWord, PhisigStatus> {
    s.parse::<ArithWord>().map_err(fail)
}

fn parse_func(s: &str) -> Result<Func, PhisigStatus> {
    s.parse::<Func>().map_err(fail)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn phisig_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent failure on this thread. Valid until the next
/// failing call; never null.
#[no_mangle]
pub extern "C" fn phisig_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Build a sieve up to `limit` (inclusive).
#[no_mangle]
pub unsafe extern "C" fn phisig_sieve_build(
    limit: u64,
    out: *mut *mut PhisigSieve,
) -> PhisigStatus {
    guarded(|| {
        let out = out_ptr(out)?;
        let sieve = FactorSieve::build(limit).map_err(fail)?;
        *out = Box::into_raw(Box::new(PhisigSieve(sieve)));
        Ok(())
    })
}

/// Load a sieve from a cache file written by `phisig_sieve_save` (or the CLI).
#[no_mangle]
pub unsafe extern "C" fn phisig_sieve_load(
    path: *const c_char,
    out: *mut *mut PhisigSieve,
) -> PhisigStatus {
    guarded(|| {
        let path = cstr(path)?;
        let out = out_ptr(out)?;
        let sieve = FactorSieve::load_cache_file(Path::new(path)).map_err(fail)?;
        *out = Box::into_raw(Box::new(PhisigSieve(sieve)));
        Ok(())
    })
}

/// Write the sieve cache file.
#[no_mangle]
pub unsafe extern "C" fn phisig_sieve_save(
    sieve: *const PhisigSieve,
    path: *const c_char,
) -> PhisigStatus {
    guarded(|| {
        let sieve = sieve_ref(sieve)?;
        let path = cstr(path)?;
        sieve.write_cache_file(Path::new(path)).map_err(fail)
    })
}

/// Inclusive upper bound of the sieve; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn phisig_sieve_limit(sieve: *const PhisigSieve) -> u64 {
    if sieve.is_null() {
        return 0;
    }
    (*sieve).0.limit()
}

#[no_mangle]
pub unsafe extern "C" fn phisig_sieve_free(sieve: *mut PhisigSieve) {
    if !sieve.is_null() {
        drop(Box::from_raw(sieve));
    }
}

/// Euler's totient of m (m <= sieve limit).
#[no_mangle]
pub unsafe extern "C" fn phisig_phi(
    sieve: *const PhisigSieve,
    m: u64,
    out: *mut u64,
) -> PhisigStatus {
    guarded(|| {
        let sieve = sieve_ref(sieve)?;
        let out = out_ptr(out)?;
        *out = sieve.factorize(m).map_err(fail)?.phi();
        Ok(())
    })
}

/// Sum of divisors of m (m <= sieve limit); exact, errors on overflow.
#[no_mangle]
pub unsafe extern "C" fn phisig_sigma(
    sieve: *const PhisigSieve,
    m: u64,
    out: *mut u64,
) -> PhisigStatus {
    guarded(|| {
        let sieve = sieve_ref(sieve)?;
        let out = out_ptr(out)?;
        *out = sieve.factorize(m).map_err(fail)?.sigma().map_err(fail)?;
        Ok(())
    })
}

/// Apply a composition word (e.g. "pp", "phi^2", "ps") to m.
#[no_mangle]
pub unsafe extern "C" fn phisig_iterate(
    sieve: *const PhisigSieve,
    word: *const c_char,
    m: u64,
    out: *mut u64,
) -> PhisigStatus {
    guarded(|| {
        let sieve = sieve_ref(sieve)?;
        let w = parse_word(cstr(word)?)?;
        let out = out_ptr(out)?;
        *out = iterate(sieve, &w, m).map_err(fail)?;
        Ok(())
    })
}

/// Enumerate the full preimage set of a word at `n` (sorted ascending) into a
/// new list handle. `sieve` may be null: factoring then falls back to trial
/// division. `cap` of 0 means the default cap.
#[no_mangle]
pub unsafe extern "C" fn phisig_preimages(
    sieve: *const PhisigSieve,
    word: *const c_char,
    n: u64,
    cap: usize,
    out: *mut *mut PhisigList,
) -> PhisigStatus {
    guarded(|| {
        let w = parse_word(cstr(word)?)?;
        let out = out_ptr(out)?;
        let engine = match sieve.as_ref() {
            Some(s) => PreimageEngine::with_sieve(&s.0),
            None => PreimageEngine::new(),
        };
        let engine = if cap > 0 { engine.cap(cap) } else { engine };
        let tree = engine.iterated(&w, n).map_err(fail)?;
        if tree.truncated {
            set_error("preimage enumeration hit the cap");
            return Err(PhisigStatus::Truncated);
        }
        *out = Box::into_raw(Box::new(PhisigList(tree.deepest().to_vec())));
        Ok(())
    })
}

/// Exact preimage count of a word at `n`. Truncation is an error.
#[no_mangle]
pub unsafe extern "C" fn phisig_count_preimages(
    sieve: *const PhisigSieve,
    word: *const c_char,
    n: u64,
    cap: usize,
    out: *mut u64,
) -> PhisigStatus {
    guarded(|| {
        let w = parse_word(cstr(word)?)?;
        let out = out_ptr(out)?;
        let engine = match sieve.as_ref() {
            Some(s) => PreimageEngine::with_sieve(&s.0),
            None => PreimageEngine::new(),
        };
        let engine = if cap > 0 { engine.cap(cap) } else { engine };
        *out = engine.count(&w, n).map_err(fail)?;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn phisig_list_len(list: *const PhisigList) -> usize {
    if list.is_null() {
        return 0;
    }
    (*list).0.len()
}

/// Fetch one element; fails with OutOfRange past the end.
#[no_mangle]
pub unsafe extern "C" fn phisig_list_get(
    list: *const PhisigList,
    index: usize,
    out: *mut u64,
) -> PhisigStatus {
    guarded(|| {
        if list.is_null() {
            set_error("null list handle");
            return Err(PhisigStatus::NullArgument);
        }
        let out = out_ptr(out)?;
        let items: &Vec<u64> = &(*list).0;
        match items.get(index) {
            Some(&v) => {
                *out = v;
                Ok(())
            }
            None => {
                set_error("list index out of range");
                Err(PhisigStatus::OutOfRange)
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn phisig_list_free(list: *mut PhisigList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Psi(x, y): y-smooth integers up to x.
#[no_mangle]
pub unsafe extern "C" fn phisig_psi_count(
    sieve: *const PhisigSieve,
    x: f64,
    y: f64,
    workers: usize,
    out: *mut u64,
) -> PhisigStatus {
    guarded(|| {
        let sieve = sieve_ref(sieve)?;
        let out = out_ptr(out)?;
        *out = smooth::psi_count(sieve, x, y, workers.max(1)).map_err(fail)?;
        Ok(())
    })
}

/// Pi(x, y): primes p <= x with y-smooth p-1.
#[no_mangle]
pub unsafe extern "C" fn phisig_pi_smooth_shifted(
    sieve: *const PhisigSieve,
    x: f64,
    y: f64,
    workers: usize,
    out: *mut u64,
) -> PhisigStatus {
    guarded(|| {
        let sieve = sieve_ref(sieve)?;
        let out = out_ptr(out)?;
        *out = smooth::pi_smooth_shifted(sieve, x, y, workers.max(1)).map_err(fail)?;
        Ok(())
    })
}

/// Phi_k(x, y): m <= x whose k-th totient iterate is y-smooth.
#[no_mangle]
pub unsafe extern "C" fn phisig_phi_smooth_count(
    sieve: *const PhisigSieve,
    k: u32,
    x: f64,
    y: f64,
    workers: usize,
    out: *mut u64,
) -> PhisigStatus {
    guarded(|| {
        let sieve = sieve_ref(sieve)?;
        let out = out_ptr(out)?;
        *out = smooth::phi_smooth_count(sieve, k, x, y, workers.max(1)).map_err(fail)?;
        Ok(())
    })
}

/// #{p prime : p <= x} for x within the sieve.
#[no_mangle]
pub unsafe extern "C" fn phisig_prime_count(
    sieve: *const PhisigSieve,
    x: f64,
    out: *mut u64,
) -> PhisigStatus {
    guarded(|| {
        let sieve = sieve_ref(sieve)?;
        let out = out_ptr(out)?;
        *out = sieve.prime_count(x).map_err(fail)?;
        Ok(())
    })
}

/// Sum over n <= x of A^(Omega_{>z}(a(n))) with z and A derived from x and
/// eta, next to its analytic exponent and Rankin parameter. `func` is
/// "phi" or "sigma". Any out-pointer may be null to skip that value.
#[no_mangle]
pub unsafe extern "C" fn phisig_moment_rough(
    sieve: *const PhisigSieve,
    func: *const c_char,
    x: f64,
    eta: f64,
    workers: usize,
    out_sum: *mut f64,
    out_log_excess: *mut f64,
    out_exponent: *mut f64,
    out_c: *mut f64,
) -> PhisigStatus {
    guarded(|| {
        let sieve = sieve_ref(sieve)?;
        let f = parse_func(cstr(func)?)?;
        let p = moments::MomentParamsA::new(x, eta).map_err(fail)?;
        let rep = moments::empirical_moment_rough(sieve, f, &p, workers.max(1)).map_err(fail)?;
        write_report(&rep, out_sum, out_log_excess, out_exponent, out_c);
        Ok(())
    })
}

/// Sum over n <= x of B^(Omega(a(n))). `third_variant` selects the sharpened
/// Rankin parameter c = 1 + (log x)^(-1/3) over the quarter-power default.
#[no_mangle]
pub unsafe extern "C" fn phisig_moment_total(
    sieve: *const PhisigSieve,
    func: *const c_char,
    x: f64,
    b: f64,
    third_variant: bool,
    workers: usize,
    out_sum: *mut f64,
    out_log_excess: *mut f64,
    out_exponent: *mut f64,
    out_c: *mut f64,
) -> PhisigStatus {
    guarded(|| {
        let sieve = sieve_ref(sieve)?;
        let f = parse_func(cstr(func)?)?;
        let variant = if third_variant {
            moments::CVariant::Third
        } else {
            moments::CVariant::Quarter
        };
        let p = moments::MomentParamsB::new(x, b, variant).map_err(fail)?;
        let rep = moments::empirical_moment_total(sieve, f, &p, workers.max(1)).map_err(fail)?;
        write_report(&rep, out_sum, out_log_excess, out_exponent, out_c);
        Ok(())
    })
}

unsafe fn write_report(
    rep: &moments::MomentReport,
    out_sum: *mut f64,
    out_log_excess: *mut f64,
    out_exponent: *mut f64,
    out_c: *mut f64,
) {
    if !out_sum.is_null() {
        *out_sum = rep.empirical_sum;
    }
    if !out_log_excess.is_null() {
        *out_log_excess = rep.empirical_log_excess;
    }
    if !out_exponent.is_null() {
        *out_exponent = rep.analytic_exponent;
    }
    if !out_c.is_null() {
        *out_c = rep.c_used;
    }
}

/// Dickman's rho.
#[no_mangle]
pub unsafe extern "C" fn phisig_dickman_rho(u: f64, out: *mut f64) -> PhisigStatus {
    guarded(|| {
        let out = out_ptr(out)?;
        *out = smooth::dickman_rho(u).map_err(fail)?;
        Ok(())
    })
}

/// Gamma function for s > 0.
#[no_mangle]
pub unsafe extern "C" fn phisig_gamma(s: f64, out: *mut f64) -> PhisigStatus {
    guarded(|| {
        let out = out_ptr(out)?;
        *out = phisig::moments::gamma_fn(s).map_err(fail)?;
        Ok(())
    })
}

/// L(n) = exp(log n log log log n / log log n), n >= 16.
#[no_mangle]
pub unsafe extern "C" fn phisig_big_l(n: f64, out: *mut f64) -> PhisigStatus {
    guarded(|| {
        let out = out_ptr(out)?;
        *out = prooflab::big_l(n).map_err(fail)?;
        Ok(())
    })
}

/// L_{k,beta}(n), n >= 16.
#[no_mangle]
pub unsafe extern "C" fn phisig_l_k_beta(n: f64, k: u32, beta: f64, out: *mut f64) -> PhisigStatus {
    guarded(|| {
        let out = out_ptr(out)?;
        *out = prooflab::l_k_beta(n, k, beta).map_err(fail)?;
        Ok(())
    })
}

/// The search limit x = n log(2n).
#[no_mangle]
pub extern "C" fn phisig_search_limit(n: u64) -> f64 {
    prooflab::search_limit(n)
}
