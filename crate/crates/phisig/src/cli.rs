//! Command-line surface: flag parsing, sieve acquisition, dispatch, and
//! JSON/CSV emission. One report per invocation on stdout; diagnostics and
//! errors on stderr (errors as a single machine-parsable JSON line).

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::{ArithWord, FactorSieve, Func};
use crate::error::{Error, Result};
use crate::inverse::{PreimageEngine, DEFAULT_LEVEL_CAP};
use crate::moments::{
    empirical_moment_rough, empirical_moment_total, CVariant, MomentParamsA, MomentParamsB,
};
use crate::parallel::default_workers;
use crate::prooflab::{
    count_multiples, lemma3_ratios, lemma4_bound, partition_pqr, theorem1_scan, BoundParams,
};
use crate::report::{ConfigEcho, CsvTable, Envelope};
use crate::ser::csv_real;
use crate::smooth::{hypothesis1_report, phi_smooth_count, pi_smooth_shifted, psi_count};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "phisig",
    version,
    about = "Preimages, moment sums and smooth-number statistics for iterated phi/sigma"
)]
pub struct Cli {
    /// Smallest-prime-factor sieve limit used by range scans
    /// [default: 1000000, or the cache's own limit with --sieve-cache].
    #[arg(long, global = true)]
    pub sieve_limit: Option<u64>,

    /// Load the sieve from a cache file instead of building it.
    #[arg(long, global = true)]
    pub sieve_cache: Option<PathBuf>,

    /// Worker threads for range scans; never changes output bytes.
    #[arg(long, global = true, default_value_t = default_workers())]
    pub workers: usize,

    /// Report encoding on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Per-level cap for preimage enumerations.
    #[arg(long, global = true, default_value_t = DEFAULT_LEVEL_CAP)]
    pub cap: usize,

    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Enumerate the preimage set of a composition word at one target.
    Preimage {
        /// Word over {p,s}, outermost first; also phi, sigma, phi^k, sigma^k.
        #[arg(long = "fn")]
        func: ArithWord,
        #[arg(long)]
        n: u64,
        /// Emit every level of the inverse-image tree, not just the deepest.
        #[arg(long)]
        levels: bool,
    },
    /// Exact preimage counts over a target range.
    Count {
        #[arg(long = "fn")]
        func: ArithWord,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Empirical moment sums with their analytic exponents.
    Moments {
        #[command(subcommand)]
        cmd: MomentsCmd,
    },
    /// Exact smooth-number statistics.
    Smooth {
        #[command(subcommand)]
        cmd: SmoothCmd,
    },
    /// Decompose a preimage set into P / Q / R by prime-factor thresholds.
    Partition {
        /// Function applied one more time on top of the inner word.
        #[arg(long = "fn")]
        func: Func,
        /// Inner composition word whose preimage set gets partitioned.
        #[arg(long)]
        inner: ArithWord,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 0.5)]
        eta: f64,
    },
    /// Ratio scans against the L-gauges.
    Scan {
        #[command(subcommand)]
        cmd: ScanCmd,
    },
    /// Explicit bound checks.
    Bounds {
        #[command(subcommand)]
        cmd: BoundsCmd,
    },
    /// Sieve cache maintenance.
    Sieve {
        #[command(subcommand)]
        cmd: SieveCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum MomentsCmd {
    /// Sum of A^(Omega_{>z}(a(n))) for n <= x, z and A derived from x and eta.
    Rough {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        eta: f64,
        #[arg(long = "fn")]
        func: Func,
    },
    /// Sum of B^(Omega(a(n))) for n <= x.
    Total {
        #[arg(long)]
        x: f64,
        #[arg(long = "B")]
        b: f64,
        #[arg(long, value_enum)]
        variant: CVariant,
        #[arg(long = "fn")]
        func: Func,
    },
}

#[derive(Subcommand, Debug)]
pub enum SmoothCmd {
    /// Psi(x,y): y-smooth integers up to x.
    Psi {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
    },
    /// Pi(x,y): primes p <= x with y-smooth p-1.
    Pishift {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
    },
    /// Phi_k(x,y): m <= x whose k-th totient iterate is y-smooth.
    Phik {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Both sides of the smooth-shifted-prime comparison.
    Hyp1 {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum ScanCmd {
    /// ratio = N * L_{k,beta+1}(n) / n over a target range.
    Theorem1 {
        #[arg(long = "fn")]
        func: ArithWord,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum BoundsCmd {
    /// Empirical extrema for sigma(n) <= c1 n log log 3n and phi(n) >= c2 n / log log 3n.
    Lemma3 {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Count of n <= x with d | a(n) next to the explicit bound.
    Lemma4 {
        #[arg(long = "fn")]
        func: Func,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        x: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum SieveCmd {
    /// Build a sieve and write the cache file.
    Build {
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(output) => {
            print!("{output}");
            0
        }
        Err(e) => {
            let line = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{line}");
            1
        }
    }
}

struct Rendered {
    json: String,
    table: CsvTable,
}

/// Envelope and serialize a typed report in one pass, so the 17-digit real
/// encoding survives (converting through `serde_json::Value` would reformat
/// the numbers).
fn finish<T: Serialize>(
    config: &ConfigEcho,
    sieve_limit: u64,
    report: &T,
    table: CsvTable,
) -> Result<Rendered> {
    let env = Envelope::new(sieve_limit, config.clone(), report);
    Ok(Rendered {
        json: format!("{}\n", env.to_json()?),
        table,
    })
}

pub const DEFAULT_SIEVE_LIMIT: u64 = 1_000_000;

pub fn execute(cli: &Cli) -> Result<String> {
    let workers = cli.workers.max(1);
    let (subname, args) = describe(&cli.cmd);
    let config = ConfigEcho {
        subcommand: subname,
        sieve_limit: cli.sieve_limit.unwrap_or(DEFAULT_SIEVE_LIMIT),
        sieve_cache: cli.sieve_cache.as_ref().map(|p| p.display().to_string()),
        output_format: cli.format.name().to_string(),
        cap: cli.cap,
        args,
    };

    // `sieve build` manages its own table; everything else shares one.
    let rendered: Rendered;
    if let Cmd::Sieve {
        cmd: SieveCmd::Build { limit, out },
    } = &cli.cmd
    {
        let sieve = FactorSieve::build(*limit)?;
        sieve.write_cache_file(out)?;
        let bytes = std::fs::metadata(out)?.len();
        #[derive(Serialize)]
        struct BuildReport {
            limit: u64,
            out: String,
            #[serde(with = "crate::ser::count")]
            bytes: u64,
            #[serde(with = "crate::ser::count")]
            n_primes: u64,
        }
        let report = BuildReport {
            limit: *limit,
            out: out.display().to_string(),
            bytes,
            n_primes: sieve.n_primes() as u64,
        };
        let mut table = CsvTable::new(vec!["limit", "out", "bytes", "n_primes"]);
        table.push_row(vec![
            limit.to_string(),
            out.display().to_string(),
            bytes.to_string(),
            sieve.n_primes().to_string(),
        ]);
        rendered = finish(&config, sieve.limit(), &report, table)?;
    } else {
        let sieve = obtain_sieve(cli)?;
        rendered = dispatch(cli, &sieve, workers, &config)?;
    }

    match cli.format {
        Format::Json => Ok(rendered.json),
        Format::Csv => rendered.table.render(),
    }
}

fn obtain_sieve(cli: &Cli) -> Result<FactorSieve> {
    match &cli.sieve_cache {
        Some(path) => {
            let sieve = FactorSieve::load_cache_file(path)?;
            // an explicitly requested limit must fit inside the cache
            if let Some(requested) = cli.sieve_limit {
                if sieve.limit() < requested {
                    return Err(Error::domain(format!(
                        "cache limit {} is below the requested sieve limit {requested}",
                        sieve.limit(),
                    )));
                }
            }
            Ok(sieve)
        }
        None => FactorSieve::build(cli.sieve_limit.unwrap_or(DEFAULT_SIEVE_LIMIT)),
    }
}

fn dispatch(
    cli: &Cli,
    sieve: &FactorSieve,
    workers: usize,
    config: &ConfigEcho,
) -> Result<Rendered> {
    let engine = PreimageEngine::with_sieve(sieve).cap(cli.cap);
    match &cli.cmd {
        Cmd::Preimage { func, n, levels } => {
            let tree = engine.iterated(func, *n)?;
            if tree.truncated {
                return Err(Error::Truncated {
                    target: *n,
                    cap: cli.cap,
                    partial: tree.deepest().to_vec(),
                });
            }
            let mut table = CsvTable::new(vec!["level", "m"]);
            if *levels {
                for (j, level) in tree.levels.iter().enumerate() {
                    for &m in level {
                        table.push_row(vec![(j + 1).to_string(), m.to_string()]);
                    }
                }
                finish(config, sieve.limit(), &tree, table)
            } else {
                let deepest = tree.deepest();
                for &m in deepest {
                    table.push_row(vec![func.len().to_string(), m.to_string()]);
                }
                #[derive(Serialize)]
                struct Flat<'a> {
                    target: u64,
                    word: &'a ArithWord,
                    #[serde(with = "crate::ser::count")]
                    count: u64,
                    preimages: &'a [u64],
                    truncated: bool,
                }
                let flat = Flat {
                    target: *n,
                    word: func,
                    count: deepest.len() as u64,
                    preimages: deepest,
                    truncated: false,
                };
                finish(config, sieve.limit(), &flat, table)
            }
        }
        Cmd::Count { func, from, to } => {
            if from > to {
                return Err(Error::domain("--from must not exceed --to"));
            }
            #[derive(Serialize)]
            struct Row {
                n: u64,
                #[serde(with = "crate::ser::count")]
                count: u64,
            }
            let mut rows = Vec::new();
            let mut table = CsvTable::new(vec!["n", "count"]);
            for n in *from..=*to {
                let count = engine.count(func, n)?;
                table.push_row(vec![n.to_string(), count.to_string()]);
                rows.push(Row { n, count });
            }
            #[derive(Serialize)]
            struct CountReport {
                word: String,
                from: u64,
                to: u64,
                rows: Vec<Row>,
            }
            let report = CountReport {
                word: func.to_string(),
                from: *from,
                to: *to,
                rows,
            };
            finish(config, sieve.limit(), &report, table)
        }
        Cmd::Moments { cmd } => {
            let report = match cmd {
                MomentsCmd::Rough { x, eta, func } => {
                    let p = MomentParamsA::new(*x, *eta)?;
                    empirical_moment_rough(sieve, *func, &p, workers)?
                }
                MomentsCmd::Total {
                    x,
                    b,
                    variant,
                    func,
                } => {
                    let p = MomentParamsB::new(*x, *b, *variant)?;
                    empirical_moment_total(sieve, *func, &p, workers)?
                }
            };
            let mut table = CsvTable::new(vec![
                "kind",
                "func",
                "x",
                "eta",
                "z",
                "a",
                "b",
                "c_variant",
                "paper_parameterized",
                "empirical_sum",
                "empirical_log_excess",
                "analytic_exponent",
                "c_used",
                "n_terms",
            ]);
            let (kind, x, eta, z, a, b, variant, paper) = match &report.params {
                crate::moments::MomentParams::Rough(p) => (
                    "rough",
                    csv_real(p.x),
                    csv_real(p.eta),
                    csv_real(p.z),
                    csv_real(p.big_a),
                    String::new(),
                    String::new(),
                    p.paper_parameterized.to_string(),
                ),
                crate::moments::MomentParams::Total(p) => (
                    "total",
                    csv_real(p.x),
                    String::new(),
                    String::new(),
                    String::new(),
                    csv_real(p.big_b),
                    match p.c_variant {
                        CVariant::Quarter => "quarter".to_string(),
                        CVariant::Third => "third".to_string(),
                    },
                    String::new(),
                ),
            };
            table.push_row(vec![
                kind.to_string(),
                report.func.name().to_string(),
                x,
                eta,
                z,
                a,
                b,
                variant,
                paper,
                csv_real(report.empirical_sum),
                csv_real(report.empirical_log_excess),
                csv_real(report.analytic_exponent),
                csv_real(report.c_used),
                report.n_terms.to_string(),
            ]);
            finish(config, sieve.limit(), &report, table)
        }
        Cmd::Smooth { cmd } => match cmd {
            SmoothCmd::Hyp1 { x, y } => {
                let rep = hypothesis1_report(sieve, *x, *y, workers)?;
                let mut table = CsvTable::new(vec![
                    "x",
                    "y",
                    "psi",
                    "pi_smooth",
                    "pi_x",
                    "lhs",
                    "rhs",
                    "ratio",
                ]);
                table.push_row(vec![
                    csv_real(rep.x),
                    csv_real(rep.y),
                    rep.psi.to_string(),
                    rep.pi_smooth.to_string(),
                    rep.pi_x.to_string(),
                    csv_real(rep.lhs),
                    rep.rhs.map(csv_real).unwrap_or_default(),
                    rep.ratio.map(csv_real).unwrap_or_default(),
                ]);
                finish(config, sieve.limit(), &rep, table)
            }
            _ => {
                let (kind, x, y, k, count) = match cmd {
                    SmoothCmd::Psi { x, y } => {
                        ("psi", *x, *y, None, psi_count(sieve, *x, *y, workers)?)
                    }
                    SmoothCmd::Pishift { x, y } => (
                        "pishift",
                        *x,
                        *y,
                        None,
                        pi_smooth_shifted(sieve, *x, *y, workers)?,
                    ),
                    SmoothCmd::Phik { x, y, k } => (
                        "phik",
                        *x,
                        *y,
                        Some(*k),
                        phi_smooth_count(sieve, *k, *x, *y, workers)?,
                    ),
                    SmoothCmd::Hyp1 { .. } => unreachable!(),
                };
                // phik rows carry the asymptotic main term next to count/x,
                // with the caveat spelled out: the o(1) terms leave nothing
                // to assert numerically, so this is a trend column only.
                let (u, rho_k, note) = match k {
                    Some(k) if y > 1.0 => {
                        let u = x.ln() / y.ln();
                        let rho = crate::smooth::rho_k_asymptotic(k, u).ok();
                        let note = "rho_k is the asymptotic main term with o(1) = 0; \
                                    trend comparison only, no tolerance attached";
                        (Some(u), rho, Some(note))
                    }
                    _ => (None, None, None),
                };
                #[derive(Serialize)]
                struct SmoothReport {
                    kind: &'static str,
                    #[serde(with = "crate::ser::real")]
                    x: f64,
                    #[serde(with = "crate::ser::real")]
                    y: f64,
                    k: Option<u32>,
                    #[serde(with = "crate::ser::count")]
                    count: u64,
                    #[serde(with = "crate::ser::real_opt")]
                    u: Option<f64>,
                    #[serde(with = "crate::ser::real_opt")]
                    rho_k_main_term: Option<f64>,
                    note: Option<&'static str>,
                }
                let report = SmoothReport {
                    kind,
                    x,
                    y,
                    k,
                    count,
                    u,
                    rho_k_main_term: rho_k,
                    note,
                };
                let mut table = CsvTable::new(vec![
                    "kind",
                    "x",
                    "y",
                    "k",
                    "count",
                    "u",
                    "rho_k_main_term",
                    "note",
                ]);
                table.push_row(vec![
                    kind.to_string(),
                    csv_real(x),
                    csv_real(y),
                    k.map(|v| v.to_string()).unwrap_or_default(),
                    count.to_string(),
                    u.map(csv_real).unwrap_or_default(),
                    rho_k.map(csv_real).unwrap_or_default(),
                    note.unwrap_or_default().to_string(),
                ]);
                finish(config, sieve.limit(), &report, table)
            }
        },
        Cmd::Partition {
            func,
            inner,
            n,
            alpha,
            eta,
        } => {
            let params = BoundParams::new(inner.len() as u32, *alpha, *eta)?;
            let rep = partition_pqr(sieve, *func, inner, *n, &params, cli.cap)?;
            let mut table = CsvTable::new(vec![
                "n",
                "k",
                "func",
                "inner_word",
                "x",
                "z",
                "threshold_p",
                "threshold_q",
                "total_p",
                "total_q",
                "total_r",
                "part",
                "l",
            ]);
            let scalar = |part: &str, l: String, t: &mut CsvTable| {
                t.push_row(vec![
                    rep.n.to_string(),
                    rep.k.to_string(),
                    rep.func.name().to_string(),
                    rep.inner_word.to_string(),
                    csv_real(rep.x),
                    csv_real(rep.z),
                    csv_real(rep.threshold_p),
                    csv_real(rep.threshold_q),
                    rep.preimage_totals.p.to_string(),
                    rep.preimage_totals.q.to_string(),
                    rep.preimage_totals.r.to_string(),
                    part.to_string(),
                    l,
                ]);
            };
            for (name, part) in [("P", &rep.p), ("Q", &rep.q), ("R", &rep.r)] {
                for &l in part.iter() {
                    scalar(name, l.to_string(), &mut table);
                }
            }
            if rep.s.is_empty() {
                scalar("", String::new(), &mut table);
            }
            finish(config, sieve.limit(), &rep, table)
        }
        Cmd::Scan {
            cmd:
                ScanCmd::Theorem1 {
                    func,
                    beta,
                    from,
                    to,
                },
        } => {
            let scan = theorem1_scan(sieve, func, *beta, *from, *to, cli.cap, workers)?;
            let mut table = CsvTable::new(vec!["n", "count", "ratio", "error"]);
            for row in &scan.rows {
                table.push_row(vec![
                    row.n.to_string(),
                    row.count.to_string(),
                    if row.error.is_none() {
                        csv_real(row.ratio)
                    } else {
                        String::new()
                    },
                    row.error.clone().unwrap_or_default(),
                ]);
            }
            finish(config, sieve.limit(), &scan, table)
        }
        Cmd::Bounds { cmd } => match cmd {
            BoundsCmd::Lemma3 { from, to } => {
                let scan = lemma3_ratios(sieve, *from, *to, workers)?;
                let mut table = CsvTable::new(vec![
                    "n_min", "n_max", "c1_hat", "c1_arg", "c2_hat", "c2_arg",
                ]);
                table.push_row(vec![
                    scan.n_min.to_string(),
                    scan.n_max.to_string(),
                    csv_real(scan.c1_hat),
                    scan.c1_arg.to_string(),
                    csv_real(scan.c2_hat),
                    scan.c2_arg.to_string(),
                ]);
                finish(config, sieve.limit(), &scan, table)
            }
            BoundsCmd::Lemma4 { func, d, x } => {
                let bound = lemma4_bound(*d, *x)?;
                let count = count_multiples(sieve, *func, *d, *x, workers)?;
                let ell = crate::arith::trial_factorize(*d).big_omega();
                #[derive(Serialize)]
                struct Lemma4Report {
                    func: &'static str,
                    d: u64,
                    #[serde(with = "crate::ser::real")]
                    x: f64,
                    ell: u32,
                    #[serde(with = "crate::ser::count")]
                    count_multiples: u64,
                    #[serde(with = "crate::ser::real")]
                    bound: f64,
                    holds: bool,
                }
                let report = Lemma4Report {
                    func: func.name(),
                    d: *d,
                    x: *x,
                    ell,
                    count_multiples: count,
                    bound,
                    holds: (count as f64) <= bound,
                };
                let mut table = CsvTable::new(vec![
                    "func",
                    "d",
                    "x",
                    "ell",
                    "count_multiples",
                    "bound",
                    "holds",
                ]);
                table.push_row(vec![
                    func.name().to_string(),
                    d.to_string(),
                    csv_real(*x),
                    ell.to_string(),
                    count.to_string(),
                    csv_real(bound),
                    ((count as f64) <= bound).to_string(),
                ]);
                finish(config, sieve.limit(), &report, table)
            }
        },
        Cmd::Sieve { .. } => unreachable!("handled in execute"),
    }
}

fn describe(cmd: &Cmd) -> (String, BTreeMap<String, String>) {
    let mut args = BTreeMap::new();
    let mut arg = |k: &str, v: String| {
        args.insert(k.to_string(), v);
    };
    let name = match cmd {
        Cmd::Preimage { func, n, levels } => {
            arg("fn", func.to_string());
            arg("n", n.to_string());
            arg("levels", levels.to_string());
            "preimage"
        }
        Cmd::Count { func, from, to } => {
            arg("fn", func.to_string());
            arg("from", from.to_string());
            arg("to", to.to_string());
            "count"
        }
        Cmd::Moments { cmd } => match cmd {
            MomentsCmd::Rough { x, eta, func } => {
                arg("x", csv_real(*x));
                arg("eta", csv_real(*eta));
                arg("fn", func.name().to_string());
                "moments rough"
            }
            MomentsCmd::Total {
                x,
                b,
                variant,
                func,
            } => {
                arg("x", csv_real(*x));
                arg("B", csv_real(*b));
                arg(
                    "variant",
                    match variant {
                        CVariant::Quarter => "quarter".to_string(),
                        CVariant::Third => "third".to_string(),
                    },
                );
                arg("fn", func.name().to_string());
                "moments total"
            }
        },
        Cmd::Smooth { cmd } => match cmd {
            SmoothCmd::Psi { x, y } => {
                arg("x", csv_real(*x));
                arg("y", csv_real(*y));
                "smooth psi"
            }
            SmoothCmd::Pishift { x, y } => {
                arg("x", csv_real(*x));
                arg("y", csv_real(*y));
                "smooth pishift"
            }
            SmoothCmd::Phik { x, y, k } => {
                arg("x", csv_real(*x));
                arg("y", csv_real(*y));
                arg("k", k.to_string());
                "smooth phik"
            }
            SmoothCmd::Hyp1 { x, y } => {
                arg("x", csv_real(*x));
                arg("y", csv_real(*y));
                "smooth hyp1"
            }
        },
        Cmd::Partition {
            func,
            inner,
            n,
            alpha,
            eta,
        } => {
            arg("fn", func.name().to_string());
            arg("inner", inner.to_string());
            arg("n", n.to_string());
            arg("alpha", csv_real(*alpha));
            arg("eta", csv_real(*eta));
            "partition"
        }
        Cmd::Scan {
            cmd:
                ScanCmd::Theorem1 {
                    func,
                    beta,
                    from,
                    to,
                },
        } => {
            arg("fn", func.to_string());
            arg("beta", csv_real(*beta));
            arg("from", from.to_string());
            arg("to", to.to_string());
            "scan theorem1"
        }
        Cmd::Bounds { cmd } => match cmd {
            BoundsCmd::Lemma3 { from, to } => {
                arg("from", from.to_string());
                arg("to", to.to_string());
                "bounds lemma3"
            }
            BoundsCmd::Lemma4 { func, d, x } => {
                arg("fn", func.name().to_string());
                arg("d", d.to_string());
                arg("x", csv_real(*x));
                "bounds lemma4"
            }
        },
        Cmd::Sieve {
            cmd: SieveCmd::Build { limit, out },
        } => {
            arg("limit", limit.to_string());
            arg("out", out.display().to_string());
            "sieve build"
        }
    };
    (name.to_string(), args)
}
