//! Command-line front end: factor, verify identities, tabulate values.

mod parse;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use omega_sums::divisor::{check_one, verify_finite4_fast, verify_identity, DivisorIdentity};
use omega_sums::functions::{liouville, mobius, omega};
use omega_sums::series::closed::SeriesParams;
use omega_sums::series::{
    l_function, prime_zeta, shifted_prime_zeta, truncated_weighted_series, zeta, ComplexS, SeriesEngine,
    SeriesIdentity, SeriesResult,
};
use omega_sums::{CharacterTable, Error, FnSpec, SpfSieve};
use serde::Serialize;

use output::{csv_row, json, Cplx, Exact, Float, Format, SCHEMA};

#[derive(Parser)]
#[command(name = "omega-sums", version, about = "Divisor sums and Dirichlet series weighted by ω(n)")]
struct Cli {
    /// Largest n the factorization sieve may cover.
    #[arg(long, global = true, env = "OMEGASUMS_SIEVE_LIMIT", default_value_t = 1_000_000)]
    sieve_limit: u64,
    /// Largest prime summed explicitly on the closed-form side.
    #[arg(long, global = true, env = "OMEGASUMS_PRIME_LIMIT", default_value_t = 1_000_000)]
    prime_limit: u64,
    /// Target accuracy of closed-form factors.
    #[arg(long, global = true, env = "OMEGASUMS_TOL", default_value_t = 1e-9)]
    tol: f64,
    /// Largest |oracle − closed form| accepted by verify-series.
    #[arg(long, global = true, env = "OMEGASUMS_ACCEPT_TOL", default_value_t = 1e-3)]
    accept_tol: f64,
    #[arg(long, global = true, env = "OMEGASUMS_FORMAT", value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads; 0 uses one per core. Results do not depend on it.
    #[arg(long, global = true, env = "OMEGASUMS_WORKERS", default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct ChiArgs {
    /// Modulus of the Dirichlet character.
    #[arg(long)]
    chi_mod: Option<u64>,
    /// Index among the characters mod q; 0 is the principal one.
    #[arg(long, default_value_t = 0)]
    chi_index: usize,
}

impl ChiArgs {
    fn table(&self) -> Result<std::sync::Arc<CharacterTable>, String> {
        let q = self.chi_mod.ok_or("a character needs --chi-mod")?;
        parse::character(q, self.chi_index)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Factor n and report ω, μ and λ.
    Factor { n: u64 },
    /// Check a divisor-sum identity exactly for every n in a range.
    VerifyDivisor {
        identity: String,
        #[arg(long, default_value_t = 1)]
        n_min: u64,
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
        /// Multiplicative f for the identities that take one.
        #[arg(long)]
        f: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        #[command(flatten)]
        chi: ChiArgs,
        /// Failures listed in full.
        #[arg(long, default_value_t = 20)]
        max_failures: usize,
    },
    /// Compare a truncated ω-weighted series with its closed form.
    VerifySeries {
        identity: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Truncation point of the direct sum.
        #[arg(long = "N", default_value_t = 1_000_000)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        /// Multiplicative f for the generic identities.
        #[arg(long)]
        f: Option<String>,
        /// Abscissa asserted for the generic identities.
        #[arg(long, allow_hyphen_values = true)]
        sigma_floor: Option<f64>,
        #[command(flatten)]
        chi: ChiArgs,
    },
    /// Tabulate a function over 1..=n-max, or a series over a list of s.
    Table {
        function: String,
        #[arg(long, required_unless_present = "s_list", conflicts_with = "s_list")]
        n_max: Option<u64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        s_list: Option<Vec<String>>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        /// Shift of the shifted prime zeta function.
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[command(flatten)]
        chi: ChiArgs,
    },
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Usage(e)
    }
}

/// Rendered output and whether everything checked passed.
type Outcome = Result<(String, bool), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match validate(&cli) {
        Err(e) => Err(e),
        Ok(()) if cli.workers > 0 => match rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(Failure::Usage(format!("cannot start {} workers: {e}", cli.workers))),
        },
        Ok(()) => run(&cli),
    };
    match result {
        Ok((text, pass)) => {
            println!("{text}");
            if pass { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn validate(cli: &Cli) -> Result<(), Failure> {
    if cli.sieve_limit == 0 || cli.prime_limit == 0 {
        return Err(Failure::Usage("limits must be positive".into()));
    }
    if !(cli.tol > 0.0 && cli.tol < cli.accept_tol) {
        return Err(Failure::Usage(format!(
            "need 0 < tol < accept-tol, got tol = {} and accept-tol = {}",
            cli.tol, cli.accept_tol
        )));
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Factor { n } => factor(cli, *n),
        Command::VerifyDivisor { identity, n_min, n_max, f, k, chi, max_failures } => {
            verify_divisor(cli, identity, *n_min..=*n_max, f.as_deref(), *k, chi, *max_failures)
        }
        Command::VerifySeries { identity, s, n, k, f, sigma_floor, chi } => {
            verify_series(cli, identity, s, *n, k.as_deref(), f.as_deref(), *sigma_floor, chi)
        }
        Command::Table { function, n_max, s_list, k, a, chi } => match (n_max, s_list) {
            (Some(n_max), _) => table_n(cli, function, *n_max, k.as_deref(), chi),
            (None, Some(list)) => table_s(cli, function, list, k.as_deref(), a.as_deref(), chi),
            (None, None) => Err(Failure::Usage("table needs --n-max or --s-list".into())),
        },
    }
}

fn sieve_for(cli: &Cli, n: u64) -> Result<SpfSieve, Failure> {
    Ok(SpfSieve::with_cap(n.max(2), cli.sieve_limit)?)
}

fn factor(cli: &Cli, n: u64) -> Outcome {
    let f = sieve_for(cli, n)?.factorize(n)?;
    let (w, mu, lambda) = (omega(&f), mobius(&f), liouville(&f));
    #[derive(Serialize)]
    struct Out<'a> {
        schema: &'a str,
        n: u64,
        factors: &'a [(u64, u32)],
        omega: usize,
        mu: i8,
        lambda: i8,
    }
    let powers = || -> String {
        if n == 1 {
            return "1".into();
        }
        let parts: Vec<String> = f
            .factors()
            .iter()
            .map(|&(p, a)| if a == 1 { p.to_string() } else { format!("{p}^{a}") })
            .collect();
        parts.join(" * ")
    };
    let text = match cli.format {
        Format::Json => json(&Out { schema: SCHEMA, n, factors: f.factors(), omega: w, mu, lambda }),
        Format::Csv => format!(
            "n,factors,omega,mu,lambda\n{}",
            csv_row([n.to_string(), powers(), w.to_string(), mu.to_string(), lambda.to_string()])
        ),
        Format::Text => format!("{n} = {}\nomega {w}\nmu {mu}\nlambda {lambda}", powers()),
    };
    Ok((text, true))
}

fn verify_divisor(
    cli: &Cli,
    identity: &str,
    range: std::ops::RangeInclusive<u64>,
    f: Option<&str>,
    k: Option<i64>,
    chi: &ChiArgs,
    max_failures: usize,
) -> Outcome {
    let id: DivisorIdentity = identity.parse()?;
    let spec = match (id.uses_spec(), f) {
        (true, None) => return Err(Failure::Usage(format!("{id} needs --f <{}>", parse::FUNCTION_NAMES))),
        (true, Some(name)) => parse::function(name, k.map(omega_sums::Exponent::Int), || chi.table())?,
        (false, Some(_)) => {
            eprintln!("note: {id} fixes its own function, --f is ignored");
            FnSpec::one()
        }
        (false, None) => FnSpec::one(),
    };
    if id.needs_k() && k.is_none() {
        return Err(Failure::Usage(format!("{id} needs --k")));
    }
    if range.is_empty() {
        return Err(Failure::Usage("empty range: need n-min ≤ n-max".into()));
    }
    let sieve = sieve_for(cli, *range.end())?;
    let k_used = if id.needs_k() { k } else { None };

    #[derive(Serialize)]
    struct FailureRow {
        n: u64,
        lhs: Option<String>,
        rhs: Option<String>,
    }
    let (checked, skipped, failed, failures, mut skip_reasons) = if id == DivisorIdentity::Finite4 {
        let summary = verify_finite4_fast(range.clone(), &sieve)?;
        let rows = summary
            .failures
            .iter()
            .take(max_failures)
            .map(|&n| {
                let r = check_one(id, &sieve.factorize(n).expect("in range"), &spec, None);
                FailureRow { n, lhs: r.lhs.map(|v| v.to_string()), rhs: r.rhs.map(|v| v.to_string()) }
            })
            .collect::<Vec<_>>();
        (summary.checked, 0, summary.failures.len() as u64, rows, Vec::new())
    } else {
        let reports = verify_identity(id, range.clone(), &spec, k_used, &sieve)?;
        let mut reasons: Vec<(String, u64)> = Vec::new();
        for r in &reports {
            if let Some(e) = &r.skipped {
                let kind = skip_kind(e);
                match reasons.iter_mut().find(|(k, _)| k == kind) {
                    Some((_, c)) => *c += 1,
                    None => reasons.push((kind.to_string(), 1)),
                }
            }
        }
        let bad: Vec<_> = reports.iter().filter(|r| r.is_failure()).collect();
        let rows = bad
            .iter()
            .take(max_failures)
            .map(|r| FailureRow {
                n: r.n,
                lhs: r.lhs.as_ref().map(ToString::to_string),
                rhs: r.rhs.as_ref().map(ToString::to_string),
            })
            .collect();
        let skipped = reports.iter().filter(|r| r.skipped.is_some()).count() as u64;
        (reports.len() as u64, skipped, bad.len() as u64, rows, reasons)
    };
    skip_reasons.sort();
    let passed = checked - skipped - failed;

    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Out<'a> {
        schema: &'a str,
        identity: &'a str,
        f: Option<String>,
        k: Option<i64>,
        n_min: u64,
        n_max: u64,
        checked: u64,
        passed: u64,
        failed: u64,
        skipped: u64,
        skip_reasons: std::collections::BTreeMap<String, u64>,
        failures: Vec<FailureRow>,
    }
    let f_name = id.uses_spec().then(|| spec.name());
    let text = match cli.format {
        Format::Json => json(&Out {
            schema: SCHEMA,
            identity: id.id(),
            f: f_name,
            k: k_used,
            n_min: *range.start(),
            n_max: *range.end(),
            checked,
            passed,
            failed,
            skipped,
            skip_reasons: skip_reasons.into_iter().collect(),
            failures,
        }),
        Format::Csv => {
            let mut lines = vec![
                "identity,f,k,n_min,n_max,checked,passed,failed,skipped".to_string(),
                csv_row([
                    id.id().to_string(),
                    f_name.unwrap_or_default(),
                    k_used.map(|k| k.to_string()).unwrap_or_default(),
                    range.start().to_string(),
                    range.end().to_string(),
                    checked.to_string(),
                    passed.to_string(),
                    failed.to_string(),
                    skipped.to_string(),
                ]),
            ];
            if !failures.is_empty() {
                lines.push("n,lhs,rhs".into());
                for r in &failures {
                    lines.push(csv_row([r.n.to_string(), r.lhs.clone().unwrap_or_default(), r.rhs.clone().unwrap_or_default()]));
                }
            }
            lines.join("\n")
        }
        Format::Text => {
            let mut lines = vec![format!(
                "{id}{}{}: n in {}..={}, checked {checked}, passed {passed}, failed {failed}, skipped {skipped}",
                f_name.map(|f| format!(" f={f}")).unwrap_or_default(),
                k_used.map(|k| format!(" k={k}")).unwrap_or_default(),
                range.start(),
                range.end(),
            )];
            for (kind, count) in &skip_reasons {
                lines.push(format!("  skipped ({kind}): {count}"));
            }
            for r in &failures {
                lines.push(format!(
                    "  n = {}: lhs {} rhs {}",
                    r.n,
                    r.lhs.as_deref().unwrap_or("?"),
                    r.rhs.as_deref().unwrap_or("?")
                ));
            }
            lines.join("\n")
        }
    };
    Ok((text, failed == 0))
}

fn skip_kind(e: &Error) -> &'static str {
    match e {
        Error::Capacity(_) => "capacity",
        Error::Domain(_) => "domain",
        Error::Singular(_) => "singular",
        Error::Precondition(_) => "precondition",
        Error::Evaluation(_) => "evaluation",
    }
}

fn parse_s(text: &str) -> Result<ComplexS, Failure> {
    Ok(ComplexS::from(parse::complex(text)?))
}

fn series_identity(
    identity: &str,
    k: Option<&str>,
    f: Option<&str>,
    sigma_floor: Option<f64>,
    chi: &ChiArgs,
) -> Result<SeriesIdentity, Failure> {
    let k = k.map(parse::exponent).transpose()?;
    let spec = f.map(|name| parse::function(name, k, || chi.table())).transpose()?;
    let chi_table = match chi.chi_mod {
        Some(_) => Some(chi.table()?),
        None => None,
    };
    let params = SeriesParams { k, chi: chi_table, spec, sigma_floor };
    Ok(SeriesIdentity::from_id(identity, params)?)
}

#[allow(clippy::too_many_arguments)]
fn verify_series(
    cli: &Cli,
    identity: &str,
    s: &str,
    n: u64,
    k: Option<&str>,
    f: Option<&str>,
    sigma_floor: Option<f64>,
    chi: &ChiArgs,
) -> Outcome {
    let id = series_identity(identity, k, f, sigma_floor, chi)?;
    let s = parse_s(s)?;
    id.check_domain(s)?;
    if n == 0 {
        return Err(Failure::Usage("--N must be at least 1".into()));
    }
    let sieve = sieve_for(cli, n)?;
    let engine = SeriesEngine::new(cli.prime_limit, cli.tol)?;
    let closed = engine.closed_form(&id, s)?;
    let (spec, weight) = id.oracle_setup();
    let oracle = truncated_weighted_series(&spec, s, n, weight, &sieve)?;
    let abs_diff = (oracle.value - closed.value).norm();
    let bound = oracle.tail_bound + closed.tail_bound;
    let pass = abs_diff <= cli.accept_tol;

    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Out<'a> {
        schema: &'a str,
        identity: String,
        s: Cplx,
        #[serde(rename = "N")]
        n: u64,
        prime_limit: u64,
        oracle: Cplx,
        oracle_tail_bound: Float,
        closed_form: Cplx,
        closed_form_bound: Float,
        abs_diff: Float,
        bound: Float,
        accept_tol: Float,
        pass: bool,
    }
    let text = match cli.format {
        Format::Json => json(&Out {
            schema: SCHEMA,
            identity: id.to_string(),
            s: s.to_complex().into(),
            n,
            prime_limit: cli.prime_limit,
            oracle: oracle.value.into(),
            oracle_tail_bound: Float(oracle.tail_bound),
            closed_form: closed.value.into(),
            closed_form_bound: Float(closed.tail_bound),
            abs_diff: Float(abs_diff),
            bound: Float(bound),
            accept_tol: Float(cli.accept_tol),
            pass,
        }),
        Format::Csv => format!(
            "identity,s,N,oracle,closed_form,abs_diff,bound,pass\n{}",
            csv_row([
                id.to_string(),
                s.to_string(),
                n.to_string(),
                Cplx::from(oracle.value).text(),
                Cplx::from(closed.value).text(),
                Float(abs_diff).text(),
                Float(bound).text(),
                pass.to_string(),
            ])
        ),
        Format::Text => format!(
            "{id} at s = {s}, N = {n}\noracle      {} (tail estimate {})\nclosed form {} (bound {})\n|diff|      {} {} accept-tol {}\n{}",
            Cplx::from(oracle.value).text(),
            Float(oracle.tail_bound).text(),
            Cplx::from(closed.value).text(),
            Float(closed.tail_bound).text(),
            Float(abs_diff).text(),
            if pass { "≤" } else { ">" },
            Float(cli.accept_tol).text(),
            if pass { "pass" } else { "FAIL" },
        ),
    };
    Ok((text, pass))
}

fn table_n(cli: &Cli, function: &str, n_max: u64, k: Option<&str>, chi: &ChiArgs) -> Outcome {
    if n_max == 0 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    let sieve = sieve_for(cli, n_max)?;
    enum Which {
        Omega,
        Mu,
        Lambda,
        Fn(FnSpec),
    }
    let which = match function.to_ascii_lowercase().as_str() {
        "omega" => Which::Omega,
        "mu" | "mobius" => Which::Mu,
        "lambda" | "liouville" => Which::Lambda,
        _ => Which::Fn(parse::function(function, k.map(parse::exponent).transpose()?, || chi.table())?),
    };
    let values: Vec<String> = (1..=n_max)
        .map(|n| {
            let f = sieve.factorize(n)?;
            Ok(match &which {
                Which::Omega => omega(&f).to_string(),
                Which::Mu => mobius(&f).to_string(),
                Which::Lambda => liouville(&f).to_string(),
                Which::Fn(spec) => spec.eval_exact(&f)?.to_string(),
            })
        })
        .collect::<Result<_, Error>>()?;
    let name = match &which {
        Which::Fn(spec) => spec.name(),
        _ => function.to_ascii_lowercase(),
    };
    #[derive(Serialize)]
    struct Row {
        n: u64,
        value: Exact,
    }
    #[derive(Serialize)]
    struct Out<'a> {
        schema: &'a str,
        function: String,
        rows: Vec<Row>,
    }
    let text = match cli.format {
        Format::Json => json(&Out {
            schema: SCHEMA,
            function: name,
            rows: values.into_iter().zip(1..).map(|(v, n)| Row { n, value: Exact(v) }).collect(),
        }),
        Format::Csv => std::iter::once("n,value".to_string())
            .chain(values.into_iter().zip(1u64..).map(|(v, n)| csv_row([n.to_string(), v])))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Text => values.join(","),
    };
    Ok((text, true))
}

fn table_s(
    cli: &Cli,
    function: &str,
    s_list: &[String],
    k: Option<&str>,
    a: Option<&str>,
    chi: &ChiArgs,
) -> Outcome {
    let points = s_list.iter().map(|s| parse_s(s)).collect::<Result<Vec<_>, _>>()?;
    let tol = cli.tol;
    let eval: Box<dyn Fn(ComplexS) -> Result<SeriesResult, Failure>> = match function.to_ascii_lowercase().as_str() {
        "zeta" => Box::new(move |s| Ok(zeta(s, tol)?)),
        "prime-zeta" => {
            let limit = cli.prime_limit;
            Box::new(move |s| Ok(prime_zeta(s, limit, tol)?))
        }
        "shifted-prime-zeta" => {
            let a = parse::complex(a.ok_or_else(|| "shifted-prime-zeta needs --a".to_string())?)?;
            let limit = cli.prime_limit;
            Box::new(move |s| Ok(shifted_prime_zeta(s, a, limit, tol)?))
        }
        "l-function" => {
            let chi = chi.table()?;
            Box::new(move |s| Ok(l_function(s, &chi, tol)?))
        }
        _ => {
            let id = series_identity(function, k, None, None, chi)?;
            let engine = SeriesEngine::new(cli.prime_limit, tol)?;
            Box::new(move |s| Ok(engine.closed_form(&id, s)?))
        }
    };
    let rows = points
        .iter()
        .map(|&s| eval(s).map(|r| (s, r)))
        .collect::<Result<Vec<_>, _>>()?;

    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct Row {
        s: Cplx,
        value: Cplx,
        tail_bound: Float,
        truncation: u64,
        converged: bool,
    }
    #[derive(Serialize)]
    struct Out<'a> {
        schema: &'a str,
        function: &'a str,
        rows: Vec<Row>,
    }
    let text = match cli.format {
        Format::Json => json(&Out {
            schema: SCHEMA,
            function,
            rows: rows
                .iter()
                .map(|(s, r)| Row {
                    s: s.to_complex().into(),
                    value: r.value.into(),
                    tail_bound: Float(r.tail_bound),
                    truncation: r.truncation,
                    converged: r.converged,
                })
                .collect(),
        }),
        Format::Csv => std::iter::once("s_re,s_im,value_re,value_im,tail_bound,truncation,converged".to_string())
            .chain(rows.iter().map(|(s, r)| {
                csv_row([
                    Float(s.sigma).text(),
                    Float(s.t).text(),
                    Float(r.value.re).text(),
                    Float(r.value.im).text(),
                    Float(r.tail_bound).text(),
                    r.truncation.to_string(),
                    r.converged.to_string(),
                ])
            }))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Text => rows
            .iter()
            .map(|(s, r)| format!("{s}\t{}\t{}", Cplx::from(r.value).text(), Float(r.tail_bound).text()))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok((text, true))
}
