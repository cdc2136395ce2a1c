//! Argument parsing and command runners behind the `polycoh` binary.
//!
//! Every runner returns the full text to print, so the binary only decides
//! where it goes and which exit status to use.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::catalog::{Catalog, DegreeMultiset, Template};
use crate::decompose::{decompose, decompose_at_prime};
use crate::error::{Error, Result};
use crate::molien::{self, SweepRow, DEFAULT_BUDGET};
use crate::primes::{ensure_prime, prime_divisors};
use crate::realize::{corollary_output, realizable_at_prime, realizable_over, PrimeSpec};
use crate::residue::ResidueSet;
use crate::verify;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    /// Only for `molien-verify`.
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "polycoh", version, about = "Which polynomial algebras on even-degree generators are realizable")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide realizability over a coefficient ring.
    Check {
        /// Comma list of degrees, or entry names joined by `+`.
        #[arg(long)]
        degrees: String,
        /// Z, Q, F_p, Z[1/a,1/b], primes=2,5 or primes=mod:N:a1,a2.
        #[arg(long, default_value = "Z")]
        ring: String,
    },
    /// Print the modulus and residues of the allowed prime set.
    Primes {
        #[arg(long)]
        degrees: String,
    },
    /// Show a decomposition occurring at one prime.
    Witness {
        #[arg(long)]
        degrees: String,
        #[arg(long)]
        prime: u64,
    },
    /// List every decomposition into table entries.
    Decompose {
        #[arg(long)]
        degrees: String,
        /// Keep only decompositions occurring at this prime.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Dump the table.
    Catalog,
    /// Run the built-in consistency suites.
    Verify {
        #[arg(long, default_value_t = 24)]
        max_degree: u32,
        #[arg(long, default_value_t = 4)]
        max_count: usize,
    },
    /// Check the imprimitive family degrees against Molien series.
    MolienVerify {
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

fn ring_error(text: &str, reason: impl Into<String>) -> Error {
    Error::RingParse { text: text.to_string(), reason: reason.into() }
}

fn parse_number(text: &str, token: &str) -> Result<u64> {
    token.trim().parse().map_err(|_| ring_error(text, format!("`{}` is not a non-negative integer", token.trim())))
}

fn parse_signed(text: &str, token: &str) -> Result<i64> {
    token.trim().parse().map_err(|_| ring_error(text, format!("`{}` is not an integer", token.trim())))
}

fn parse_list<T>(body: &str, item: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',').map(item).collect()
}

/// Maps ring text to the set of primes that are not units in it.
pub fn parse_ring(text: &str) -> Result<PrimeSpec> {
    let t = text.trim();
    let not_prime = |p: u64| ring_error(text, format!("{p} is not a prime"));
    match t {
        "Z" | "ZZ" => return Ok(PrimeSpec::All),
        "Q" | "QQ" => return Ok(PrimeSpec::Finite(Vec::new())),
        _ => {}
    }
    if let Some(rest) = t.strip_prefix("F_") {
        let p = parse_number(text, rest.trim_start_matches('{').trim_end_matches('}'))?;
        ensure_prime(p).map_err(|_| not_prime(p))?;
        return Ok(PrimeSpec::Finite(vec![p]));
    }
    if let Some(body) = t.strip_prefix("Z[").and_then(|r| r.strip_suffix(']')) {
        let mut excluded = Vec::new();
        for item in body.split(',') {
            let Some(den) = item.trim().strip_prefix("1/") else {
                return Err(ring_error(text, format!("expected `1/k`, found `{}`", item.trim())));
            };
            let k = parse_number(text, den)?;
            if k == 0 {
                return Err(ring_error(text, "cannot invert zero"));
            }
            excluded.extend(prime_divisors(k));
        }
        return PrimeSpec::cofinite(excluded);
    }
    if let Some(body) = t.strip_prefix("primes=") {
        if let Some(spec) = body.strip_prefix("mod:") {
            let (n, residues) =
                spec.split_once(':').ok_or_else(|| ring_error(text, "expected `primes=mod:N:a1,a2,...`"))?;
            let n = parse_number(text, n)?;
            let residues = parse_list(residues, |a| parse_signed(text, a))?;
            let set = ResidueSet::new(n, residues).map_err(|e| ring_error(text, e.to_string()))?;
            return Ok(PrimeSpec::listable(set));
        }
        let primes = parse_list(body, |p| parse_number(text, p))?;
        if let Some(&p) = primes.iter().find(|&&p| ensure_prime(p).is_err()) {
            return Err(not_prime(p));
        }
        return PrimeSpec::finite(primes);
    }
    Err(ring_error(text, "expected Z, Q, F_p, Z[1/a,...], primes=p,q or primes=mod:N:a,b"))
}

pub fn describe_ring(spec: &PrimeSpec) -> String {
    let list = |ps: &[u64]| ps.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
    match spec {
        PrimeSpec::All => "all primes".to_string(),
        PrimeSpec::Finite(ps) if ps.is_empty() => "no primes".to_string(),
        PrimeSpec::Finite(ps) => format!("primes {}", list(ps)),
        PrimeSpec::CoFinite(ps) if ps.is_empty() => "all primes".to_string(),
        PrimeSpec::CoFinite(ps) => format!("all primes except {}", list(ps)),
        PrimeSpec::Listable(s) => format!("primes in {s}"),
    }
}

fn degree_error(text: &str, reason: impl Into<String>) -> Error {
    Error::DegreeParse { text: text.to_string(), reason: reason.into() }
}

/// Splits on `+` outside parentheses.
fn summands(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

/// Degrees as a comma list (`4,6`), entry names joined by `+`
/// (`SU(5)+Sp(2)`), or a mix of the two (`G_2+2,2`).
pub fn parse_degrees(cat: &Catalog, text: &str) -> Result<DegreeMultiset> {
    let body = text.trim().trim_start_matches('{').trim_end_matches('}').trim();
    if body.is_empty() {
        return Ok(DegreeMultiset::empty());
    }
    let mut acc = DegreeMultiset::empty();
    for part in summands(body) {
        let part = part.trim();
        if part.is_empty() {
            return Err(degree_error(text, "empty summand"));
        }
        let numeric = part.chars().all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace() || c == '-');
        let piece = if numeric {
            let degrees = part
                .split(',')
                .map(|d| {
                    let d = d.trim();
                    d.parse::<u32>().map_err(|_| degree_error(text, format!("`{d}` is not a degree")))
                })
                .collect::<Result<Vec<_>>>()?;
            DegreeMultiset::new(degrees)?
        } else {
            cat.lookup(part).ok_or_else(|| degree_error(text, format!("unknown entry `{part}`")))?.degrees().clone()
        };
        acc = acc.union(&piece);
    }
    Ok(acc)
}

fn json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn no_csv(format: Format) -> Result<()> {
    if format == Format::Csv {
        return Err(Error::InvalidParameters("csv output is only available for molien-verify".into()));
    }
    Ok(())
}

pub fn run_check(cat: &Catalog, degrees: &str, ring: &str, format: Format) -> Result<String> {
    no_csv(format)?;
    let target = parse_degrees(cat, degrees)?;
    let spec = parse_ring(ring)?;
    let report = realizable_over(cat, &target, &spec)?;
    if format == Format::Json {
        let mut s = report.to_json();
        s.push('\n');
        return Ok(s);
    }
    let mut out = String::new();
    writeln!(out, "degrees: {}", report.target).unwrap();
    writeln!(out, "ring: {} ({})", ring.trim(), describe_ring(&spec)).unwrap();
    writeln!(out, "verdict: {}", if report.verdict { "realizable" } else { "not realizable" }).unwrap();
    writeln!(out, "prime set: {}", report.prime_set).unwrap();
    if let Some(p) = report.failing_prime {
        writeln!(out, "failing prime: {p}").unwrap();
    }
    if let Some(c) = &report.failing_class {
        writeln!(out, "failing class: {c}").unwrap();
    }
    if !report.witnesses.is_empty() {
        writeln!(out, "witnesses:").unwrap();
        for (p, d) in &report.witnesses {
            writeln!(out, "  p={p}: {d}").unwrap();
        }
    }
    Ok(out)
}

pub fn run_primes(cat: &Catalog, degrees: &str, format: Format) -> Result<String> {
    no_csv(format)?;
    let target = parse_degrees(cat, degrees)?;
    let (n, residues) = corollary_output(cat, &target)?;
    Ok(match format {
        Format::Json => json_text(&json!({ "degrees": target, "modulus": n, "residues": residues })),
        _ => {
            let list: Vec<String> = residues.iter().map(u64::to_string).collect();
            format!("N={n}, residues=[{}]\n", list.join(","))
        }
    })
}

pub fn run_witness(cat: &Catalog, degrees: &str, prime: u64, format: Format) -> Result<String> {
    no_csv(format)?;
    let target = parse_degrees(cat, degrees)?;
    let witness = realizable_at_prime(cat, &target, prime)?;
    Ok(match format {
        Format::Json => json_text(&json!({
            "degrees": target,
            "prime": prime,
            "realizable": witness.is_some(),
            "witness": witness,
        })),
        _ => match witness {
            Some(d) => format!("{d}\n"),
            None => format!("{target} is not realizable at p={prime}\n"),
        },
    })
}

pub fn run_decompose(cat: &Catalog, degrees: &str, prime: Option<u64>, format: Format) -> Result<String> {
    no_csv(format)?;
    let target = parse_degrees(cat, degrees)?;
    let all = match prime {
        Some(p) => decompose_at_prime(cat, &target, p)?,
        None => decompose(cat, &target),
    };
    if format == Format::Json {
        return Ok(json_text(&json!({ "degrees": target, "prime": prime, "decompositions": all })));
    }
    let mut out = String::new();
    for d in &all {
        writeln!(out, "{d}").unwrap();
    }
    if all.is_empty() {
        writeln!(out, "no decompositions").unwrap();
    }
    Ok(out)
}

pub fn run_catalog(cat: &Catalog, format: Format) -> Result<String> {
    no_csv(format)?;
    if format == Format::Json {
        let mut s = cat.to_json();
        s.push('\n');
        return Ok(s);
    }
    let mut out = String::new();
    for t in cat.templates() {
        match t {
            Template::Fixed(e) => writeln!(out, "{:<10} {:<36} {}", e.name, e.degrees.to_string(), e.primes),
            Template::Family(f) => writeln!(
                out,
                "{:<10} {:<36} {}  [{}]",
                f.kind.pattern(),
                format!("{{{}}}", f.kind.degree_formula()),
                f.primes,
                f.constraint_text()
            ),
        }
        .unwrap();
    }
    Ok(out)
}

pub fn run_verify(cat: &Catalog, max_degree: u32, max_count: usize, format: Format) -> Result<String> {
    no_csv(format)?;
    if max_degree < 2 {
        return Err(Error::InvalidParameters("--max-degree must be at least 2".into()));
    }
    let report = verify::run_all(cat, max_degree, max_count)?;
    if format == Format::Json {
        return Ok(json_text(&report));
    }
    let mut out = String::new();
    for s in &report.suites {
        writeln!(out, "{}: {} checked, {} passed, {} failed", s.name, s.checked, s.passed, s.failed).unwrap();
        for f in &s.failures {
            writeln!(out, "  {f}").unwrap();
        }
    }
    writeln!(out, "{}", if report.ok() { "all suites passed" } else { "FAILURES" }).unwrap();
    Ok(out)
}

/// The standard sweep: `m <= 10, r | m, n <= 3` and rank two with
/// `r in {1, m}` plus rank one for `m <= 30`.
pub fn default_sweep(budget: u64) -> Result<Vec<SweepRow>> {
    molien::run_sweep(&molien::sweep_parameters(10, 3, 30), budget)
}

pub fn run_molien_verify(budget: u64, format: Format) -> Result<String> {
    let rows = default_sweep(budget)?;
    let failed = rows.iter().filter(|r| !r.verdict).count();
    Ok(match format {
        Format::Json => json_text(&json!({ "rows": rows, "checked": rows.len(), "failed": failed })),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["m", "r", "n", "claimed_degrees", "verdict", "wall_time_s"]).expect("in-memory write");
            for r in &rows {
                let degrees: Vec<String> = r.claimed.degrees().iter().map(u32::to_string).collect();
                w.write_record([
                    r.m.to_string(),
                    r.r.to_string(),
                    r.n.to_string(),
                    degrees.join(" "),
                    r.verdict.to_string(),
                    format!("{:.6}", r.elapsed.as_secs_f64()),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
        }
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                let name = format!("G({},{},{})", r.m, r.r, r.n);
                writeln!(out, "{name:<12} {:<28} {}", r.claimed.to_string(), if r.verdict { "ok" } else { "MISMATCH" })
                    .unwrap();
            }
            writeln!(out, "{} checked, {} failed", rows.len(), failed).unwrap();
            out
        }
    })
}

/// Runs one parsed command line against the builtin table.
pub fn run(cli: &Cli) -> Result<String> {
    let cat = Catalog::builtin();
    let f = cli.format;
    match &cli.command {
        Command::Check { degrees, ring } => run_check(&cat, degrees, ring, f),
        Command::Primes { degrees } => run_primes(&cat, degrees, f),
        Command::Witness { degrees, prime } => run_witness(&cat, degrees, *prime, f),
        Command::Decompose { degrees, prime } => run_decompose(&cat, degrees, *prime, f),
        Command::Catalog => run_catalog(&cat, f),
        Command::Verify { max_degree, max_count } => run_verify(&cat, *max_degree, *max_count, f),
        Command::MolienVerify { budget } => run_molien_verify(*budget, f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(v: &[u32]) -> DegreeMultiset {
        DegreeMultiset::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn rings() {
        assert_eq!(parse_ring("Z").unwrap(), PrimeSpec::All);
        assert_eq!(parse_ring("Q").unwrap(), PrimeSpec::Finite(vec![]));
        assert_eq!(parse_ring("F_3").unwrap(), PrimeSpec::Finite(vec![3]));
        assert_eq!(parse_ring("F_{7}").unwrap(), PrimeSpec::Finite(vec![7]));
        assert_eq!(parse_ring("Z[1/2]").unwrap(), PrimeSpec::CoFinite(vec![2]));
        assert_eq!(parse_ring("Z[1/6, 1/10]").unwrap(), PrimeSpec::CoFinite(vec![2, 3, 5]));
        assert_eq!(parse_ring("Z[1/1]").unwrap(), PrimeSpec::CoFinite(vec![]));
        assert_eq!(parse_ring("primes=5,2").unwrap(), PrimeSpec::Finite(vec![2, 5]));
        assert_eq!(parse_ring("primes=mod:8:1,3").unwrap(), PrimeSpec::Listable(ResidueSet::new(8, [1, 3]).unwrap()));
        assert_eq!(parse_ring("primes=mod:4:-1").unwrap(), PrimeSpec::Listable(ResidueSet::class(3, 4).unwrap()));
    }

    #[test]
    fn ring_errors() {
        for bad in ["F_4", "Z[1/0]", "Z[2]", "R", "primes=4", "primes=mod:0:1", "primes=mod:8", "F_x", ""] {
            assert!(matches!(parse_ring(bad), Err(Error::RingParse { .. })), "{bad}");
        }
    }

    #[test]
    fn degree_text() {
        let cat = Catalog::builtin();
        assert_eq!(parse_degrees(&cat, "6,4").unwrap(), ds(&[4, 6]));
        assert_eq!(parse_degrees(&cat, "{4, 12}").unwrap(), ds(&[4, 12]));
        assert_eq!(parse_degrees(&cat, "SU(5)+Sp(2)").unwrap(), ds(&[4, 4, 6, 8, 8, 10]));
        assert_eq!(parse_degrees(&cat, "G(6,3,2)").unwrap(), ds(&[8, 12]));
        assert_eq!(parse_degrees(&cat, "G_2 + 2,2").unwrap(), ds(&[2, 2, 4, 12]));
        assert_eq!(parse_degrees(&cat, "").unwrap(), DegreeMultiset::empty());
        assert!(matches!(parse_degrees(&cat, "4,7"), Err(Error::InvalidType(_))));
        assert!(matches!(parse_degrees(&cat, "XY(3)"), Err(Error::DegreeParse { .. })));
        assert!(matches!(parse_degrees(&cat, "4,,6"), Err(Error::DegreeParse { .. })));
        assert!(matches!(parse_degrees(&cat, "SU(3)+"), Err(Error::DegreeParse { .. })));
    }

    #[test]
    fn command_examples() {
        let cat = Catalog::builtin();
        assert_eq!(run_primes(&cat, "4,12", Format::Text).unwrap(), "N=2, residues=[1]\n");
        let check = run_check(&cat, "4,6", "Z", Format::Text).unwrap();
        assert!(check.contains("verdict: realizable"));
        assert!(check.contains("p=2: SU(3)"));
        let check = run_check(&cat, "4,12", "Z", Format::Text).unwrap();
        assert!(check.contains("verdict: not realizable"));
        assert!(check.contains("failing prime: 2"));
        assert_eq!(run_witness(&cat, "4,12", 3, Format::Text).unwrap(), "G_2\n");
        assert_eq!(run_witness(&cat, "4,12", 2, Format::Text).unwrap(), "{4, 12} is not realizable at p=2\n");
        assert!(run_decompose(&cat, "4,12", Some(4), Format::Text).is_err());
        assert!(run_catalog(&cat, Format::Csv).is_err());
    }

    #[test]
    fn clap_surface() {
        let cli = Cli::try_parse_from(["polycoh", "check", "--degrees", "4,6", "--ring", "Z[1/2]", "--format", "json"])
            .unwrap();
        assert_eq!(cli.format, Format::Json);
        assert!(matches!(cli.command, Command::Check { .. }));
        assert!(Cli::try_parse_from(["polycoh", "witness", "--degrees", "4"]).is_err());
        let cli = Cli::try_parse_from(["polycoh", "verify"]).unwrap();
        assert!(matches!(cli.command, Command::Verify { max_degree: 24, max_count: 4 }));
    }
}
