//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arith::is_prime;
use crate::closed_forms::{Params, TheoremId};
use crate::error::{Error, Result};
use crate::graph::{commuting_graph, SimpleGraph};
use crate::limits::Limits;
use crate::ring::{
    additive_quotient_type, center, centralizer_count, commuting_probability, is_cc_ring,
    CcStatus, FiniteRing,
};
use crate::ring_spec::parse_ring_spec;
use crate::spectra::{best_spectrum, classify_with, cn_matrix, msn_matrix, EnergyReport, Integrality, Spectrum};
use crate::verify::{property_suite_clique_unions, reports_to_csv, sweep, verify_ring, Verdict, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "msnring",
    version,
    about = "Commuting graphs of finite rings: MSN/CN spectra, energies and closed-form checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, center, commuting probability, centralizers, CC-ring status.
    RingInfo {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Write the commuting graph (edge list, or JSON when F ends in .json).
    GraphBuild {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Spectrum of the MSN or CN matrix.
    Spectrum {
        #[arg(long, value_enum)]
        matrix: MatrixKind,
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        json: bool,
    },
    /// Decomposition, spectra, energies, integrality and hyperenergy.
    Classify {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        json: bool,
    },
    /// Check one ring against one theorem's closed form.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        spec: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        t: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Verify built-in instances over a grid of primes.
    Sweep {
        /// Comma-separated theorem ids, or `all`.
        #[arg(long, value_delimiter = ',', required = true)]
        theorems: Vec<String>,
        /// Comma-separated primes; `a..b` expands to the primes in [a, b].
        #[arg(long, value_delimiter = ',', required = true)]
        p_range: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        q_range: Vec<String>,
        /// Report file: CSV when it ends in .csv, JSON otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Clique-union oracle equivalence and strict energy inequalities.
    PropertySuite {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MatrixKind {
    Msn,
    Cn,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Graph file (edge list or JSON).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Ring spec; its commuting graph is used.
    #[arg(long)]
    spec: Option<String>,
}

impl GraphInput {
    fn load(&self) -> Result<SimpleGraph> {
        match (&self.graph, &self.spec) {
            (Some(path), _) => SimpleGraph::read_file(path),
            (None, Some(spec)) => commuting_graph(&parse_ring_spec(spec)?),
            (None, None) => unreachable!("clap enforces one input"),
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    let limits = Limits::global();
    match command {
        Command::RingInfo { spec, json } => {
            let ring = parse_ring_spec(&spec)?;
            ring_info(&ring, &spec, json, out)?;
            Ok(EXIT_OK)
        }
        Command::GraphBuild { spec, out: path } => {
            let g = commuting_graph(&parse_ring_spec(&spec)?)?;
            let text = if is_json_path(&path) {
                g.to_json()
            } else {
                g.to_edge_list()
            };
            std::fs::write(&path, text)?;
            writeln!(out, "wrote {} vertices, {} edges to {}", g.n(), g.edge_count(), path.display())?;
            Ok(EXIT_OK)
        }
        Command::Spectrum { matrix, input, json } => {
            let g = input.load()?;
            let m = match matrix {
                MatrixKind::Msn => msn_matrix(&g),
                MatrixKind::Cn => cn_matrix(&g),
            };
            let (spectrum, integrality) = best_spectrum(&m, limits.exact_cap)?;
            if json {
                writeln!(out, "{}", spectrum.to_json())?;
            } else {
                write_spectrum(out, "spectrum", &spectrum)?;
                writeln!(out, "{:<14}{}", "energy", spectrum.energy())?;
                writeln!(out, "{:<14}{}", "integral", integrality_label(integrality))?;
            }
            Ok(EXIT_OK)
        }
        Command::Classify { input, json } => {
            let report = classify_with(&input.load()?, limits.exact_cap)?;
            if json {
                writeln!(out, "{}", report.to_json())?;
            } else {
                write_classification(out, &report)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            theorem,
            spec,
            p,
            q,
            t,
            json,
        } => {
            let theorem: TheoremId = theorem.parse()?;
            let ring = parse_ring_spec(&spec)?;
            let hint = Params {
                p,
                q,
                t,
                ..Params::default()
            };
            let report = verify_ring(&ring, &spec, theorem, &hint);
            if json {
                writeln!(out, "{}", report.to_json())?;
            } else {
                write_report(out, &report)?;
            }
            Ok(match report.verdict {
                Verdict::Pass => EXIT_OK,
                Verdict::Fail(_) | Verdict::HypothesisNotMet(_) => EXIT_FAIL,
                Verdict::Unsupported(_) => EXIT_USAGE,
            })
        }
        Command::Sweep {
            theorems,
            p_range,
            q_range,
            out: path,
        } => {
            let theorems = parse_theorems(&theorems)?;
            let ps = parse_primes(&p_range)?;
            let qs = parse_primes(&q_range)?;
            let reports = sweep(&theorems, &ps, &qs);
            if let Some(path) = &path {
                let text = if path.extension().is_some_and(|e| e == "csv") {
                    reports_to_csv(&reports)?
                } else {
                    let all: Vec<_> = reports.iter().map(VerificationReport::to_json).collect();
                    serde_json::to_string_pretty(&all)? + "\n"
                };
                std::fs::write(path, text)?;
            }
            writeln!(out, "{:<8}{:<38}{:<20}{:<14}detail", "theorem", "ring", "verdict", "energy")?;
            for r in &reports {
                let energy = r
                    .computed
                    .as_ref()
                    .map(|c| c.report.msn_energy.to_string())
                    .unwrap_or_default();
                let ring = if r.ring_spec.is_empty() {
                    let q = r.params.q.map(|q| format!(" q={q}")).unwrap_or_default();
                    format!("(p={}{q})", r.params.p.unwrap_or(0))
                } else {
                    r.ring_spec.clone()
                };
                writeln!(
                    out,
                    "{:<8}{:<38}{:<20}{:<14}{}",
                    r.theorem.as_str(),
                    ring,
                    r.verdict.label(),
                    energy,
                    r.verdict.detail()
                )?;
            }
            let failed = reports
                .iter()
                .any(|r| matches!(r.verdict, Verdict::Fail(_) | Verdict::HypothesisNotMet(_)));
            Ok(if failed { EXIT_FAIL } else { EXIT_OK })
        }
        Command::PropertySuite { seed, trials, json } => {
            if trials == 0 {
                return Err(Error::Parse("--trials must be at least 1".into()));
            }
            let report = property_suite_clique_unions(seed, trials)?;
            if json {
                writeln!(out, "{}", report.to_json())?;
            } else {
                writeln!(
                    out,
                    "seed {seed}: {} unions ({} enumerated, {} sampled), {} passed, {} single cliques excluded from strict checks",
                    report.cases(),
                    report.enumerated,
                    report.sampled,
                    report.passed,
                    report.excluded_from_strict
                )?;
                for (check, n) in report.counts_by_check() {
                    writeln!(out, "  {check:?}: {n} counterexamples")?;
                }
                for c in &report.counterexamples {
                    writeln!(out, "counterexample {} [{:?}]: {}", c.union, c.check, c.detail)?;
                }
            }
            Ok(if report.is_clean() { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

fn is_json_path(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "json")
}

fn parse_theorems(items: &[String]) -> Result<Vec<TheoremId>> {
    if items.iter().any(|s| s.trim().eq_ignore_ascii_case("all")) {
        return Ok(TheoremId::ALL.to_vec());
    }
    items.iter().map(|s| s.parse()).collect()
}

fn parse_primes(items: &[String]) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for item in items.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        let num = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("not a number: {s:?}")))
        };
        if let Some((a, b)) = item.split_once("..") {
            out.extend((num(a)?..=num(b)?).filter(|&x| is_prime(x)));
        } else {
            out.push(num(item)?);
        }
    }
    Ok(out)
}

fn integrality_label(i: Integrality) -> &'static str {
    match i {
        Integrality::Integral => "yes",
        Integrality::NotIntegral => "no",
        Integrality::Undetermined => "undetermined (numeric only)",
    }
}

fn write_spectrum(out: &mut dyn Write, label: &str, s: &Spectrum) -> std::io::Result<()> {
    match s {
        Spectrum::Exact(e) => writeln!(out, "{label:<14}{e}"),
        Spectrum::Numeric(n) => {
            let terms: Vec<String> = n.pairs().iter().map(|(v, m)| format!("[{v:.6}]^{m}")).collect();
            writeln!(out, "{label:<14}{{{}}} (numeric)", terms.join(", "))
        }
    }
}

fn write_classification(out: &mut dyn Write, r: &EnergyReport) -> std::io::Result<()> {
    writeln!(out, "{:<14}{}", "vertices", r.n)?;
    let decomposition = r
        .decomposition
        .as_ref()
        .map(|d| d.to_string())
        .unwrap_or_else(|| "not a clique union".into());
    writeln!(out, "{:<14}{decomposition}", "decomposition")?;
    write_spectrum(out, "MSN spectrum", &r.msn_spectrum)?;
    writeln!(out, "{:<14}{} (K_n: {})", "MSN energy", r.msn_energy, r.reference_energies.0)?;
    write_spectrum(out, "CN spectrum", &r.cn_spectrum)?;
    writeln!(out, "{:<14}{} (K_n: {})", "CN energy", r.cn_energy, r.reference_energies.1)?;
    writeln!(out, "{:<14}{}", "MSN-integral", integrality_label(r.msn_integral))?;
    writeln!(out, "{:<14}{}", "MSN-hyper", yes_no(r.msn_hyperenergetic))?;
    writeln!(out, "{:<14}{}", "CN-hyper", yes_no(r.cn_hyperenergetic))
}

fn write_report(out: &mut dyn Write, r: &VerificationReport) -> std::io::Result<()> {
    writeln!(out, "{} on {}: {}", r.theorem, r.ring_spec, r.verdict)?;
    for h in &r.hypotheses {
        let mark = if h.holds { "ok" } else if h.advisory { "note" } else { "FAILED" };
        writeln!(out, "  hypothesis {:<26}{:<8}{}", h.name, mark, h.detail)?;
    }
    if let Some(c) = &r.computed {
        write_classification(out, &c.report)?;
        if let Some(realized) = &c.realized {
            if !realized.is_empty() {
                writeln!(out, "{:<14}{}", "realized", json!(realized))?;
            }
        }
    }
    if let Some(p) = &r.predicted {
        for a in &p.alternatives {
            writeln!(out, "  admissible {:<30} energy {}", a.decomposition.to_string(), a.energy)?;
        }
        if p.truncated {
            writeln!(out, "  (admissible set truncated at the enumeration cap)")?;
        }
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ring_info(ring: &FiniteRing, spec: &str, json: bool, out: &mut dyn Write) -> Result<()> {
    let z = center(ring);
    let pr = commuting_probability(ring);
    let count = centralizer_count(ring);
    let cc = is_cc_ring(ring);
    let quotient = additive_quotient_type(ring);
    let unity = ring.unity().map(|u| ring.label(u));
    if json {
        let value = json!({
            "ring": spec,
            "name": ring.name(),
            "order": ring.order(),
            "center_size": z.size(),
            "commuting_probability": pr.to_string(),
            "centralizer_count": count,
            "cc_ring": cc,
            "quotient_type": quotient,
            "unity": unity,
            "commutative": ring.is_commutative(),
        });
        writeln!(out, "{value}")?;
        return Ok(());
    }
    let cc_text = match cc {
        CcStatus::CcRing => "yes".to_string(),
        CcStatus::NotCcRing { witness: (x, y) } => {
            format!("no ({} and {} do not commute)", ring.label(x), ring.label(y))
        }
        CcStatus::NotApplicable => "n/a (commutative)".to_string(),
    };
    writeln!(out, "{:<16}{}", "ring", ring.name())?;
    writeln!(out, "{:<16}{}", "order", ring.order())?;
    writeln!(out, "{:<16}{}", "|Z(R)|", z.size())?;
    writeln!(out, "{:<16}{}", "Pr(R)", pr)?;
    writeln!(out, "{:<16}{}", "centralizers", count)?;
    writeln!(out, "{:<16}{}", "CC-ring", cc_text)?;
    let q: Vec<String> = quotient.iter().map(|d| format!("Z_{d}")).collect();
    let q = if q.is_empty() { "trivial".to_string() } else { q.join(" x ") };
    writeln!(out, "{:<16}{}", "R/Z(R)", q)?;
    writeln!(out, "{:<16}{}", "unity", unity.as_deref().unwrap_or("none"))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("msnring").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn prime_lists() {
        let items: Vec<String> = ["2", "5..13"].iter().map(|s| s.to_string()).collect();
        assert_eq!(parse_primes(&items).unwrap(), vec![2, 5, 7, 11, 13]);
        assert!(parse_primes(&["x".to_string()]).is_err());
    }

    #[test]
    fn spectrum_json_for_three_isolated_vertices() {
        let (code, out, _) = run(&["spectrum", "--matrix", "msn", "--spec", "nc_p2:p=2", "--json"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"exact":true,"pairs":[[0,3]]}"#);
    }

    #[test]
    fn unknown_flags_are_usage_errors() {
        let (code, _, err) = run(&["classify", "--spec", "mat2:p=2", "--bogus"]);
        assert_eq!(code, 2);
        assert!(err.contains("--bogus") && err.contains("Usage:"), "{err}");
        let (code, _, _) = run(&["classify"]);
        assert_eq!(code, 2);
    }
}
