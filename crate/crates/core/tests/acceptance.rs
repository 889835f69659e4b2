//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! run with `cargo test --test acceptance -- --nocapture` to see them.

use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use msnring::closed_forms::{Params, TheoremId};
use msnring::graph::{commuting_graph, SimpleGraph};
use msnring::ring::{
    center, centralizer_count, commuting_probability, direct_product, is_cc_ring, matrix_ring_2x2,
    noncentral_centralizers, ring_noncomm_p2, ring_zn, upper_triangular_ring, FiniteRing,
};
use msnring::spectra::{cn_matrix, exact_spectrum, msn_matrix, numeric_spectrum, Energy, ExactOutcome};
use msnring::{classify, sweep, verify_ring, Verdict};

const AGREEMENT_TOL: f64 = 1e-6;

struct Outcome {
    failures: Vec<String>,
    elapsed: Duration,
    budget: Duration,
}

fn run(budget_secs: u64, f: impl FnOnce(&mut Vec<String>)) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    f(&mut failures);
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_secs);
    if elapsed > budget {
        failures.push(format!("took {elapsed:.2?}, budget {budget:?}"));
    }
    Outcome { failures, elapsed, budget }
}

fn ut2_times_zn(p: u64, n: u64) -> FiniteRing {
    direct_product(&upper_triangular_ring(p).unwrap(), &ring_zn(n).unwrap()).unwrap()
}

/// Runs `verify_ring` and demands PASS with the expected decomposition and
/// an exactly computed energy.
fn expect_pass(
    failures: &mut Vec<String>,
    ring: &FiniteRing,
    spec: &str,
    theorem: TheoremId,
    hint: Params,
    decomposition: &str,
    energy: i64,
) {
    let report = verify_ring(ring, spec, theorem, &hint);
    if !report.verdict.is_pass() {
        failures.push(format!("{theorem} on {spec}: {}", report.verdict));
    }
    let Some(computed) = &report.computed else {
        failures.push(format!("{theorem} on {spec}: nothing computed"));
        return;
    };
    let got = computed.report.decomposition.as_ref().map(|d| d.to_string());
    if got.as_deref() != Some(decomposition) {
        failures.push(format!("{spec}: decomposition {got:?}, expected {decomposition}"));
    }
    if computed.report.msn_energy != Energy::Exact(energy) {
        failures.push(format!("{spec}: E_sn = {}, expected {energy}", computed.report.msn_energy));
    }
}

fn criterion_1(failures: &mut Vec<String>) {
    for n in 2..=12u64 {
        let g = SimpleGraph::complete(n as usize);
        let k = (n - 1) as i64;
        match exact_spectrum(&msn_matrix(&g)).unwrap() {
            ExactOutcome::Integral(s) => {
                let expected = vec![(-k * k, n - 1), (k * k * k, 1)];
                if s.pairs() != expected.as_slice() {
                    failures.push(format!("K{n}: MSN spectrum {s}, expected {expected:?}"));
                }
                if s.energy() != 2 * k.pow(3) {
                    failures.push(format!("K{n}: E_sn = {}, expected {}", s.energy(), 2 * k.pow(3)));
                }
            }
            other => failures.push(format!("K{n}: MSN not integral: {other:?}")),
        }
        match exact_spectrum(&cn_matrix(&g)).unwrap() {
            ExactOutcome::Integral(s) if s.energy() == 2 * k * (k - 1) => {}
            other => failures.push(format!("K{n}: CN spectrum {other:?}, expected energy {}", 2 * k * (k - 1))),
        }
    }
}

fn criterion_2(failures: &mut Vec<String>) {
    for (p, energy) in [(2u64, 0i64), (3, 8), (5, 324)] {
        let ring = ring_noncomm_p2(p).unwrap();
        let decomposition = format!("{}K{}", p + 1, p - 1);
        expect_pass(failures, &ring, &format!("nc_p2:p={p}"), TheoremId::C2_4a, Params::with_p(p), &decomposition, energy);
    }
}

fn criterion_3(failures: &mut Vec<String>) {
    for (p, decomposition, energy) in [(2u64, "3K2", 6i64), (3, "4K6", 1000), (5, "6K20", 82308)] {
        let ring = upper_triangular_ring(p).unwrap();
        expect_pass(failures, &ring, &format!("ut2:p={p}"), TheoremId::C2_4b, Params::with_p(p), decomposition, energy);
    }
}

fn criterion_4(failures: &mut Vec<String>) {
    for (p, decomposition, energy) in [(2u64, "7K2", 14i64), (3, "13K6", 3250)] {
        let ring = matrix_ring_2x2(p).unwrap();
        expect_pass(failures, &ring, &format!("mat2:p={p}"), TheoremId::T3_1a, Params::with_p(p), decomposition, energy);
    }
}

fn criterion_5(failures: &mut Vec<String>) {
    let ring = ut2_times_zn(2, 2);
    expect_pass(failures, &ring, "prod(ut2:p=2,zn:n=2)", TheoremId::T3_1b, Params::with_p(2), "3K4", 162);
}

fn criterion_6(failures: &mut Vec<String>) {
    let ring = direct_product(&matrix_ring_2x2(2).unwrap(), &ring_zn(2).unwrap()).unwrap();
    expect_pass(failures, &ring, "prod(mat2:p=2,zn:n=2)", TheoremId::T3_3a, Params::with_p(2), "7K4", 378);
}

fn criterion_7(failures: &mut Vec<String>) {
    let ring = ut2_times_zn(2, 3);
    expect_pass(failures, &ring, "prod(ut2:p=2,zn:n=3)", TheoremId::T4_3, Params::with_pq(2, 3), "3K6", 750);
}

fn criterion_8(failures: &mut Vec<String>) {
    for p in [2u64, 3, 5] {
        let ring = ring_noncomm_p2(p).unwrap();
        let got = commuting_probability(&ring);
        let expected = Ratio::new(p * p + p - 1, p * p * p);
        if got != expected {
            failures.push(format!("Pr(nc_p2:p={p}) = {got}, expected {expected}"));
        }
    }
    let count = centralizer_count(&ring_noncomm_p2(2).unwrap());
    if count != 4 {
        failures.push(format!("centralizer count of nc_p2:p=2 is {count}, expected 4"));
    }
}

fn criterion_9(failures: &mut Vec<String>) {
    let instances: Vec<(String, FiniteRing)> = vec![
        ("nc_p2:p=2".into(), ring_noncomm_p2(2).unwrap()),
        ("nc_p2:p=3".into(), ring_noncomm_p2(3).unwrap()),
        ("nc_p2:p=5".into(), ring_noncomm_p2(5).unwrap()),
        ("ut2:p=2".into(), upper_triangular_ring(2).unwrap()),
        ("ut2:p=3".into(), upper_triangular_ring(3).unwrap()),
        ("ut2:p=5".into(), upper_triangular_ring(5).unwrap()),
        ("mat2:p=2".into(), matrix_ring_2x2(2).unwrap()),
        ("mat2:p=3".into(), matrix_ring_2x2(3).unwrap()),
        ("prod(ut2:p=2,zn:n=2)".into(), ut2_times_zn(2, 2)),
        (
            "prod(mat2:p=2,zn:n=2)".into(),
            direct_product(&matrix_ring_2x2(2).unwrap(), &ring_zn(2).unwrap()).unwrap(),
        ),
        ("prod(ut2:p=2,zn:n=3)".into(), ut2_times_zn(2, 3)),
    ];
    for (spec, ring) in instances {
        if !is_cc_ring(&ring).is_cc_ring() {
            failures.push(format!("{spec} is not a CC-ring"));
            continue;
        }
        let m = center(&ring).size() as i64;
        let expected: i64 = noncentral_centralizers(&ring)
            .iter()
            .map(|s| 2 * (s.size() as i64 - m - 1).pow(3))
            .sum();
        let report = classify(&commuting_graph(&ring).unwrap()).unwrap();
        if report.msn_energy != Energy::Exact(expected) {
            failures.push(format!("{spec}: E_sn = {}, centralizer sum gives {expected}", report.msn_energy));
        }
    }
}

fn criterion_10(failures: &mut Vec<String>) {
    let report = msnring::property_suite_clique_unions(2024, 500).unwrap();
    if report.enumerated != 271 || report.sampled < 500 {
        failures.push(format!("enumerated {} and sampled {}", report.enumerated, report.sampled));
    }
    let counts = report.counts_by_check();
    if !counts.is_empty() {
        let mut examples: Vec<String> = Vec::new();
        for c in &report.counterexamples {
            if !examples.iter().any(|e| e.starts_with(&format!("{:?}", c.check))) {
                examples.push(format!("{:?} e.g. {}: {}", c.check, c.union, c.detail));
            }
        }
        failures.push(format!(
            "{} counterexamples over {} cases {counts:?}; {}",
            report.counterexamples.len(),
            report.cases(),
            examples.join("; ")
        ));
    }
}

fn random_graph(rng: &mut ChaCha8Rng) -> SimpleGraph {
    let n = rng.gen_range(1..=24);
    let density: f64 = rng.gen_range(0.1..0.9);
    let mut g = SimpleGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn criterion_11(failures: &mut Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut compared = 0usize;
    for trial in 0..200 {
        let g = random_graph(&mut rng);
        for (name, m) in [("MSN", msn_matrix(&g)), ("CN", cn_matrix(&g))] {
            let roots = match exact_spectrum(&m).unwrap() {
                ExactOutcome::Integral(s) => s,
                ExactOutcome::NotFullyIntegral { roots, .. } => roots,
            };
            let numeric = numeric_spectrum(&m).unwrap();
            for &(value, mult) in roots.pairs() {
                compared += 1;
                let hit = numeric
                    .pairs()
                    .iter()
                    .any(|&(x, k)| (x - value as f64).abs() <= AGREEMENT_TOL && k == mult);
                if !hit {
                    failures.push(format!(
                        "graph {trial} (n={}) {name}: eigenvalue {value} x{mult} has no matching cluster",
                        g.n()
                    ));
                }
            }
        }
    }
    if compared == 0 {
        failures.push("no integer eigenvalues compared".into());
    }
}

fn criterion_12(failures: &mut Vec<String>) {
    let p3 = SimpleGraph::path(3);
    let m = msn_matrix(&p3);
    if !m.is_zero() {
        failures.push(format!("P3 MSN matrix is {:?}", m.rows()));
    }
    if classify(&p3).unwrap().msn_energy != Energy::Exact(0) {
        failures.push("P3 E_sn is not 0".into());
    }
    let zn = ring_zn(6).unwrap();
    for theorem in [TheoremId::T2_1, TheoremId::T3_1a, TheoremId::T5_1] {
        let report = verify_ring(&zn, "zn:n=6", theorem, &Params::default());
        if !matches!(report.verdict, Verdict::HypothesisNotMet(_)) {
            failures.push(format!("{theorem} on zn:n=6: {}", report.verdict));
        }
    }
    let reports = sweep(&[TheoremId::T4_1a, TheoremId::T4_1b], &[2, 3, 5], &[3, 5, 7]);
    if reports.is_empty() {
        failures.push("T4_1 sweep is empty".into());
    }
    for r in reports {
        if !matches!(r.verdict, Verdict::Unsupported(_)) {
            failures.push(format!("{} sweep at {:?}: {}", r.theorem, r.params, r.verdict));
        }
    }
}

#[test]
fn acceptance() {
    type Check = fn(&mut Vec<String>);
    let criteria: [(u32, &str, u64, Check); 12] = [
        (1, "complete-graph baselines", 1, criterion_1),
        (2, "order p^2 rings", 5, criterion_2),
        (3, "order p^3 rings with unity", 10, criterion_3),
        (4, "order p^4 rings, |Z| = p", 10, criterion_4),
        (5, "order p^4 rings, |Z| = p^2", 5, criterion_5),
        (6, "order p^5 rings, |Z| = p^2", 10, criterion_6),
        (7, "order p^3 q rings, |Z| = pq", 5, criterion_7),
        (8, "commuting probability and centralizer counts", 5, criterion_8),
        (9, "centralizer energy identity on CC-rings", 10, criterion_9),
        (10, "clique-union property suite", 60, criterion_10),
        (11, "exact/numeric agreement", 60, criterion_11),
        (12, "negative controls", 5, criterion_12),
    ];
    let mut failed = Vec::new();
    for (id, name, budget, check) in criteria {
        let outcome = run(budget, check);
        let status = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {id:>2} {status} {name} ({:.2?} of {:?})",
            outcome.elapsed, outcome.budget
        );
        for f in &outcome.failures {
            println!("    {f}");
        }
        if !outcome.failures.is_empty() {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
