//! Cross-checks of direct computation against the closed forms, ring sweeps,
//! and the clique-union property suite.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{factorize, is_prime, prime_power, smallest_prime_divisor};
use crate::closed_forms::{
    cn_energy_clique_union, eq1_spectrum, eq2_energy, predict, reference_energies,
    ClosedFormPrediction, Params, TheoremId,
};
use crate::error::{Error, Result};
use crate::graph::{commuting_graph, CliqueUnion};
use crate::limits::Limits;
use crate::ring::{
    additive_quotient_type, center, centralizer_count, commuting_probability, is_cc_ring,
    is_field, noncentral_centralizers, CcStatus, FiniteRing,
};
use crate::ring_spec::parse_ring_spec;
use crate::spectra::{
    classify_with, cn_matrix, exact_spectrum_by_blocks, msn_matrix, numeric_spectrum_by_blocks,
    EnergyReport, ExactOutcome, Integrality,
};

/// Tolerance for the numeric re-check of an exact spectrum.
pub const NUMERIC_AGREEMENT_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    HypothesisNotMet(String),
    Unsupported(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail(_) => "FAIL",
            Verdict::HypothesisNotMet(_) => "HYPOTHESIS_NOT_MET",
            Verdict::Unsupported(_) => "UNSUPPORTED",
        }
    }

    pub fn detail(&self) -> &str {
        match self {
            Verdict::Pass => "",
            Verdict::Fail(d) | Verdict::HypothesisNotMet(d) | Verdict::Unsupported(d) => d,
        }
    }

    pub fn is_pass(&self) -> bool {
        *self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("PASS"),
            other => write!(f, "{}: {}", other.label(), other.detail()),
        }
    }
}

/// One hypothesis of a theorem evaluated on a ring. Advisory checks are
/// recorded but do not gate the verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
    pub advisory: bool,
}

impl HypothesisCheck {
    fn new(name: &str, holds: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.to_string(),
            holds,
            detail: detail.into(),
            advisory: false,
        }
    }
}

/// What was computed directly from the ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Computed {
    pub order: usize,
    pub center_size: usize,
    pub report: EnergyReport,
    /// The block-wise characteristic polynomial agrees with `report`.
    pub exact_crosscheck: Option<bool>,
    /// A block-wise Jacobi solve reproduces the exact spectrum within
    /// [`NUMERIC_AGREEMENT_TOL`].
    pub numeric_crosscheck: Option<bool>,
    /// Coefficients of the admissible alternative the ring realizes.
    pub realized: Option<BTreeMap<String, u64>>,
}

impl Computed {
    pub fn to_json(&self) -> Value {
        let mut v = self.report.to_json();
        let obj = v.as_object_mut().expect("report serializes to an object");
        obj.insert("order".into(), json!(self.order));
        obj.insert("center_size".into(), json!(self.center_size));
        obj.insert("exact_crosscheck".into(), json!(self.exact_crosscheck));
        obj.insert("numeric_crosscheck".into(), json!(self.numeric_crosscheck));
        obj.insert("realized".into(), json!(self.realized));
        v
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub ring_spec: String,
    pub params: Params,
    pub hypotheses: Vec<HypothesisCheck>,
    pub computed: Option<Computed>,
    pub predicted: Option<ClosedFormPrediction>,
    pub verdict: Verdict,
}

impl VerificationReport {
    fn bare(theorem: TheoremId, ring_spec: &str, params: Params, verdict: Verdict) -> Self {
        Self {
            theorem,
            ring_spec: ring_spec.to_string(),
            params,
            hypotheses: Vec::new(),
            computed: None,
            predicted: None,
            verdict,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theorem": self.theorem,
            "ring": self.ring_spec,
            "params": self.params.to_json(),
            "verdict": self.verdict.label(),
            "detail": self.verdict.detail(),
            "hypotheses": self.hypotheses,
            "computed": self.computed.as_ref().map(Computed::to_json),
            "predicted": self.predicted.as_ref().map(ClosedFormPrediction::to_json),
        })
    }

    pub const CSV_HEADER: [&'static str; 10] = [
        "theorem",
        "ring",
        "p",
        "q",
        "m",
        "verdict",
        "decomposition",
        "msn_energy",
        "predicted_energies",
        "detail",
    ];

    pub fn csv_record(&self) -> [String; 10] {
        let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        let decomposition = self
            .computed
            .as_ref()
            .and_then(|c| c.report.decomposition.as_ref().map(|d| d.to_string()))
            .unwrap_or_default();
        let energy = self
            .computed
            .as_ref()
            .map(|c| c.report.msn_energy.to_string())
            .unwrap_or_default();
        let predicted = self
            .predicted
            .as_ref()
            .map(|p| {
                p.alternatives
                    .iter()
                    .map(|a| a.energy.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .unwrap_or_default();
        [
            self.theorem.to_string(),
            self.ring_spec.clone(),
            opt(self.params.p),
            opt(self.params.q),
            opt(self.params.m),
            self.verdict.label().to_string(),
            decomposition,
            energy,
            predicted,
            self.verdict.detail().to_string(),
        ]
    }
}

/// Writes reports as CSV, one row per report.
pub fn reports_to_csv(reports: &[VerificationReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Parse(format!("csv: {e}"));
    w.write_record(VerificationReport::CSV_HEADER).map_err(csv_err)?;
    for r in reports {
        w.write_record(r.csv_record()).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// `order = p^a` for a prime `p`, taking a user-supplied `p` if present.
fn prime_power_shape(order: u64, exponent: u32, hint: Option<u64>) -> Option<u64> {
    match hint {
        Some(p) => (is_prime(p) && p.checked_pow(exponent) == Some(order)).then_some(p),
        None => match prime_power(order) {
            Some((p, k)) if k == exponent => Some(p),
            _ => None,
        },
    }
}

/// `order = p^a q` for primes `p`, `q` (not necessarily distinct).
fn mixed_shape(order: u64, a: u32, p_hint: Option<u64>, q_hint: Option<u64>) -> Option<(u64, u64)> {
    let fits = |p: u64, q: u64| {
        is_prime(p) && is_prime(q) && p.checked_pow(a).and_then(|x| x.checked_mul(q)) == Some(order)
    };
    if let (Some(p), Some(q)) = (p_hint, q_hint) {
        return fits(p, q).then_some((p, q));
    }
    let candidates: Vec<(u64, u64)> = match factorize(order).as_slice() {
        [(p, k)] if *k == a + 1 => vec![(*p, *p)],
        [(x, kx), (y, ky)] => {
            let mut c = Vec::new();
            if *kx == a && *ky == 1 {
                c.push((*x, *y));
            }
            if *ky == a && *kx == 1 {
                c.push((*y, *x));
            }
            c
        }
        _ => Vec::new(),
    };
    candidates
        .into_iter()
        .find(|&(p, q)| p_hint.map_or(true, |h| h == p) && q_hint.map_or(true, |h| h == q))
}

fn shape_check(name: &str, found: Option<String>, order: u64) -> HypothesisCheck {
    match found {
        Some(detail) => HypothesisCheck::new(name, true, detail),
        None => HypothesisCheck::new(name, false, format!("|R| = {order} does not have this form")),
    }
}

fn unity_check(ring: &FiniteRing) -> HypothesisCheck {
    match ring.unity() {
        Some(u) => HypothesisCheck::new("unity", true, format!("1 = {}", ring.label(u))),
        None => HypothesisCheck::new("unity", false, "no multiplicative identity"),
    }
}

fn center_size_check(m: u64, expected: Option<u64>, what: &str) -> HypothesisCheck {
    match expected {
        Some(e) => HypothesisCheck::new(
            &format!("|Z(R)| = {what}"),
            m == e,
            format!("|Z(R)| = {m}, {what} = {e}"),
        ),
        None => HypothesisCheck::new(&format!("|Z(R)| = {what}"), false, "shape unresolved"),
    }
}

/// Evaluates the hypotheses of `theorem` on `ring` and derives the symbols
/// the closed form needs.
fn hypotheses(ring: &FiniteRing, theorem: TheoremId, hint: &Params) -> (Vec<HypothesisCheck>, Params) {
    use TheoremId::*;
    let order = ring.order() as u64;
    let z = center(ring);
    let m = z.size() as u64;
    let mut params = Params {
        m: Some(m),
        t: hint.t,
        ..Params::default()
    };
    let mut checks = Vec::new();
    match theorem {
        T2_1 => {
            let q = additive_quotient_type(ring);
            let ok = q.len() == 2 && q[0] == q[1] && is_prime(q[0]);
            let ok = ok && hint.p.map_or(true, |p| p == q[0]);
            checks.push(HypothesisCheck::new(
                "R/Z(R) ≅ Z_p × Z_p",
                ok,
                format!("additive invariant factors of R/Z(R): {q:?}"),
            ));
            if ok {
                params.p = Some(q[0]);
            }
        }
        C2_2a | C2_2b | C2_2c | C2_2d => {
            let n = centralizer_count(ring) as u64;
            let (expected, p) = match theorem {
                C2_2a => (Some(4), Some(2)),
                C2_2b => (Some(5), Some(3)),
                C2_2c => (Some(7), Some(5)),
                _ => {
                    let p = prime_power(order).map(|(p, _)| p).filter(|&p| hint.p.map_or(true, |h| h == p));
                    checks.push(shape_check(
                        "|R| = p^k",
                        p.map(|p| format!("|R| = {order}, p = {p}")),
                        order,
                    ));
                    (p.map(|p| p + 2), p)
                }
            };
            let name = match expected {
                Some(e) => format!("{e}-centralizer ring"),
                None => "(p+2)-centralizer ring".to_string(),
            };
            checks.push(HypothesisCheck::new(
                &name,
                expected == Some(n),
                format!("R has {n} distinct centralizers"),
            ));
            params.p = p;
        }
        C2_3a | C2_3b => {
            let pr = commuting_probability(ring);
            let p = match theorem {
                C2_3a => 2,
                _ => smallest_prime_divisor(order).unwrap_or(0),
            };
            let target = if p >= 2 {
                Some(Ratio::new(p * p + p - 1, p * p * p))
            } else {
                None
            };
            checks.push(HypothesisCheck::new(
                "Pr(R) = (p^2+p-1)/p^3",
                target == Some(pr),
                format!("Pr(R) = {pr}, p = {p}"),
            ));
            params.p = Some(p);
        }
        C2_4a => {
            let p = prime_power_shape(order, 2, hint.p);
            checks.push(shape_check("|R| = p^2", p.map(|p| format!("p = {p}")), order));
            params.p = p;
        }
        C2_4b => {
            checks.push(unity_check(ring));
            let p = prime_power_shape(order, 3, hint.p);
            checks.push(shape_check("|R| = p^3", p.map(|p| format!("p = {p}")), order));
            params.p = p;
        }
        T3_1a | T3_1b | T3_3a | T3_3b => {
            checks.push(unity_check(ring));
            let exponent = if matches!(theorem, T3_1a | T3_1b) { 4 } else { 5 };
            let p = prime_power_shape(order, exponent, hint.p);
            checks.push(shape_check(
                &format!("|R| = p^{exponent}"),
                p.map(|p| format!("p = {p}")),
                order,
            ));
            if matches!(theorem, T3_3a | T3_3b) {
                let field = is_field(ring, &z);
                checks.push(HypothesisCheck {
                    advisory: true,
                    ..HypothesisCheck::new(
                        "Z(R) is not a field",
                        !field,
                        if field { "Z(R) is a field" } else { "Z(R) is not a field" },
                    )
                });
            }
            let (what, power) = match theorem {
                T3_1a => ("p", 1),
                T3_1b | T3_3a => ("p^2", 2),
                _ => ("p^3", 3),
            };
            checks.push(center_size_check(m, p.map(|p| p.pow(power)), what));
            params.p = p;
        }
        T4_1a | T4_1b => {
            let pq = mixed_shape(order, 2, hint.p, hint.q);
            checks.push(shape_check(
                "|R| = p^2 q",
                pq.map(|(p, q)| format!("p = {p}, q = {q}")),
                order,
            ));
            checks.push(HypothesisCheck::new("Z(R) = {0}", m == 1, format!("|Z(R)| = {m}")));
            if let Some((p, q)) = pq {
                params.p = Some(p);
                params.q = Some(q);
            }
        }
        T4_3 | T4_4a | T4_4b | T4_4c => {
            checks.push(unity_check(ring));
            let pq = mixed_shape(order, 3, hint.p, hint.q);
            checks.push(shape_check(
                "|R| = p^3 q",
                pq.map(|(p, q)| format!("p = {p}, q = {q}")),
                order,
            ));
            let (what, expected) = if theorem == T4_3 {
                ("pq", pq.map(|(p, q)| p * q))
            } else {
                ("p^2", pq.map(|(p, _)| p * p))
            };
            checks.push(center_size_check(m, expected, what));
            if let Some((p, q)) = pq {
                params.p = Some(p);
                params.q = Some(q);
            }
        }
        T5_1 => {
            let status = is_cc_ring(ring);
            let detail = match status {
                CcStatus::CcRing => "every non-central centralizer is commutative".to_string(),
                CcStatus::NotCcRing { witness: (x, y) } => format!(
                    "{} and {} share a centralizer but do not commute",
                    ring.label(x),
                    ring.label(y)
                ),
                CcStatus::NotApplicable => "ring is commutative".to_string(),
            };
            checks.push(HypothesisCheck::new("CC-ring", status.is_cc_ring(), detail));
            if status.is_cc_ring() {
                params.centralizer_sizes = Some(
                    noncentral_centralizers(ring)
                        .iter()
                        .map(|s| s.size() as u64)
                        .collect(),
                );
            }
        }
    }
    (checks, params)
}

pub fn verify_ring(ring: &FiniteRing, ring_spec: &str, theorem: TheoremId, hint: &Params) -> VerificationReport {
    verify_ring_with(ring, ring_spec, theorem, hint, Limits::global())
}

pub fn verify_ring_with(
    ring: &FiniteRing,
    ring_spec: &str,
    theorem: TheoremId,
    hint: &Params,
    limits: &Limits,
) -> VerificationReport {
    if ring.is_commutative() {
        return VerificationReport::bare(
            theorem,
            ring_spec,
            hint.clone(),
            Verdict::HypothesisNotMet("ring is commutative".into()),
        );
    }
    let (checks, params) = hypotheses(ring, theorem, hint);
    let mut report = VerificationReport {
        hypotheses: checks,
        ..VerificationReport::bare(theorem, ring_spec, params.clone(), Verdict::Pass)
    };
    let failed: Vec<String> = report
        .hypotheses
        .iter()
        .filter(|c| !c.holds && !c.advisory)
        .map(|c| format!("{} ({})", c.name, c.detail))
        .collect();
    if !failed.is_empty() {
        report.verdict = Verdict::HypothesisNotMet(failed.join("; "));
        return report;
    }
    let prediction = match predict(theorem, &params) {
        Ok(p) => p,
        Err(Error::HypothesisViolated(msg)) => {
            report.verdict = Verdict::HypothesisNotMet(msg);
            return report;
        }
        Err(e) => {
            report.verdict = Verdict::Unsupported(e.to_string());
            return report;
        }
    };
    report.params = prediction.params.clone();
    match compute(ring, limits) {
        Ok(computed) => {
            report.verdict = compare(&computed, &prediction);
            report.computed = Some(Computed {
                realized: computed
                    .report
                    .decomposition
                    .as_ref()
                    .and_then(|d| prediction.find(d))
                    .map(|a| a.coefficients.clone()),
                ..computed
            });
        }
        Err(e) => report.verdict = Verdict::Unsupported(e.to_string()),
    }
    report.predicted = Some(prediction);
    report
}

fn compute(ring: &FiniteRing, limits: &Limits) -> Result<Computed> {
    let g = commuting_graph(ring)?;
    let report = classify_with(&g, limits.exact_cap)?;
    let msn = msn_matrix(&g);
    let (exact_crosscheck, numeric_crosscheck) = match exact_spectrum_by_blocks(&msn, limits.exact_cap) {
        Ok(ExactOutcome::Integral(s)) => {
            let exact_ok = report.msn_spectrum.exact() == Some(&s);
            let numeric = numeric_spectrum_by_blocks(&msn)?;
            let numeric_ok = numeric.pairs().len() == s.pairs().len()
                && numeric.matches_exact(s.pairs(), NUMERIC_AGREEMENT_TOL);
            (Some(exact_ok), Some(numeric_ok))
        }
        Ok(ExactOutcome::NotFullyIntegral { .. }) => (Some(report.msn_integral == Integrality::NotIntegral), None),
        Err(Error::ExactCapExceeded { .. }) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(Computed {
        order: ring.order(),
        center_size: center(ring).size(),
        report,
        exact_crosscheck,
        numeric_crosscheck,
        realized: None,
    })
}

fn compare(computed: &Computed, prediction: &ClosedFormPrediction) -> Verdict {
    let report = &computed.report;
    let Some(decomposition) = &report.decomposition else {
        return Verdict::Fail("commuting graph is not a disjoint union of cliques".into());
    };
    let Some(alt) = prediction.find(decomposition) else {
        let admissible: Vec<String> = prediction
            .alternatives
            .iter()
            .map(|a| a.decomposition.to_string())
            .collect();
        let mut msg = format!(
            "computed {decomposition} is not in the admissible set {{{}}}",
            admissible.join(", ")
        );
        if prediction.truncated {
            msg.push_str(" (admissible set truncated at the enumeration cap)");
        }
        return Verdict::Fail(msg);
    };
    let mut problems = Vec::new();
    match report.msn_spectrum.exact() {
        Some(s) if *s == alt.spectrum => {}
        Some(s) => problems.push(format!(
            "MSN spectrum {s} differs from predicted {}",
            alt.spectrum
        )),
        None => problems.push("MSN spectrum was not computed exactly".into()),
    }
    if report.msn_energy.as_f64() != alt.energy as f64 {
        problems.push(format!(
            "MSN energy {} differs from predicted {}",
            report.msn_energy, alt.energy
        ));
    }
    if report.msn_integral != Integrality::Integral {
        problems.push("graph is not MSN-integral".into());
    }
    if report.msn_hyperenergetic {
        problems.push(format!(
            "graph is MSN-hyperenergetic: {} > E_sn(K_{}) = {}",
            report.msn_energy, report.n, report.reference_energies.0
        ));
    }
    if computed.exact_crosscheck == Some(false) {
        problems.push("characteristic polynomial disagrees with the reported spectrum".into());
    }
    if computed.numeric_crosscheck == Some(false) {
        problems.push("numeric eigensolve disagrees with the exact spectrum".into());
    }
    if problems.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail(problems.join("; "))
    }
}

fn uses_q(theorem: TheoremId) -> bool {
    use TheoremId::*;
    matches!(theorem, T4_1a | T4_1b | T4_3 | T4_4a | T4_4b | T4_4c)
}

/// Ring spec of the built-in instance for `(theorem, p, q)`, or why there
/// is none.
pub fn builtin_instance(theorem: TheoremId, p: u64, q: Option<u64>) -> std::result::Result<String, String> {
    use TheoremId::*;
    let fixed = |expected: u64| {
        if p == expected {
            Ok(format!("nc_p2:p={p}"))
        } else {
            Err(format!("{theorem} fixes p = {expected}"))
        }
    };
    match theorem {
        C2_2a | C2_3a => fixed(2),
        C2_2b => fixed(3),
        C2_2c => fixed(5),
        T2_1 | C2_2d | C2_3b | C2_4a => Ok(format!("nc_p2:p={p}")),
        C2_4b => Ok(format!("ut2:p={p}")),
        T3_1a | T5_1 => Ok(format!("mat2:p={p}")),
        T3_1b => Ok(format!("prod(ut2:p={p},zn:n={p})")),
        T3_3a => Ok(format!("prod(mat2:p={p},zn:n={p})")),
        T3_3b => Ok(format!("prod(prod(ut2:p={p},zn:n={p}),zn:n={p})")),
        T4_1a | T4_1b => Err(format!(
            "no built-in ring of order p^2 q with zero center; supply a table ring with file:PATH"
        )),
        T4_3 => match q {
            Some(q) => Ok(format!("prod(ut2:p={p},zn:n={q})")),
            None => Err("T4_3 needs q".into()),
        },
        T4_4a | T4_4b | T4_4c => match q {
            Some(q) if q == p => Ok(format!("prod(ut2:p={p},zn:n={p})")),
            Some(q) => Err(format!(
                "no built-in ring of order p^3 q with |Z(R)| = p^2 for p = {p}, q = {q}"
            )),
            None => Err(format!("{theorem} needs q")),
        },
    }
}

/// Runs [`verify_ring`] over the grid, ordered by theorem, then p, then q.
pub fn sweep(theorems: &[TheoremId], ps: &[u64], qs: &[u64]) -> Vec<VerificationReport> {
    let mut theorems = theorems.to_vec();
    theorems.sort_unstable();
    theorems.dedup();
    let mut ps = ps.to_vec();
    ps.sort_unstable();
    ps.dedup();
    let mut qs = qs.to_vec();
    qs.sort_unstable();
    qs.dedup();
    let mut out = Vec::new();
    for &theorem in &theorems {
        for &p in &ps {
            let q_values: Vec<Option<u64>> = if uses_q(theorem) {
                if qs.is_empty() {
                    vec![None]
                } else {
                    qs.iter().copied().map(Some).collect()
                }
            } else {
                vec![None]
            };
            for q in q_values {
                out.push(sweep_one(theorem, p, q));
            }
        }
    }
    out
}

fn sweep_one(theorem: TheoremId, p: u64, q: Option<u64>) -> VerificationReport {
    let hint = Params {
        p: Some(p),
        q,
        ..Params::default()
    };
    let spec = match builtin_instance(theorem, p, q) {
        Ok(spec) => spec,
        Err(reason) => {
            return VerificationReport::bare(theorem, "", hint, Verdict::Unsupported(reason));
        }
    };
    match parse_ring_spec(&spec) {
        Ok(ring) => verify_ring(&ring, &spec, theorem, &hint),
        Err(e) => VerificationReport::bare(theorem, &spec, hint, Verdict::Unsupported(e.to_string())),
    }
}

/// Which property of a clique union failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyCheck {
    /// (a) exact MSN spectrum equals Eq. (1)
    MsnSpectrumEq1,
    /// (b) exact MSN energy equals Eq. (2)
    MsnEnergyEq2,
    /// (c) MSN-integral
    MsnIntegral,
    /// (d) E_sn(Γ) < E_sn(K_n)
    MsnStrictInequality,
    /// (e) exact CN energy equals 2 Σ l (m-1)(m-2)
    CnEnergyFormula,
    /// (f) E_cn(Γ) < E_cn(K_n)
    CnStrictInequality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyCounterexample {
    pub parts: CliqueUnion,
    pub union: String,
    pub check: PropertyCheck,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertySuiteReport {
    pub seed: u64,
    pub trials: usize,
    /// Every union with at most [`SMALL_UNION_VERTICES`] vertices.
    pub enumerated: usize,
    pub sampled: usize,
    pub passed: usize,
    /// Single cliques `K_n`, where both energies equal the reference.
    pub excluded_from_strict: usize,
    pub counterexamples: Vec<PropertyCounterexample>,
}

impl PropertySuiteReport {
    pub fn cases(&self) -> usize {
        self.enumerated + self.sampled
    }

    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn counts_by_check(&self) -> BTreeMap<PropertyCheck, usize> {
        let mut counts = BTreeMap::new();
        for c in &self.counterexamples {
            *counts.entry(c.check).or_insert(0) += 1;
        }
        counts
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        let counts: BTreeMap<String, usize> = self
            .counts_by_check()
            .into_iter()
            .map(|(k, n)| (serde_json::to_value(k).unwrap().as_str().unwrap().to_string(), n))
            .collect();
        v["counterexample_counts"] = json!(counts);
        v
    }
}

pub const SMALL_UNION_VERTICES: u64 = 12;
pub const MAX_PARTS: usize = 4;
pub const MAX_CLIQUE: u64 = 8;
pub const MAX_COUNT: u64 = 4;

/// Every clique union on `1..=max_vertices` vertices: one per integer partition.
pub fn small_clique_unions(max_vertices: u64) -> Vec<CliqueUnion> {
    fn partitions(n: u64, largest: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if n == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=largest.min(n)).rev() {
            current.push(part);
            partitions(n - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let mut parts = Vec::new();
        partitions(n, n, &mut Vec::new(), &mut parts);
        out.extend(
            parts
                .into_iter()
                .map(|p| CliqueUnion::from_sizes(p).expect("small unions are valid")),
        );
    }
    out
}

/// A random union with at most [`MAX_PARTS`] distinct sizes in
/// `1..=MAX_CLIQUE` and counts in `1..=MAX_COUNT`.
pub fn random_clique_union(rng: &mut impl Rng) -> CliqueUnion {
    let r = rng.gen_range(1..=MAX_PARTS);
    let sizes = sample(rng, MAX_CLIQUE as usize, r);
    let parts: Vec<(u64, u64)> = sizes
        .iter()
        .map(|i| (i as u64 + 1, rng.gen_range(1..=MAX_COUNT)))
        .collect();
    CliqueUnion::new(parts).expect("bounded unions are valid")
}

/// Checks (a)-(f) on one union; returns the failures.
pub fn check_clique_union(parts: &CliqueUnion) -> Result<Vec<PropertyCounterexample>> {
    let cap = Limits::global().exact_cap;
    let g = parts.to_graph()?;
    let n = parts.vertex_count();
    let (ref_msn, ref_cn) = reference_energies(n)?;
    let strict = !parts.is_single_clique();
    let mut out = Vec::new();
    let mut fail = |check: PropertyCheck, detail: String| {
        out.push(PropertyCounterexample {
            parts: parts.clone(),
            union: parts.to_string(),
            check,
            detail,
        })
    };

    let predicted = eq1_spectrum(parts);
    match exact_spectrum_by_blocks(&msn_matrix(&g), cap)? {
        ExactOutcome::Integral(s) => {
            if s != predicted {
                fail(
                    PropertyCheck::MsnSpectrumEq1,
                    format!("exact MSN spectrum {s}, Eq. (1) gives {predicted}"),
                );
            }
            let energy = s.energy();
            let eq2 = eq2_energy(parts);
            if energy != eq2 {
                fail(
                    PropertyCheck::MsnEnergyEq2,
                    format!("exact MSN energy {energy}, Eq. (2) gives {eq2}"),
                );
            }
            if strict && energy >= ref_msn {
                fail(
                    PropertyCheck::MsnStrictInequality,
                    format!("E_sn = {energy} is not below E_sn(K_{n}) = {ref_msn}"),
                );
            }
        }
        ExactOutcome::NotFullyIntegral { residual_degree, .. } => fail(
            PropertyCheck::MsnIntegral,
            format!("characteristic polynomial keeps an irreducible factor of degree {residual_degree}"),
        ),
    }

    let formula = cn_energy_clique_union(parts);
    match exact_spectrum_by_blocks(&cn_matrix(&g), cap)? {
        ExactOutcome::Integral(s) => {
            let energy = s.energy();
            if energy != formula {
                fail(
                    PropertyCheck::CnEnergyFormula,
                    format!("exact CN energy {energy}, formula gives {formula}"),
                );
            }
            if strict && n >= 2 && energy >= ref_cn {
                fail(
                    PropertyCheck::CnStrictInequality,
                    format!("E_cn = {energy} is not below E_cn(K_{n}) = {ref_cn}"),
                );
            }
        }
        ExactOutcome::NotFullyIntegral { .. } => fail(
            PropertyCheck::CnEnergyFormula,
            "CN spectrum of a clique union is not integral".into(),
        ),
    }
    Ok(out)
}

/// All unions on at most [`SMALL_UNION_VERTICES`] vertices, then `trials`
/// seeded random unions.
pub fn property_suite_clique_unions(seed: u64, trials: usize) -> Result<PropertySuiteReport> {
    let small = small_clique_unions(SMALL_UNION_VERTICES);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampled: Vec<CliqueUnion> = (0..trials).map(|_| random_clique_union(&mut rng)).collect();
    let mut report = PropertySuiteReport {
        seed,
        trials,
        enumerated: small.len(),
        sampled: sampled.len(),
        passed: 0,
        excluded_from_strict: 0,
        counterexamples: Vec::new(),
    };
    for parts in small.iter().chain(&sampled) {
        if parts.is_single_clique() {
            report.excluded_from_strict += 1;
        }
        let failures = check_clique_union(parts)?;
        if failures.is_empty() {
            report.passed += 1;
        }
        report.counterexamples.extend(failures);
    }
    Ok(report)
}
