//! Closed-form spectra and energies of clique unions, and the predicted
//! commuting-graph decomposition for each ring family.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::graph::CliqueUnion;
use crate::limits::Limits;
use crate::spectra::{ExactSpectrum, Spectrum};

/// MSN spectrum of a clique union: each `l K_m` contributes
/// `-(m-1)^2` with multiplicity `l(m-1)` and `(m-1)^3` with multiplicity `l`.
pub fn eq1_spectrum(parts: &CliqueUnion) -> ExactSpectrum {
    ExactSpectrum::from_pairs(parts.parts().iter().flat_map(|p| {
        let k = (p.size - 1) as i64;
        [(-(k * k), p.count * (p.size - 1)), (k * k * k, p.count)]
    }))
}

/// MSN energy `2 Σ l (m-1)^3`.
pub fn eq2_energy(parts: &CliqueUnion) -> i64 {
    2 * parts
        .parts()
        .iter()
        .map(|p| p.count as i64 * ((p.size - 1) as i64).pow(3))
        .sum::<i64>()
}

/// CN spectrum of a clique union: `CN(K_m) = (m-2)(J - I)`, so each `l K_m`
/// contributes `(m-1)(m-2)` with multiplicity `l` and `-(m-2)` with
/// multiplicity `l(m-1)`.
pub fn cn_spectrum_clique_union(parts: &CliqueUnion) -> ExactSpectrum {
    ExactSpectrum::from_pairs(parts.parts().iter().flat_map(|p| {
        let m = p.size as i64;
        [(-(m - 2), p.count * (p.size - 1)), ((m - 1) * (m - 2), p.count)]
    }))
}

/// CN energy `2 Σ l (m-1)(m-2)`.
pub fn cn_energy_clique_union(parts: &CliqueUnion) -> i64 {
    2 * parts
        .parts()
        .iter()
        .map(|p| {
            let m = p.size as i64;
            p.count as i64 * (m - 1) * (m - 2).max(0)
        })
        .sum::<i64>()
}

/// `(E_sn(K_n), E_cn(K_n)) = (2(n-1)^3, 2(n-1)(n-2))`.
pub fn reference_energies(n: u64) -> Result<(i64, i64)> {
    if n == 0 {
        return Err(Error::HypothesisViolated("reference energies need n >= 1".into()));
    }
    let k = i64::try_from(n - 1).map_err(|_| overflow("reference energy"))?;
    let msn = k
        .checked_pow(3)
        .and_then(|v| v.checked_mul(2))
        .ok_or_else(|| overflow("reference MSN energy"))?;
    let cn = if n == 1 {
        0
    } else {
        k.checked_mul(k - 1)
            .and_then(|v| v.checked_mul(2))
            .ok_or_else(|| overflow("reference CN energy"))?
    };
    Ok((msn, cn))
}

fn overflow(what: &str) -> Error {
    Error::Overflow(what.to_string())
}

macro_rules! theorem_ids {
    ($($id:ident),* $(,)?) => {
        /// Theorem and corollary identifiers with a closed-form prediction.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum TheoremId { $($id),* }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$id),*];

            pub fn as_str(&self) -> &'static str {
                match self { $(TheoremId::$id => stringify!($id)),* }
            }
        }
    };
}

theorem_ids!(
    T2_1, C2_2a, C2_2b, C2_2c, C2_2d, C2_3a, C2_3b, C2_4a, C2_4b, T3_1a, T3_1b, T3_3a, T3_3b,
    T4_1a, T4_1b, T4_3, T4_4a, T4_4b, T4_4c, T5_1,
);

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Symbols substituted into a prediction. Which ones are required depends
/// on the theorem.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub p: Option<u64>,
    pub q: Option<u64>,
    /// |Z(R)|.
    pub m: Option<u64>,
    pub t: Option<u64>,
    /// Sizes of the distinct non-central centralizers (T5_1).
    pub centralizer_sizes: Option<Vec<u64>>,
}

impl Params {
    pub fn with_p(p: u64) -> Self {
        Self {
            p: Some(p),
            ..Self::default()
        }
    }

    pub fn with_pq(p: u64, q: u64) -> Self {
        Self {
            p: Some(p),
            q: Some(q),
            ..Self::default()
        }
    }

    pub fn to_json(&self) -> Value {
        let mut map = serde_json::Map::new();
        for (key, value) in [("p", self.p), ("q", self.q), ("m", self.m), ("t", self.t)] {
            if let Some(v) = value {
                map.insert(key.into(), json!(v));
            }
        }
        if let Some(sizes) = &self.centralizer_sizes {
            map.insert("centralizer_sizes".into(), json!(sizes));
        }
        Value::Object(map)
    }
}

/// One admissible decomposition with its spectrum and energy.
#[derive(Clone, Debug, PartialEq)]
pub struct Alternative {
    pub decomposition: CliqueUnion,
    pub spectrum: ExactSpectrum,
    pub energy: i64,
    /// Free coefficients (l1, l2, ..., or t) that produced this alternative.
    pub coefficients: BTreeMap<String, u64>,
}

impl Alternative {
    fn new(decomposition: CliqueUnion, coefficients: BTreeMap<String, u64>) -> Self {
        Self {
            spectrum: eq1_spectrum(&decomposition),
            energy: eq2_energy(&decomposition),
            decomposition,
            coefficients,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "decomposition": self.decomposition.to_string(),
            "parts": self.decomposition,
            "coefficients": self.coefficients,
            "spectrum": Spectrum::Exact(self.spectrum.clone()).to_json(),
            "energy": self.energy,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormPrediction {
    pub theorem: TheoremId,
    pub params: Params,
    pub alternatives: Vec<Alternative>,
    /// The admissible set was cut off at the enumeration cap.
    pub truncated: bool,
}

impl ClosedFormPrediction {
    pub fn find(&self, decomposition: &CliqueUnion) -> Option<&Alternative> {
        self.alternatives.iter().find(|a| &a.decomposition == decomposition)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theorem": self.theorem,
            "params": self.params.to_json(),
            "alternatives": self.alternatives.iter().map(Alternative::to_json).collect::<Vec<_>>(),
            "truncated": self.truncated,
        })
    }
}

fn violated(msg: impl Into<String>) -> Error {
    Error::HypothesisViolated(msg.into())
}

fn require(value: Option<u64>, name: &str, theorem: TheoremId) -> Result<u64> {
    value.ok_or_else(|| violated(format!("{theorem} needs parameter {name}")))
}

fn require_prime(value: Option<u64>, name: &str, theorem: TheoremId) -> Result<u64> {
    let v = require(value, name, theorem)?;
    if !is_prime(v) {
        return Err(violated(format!("{name} = {v} is not prime")));
    }
    Ok(v)
}

fn fixed(value: Option<u64>, name: &str, expected: u64, theorem: TheoremId) -> Result<u64> {
    match value {
        Some(v) if v != expected => Err(violated(format!(
            "{theorem} fixes {name} = {expected}, got {v}"
        ))),
        _ => Ok(expected),
    }
}

/// Checked arithmetic on theorem parameters.
fn mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or_else(|| overflow("theorem parameters"))
}

fn pow(a: u64, e: u32) -> Result<u64> {
    a.checked_pow(e).ok_or_else(|| overflow("theorem parameters"))
}

fn single(parts: &[(u64, u64)]) -> Result<Vec<Alternative>> {
    Ok(vec![Alternative::new(
        CliqueUnion::new(parts.iter().copied())?,
        BTreeMap::new(),
    )])
}

/// `(p+1) K_{(p-1)m}`, the graph of a ring with R/Z(R) ≅ Z_p × Z_p.
fn central_quotient_zp2(p: u64, m: u64) -> Result<Vec<Alternative>> {
    if m == 0 {
        return Err(violated("m = |Z(R)| must be at least 1"));
    }
    single(&[(mul(p - 1, m)?, p + 1)])
}

/// All nonnegative solutions of `Σ coeff_i l_i = total`, in lexicographic
/// order of `(l_1, l_2, ...)`, up to `cap` solutions.
fn solve_linear(coeffs: &[u64], total: u64, cap: usize) -> (Vec<Vec<u64>>, bool) {
    fn go(
        coeffs: &[u64],
        remaining: u64,
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
        cap: usize,
    ) -> bool {
        if coeffs.is_empty() {
            if remaining == 0 {
                if out.len() == cap {
                    return false;
                }
                out.push(current.clone());
            }
            return true;
        }
        let c = coeffs[0];
        for l in 0..=remaining / c {
            current.push(l);
            let keep_going = go(&coeffs[1..], remaining - l * c, current, out, cap);
            current.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
    let mut out = Vec::new();
    let complete = go(coeffs, total, &mut Vec::new(), &mut out, cap);
    (out, !complete)
}

/// Alternatives `Σ l_i K_{size_i}` over all solutions of `Σ weight_i l_i = total`.
fn linear_family(
    sizes: &[u64],
    weights: &[u64],
    total: u64,
    cap: usize,
) -> Result<(Vec<Alternative>, bool)> {
    // enumerate with the last coefficient varying slowest, so the
    // single-part case (trailing coefficients zero) comes first
    let reversed: Vec<u64> = weights.iter().rev().copied().collect();
    let (mut solutions, truncated) = solve_linear(&reversed, total, cap);
    for l in &mut solutions {
        l.reverse();
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for l in solutions {
        let union = CliqueUnion::new(sizes.iter().copied().zip(l.iter().copied()))?;
        if !seen.insert(union.clone()) {
            continue;
        }
        let coefficients = l
            .iter()
            .enumerate()
            .map(|(i, &v)| (format!("l{}", i + 1), v))
            .collect();
        out.push(Alternative::new(union, coefficients));
    }
    Ok((out, truncated))
}

pub fn predict(theorem: TheoremId, params: &Params) -> Result<ClosedFormPrediction> {
    predict_with_cap(theorem, params, Limits::global().enumeration_cap)
}

pub fn predict_with_cap(
    theorem: TheoremId,
    params: &Params,
    enumeration_cap: usize,
) -> Result<ClosedFormPrediction> {
    use TheoremId::*;
    let mut used = Params::default();
    let mut truncated = false;
    let alternatives = match theorem {
        T2_1 | C2_2d | C2_3b => {
            let p = require_prime(params.p, "p", theorem)?;
            let m = require(params.m, "m", theorem)?;
            used.p = Some(p);
            used.m = Some(m);
            central_quotient_zp2(p, m)?
        }
        C2_2a | C2_2b | C2_2c | C2_3a => {
            let expected = match theorem {
                C2_2b => 3,
                C2_2c => 5,
                _ => 2,
            };
            let p = fixed(params.p, "p", expected, theorem)?;
            let m = require(params.m, "m", theorem)?;
            used.p = Some(p);
            used.m = Some(m);
            central_quotient_zp2(p, m)?
        }
        C2_4a => {
            let p = require_prime(params.p, "p", theorem)?;
            let m = fixed(params.m, "m", 1, theorem)?;
            used.p = Some(p);
            used.m = Some(m);
            central_quotient_zp2(p, m)?
        }
        C2_4b => {
            let p = require_prime(params.p, "p", theorem)?;
            let m = fixed(params.m, "m", p, theorem)?;
            used.p = Some(p);
            used.m = Some(m);
            central_quotient_zp2(p, m)?
        }
        T3_1a | T3_3a => {
            let p = require_prime(params.p, "p", theorem)?;
            used.p = Some(p);
            let scale = if theorem == T3_1a { p } else { mul(p, p)? };
            let small = mul(scale, p - 1)?;
            let large = mul(scale, pow(p, 2)? - 1)?;
            let total = pow(p, 2)? + p + 1;
            let (alts, cut) = linear_family(&[small, large], &[1, p + 1], total, enumeration_cap)?;
            truncated = cut;
            alts
        }
        T3_1b => {
            let p = require_prime(params.p, "p", theorem)?;
            used.p = Some(p);
            single(&[(mul(pow(p, 2)?, p - 1)?, p + 1)])?
        }
        T3_3b => {
            let p = require_prime(params.p, "p", theorem)?;
            used.p = Some(p);
            single(&[(mul(pow(p, 3)?, p - 1)?, p + 1)])?
        }
        T4_1a => {
            let p = require_prime(params.p, "p", theorem)?;
            let q = require_prime(params.q, "q", theorem)?;
            used.p = Some(p);
            used.q = Some(q);
            let n = mul(pow(p, 2)?, q)? - 1;
            let allowed = [p, q, pow(p, 2)?, mul(p, q)?];
            let candidates: Vec<u64> = match params.t {
                Some(t) => {
                    if !allowed.contains(&t) {
                        return Err(violated(format!("t = {t} is not one of p, q, p^2, pq")));
                    }
                    if n % (t - 1) != 0 {
                        return Err(violated(format!(
                            "(t-1) = {} does not divide p^2q-1 = {n}",
                            t - 1
                        )));
                    }
                    used.t = Some(t);
                    vec![t]
                }
                None => {
                    let mut ts: Vec<u64> = allowed.into_iter().filter(|&t| n % (t - 1) == 0).collect();
                    ts.sort_unstable();
                    ts.dedup();
                    if ts.is_empty() {
                        return Err(violated(format!(
                            "no t in {{p, q, p^2, pq}} has (t-1) dividing p^2q-1 = {n}"
                        )));
                    }
                    ts
                }
            };
            candidates
                .into_iter()
                .map(|t| {
                    let union = CliqueUnion::new([(t - 1, n / (t - 1))])?;
                    Ok(Alternative::new(union, BTreeMap::from([("t".to_string(), t)])))
                })
                .collect::<Result<Vec<_>>>()?
        }
        T4_1b => {
            let p = require_prime(params.p, "p", theorem)?;
            let q = require_prime(params.q, "q", theorem)?;
            used.p = Some(p);
            used.q = Some(q);
            let sizes = [p - 1, q - 1, pow(p, 2)? - 1, mul(p, q)? - 1];
            let total = mul(pow(p, 2)?, q)? - 1;
            let (alts, cut) = linear_family(&sizes, &sizes, total, enumeration_cap)?;
            truncated = cut;
            alts
        }
        T4_3 => {
            let p = require_prime(params.p, "p", theorem)?;
            let q = require_prime(params.q, "q", theorem)?;
            used.p = Some(p);
            used.q = Some(q);
            single(&[(mul(mul(p, q)?, p - 1)?, p + 1)])?
        }
        T4_4a | T4_4b => {
            let p = require_prime(params.p, "p", theorem)?;
            let q = require_prime(params.q, "q", theorem)?;
            used.p = Some(p);
            used.q = Some(q);
            let r = if theorem == T4_4a { p } else { q };
            let pq1 = mul(p, q)? - 1;
            if pq1 % (r - 1) != 0 {
                let name = if theorem == T4_4a { "p" } else { "q" };
                return Err(violated(format!(
                    "({name}-1) = {} does not divide pq-1 = {pq1}",
                    r - 1
                )));
            }
            single(&[(mul(pow(p, 2)?, r - 1)?, pq1 / (r - 1))])?
        }
        T4_4c => {
            let p = require_prime(params.p, "p", theorem)?;
            let q = require_prime(params.q, "q", theorem)?;
            used.p = Some(p);
            used.q = Some(q);
            let sizes = [mul(pow(p, 2)?, p - 1)?, mul(pow(p, 2)?, q - 1)?];
            let (alts, cut) =
                linear_family(&sizes, &[p - 1, q - 1], mul(p, q)? - 1, enumeration_cap)?;
            truncated = cut;
            if alts.is_empty() {
                return Err(violated("pq-1 = (p-1)l1 + (q-1)l2 has no nonnegative solution"));
            }
            alts
        }
        T5_1 => {
            let m = require(params.m, "m", theorem)?;
            let sizes = params
                .centralizer_sizes
                .clone()
                .ok_or_else(|| violated("T5_1 needs the non-central centralizer sizes"))?;
            if let Some(&s) = sizes.iter().find(|&&s| s <= m) {
                return Err(violated(format!("centralizer size {s} does not exceed m = {m}")));
            }
            used.m = Some(m);
            used.centralizer_sizes = Some(sizes.clone());
            vec![Alternative::new(
                CliqueUnion::from_sizes(sizes.iter().map(|s| s - m))?,
                BTreeMap::new(),
            )]
        }
    };
    Ok(ClosedFormPrediction {
        theorem,
        params: used,
        alternatives,
        truncated,
    })
}
