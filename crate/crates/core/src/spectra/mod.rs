//! MSN and CN matrices, their spectra and energies.

pub mod charpoly;
pub mod numeric;

use serde::Serialize;
use serde_json::{json, Value};

use crate::closed_forms::{cn_spectrum_clique_union, reference_energies};
use crate::error::{Error, Result};
use crate::graph::{clique_decomposition, delta2_all, CliqueUnion, SimpleGraph};
use crate::limits::Limits;

/// Symmetric nonnegative integer matrix with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSymMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntSymMatrix {
    pub fn new(n: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidMatrix(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        for i in 0..n {
            if entries[i * n + i] != 0 {
                return Err(Error::InvalidMatrix(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                let v = entries[i * n + j];
                if v < 0 {
                    return Err(Error::InvalidMatrix(format!("negative entry at ({i}, {j})")));
                }
                if v != entries[j * n + i] {
                    return Err(Error::InvalidMatrix(format!("asymmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix("matrix is not square".into()));
        }
        Self::new(n, rows.concat())
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: vec![0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }

    pub fn max_abs(&self) -> i64 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    /// Largest absolute row sum; bounds every eigenvalue's magnitude.
    pub fn gershgorin_bound(&self) -> u64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) as u64).sum())
            .max()
            .unwrap_or(0)
    }

    /// Vertex sets of the connected components of the nonzero pattern.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut block = Vec::new();
            while let Some(v) = stack.pop() {
                block.push(v);
                for w in 0..n {
                    if !seen[w] && self.get(v, w) != 0 {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            block.sort_unstable();
            out.push(block);
        }
        out
    }

    pub fn principal_submatrix(&self, idx: &[usize]) -> IntSymMatrix {
        let k = idx.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in idx {
            for &j in idx {
                entries.push(self.get(i, j));
            }
        }
        IntSymMatrix { n: k, entries }
    }

    /// The matrix with rows and columns moved by `perm` (index `i` goes to `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> IntSymMatrix {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[perm[i] * n + perm[j]] = self.get(i, j);
            }
        }
        IntSymMatrix { n, entries }
    }
}

/// Minimum second neighborhood degree matrix.
pub fn msn_matrix(g: &SimpleGraph) -> IntSymMatrix {
    let n = g.n();
    let d2 = delta2_all(g);
    let mut entries = vec![0i64; n * n];
    for (u, v) in g.edges() {
        let value = d2[u].min(d2[v]) as i64;
        entries[u * n + v] = value;
        entries[v * n + u] = value;
    }
    IntSymMatrix { n, entries }
}

/// Common neighborhood matrix: |N(u) ∩ N(v)| for every pair u ≠ v.
pub fn cn_matrix(g: &SimpleGraph) -> IntSymMatrix {
    let n = g.n();
    let mut entries = vec![0i64; n * n];
    for u in 0..n {
        for v in u + 1..n {
            let common: u32 = g
                .neighbor_row(u)
                .iter()
                .zip(g.neighbor_row(v))
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            entries[u * n + v] = common as i64;
            entries[v * n + u] = common as i64;
        }
    }
    IntSymMatrix { n, entries }
}

/// Eigenvalue multiset as strictly increasing `(value, multiplicity)` pairs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumMultiset<T> {
    pairs: Vec<(T, u64)>,
}

pub type ExactSpectrum = SpectrumMultiset<i64>;
pub type NumericSpectrum = SpectrumMultiset<f64>;

impl<T: Copy> SpectrumMultiset<T> {
    pub fn pairs(&self) -> &[(T, u64)] {
        &self.pairs
    }

    /// Total multiplicity.
    pub fn n(&self) -> u64 {
        self.pairs.iter().map(|&(_, m)| m).sum()
    }
}

impl ExactSpectrum {
    /// Merges equal eigenvalues and drops zero multiplicities.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, u64)>) -> Self {
        let mut merged = std::collections::BTreeMap::new();
        for (v, m) in pairs {
            if m > 0 {
                *merged.entry(v).or_insert(0) += m;
            }
        }
        Self {
            pairs: merged.into_iter().collect(),
        }
    }

    /// Σ α|σ|.
    pub fn energy(&self) -> i64 {
        let total: i128 = self
            .pairs
            .iter()
            .map(|&(v, m)| (v as i128).abs() * m as i128)
            .sum();
        i64::try_from(total).expect("energy of an i64 spectrum fits in i64")
    }

    /// Σ ασ, which equals the trace.
    pub fn trace(&self) -> i128 {
        self.pairs.iter().map(|&(v, m)| v as i128 * m as i128).sum()
    }

    pub fn to_numeric(&self) -> NumericSpectrum {
        NumericSpectrum {
            pairs: self.pairs.iter().map(|&(v, m)| (v as f64, m)).collect(),
        }
    }
}

/// `{[-1]^7, [1]^7}`.
impl std::fmt::Display for ExactSpectrum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self.pairs.iter().map(|(v, m)| format!("[{v}]^{m}")).collect();
        write!(f, "{{{}}}", terms.join(", "))
    }
}

impl NumericSpectrum {
    pub fn from_clusters(pairs: Vec<(f64, u64)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        Self { pairs }
    }

    pub fn energy(&self) -> f64 {
        self.pairs.iter().map(|&(v, m)| v.abs() * m as f64).sum()
    }

    pub fn trace(&self) -> f64 {
        self.pairs.iter().map(|&(v, m)| v * m as f64).sum()
    }

    /// Whether every exact eigenvalue has a cluster with the same
    /// multiplicity within `tol`.
    pub fn matches_exact(&self, exact: &[(i64, u64)], tol: f64) -> bool {
        exact.iter().all(|&(v, m)| {
            self.pairs
                .iter()
                .any(|&(x, k)| (x - v as f64).abs() <= tol && k == m)
        })
    }
}

/// A spectrum from either the exact or the numeric path.
#[derive(Clone, Debug, PartialEq)]
pub enum Spectrum {
    Exact(ExactSpectrum),
    Numeric(NumericSpectrum),
}

impl Spectrum {
    pub fn is_exact(&self) -> bool {
        matches!(self, Spectrum::Exact(_))
    }

    pub fn energy(&self) -> Energy {
        match self {
            Spectrum::Exact(s) => Energy::Exact(s.energy()),
            Spectrum::Numeric(s) => Energy::Numeric(s.energy()),
        }
    }

    pub fn exact(&self) -> Option<&ExactSpectrum> {
        match self {
            Spectrum::Exact(s) => Some(s),
            Spectrum::Numeric(_) => None,
        }
    }

    /// `{"exact": bool, "pairs": [[value, multiplicity]]}`; exact values are
    /// JSON integers, numeric values decimal strings.
    pub fn to_json(&self) -> Value {
        match self {
            Spectrum::Exact(s) => json!({
                "exact": true,
                "pairs": s.pairs.iter().map(|&(v, m)| json!([v, m])).collect::<Vec<_>>(),
            }),
            Spectrum::Numeric(s) => json!({
                "exact": false,
                "pairs": s.pairs.iter().map(|&(v, m)| json!([format_decimal(v), m])).collect::<Vec<_>>(),
            }),
        }
    }
}

fn format_decimal(v: f64) -> String {
    let s = format!("{v:.9}");
    if s.starts_with("-0.000000000") {
        s[1..].to_string()
    } else {
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Energy {
    Exact(i64),
    Numeric(f64),
}

impl Energy {
    pub fn as_f64(&self) -> f64 {
        match *self {
            Energy::Exact(v) => v as f64,
            Energy::Numeric(v) => v,
        }
    }

    /// Strict comparison against an exact reference; numeric energies need
    /// to clear it by a relative margin.
    pub fn exceeds(&self, reference: i64) -> bool {
        match *self {
            Energy::Exact(v) => v > reference,
            Energy::Numeric(v) => {
                let r = reference as f64;
                v > r + 1e-9 * f64::max(1.0, r.abs())
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match *self {
            Energy::Exact(v) => json!(v),
            Energy::Numeric(v) => json!(format_decimal(v)),
        }
    }
}

impl std::fmt::Display for Energy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Energy::Exact(v) => write!(f, "{v}"),
            Energy::Numeric(v) => write!(f, "{}", format_decimal(*v)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExactOutcome {
    Integral(ExactSpectrum),
    /// The characteristic polynomial does not split over the integers.
    NotFullyIntegral {
        roots: ExactSpectrum,
        residual_degree: usize,
    },
}

pub fn exact_spectrum(m: &IntSymMatrix) -> Result<ExactOutcome> {
    exact_spectrum_capped(m, Limits::global().exact_cap)
}

pub fn exact_spectrum_capped(m: &IntSymMatrix, cap: usize) -> Result<ExactOutcome> {
    if m.n() > cap {
        return Err(Error::ExactCapExceeded { n: m.n(), cap });
    }
    let poly = charpoly::characteristic_polynomial(m)?;
    let (roots, residual_degree) = charpoly::integer_roots(&poly, m.gershgorin_bound());
    let roots = ExactSpectrum::from_pairs(roots);
    if residual_degree == 0 {
        debug_assert_eq!(roots.trace(), 0);
        Ok(ExactOutcome::Integral(roots))
    } else {
        Ok(ExactOutcome::NotFullyIntegral {
            roots,
            residual_degree,
        })
    }
}

/// Exact spectrum assembled from the connected blocks of the nonzero
/// pattern; the cap applies to each block rather than to the whole matrix.
pub fn exact_spectrum_by_blocks(m: &IntSymMatrix, block_cap: usize) -> Result<ExactOutcome> {
    let mut roots = Vec::new();
    let mut residual = 0;
    for block in m.blocks() {
        match exact_spectrum_capped(&m.principal_submatrix(&block), block_cap)? {
            ExactOutcome::Integral(s) => roots.extend_from_slice(s.pairs()),
            ExactOutcome::NotFullyIntegral {
                roots: r,
                residual_degree,
            } => {
                roots.extend_from_slice(r.pairs());
                residual += residual_degree;
            }
        }
    }
    let roots = ExactSpectrum::from_pairs(roots);
    Ok(if residual == 0 {
        ExactOutcome::Integral(roots)
    } else {
        ExactOutcome::NotFullyIntegral {
            roots,
            residual_degree: residual,
        }
    })
}

/// Numeric spectrum assembled block by block, then re-clustered.
pub fn numeric_spectrum_by_blocks(m: &IntSymMatrix) -> Result<NumericSpectrum> {
    let mut values = Vec::with_capacity(m.n());
    for block in m.blocks() {
        values.extend(numeric::jacobi_eigenvalues(&m.principal_submatrix(&block))?);
    }
    values.sort_by(f64::total_cmp);
    Ok(NumericSpectrum::from_clusters(numeric::cluster(&values, m)))
}

pub fn numeric_spectrum(m: &IntSymMatrix) -> Result<NumericSpectrum> {
    let values = numeric::jacobi_eigenvalues(m)?;
    Ok(NumericSpectrum::from_clusters(numeric::cluster(&values, m)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Integrality {
    Integral,
    NotIntegral,
    /// Only a numeric spectrum was available.
    Undetermined,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumPath {
    CliqueUnion,
    ExactCharPoly,
    Numeric,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnergyReport {
    pub n: usize,
    pub decomposition: Option<CliqueUnion>,
    pub path: SpectrumPath,
    pub msn_spectrum: Spectrum,
    pub cn_spectrum: Spectrum,
    pub msn_energy: Energy,
    pub cn_energy: Energy,
    pub msn_integral: Integrality,
    pub msn_hyperenergetic: bool,
    pub cn_hyperenergetic: bool,
    /// E_sn(K_n) and E_cn(K_n).
    pub reference_energies: (i64, i64),
}

impl EnergyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "decomposition": self.decomposition.as_ref().map(|d| d.to_string()),
            "path": self.path,
            "msn_spectrum": self.msn_spectrum.to_json(),
            "cn_spectrum": self.cn_spectrum.to_json(),
            "msn_energy": self.msn_energy.to_json(),
            "cn_energy": self.cn_energy.to_json(),
            "msn_integral": self.msn_integral,
            "msn_hyperenergetic": self.msn_hyperenergetic,
            "cn_hyperenergetic": self.cn_hyperenergetic,
            "reference_msn_energy": self.reference_energies.0,
            "reference_cn_energy": self.reference_energies.1,
        })
    }
}

/// Spectrum of a matrix by the exact path when it fits under the cap and
/// splits, else numerically. The flag reports integrality as established.
pub fn best_spectrum(m: &IntSymMatrix, exact_cap: usize) -> Result<(Spectrum, Integrality)> {
    match exact_spectrum_capped(m, exact_cap) {
        Ok(ExactOutcome::Integral(s)) => Ok((Spectrum::Exact(s), Integrality::Integral)),
        Ok(ExactOutcome::NotFullyIntegral { .. }) => {
            Ok((Spectrum::Numeric(numeric_spectrum(m)?), Integrality::NotIntegral))
        }
        Err(Error::ExactCapExceeded { .. }) => {
            Ok((Spectrum::Numeric(numeric_spectrum(m)?), Integrality::Undetermined))
        }
        Err(e) => Err(e),
    }
}

/// MSN spectrum of a clique union computed from the definition of N².
///
/// In `K_m` with `m >= 3`, N²(v) is every other vertex, so δ₂ = (m-1)² and
/// the block is `(m-1)^2 A(K_m)`. In `K_2`, the only neighbor's neighborhood
/// is `{v}` itself, so N²(v) is empty and the block is zero; `K_1` is zero
/// as well. This agrees with Eq. (1) except on `K_2` parts.
pub fn msn_spectrum_of_clique_union(parts: &CliqueUnion) -> ExactSpectrum {
    ExactSpectrum::from_pairs(parts.parts().iter().flat_map(|p| {
        let k = (p.size - 1) as i64;
        let d = if p.size >= 3 { k * k } else { 0 };
        [(-d, p.count * (p.size - 1)), (d * k, p.count)]
    }))
}

pub fn classify(g: &SimpleGraph) -> Result<EnergyReport> {
    classify_with(g, Limits::global().exact_cap)
}

pub fn classify_with(g: &SimpleGraph, exact_cap: usize) -> Result<EnergyReport> {
    let n = g.n();
    let reference = if n == 0 { (0, 0) } else { reference_energies(n as u64)? };
    let decomposition = clique_decomposition(g).union().cloned();
    let (path, msn_spectrum, cn_spectrum, msn_integral) = match &decomposition {
        Some(parts) => (
            SpectrumPath::CliqueUnion,
            Spectrum::Exact(msn_spectrum_of_clique_union(parts)),
            Spectrum::Exact(cn_spectrum_clique_union(parts)),
            Integrality::Integral,
        ),
        None => {
            let (msn, integral) = best_spectrum(&msn_matrix(g), exact_cap)?;
            let (cn, _) = best_spectrum(&cn_matrix(g), exact_cap)?;
            let path = if integral == Integrality::Undetermined {
                SpectrumPath::Numeric
            } else {
                SpectrumPath::ExactCharPoly
            };
            (path, msn, cn, integral)
        }
    };
    let msn_energy = msn_spectrum.energy();
    let cn_energy = cn_spectrum.energy();
    Ok(EnergyReport {
        n,
        decomposition,
        path,
        msn_hyperenergetic: msn_energy.exceeds(reference.0),
        cn_hyperenergetic: cn_energy.exceeds(reference.1),
        msn_spectrum,
        cn_spectrum,
        msn_energy,
        cn_energy,
        msn_integral,
        reference_energies: reference,
    })
}
