//! Finite rings on a mixed-radix additive coordinate system.
//!
//! An element of a ring with moduli `(d_1, ..., d_k)` is an index in
//! `0..d_1*...*d_k`; its coordinates are the mixed-radix digits with `d_1`
//! most significant. Index 0 is the additive identity. Addition is
//! coordinatewise, multiplication is either a stored table or a closed-form
//! rule for the built-in families.

use std::collections::HashSet;
use std::sync::Arc;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, is_prime};
use crate::bitset::{count_ones, is_subset, iter_ones, BitMatrix};
use crate::error::{Axiom, Error, Result};
use crate::limits::Limits;

#[derive(Clone, Debug)]
enum Rule {
    Table(Arc<[u32]>),
    /// Integers mod n.
    Zn,
    /// Pairs over F_p with (a, b)(c, d) = (ac, ad).
    NoncommP2 { p: u64 },
    /// 2x2 matrices over F_p, coordinates (a, b, c, d) for [[a, b], [c, d]].
    Matrix2 { p: u64 },
    /// Upper triangular 2x2 matrices over F_p, coordinates (a, b, d) for [[a, b], [0, d]].
    UpperTriangular { p: u64 },
    Product {
        left: Arc<FiniteRing>,
        right: Arc<FiniteRing>,
    },
}

#[derive(Clone, Debug)]
pub struct FiniteRing {
    name: String,
    moduli: Vec<u64>,
    order: usize,
    rule: Rule,
}

/// An element of a ring together with its mixed-radix coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    pub index: usize,
    pub coords: Vec<u64>,
}

/// A set of ring elements, every one of which commutes with a fixed element
/// (or with all elements, for the center).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CentralizerSet {
    elements: Vec<usize>,
}

impl CentralizerSet {
    fn from_sorted(elements: Vec<usize>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Self { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// Options for [`ring_from_table`].
#[derive(Clone, Copy, Debug)]
pub struct TableOptions {
    /// Exhaustive axiom validation is refused above this order.
    pub validation_cap: usize,
    /// Skip axiom validation entirely (needed above the cap).
    pub skip_validation: bool,
    pub universe_cap: usize,
}

impl Default for TableOptions {
    fn default() -> Self {
        let limits = Limits::global();
        Self {
            validation_cap: limits.table_validation_cap,
            skip_validation: false,
            universe_cap: limits.universe_cap,
        }
    }
}

/// JSON ring file: `{"name": ..., "moduli": [...], "table": [[...]]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RingTable {
    pub name: String,
    pub moduli: Vec<u64>,
    pub table: Vec<Vec<usize>>,
}

fn check_universe(order: usize, cap: usize) -> Result<()> {
    if order > cap {
        return Err(Error::SizeCapExceeded {
            what: "universe",
            order,
            cap,
        });
    }
    Ok(())
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn checked_order(moduli: &[u64]) -> Result<usize> {
    if moduli.is_empty() {
        return Err(Error::InvalidModuli("at least one modulus is required".into()));
    }
    let mut order: usize = 1;
    for &d in moduli {
        if d == 0 {
            return Err(Error::InvalidModuli("moduli must be positive".into()));
        }
        order = usize::try_from(d)
            .ok()
            .and_then(|d| order.checked_mul(d))
            .ok_or_else(|| Error::InvalidModuli("ring order overflows".into()))?;
    }
    Ok(order)
}

impl FiniteRing {
    fn built_in(name: String, moduli: Vec<u64>, rule: Rule, universe_cap: usize) -> Result<Self> {
        let order = checked_order(&moduli)?;
        check_universe(order, universe_cap)?;
        Ok(Self {
            name,
            moduli,
            order,
            rule,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_table_ring(&self) -> bool {
        matches!(self.rule, Rule::Table(_))
    }

    pub fn element(&self, index: usize) -> RingElement {
        RingElement {
            index,
            coords: self.coords(index),
        }
    }

    pub fn coords(&self, mut index: usize) -> Vec<u64> {
        let mut coords = vec![0; self.moduli.len()];
        for (slot, &d) in coords.iter_mut().zip(&self.moduli).rev() {
            *slot = (index as u64) % d;
            index /= d as usize;
        }
        coords
    }

    /// Index of the element with the given coordinates; `None` when a
    /// coordinate is out of range or the arity is wrong.
    pub fn index_of(&self, coords: &[u64]) -> Option<usize> {
        if coords.len() != self.moduli.len() {
            return None;
        }
        let mut index = 0usize;
        for (&c, &d) in coords.iter().zip(&self.moduli) {
            if c >= d {
                return None;
            }
            index = index * d as usize + c as usize;
        }
        Some(index)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for &d in self.moduli.iter().rev() {
            let d = d as usize;
            out += ((a % d + b % d) % d) * place;
            a /= d;
            b /= d;
            place *= d;
        }
        out
    }

    pub fn neg(&self, a: usize) -> usize {
        self.scale(a, self.order as u64 - 1)
    }

    /// The additive multiple `k * a`.
    pub fn scale(&self, a: usize, k: u64) -> usize {
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for &d in self.moduli.iter().rev() {
            let digit = (a as u64) % d;
            out += (((digit as u128 * k as u128) % d as u128) as usize) * place;
            a /= d as usize;
            place *= d as usize;
        }
        out
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.rule {
            Rule::Table(table) => table[a * self.order + b] as usize,
            Rule::Zn => {
                let n = self.order as u128;
                ((a as u128 * b as u128) % n) as usize
            }
            Rule::NoncommP2 { p } => {
                let p = *p as usize;
                let (a1, c, d) = (a / p, b / p, b % p);
                (a1 * c % p) * p + a1 * d % p
            }
            Rule::Matrix2 { p } => {
                let p = *p as usize;
                let [a1, b1, c1, d1] = digits4(a, p);
                let [a2, b2, c2, d2] = digits4(b, p);
                let e = (a1 * a2 + b1 * c2) % p;
                let f = (a1 * b2 + b1 * d2) % p;
                let g = (c1 * a2 + d1 * c2) % p;
                let h = (c1 * b2 + d1 * d2) % p;
                ((e * p + f) * p + g) * p + h
            }
            Rule::UpperTriangular { p } => {
                let p = *p as usize;
                let (a1, b1, d1) = (a / (p * p), (a / p) % p, a % p);
                let (a2, b2, d2) = (b / (p * p), (b / p) % p, b % p);
                let e = a1 * a2 % p;
                let f = (a1 * b2 + b1 * d2) % p;
                let h = d1 * d2 % p;
                (e * p + f) * p + h
            }
            Rule::Product { left, right } => {
                let s = right.order;
                let l = left.mul(a / s, b / s);
                let r = right.mul(a % s, b % s);
                l * s + r
            }
        }
    }

    #[inline]
    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Indices of the coordinate unit vectors; they generate the additive group.
    pub fn additive_generators(&self) -> Vec<usize> {
        (0..self.moduli.len())
            .filter(|&i| self.moduli[i] > 1)
            .map(|i| {
                let mut coords = vec![0; self.moduli.len()];
                coords[i] = 1;
                self.index_of(&coords).expect("unit vector is in range")
            })
            .collect()
    }

    /// A multiplicative identity, if one exists.
    ///
    /// Checking against additive generators suffices because multiplication
    /// distributes over addition.
    pub fn unity(&self) -> Option<usize> {
        let gens = self.additive_generators();
        (0..self.order).find(|&e| gens.iter().all(|&g| self.mul(e, g) == g && self.mul(g, e) == g))
            .filter(|&e| self.order == 1 || e != 0)
    }

    pub fn is_commutative(&self) -> bool {
        let gens = self.additive_generators();
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.commutes(a, b)))
    }

    /// Materialized multiplication table.
    pub fn to_table(&self) -> RingTable {
        let table = (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect();
        RingTable {
            name: self.name.clone(),
            moduli: self.moduli.clone(),
            table,
        }
    }

    /// Coordinates formatted as `(c1,c2,...)`, used for vertex labels.
    pub fn label(&self, index: usize) -> String {
        let coords: Vec<String> = self.coords(index).iter().map(|c| c.to_string()).collect();
        format!("({})", coords.join(","))
    }
}

fn digits4(x: usize, p: usize) -> [usize; 4] {
    [x / (p * p * p), (x / (p * p)) % p, (x / p) % p, x % p]
}

/// Builds and validates a ring from a multiplication table.
pub fn ring_from_table(
    name: &str,
    moduli: &[u64],
    table: &[Vec<usize>],
    options: TableOptions,
) -> Result<FiniteRing> {
    let order = checked_order(moduli)?;
    if table.len() != order {
        return Err(Error::DimensionMismatch {
            expected: order,
            found: table.len(),
        });
    }
    check_universe(order, options.universe_cap)?;
    let mut flat = Vec::with_capacity(order * order);
    for (row, entries) in table.iter().enumerate() {
        if entries.len() != order {
            return Err(Error::DimensionMismatch {
                expected: order,
                found: entries.len(),
            });
        }
        for (col, &value) in entries.iter().enumerate() {
            if value >= order {
                return Err(Error::EntryOutOfRange {
                    row,
                    col,
                    value,
                    order,
                });
            }
            flat.push(value as u32);
        }
    }
    let ring = FiniteRing {
        name: name.to_string(),
        moduli: moduli.to_vec(),
        order,
        rule: Rule::Table(flat.into()),
    };
    if !options.skip_validation {
        if order > options.validation_cap {
            return Err(Error::SizeCapExceeded {
                what: "table validation",
                order,
                cap: options.validation_cap,
            });
        }
        check_ring_axioms(&ring)?;
    }
    Ok(ring)
}

pub fn ring_from_table_json(json: &str, options: TableOptions) -> Result<FiniteRing> {
    let parsed: RingTable = serde_json::from_str(json)?;
    ring_from_table(&parsed.name, &parsed.moduli, &parsed.table, options)
}

/// Exhaustive check of associativity and both distributive laws.
pub fn check_ring_axioms(ring: &FiniteRing) -> Result<()> {
    let n = ring.order;
    for a in 0..n {
        for b in 0..n {
            let ab = ring.mul(a, b);
            for c in 0..n {
                if ring.mul(a, ring.mul(b, c)) != ring.mul(ab, c) {
                    return Err(Error::AxiomViolation {
                        axiom: Axiom::Associativity,
                        witness: (a, b, c),
                    });
                }
                if ring.mul(a, ring.add(b, c)) != ring.add(ab, ring.mul(a, c)) {
                    return Err(Error::AxiomViolation {
                        axiom: Axiom::LeftDistributivity,
                        witness: (a, b, c),
                    });
                }
                if ring.mul(ring.add(a, b), c) != ring.add(ring.mul(a, c), ring.mul(b, c)) {
                    return Err(Error::AxiomViolation {
                        axiom: Axiom::RightDistributivity,
                        witness: (a, b, c),
                    });
                }
            }
        }
    }
    Ok(())
}

pub fn ring_zn(n: u64) -> Result<FiniteRing> {
    if n == 0 {
        return Err(Error::InvalidModuli("n must be positive".into()));
    }
    FiniteRing::built_in(format!("zn:n={n}"), vec![n], Rule::Zn, Limits::global().universe_cap)
}

/// The non-commutative ring {(a, b)} over F_p with (a, b)(c, d) = (ac, ad).
pub fn ring_noncomm_p2(p: u64) -> Result<FiniteRing> {
    require_prime(p)?;
    FiniteRing::built_in(
        format!("nc_p2:p={p}"),
        vec![p, p],
        Rule::NoncommP2 { p },
        Limits::global().universe_cap,
    )
}

/// The full matrix ring M_2(F_p).
pub fn matrix_ring_2x2(p: u64) -> Result<FiniteRing> {
    require_prime(p)?;
    FiniteRing::built_in(
        format!("mat2:p={p}"),
        vec![p; 4],
        Rule::Matrix2 { p },
        Limits::global().universe_cap,
    )
}

/// Upper triangular 2x2 matrices over F_p.
pub fn upper_triangular_ring(p: u64) -> Result<FiniteRing> {
    require_prime(p)?;
    FiniteRing::built_in(
        format!("ut2:p={p}"),
        vec![p; 3],
        Rule::UpperTriangular { p },
        Limits::global().universe_cap,
    )
}

pub fn direct_product(left: &FiniteRing, right: &FiniteRing) -> Result<FiniteRing> {
    direct_product_capped(left, right, Limits::global().universe_cap)
}

pub fn direct_product_capped(left: &FiniteRing, right: &FiniteRing, cap: usize) -> Result<FiniteRing> {
    let order = left
        .order
        .checked_mul(right.order)
        .ok_or_else(|| Error::InvalidModuli("ring order overflows".into()))?;
    check_universe(order, cap)?;
    let mut moduli = left.moduli.clone();
    moduli.extend_from_slice(&right.moduli);
    FiniteRing::built_in(
        format!("prod({},{})", left.name, right.name),
        moduli,
        Rule::Product {
            left: Arc::new(left.clone()),
            right: Arc::new(right.clone()),
        },
        cap,
    )
}

/// Z(R). An element is central iff it commutes with every additive
/// generator, since commutators are additive in each argument.
pub fn center(ring: &FiniteRing) -> CentralizerSet {
    let gens = ring.additive_generators();
    CentralizerSet::from_sorted(
        (0..ring.order)
            .filter(|&z| gens.iter().all(|&g| ring.commutes(z, g)))
            .collect(),
    )
}

pub fn centralizer(ring: &FiniteRing, r: usize) -> CentralizerSet {
    CentralizerSet::from_sorted((0..ring.order).filter(|&x| ring.commutes(x, r)).collect())
}

/// All-pairs commutation relation; row r is the centralizer of r.
pub fn commutation_matrix(ring: &FiniteRing) -> BitMatrix {
    let n = ring.order;
    let mut m = BitMatrix::new(n);
    for a in 0..n {
        m.set(a, a);
        for b in a + 1..n {
            if ring.commutes(a, b) {
                m.set(a, b);
                m.set(b, a);
            }
        }
    }
    m
}

/// Distinct centralizers of all elements (central elements contribute R).
pub fn distinct_centralizers(ring: &FiniteRing) -> Vec<CentralizerSet> {
    distinct_rows(&commutation_matrix(ring))
        .into_iter()
        .map(|row| CentralizerSet::from_sorted(iter_ones(&row).collect()))
        .collect()
}

fn distinct_rows(m: &BitMatrix) -> Vec<Vec<u64>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in 0..m.dim() {
        let row = m.row(r);
        if seen.insert(row.to_vec()) {
            out.push(row.to_vec());
        }
    }
    out
}

/// Distinct centralizers of non-central elements, in order of first appearance.
pub fn noncentral_centralizers(ring: &FiniteRing) -> Vec<CentralizerSet> {
    distinct_centralizers(ring)
        .into_iter()
        .filter(|c| c.size() < ring.order)
        .collect()
}

/// Number of distinct centralizers C(r) over all r in R.
pub fn centralizer_count(ring: &FiniteRing) -> usize {
    distinct_rows(&commutation_matrix(ring)).len()
}

/// Pr(R) computed as the sum of centralizer sizes over |R|^2.
pub fn commuting_probability(ring: &FiniteRing) -> Ratio<u64> {
    let m = commutation_matrix(ring);
    let total: u64 = (0..ring.order).map(|r| m.row_count(r) as u64).sum();
    Ratio::new(total, (ring.order * ring.order) as u64)
}

/// Number of ordered pairs (a, b) with ab = ba, by direct multiplication.
pub fn commuting_pair_count(ring: &FiniteRing) -> u64 {
    let n = ring.order;
    let mut count = 0u64;
    for a in 0..n {
        for b in 0..n {
            if ring.mul(a, b) == ring.mul(b, a) {
                count += 1;
            }
        }
    }
    count
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CcStatus {
    CcRing,
    /// Two elements of one non-central centralizer that do not commute.
    NotCcRing { witness: (usize, usize) },
    NotApplicable,
}

impl CcStatus {
    pub fn is_cc_ring(&self) -> bool {
        matches!(self, CcStatus::CcRing)
    }
}

pub fn is_cc_ring(ring: &FiniteRing) -> CcStatus {
    let m = commutation_matrix(ring);
    let n = ring.order;
    if (0..n).all(|r| m.row_count(r) == n) {
        return CcStatus::NotApplicable;
    }
    for row in distinct_rows(&m) {
        if count_ones(&row) == n {
            continue;
        }
        for x in iter_ones(&row) {
            if !is_subset(&row, m.row(x)) {
                let y = iter_ones(&row)
                    .find(|&y| !m.get(x, y))
                    .expect("subset failure has a witness");
                return CcStatus::NotCcRing { witness: (x, y) };
            }
        }
    }
    CcStatus::CcRing
}

/// Invariant factors `d_1 | d_2 | ... | d_s` of the additive group R/Z(R),
/// ascending; empty when R is commutative.
pub fn additive_quotient_type(ring: &FiniteRing) -> Vec<u64> {
    let z = center(ring);
    let mut central = vec![false; ring.order];
    for &x in z.elements() {
        central[x] = true;
    }
    let quotient = (ring.order / z.size()) as u64;
    // For each prime, #{x + Z : p^j (x + Z) = 0} = p^(sum_i min(a_i, j)).
    let mut primary: Vec<(u64, Vec<u32>)> = Vec::new();
    for (p, e) in factorize(quotient) {
        let mut ranks = Vec::new();
        let mut prev_log = 0u32;
        let mut pj = 1u64;
        loop {
            pj *= p;
            let hits = (0..ring.order)
                .filter(|&x| central[ring.scale(x, pj)])
                .count()
                / z.size();
            let log = ilog(hits as u64, p);
            ranks.push(log - prev_log);
            prev_log = log;
            if log >= e {
                break;
            }
        }
        // ranks[j-1] = number of cyclic factors of exponent >= j
        let mut exponents = Vec::new();
        for j in 0..ranks.len() {
            let next = ranks.get(j + 1).copied().unwrap_or(0);
            for _ in 0..ranks[j] - next {
                exponents.push(j as u32 + 1);
            }
        }
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        primary.push((p, exponents));
    }
    let width = primary.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..width)
        .map(|i| {
            primary
                .iter()
                .map(|(p, exps)| exps.get(i).map_or(1, |&a| p.pow(a)))
                .product()
        })
        .collect();
    factors.sort_unstable();
    factors
}

fn ilog(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x > 1 {
        debug_assert_eq!(x % p, 0);
        x /= p;
        k += 1;
    }
    k
}

/// Whether a set of ring elements (closed under the ring operations) forms a
/// field: it has at least two elements, an identity of its own, and no zero
/// divisors.
pub fn is_field(ring: &FiniteRing, set: &CentralizerSet) -> bool {
    let elems = set.elements();
    if elems.len() < 2 {
        return false;
    }
    let has_identity = elems
        .iter()
        .any(|&e| e != 0 && elems.iter().all(|&x| ring.mul(e, x) == x && ring.mul(x, e) == x));
    let no_zero_divisors = elems
        .iter()
        .filter(|&&a| a != 0)
        .all(|&a| elems.iter().filter(|&&b| b != 0).all(|&b| ring.mul(a, b) != 0));
    has_identity && no_zero_divisors
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_center(ring: &FiniteRing) -> Vec<usize> {
        (0..ring.order())
            .filter(|&z| (0..ring.order()).all(|r| ring.mul(z, r) == ring.mul(r, z)))
            .collect()
    }

    #[test]
    fn coordinates_round_trip() {
        let r = direct_product(&matrix_ring_2x2(2).unwrap(), &ring_zn(3).unwrap()).unwrap();
        assert_eq!(r.moduli(), &[2, 2, 2, 2, 3]);
        for i in 0..r.order() {
            assert_eq!(r.index_of(&r.coords(i)), Some(i));
        }
        assert_eq!(r.index_of(&[0, 0, 0, 0, 3]), None);
    }

    #[test]
    fn built_ins_satisfy_axioms() {
        for ring in [
            ring_noncomm_p2(2).unwrap(),
            ring_noncomm_p2(3).unwrap(),
            matrix_ring_2x2(2).unwrap(),
            upper_triangular_ring(2).unwrap(),
            upper_triangular_ring(3).unwrap(),
            ring_zn(6).unwrap(),
            direct_product(&upper_triangular_ring(2).unwrap(), &ring_zn(3).unwrap()).unwrap(),
        ] {
            check_ring_axioms(&ring).unwrap_or_else(|e| panic!("{}: {e}", ring.name()));
        }
    }

    #[test]
    fn constructors_reject_composites() {
        assert!(matches!(ring_noncomm_p2(4), Err(Error::NotPrime(4))));
        assert!(matches!(matrix_ring_2x2(6), Err(Error::NotPrime(6))));
        assert!(matches!(upper_triangular_ring(1), Err(Error::NotPrime(1))));
    }

    #[test]
    fn centers_match_brute_force() {
        let cases = [
            (ring_noncomm_p2(2).unwrap(), 1),
            (ring_noncomm_p2(3).unwrap(), 1),
            (matrix_ring_2x2(2).unwrap(), 2),
            (matrix_ring_2x2(3).unwrap(), 3),
            (upper_triangular_ring(2).unwrap(), 2),
            (upper_triangular_ring(3).unwrap(), 3),
            (upper_triangular_ring(5).unwrap(), 5),
            (ring_zn(6).unwrap(), 6),
        ];
        for (ring, size) in cases {
            let z = center(&ring);
            assert_eq!(z.elements(), brute_center(&ring).as_slice(), "{}", ring.name());
            assert_eq!(z.size(), size, "{}", ring.name());
        }
    }

    #[test]
    fn matrix_ring_center_is_scalars() {
        let r = matrix_ring_2x2(2).unwrap();
        let identity = r.index_of(&[1, 0, 0, 1]).unwrap();
        assert_eq!(center(&r).elements(), &[0, identity]);
        assert_eq!(r.unity(), Some(identity));
    }

    #[test]
    fn product_centers() {
        let a = direct_product(&matrix_ring_2x2(2).unwrap(), &ring_zn(2).unwrap()).unwrap();
        assert_eq!((a.order(), center(&a).size()), (32, 4));
        let b = direct_product(&upper_triangular_ring(2).unwrap(), &ring_zn(3).unwrap()).unwrap();
        assert_eq!((b.order(), center(&b).size()), (24, 6));
        let c = direct_product(&ring_zn(2).unwrap(), &ring_zn(3).unwrap()).unwrap();
        assert!(c.is_commutative());
        assert_eq!(center(&c).size(), 6);
    }

    #[test]
    fn product_respects_universe_cap() {
        let m = matrix_ring_2x2(3).unwrap();
        let err = direct_product_capped(&m, &m, 5000).unwrap_err();
        assert!(matches!(err, Error::SizeCapExceeded { order: 6561, .. }));
    }

    #[test]
    fn centralizers() {
        let r = matrix_ring_2x2(2).unwrap();
        assert_eq!(centralizer(&r, 0).size(), 16);
        let z = center(&r);
        for x in 0..16 {
            let c = centralizer(&r, x);
            assert!(z.elements().iter().all(|&e| c.contains(e)));
            assert!(c.contains(x));
            if z.contains(x) {
                assert_eq!(c.size(), 16);
            } else {
                assert_eq!(c.size(), 4);
            }
        }
    }

    #[test]
    fn centralizer_counts() {
        assert_eq!(centralizer_count(&ring_noncomm_p2(2).unwrap()), 4);
        assert_eq!(centralizer_count(&ring_zn(6).unwrap()), 1);
        assert_eq!(centralizer_count(&matrix_ring_2x2(2).unwrap()), 8);
    }

    #[test]
    fn commuting_probabilities() {
        let r2 = ring_noncomm_p2(2).unwrap();
        assert_eq!(commuting_probability(&r2), Ratio::new(5, 8));
        assert_eq!(commuting_probability(&ring_zn(6).unwrap()), Ratio::new(1, 1));
        let r3 = ring_noncomm_p2(3).unwrap();
        assert_eq!(commuting_probability(&r3), Ratio::new(11, 27));
        for ring in [r2, r3, matrix_ring_2x2(2).unwrap(), upper_triangular_ring(3).unwrap()] {
            let n = ring.order() as u64;
            assert_eq!(
                commuting_probability(&ring),
                Ratio::new(commuting_pair_count(&ring), n * n)
            );
        }
    }

    #[test]
    fn cc_ring_status() {
        assert_eq!(is_cc_ring(&matrix_ring_2x2(2).unwrap()), CcStatus::CcRing);
        assert_eq!(is_cc_ring(&upper_triangular_ring(3).unwrap()), CcStatus::CcRing);
        assert_eq!(is_cc_ring(&ring_zn(6).unwrap()), CcStatus::NotApplicable);
    }

    #[test]
    fn quotient_types() {
        assert_eq!(additive_quotient_type(&ring_noncomm_p2(2).unwrap()), vec![2, 2]);
        assert_eq!(additive_quotient_type(&ring_noncomm_p2(3).unwrap()), vec![3, 3]);
        assert_eq!(additive_quotient_type(&matrix_ring_2x2(3).unwrap()), vec![3, 3, 3]);
        assert_eq!(additive_quotient_type(&ring_zn(6).unwrap()), Vec::<u64>::new());
        let ut = upper_triangular_ring(5).unwrap();
        assert_eq!(additive_quotient_type(&ut), vec![5, 5]);
    }

    #[test]
    fn table_ring_row_ring_over_f2() {
        // {(a b; 0 0)} over F_2 with coordinates (a, b): (a,b)(c,d) = (ac, ad).
        let table: Vec<Vec<usize>> = (0..4)
            .map(|x| {
                (0..4)
                    .map(|y| {
                        let (a, c, d) = (x / 2, y / 2, y % 2);
                        (a * c % 2) * 2 + (a * d % 2)
                    })
                    .collect()
            })
            .collect();
        let ring = ring_from_table("row", &[2, 2], &table, TableOptions::default()).unwrap();
        assert_eq!(ring.order(), 4);
        assert!(!ring.is_commutative());
        assert!(!ring.commutes(2, 1));
    }

    #[test]
    fn table_ring_z2() {
        let ring = ring_from_table("z2", &[2], &[vec![0, 0], vec![0, 1]], TableOptions::default()).unwrap();
        assert!(ring.is_commutative());
        assert_eq!(ring.unity(), Some(1));
    }

    #[test]
    fn table_ring_errors() {
        let opts = TableOptions::default();
        assert!(matches!(
            ring_from_table("bad", &[2, 2], &[vec![0, 0], vec![0, 1]], opts),
            Err(Error::DimensionMismatch { expected: 4, found: 2 })
        ));
        assert!(matches!(
            ring_from_table("bad", &[2], &[vec![0, 0], vec![0, 2]], opts),
            Err(Error::EntryOutOfRange { row: 1, col: 1, .. })
        ));
        // constant product 1 breaks distributivity: 0*(0+0) = 1 but 0*0 + 0*0 = 0
        let err = ring_from_table("bad", &[2], &[vec![1, 1], vec![1, 1]], opts).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { .. }));
    }

    #[test]
    fn table_ring_associativity_witness() {
        // Bilinear but non-associative on F_2^2: e1*e1 = e2, e2*e1 = e1.
        let ring_mul = |x: usize, y: usize| -> usize {
            let (x1, x2) = (x / 2, x % 2);
            let y1 = y / 2;
            let c1 = (x2 * y1) % 2;
            let c2 = (x1 * y1) % 2;
            c1 * 2 + c2
        };
        let table: Vec<Vec<usize>> = (0..4).map(|x| (0..4).map(|y| ring_mul(x, y)).collect()).collect();
        let err = ring_from_table("nonassoc", &[2, 2], &table, TableOptions::default()).unwrap_err();
        match err {
            Error::AxiomViolation {
                axiom: Axiom::Associativity,
                witness: (a, b, c),
            } => {
                assert_ne!(ring_mul(a, ring_mul(b, c)), ring_mul(ring_mul(a, b), c));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn table_validation_cap() {
        let ring = ring_zn(20).unwrap().to_table();
        let opts = TableOptions {
            validation_cap: 10,
            ..TableOptions::default()
        };
        assert!(matches!(
            ring_from_table("z20", &ring.moduli, &ring.table, opts),
            Err(Error::SizeCapExceeded { what: "table validation", .. })
        ));
        let opts = TableOptions {
            validation_cap: 10,
            skip_validation: true,
            ..TableOptions::default()
        };
        assert!(ring_from_table("z20", &ring.moduli, &ring.table, opts).is_ok());
    }

    #[test]
    fn center_field_detection() {
        let m = matrix_ring_2x2(2).unwrap();
        assert!(is_field(&m, &center(&m)));
        let p = direct_product(&m, &ring_zn(2).unwrap()).unwrap();
        assert!(!is_field(&p, &center(&p)));
    }
}
