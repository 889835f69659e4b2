//! Exact characteristic polynomials and their integer roots.
//!
//! The polynomial is computed block by block over the connected components
//! of the matrix's nonzero pattern (a symmetric permutation makes the matrix
//! block diagonal, so the polynomial is the product of the blocks'). Each
//! block uses the Faddeev–LeVerrier recurrence over big integers; its one
//! division per step must be exact, which doubles as the integrality check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntSymMatrix;
use crate::error::{Error, Result};

/// Coefficients of det(xI - M), lowest degree first; monic of degree n.
pub fn characteristic_polynomial(m: &IntSymMatrix) -> Result<Vec<BigInt>> {
    let mut poly = vec![BigInt::one()];
    for block in m.blocks() {
        let sub = m.principal_submatrix(&block);
        poly = poly_mul(&poly, &faddeev_leverrier(&sub)?);
    }
    Ok(poly)
}

/// Faddeev–LeVerrier on the whole matrix, no block splitting.
pub fn faddeev_leverrier(m: &IntSymMatrix) -> Result<Vec<BigInt>> {
    let n = m.n();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    if n == 0 {
        return Ok(coeffs);
    }
    // sparse rows of A
    let rows: Vec<Vec<(usize, i64)>> = (0..n)
        .map(|i| {
            (0..n)
                .filter_map(|j| {
                    let v = m.get(i, j);
                    (v != 0).then_some((j, v))
                })
                .collect()
        })
        .collect();
    // M_0 = 0, so A*M_0 = 0
    let mut am: Vec<BigInt> = vec![BigInt::zero(); n * n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut mk = am;
        for i in 0..n {
            mk[i * n + i] += &coeffs[n - k + 1];
        }
        // A M_k
        let mut next = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for &(j, a) in &rows[i] {
                let src = &mk[j * n..(j + 1) * n];
                let dst = &mut next[i * n..(i + 1) * n];
                for (d, s) in dst.iter_mut().zip(src) {
                    if !s.is_zero() {
                        *d += s * a;
                    }
                }
            }
        }
        let trace: BigInt = (0..n).map(|i| &next[i * n + i]).sum();
        let (q, r) = trace.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::NonIntegralCoefficient { step: k });
        }
        coeffs[n - k] = -q;
        am = next;
    }
    Ok(coeffs)
}

pub fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn eval(poly: &[BigInt], x: i64) -> BigInt {
    let x = BigInt::from(x);
    poly.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
}

/// Divides by (x - root); returns the quotient when the remainder is zero.
fn divide_root(poly: &[BigInt], root: i64) -> Option<Vec<BigInt>> {
    let deg = poly.len() - 1;
    let mut quotient = vec![BigInt::zero(); deg];
    let mut carry = BigInt::zero();
    for i in (1..=deg).rev() {
        carry = &poly[i] + carry * root;
        quotient[i - 1] = carry.clone();
    }
    let remainder = &poly[0] + carry * root;
    remainder.is_zero().then_some(quotient)
}

/// Integer roots with multiplicity, searched among divisors of the trailing
/// nonzero coefficient with absolute value at most `bound`; also returns
/// the degree of the unsplit residual factor.
pub fn integer_roots(poly: &[BigInt], bound: u64) -> (BTreeMap<i64, u64>, usize) {
    let mut poly: Vec<BigInt> = poly.to_vec();
    let mut roots = BTreeMap::new();
    let mut zeros = 0;
    while poly.len() > 1 && poly[0].is_zero() {
        poly.remove(0);
        zeros += 1;
    }
    if zeros > 0 {
        roots.insert(0, zeros);
    }
    'search: for c in 1..=bound as i64 {
        for candidate in [-c, c] {
            loop {
                if poly.len() == 1 {
                    break 'search;
                }
                if !(&poly[0] % BigInt::from(candidate)).is_zero() {
                    break;
                }
                match divide_root(&poly, candidate) {
                    Some(q) => {
                        poly = q;
                        *roots.entry(candidate).or_insert(0) += 1;
                    }
                    None => break,
                }
            }
        }
    }
    debug_assert!(poly.last().is_some_and(|c| c.abs().is_one()));
    (roots, poly.len() - 1)
}
