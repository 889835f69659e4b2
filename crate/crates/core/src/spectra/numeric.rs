//! Cyclic Jacobi eigenvalues for symmetric matrices.

use super::IntSymMatrix;
use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 100;
/// Required off-diagonal Frobenius norm relative to the matrix norm.
pub const RELATIVE_RESIDUAL: f64 = 1e-10;
/// Relative cluster width for merging eigenvalues into one multiplicity group.
pub const CLUSTER_TOL: f64 = 1e-8;

/// Eigenvalues in ascending order. Rotations run in a fixed row-major order,
/// so results are reproducible.
pub fn jacobi_eigenvalues(m: &IntSymMatrix) -> Result<Vec<f64>> {
    let n = m.n();
    let mut a: Vec<f64> = (0..n * n).map(|k| m.get(k / n, k % n) as f64).collect();
    let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let off_norm = |a: &[f64]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };
    let target = RELATIVE_RESIDUAL * 1e-3 * norm;
    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= target || off == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            let residual = off / norm;
            if residual <= RELATIVE_RESIDUAL {
                break;
            }
            return Err(Error::NoConvergence { sweeps, residual });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    a[k * n + p] = new_kp;
                    a[p * n + k] = new_kp;
                    a[k * n + q] = new_kq;
                    a[q * n + k] = new_kq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Groups sorted eigenvalues whose consecutive gaps are below
/// `CLUSTER_TOL * max(1, max|entry| * n)`; each group reports its mean.
pub fn cluster(values: &[f64], m: &IntSymMatrix) -> Vec<(f64, u64)> {
    let width = CLUSTER_TOL * f64::max(1.0, m.max_abs() as f64 * m.n() as f64);
    let mut groups: Vec<Vec<f64>> = Vec::new();
    for &v in values {
        match groups.last_mut() {
            Some(g) if v - g.last().copied().unwrap_or(v) < width => g.push(v),
            _ => groups.push(vec![v]),
        }
    }
    groups
        .into_iter()
        .map(|g| (g.iter().sum::<f64>() / g.len() as f64, g.len() as u64))
        .collect()
}
