//! Dense symmetric eigenvalues for desk-scale cross-checks.
//!
//! Cyclic Jacobi rotations on the full matrix. Quadratically convergent and
//! accurate to a few ulps of the Frobenius norm, which is plenty for the
//! n <= 64 matrices this is meant for.

use crate::error::{Error, Result};
use crate::tree::WeightedTreeMatrix;

pub const ORACLE_LIMIT: usize = 64;

const MAX_SWEEPS: usize = 100;

/// All eigenvalues of the dense matrix behind `m`, ascending.
pub fn dense_spectrum_oracle(m: &WeightedTreeMatrix) -> Result<Vec<f64>> {
    let n = m.len();
    if n > ORACLE_LIMIT {
        return Err(Error::OracleTooLarge {
            n,
            limit: ORACLE_LIMIT,
        });
    }
    Ok(symmetric_eigenvalues(m.to_dense(), n))
}

/// Eigenvalues of a row-major symmetric `n x n` matrix, ascending.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n, "matrix is not n x n");
    let frob: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let floor = f64::EPSILON * frob;

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum::<f64>()
            .sqrt();
        if off <= floor {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                // rotation angle that zeroes a[p][q]
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}
