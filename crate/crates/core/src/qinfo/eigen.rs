//! Cyclic Jacobi eigensolver for small complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the classical real Jacobi rotation, so one step
//! is the unitary
//!
//! ```text
//! J = | c          s        |   (rows/cols p, q)
//!     | −s·e^{−iφ}  c·e^{−iφ} |
//! ```
//!
//! with `φ = arg a_pq`, and `A ← J† A J` zeroes `a_pq` exactly.

use num_complex::Complex64;

use super::DensityMatrix;
use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 100;

/// Off-diagonal Frobenius norm at which iteration stops, relative to `max(1, ‖A‖_F)`.
const OFF_TOL: f64 = 1e-13;

const INPUT_HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Eigenvectors as columns, row-major `n×n`, matching `values`.
    pub vectors: Vec<Complex64>,
    /// `max_k ‖A v_k − λ_k v_k‖₂`.
    pub residual: f64,
    pub sweeps: usize,
}

/// Real spectrum of a density matrix, descending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub residual: f64,
}

impl Spectrum {
    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }
}

pub fn eigenvalues_hermitian(rho: &DensityMatrix) -> Result<Spectrum> {
    let eig = hermitian_eigen(rho.entries(), rho.dim())?;
    Ok(Spectrum {
        eigenvalues: eig.values,
        residual: eig.residual,
    })
}

fn off_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                s += a[p * n + q].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Full eigendecomposition of the Hermitian matrix `a` (row-major `n×n`).
pub fn hermitian_eigen(a: &[Complex64], n: usize) -> Result<HermitianEigen> {
    if a.len() != n * n {
        return Err(Error::DimensionMismatch(format!("{} entries for {n}x{n}", a.len())));
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::arg("matrix", "non-finite entry"));
    }
    let frob = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let scale = frob.max(1.0);
    let mut herm_dev = 0.0_f64;
    for p in 0..n {
        for q in p..n {
            herm_dev = herm_dev.max((a[p * n + q] - a[q * n + p].conj()).norm());
        }
    }
    if herm_dev > INPUT_HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian { deviation: herm_dev });
    }

    let mut m = a.to_vec();
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
        m[i * n + i].im = 0.0;
    }

    let tol = OFF_TOL * scale;
    let mut sweeps = 0;
    loop {
        let off = off_norm(&m, n);
        if off <= tol {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, n, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j * n + j].re.total_cmp(&m[i * n + i].re));
    let values: Vec<f64> = order.iter().map(|&i| m[i * n + i].re).collect();
    let mut vectors = vec![Complex64::new(0.0, 0.0); n * n];
    for (col, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[r * n + col] = v[r * n + src];
        }
    }

    let mut residual = 0.0_f64;
    for (k, &lam) in values.iter().enumerate() {
        let mut r2 = 0.0;
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += a[i * n + j] * vectors[j * n + k];
            }
            r2 += (acc - vectors[i * n + k] * lam).norm_sqr();
        }
        residual = residual.max(r2.sqrt());
    }

    Ok(HermitianEigen {
        values,
        vectors,
        residual,
        sweeps,
    })
}

fn rotate(m: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let b = m[p * n + q];
    let r = b.norm();
    if r == 0.0 {
        return;
    }
    let phase = b / r;
    let app = m[p * n + p].re;
    let aqq = m[q * n + q].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    // A ← A J
    for k in 0..n {
        let akp = m[k * n + p];
        let akq = m[k * n + q];
        m[k * n + p] = akp * jpp + akq * jqp;
        m[k * n + q] = akp * jpq + akq * jqq;
    }
    // A ← J† A
    for k in 0..n {
        let apk = m[p * n + k];
        let aqk = m[q * n + k];
        m[p * n + k] = jpp.conj() * apk + jqp.conj() * aqk;
        m[q * n + k] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    m[p * n + q] = Complex64::new(0.0, 0.0);
    m[q * n + p] = Complex64::new(0.0, 0.0);
    m[p * n + p].im = 0.0;
    m[q * n + q].im = 0.0;
    // V ← V J
    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * jpp + vkq * jqp;
        v[k * n + q] = vkp * jpq + vkq * jqq;
    }
}
