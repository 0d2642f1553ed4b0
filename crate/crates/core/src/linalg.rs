//! Dense complex Hermitian eigensolver (cyclic Jacobi).

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    /// Ascending eigenvalues.
    pub values: Vec<T>,
    /// Row-major `dim × dim`; column `k` is the eigenvector of `values[k]`.
    pub vectors: Vec<Complex<T>>,
}

/// Eigenvalues of a Hermitian matrix stored row-major, ascending.
pub fn hermitian_eigenvalues<T: Real>(entries: &[Complex<T>], dim: usize) -> Result<Vec<T>> {
    jacobi(entries, dim, false).map(|e| e.values)
}

/// Eigenvalues and eigenvectors of a Hermitian matrix stored row-major.
pub fn hermitian_eigen<T: Real>(entries: &[Complex<T>], dim: usize) -> Result<HermitianEigen<T>> {
    jacobi(entries, dim, true)
}

fn jacobi<T: Real>(entries: &[Complex<T>], n: usize, want_vectors: bool) -> Result<HermitianEigen<T>> {
    if entries.len() != n * n {
        return Err(Error::InvalidArgument(format!(
            "expected {} entries for a {n}x{n} matrix, got {}",
            n * n,
            entries.len()
        )));
    }
    // Work on the Hermitian part so tiny asymmetries cannot stall convergence.
    let half = T::lit(0.5);
    let mut a: Vec<Complex<T>> = vec![Complex::new(T::zero(), T::zero()); n * n];
    for i in 0..n {
        a[i * n + i] = Complex::new(entries[i * n + i].re, T::zero());
        for j in (i + 1)..n {
            let v = (entries[i * n + j] + entries[j * n + i].conj()).scale(half);
            a[i * n + j] = v;
            a[j * n + i] = v.conj();
        }
    }
    let mut v = if want_vectors {
        let mut id = vec![Complex::new(T::zero(), T::zero()); n * n];
        for i in 0..n {
            id[i * n + i] = Complex::new(T::one(), T::zero());
        }
        id
    } else {
        Vec::new()
    };

    let total: T = a.iter().map(|z| z.norm_sqr()).sum();
    let threshold = T::epsilon() * T::epsilon() * total;
    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let off: T = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].norm_sqr())
            .sum();
        if off <= threshold || off == T::zero() {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, n, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::Numerical("Jacobi eigensolver did not converge".into()));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.partial_cmp(&a[j * n + j].re).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = if want_vectors {
        let mut out = vec![Complex::new(T::zero(), T::zero()); n * n];
        for (k, &col) in order.iter().enumerate() {
            for r in 0..n {
                out[r * n + k] = v[r * n + col];
            }
        }
        out
    } else {
        Vec::new()
    };
    Ok(HermitianEigen { values, vectors })
}

// Annihilates a[p][q] with the unitary J = diag(1, e^{-iγ}) · R(θ), applied as A ← J† A J.
fn rotate<T: Real>(a: &mut [Complex<T>], v: &mut [Complex<T>], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let g = apq.norm();
    if g == T::zero() {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let phase = apq / Complex::new(g, T::zero());
    let tau = (aqq - app) / (T::lit(2.0) * g);
    let t = if tau >= T::zero() {
        T::one() / (tau + (T::one() + tau * tau).sqrt())
    } else {
        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    let jpp = Complex::new(c, T::zero());
    let jpq = Complex::new(s, T::zero());
    let jqp = phase.conj().scale(-s);
    let jqq = phase.conj().scale(c);

    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * jpp + akq * jqp;
        a[k * n + q] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = jpp.conj() * apk + jqp.conj() * aqk;
        a[q * n + k] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[p * n + q] = Complex::new(T::zero(), T::zero());
    a[q * n + p] = Complex::new(T::zero(), T::zero());
    a[p * n + p].im = T::zero();
    a[q * n + q].im = T::zero();

    if !v.is_empty() {
        for k in 0..n {
            let vkp = v[k * n + p];
            let vkq = v[k * n + q];
            v[k * n + p] = vkp * jpp + vkq * jqp;
            v[k * n + q] = vkp * jpq + vkq * jqq;
        }
    }
}
