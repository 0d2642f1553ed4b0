//! Orthonormal bases for spans of coherent states, projection of mixtures
//! into them, and von Neumann entropies.
//!
//! Every inner product is evaluated analytically from the coherent-state
//! overlap, so no Fock truncation enters this module. Gram–Schmidt runs on
//! the difference set {|α₁⟩, |α₂⟩−|α₁⟩, …}; the Gram entries of that set are
//! built from ⟨a|b⟩ − 1 and keep full relative precision when the
//! amplitudes nearly coincide.

use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::hermitian_eigenvalues;
use crate::scalar::Real;
use crate::states::{overlap, overlap_minus_one, separation, CoherentMixture, ComplexAmplitude, MERGE_THRESHOLD};

/// Residual norm below which a Gram–Schmidt vector is dropped.
pub const GS_THRESHOLD: f64 = 1e-10;
/// Trace deviation and eigenvalue negativity tolerated for a state.
pub const STATE_TOL: f64 = 1e-10;
/// Entry-wise Hermiticity tolerance relative to the Frobenius norm.
pub const HERMITIAN_TOL: f64 = 1e-12;

fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// Orthonormal basis {|u_j⟩} of span{|α_i⟩}.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoBasis<T> {
    source_amplitudes: Vec<ComplexAmplitude<T>>,
    /// Row j: |u_j⟩ = Σ_i coeffs[j][i] |α_i⟩ (lower triangular in source order).
    coeffs: Vec<Vec<Complex<T>>>,
    /// Row j: |u_j⟩ = diff_coeffs[j][0] |α₁⟩ + Σ_{i≥1} diff_coeffs[j][i] (|α_i⟩ − |α₁⟩).
    diff_coeffs: Vec<Vec<Complex<T>>>,
    /// Source index each retained vector was built from.
    pivots: Vec<usize>,
}

impl<T: Real> OrthoBasis<T> {
    pub fn source_amplitudes(&self) -> &[ComplexAmplitude<T>] {
        &self.source_amplitudes
    }

    pub fn coeffs(&self) -> &[Vec<Complex<T>>] {
        &self.coeffs
    }

    /// Source index of each retained basis vector.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn effective_dim(&self) -> usize {
        self.coeffs.len()
    }

    // ⟨w_i|α⟩ for the difference set.
    fn difference_overlaps(&self, alpha: ComplexAmplitude<T>) -> Vec<Complex<T>> {
        let reference = self.source_amplitudes[0];
        let first = overlap_minus_one(reference, alpha);
        let mut out = Vec::with_capacity(self.source_amplitudes.len());
        out.push(first + Complex::new(T::one(), T::zero()));
        for &a in &self.source_amplitudes[1..] {
            out.push(overlap_minus_one(a, alpha) - first);
        }
        out
    }

    /// ⟨u_j|α⟩ for every basis vector.
    pub fn coordinates(&self, alpha: ComplexAmplitude<T>) -> Vec<Complex<T>> {
        let w = self.difference_overlaps(alpha);
        self.diff_coeffs
            .iter()
            .map(|row| row.iter().zip(&w).map(|(c, x)| c.conj() * *x).sum())
            .collect()
    }

    /// Whether `alpha` coincides with one of the source amplitudes.
    pub fn contains(&self, alpha: ComplexAmplitude<T>) -> bool {
        self.source_amplitudes.iter().any(|&a| separation(a, alpha) <= T::lit(MERGE_THRESHOLD))
    }

    /// ⟨u_i|u_j⟩ recomputed through the plain overlap; used to check orthonormality.
    pub fn inner_product(&self, i: usize, j: usize) -> Complex<T> {
        let n = self.source_amplitudes.len();
        let mut acc = czero();
        for p in 0..n {
            for q in 0..n {
                let g = overlap(self.source_amplitudes[p], self.source_amplitudes[q]);
                acc = acc + self.coeffs[i][p].conj() * g * self.coeffs[j][q];
            }
        }
        acc
    }
}

/// Modified Gram–Schmidt with one re-orthogonalisation pass. Vectors whose
/// residual norm falls below [`GS_THRESHOLD`] are dropped.
pub fn gram_schmidt<T: Real>(amplitudes: &[ComplexAmplitude<T>]) -> Result<OrthoBasis<T>> {
    let n = amplitudes.len();
    if n == 0 {
        return Err(Error::EmptyMixture);
    }
    let one = Complex::new(T::one(), T::zero());

    // Gram matrix of w_0 = α_0, w_i = α_i − α_0.
    let em1: Vec<Vec<Complex<T>>> = amplitudes
        .iter()
        .map(|&a| amplitudes.iter().map(|&b| overlap_minus_one(a, b)).collect())
        .collect();
    let mut gram = vec![vec![czero::<T>(); n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = match (i, j) {
                (0, 0) => one,
                (0, _) => em1[0][j],
                (_, 0) => em1[i][0],
                _ => em1[i][j] - em1[i][0] - em1[0][j],
            };
        }
    }
    let inner = |x: &[Complex<T>], y: &[Complex<T>]| -> Complex<T> {
        let mut acc = czero();
        for i in 0..n {
            if x[i] == czero() {
                continue;
            }
            let row: Complex<T> = (0..n).map(|j| gram[i][j] * y[j]).sum();
            acc = acc + x[i].conj() * row;
        }
        acc
    };

    let threshold = T::tolerance(GS_THRESHOLD);
    let mut diff_coeffs: Vec<Vec<Complex<T>>> = Vec::new();
    let mut pivots = Vec::new();
    for j in 0..n {
        let mut v = vec![czero::<T>(); n];
        v[j] = one;
        for _pass in 0..2 {
            for u in &diff_coeffs {
                let proj = inner(u, &v);
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi = *vi - proj * *ui;
                }
            }
        }
        let norm = inner(&v, &v).re.max(T::zero()).sqrt();
        if norm < threshold {
            continue;
        }
        for vi in v.iter_mut() {
            *vi = *vi / Complex::new(norm, T::zero());
        }
        diff_coeffs.push(v);
        pivots.push(j);
    }

    // Back to the α basis: α_0 picks up −Σ_{i≥1} c_i.
    let coeffs = diff_coeffs
        .iter()
        .map(|row| {
            let mut out = row.clone();
            let tail: Complex<T> = row[1..].iter().copied().sum();
            out[0] = row[0] - tail;
            out
        })
        .collect();
    Ok(OrthoBasis { source_amplitudes: amplitudes.to_vec(), coeffs, diff_coeffs, pivots })
}

/// Which basis a [`HermitianMatrix`] is written in.
#[derive(Debug, Clone, PartialEq)]
pub enum BasisTag<T> {
    Coherent(Arc<OrthoBasis<T>>),
    /// Tensor product, first factor is the slow (row-block) index.
    Product(Arc<OrthoBasis<T>>, Arc<OrthoBasis<T>>),
    Standard,
}

/// Finite Hermitian matrix (row-major) with basis metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
    basis: BasisTag<T>,
}

impl<T: Real> HermitianMatrix<T> {
    /// Rejects matrices that are not Hermitian within [`HERMITIAN_TOL`] of
    /// their Frobenius norm; the stored entries are symmetrised.
    pub fn new(dim: usize, mut entries: Vec<Complex<T>>, basis: BasisTag<T>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::InvalidArgument(format!("{} entries for dimension {dim}", entries.len())));
        }
        let norm = entries.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        let tol = T::tolerance(HERMITIAN_TOL) * norm.max(T::one());
        let half = T::lit(0.5);
        for i in 0..dim {
            for j in i..dim {
                let a = entries[i * dim + j];
                let b = entries[j * dim + i];
                if (a - b.conj()).norm() > tol {
                    return Err(Error::NotAState(format!("entry ({i},{j}) breaks Hermiticity")));
                }
                let m = (a + b.conj()).scale(half);
                entries[i * dim + j] = m;
                entries[j * dim + i] = m.conj();
            }
        }
        Ok(Self { dim, entries, basis })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn basis(&self) -> &BasisTag<T> {
        &self.basis
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.entries[i * self.dim + j]
    }

    pub fn trace(&self) -> T {
        (0..self.dim).map(|i| self.entries[i * self.dim + i].re).sum()
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        hermitian_eigenvalues(&self.entries, self.dim)
    }
}

/// ρ_jk = ⟨u_j|ρ|u_k⟩ for a mixture whose amplitudes all belong to the basis.
pub fn project_mixture<T: Real>(mixture: &CoherentMixture<T>, basis: &Arc<OrthoBasis<T>>) -> Result<HermitianMatrix<T>> {
    let dim = basis.effective_dim();
    let mut entries = vec![czero::<T>(); dim * dim];
    for (index, (p, alpha)) in mixture.elements().iter().enumerate() {
        if !basis.contains(*alpha) {
            return Err(Error::BasisMismatch { index });
        }
        let x = basis.coordinates(*alpha);
        for j in 0..dim {
            for k in 0..dim {
                entries[j * dim + k] = entries[j * dim + k] + (x[j] * x[k].conj()).scale(*p);
            }
        }
    }
    HermitianMatrix::new(dim, entries, BasisTag::Coherent(Arc::clone(basis)))
}

/// Builds the basis from the mixture's own amplitudes and projects into it.
pub fn project_into_own_span<T: Real>(mixture: &CoherentMixture<T>) -> Result<HermitianMatrix<T>> {
    let basis = Arc::new(gram_schmidt(&mixture.amplitudes())?);
    project_mixture(mixture, &basis)
}

/// Eigenvalues of a density matrix after the state checks of [`entropy`],
/// with values in [−tol, 0) clamped to zero.
pub fn state_spectrum<T: Real>(m: &HermitianMatrix<T>) -> Result<Vec<T>> {
    let tol = T::tolerance(STATE_TOL);
    let trace = m.trace();
    if (trace - T::one()).abs() > tol {
        return Err(Error::NotAState(format!("trace {}", trace.as_f64())));
    }
    let mut values = m.eigenvalues()?;
    for v in values.iter_mut() {
        if *v < -tol {
            return Err(Error::NotAState(format!("negative eigenvalue {}", v.as_f64())));
        }
        if *v < T::zero() {
            *v = T::zero();
        }
    }
    Ok(values)
}

/// S(ρ) = −Σ λ ln λ in nats.
pub fn entropy<T: Real>(m: &HermitianMatrix<T>) -> Result<T> {
    Ok(entropy_of_spectrum(&state_spectrum(m)?))
}

/// −Σ λ ln λ over non-negative eigenvalues.
pub fn entropy_of_spectrum<T: Real>(values: &[T]) -> T {
    values.iter().map(|v| v.xlogx_neg()).sum::<T>().max(T::zero())
}

/// Entropy of a coherent mixture via its own span.
pub fn mixture_entropy<T: Real>(mixture: &CoherentMixture<T>) -> Result<T> {
    entropy(&project_into_own_span(mixture)?)
}
