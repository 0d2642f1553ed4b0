//! Truncated Fock-basis representation of coherent mixtures.
//!
//! This is the brute-force counterpart of [`crate::subspace`]: states are
//! expanded in |0⟩…|n_max⟩, and dense matrices are diagonalised with
//! nalgebra in double precision. The module also hosts the Fock-basis
//! coherence monotones C_l1 and C_RE, the series h0/h1 and their large-|α|
//! asymptotes.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimize::{linspace, nelder_mead, NelderMeadOptions};
use crate::scalar::Real;
use crate::special::ln_factorials;
use crate::splitter::{reduce, Mode, TwoModeMixture};
use crate::states::{CoherentMixture, ComplexAmplitude};

pub const DEFAULT_TAIL_BOUND: f64 = 1e-12;
/// Tail bound used to size C_l1 / C_RE sums before the +25% margin.
pub const MONOTONE_TAIL_BOUND: f64 = 1e-14;
pub const MIN_TRUNCATION: usize = 16;
/// Largest (n_A+1)(n_B+1) accepted by the two-mode oracle.
pub const MAX_TWO_MODE_FOCK_DIM: usize = 2048;
/// Largest n_max + 1 accepted where a dense single-mode matrix is needed.
pub const MAX_FOCK_DIM: usize = 4096;

fn check_dim(n_max: usize) -> Result<()> {
    if n_max + 1 > MAX_FOCK_DIM {
        return Err(Error::DimensionOverflow { dim: n_max + 1, limit: MAX_FOCK_DIM });
    }
    Ok(())
}

fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// ln of the Poisson(λ) probability mass at k, given ln k!.
fn ln_poisson(lambda: f64, k: usize, ln_kfact: f64) -> f64 {
    if lambda == 0.0 {
        return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    -lambda + k as f64 * lambda.ln() - ln_kfact
}

/// P(N > n) for N ~ Poisson(λ), summed directly from n+1 upwards.
pub fn poisson_tail(lambda: f64, n: usize) -> f64 {
    if lambda == 0.0 {
        return 0.0;
    }
    let mut ln_fact: f64 = (1..=n + 1).map(|k| (k as f64).ln()).sum();
    let mut k = n + 1;
    let mut sum = 0.0;
    loop {
        let term = ln_poisson(lambda, k, ln_fact).exp();
        sum += term;
        if (k as f64) > lambda && term < sum * 1e-17 {
            break;
        }
        k += 1;
        ln_fact += (k as f64).ln();
    }
    sum
}

/// Smallest n_max (at least [`MIN_TRUNCATION`]) for which every
/// component's photon-number tail beyond n_max is below `tail_bound`.
pub fn auto_truncation<T: Real>(mixture: &CoherentMixture<T>, tail_bound: T) -> usize {
    let bound = tail_bound.as_f64();
    mixture
        .amplitudes()
        .iter()
        .map(|a| {
            let lambda = a.norm_sqr().as_f64();
            // Start below the mean and walk upwards; the tail is monotone in n.
            let mut n = (lambda - 4.0 * lambda.sqrt()).max(0.0) as usize;
            while poisson_tail(lambda, n) >= bound {
                n += 1;
            }
            n
        })
        .max()
        .unwrap_or(0)
        .max(MIN_TRUNCATION)
}

/// Truncation used for the coherence monotones: tail 1e-14 plus 25%,
/// grown in further 25% steps until doubling it moves C_l1 by less than
/// 10 × [`DEFAULT_TAIL_BOUND`] (relative to max(1, C_l1)).
pub fn monotone_truncation<T: Real>(mixture: &CoherentMixture<T>) -> Result<usize> {
    let mut n = auto_truncation(mixture, T::lit(MONOTONE_TAIL_BOUND));
    n += n.div_ceil(4);
    check_dim(n)?;
    let tol = T::lit(10.0 * DEFAULT_TAIL_BOUND);
    for _ in 0..32 {
        let here = c_l1(mixture, n);
        let doubled = c_l1(mixture, 2 * n);
        if (here - doubled).abs() < tol * doubled.abs().max(T::one()) {
            return Ok(n);
        }
        n += n.div_ceil(4);
        check_dim(n)?;
    }
    Err(Error::Numerical(format!("C_l1 truncation did not settle by n_max = {n}")))
}

/// ⟨k|α⟩ = e^{−|α|²/2} α^k / √k! for k = 0..=n_max, built in log space.
pub fn coherent_vector<T: Real>(alpha: ComplexAmplitude<T>, n_max: usize) -> Vec<Complex<T>> {
    let lf = ln_factorials::<T>(n_max);
    let r = alpha.magnitude();
    let theta = alpha.im.atan2(alpha.re);
    let half = T::lit(0.5);
    (0..=n_max)
        .map(|k| {
            if r == T::zero() {
                return if k == 0 { Complex::new(T::one(), T::zero()) } else { czero() };
            }
            let kk = T::lit(k as f64);
            let ln_mag = -half * r * r + kk * r.ln() - half * lf[k];
            Complex::from_polar(ln_mag.exp(), kk * theta)
        })
        .collect()
}

/// Dense spectrum of a Hermitian matrix, in f64 through nalgebra.
fn spectrum_f64<T: Real>(entries: &[Complex<T>], dim: usize) -> Vec<f64> {
    let m = DMatrix::from_fn(dim, dim, |i, j| {
        let z = entries[i * dim + j];
        Complex::new(z.re.as_f64(), z.im.as_f64())
    });
    let m = (&m + m.adjoint()) * Complex::new(0.5, 0.0);
    SymmetricEigen::new(m).eigenvalues.iter().copied().collect()
}

fn entropy_from_spectrum_f64(values: &[f64]) -> f64 {
    values.iter().filter(|v| **v > 0.0).map(|v| -v * v.ln()).sum::<f64>().max(0.0)
}

/// ρ truncated to |0⟩…|n_max⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct FockMatrix<T> {
    n_max: usize,
    entries: Vec<Complex<T>>,
    truncation_error: T,
}

impl<T: Real> FockMatrix<T> {
    fn from_entries(n_max: usize, entries: Vec<Complex<T>>) -> Self {
        let dim = n_max + 1;
        let trace: T = (0..dim).map(|i| entries[i * dim + i].re).sum();
        Self { n_max, entries, truncation_error: (T::one() - trace).max(T::zero()) }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    /// ρ_{k,n} = ⟨k|ρ|n⟩
    pub fn get(&self, k: usize, n: usize) -> Complex<T> {
        self.entries[k * self.dim() + n]
    }

    /// Discarded trace, 1 − Tr ρ.
    pub fn truncation_error(&self) -> T {
        self.truncation_error
    }

    pub fn trace(&self) -> T {
        (0..self.dim()).map(|i| self.get(i, i).re).sum()
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.dim()).map(|i| self.get(i, i).re).collect()
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<T> {
        let mut v = spectrum_f64(&self.entries, self.dim());
        v.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        v.into_iter().map(T::lit).collect()
    }

    /// von Neumann entropy of the truncated matrix.
    pub fn entropy(&self) -> T {
        T::lit(entropy_from_spectrum_f64(&spectrum_f64(&self.entries, self.dim())))
    }
}

/// ρ_{k,n} = Σ_j p_j e^{−|α_j|²} α_j^k α_j^{*n} / √(k! n!) for k, n ≤ n_max.
pub fn to_fock<T: Real>(mixture: &CoherentMixture<T>, n_max: usize) -> FockMatrix<T> {
    let dim = n_max + 1;
    let mut entries = vec![czero::<T>(); dim * dim];
    for (p, alpha) in mixture.elements() {
        let c = coherent_vector(*alpha, n_max);
        for k in 0..dim {
            for n in 0..dim {
                entries[k * dim + n] = entries[k * dim + n] + (c[k] * c[n].conj()).scale(*p);
            }
        }
    }
    FockMatrix::from_entries(n_max, entries)
}

/// Entropy of the mixture computed by brute-force diagonalisation in the
/// Fock basis, truncated by [`auto_truncation`].
pub fn entropy_oracle<T: Real>(mixture: &CoherentMixture<T>, tail_bound: T) -> Result<T> {
    let n = auto_truncation(mixture, tail_bound);
    check_dim(n)?;
    Ok(to_fock(mixture, n).entropy())
}

/// Dense two-mode Fock matrix, index (a, b) ↦ a·(n_B+1) + b.
#[derive(Debug, Clone)]
pub struct TwoModeFock<T> {
    n_a: usize,
    n_b: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Real> TwoModeFock<T> {
    pub fn new(state: &TwoModeMixture<T>, n_a: usize, n_b: usize) -> Result<Self> {
        let (da, db) = (n_a + 1, n_b + 1);
        let dim = da * db;
        if dim > MAX_TWO_MODE_FOCK_DIM {
            return Err(Error::DimensionOverflow { dim, limit: MAX_TWO_MODE_FOCK_DIM });
        }
        let mut entries = vec![czero::<T>(); dim * dim];
        for (p, a, b) in state.elements() {
            let ca = coherent_vector(*a, n_a);
            let cb = coherent_vector(*b, n_b);
            let v: Vec<Complex<T>> = ca.iter().flat_map(|x| cb.iter().map(move |y| *x * *y)).collect();
            for r in 0..dim {
                if v[r] == czero() {
                    continue;
                }
                for c in 0..dim {
                    entries[r * dim + c] = entries[r * dim + c] + (v[r] * v[c].conj()).scale(*p);
                }
            }
        }
        Ok(Self { n_a, n_b, entries })
    }

    pub fn dim(&self) -> usize {
        (self.n_a + 1) * (self.n_b + 1)
    }

    pub fn entropy(&self) -> T {
        T::lit(entropy_from_spectrum_f64(&spectrum_f64(&self.entries, self.dim())))
    }

    /// Reduced state of the kept mode.
    pub fn partial_trace(&self, keep: Mode) -> FockMatrix<T> {
        let (da, db) = (self.n_a + 1, self.n_b + 1);
        let dim = self.dim();
        match keep {
            Mode::A => {
                let mut out = vec![czero::<T>(); da * da];
                for a in 0..da {
                    for a2 in 0..da {
                        out[a * da + a2] = (0..db).map(|b| self.entries[(a * db + b) * dim + a2 * db + b]).sum();
                    }
                }
                FockMatrix::from_entries(self.n_a, out)
            }
            Mode::B => {
                let mut out = vec![czero::<T>(); db * db];
                for b in 0..db {
                    for b2 in 0..db {
                        out[b * db + b2] = (0..da).map(|a| self.entries[(a * db + b) * dim + a * db + b2]).sum();
                    }
                }
                FockMatrix::from_entries(self.n_b, out)
            }
        }
    }

    /// ⟨x|ρ|y⟩_A: partial matrix element over mode A, an operator on mode B.
    pub fn partial_element(&self, x: &[Complex<T>], y: &[Complex<T>]) -> Vec<Complex<T>> {
        let (da, db) = (self.n_a + 1, self.n_b + 1);
        let dim = self.dim();
        let mut out = vec![czero::<T>(); db * db];
        for (a, xa) in x.iter().enumerate().take(da) {
            if *xa == czero() {
                continue;
            }
            for (a2, ya) in y.iter().enumerate().take(da) {
                if *ya == czero() {
                    continue;
                }
                let w = xa.conj() * *ya;
                for b in 0..db {
                    for b2 in 0..db {
                        out[b * db + b2] = out[b * db + b2] + w * self.entries[(a * db + b) * dim + a2 * db + b2];
                    }
                }
            }
        }
        out
    }
}

/// Per-mode truncations sized by [`auto_truncation`] on each reduction.
pub fn two_mode_fock<T: Real>(state: &TwoModeMixture<T>, tail_bound: T) -> Result<TwoModeFock<T>> {
    let n_a = auto_truncation(&reduce(state, Mode::A), tail_bound);
    let n_b = auto_truncation(&reduce(state, Mode::B), tail_bound);
    TwoModeFock::new(state, n_a, n_b)
}

/// S(ρ^{AB}) by dense diagonalisation of the truncated two-mode matrix.
pub fn entropy_oracle_two_mode<T: Real>(state: &TwoModeMixture<T>, tail_bound: T) -> Result<T> {
    Ok(two_mode_fock(state, tail_bound)?.entropy())
}

/// Entropic quantities recomputed entirely in the truncated Fock space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockDiscord<T> {
    pub total_entropy: T,
    pub entropy_a: T,
    pub entropy_b: T,
    pub min_conditional_entropy: T,
    pub discord: T,
}

// Orthonormal Fock vectors spanning the mode-A amplitudes, numerically.
fn fock_span<T: Real>(amps: &[ComplexAmplitude<T>], n_max: usize) -> Vec<Vec<Complex<T>>> {
    let mut out: Vec<Vec<Complex<T>>> = Vec::new();
    for a in amps {
        let mut v = coherent_vector(*a, n_max);
        for _ in 0..2 {
            for u in &out {
                let proj: Complex<T> = u.iter().zip(&v).map(|(x, y)| x.conj() * *y).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi = *vi - proj * *ui;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if norm > T::lit(1e-7) {
            out.push(v.into_iter().map(|z| z.unscale(norm)).collect());
        }
    }
    out
}

fn scaled_entropy<T: Real>(sigma: &[Complex<T>], dim: usize) -> (T, T) {
    let prob: T = (0..dim).map(|i| sigma[i * dim + i].re).sum();
    if prob < T::lit(1e-14) {
        return (prob.max(T::zero()), T::zero());
    }
    let scaled: Vec<Complex<T>> = sigma.iter().map(|z| z.unscale(prob)).collect();
    (prob, T::lit(entropy_from_spectrum_f64(&spectrum_f64(&scaled, dim))))
}

// Conditional entropy for the complete measurement {Π₁ = |m⟩⟨m|, 1 − Π₁} on mode A.
struct FockConditional<T> {
    blocks: [[Vec<Complex<T>>; 2]; 2],
    rho_b: Vec<Complex<T>>,
    db: usize,
}

impl<T: Real> FockConditional<T> {
    fn new(rho: &TwoModeFock<T>, span: &[Vec<Complex<T>>]) -> Self {
        let zero = vec![czero::<T>(); rho.n_a + 1];
        let e1 = &span[0];
        let e2 = span.get(1).unwrap_or(&zero);
        let blocks = [
            [rho.partial_element(e1, e1), rho.partial_element(e1, e2)],
            [rho.partial_element(e2, e1), rho.partial_element(e2, e2)],
        ];
        Self { blocks, rho_b: rho.partial_trace(Mode::B).entries, db: rho.n_b + 1 }
    }

    fn evaluate(&self, theta: T, phi: T) -> T {
        let (s, c) = theta.sin_cos();
        let m = [Complex::new(c, T::zero()), Complex::from_polar(s, phi)];
        let db = self.db;
        let mut first = vec![czero::<T>(); db * db];
        for (i, row) in self.blocks.iter().enumerate() {
            for (j, block) in row.iter().enumerate() {
                let w = m[i].conj() * m[j];
                for (o, b) in first.iter_mut().zip(block) {
                    *o = *o + w * *b;
                }
            }
        }
        let second: Vec<Complex<T>> = self.rho_b.iter().zip(&first).map(|(r, f)| *r - *f).collect();
        let (p1, s1) = scaled_entropy(&first, db);
        let (p2, s2) = scaled_entropy(&second, db);
        p1 * s1 + p2 * s2
    }

    fn minimize(&self) -> T {
        let g = 24;
        let mut samples = Vec::with_capacity(g * g);
        for i in 0..g {
            let theta = T::lit(std::f64::consts::FRAC_PI_2 * i as f64 / (g - 1) as f64);
            for k in 0..g {
                let phi = T::lit(2.0 * std::f64::consts::PI * k as f64 / g as f64);
                samples.push((self.evaluate(theta, phi), theta, phi));
            }
        }
        samples.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
        let opts = NelderMeadOptions { initial_step: T::lit(0.05), ..NelderMeadOptions::default() };
        samples
            .iter()
            .take(3)
            .map(|&(v, t, p)| nelder_mead(|x: &[T]| self.evaluate(x[0], x[1]), &[t, p], &opts).value.min(v))
            .fold(samples[0].0, T::min)
            .max(T::zero())
    }
}

/// Discord recomputed end to end from the truncated two-mode Fock matrix:
/// dense entropies, Fock partial traces and a complete von Neumann
/// measurement {|m⟩⟨m|, 1 − |m⟩⟨m|} with |m⟩ in the numerical span of the
/// mode-A amplitudes.
pub fn discord_oracle<T: Real>(state: &TwoModeMixture<T>, tail_bound: T) -> Result<FockDiscord<T>> {
    let rho = two_mode_fock(state, tail_bound)?;
    let span = fock_span(&reduce(state, Mode::A).amplitudes(), rho.n_a);
    if span.len() > 2 {
        return Err(Error::UnsupportedDimension(span.len()));
    }
    let total_entropy = rho.entropy();
    let entropy_a = rho.partial_trace(Mode::A).entropy();
    let entropy_b = rho.partial_trace(Mode::B).entropy();
    let min_conditional_entropy = FockConditional::new(&rho, &span).minimize();
    let discord = (entropy_a - total_entropy + min_conditional_entropy).max(T::zero());
    Ok(FockDiscord { total_entropy, entropy_a, entropy_b, min_conditional_entropy, discord })
}

/// Conditional entropy of mode B for the in-span measurement at (θ, φ),
/// evaluated on the truncated two-mode Fock matrix.
pub fn conditional_entropy_oracle<T: Real>(state: &TwoModeMixture<T>, theta: T, phi: T, tail_bound: T) -> Result<T> {
    let rho = two_mode_fock(state, tail_bound)?;
    let span = fock_span(&reduce(state, Mode::A).amplitudes(), rho.n_a);
    if span.len() > 2 {
        return Err(Error::UnsupportedDimension(span.len()));
    }
    Ok(FockConditional::new(&rho, &span).evaluate(theta, phi))
}

/// Outcome of probing measurements that leave the span of the mode-A amplitudes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpanProbe<T> {
    /// Minimum over measurements inside the span (Fock evaluation).
    pub span_minimum: T,
    /// Lowest conditional entropy found among the perturbed measurements.
    pub best_outside: T,
    pub samples: usize,
}

impl<T: Real> SpanProbe<T> {
    /// Positive when some out-of-span measurement did better.
    pub fn improvement(&self) -> T {
        self.span_minimum - self.best_outside
    }
}

/// Samples three-outcome measurements {|v₁⟩⟨v₁|, |v₂⟩⟨v₂|, rest} where v₁, v₂
/// are the optimal in-span vectors tilted by random Fock-space directions of
/// size `spread`. Reports, does not assert, any improvement over the span.
pub fn probe_outside_span<T: Real>(
    state: &TwoModeMixture<T>,
    tail_bound: T,
    samples: usize,
    spread: T,
    seed: u64,
) -> Result<SpanProbe<T>> {
    let rho = two_mode_fock(state, tail_bound)?;
    let span = fock_span(&reduce(state, Mode::A).amplitudes(), rho.n_a);
    if span.len() != 2 {
        return Err(Error::UnsupportedDimension(span.len()));
    }
    let conditional = FockConditional::new(&rho, &span);
    let g = 24;
    let mut best = (T::infinity(), T::zero(), T::zero());
    for i in 0..g {
        for k in 0..g {
            let theta = T::lit(std::f64::consts::FRAC_PI_2 * i as f64 / (g - 1) as f64);
            let phi = T::lit(2.0 * std::f64::consts::PI * k as f64 / g as f64);
            let v = conditional.evaluate(theta, phi);
            if v < best.0 {
                best = (v, theta, phi);
            }
        }
    }
    let opts = NelderMeadOptions { initial_step: T::lit(0.05), ..NelderMeadOptions::default() };
    let refined = nelder_mead(|x: &[T]| conditional.evaluate(x[0], x[1]), &[best.1, best.2], &opts);
    let (span_minimum, theta, phi) = if refined.value < best.0 {
        (refined.value, refined.x[0], refined.x[1])
    } else {
        best
    };

    let da = rho.n_a + 1;
    let db = rho.n_b + 1;
    let (s, c) = theta.sin_cos();
    let e = Complex::from_polar(T::one(), phi);
    let m1: Vec<Complex<T>> = span[0].iter().zip(&span[1]).map(|(u1, u2)| u1.scale(c) + e * u2.scale(s)).collect();
    let m2: Vec<Complex<T>> = span[0].iter().zip(&span[1]).map(|(u1, u2)| u1.scale(s) - e * u2.scale(c)).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rho_b = rho.partial_trace(Mode::B).entries;
    let mut best_outside = T::infinity();
    for _ in 0..samples {
        let mut basis: Vec<Vec<Complex<T>>> = Vec::with_capacity(2);
        for m in [&m1, &m2] {
            let mut v: Vec<Complex<T>> = m
                .iter()
                .map(|z| {
                    let dr: f64 = rng.gen_range(-1.0..1.0);
                    let di: f64 = rng.gen_range(-1.0..1.0);
                    *z + Complex::new(T::lit(dr), T::lit(di)).scale(spread / T::lit(da as f64).sqrt())
                })
                .collect();
            for _ in 0..2 {
                for u in &basis {
                    let proj: Complex<T> = u.iter().zip(&v).map(|(x, y)| x.conj() * *y).sum();
                    for (vi, ui) in v.iter_mut().zip(u) {
                        *vi = *vi - proj * *ui;
                    }
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
            basis.push(v.into_iter().map(|z| z.unscale(norm)).collect());
        }
        let first = rho.partial_element(&basis[0], &basis[0]);
        let second = rho.partial_element(&basis[1], &basis[1]);
        let rest: Vec<Complex<T>> = (0..db * db).map(|i| rho_b[i] - first[i] - second[i]).collect();
        let value = [first, second, rest]
            .iter()
            .map(|sigma| {
                let (p, s) = scaled_entropy(sigma, db);
                p * s
            })
            .sum::<T>();
        best_outside = best_outside.min(value);
    }
    Ok(SpanProbe { span_minimum, best_outside, samples })
}

/// l1 norm of coherence Σ_{n≠k} |ρ_{n,k}| in the truncated Fock basis.
///
/// Pure states use ([Σ_k |c_k|]² − Σ_k |c_k|²); mixtures sum the
/// off-diagonal magnitudes directly.
pub fn c_l1<T: Real>(mixture: &CoherentMixture<T>, n_max: usize) -> T {
    if mixture.len() == 1 {
        let c = coherent_vector(mixture.elements()[0].1, n_max);
        let linear: T = c.iter().map(|z| z.norm()).sum();
        let squares: T = c.iter().map(|z| z.norm_sqr()).sum();
        return (linear * linear - squares).max(T::zero());
    }
    let vectors: Vec<(T, Vec<Complex<T>>)> =
        mixture.elements().iter().map(|(p, a)| (*p, coherent_vector(*a, n_max))).collect();
    let mut total = T::zero();
    for k in 0..=n_max {
        for n in (k + 1)..=n_max {
            let entry: Complex<T> = vectors.iter().map(|(p, c)| (c[k] * c[n].conj()).scale(*p)).sum();
            total = total + entry.norm();
        }
    }
    total + total
}

/// Relative entropy of coherence S(ρ_diag) − S(ρ) in the Fock basis.
/// A single coherent state is pure, so only the dephased entropy remains.
pub fn c_re<T: Real>(mixture: &CoherentMixture<T>, n_max: usize) -> Result<T> {
    check_dim(n_max)?;
    let rho = to_fock(mixture, n_max);
    let dephased: T = rho.diagonal().into_iter().map(T::xlogx_neg).sum();
    let own = if mixture.len() == 1 { T::zero() } else { rho.entropy() };
    Ok((dephased - own).max(T::zero()))
}

/// C_l1 with n_max from [`monotone_truncation`].
pub fn c_l1_auto<T: Real>(mixture: &CoherentMixture<T>) -> Result<T> {
    Ok(c_l1(mixture, monotone_truncation(mixture)?))
}

/// C_RE with n_max from [`monotone_truncation`].
pub fn c_re_auto<T: Real>(mixture: &CoherentMixture<T>) -> Result<T> {
    c_re(mixture, monotone_truncation(mixture)?)
}

fn poisson_weighted<T: Real, F: Fn(usize) -> T>(amplitude: T, n_max: usize, weight: F) -> T {
    let lf = ln_factorials::<T>(n_max);
    let lambda = amplitude * amplitude;
    (0..=n_max)
        .map(|k| {
            let ln_p = -lambda + T::lit(k as f64) * lambda.ln() - lf[k];
            ln_p.exp() * weight(k)
        })
        .sum()
}

/// h₀(A) = e^{−A²} Σ_{k≥1} A^{2k}/k! ln k, summed to n_max.
pub fn h0<T: Real>(amplitude: T, n_max: usize) -> T {
    poisson_weighted(amplitude, n_max, |k| if k == 0 { T::zero() } else { T::lit(k as f64).ln() })
}

/// h₁(A) = e^{−A²} Σ_{k≥0} A^{2k}/k! ln(k+1), summed to n_max.
pub fn h1<T: Real>(amplitude: T, n_max: usize) -> T {
    poisson_weighted(amplitude, n_max, |k| T::lit((k + 1) as f64).ln())
}

/// Series length for h₀/h₁ with Poisson tail below 1e-14 (the ln k
/// weights are at most ~6 in the relevant range, keeping the tail < 1e-12).
pub fn series_truncation<T: Real>(amplitude: T) -> usize {
    let alpha = ComplexAmplitude { re: amplitude, im: T::zero() };
    auto_truncation(&CoherentMixture::pure(alpha), T::lit(MONOTONE_TAIL_BOUND)) + 8
}

/// C_l1(|α⟩) ≈ c|α| for large |α|.
pub fn c_l1_asymptote_pure<T: Real>(amplitude: T, c: T) -> T {
    c * amplitude
}

/// C_l1 of ½|α⟩⟨α| + ½|−α⟩⟨−α| ≈ (c/2)|α|.
pub fn c_l1_asymptote_balanced<T: Real>(amplitude: T, c: T) -> T {
    c * amplitude / T::lit(2.0)
}

/// C_RE(|α⟩) ≈ ln|α| + ½ + ln(2π)/2.
pub fn c_re_asymptote_pure<T: Real>(amplitude: T) -> T {
    amplitude.ln() + T::lit(0.5) + (T::lit(2.0) * T::PI()).ln() / T::lit(2.0)
}

/// C_RE of the balanced β = −α mixture ≈ C_RE(|α⟩) − ln 2.
pub fn c_re_asymptote_balanced<T: Real>(amplitude: T) -> T {
    c_re_asymptote_pure(amplitude) - T::LN_2()
}

/// Which state family a C_l1 fit is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoherenceFamily {
    /// |α⟩ with α = A.
    Pure,
    /// ½|A⟩⟨A| + ½|−A⟩⟨−A|.
    Balanced,
}

impl CoherenceFamily {
    pub fn mixture<T: Real>(self, amplitude: T) -> CoherentMixture<T> {
        let alpha = ComplexAmplitude { re: amplitude, im: T::zero() };
        match self {
            Self::Pure => CoherentMixture::pure(alpha),
            Self::Balanced => CoherentMixture::binary(T::lit(0.5), alpha, -alpha).expect("distinct for A > 0"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearFit<T> {
    pub slope: T,
    pub intercept: T,
    /// ‖y − ŷ‖ / ‖y‖
    pub residual_rel_norm: T,
}

/// Ordinary least squares y ≈ slope·x + intercept.
pub fn least_squares<T: Real>(xs: &[T], ys: &[T]) -> LinearFit<T> {
    let n = T::lit(xs.len() as f64);
    let mx = xs.iter().copied().sum::<T>() / n;
    let my = ys.iter().copied().sum::<T>() / n;
    let sxy: T = xs.iter().zip(ys).map(|(x, y)| (*x - mx) * (*y - my)).sum();
    let sxx: T = xs.iter().map(|x| (*x - mx) * (*x - mx)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let res: T = xs.iter().zip(ys).map(|(x, y)| (*y - slope * *x - intercept).powi(2)).sum();
    let norm: T = ys.iter().map(|y| *y * *y).sum();
    LinearFit { slope, intercept, residual_rel_norm: (res / norm).sqrt() }
}

/// Least-squares fit of C_l1 against |α| over |α| ∈ [6, 12].
pub fn fit_c_l1<T: Real>(family: CoherenceFamily) -> LinearFit<T> {
    let xs = linspace(T::lit(6.0), T::lit(12.0), 13);
    let ys: Vec<T> = xs
        .iter()
        .map(|&a| {
            c_l1_auto(&family.mixture(a)).expect("|α| ≤ 12 stays far below the dimension cap")
        })
        .collect();
    least_squares(&xs, &ys)
}

/// The constant c in C_l1(|α⟩) ≈ c|α|, as the fitted slope.
pub fn estimate_c<T: Real>() -> T {
    fit_c_l1::<T>(CoherenceFamily::Pure).slope
}
