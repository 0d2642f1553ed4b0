//! Quantum discord of beam-splitter outputs and the discord potential C_D.
//!
//! Mode A is measured with the rank-1 projectors onto
//! m₁ = cos θ |u₁⟩ + e^{iφ} sin θ |u₂⟩ and its orthocomplement
//! m₂ = sin θ |u₁⟩ − e^{iφ} cos θ |u₂⟩ inside the span of the mode-A
//! amplitudes. The conditional entropy is minimised over (θ, φ) by a 64×64
//! grid followed by Nelder–Mead refinement.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::hermitian_eigenvalues;
use crate::optimize::{nelder_mead, NelderMeadOptions};
use crate::scalar::Real;
use crate::splitter::{reduce, split, Mode, TwoModeMixture};
use crate::states::CoherentMixture;
use crate::subspace::{entropy, entropy_of_spectrum, gram_schmidt, mixture_entropy, BasisTag, HermitianMatrix, OrthoBasis};

/// Largest two-mode subspace dimension (30 × 30).
pub const MAX_TWO_MODE_DIM: usize = 900;
/// Points per axis of the coarse measurement grid.
pub const GRID_POINTS: usize = 64;
/// Outcomes less likely than this contribute nothing.
pub const OUTCOME_FLOOR: f64 = 1e-14;
/// Negative discord down to this magnitude is treated as rounding and clamped.
pub const CLAMP_TOL: f64 = 1e-10;

/// (θ, φ) with θ ∈ [0, π/2] and φ ∈ [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementAngles<T> {
    pub theta: T,
    pub phi: T,
}

impl<T: Real> MeasurementAngles<T> {
    pub fn new(theta: T, phi: T) -> Result<Self> {
        let in_range = theta >= T::zero() && theta <= T::lit(FRAC_PI_2) && phi >= T::zero() && phi < T::lit(2.0 * PI);
        if in_range {
            Ok(Self { theta, phi })
        } else {
            Err(Error::InvalidArgument(format!(
                "measurement angles ({}, {}) out of range",
                theta.as_f64(),
                phi.as_f64()
            )))
        }
    }

    /// Maps arbitrary (θ, φ) onto the canonical ranges using
    /// (θ, φ) ≡ (θ + π, φ) ≡ (π − θ, φ + π), which leave the pair of
    /// projectors unchanged.
    pub fn canonical(theta: T, phi: T) -> Self {
        let pi = T::PI();
        let two_pi = pi + pi;
        let mut theta = theta % pi;
        if theta < T::zero() {
            theta = theta + pi;
        }
        let mut phi = phi;
        if theta > pi / T::lit(2.0) {
            theta = pi - theta;
            phi = phi + pi;
        }
        phi = phi % two_pi;
        if phi < T::zero() {
            phi = phi + two_pi;
        }
        if phi >= two_pi {
            phi = T::zero();
        }
        Self { theta, phi }
    }

    /// Coefficients of m₁ and m₂ in the (u₁, u₂) basis.
    pub fn vectors(&self) -> [[Complex<T>; 2]; 2] {
        let (s, c) = self.theta.sin_cos();
        let e = Complex::from_polar(T::one(), self.phi);
        [
            [Complex::new(c, T::zero()), e.scale(s)],
            [Complex::new(s, T::zero()), -e.scale(c)],
        ]
    }
}

/// Entropic decomposition of the correlations of a two-mode state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscordReport<T> {
    pub total_entropy: T,
    pub entropy_a: T,
    pub entropy_b: T,
    pub mutual_information: T,
    pub min_conditional_entropy: T,
    pub optimal_angles: MeasurementAngles<T>,
    pub discord: T,
    pub classical_information: T,
    /// Set when a slightly negative discord was clamped to zero.
    pub clamped: bool,
}

// Coordinates of the state's components in the mode-A and mode-B bases.
struct Prepared<T> {
    basis_a: Arc<OrthoBasis<T>>,
    basis_b: Arc<OrthoBasis<T>>,
    weights: Vec<T>,
    xa: Vec<Vec<Complex<T>>>,
    yb: Vec<Vec<Complex<T>>>,
}

impl<T: Real> Prepared<T> {
    fn new(state: &TwoModeMixture<T>) -> Result<Self> {
        let amps_a = reduce(state, Mode::A).amplitudes();
        let amps_b = reduce(state, Mode::B).amplitudes();
        let basis_a = Arc::new(gram_schmidt(&amps_a)?);
        let basis_b = Arc::new(gram_schmidt(&amps_b)?);
        let dim = basis_a.effective_dim() * basis_b.effective_dim();
        if dim > MAX_TWO_MODE_DIM {
            return Err(Error::DimensionOverflow { dim, limit: MAX_TWO_MODE_DIM });
        }
        let mut weights = Vec::new();
        let mut xa = Vec::new();
        let mut yb = Vec::new();
        for (p, a, b) in state.elements() {
            weights.push(*p);
            xa.push(basis_a.coordinates(*a));
            yb.push(basis_b.coordinates(*b));
        }
        Ok(Self { basis_a, basis_b, weights, xa, yb })
    }

    fn dim_a(&self) -> usize {
        self.basis_a.effective_dim()
    }

    fn dim_b(&self) -> usize {
        self.basis_b.effective_dim()
    }

    fn density(&self) -> Result<HermitianMatrix<T>> {
        let (da, db) = (self.dim_a(), self.dim_b());
        let n = da * db;
        let mut entries = vec![Complex::new(T::zero(), T::zero()); n * n];
        for ((p, x), y) in self.weights.iter().zip(&self.xa).zip(&self.yb) {
            let v: Vec<Complex<T>> = x.iter().flat_map(|xi| y.iter().map(move |yj| *xi * *yj)).collect();
            for r in 0..n {
                for c in 0..n {
                    entries[r * n + c] = entries[r * n + c] + (v[r] * v[c].conj()).scale(*p);
                }
            }
        }
        HermitianMatrix::new(n, entries, BasisTag::Product(Arc::clone(&self.basis_a), Arc::clone(&self.basis_b)))
    }

    fn conditional_checked(&self) -> Result<ConditionalEntropy<T>> {
        if self.dim_a() > 2 {
            return Err(Error::UnsupportedDimension(self.dim_a()));
        }
        // Zero-pad mode A to two dimensions so a product state is handled uniformly.
        let xa = self
            .xa
            .iter()
            .map(|x| [x[0], x.get(1).copied().unwrap_or_else(|| Complex::new(T::zero(), T::zero()))])
            .collect();
        Ok(ConditionalEntropy { weights: self.weights.clone(), xa, yb: self.yb.clone(), dim_b: self.dim_b() })
    }
}

/// S(σ^{B|Π}) as a function of the measurement angles for a fixed state.
pub struct ConditionalEntropy<T> {
    weights: Vec<T>,
    xa: Vec<[Complex<T>; 2]>,
    yb: Vec<Vec<Complex<T>>>,
    dim_b: usize,
}

impl<T: Real> ConditionalEntropy<T> {
    pub fn new(state: &TwoModeMixture<T>) -> Result<Self> {
        Prepared::new(state)?.conditional_checked()
    }

    /// Σ_j p_j S(σ_j / p_j) for arbitrary (unnormalised) angles.
    pub fn evaluate(&self, theta: T, phi: T) -> T {
        let floor = T::lit(OUTCOME_FLOOR);
        let db = self.dim_b;
        let vectors = MeasurementAngles { theta, phi }.vectors();
        let mut total = T::zero();
        let mut sigma = vec![Complex::new(T::zero(), T::zero()); db * db];
        for m in &vectors {
            sigma.iter_mut().for_each(|z| *z = Complex::new(T::zero(), T::zero()));
            for ((p, x), y) in self.weights.iter().zip(&self.xa).zip(&self.yb) {
                let amp = m[0].conj() * x[0] + m[1].conj() * x[1];
                let w = *p * amp.norm_sqr();
                for r in 0..db {
                    for c in 0..db {
                        sigma[r * db + c] = sigma[r * db + c] + (y[r] * y[c].conj()).scale(w);
                    }
                }
            }
            let prob: T = (0..db).map(|i| sigma[i * db + i].re).sum();
            if prob < floor {
                continue;
            }
            let inv = prob.recip();
            let scaled: Vec<Complex<T>> = sigma.iter().map(|z| z.scale(inv)).collect();
            let spectrum: Vec<T> = hermitian_eigenvalues(&scaled, db)
                .expect("square by construction")
                .into_iter()
                .map(|v| v.max(T::zero()))
                .collect();
            total = total + prob * entropy_of_spectrum(&spectrum);
        }
        total
    }

    /// Grid search followed by Nelder–Mead from the three best grid points.
    pub fn minimize(&self) -> (MeasurementAngles<T>, T) {
        let g = GRID_POINTS;
        let theta_step = T::lit(FRAC_PI_2 / (g - 1) as f64);
        let phi_step = T::lit(2.0 * PI / g as f64);
        let mut samples: Vec<(T, T, T)> = Vec::with_capacity(g * g);
        for i in 0..g {
            let theta = theta_step * T::lit(i as f64);
            for k in 0..g {
                let phi = phi_step * T::lit(k as f64);
                samples.push((self.evaluate(theta, phi), theta, phi));
            }
        }
        samples.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
        let (mut best_value, mut best_theta, mut best_phi) = samples[0];

        let opts = NelderMeadOptions { initial_step: theta_step, ..NelderMeadOptions::default() };
        for &(_, theta, phi) in samples.iter().take(3) {
            let m = nelder_mead(|x: &[T]| self.evaluate(x[0], x[1]), &[theta, phi], &opts);
            if m.value < best_value {
                best_value = m.value;
                best_theta = m.x[0];
                best_phi = m.x[1];
            }
        }
        (MeasurementAngles::canonical(best_theta, best_phi), best_value.max(T::zero()))
    }
}

/// ρ^{AB} in the product basis GS(mode-A amplitudes) ⊗ GS(mode-B amplitudes).
pub fn two_mode_density<T: Real>(state: &TwoModeMixture<T>) -> Result<HermitianMatrix<T>> {
    Prepared::new(state)?.density()
}

/// Conditional entropy of mode B after measuring mode A at the given angles.
pub fn conditional_entropy<T: Real>(state: &TwoModeMixture<T>, angles: MeasurementAngles<T>) -> Result<T> {
    Ok(ConditionalEntropy::new(state)?.evaluate(angles.theta, angles.phi))
}

/// Minimum of [`conditional_entropy`] over all measurement angles.
pub fn minimize_conditional_entropy<T: Real>(state: &TwoModeMixture<T>) -> Result<(MeasurementAngles<T>, T)> {
    Ok(ConditionalEntropy::new(state)?.minimize())
}

/// D_A = S(ρ^A) − S(ρ^{AB}) + min S(ρ^{B|Π}) together with the mutual
/// information and its classical part.
pub fn discord<T: Real>(state: &TwoModeMixture<T>) -> Result<DiscordReport<T>> {
    let prepared = Prepared::new(state)?;
    let conditional = prepared.conditional_checked()?;
    let total_entropy = entropy(&prepared.density()?)?;
    let entropy_a = mixture_entropy(&reduce(state, Mode::A))?;
    let entropy_b = mixture_entropy(&reduce(state, Mode::B))?;
    let (optimal_angles, min_conditional_entropy) = conditional.minimize();

    let raw = entropy_a - total_entropy + min_conditional_entropy;
    let tol = T::tolerance(CLAMP_TOL);
    let (discord, clamped) = if raw >= T::zero() {
        (raw, false)
    } else if raw >= -tol {
        (T::zero(), true)
    } else {
        return Err(Error::Numerical(format!("negative discord {}", raw.as_f64())));
    };
    let mutual_information = (entropy_a + entropy_b - total_entropy).max(T::zero());
    Ok(DiscordReport {
        total_entropy,
        entropy_a,
        entropy_b,
        mutual_information,
        min_conditional_entropy,
        optimal_angles,
        discord,
        classical_information: mutual_information - discord,
        clamped,
    })
}

/// Discord with the measurement performed on the given mode.
pub fn discord_on<T: Real>(state: &TwoModeMixture<T>, measured: Mode) -> Result<DiscordReport<T>> {
    match measured {
        Mode::A => discord(state),
        Mode::B => discord(&state.swapped()),
    }
}

/// C_D(ρ): discord of the beam-splitter output for a two-element mixture.
pub fn discord_potential<T: Real>(input: &CoherentMixture<T>) -> Result<T> {
    if input.len() != 2 {
        return Err(Error::UnsupportedMixtureSize(input.len()));
    }
    Ok(discord(&split(input))?.discord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{make_binary_mixture, ComplexAmplitude};
    use crate::subspace::mixture_entropy;

    fn amp(re: f64, im: f64) -> ComplexAmplitude<f64> {
        ComplexAmplitude::new(re, im).unwrap()
    }

    fn balanced(d0: f64) -> TwoModeMixture<f64> {
        split(&make_binary_mixture(0.5, amp(d0 / 2.0, 0.0), amp(-d0 / 2.0, 0.0)).unwrap())
    }

    #[test]
    fn canonical_angles_preserve_value() {
        let state = balanced(1.3);
        let ce = ConditionalEntropy::new(&state).unwrap();
        for &(t, p) in &[(2.0, 0.4), (-0.7, 5.0), (4.0, -1.0), (1.2, 6.2)] {
            let c = MeasurementAngles::canonical(t, p);
            assert!(MeasurementAngles::new(c.theta, c.phi).is_ok());
            assert!((ce.evaluate(t, p) - ce.evaluate(c.theta, c.phi)).abs() < 1e-13);
        }
    }

    #[test]
    fn angle_validation() {
        assert!(MeasurementAngles::new(-0.1, 0.0).is_err());
        assert!(MeasurementAngles::new(0.1, 2.0 * PI).is_err());
        assert!(MeasurementAngles::new(FRAC_PI_2, 0.0).is_ok());
    }

    #[test]
    fn measurement_vectors_are_orthonormal() {
        let [m1, m2] = MeasurementAngles::new(0.4, 2.1).unwrap().vectors();
        let ip = m1[0].conj() * m2[0] + m1[1].conj() * m2[1];
        assert!(ip.norm() < 1e-15);
        assert!((m1[0].norm_sqr() + m1[1].norm_sqr() - 1.0_f64).abs() < 1e-15);
    }

    #[test]
    fn product_state_single_element() {
        let state = split(&CoherentMixture::pure(amp(1.2, -0.4)));
        let rho = two_mode_density(&state).unwrap();
        assert_eq!(rho.dim(), 1);
        assert!((rho.get(0, 0).re - 1.0).abs() < 1e-15);
        for &(t, p) in &[(0.0, 0.0), (0.7, 1.0), (FRAC_PI_2, 3.0)] {
            let angles = MeasurementAngles::new(t, p).unwrap();
            assert!(conditional_entropy(&state, angles).unwrap().abs() < 1e-14);
        }
        let report = discord(&state).unwrap();
        assert!(report.discord.abs() < 1e-14);
        assert!(report.mutual_information.abs() < 1e-14);
        assert!(report.min_conditional_entropy.abs() < 1e-14);
    }

    #[test]
    fn orthogonal_limit_resolves_b_exactly() {
        let state = balanced(12.0);
        let c = conditional_entropy(&state, MeasurementAngles::new(0.0, 0.0).unwrap()).unwrap();
        assert!(c < 1e-12);
        let (_, min) = minimize_conditional_entropy(&state).unwrap();
        assert!(min < 1e-6);
    }

    #[test]
    fn two_mode_density_is_a_four_dim_state() {
        let rho = two_mode_density(&balanced(2.0)).unwrap();
        assert_eq!(rho.dim(), 4);
        assert!((rho.trace() - 1.0).abs() < 1e-12);
        assert!(rho.eigenvalues().unwrap()[0] > -1e-12);
    }

    #[test]
    fn two_mode_spectrum_approaches_reduced_in_orthogonal_limit() {
        let state = balanced(12.0);
        let mut ab = two_mode_density(&state).unwrap().eigenvalues().unwrap();
        ab.retain(|v| *v > 1e-12);
        assert_eq!(ab.len(), 2);
        assert!((ab[0] - 0.5).abs() < 1e-12 && (ab[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn report_invariants_hold() {
        for &(a, d0) in &[(0.5, 1.0), (0.2, 0.6), (0.8, 2.0)] {
            let state = split(&make_binary_mixture(a, amp(0.2 + d0 / 2.0, 0.1), amp(0.2 - d0 / 2.0, 0.1)).unwrap());
            let r = discord(&state).unwrap();
            assert!((r.mutual_information - (r.entropy_a + r.entropy_b - r.total_entropy)).abs() < 1e-10);
            assert!((r.classical_information - (r.mutual_information - r.discord)).abs() < 1e-12);
            assert!(r.discord >= 0.0 && r.discord <= r.mutual_information + 1e-9);
            assert!(r.classical_information >= -1e-9);
        }
    }

    #[test]
    fn minimum_beats_offset_verification_grid() {
        let state = balanced(1.0);
        let ce = ConditionalEntropy::new(&state).unwrap();
        let (_, min) = ce.minimize();
        for i in 0..64 {
            for k in 0..64 {
                let theta = (i as f64 + 0.5) * FRAC_PI_2 / 64.0;
                let phi = (k as f64 + 0.37) * 2.0 * PI / 64.0;
                assert!(min <= ce.evaluate(theta, phi) + 1e-9);
            }
        }
    }

    #[test]
    fn symmetric_in_measured_mode() {
        let state = balanced(1.4);
        let da = discord_on(&state, Mode::A).unwrap().discord;
        let db = discord_on(&state, Mode::B).unwrap().discord;
        assert!((da - db).abs() < 1e-9);
    }

    #[test]
    fn discord_potential_limits() {
        let near = make_binary_mixture(0.5, amp(5e-4, 0.0), amp(-5e-4, 0.0)).unwrap();
        assert!(discord_potential(&near).unwrap() < 1e-6);
        let far = make_binary_mixture(0.5, amp(6.0, 0.0), amp(-6.0, 0.0)).unwrap();
        assert!(discord_potential(&far).unwrap() < 1e-6);
        let mid = make_binary_mixture(0.5, amp(0.5, 0.0), amp(-0.5, 0.0)).unwrap();
        assert!(discord_potential(&mid).unwrap() > 1e-3);
    }

    #[test]
    fn discord_potential_requires_binary_input() {
        let single = CoherentMixture::pure(amp(1.0, 0.0));
        assert_eq!(discord_potential(&single), Err(Error::UnsupportedMixtureSize(1)));
    }

    #[test]
    fn three_element_mode_a_is_rejected() {
        let mix = CoherentMixture::new(vec![(0.3, amp(0.0, 0.0)), (0.3, amp(1.0, 0.0)), (0.4, amp(0.0, 1.0))]).unwrap();
        let state = split(&mix);
        assert!(two_mode_density(&state).is_ok());
        assert_eq!(discord(&state).unwrap_err(), Error::UnsupportedDimension(3));
    }

    #[test]
    fn weight_boundaries_vanish() {
        for &a in &[1e-4, 1.0 - 1e-4] {
            for &d0 in &[0.5, 1.4, 3.0] {
                let mix = make_binary_mixture(a, amp(d0 / 2.0, 0.0), amp(-d0 / 2.0, 0.0)).unwrap();
                assert!(discord_potential(&mix).unwrap() < 1e-3);
            }
        }
    }

    #[test]
    fn reduced_entropy_matches_report() {
        let state = balanced(1.0);
        let r = discord(&state).unwrap();
        assert!((r.entropy_a - mixture_entropy(&reduce(&state, Mode::A)).unwrap()).abs() < 1e-15);
    }
}
