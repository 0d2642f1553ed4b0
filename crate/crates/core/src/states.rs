//! Coherent-state amplitudes, proper mixtures, overlaps and separations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Amplitudes closer than this are treated as the same coherent state.
pub const MERGE_THRESHOLD: f64 = 1e-14;
/// Allowed deviation of the weight sum from one.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Label α of a coherent state |α⟩ (ħ = 1).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ComplexAmplitude<T> {
    pub re: T,
    pub im: T,
}

impl<T: Real> ComplexAmplitude<T> {
    pub fn new(re: T, im: T) -> Result<Self> {
        if re.is_finite() && im.is_finite() {
            Ok(Self { re, im })
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn real(re: T) -> Result<Self> {
        Self::new(re, T::zero())
    }

    pub fn from_polar(magnitude: T, phase: T) -> Result<Self> {
        Self::new(magnitude * phase.cos(), magnitude * phase.sin())
    }

    pub fn zero() -> Self {
        Self { re: T::zero(), im: T::zero() }
    }

    pub fn to_complex(self) -> Complex<T> {
        Complex::new(self.re, self.im)
    }

    pub(crate) fn from_complex(z: Complex<T>) -> Self {
        Self { re: z.re, im: z.im }
    }

    /// |α|
    pub fn magnitude(self) -> T {
        self.re.hypot(self.im)
    }

    /// |α|², the mean photon number of |α⟩.
    pub fn norm_sqr(self) -> T {
        self.re * self.re + self.im * self.im
    }

    pub fn conj(self) -> Self {
        Self { re: self.re, im: -self.im }
    }

    /// Multiplies by e^{iχ}.
    pub fn rotate(self, chi: T) -> Self {
        Self::from_complex(self.to_complex() * Complex::from_polar(T::one(), chi))
    }

    /// Multiplies by i.
    pub fn times_i(self) -> Self {
        Self { re: -self.im, im: self.re }
    }
}

impl<T: Real> Add for ComplexAmplitude<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<T: Real> Sub for ComplexAmplitude<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl<T: Real> Neg for ComplexAmplitude<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl<T: Real> Mul<T> for ComplexAmplitude<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        Self { re: self.re * rhs, im: self.im * rhs }
    }
}

impl<T: Real> fmt::Display for ComplexAmplitude<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < T::zero() {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// ⟨a|b⟩ = exp(−|a|²/2 − |b|²/2 + a* b).
///
/// Evaluated as exp(−|a−b|²/2 + i Im(a* b)) so that the modulus is exact
/// even for large amplitudes.
pub fn overlap<T: Real>(a: ComplexAmplitude<T>, b: ComplexAmplitude<T>) -> Complex<T> {
    let z = log_overlap(a, b);
    Complex::from_polar(z.re.exp(), z.im)
}

/// ln⟨a|b⟩ = −|a−b|²/2 + i Im(a* b).
pub(crate) fn log_overlap<T: Real>(a: ComplexAmplitude<T>, b: ComplexAmplitude<T>) -> Complex<T> {
    let d = b - a;
    Complex::new(-d.norm_sqr() / T::lit(2.0), a.re * b.im - a.im * b.re)
}

/// ⟨a|b⟩ − 1, accurate when the two states nearly coincide.
pub(crate) fn overlap_minus_one<T: Real>(a: ComplexAmplitude<T>, b: ComplexAmplitude<T>) -> Complex<T> {
    let z = log_overlap(a, b);
    let (s, c) = z.im.sin_cos();
    let half_sin = (z.im / T::lit(2.0)).sin();
    let em1 = z.re.exp_m1();
    Complex::new(em1 * c - T::lit(2.0) * half_sin * half_sin, (em1 + T::one()) * s)
}

/// |a − b|
pub fn separation<T: Real>(a: ComplexAmplitude<T>, b: ComplexAmplitude<T>) -> T {
    (a - b).magnitude()
}

/// ρ = Σ p_j |α_j⟩⟨α_j| with positive weights summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoherentMixture<T> {
    elements: Vec<(T, ComplexAmplitude<T>)>,
}

impl<T: Real> CoherentMixture<T> {
    /// Validates weights and merges amplitudes closer than [`MERGE_THRESHOLD`].
    pub fn new(elements: Vec<(T, ComplexAmplitude<T>)>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyMixture);
        }
        let mut sum = T::zero();
        for (p, alpha) in &elements {
            if !(p.is_finite() && *p > T::zero()) {
                return Err(Error::InvalidWeights(p.as_f64()));
            }
            if !(alpha.re.is_finite() && alpha.im.is_finite()) {
                return Err(Error::NonFinite);
            }
            sum = sum + *p;
        }
        if (sum - T::one()).abs() > T::tolerance(WEIGHT_SUM_TOL) {
            return Err(Error::InvalidWeights(sum.as_f64()));
        }
        let threshold = T::lit(MERGE_THRESHOLD);
        let mut merged: Vec<(T, ComplexAmplitude<T>)> = Vec::with_capacity(elements.len());
        for (p, alpha) in elements {
            match merged.iter_mut().find(|(_, b)| separation(alpha, *b) <= threshold) {
                Some(slot) => slot.0 = slot.0 + p,
                None => merged.push((p, alpha)),
            }
        }
        Ok(Self { elements: merged })
    }

    /// A single coherent state |α⟩⟨α|.
    pub fn pure(alpha: ComplexAmplitude<T>) -> Self {
        Self { elements: vec![(T::one(), alpha)] }
    }

    /// a|α0⟩⟨α0| + (1−a)|β0⟩⟨β0|.
    pub fn binary(a: T, alpha0: ComplexAmplitude<T>, beta0: ComplexAmplitude<T>) -> Result<Self> {
        if !(a > T::zero() && a < T::one()) {
            return Err(Error::InvalidProbability(a.as_f64()));
        }
        if separation(alpha0, beta0) <= T::lit(MERGE_THRESHOLD) {
            return Err(Error::DegenerateMixture);
        }
        Ok(Self { elements: vec![(a, alpha0), (T::one() - a, beta0)] })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[(T, ComplexAmplitude<T>)] {
        &self.elements
    }

    pub fn weights(&self) -> impl Iterator<Item = T> + '_ {
        self.elements.iter().map(|e| e.0)
    }

    pub fn amplitudes(&self) -> Vec<ComplexAmplitude<T>> {
        self.elements.iter().map(|e| e.1).collect()
    }

    /// Σ p_j |α_j|²
    pub fn mean_photon_number(&self) -> T {
        self.elements.iter().map(|(p, a)| *p * a.norm_sqr()).sum()
    }

    /// Applies the displacement α ↦ α + δ to every component.
    pub fn displaced(&self, delta: ComplexAmplitude<T>) -> Self {
        Self { elements: self.elements.iter().map(|(p, a)| (*p, *a + delta)).collect() }
    }

    /// Applies the phase rotation α ↦ e^{iχ} α to every component.
    pub fn rotated(&self, chi: T) -> Self {
        Self { elements: self.elements.iter().map(|(p, a)| (*p, a.rotate(chi))).collect() }
    }
}

/// Binary mixture a|α0⟩⟨α0| + (1−a)|β0⟩⟨β0|; rejects a ∉ (0,1) and α0 = β0.
pub fn make_binary_mixture<T: Real>(
    a: T,
    alpha0: ComplexAmplitude<T>,
    beta0: ComplexAmplitude<T>,
) -> Result<CoherentMixture<T>> {
    CoherentMixture::binary(a, alpha0, beta0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn amp(re: f64, im: f64) -> ComplexAmplitude<f64> {
        ComplexAmplitude::new(re, im).unwrap()
    }

    #[test]
    fn overlap_examples() {
        let o = overlap(amp(0.0, 0.0), amp(0.0, 0.0));
        assert_eq!(o, Complex::new(1.0, 0.0));

        let o = overlap(amp(0.5, 0.0), amp(-0.5, 0.0));
        assert!((o.norm_sqr() - (-1f64).exp()).abs() < 1e-15);

        let o = overlap(amp(1.0, 0.0), amp(0.0, 1.0));
        assert!((o.norm() - (-1f64).exp()).abs() < 1e-15);
        assert!((o.arg() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn overlap_matches_textbook_form() {
        let a = amp(0.7, -0.2);
        let b = amp(-0.4, 1.1);
        let z = a.to_complex().conj() * b.to_complex() - Complex::new((a.norm_sqr() + b.norm_sqr()) / 2.0, 0.0);
        assert!((overlap(a, b) - z.exp()).norm() < 1e-15);
    }

    #[test]
    fn overlap_minus_one_is_accurate_near_coincidence() {
        let a = amp(0.3, -0.7);
        let b = amp(0.3 + 1e-9, -0.7);
        let exact = overlap(a, b) - Complex::new(1.0, 0.0);
        let accurate = overlap_minus_one(a, b);
        assert!((exact - accurate).norm() < 1e-15);
        // |⟨a|b⟩|² = 1 − d² + ..., so Re(⟨a|b⟩ − 1) ≈ −d²/2 + O(phase²).
        let far = overlap_minus_one(amp(1.0, 0.0), amp(0.0, 1.0));
        assert!((far - (overlap(amp(1.0, 0.0), amp(0.0, 1.0)) - 1.0)).norm() < 1e-15);
        let shifted = 0.5 + 1e-12;
        let delta: f64 = shifted - 0.5;
        let tiny = overlap_minus_one(amp(0.5, 0.0), amp(shifted, 0.0));
        assert!((tiny.re + 0.5 * delta * delta).abs() < 1e-36);
    }

    #[test]
    fn separation_examples() {
        assert_eq!(separation(amp(0.0, 0.0), amp(0.0, 0.0)), 0.0);
        assert_eq!(separation(amp(0.5, 0.0), amp(-0.5, 0.0)), 1.0);
        assert_eq!(separation(amp(1.0, 1.0), amp(1.0, -1.0)), 2.0);
    }

    #[test]
    fn non_finite_rejected() {
        assert_eq!(ComplexAmplitude::new(f64::NAN, 0.0), Err(Error::NonFinite));
        assert_eq!(ComplexAmplitude::new(0.0, f64::INFINITY), Err(Error::NonFinite));
    }

    #[test]
    fn binary_mixture_examples() {
        let m = make_binary_mixture(0.5, amp(0.5, 0.0), amp(-0.5, 0.0)).unwrap();
        assert_eq!(m.elements(), &[(0.5, amp(0.5, 0.0)), (0.5, amp(-0.5, 0.0))]);

        let m = make_binary_mixture(0.3, amp(1.0, 0.0), amp(0.0, 2.0)).unwrap();
        assert_eq!(m.elements()[0], (0.3, amp(1.0, 0.0)));
        assert!((m.elements()[1].0 - 0.7).abs() < 1e-16);
        assert_eq!(m.elements()[1].1, amp(0.0, 2.0));

        assert_eq!(make_binary_mixture(0.5, amp(1.0, 0.0), amp(1.0, 0.0)), Err(Error::DegenerateMixture));
        assert!(matches!(make_binary_mixture(1.0, amp(1.0, 0.0), amp(0.0, 0.0)), Err(Error::InvalidProbability(_))));
        assert!(matches!(make_binary_mixture(0.0, amp(1.0, 0.0), amp(0.0, 0.0)), Err(Error::InvalidProbability(_))));
    }

    #[test]
    fn constructor_validates_and_merges() {
        assert_eq!(CoherentMixture::<f64>::new(vec![]), Err(Error::EmptyMixture));
        assert!(CoherentMixture::new(vec![(0.5, amp(0.0, 0.0)), (0.4, amp(1.0, 0.0))]).is_err());
        assert!(CoherentMixture::new(vec![(-0.5, amp(0.0, 0.0)), (1.5, amp(1.0, 0.0))]).is_err());
        let m = CoherentMixture::new(vec![(0.25, amp(1.0, 0.0)), (0.5, amp(0.0, 1.0)), (0.25, amp(1.0, 0.0))]).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.elements()[0], (0.5, amp(1.0, 0.0)));
    }

    fn amp_strategy() -> impl Strategy<Value = ComplexAmplitude<f64>> {
        (-4.0..4.0f64, -4.0..4.0f64).prop_map(|(re, im)| amp(re, im))
    }

    proptest! {
        #[test]
        fn overlap_modulus_encodes_separation(a in amp_strategy(), b in amp_strategy()) {
            let lhs = overlap(a, b).norm_sqr();
            let rhs = (-separation(a, b).powi(2)).exp();
            prop_assert!((lhs - rhs).abs() < 1e-12);
            prop_assert!(lhs <= 1.0);
        }

        #[test]
        fn overlap_is_conjugate_symmetric(a in amp_strategy(), b in amp_strategy()) {
            prop_assert!((overlap(a, b) - overlap(b, a).conj()).norm() < 1e-15);
        }

        #[test]
        fn separation_is_a_metric(a in amp_strategy(), b in amp_strategy(), c in amp_strategy()) {
            prop_assert_eq!(separation(a, b), separation(b, a));
            prop_assert!(separation(a, c) <= separation(a, b) + separation(b, c) + 1e-12);
            prop_assert_eq!(separation(a, a), 0.0);
            if a != b {
                prop_assert!(separation(a, b) > 0.0);
            }
        }
    }
}
