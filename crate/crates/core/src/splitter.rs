//! Balanced beam splitter with a vacuum ancilla, and single-mode reductions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::states::{CoherentMixture, ComplexAmplitude, WEIGHT_SUM_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    A,
    B,
}

/// Σ p_j |a_j⟩⟨a_j| ⊗ |b_j⟩⟨b_j|, separable by construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoModeMixture<T> {
    elements: Vec<(T, ComplexAmplitude<T>, ComplexAmplitude<T>)>,
}

impl<T: Real> TwoModeMixture<T> {
    pub fn new(elements: Vec<(T, ComplexAmplitude<T>, ComplexAmplitude<T>)>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyMixture);
        }
        let mut sum = T::zero();
        for (p, _, _) in &elements {
            if !(p.is_finite() && *p > T::zero()) {
                return Err(Error::InvalidWeights(p.as_f64()));
            }
            sum = sum + *p;
        }
        if (sum - T::one()).abs() > T::tolerance(WEIGHT_SUM_TOL) {
            return Err(Error::InvalidWeights(sum.as_f64()));
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[(T, ComplexAmplitude<T>, ComplexAmplitude<T>)] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Exchanges the roles of the two modes.
    pub fn swapped(&self) -> Self {
        Self { elements: self.elements.iter().map(|(p, a, b)| (*p, *b, *a)).collect() }
    }

    /// Σ p_j (|a_j|² + |b_j|²)
    pub fn mean_photon_number(&self) -> T {
        self.elements.iter().map(|(p, a, b)| *p * (a.norm_sqr() + b.norm_sqr())).sum()
    }
}

/// |α⟩ ⊗ |0⟩ ↦ |α/√2⟩ ⊗ |iα/√2⟩ applied element-wise.
pub fn split<T: Real>(input: &CoherentMixture<T>) -> TwoModeMixture<T> {
    let scale = T::FRAC_1_SQRT_2();
    let elements = input
        .elements()
        .iter()
        .map(|(p, alpha)| {
            let a = *alpha * scale;
            (*p, a, a.times_i())
        })
        .collect();
    TwoModeMixture { elements }
}

/// Partial trace onto one mode. Coinciding amplitudes are merged.
pub fn reduce<T: Real>(state: &TwoModeMixture<T>, mode: Mode) -> CoherentMixture<T> {
    let elements = state
        .elements
        .iter()
        .map(|(p, a, b)| match mode {
            Mode::A => (*p, *a),
            Mode::B => (*p, *b),
        })
        .collect();
    CoherentMixture::new(elements).expect("weights already validated")
}
