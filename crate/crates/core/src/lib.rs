//! Non-classicality measures for proper mixtures of coherent states.
//!
//! The central quantity is the discord potential `C_D(ρ)`: the quantum
//! discord of the two-mode state produced when ρ and the vacuum enter a
//! balanced beam splitter. Entropies are computed exactly inside the finite
//! span of the mixture's coherent states ([`subspace`]); the truncated Fock
//! representation in [`fock`] provides an independent check and the
//! Fock-basis coherence monotones.
//!
//! All numerics are generic over [`Real`] (`f32`/`f64`); the aliases below
//! fix the scalar to `f64`.

pub mod discord;
pub mod discrimination;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod optimize;
pub mod scalar;
pub mod special;
pub mod splitter;
pub mod states;
pub mod subspace;

pub use discord::{
    conditional_entropy, discord, discord_on, discord_potential, minimize_conditional_entropy, two_mode_density,
    MeasurementAngles, DiscordReport,
};
pub use error::{Error, Result};
pub use scalar::Real;
pub use splitter::{reduce, split, Mode, TwoModeMixture};
pub use states::{make_binary_mixture, overlap, separation, CoherentMixture, ComplexAmplitude};
pub use subspace::{entropy, gram_schmidt, project_mixture, HermitianMatrix, OrthoBasis};

pub type Amplitude = states::ComplexAmplitude<f64>;
pub type Mixture = states::CoherentMixture<f64>;
pub type TwoMode = splitter::TwoModeMixture<f64>;
pub type Basis = subspace::OrthoBasis<f64>;
pub type Matrix = subspace::HermitianMatrix<f64>;
pub type Angles = discord::MeasurementAngles<f64>;
pub type Report = discord::DiscordReport<f64>;
pub type Fock = fock::FockMatrix<f64>;
