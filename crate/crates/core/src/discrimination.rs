//! Error probabilities for telling apart two coherent states.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimize::grid_then_golden_max;
use crate::scalar::Real;
use crate::special::erf;

/// Both bounds and their gap at one (a, d0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscriminationPoint<T> {
    pub a: T,
    pub d0: T,
    pub p_helstrom: T,
    pub p_homodyne: T,
    pub advantage: T,
}

fn check_weight<T: Real>(a: T) -> Result<()> {
    if a > T::zero() && a < T::one() {
        Ok(())
    } else {
        Err(Error::InvalidProbability(a.as_f64()))
    }
}

fn check_separation<T: Real>(d0: T) -> Result<()> {
    if d0 >= T::zero() && d0.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("separation {} must be finite and non-negative", d0.as_f64())))
    }
}

/// Helstrom bound ½[1 − √(1 − 4a(1−a) e^{−d0²})].
///
/// Extension beyond a = ½: other priors use the standard two-pure-state
/// formula. Evaluated as x / (2(1 + √(1 − x))) to keep the far tail.
pub fn helstrom_error<T: Real>(a: T, d0: T) -> Result<T> {
    check_weight(a)?;
    check_separation(d0)?;
    let x = T::lit(4.0) * a * (T::one() - a) * (-d0 * d0).exp();
    let root = (T::one() - x).max(T::zero()).sqrt();
    Ok(x / (T::lit(2.0) * (T::one() + root)))
}

/// Homodyne error ½[1 − erf(d0/√2)]; only a = ½ is supported.
pub fn homodyne_error<T: Real>(a: T, d0: T) -> Result<T> {
    if a != T::lit(0.5) {
        return Err(Error::HomodyneWeight(a.as_f64()));
    }
    check_separation(d0)?;
    Ok((T::one() - erf(d0 * T::FRAC_1_SQRT_2())) / T::lit(2.0))
}

/// ΔP = P_Hom − P_Hel at a = ½.
pub fn advantage<T: Real>(d0: T) -> Result<T> {
    let half = T::lit(0.5);
    Ok(homodyne_error(half, d0)? - helstrom_error(half, d0)?)
}

pub fn point<T: Real>(d0: T) -> Result<DiscriminationPoint<T>> {
    let half = T::lit(0.5);
    let p_helstrom = helstrom_error(half, d0)?;
    let p_homodyne = homodyne_error(half, d0)?;
    Ok(DiscriminationPoint { a: half, d0, p_helstrom, p_homodyne, advantage: p_homodyne - p_helstrom })
}

/// (d0*, ΔP(d0*)) for the maximum of the advantage on (0, 6).
pub fn advantage_maximum<T: Real>() -> (T, T) {
    grid_then_golden_max(
        |d| advantage(d).unwrap_or(T::zero()),
        T::zero(),
        T::lit(6.0),
        T::lit(1e-3),
        T::tolerance(1e-10),
    )
}
