//! Error function and log-factorials.

use crate::scalar::Real;

const SERIES_CUTOFF: f64 = 2.5;
const MAX_TERMS: usize = 500;

/// Error function, absolute accuracy better than 1e-12 in double precision.
///
/// Uses the non-alternating series `erf x = 2/√π e^{-x²} Σ 2ⁿ x^{2n+1}/(2n+1)!!`
/// below |x| = 2.5 and a continued fraction for `erfc` above.
pub fn erf<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if x < T::zero() {
        return -erf(-x);
    }
    if x < T::lit(SERIES_CUTOFF) {
        erf_series(x)
    } else {
        T::one() - erfc_continued_fraction(x)
    }
}

/// Complementary error function.
pub fn erfc<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if x < T::lit(SERIES_CUTOFF) {
        T::one() - erf(x)
    } else {
        erfc_continued_fraction(x)
    }
}

fn erf_series<T: Real>(x: T) -> T {
    let two_x2 = T::lit(2.0) * x * x;
    let mut term = x;
    let mut sum = x;
    for n in 1..MAX_TERMS {
        term = term * two_x2 / T::lit((2 * n + 1) as f64);
        sum = sum + term;
        if term <= sum * T::epsilon() {
            break;
        }
    }
    T::FRAC_2_SQRT_PI() * (-x * x).exp() * sum
}

// erfc x = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), modified Lentz.
fn erfc_continued_fraction<T: Real>(x: T) -> T {
    let tiny = T::min_positive_value() * T::lit(1e10);
    let mut f = x;
    let mut c = f;
    let mut d = T::zero();
    for n in 1..MAX_TERMS {
        let a = T::lit(n as f64 * 0.5);
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = d.recip();
        let delta = c * d;
        f = f * delta;
        if (delta - T::one()).abs() < T::epsilon() {
            break;
        }
    }
    (-x * x).exp() * T::FRAC_2_SQRT_PI() / (T::lit(2.0) * f)
}

/// `ln k!` for `k = 0..=n`, accumulated as a running sum of logarithms.
pub fn ln_factorials<T: Real>(n: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(n + 1);
    // Neumaier-compensated running sum of ln k.
    let (mut acc, mut carry) = (T::zero(), T::zero());
    out.push(acc);
    for k in 1..=n {
        let term = T::lit(k as f64).ln();
        let next = acc + term;
        carry = carry + if acc.abs() >= term.abs() { (acc - next) + term } else { (term - next) + acc };
        acc = next;
        out.push(acc + carry);
    }
    out
}
