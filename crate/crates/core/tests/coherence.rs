//! Fock-basis coherence monotones: asymptotes, divergence and basis dependence.

use discordpot::fock::{
    c_l1, c_l1_auto, c_re_auto, coherent_vector, estimate_c, fit_c_l1, h0, h1, series_truncation, CoherenceFamily,
};
use discordpot::{discord_potential, make_binary_mixture, Amplitude, Mixture};

fn amp(re: f64, im: f64) -> Amplitude {
    Amplitude::new(re, im).unwrap()
}

#[test]
fn slope_of_c_l1_is_near_five() {
    let c = estimate_c::<f64>();
    assert!((4.5..=5.5).contains(&c), "{c}");
    let fit = fit_c_l1::<f64>(CoherenceFamily::Pure);
    assert!(fit.residual_rel_norm < 0.05);
    let mixed = fit_c_l1::<f64>(CoherenceFamily::Balanced);
    assert!((mixed.slope / fit.slope / 0.5 - 1.0).abs() < 0.02);
}

// Only even k + n survive for β = −α, which halves the pure-state sum up to the
// alternating piece (Σ(−1)^k |c_k|)² − Σ|c_k|² → −1.
#[test]
fn balanced_c_l1_is_half_of_pure_minus_one() {
    for r in [4.0_f64, 7.0, 10.0] {
        let pure = c_l1_auto(&CoherenceFamily::Pure.mixture(r)).unwrap();
        let mixed = c_l1_auto(&CoherenceFamily::Balanced.mixture(r)).unwrap();
        assert!((mixed - (pure - 1.0) / 2.0).abs() < 1e-6, "|α| = {r}");
    }
}

#[test]
fn displacement_changes_monotones_but_not_discord_potential() {
    let base = make_binary_mixture(0.4, amp(0.5, 0.0), amp(-0.5, 0.0)).unwrap();
    let moved = base.displaced(amp(1.5, -0.5));
    assert!((c_l1_auto(&base).unwrap() - c_l1_auto(&moved).unwrap()).abs() > 1e-2);
    assert!((c_re_auto(&base).unwrap() - c_re_auto(&moved).unwrap()).abs() > 1e-2);
    let (cd0, cd1) = (discord_potential(&base).unwrap(), discord_potential(&moved).unwrap());
    assert!((cd0 - cd1).abs() < 1e-9, "{cd0} vs {cd1}");
}

#[test]
fn monotones_diverge_along_balanced_family() {
    let mut last = (0.0, 0.0);
    for r in [2.0, 4.0, 6.0, 8.0, 10.0] {
        let mix = CoherenceFamily::Balanced.mixture(r);
        let now = (c_l1_auto(&mix).unwrap(), c_re_auto(&mix).unwrap());
        assert!(now.0 > last.0 && now.1 > last.1, "|α| = {r}: {now:?} after {last:?}");
        last = now;
    }
}

#[test]
fn no_overflow_up_to_twenty() {
    let v = coherent_vector(amp(20.0, 0.0), 800);
    assert!(v.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    assert!((norm - 1.0).abs() < 1e-12);
    let pure = Mixture::pure(amp(20.0, 0.0));
    assert!(c_l1(&pure, 800).is_finite());
    let n = series_truncation(20.0_f64);
    assert!(h0(20.0_f64, n).is_finite() && h1(20.0_f64, n).is_finite());
}
