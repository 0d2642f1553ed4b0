//! Acceptance criteria 1–11, one PASS/FAIL line each.

use std::f64::consts::{FRAC_1_SQRT_2, LN_2, PI, SQRT_2};
use std::path::PathBuf;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use discordpot::discrimination::{advantage, helstrom_error, homodyne_error};
use discordpot::fock::{
    c_l1_auto, c_re_asymptote_pure, c_re_auto, discord_oracle, entropy_oracle, estimate_c, h0, h1,
    series_truncation, CoherenceFamily, DEFAULT_TAIL_BOUND,
};
use discordpot::optimize::{grid_then_golden_max, linspace};
use discordpot::subspace::mixture_entropy;
use discordpot::{discord, discord_on, discord_potential, split, Amplitude, Mixture, Mode, Report};
use discordpot_validation::{evaluate, line, Checks, Criterion, Verdict};

fn amp(re: f64, im: f64) -> Amplitude {
    Amplitude::new(re, im).unwrap()
}

/// ½|α0⟩⟨α0| + ½|−α0⟩⟨−α0| with α0 = d0/2 (or (a, ±d0/2)).
fn symmetric(a: f64, d0: f64) -> Mixture {
    Mixture::new(vec![(a, amp(d0 / 2.0, 0.0)), (1.0 - a, amp(-d0 / 2.0, 0.0))]).unwrap()
}

/// Balanced input whose split output has separation d = d0/√2.
fn report_at_d(d: f64) -> Report {
    discord(&split(&symmetric(0.5, d * SQRT_2))).unwrap()
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn discrimination_formulas() -> Verdict {
    let mut c = Checks::new();
    let (hel0, hom0) = (helstrom_error(0.5, 0.0).unwrap(), homodyne_error(0.5, 0.0).unwrap());
    c.check(hel0 == 0.5 && hom0 == 0.5, format!("P_Hel(½,0) = {hel0}, P_Hom(½,0) = {hom0}"));
    let hel1 = helstrom_error(0.5, 1.0).unwrap();
    let exact = 0.5 * (1.0 - (1.0 - (-1f64).exp()).sqrt());
    c.check((hel1 - exact).abs() < 1e-12, format!("P_Hel(½,1) = {hel1:.12}, |Δ| = {:.1e}", (hel1 - exact).abs()));
    let grid = linspace(0.0, 6.0, 5000);
    let worst = grid
        .iter()
        .map(|&d0| helstrom_error(0.5, d0).unwrap() - homodyne_error(0.5, d0).unwrap())
        .fold(f64::NEG_INFINITY, f64::max);
    c.check(worst <= 1e-12, format!("max(P_Hel − P_Hom) on 5000 points = {worst:.2e}"));
    let values: Vec<f64> = linspace(1e-3, 6.0 - 1e-3, 5999).iter().map(|&d0| advantage(d0).unwrap()).collect();
    let slopes: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let changes = slopes.windows(2).filter(|w| (w[0] > 0.0) != (w[1] > 0.0)).count();
    let peak = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    c.check(changes == 1 && slopes[0] > 0.0, format!("ΔP slope sign changes = {changes}, max ΔP = {peak:.6}"));
    c.verdict()
}

fn discord_potential_limits() -> Verdict {
    let mut c = Checks::new();
    let small = discord_potential(&symmetric(0.5, 1e-3)).unwrap();
    let large = discord_potential(&symmetric(0.5, 12.0)).unwrap();
    let mid = discord_potential(&symmetric(0.5, 1.0)).unwrap();
    c.check(small < 1e-6, format!("C_D(1e-3) = {small:.2e}"));
    c.check(large < 1e-6, format!("C_D(12) = {large:.2e}"));
    c.check(mid > 1e-3, format!("C_D(1) = {mid:.6}"));
    c.verdict()
}

fn discord_maximum_location() -> Verdict {
    let (d, value) = grid_then_golden_max(|d| report_at_d(d).discord, 0.05, 2.0, 1e-3, 1e-7);
    let inside = (0.65..=0.76).contains(&d);
    Verdict::new(
        inside,
        format!(
            "argmax d = {d:.6} (d0 = {:.6}), D_max = {value:.6}; required d ∈ [0.65, 0.76] around 1/√2 = {FRAC_1_SQRT_2:.4}",
            d * SQRT_2
        ),
    )
}

fn crossover() -> Verdict {
    let gap = |d: f64| {
        let r = report_at_d(d);
        r.discord - r.classical_information
    };
    let grid = linspace(0.05, 0.7, 651);
    let values: Vec<f64> = grid.iter().map(|&d| gap(d)).collect();
    let mut roots = Vec::new();
    for i in 1..grid.len() {
        if (values[i - 1] > 0.0) != (values[i] > 0.0) {
            let (mut lo, mut hi, mut flo) = (grid[i - 1], grid[i], values[i - 1]);
            while hi - lo > 1e-9 {
                let mid = 0.5 * (lo + hi);
                let fm = gap(mid);
                if (fm > 0.0) == (flo > 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
    }
    let ok = roots.len() == 1 && (0.30..=0.41).contains(&roots[0]);
    let listed: Vec<String> = roots.iter().map(|r| format!("{r:.6}")).collect();
    Verdict::new(
        ok,
        format!(
            "sign changes of D − I_cl on [0.05, 0.7]: {} at d = [{}], D − I_cl(0.05) = {:.3e}; required one in [0.30, 0.41]",
            roots.len(),
            listed.join(", "),
            values[0]
        ),
    )
}

const WEIGHTS: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
const SEPARATIONS: [f64; 5] = [0.2, 0.5, 1.0, 2.0, 4.0];

/// Off-axis, off-centre placement of a pair at separation d0; |α0| ≤ 2.4.
fn generic_pair(a: f64, d0: f64) -> Mixture {
    let centre = amp(0.3, -0.2);
    let half = Amplitude::from_polar(d0 / 2.0, 0.4).unwrap();
    Mixture::binary(a, centre + half, centre - half).unwrap()
}

fn oracle_equivalence() -> Verdict {
    let (mut worst_entropy, mut worst_discord) = (0.0f64, 0.0f64);
    for a in WEIGHTS {
        for d0 in SEPARATIONS {
            let input = generic_pair(a, d0);
            assert!(input.amplitudes().iter().all(|x| x.magnitude() <= 4.0));
            let state = split(&input);
            let sub = discord(&state).unwrap();
            let fock = discord_oracle(&state, DEFAULT_TAIL_BOUND).unwrap();
            let single = (mixture_entropy(&input).unwrap() - entropy_oracle(&input, DEFAULT_TAIL_BOUND).unwrap()).abs();
            worst_entropy = worst_entropy
                .max((sub.entropy_a - fock.entropy_a).abs())
                .max((sub.entropy_b - fock.entropy_b).abs())
                .max((sub.total_entropy - fock.total_entropy).abs())
                .max(single);
            worst_discord = worst_discord.max((sub.discord - fock.discord).abs());
        }
    }
    let mut c = Checks::new();
    c.check(worst_entropy < 1e-8, format!("max entropy |Δ| = {worst_entropy:.2e} over 25 points"));
    c.check(worst_discord < 1e-6, format!("max discord |Δ| = {worst_discord:.2e}"));
    c.verdict()
}

fn symmetry_and_separability() -> Verdict {
    let mut worst = 0.0f64;
    for a in WEIGHTS {
        for d0 in SEPARATIONS {
            let state = split(&generic_pair(a, d0));
            let da = discord_on(&state, Mode::A).unwrap().discord;
            let db = discord_on(&state, Mode::B).unwrap().discord;
            worst = worst.max((da - db).abs());
        }
    }
    let product = discord(&split(&Mixture::pure(amp(1.3, -0.7)))).unwrap().discord;
    let mut c = Checks::new();
    c.check(worst < 1e-9, format!("max |D_A − D_B| = {worst:.2e} over 25 points"));
    c.check(product < 1e-9, format!("single coherent input D = {product:.2e}"));
    c.verdict()
}

fn phase_displacement_invariance() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_917);
    let bases = [symmetric(0.3, 1.2), symmetric(0.5, 1.0), symmetric(0.8, 2.5), symmetric(0.6, 0.4)];
    let mut worst = 0.0f64;
    for k in 0..20 {
        let base = &bases[k % bases.len()];
        let reference = discord_potential(base).unwrap();
        let chi = rng.gen_range(0.0..2.0 * PI);
        let delta = amp(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
        let moved = discord_potential(&base.rotated(chi).displaced(delta)).unwrap();
        worst = worst.max((moved - reference).abs());
    }
    Verdict::new(worst < 1e-9, format!("max |ΔC_D| over 20 transforms = {worst:.2e}"))
}

fn c_l1_asymptote() -> Verdict {
    let mut c = Checks::new();
    let slope = estimate_c::<f64>();
    c.check((4.5..=5.5).contains(&slope), format!("c = {slope:.6}"));
    let pure = c_l1_auto(&CoherenceFamily::Pure.mixture(10.0_f64)).unwrap();
    let mixed = c_l1_auto(&CoherenceFamily::Balanced.mixture(10.0_f64)).unwrap();
    let ratio = mixed / pure;
    let rel = (ratio / 0.5 - 1.0).abs();
    c.check(rel <= 0.02, format!("C_l1 mix/pure at |α| = 10: {mixed:.6}/{pure:.6} = {ratio:.6}, {:.3}% from 0.5 (limit 2%)", 100.0 * rel));
    c.verdict()
}

fn c_re_asymptote() -> Verdict {
    let mut c = Checks::new();
    let pure = c_re_auto(&CoherenceFamily::Pure.mixture(10.0_f64)).unwrap();
    let target = c_re_asymptote_pure(10.0_f64);
    c.check((pure - target).abs() < 0.05, format!("C_RE(|10⟩) = {pure:.6} vs {target:.6}"));
    let mixed = c_re_auto(&CoherenceFamily::Balanced.mixture(10.0_f64)).unwrap();
    c.check(((pure - mixed) - LN_2).abs() < 0.05, format!("offset = {:.6} vs ln 2", pure - mixed));
    let n = series_truncation(10.0_f64);
    let (v0, v1) = (h0(10.0, n), h1(10.0, n));
    let ln100 = 100f64.ln();
    c.check((v0 - ln100).abs() < 0.02, format!("h0(10) = {v0:.6} vs {ln100:.6}"));
    c.check((v1 - (ln100 + 0.005)).abs() < 0.02, format!("h1(10) = {v1:.6} vs {:.6}", ln100 + 0.005));
    c.verdict()
}

fn divergence_contrast() -> Verdict {
    let mut c = Checks::new();
    let amplitudes = [2.0, 4.0, 6.0, 8.0, 10.0];
    let mut l1 = Vec::new();
    let mut re = Vec::new();
    for r in amplitudes {
        let mix = CoherenceFamily::Balanced.mixture(r);
        l1.push(c_l1_auto(&mix).unwrap());
        re.push(c_re_auto(&mix).unwrap());
        if r > 6.0 {
            let cd = discord_potential(&mix).unwrap();
            c.check(cd < 1e-4, format!("C_D(|α| = {r}) = {cd:.1e}"));
        }
    }
    let rising = |v: &[f64]| v.windows(2).all(|w| w[1] > w[0]);
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(" < ");
    c.check(rising(&l1), format!("C_l1: {}", fmt(&l1)));
    c.check(rising(&re), format!("C_RE: {}", fmt(&re)));
    c.verdict()
}

/// Same arguments as the CLI golden files.
const FIGURES: &[(&str, &[&str])] = &[
    ("discriminate.csv", &["discriminate"]),
    ("surface.csv", &["surface", "--a-steps", "9", "--steps", "13"]),
    ("info.csv", &["info", "--steps", "60"]),
    ("coherence.csv", &["coherence", "--steps", "40"]),
];

fn cli_bytes(args: &[&str]) -> Vec<u8> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("discordpot").chain(args.iter().copied());
    let code = discordpot_cli::run(argv, &mut out, &mut err);
    assert_eq!(code, 0, "{args:?}: {}", String::from_utf8_lossy(&err));
    out
}

fn determinism() -> Verdict {
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../cli/tests/golden");
    let mut c = Checks::new();
    for (file, args) in FIGURES {
        let first = cli_bytes(args);
        let second = cli_bytes(args);
        let stored = std::fs::read(golden.join(file)).unwrap_or_default();
        c.check(first == second && first == stored, format!("{file} ({} bytes)", first.len()));
    }
    c.verdict()
}

fn main() {
    let criteria = [
        Criterion { number: 1, title: "discrimination formulas", budget: secs(1), run: discrimination_formulas },
        Criterion { number: 2, title: "discord-potential limits", budget: secs(10), run: discord_potential_limits },
        Criterion { number: 3, title: "discord maximum location", budget: secs(120), run: discord_maximum_location },
        Criterion { number: 4, title: "D = I_cl crossover", budget: secs(120), run: crossover },
        Criterion { number: 5, title: "oracle equivalence", budget: secs(300), run: oracle_equivalence },
        Criterion { number: 6, title: "symmetry and separability", budget: None, run: symmetry_and_separability },
        Criterion { number: 7, title: "phase/displacement invariance", budget: None, run: phase_displacement_invariance },
        Criterion { number: 8, title: "C_l1 asymptote", budget: secs(60), run: c_l1_asymptote },
        Criterion { number: 9, title: "C_RE asymptote", budget: secs(60), run: c_re_asymptote },
        Criterion { number: 10, title: "divergence contrast", budget: None, run: divergence_contrast },
        Criterion { number: 11, title: "determinism", budget: None, run: determinism },
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    let mut ran = 0;
    for c in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.number)) {
        let (verdict, elapsed) = evaluate(c);
        println!("{}", line(c, &verdict, elapsed));
        ran += 1;
        if !verdict.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
