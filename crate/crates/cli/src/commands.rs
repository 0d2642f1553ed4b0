//! Row computations behind each subcommand.

use rayon::prelude::*;
use serde_json::{json, Value};

use discordpot::discrimination::{helstrom_error, homodyne_error, point as discrimination_point};
use discordpot::fock::{
    auto_truncation, c_l1_asymptote_balanced, c_l1_auto, c_re_asymptote_balanced, c_re_auto, entropy_oracle,
    estimate_c,
};
use discordpot::subspace::mixture_entropy;
use discordpot::{discord, discord_on, separation, split, Amplitude, Mixture, Mode, Report};

use crate::args::{Grid, PointInput};
use crate::error::CliError;
use crate::table::{number_value, Table};

/// Environment variable capping sweep parallelism; 0 or unset means automatic.
pub const THREADS_VAR: &str = "DISCORDPOT_THREADS";

pub fn thread_count() -> Result<usize, CliError> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(0),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{THREADS_VAR} must be a non-negative integer, got '{v}'"))),
    }
}

/// Evaluates `row` on every grid point in parallel, keeping grid order.
fn sweep<P, F>(points: &[P], row: F) -> Result<Vec<Vec<f64>>, CliError>
where
    P: Sync,
    F: Fn(&P) -> Result<Vec<f64>, CliError> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count()?)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))?;
    pool.install(|| points.par_iter().map(&row).collect())
}

fn amp(re: f64, im: f64) -> Result<Amplitude, CliError> {
    Amplitude::new(re, im).map_err(|e| CliError::Usage(e.to_string()))
}

/// a|α0⟩⟨α0| + (1−a)|β0⟩⟨β0|, collapsing to a pure state when α0 = β0.
pub fn input_state(a: f64, alpha0: Amplitude, beta0: Amplitude) -> Result<Mixture, CliError> {
    Mixture::new(vec![(a, alpha0), (1.0 - a, beta0)]).map_err(|e| CliError::Usage(e.to_string()))
}

/// The balanced input ½|d0/2⟩⟨d0/2| + ½|−d0/2⟩⟨−d0/2|, or (a, ±d0/2) in general.
pub fn symmetric_input(a: f64, d0: f64) -> Result<Mixture, CliError> {
    input_state(a, amp(d0 / 2.0, 0.0)?, amp(-d0 / 2.0, 0.0)?)
}

fn with_context<T>(r: Result<T, discordpot::Error>, what: &str) -> Result<T, CliError> {
    r.map_err(|e| CliError::Numerical(format!("{what}: {e}")))
}

pub fn discriminate(grid: Grid) -> Result<Table, CliError> {
    let rows = sweep(&grid.points(), |&d0| {
        let p = with_context(discrimination_point(d0), &format!("d0 = {d0}"))?;
        Ok(vec![d0, p.p_helstrom, p.p_homodyne, p.advantage])
    })?;
    Ok(Table::new(vec!["d0", "p_helstrom", "p_homodyne", "advantage"], rows))
}

pub fn surface(a_grid: Grid, d0_grid: Grid) -> Result<Table, CliError> {
    let points: Vec<(f64, f64)> =
        a_grid.points().into_iter().flat_map(|a| d0_grid.points().into_iter().map(move |d0| (a, d0))).collect();
    let rows = sweep(&points, |&(a, d0)| {
        let state = split(&symmetric_input(a, d0)?);
        let report = with_context(discord(&state), &format!("a = {a}, d0 = {d0}"))?;
        Ok(vec![a, d0, report.discord])
    })?;
    Ok(Table::new(vec!["a", "d0", "discord_potential"], rows))
}

pub fn info(grid: Grid) -> Result<Table, CliError> {
    let rows = sweep(&grid.points(), |&d| {
        let state = split(&symmetric_input(0.5, d * std::f64::consts::SQRT_2)?);
        let r = with_context(discord(&state), &format!("d = {d}"))?;
        Ok(vec![d, r.total_entropy, r.mutual_information, r.classical_information, r.discord])
    })?;
    Ok(Table::new(vec!["d", "S_AB", "I", "I_cl", "D"], rows))
}

pub fn coherence(grid: Grid) -> Result<Table, CliError> {
    let c = estimate_c::<f64>();
    let rows = sweep(&grid.points(), |&d0| {
        let mix = symmetric_input(0.5, d0)?;
        let cd = with_context(discord(&split(&mix)), &format!("d0 = {d0}"))?.discord;
        let amplitude = d0 / 2.0;
        Ok(vec![
            d0,
            cd,
            with_context(c_l1_auto(&mix), &format!("C_l1 at d0 = {d0}"))?,
            with_context(c_re_auto(&mix), &format!("C_RE at d0 = {d0}"))?,
            c_l1_asymptote_balanced(amplitude, c),
            c_re_asymptote_balanced(amplitude),
        ])
    })?;
    Ok(Table::new(vec!["d0", "C_D", "C_l1", "C_RE", "C_l1_asymptote", "C_RE_asymptote"], rows))
}

fn report_json(r: &Report) -> Value {
    json!({
        "total_entropy": number_value(r.total_entropy),
        "entropy_a": number_value(r.entropy_a),
        "entropy_b": number_value(r.entropy_b),
        "mutual_information": number_value(r.mutual_information),
        "classical_information": number_value(r.classical_information),
        "min_conditional_entropy": number_value(r.min_conditional_entropy),
        "discord": number_value(r.discord),
        "theta": number_value(r.optimal_angles.theta),
        "phi": number_value(r.optimal_angles.phi),
        "clamped": r.clamped,
    })
}

/// Every measure at one input, as a JSON document.
pub fn point(input: PointInput, tail_bound: f64) -> Result<Value, CliError> {
    let alpha0 = amp(input.alpha0.0, input.alpha0.1)?;
    let beta0 = amp(input.beta0.0, input.beta0.1)?;
    let mix = input_state(input.a, alpha0, beta0)?;
    let d0 = separation(alpha0, beta0);
    let state = split(&mix);
    let on_a = with_context(discord_on(&state, Mode::A), "discord on mode A")?;
    let on_b = with_context(discord_on(&state, Mode::B), "discord on mode B")?;
    let entropy = with_context(mixture_entropy(&mix), "entropy")?;
    let half = input.a == 0.5;
    let p_hel = with_context(helstrom_error(input.a, d0), "Helstrom bound")?;
    let p_hom = if half { Some(with_context(homodyne_error(input.a, d0), "homodyne bound")?) } else { None };
    Ok(json!({
        "a": number_value(input.a),
        "alpha0": [number_value(input.alpha0.0), number_value(input.alpha0.1)],
        "beta0": [number_value(input.beta0.0), number_value(input.beta0.1)],
        "d0": number_value(d0),
        "d": number_value(d0 / std::f64::consts::SQRT_2),
        "entropy": number_value(entropy),
        "entropy_fock": number_value(with_context(entropy_oracle(&mix, tail_bound), "Fock entropy")?),
        "n_max": auto_truncation(&mix, tail_bound),
        "tail_bound": number_value(tail_bound),
        "discord_potential": number_value(on_a.discord),
        "measured_a": report_json(&on_a),
        "measured_b": report_json(&on_b),
        "p_helstrom": number_value(p_hel),
        "p_homodyne": p_hom.map_or(Value::Null, number_value),
        "advantage": p_hom.map_or(Value::Null, |h| number_value(h - p_hel)),
        "c_l1": number_value(with_context(c_l1_auto(&mix), "C_l1")?),
        "c_re": number_value(with_context(c_re_auto(&mix), "C_RE")?),
    }))
}
