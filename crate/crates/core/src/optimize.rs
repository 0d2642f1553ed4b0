//! Derivative-free minimisers: Nelder–Mead simplex and golden-section search.

use crate::scalar::Real;

/// Stopping rules and coefficients for [`nelder_mead`].
#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions<T> {
    /// Edge length of the initial right-angled simplex.
    pub initial_step: T,
    /// Stop once the largest vertex distance from the best vertex drops below this.
    pub diameter_tol: T,
    pub max_iterations: usize,
}

impl<T: Real> Default for NelderMeadOptions<T> {
    fn default() -> Self {
        Self {
            initial_step: T::lit(0.05),
            diameter_tol: T::tolerance(1e-10),
            max_iterations: 5000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Minimum<T> {
    pub x: Vec<T>,
    pub value: T,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimises `f` starting from `x0` with the standard coefficients
/// (reflection 1, expansion 2, contraction ½, shrink ½).
pub fn nelder_mead<T: Real, F: FnMut(&[T]) -> T>(mut f: F, x0: &[T], opts: &NelderMeadOptions<T>) -> Minimum<T> {
    let n = x0.len();
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let mut simplex: Vec<(Vec<T>, T)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] = x[i] + opts.initial_step;
        let fx = f(&x);
        simplex.push((x, fx));
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
        let best = &simplex[0].0;
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(best).map(|(a, b)| (*a - *b).powi(2)).sum::<T>().sqrt())
            .fold(T::zero(), T::max);
        if diameter < opts.diameter_tol {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid: Vec<T> = (0..n)
            .map(|k| simplex[..n].iter().map(|(x, _)| x[k]).sum::<T>() / T::lit(n as f64))
            .collect();
        let worst = simplex[n].clone();
        let along = |t: T| -> Vec<T> { centroid.iter().zip(&worst.0).map(|(c, w)| *c + t * (*c - *w)).collect() };

        let xr = along(T::one());
        let fr = f(&xr);
        if fr < simplex[0].1 {
            let xe = along(two);
            let fe = f(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst.1 {
            let xc = along(half);
            let fc = f(&xc);
            (xc, fc)
        } else {
            let xc = along(-half);
            let fc = f(&xc);
            (xc, fc)
        };
        if fc < worst.1.min(fr) {
            simplex[n] = (xc, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let x: Vec<T> = vertex.0.iter().zip(&best).map(|(v, b)| *b + half * (*v - *b)).collect();
            let fx = f(&x);
            *vertex = (x, fx);
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
    let (x, value) = simplex.swap_remove(0);
    Minimum { x, value, iterations, converged }
}

/// Golden-section search for a minimum of a unimodal `f` on `[lo, hi]`.
/// Returns `(x, f(x))`.
pub fn golden_section<T: Real, F: FnMut(T) -> T>(mut f: F, mut lo: T, mut hi: T, tol: T) -> (T, T) {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    let x = (lo + hi) / T::lit(2.0);
    let fx = f(x);
    (x, fx)
}

/// `steps` evenly spaced points from `start` to `stop` inclusive.
pub fn linspace<T: Real>(start: T, stop: T, steps: usize) -> Vec<T> {
    match steps {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let h = (stop - start) / T::lit((steps - 1) as f64);
            (0..steps)
                .map(|i| if i + 1 == steps { stop } else { start + h * T::lit(i as f64) })
                .collect()
        }
    }
}

/// Locates the maximum of `f` on `[lo, hi]`: scan a grid with spacing at
/// most `grid_step`, then refine around the best grid point by golden
/// section down to `tol`. Returns `(x, f(x))`.
pub fn grid_then_golden_max<T: Real, F: FnMut(T) -> T>(mut f: F, lo: T, hi: T, grid_step: T, tol: T) -> (T, T) {
    let steps = ((hi - lo) / grid_step).ceil().to_usize().unwrap_or(1).max(2) + 1;
    let grid = linspace(lo, hi, steps);
    let values: Vec<T> = grid.iter().map(|&x| f(x)).collect();
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    let a = grid[best.saturating_sub(1)];
    let b = grid[(best + 1).min(steps - 1)];
    let (x, neg) = golden_section(|x| -f(x), a, b, tol);
    if -neg >= values[best] {
        (x, -neg)
    } else {
        (grid[best], values[best])
    }
}
