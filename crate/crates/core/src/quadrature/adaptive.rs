use super::kronrod::{gk15, Panel, POINTS};
use super::{check_finite, ConvergenceReport, NeumaierSum, QuadratureSpec};
use crate::error::QuadratureError;
use crate::num::Real;

/// Globally adaptive Gauss-Kronrod integration of `f` over `[a, b]`.
///
/// The panel with the largest error estimate is bisected until the summed
/// error meets `spec.target(value)` or `max_subdivisions` panels exist.
/// Panel selection is deterministic, so identical inputs give identical
/// bits.
pub fn try_integrate_interval<T, F, E>(
    mut f: F,
    a: T,
    b: T,
    spec: &QuadratureSpec<T>,
) -> Result<ConvergenceReport<T>, E>
where
    T: Real,
    F: FnMut(T) -> Result<T, E>,
    E: From<QuadratureError>,
{
    spec.validate()?;
    if a == b {
        return Ok(ConvergenceReport::new(T::zero(), T::zero(), 0, true));
    }
    let mut g = |x: T| -> Result<T, E> {
        let y = f(x)?;
        Ok(check_finite(x, y)?)
    };

    let mut panels: Vec<Panel<T>> = vec![gk15(&mut g, a, b)?];
    let mut evaluations = POINTS;
    let tiny = T::lit(100.0) * T::epsilon();

    loop {
        let (value, error) = totals(&panels);
        if error <= spec.target(value) {
            return Ok(ConvergenceReport::new(value, error, evaluations, true));
        }
        if panels.len() >= spec.max_subdivisions {
            return Ok(ConvergenceReport::new(value, error, evaluations, false));
        }

        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| (p.b - p.a).abs() > tiny * p.a.abs().max(p.b.abs()).max(T::min_positive_value()))
            .max_by(|(_, p), (_, q)| p.error.partial_cmp(&q.error).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i);
        let Some(idx) = worst else {
            // every panel is at roundoff width
            return Ok(ConvergenceReport::new(value, error, evaluations, false));
        };

        let p = panels.swap_remove(idx);
        let mid = T::lit(0.5) * (p.a + p.b);
        let left = gk15(&mut g, p.a, mid)?;
        let right = gk15(&mut g, mid, p.b)?;
        evaluations += 2 * POINTS;
        panels.push(left);
        panels.push(right);
    }
}

fn totals<T: Real>(panels: &[Panel<T>]) -> (T, T) {
    let mut value = NeumaierSum::default();
    let mut error = T::zero();
    for p in panels {
        value.add(p.value);
        error = error + p.error;
    }
    (value.total(), error)
}

pub fn integrate_interval<T, F>(
    mut f: F,
    a: T,
    b: T,
    spec: &QuadratureSpec<T>,
) -> Result<ConvergenceReport<T>, QuadratureError>
where
    T: Real,
    F: FnMut(T) -> T,
{
    try_integrate_interval(|x| Ok(f(x)), a, b, spec)
}

/// Integrates over `[0, 1]`. Integrable endpoint singularities are fine as
/// long as the integrand is finite at the Kronrod nodes (which never touch
/// the endpoints).
pub fn try_integrate_unit<T, F, E>(f: F, spec: &QuadratureSpec<T>) -> Result<ConvergenceReport<T>, E>
where
    T: Real,
    F: FnMut(T) -> Result<T, E>,
    E: From<QuadratureError>,
{
    try_integrate_interval(f, T::zero(), T::one(), spec)
}

pub fn integrate_unit<T, F>(mut f: F, spec: &QuadratureSpec<T>) -> Result<ConvergenceReport<T>, QuadratureError>
where
    T: Real,
    F: FnMut(T) -> T,
{
    try_integrate_unit(|x| Ok(f(x)), spec)
}

/// Integrates over `[0, inf)` through `u = -decay_scale * ln(1 - t)`.
///
/// The map is exact for `exp(-u / decay_scale)`, so integrands dominated by
/// that decay become nearly polynomial in `t`.
pub fn try_integrate_semi_infinite<T, F, E>(
    mut f: F,
    decay_scale: T,
    spec: &QuadratureSpec<T>,
) -> Result<ConvergenceReport<T>, E>
where
    T: Real,
    F: FnMut(T) -> Result<T, E>,
    E: From<QuadratureError>,
{
    if !(decay_scale > T::zero() && decay_scale.is_finite()) {
        return Err(QuadratureError::InvalidSpec("decay scale must be positive and finite").into());
    }
    let mapped = |t: T| -> Result<T, E> {
        let one_minus = T::one() - t;
        if one_minus <= T::zero() {
            return Ok(T::zero());
        }
        let u = -decay_scale * (-t).ln_1p();
        if !u.is_finite() {
            return Ok(T::zero());
        }
        let y = f(u)?;
        let y = check_finite(u, y)?;
        if y == T::zero() {
            return Ok(y);
        }
        Ok(y * decay_scale / one_minus)
    };
    try_integrate_interval(mapped, T::zero(), T::one(), spec)
}

pub fn integrate_semi_infinite<T, F>(
    mut f: F,
    decay_scale: T,
    spec: &QuadratureSpec<T>,
) -> Result<ConvergenceReport<T>, QuadratureError>
where
    T: Real,
    F: FnMut(T) -> T,
{
    try_integrate_semi_infinite(|x| Ok(f(x)), decay_scale, spec)
}
