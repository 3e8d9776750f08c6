use super::adaptive::{try_integrate_interval, try_integrate_semi_infinite};
use super::series::NeumaierSum;
use super::{ConvergenceReport, QuadratureSpec};
use crate::error::QuadratureError;
use crate::num::Real;

/// Incremental Euler transformation of an alternating series.
///
/// Feed the signed terms one at a time; `sum` holds the current
/// accelerated estimate. This is the van Wijngaarden arrangement: the
/// working row keeps successive forward differences, and the transform
/// order grows only while the differences keep shrinking.
#[derive(Debug, Clone, Default)]
pub struct EulerAccumulator<T> {
    work: Vec<T>,
    order: usize,
    sum: T,
}

impl<T: Real> EulerAccumulator<T> {
    pub fn new() -> Self {
        EulerAccumulator {
            work: Vec::new(),
            order: 0,
            sum: T::zero(),
        }
    }

    pub fn push(&mut self, term: T) {
        let half = T::lit(0.5);
        if self.work.is_empty() {
            self.work.push(term);
            self.order = 1;
            self.sum = half * term;
            return;
        }
        let n = self.order;
        self.work.resize(n + 1, T::zero());
        let mut tmp = self.work[0];
        self.work[0] = term;
        for j in 0..n - 1 {
            let dum = self.work[j + 1];
            self.work[j + 1] = half * (self.work[j] + tmp);
            tmp = dum;
        }
        self.work[n] = half * (self.work[n - 1] + tmp);
        if self.work[n].abs() <= self.work[n - 1].abs() {
            self.order += 1;
            self.sum = self.sum + half * self.work[n];
        } else {
            self.sum = self.sum + self.work[n];
        }
    }

    pub fn sum(&self) -> T {
        self.sum
    }
}

/// Consecutive accelerated estimates that must agree before stopping.
const STABLE_STEPS: usize = 3;
/// Half-periods always integrated before the stopping test is consulted.
const MIN_SEGMENTS: usize = 4;

/// Integrates a cosine-modulated integrand over `[0, inf)`.
///
/// `f` is the complete integrand, cosine included; `osc_period` is the
/// period of that cosine, whose zeros sit at `P/4 + k P/2`. The interval
/// `[0, P/4]` is integrated directly, each following half-period becomes one
/// term of an alternating series, and that series is summed with
/// [`EulerAccumulator`]. An infinite period means no oscillation; the call
/// then falls back to [`try_integrate_semi_infinite`] with unit decay
/// scale.
pub fn try_integrate_oscillatory<T, F, E>(
    mut f: F,
    osc_period: T,
    spec: &QuadratureSpec<T>,
) -> Result<ConvergenceReport<T>, E>
where
    T: Real,
    F: FnMut(T) -> Result<T, E>,
    E: From<QuadratureError>,
{
    spec.validate()?;
    if osc_period.is_infinite() && osc_period > T::zero() {
        return try_integrate_semi_infinite(f, T::one(), spec);
    }
    if !(osc_period > T::zero()) {
        return Err(QuadratureError::InvalidSpec("oscillation period must be positive").into());
    }

    // per-segment tolerances are tighter so their sum stays within spec
    let seg_spec = spec.scaled(T::lit(0.1));
    let quarter = osc_period * T::lit(0.25);
    let half = osc_period * T::lit(0.5);

    let head = try_integrate_interval(&mut f, T::zero(), quarter, &seg_spec)?;
    let mut evaluations = head.evaluations;
    let mut seg_error = head.est_error;
    let mut all_converged = head.converged;

    let mut euler = EulerAccumulator::new();
    let mut plain = NeumaierSum::default();
    plain.add(head.value);
    let mut estimate = head.value;
    let mut stable = 0;
    let mut last_change = T::infinity();
    let mut largest_segment = T::zero();

    for k in 0..spec.max_subdivisions {
        let a = quarter + T::count(k) * half;
        let b = a + half;
        let seg = try_integrate_interval(&mut f, a, b, &seg_spec)?;
        evaluations += seg.evaluations;
        seg_error = seg_error + seg.est_error;
        all_converged &= seg.converged;

        largest_segment = largest_segment.max(seg.value.abs());
        euler.push(seg.value);
        plain.add(seg.value);
        let next = head.value + euler.sum();
        last_change = (next - estimate).abs();
        estimate = next;

        let target = spec.target(estimate);
        // a negligible segment means the envelope has died off outright
        let negligible = seg.value.abs() <= T::lit(1e-3) * target;
        if last_change <= target || negligible {
            stable += 1;
        } else {
            stable = 0;
        }
        if k + 1 >= MIN_SEGMENTS && (stable >= STABLE_STEPS || (negligible && stable >= 2)) {
            // Euler means also "sum" growing series; keep going until the envelope turns over
            let decaying = negligible || seg.value.abs() < largest_segment;
            if negligible {
                // nothing left to accelerate; the partial sum is the integral
                let err = seg.value.abs() + seg_error;
                let ok = all_converged && err <= target * T::lit(10.0);
                return Ok(ConvergenceReport::new(plain.total(), err, evaluations, ok));
            }
            if decaying {
                let err = last_change + seg_error;
                let ok = all_converged && err <= target * T::lit(10.0);
                return Ok(ConvergenceReport::new(estimate, err, evaluations, ok));
            }
        }
    }

    Ok(ConvergenceReport::new(
        estimate,
        last_change + seg_error,
        evaluations,
        false,
    ))
}

pub fn integrate_oscillatory<T, F>(
    mut f: F,
    osc_period: T,
    spec: &QuadratureSpec<T>,
) -> Result<ConvergenceReport<T>, QuadratureError>
where
    T: Real,
    F: FnMut(T) -> T,
{
    try_integrate_oscillatory(|x| Ok(f(x)), osc_period, spec)
}
