use super::{check_finite, ConvergenceReport, QuadratureSpec};
use crate::error::QuadratureError;
use crate::num::Real;

/// Kahan-Babuska-Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum<T> {
    sum: T,
    compensation: T,
}

impl<T: Real> NeumaierSum<T> {
    pub fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation = self.compensation + ((self.sum - t) + x);
        } else {
            self.compensation = self.compensation + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn total(&self) -> T {
        self.sum + self.compensation
    }
}

impl<T: Real> FromIterator<T> for NeumaierSum<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut acc = NeumaierSum::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Number of consecutive negligible terms required before truncating.
const QUIET_TERMS: usize = 3;

/// Sums `term(1) + term(2) + ...` with compensated accumulation.
///
/// Truncates once `|term(m)| < series_rel_tol * |partial sum|` for three
/// consecutive `m`. For eventually one-signed terms the remaining tail is
/// extrapolated from the last terms (geometric or power-law decay,
/// whichever is larger) and added to the value; its magnitude is the
/// reported `est_error`.
pub fn try_sum_series<T, F, E>(mut term: F, spec: &QuadratureSpec<T>) -> Result<ConvergenceReport<T>, E>
where
    T: Real,
    F: FnMut(usize) -> Result<T, E>,
    E: From<QuadratureError>,
{
    spec.validate()?;
    let mut acc = NeumaierSum::default();
    let mut quiet = 0;
    let mut prev = T::zero();
    let mut last = T::zero();

    for m in 1..=spec.series_max_terms {
        let t = term(m)?;
        let t = check_finite(T::count(m), t)?;
        acc.add(t);
        prev = last;
        last = t;
        if t.abs() <= spec.series_rel_tol * acc.total().abs() {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                let tail = tail_estimate(m, prev, last);
                let value = acc.total() + tail;
                let err = if tail == T::zero() { last.abs() } else { tail.abs() };
                return Ok(ConvergenceReport::new(value, err, m, true));
            }
        } else {
            quiet = 0;
        }
    }

    let m = spec.series_max_terms;
    let tail = tail_estimate(m, prev, last);
    let err = if tail == T::zero() {
        last.abs() * T::count(m)
    } else {
        tail.abs()
    };
    Ok(ConvergenceReport::new(acc.total(), err, m, false))
}

pub fn sum_series<T, F>(mut term: F, spec: &QuadratureSpec<T>) -> Result<ConvergenceReport<T>, QuadratureError>
where
    T: Real,
    F: FnMut(usize) -> T,
{
    try_sum_series(|m| Ok(term(m)), spec)
}

/// Estimated sum of the terms after index `m`, given the terms at `m - 1`
/// and `m`. Zero for alternating or vanishing terms.
fn tail_estimate<T: Real>(m: usize, prev: T, last: T) -> T {
    if m < 2 || last == T::zero() || prev == T::zero() || (last > T::zero()) != (prev > T::zero()) {
        return T::zero();
    }
    let ratio = (last / prev).abs();
    if ratio >= T::one() {
        return T::zero();
    }
    let geometric = last.abs() * ratio / (T::one() - ratio);

    // local exponent p of |t_m| ~ C m^-p
    let mf = T::count(m);
    let p = -(ratio.ln()) / (mf / (mf - T::one())).ln();
    let power = if p > T::one() {
        // sum_{k > m} C k^-p ~ C (m + 1/2)^(1-p) / (p - 1)
        let half = T::lit(0.5);
        last.abs() * mf.powf(p) * (mf + half).powf(T::one() - p) / (p - T::one())
    } else {
        T::zero()
    };
    let magnitude = geometric.max(power);
    if magnitude.is_finite() {
        magnitude * last.signum()
    } else {
        T::zero()
    }
}
