use std::f64::consts::{E, PI};

use casimir_core::optics::{epsilon_plasma, reflection_pair, rho, SpectralPoint};
use casimir_core::quadrature::{
    integrate_interval, integrate_oscillatory, integrate_semi_infinite, integrate_unit, sum_series, NeumaierSum,
};
use casimir_core::thermal::{delta_f_analytic, eta_e_t, eta_f_t, ThermalArgument};
use casimir_core::vacuum::{eta_e_p, eta_f_p, eta_f_p_2d, eta_f_p_asymptotic};
use casimir_core::{Metal, Mirror, QuadratureError, Spec};

const ZETA3: f64 = 1.202_056_903_159_594_2;

fn spec() -> Spec {
    Spec::default()
}

#[test]
fn finite_intervals() {
    let r = integrate_unit(|x: f64| x * x, &spec()).unwrap();
    assert!(r.converged);
    assert!((r.value - 1.0 / 3.0).abs() < 1e-14);
    let r = integrate_interval(f64::sin, 0.0, PI, &spec()).unwrap();
    assert!((r.value - 2.0).abs() < 1e-12);
    assert!(r.est_error < 1e-9);
}

#[test]
fn semi_infinite_respects_decay_scale() {
    let r = integrate_semi_infinite(|x: f64| x * (-x).exp(), 1.0, &spec()).unwrap();
    assert!((r.value - 1.0).abs() < 1e-10);
    let r = integrate_semi_infinite(|x: f64| (-x / 5.0).exp(), 5.0, &spec()).unwrap();
    assert!((r.value - 5.0).abs() < 5e-10);
}

#[test]
fn oscillatory_tail() {
    let r = integrate_oscillatory(|x: f64| x.cos() / (1.0 + x * x), 2.0 * PI, &spec()).unwrap();
    assert!(r.converged);
    assert!((r.value - PI / (2.0 * E)).abs() < 1e-9, "{}", r.value);
}

#[test]
fn non_finite_integrand_is_an_error() {
    let err = integrate_unit(|_: f64| f64::NAN, &spec()).unwrap_err();
    assert!(matches!(err, QuadratureError::NonFinite { .. }));
}

#[test]
fn series_and_compensated_sum() {
    let r = sum_series(|m| 1.0 / (m * m) as f64, &spec()).unwrap();
    assert!(r.converged);
    assert!((r.value - PI * PI / 6.0).abs() < 1e-11);

    let mut s = NeumaierSum::default();
    for x in [1.0, 1e100, 1.0, -1e100] {
        s.add(x);
    }
    assert_eq!(s.total(), 2.0);
}

#[test]
fn plasma_response() {
    let al: Mirror = Metal::Aluminium.mirror();
    assert!((epsilon_plasma(al.omega_p(), &al).unwrap() - 2.0).abs() < 1e-15);
    assert!(epsilon_plasma(0.0, &al).is_err());

    assert_eq!(rho(0.0, &al).unwrap(), 1.0);
    let kp = 2.0 * PI / al.lambda_p();
    let mut last = 1.0;
    for k in [0.1, 0.5, 1.0, 3.0, 10.0] {
        let r = rho(k * kp, &al).unwrap();
        assert!(r > 0.0 && r < last);
        last = r;
    }
    // rho(kappa_P) = (sqrt 2 - 1) / (sqrt 2 + 1)
    let s2 = 2f64.sqrt();
    assert!((rho(kp, &al).unwrap() - (s2 - 1.0) / (s2 + 1.0)).abs() < 1e-15);
}

#[test]
fn reflection_bounds_and_limits() {
    let cu: Mirror = Metal::Copper.mirror();
    let kp = 2.0 * PI / cu.lambda_p();
    for k in [0.01, 0.3, 2.0, 40.0] {
        for y in [0.0, 0.25, 0.9, 1.0] {
            let p = SpectralPoint::from_reduced(k * kp, y).unwrap();
            let r = reflection_pair(&p, &cu);
            assert!(r.r_perp < 0.0 && r.r_perp > -1.0);
            assert!(r.r_par.abs() <= 1.0);
            if y == 0.0 {
                assert_eq!(r.r_par, -1.0);
            }
        }
    }
    let p = SpectralPoint::from_reduced(1e7, 0.5).unwrap();
    let r = reflection_pair(&p, &Mirror::perfect());
    assert_eq!((r.r_perp, r.r_par), (-1.0, -1.0));
    assert!(SpectralPoint::<f64>::from_reduced(1e6, 1.5).is_err());
}

#[test]
fn vacuum_factors() {
    let s = spec();
    let mut last = 1.0;
    for lp in [0.01, 0.05, 0.2, 0.5, 2.0] {
        let f = eta_f_p(lp, &s).unwrap();
        let e = eta_e_p(lp, &s).unwrap();
        assert!(f > 0.0 && f < last);
        // the energy integrates over larger distances, where mirrors look better
        assert!(e > f && e < 1.0);
        assert!((eta_f_p_2d(lp, &s).unwrap() - f).abs() < 1e-7);
        last = f;
    }
    let lp = 0.01;
    let gap = (eta_f_p(lp, &s).unwrap() - eta_f_p_asymptotic(lp).unwrap()).abs();
    assert!(gap < 10.0 * lp * lp, "{gap}");
}

#[test]
fn thermal_factors() {
    let s = spec();
    // low temperature: eta_F^T - 1 -> pi^4 / (3 alpha^4)
    for alpha in [20.0, 40.0] {
        let f = eta_f_t(&ThermalArgument::new(alpha).unwrap(), &s).unwrap();
        let lead = PI.powi(4) / (3.0 * alpha.powi(4));
        assert!(((f - 1.0) / lead - 1.0).abs() < 1e-9, "alpha = {alpha}");
    }

    let mut last = 1.0;
    for alpha in [8.0, 4.0, 2.0, 1.0, 0.5] {
        let a = ThermalArgument::new(alpha).unwrap();
        let f = eta_f_t(&a, &s).unwrap();
        assert!(f >= last);
        assert!(eta_e_t(&a, &s).unwrap() >= f);
        last = f;
    }

    // high temperature: eta_F^T -> 30 zeta(3) / (pi^2 alpha)
    let alpha = 0.2;
    let f = eta_f_t(&ThermalArgument::new(alpha).unwrap(), &s).unwrap();
    assert!((f - 30.0 * ZETA3 / (PI * PI * alpha)).abs() < 1e-10);

    assert!(ThermalArgument::<f64>::new(-1.0).is_err());
    assert_eq!(delta_f_analytic(1e-6, f64::INFINITY, &s).unwrap(), 0.0);
}
