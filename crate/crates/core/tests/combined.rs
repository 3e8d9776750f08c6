use casimir_core::thermal::{delta_e_from_argument, delta_f_from_argument, phi_f};
use casimir_core::*;
use proptest::prelude::*;

const LAMBDA_T: f64 = 7.632_95e-6;

fn room() -> Environment {
    Environment::new(300.0).unwrap()
}

fn cavity(metal: Metal, gap: f64) -> Cavity {
    Cavity::new(gap, 1e-4, metal.mirror(), room()).unwrap()
}

#[test]
fn deviations_are_positive_on_the_table_grid() {
    let spec = Spec::default();
    for metal in [Metal::Aluminium, Metal::Copper] {
        for gap in [0.5e-6, 1e-6, 3e-6, 7e-6] {
            let b = correction_bundle(&cavity(metal, gap), &spec).unwrap();
            assert!(b.delta_f >= 0.0 && b.delta_e >= 0.0, "{metal:?} {gap}: {b:?}");
        }
    }
}

#[test]
fn force_is_minus_energy_slope() {
    let spec = Spec::default();
    let h = 1e-9;
    let e = |l: f64| energy(&cavity(Metal::Aluminium, l), &spec, EnergyMode::Fast).unwrap();
    let slope = (e(1e-6 + h) - e(1e-6 - h)) / (2.0 * h);
    let f = force_matsubara(&cavity(Metal::Aluminium, 1e-6), &spec).unwrap();
    assert!((f + slope).abs() / f < 1e-4, "{f} vs {}", -slope);
}

#[test]
fn remainder_tends_to_first_order_term() {
    let spec = Spec::default();
    let lt = LAMBDA_T / 3e-6;
    let phi = phi_f(&ThermalArgument::from_ratio(lt).unwrap(), &spec).unwrap();
    let mut last = f64::INFINITY;
    for lp in [0.05, 0.02, 0.01] {
        let d = remainder_delta_eta_f(&Ratios::new(lp, lt).unwrap(), &spec).unwrap();
        let gap = (d / (lp * phi) - 1.0).abs();
        assert!(gap < last, "lp = {lp}: {gap}");
        last = gap;
    }
    assert!(last < 3e-3, "{last}");
}

#[test]
fn remainder_vanishes_for_perfect_mirrors() {
    let spec = Spec::default();
    assert_eq!(
        remainder_delta_eta_f(&Ratios::new(0.0, 2.5).unwrap(), &spec).unwrap(),
        0.0
    );
}

#[test]
fn factorized_estimates_reproduce_table() {
    let spec = Spec::default();
    let a = ThermalArgument::from_lengths(3e-6, LAMBDA_T).unwrap();
    let df = delta_f_from_argument(&a, &spec).unwrap();
    let de = delta_e_from_argument(&a, &spec).unwrap();
    let force = factorized_estimate(0.971, 1.117, 0.107 / 7.638, df).unwrap();
    assert!((force - 1.090).abs() < 0.002, "{force}");
    let energy = factorized_estimate(0.972, 1.470, 0.136 / 7.638, de).unwrap();
    assert!((energy - 1.444).abs() < 0.003, "{energy}");
}

#[test]
fn perfect_mirror_force_equals_thermal_factor() {
    let spec = Spec::default();
    let cav = Cavity::unit_area(2e-6, Mirror::perfect(), room()).unwrap();
    let b = correction_bundle(&cav, &spec).unwrap();
    assert!((b.eta_f - b.eta_f_t).abs() < 1e-6);
    assert_eq!(b.eta_f_p, 1.0);
}

#[test]
fn ideal_limit_gives_ideal_force_and_energy() {
    let spec = Spec::default();
    let cav = Cavity::new(1e-6, 1e-4, Mirror::perfect(), Environment::zero_temperature()).unwrap();
    let f = force_matsubara(&cav, &spec).unwrap();
    let e = energy(&cav, &spec, EnergyMode::Validation).unwrap();
    assert!((f / cav.ideal_force() - 1.0).abs() < 1e-6);
    assert!((e / cav.ideal_energy() - 1.0).abs() < 1e-6);
    let p = force_poisson(&cav, &spec).unwrap();
    assert!((p / cav.ideal_force() - 1.0).abs() < 1e-6);
}

#[test]
fn cold_poisson_keeps_only_vacuum_term() {
    let spec = Spec::default();
    let cav = Cavity::unit_area(1e-6, Metal::Aluminium.mirror(), Environment::zero_temperature()).unwrap();
    let p = force_poisson(&cav, &spec).unwrap() / cav.ideal_force();
    let v = vacuum::eta_f_p(cav.lp(), &spec).unwrap();
    assert_eq!(p, v);
}

#[test]
fn long_sweep_has_the_expected_shape() {
    let spec = Spec::default();
    let n = 50;
    let cavities: Vec<Cavity> = (0..n)
        .map(|i| cavity(Metal::Aluminium, 0.1e-6 * 100f64.powf(i as f64 / (n - 1) as f64)))
        .collect();
    let out: Vec<Bundle> = sweep(&cavities, &spec, EnergyMode::Fast)
        .unwrap()
        .into_iter()
        .map(|b| b.unwrap())
        .collect();
    assert!(out.windows(2).all(|w| w[1].eta_f_p > w[0].eta_f_p));
    let crossing = cavities
        .iter()
        .zip(&out)
        .zip(out.iter().skip(1))
        .find(|((_, a), b)| a.eta_f < 1.0 && b.eta_f >= 1.0)
        .map(|((c, _), _)| c.gap())
        .expect("eta_F crosses 1");
    assert!(crossing > 1e-6 && crossing < 3e-6, "{crossing}");
}

#[test]
fn sweep_keeps_input_order_and_matches_single_bundle() {
    let spec = Spec::default();
    let gaps = [5e-6, 0.7e-6, 2e-6];
    let cavities: Vec<Cavity> = gaps.iter().map(|&g| cavity(Metal::Copper, g)).collect();
    let out = sweep(&cavities, &spec, EnergyMode::Fast).unwrap();
    for (c, b) in cavities.iter().zip(out) {
        assert_eq!(b.unwrap(), correction_bundle(c, &spec).unwrap());
    }
    let single = sweep(&cavities[..1], &spec, EnergyMode::Fast).unwrap();
    assert_eq!(
        single[0].as_ref().unwrap(),
        &correction_bundle(&cavities[0], &spec).unwrap()
    );
}

#[test]
fn sweep_reports_failures_per_entry() {
    // too few subdivisions for anything but the closed forms
    let spec = Spec {
        max_subdivisions: 1,
        ..Default::default()
    };
    let cavities = [
        Cavity::unit_area(1e-6, Mirror::perfect(), Environment::zero_temperature()).unwrap(),
        cavity(Metal::Aluminium, 1e-6),
    ];
    let out = sweep(&cavities, &spec, EnergyMode::Fast).unwrap();
    assert!(out[0].is_ok());
    assert!(out[1].as_ref().unwrap_err().is_numerical());
}

#[test]
fn larger_plasma_wavelength_collapses_after_rescaling() {
    let spec = Spec::default();
    let curve = |lambda_p: f64| -> Vec<f64> {
        [1.5e-6, 3e-6, 4.5e-6, 8e-6]
            .iter()
            .map(|&l| {
                let cav = Cavity::unit_area(l, Mirror::new(lambda_p).unwrap(), room()).unwrap();
                correction_bundle(&cav, &spec).unwrap().delta_f_rescaled
            })
            .collect()
    };
    let base = curve(107e-9);
    let peak = base.iter().cloned().fold(0.0, f64::max);
    for lambda_p in [136e-9, 300e-9, 500e-9] {
        for (a, b) in base.iter().zip(curve(lambda_p)) {
            assert!((a - b).abs() / peak < 0.05, "{lambda_p}: {a} vs {b}");
        }
    }
}

#[test]
fn single_precision_tracks_double() {
    let r32 = Ratios::<f32>::new(0.107 / 3.0, 7.632_95 / 3.0).unwrap();
    let r64 = Ratios::<f64>::new(0.107 / 3.0, 7.632_95 / 3.0).unwrap();
    let a = eta_f(&r32, &QuadratureSpec::<f32>::default()).unwrap();
    let b = eta_f(&r64, &Spec::default()).unwrap();
    assert!((a as f64 - b).abs() < 1e-4, "{a} vs {b}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn factors_depend_only_on_ratios(gap in 0.3e-6f64..8e-6, k in 0.2f64..5.0) {
        let spec = Spec::default();
        let lambda_p = Metal::Aluminium.plasma_wavelength();
        let a = Ratios::new(lambda_p / gap, LAMBDA_T / gap).unwrap();
        let b = Ratios::new((lambda_p * k) / (gap * k), (LAMBDA_T * k) / (gap * k)).unwrap();
        let fa = eta_f(&a, &spec).unwrap();
        let fb = eta_f(&b, &spec).unwrap();
        prop_assert!((fa - fb).abs() < 1e-9);
    }

    #[test]
    fn matsubara_and_poisson_agree(gap in 0.4e-6f64..8e-6, lambda_p in 50e-9f64..500e-9) {
        let spec = Spec::default();
        let r = Ratios::new(lambda_p / gap, LAMBDA_T / gap).unwrap();
        let m = eta_f_matsubara(&r, &spec).unwrap();
        let p = eta_f_poisson(&r, &spec).unwrap();
        prop_assert!(((m - p) / m).abs() < 1e-6, "{} vs {}", m, p);
    }

    #[test]
    fn factorized_estimate_without_delta_is_product(p in 0.1f64..1.0, t in 1.0f64..5.0, x in 0.0f64..0.1) {
        prop_assert_eq!(factorized_estimate(p, t, x, 0.0).unwrap(), p * t);
    }
}
