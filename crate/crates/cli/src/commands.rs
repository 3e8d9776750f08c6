use std::fs;
use std::path::Path;

use casimir_core::thermal::{delta_e_analytic, delta_f_analytic};
use casimir_core::validation::{run, Settings, CRITERIA};
#[cfg(test)]
use casimir_core::Metal;
use casimir_core::{correction_bundle_with, sweep, Bundle, Cavity, EnergyMode, Environment, Mirror, Spec};

use crate::args::{self, Format, ModeArg, Numerics, Output, Physics, Range};
use crate::output::{bundle_row, emit, render, Cell, Metadata, Table, BUNDLE_COLUMNS};
use crate::CliError;

/// Plasma wavelengths of the deviation figures, with their curve labels.
const FIGURE_CURVES: [(&str, f64); 4] = [("Al", 107e-9), ("Cu-Au", 136e-9), ("300nm", 300e-9), ("500nm", 500e-9)];
const FIGURE_RANGE: (f64, f64) = (0.1e-6, 10e-6);

pub fn factors(gap: f64, physics: &Physics, output: &Output, numerics: &Numerics) -> Result<(), CliError> {
    let mirror = physics.mirror.resolve()?;
    let env = args::environment(physics.temperature)?;
    let spec = args::spec(numerics.abs_tol, numerics.rel_tol)?;
    let cav = Cavity::unit_area(gap, mirror, env).map_err(CliError::from_core)?;
    let b = correction_bundle_with(&cav, &spec, numerics.mode.energy_mode()).map_err(CliError::from_core)?;

    let mut columns = BUNDLE_COLUMNS.to_vec();
    columns.extend(["force_N", "energy_J"]);
    let mut table = Table::new(&columns);
    let mut row = bundle_row(gap, Some(&b));
    row.extend([Cell::Num(Some(b.force)), Cell::Num(Some(b.energy))]);
    table.push(row);

    let meta = Metadata::new(
        &spec,
        numerics.mode.name(),
        physics.temperature,
        Some(mirror.lambda_p()),
    );
    write(&table, &meta, output.format, output.out.as_deref())
}

pub fn sweep_range(range: &Range, physics: &Physics, output: &Output, numerics: &Numerics) -> Result<(), CliError> {
    let mirror = physics.mirror.resolve()?;
    let env = args::environment(physics.temperature)?;
    let spec = args::spec(numerics.abs_tol, numerics.rel_tol)?;
    let grid = range.grid(None)?;

    let bundles = compute(&grid, mirror, env, &spec, numerics.mode.energy_mode())?;
    let mut table = Table::new(&BUNDLE_COLUMNS);
    for (&gap, b) in grid.iter().zip(&bundles) {
        table.push(bundle_row(gap, b.as_ref()));
    }

    let meta = Metadata::new(
        &spec,
        numerics.mode.name(),
        physics.temperature,
        Some(mirror.lambda_p()),
    );
    write(&table, &meta, output.format, output.out.as_deref())?;
    check_rows(&table)
}

pub fn figures(
    range: &Range,
    temperature: f64,
    format: Format,
    dir: &Path,
    numerics: &Numerics,
) -> Result<(), CliError> {
    let env = args::environment(temperature)?;
    let spec = args::spec(numerics.abs_tol, numerics.rel_tol)?;
    let grid = range.grid(Some(FIGURE_RANGE))?;
    let mode = numerics.energy_mode();

    let mut curves = Vec::with_capacity(FIGURE_CURVES.len());
    for (label, lambda_p) in FIGURE_CURVES {
        let mirror = Mirror::new(lambda_p).map_err(CliError::from_core)?;
        curves.push((label, lambda_p, compute(&grid, mirror, env, &spec, mode)?));
    }

    let force = ["curve", "lambda_P_m", "L_m", "eta_F", "eta_F_P", "eta_F_T", "ok"];
    let energy = ["curve", "lambda_P_m", "L_m", "eta_E", "eta_E_P", "eta_E_T", "ok"];
    let deviation = ["curve", "lambda_P_m", "L_m", "delta_F", "delta_E", "ok"];
    let rescaled = ["curve", "lambda_P_m", "L_m", "Delta_F", "Delta_E", "ok"];
    let mut fig1 = Table::new(&force);
    let mut fig2 = Table::new(&energy);
    let mut fig3 = Table::new(&deviation);
    let mut fig4 = Table::new(&rescaled);

    for (i, (label, lambda_p, bundles)) in curves.iter().enumerate() {
        for (&gap, b) in grid.iter().zip(bundles) {
            let b = b.as_ref();
            let head = || {
                vec![
                    Cell::Text(label.to_string()),
                    Cell::Num(Some(*lambda_p)),
                    Cell::Num(Some(gap)),
                ]
            };
            let pick = |f: fn(&Bundle) -> f64| Cell::Num(b.map(f));
            let ok = Cell::Flag(b.is_some());
            // Al and Cu-Au only for the factor plots
            if i < 2 {
                let mut r = head();
                r.extend([pick(|b| b.eta_f), pick(|b| b.eta_f_p), pick(|b| b.eta_f_t), ok.clone()]);
                fig1.push(r);
                let mut r = head();
                r.extend([pick(|b| b.eta_e), pick(|b| b.eta_e_p), pick(|b| b.eta_e_t), ok.clone()]);
                fig2.push(r);
            }
            let mut r = head();
            r.extend([pick(|b| b.delta_f), pick(|b| b.delta_e), ok.clone()]);
            fig3.push(r);
            let mut r = head();
            r.extend([pick(|b| b.delta_f_rescaled), pick(|b| b.delta_e_rescaled), ok]);
            fig4.push(r);
        }
    }

    let lambda_t = env.lambda_t();
    for &gap in &grid {
        let f = delta_f_analytic(gap, lambda_t, &spec).ok();
        let e = delta_e_analytic(gap, lambda_t, &spec).ok();
        fig4.push(vec![
            Cell::Text("analytic".into()),
            Cell::Num(None),
            Cell::Num(Some(gap)),
            Cell::Num(f),
            Cell::Num(e),
            Cell::Flag(f.is_some() && e.is_some()),
        ]);
    }

    fs::create_dir_all(dir).map_err(CliError::Io)?;
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let meta = Metadata::new(&spec, numerics.mode.name(), temperature, None);
    let tables = [&fig1, &fig2, &fig3, &fig4];
    for (i, table) in tables.iter().enumerate() {
        let path = dir.join(format!("fig{}.{ext}", i + 1));
        write(table, &meta, format, Some(&path))?;
    }
    for table in tables {
        check_rows(table)?;
    }
    Ok(())
}

pub fn validate(
    criteria: &[usize],
    mode: ModeArg,
    abs_tol: Option<f64>,
    rel_tol: Option<f64>,
    tamper_hbar: Option<f64>,
) -> Result<(), CliError> {
    let mut settings = Settings {
        spec: args::spec(abs_tol, rel_tol)?,
        mode: mode.energy_mode(),
        ..Settings::default()
    };
    if let Some(k) = tamper_hbar {
        settings.constants.hbar *= k;
    }
    let ids: Vec<usize> = if criteria.is_empty() {
        std::iter::once(0).chain(CRITERIA).collect()
    } else {
        criteria.to_vec()
    };
    if let Some(bad) = ids.iter().find(|&&id| id > CRITERIA.len()) {
        return Err(CliError::Usage(format!(
            "no criterion numbered {bad} (known: 0 to {})",
            CRITERIA.len()
        )));
    }

    println!(
        "{:<3} {:<4} {:>24} {:>24} {:>10}  check",
        "id", "pass", "expected", "actual", "tolerance"
    );
    let mut failed = 0;
    for &id in &ids {
        let report = run(id, &settings);
        for c in &report.checks {
            println!(
                "{:<3} {:<4} {:>24} {:>24} {:>10.1e}  {}",
                id,
                if c.pass { "ok" } else { "FAIL" },
                format!("{:.16e}", c.expected),
                format!("{:.16e}", c.actual),
                c.tolerance,
                c.label
            );
        }
        let verdict = if report.pass() { "PASS" } else { "FAIL" };
        println!(
            "criterion {id}: {verdict}  {}  ({:.1} s)",
            report.title,
            report.elapsed.as_secs_f64()
        );
        if !report.pass() {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", ids.len() - failed, ids.len());
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Validation(failed))
    }
}

impl Numerics {
    fn energy_mode(&self) -> EnergyMode {
        self.mode.energy_mode()
    }
}

fn compute(
    grid: &[f64],
    mirror: Mirror,
    env: Environment,
    spec: &Spec,
    mode: EnergyMode,
) -> Result<Vec<Option<Bundle>>, CliError> {
    let cavities = grid
        .iter()
        .map(|&gap| Cavity::unit_area(gap, mirror, env))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::from_core)?;
    let results = sweep(&cavities, spec, mode).map_err(CliError::from_core)?;
    Ok(results
        .into_iter()
        .zip(grid)
        .map(|(r, gap)| match r {
            Ok(b) => Some(b),
            Err(e) => {
                eprintln!("casimir: L = {gap:e} m failed: {e}");
                None
            }
        })
        .collect())
}

fn write(table: &Table, meta: &Metadata, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let bytes = render(table, meta, format).map_err(CliError::Io)?;
    emit(&bytes, path).map_err(CliError::Io)
}

fn check_rows(table: &Table) -> Result<(), CliError> {
    if table.all_ok() {
        Ok(())
    } else {
        Err(CliError::Numerical(
            "some rows failed to converge and are marked ok = false".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_curves_use_the_presets() {
        assert_eq!(FIGURE_CURVES[0].1, Metal::Aluminium.plasma_wavelength());
        assert_eq!(FIGURE_CURVES[1].1, Metal::Copper.plasma_wavelength());
        assert_eq!(FIGURE_CURVES[1].1, Metal::Gold.plasma_wavelength());
    }
}
