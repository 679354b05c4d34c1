//! The table-producing commands: spectrum, sweep, variances, figures.

use std::fs;
use std::path::Path;

use coboson::{
    eigensolve_with, BogoliubovMatrix, LadderSpec, SqueezeParams, SqueezedState, Tolerances,
};
use rayon::prelude::*;

use crate::records::{Fig1Row, Fig2Row, Fig3Row, SpectrumRow, SweepRecord};
use crate::{output, CliError, FiguresArgs, SpectrumArgs, SweepArgs, VariancesArgs};

/// Tolerance on the emitted-row invariants (bound = (1-d)/2, product >= bound).
const ROW_TOLERANCE: f64 = 1e-9;

pub fn spectrum(args: &SpectrumArgs) -> Result<(), CliError> {
    let tol = solver_tolerances(args.tol)?;
    let states = solve_point(args.n_s, args.r, args.phi, &tol)?;
    let rows: Vec<SpectrumRow> = states
        .iter()
        .map(|s| SpectrumRow {
            n_s: args.n_s,
            r: args.r,
            phi: s.params().phi(),
            index: s.index(),
            alpha_re: s.alpha().re,
            alpha_im: s.alpha().im,
        })
        .collect();
    output::emit(&rows, args.format, args.out.as_deref())?;
    Ok(())
}

pub fn sweep(args: &SweepArgs) -> Result<(), CliError> {
    let grid = r_grid(args.r_min, args.r_max, args.steps)?;
    for &n_s in &args.n_s {
        args.state_index.validate_for(n_s).map_err(CliError::Config)?;
    }
    // fail on bad parameters before any grid point is computed
    SqueezeParams::new(grid[0], args.phi).map_err(CliError::from)?;
    let tol = solver_tolerances(args.tol)?;

    let points: Vec<(usize, f64)> = args
        .n_s
        .iter()
        .flat_map(|&n_s| grid.iter().map(move |&r| (n_s, r)))
        .collect();
    let records = points
        .par_iter()
        .map(|&(n_s, r)| {
            let states = solve_point(n_s, r, args.phi, &tol)?;
            Ok(SweepRecord::from_state(args.state_index.choose(&states)))
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    validate_rows(&records)?;
    output::emit(&records, args.format, args.out.as_deref())?;
    Ok(())
}

pub fn variances(args: &VariancesArgs) -> Result<(), CliError> {
    args.state_index
        .validate_for(args.n_s)
        .map_err(CliError::Config)?;
    let tol = solver_tolerances(args.tol)?;
    let states = solve_point(args.n_s, args.r, args.phi, &tol)?;
    let records = [SweepRecord::from_state(args.state_index.choose(&states))];
    validate_rows(&records)?;
    output::emit(&records, args.format, args.out.as_deref())?;
    Ok(())
}

pub fn figures(args: &FiguresArgs) -> Result<(), CliError> {
    let grid = r_grid(args.r_min, args.r_max, args.steps)?;
    let tol = solver_tolerances(args.tol)?;

    // both extreme states per grid point: largest eigenvalue first
    let per_point = grid
        .par_iter()
        .map(|&r| {
            let states = solve_point(args.n_s, r, 0.0, &tol)?;
            let top = SweepRecord::from_state(states.last().expect("spectrum never empty"));
            let bottom = SweepRecord::from_state(&states[0]);
            Ok((r, top, bottom))
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut fig1 = Vec::with_capacity(2 * per_point.len());
    let mut fig2 = Vec::with_capacity(2 * per_point.len());
    let mut fig3 = Vec::with_capacity(2 * per_point.len());
    for (r, top, bottom) in &per_point {
        for (label, rec) in [("alpha_max", top), ("alpha_min", bottom)] {
            validate_rows(std::slice::from_ref(rec))?;
            fig1.push(Fig1Row {
                n_s: args.n_s,
                r: *r,
                state: label,
                var_chi: rec.var_chi,
                bosonic_var_chi: rec.bosonic_var_chi,
            });
            fig2.push(Fig2Row {
                n_s: args.n_s,
                r: *r,
                state: label,
                var_pi: rec.var_pi,
                bosonic_var_pi: rec.bosonic_var_pi,
            });
            fig3.push(Fig3Row {
                n_s: args.n_s,
                r: *r,
                state: label,
                product: rec.product,
                bound: rec.bound,
                half: 0.5,
            });
        }
    }

    fs::create_dir_all(&args.out)?;
    write_figure(&args.out, "fig1.csv", &fig1)?;
    write_figure(&args.out, "fig2.csv", &fig2)?;
    write_figure(&args.out, "fig3.csv", &fig3)?;
    Ok(())
}

fn write_figure<T: crate::records::Table + serde::Serialize>(
    dir: &Path,
    name: &str,
    rows: &[T],
) -> Result<(), CliError> {
    let path = dir.join(name);
    output::emit(rows, output::OutputFormat::Csv, Some(&path))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn solve_point(
    n_s: usize,
    r: f64,
    phi: f64,
    tol: &Tolerances,
) -> Result<Vec<SqueezedState>, CliError> {
    let spec = LadderSpec::new(n_s)?;
    let params = SqueezeParams::new(r, phi)?;
    let m = BogoliubovMatrix::new(&spec, params);
    Ok(eigensolve_with(&m, tol)?)
}

fn solver_tolerances(tol: f64) -> Result<Tolerances, CliError> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(CliError::Config(format!(
            "tolerance must be a positive number, got {tol}"
        )));
    }
    Ok(Tolerances {
        eigen_residual: tol,
        ..Tolerances::default()
    })
}

fn r_grid(r_min: f64, r_max: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if !r_min.is_finite() || !r_max.is_finite() || r_min <= 0.0 {
        return Err(CliError::Config(format!(
            "squeeze grid must satisfy 0 < r_min <= r_max, got [{r_min}, {r_max}]"
        )));
    }
    if r_max < r_min {
        return Err(CliError::Config(format!(
            "r_max {r_max} below r_min {r_min}"
        )));
    }
    if steps < 1 {
        return Err(CliError::Config("steps must be at least 1".into()));
    }
    if steps == 1 {
        return Ok(vec![r_min]);
    }
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                r_max
            } else {
                r_min + (r_max - r_min) * i as f64 / (steps - 1) as f64
            }
        })
        .collect())
}

fn validate_rows(records: &[SweepRecord]) -> Result<(), CliError> {
    for rec in records {
        rec.validate(ROW_TOLERANCE).map_err(CliError::Numerics)?;
    }
    Ok(())
}
