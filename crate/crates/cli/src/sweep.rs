//! Row-by-row sweep evaluation with deterministic, lossless CSV output.

use std::fs::File;
use std::io::{BufWriter, Write};

use rayon::prelude::*;

use qstep_core::conservation::{flux_balance, flux_weights};
use qstep_core::observables::group_velocities;
use qstep_core::scattering::solve;
use qstep_core::spinors::channel_coeffs;
use qstep_core::{Kinematics, ScatteringSolution, StepPotential, Zone, C64};

use crate::config::{PanelSet, SweepConfig, WEntry};
use crate::svg;

/// Fixed column layout of every sweep CSV.
pub const CSV_HEADER: &str = "E_over_m,V0,W0_mag,phi,zone,ReQm,ImQm,ReQp,ImQp,ReR,ImR,ReRt,ImRt,ReT,ImT,ReTt,ImTt,absR,absRt,absT,absTt,rho,rho_tilde,flux_residual,v_in,v_plus,v_minus,error";

/// One evaluated grid point. Missing values (errors, evanescent v-) render
/// as `nan`; `error` carries the diagnostic for rows that failed.
#[derive(Clone, Debug)]
pub struct Row {
    pub e_over_m: f64,
    pub v0: f64,
    pub w_mag: f64,
    pub phi: f64,
    pub zone: Option<Zone>,
    pub q_minus: Option<C64>,
    pub q_plus: Option<C64>,
    pub coefficients: Option<ScatteringSolution>,
    pub rho: Option<f64>,
    pub rho_tilde: Option<f64>,
    pub flux_residual: Option<f64>,
    pub v_in: Option<f64>,
    pub v_plus: Option<f64>,
    pub v_minus: Option<f64>,
    pub error: Option<String>,
}

impl Row {
    fn empty(e_over_m: f64, v0: f64, entry: &WEntry) -> Self {
        Self {
            e_over_m,
            v0,
            w_mag: entry.magnitude(),
            phi: entry.v1.atan2(entry.v2),
            zone: None,
            q_minus: None,
            q_plus: None,
            coefficients: None,
            rho: None,
            rho_tilde: None,
            flux_residual: None,
            v_in: None,
            v_plus: None,
            v_minus: None,
            error: None,
        }
    }

    pub fn to_csv_line(&self) -> String {
        let sol = self.coefficients.as_ref();
        let complex_cols = |z: Option<C64>| (opt(z.map(|v| v.re)), opt(z.map(|v| v.im)));
        let (re_qm, im_qm) = complex_cols(self.q_minus);
        let (re_qp, im_qp) = complex_cols(self.q_plus);
        let (re_r, im_r) = complex_cols(sol.map(|s| s.r));
        let (re_rt, im_rt) = complex_cols(sol.map(|s| s.r_tilde));
        let (re_t, im_t) = complex_cols(sol.map(|s| s.t));
        let (re_tt, im_tt) = complex_cols(sol.map(|s| s.t_tilde));
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            fmt(self.e_over_m),
            fmt(self.v0),
            fmt(self.w_mag),
            fmt(self.phi),
            self.zone.map(|z| z.to_string()).unwrap_or_default(),
            re_qm,
            im_qm,
            re_qp,
            im_qp,
            re_r,
            im_r,
            re_rt,
            im_rt,
            re_t,
            im_t,
            re_tt,
            im_tt,
            opt(sol.map(|s| s.r.norm())),
            opt(sol.map(|s| s.r_tilde.norm())),
            opt(sol.map(|s| s.t.norm())),
            opt(sol.map(|s| s.t_tilde.norm())),
            opt(self.rho),
            opt(self.rho_tilde),
            opt(self.flux_residual),
            opt(self.v_in),
            opt(self.v_plus),
            opt(self.v_minus),
            self.error
                .as_deref()
                .map(sanitize_error)
                .unwrap_or_default(),
        )
    }
}

/// 17 significant digits: lossless f64 round-trips, byte-stable output.
fn fmt(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "nan".into()
    }
}

fn opt(x: Option<f64>) -> String {
    match x {
        Some(v) => fmt(v),
        None => "nan".into(),
    }
}

fn sanitize_error(message: &str) -> String {
    message.replace([',', '\n'], ";")
}

/// Evaluate a single (E/m, W0) grid point. Failures land in the error
/// column instead of aborting the sweep.
pub fn compute_row(mass: f64, v0: f64, entry: &WEntry, e_over_m: f64) -> Row {
    let mut row = Row::empty(e_over_m, v0, entry);

    let pot = match StepPotential::new(v0, entry.v1, entry.v2) {
        Ok(pot) => pot,
        Err(err) => {
            row.error = Some(err.to_string());
            return row;
        }
    };
    row.w_mag = pot.w_mag();
    row.phi = pot.phi();

    let kin = match Kinematics::new(e_over_m * mass, mass, &pot) {
        Ok(kin) => kin,
        Err(err) => {
            row.error = Some(err.to_string());
            return row;
        }
    };
    row.zone = Some(kin.zone);
    row.q_minus = Some(kin.big_q_minus);
    row.q_plus = Some(kin.big_q_plus);

    let velocities = group_velocities(&kin, &pot);
    row.v_in = Some(velocities.v_in);
    row.v_plus = Some(velocities.v_plus);
    row.v_minus = velocities.v_minus.value();

    let sol = match solve(&kin, &pot) {
        Ok(sol) => sol,
        Err(err) => {
            row.error = Some(err.to_string());
            return row;
        }
    };
    row.coefficients = Some(sol);

    match channel_coeffs(&kin, &pot) {
        Ok(cc) => {
            let fw = flux_weights(&cc, &kin, &pot);
            row.rho = Some(fw.rho);
            row.rho_tilde = Some(fw.rho_tilde);
            row.flux_residual = Some(flux_balance(&sol, &fw));
        }
        Err(err) => row.error = Some(err.to_string()),
    }

    row
}

/// Aggregate result of a sweep, used for the exit-code decision.
#[derive(Clone, Copy, Debug)]
pub struct SweepOutcome {
    pub rows_written: usize,
    pub error_rows: usize,
    /// Largest |flux residual| over the rows that produced one.
    pub max_flux_residual: f64,
}

/// Run the sweep: rows are computed in parallel over the grid but emitted
/// in ascending E then ascending |W0| order, so the output is byte-stable
/// for a fixed configuration.
pub fn run_sweep(cfg: &SweepConfig) -> std::io::Result<SweepOutcome> {
    let entries = cfg.sorted_entries();
    let jobs: Vec<(f64, WEntry)> = cfg
        .energies_over_m
        .iter()
        .flat_map(|&e| entries.iter().map(move |&entry| (e, entry)))
        .collect();

    let rows: Vec<Row> = jobs
        .par_iter()
        .map(|(e_over_m, entry)| compute_row(cfg.mass, cfg.v0, entry, *e_over_m))
        .collect();

    let file = File::create(&cfg.out)?;
    let mut out = BufWriter::new(file);
    writeln!(out, "{CSV_HEADER}")?;
    for row in &rows {
        writeln!(out, "{}", row.to_csv_line())?;
    }
    out.flush()?;

    if let Some(svg_path) = &cfg.svg {
        let document = render_sweep_svg(cfg, &entries, &rows);
        std::fs::write(svg_path, document)?;
    }

    let max_flux_residual = rows
        .iter()
        .filter_map(|r| r.flux_residual)
        .filter(|r| r.is_finite())
        .fold(0.0f64, |acc, r| acc.max(r.abs()));
    Ok(SweepOutcome {
        rows_written: rows.len(),
        error_rows: rows.iter().filter(|r| r.error.is_some()).count(),
        max_flux_residual,
    })
}

/// Run `f` under the thread cap from QSTEP_THREADS, if set.
pub fn run_with_configured_threads<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match std::env::var("QSTEP_THREADS")
        .ok()
        .and_then(|raw| raw.parse::<usize>().ok())
    {
        Some(threads) if threads > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("worker pool")
            .install(f),
        _ => f(),
    }
}

fn series_for<F: Fn(&Row) -> Option<f64>>(
    entries: &[WEntry],
    rows: &[Row],
    extract: F,
) -> Vec<svg::Series> {
    let nw = entries.len();
    entries
        .iter()
        .enumerate()
        .map(|(w_idx, entry)| svg::Series {
            label: entry.label(),
            points: rows
                .iter()
                .skip(w_idx)
                .step_by(nw)
                .map(|row| (row.e_over_m, extract(row).unwrap_or(f64::NAN)))
                .collect(),
        })
        .collect()
}

fn render_sweep_svg(cfg: &SweepConfig, entries: &[WEntry], rows: &[Row]) -> String {
    let rate =
        |get: fn(&ScatteringSolution) -> C64| move |row: &Row| row.coefficients.map(|s| get(&s).norm());
    let reflected_flux = |row: &Row| {
        row.coefficients
            .map(|s| s.r.norm_sqr() + s.r_tilde.norm_sqr())
    };
    let transmitted_flux = |row: &Row| match (row.coefficients, row.rho, row.rho_tilde) {
        (Some(s), Some(rho), Some(rho_tilde)) => {
            Some(rho * s.t.norm_sqr() + rho_tilde * s.t_tilde.norm_sqr())
        }
        _ => None,
    };

    let panel = |title: &str, y_label: &str, series: Vec<svg::Series>| svg::Panel {
        title: title.to_string(),
        y_label: y_label.to_string(),
        series,
    };
    let mut panels = Vec::new();
    let want = cfg.panels;
    if matches!(want, PanelSet::Full | PanelSet::Reflection) {
        panels.push(panel(
            "Reflection rate",
            "|R|",
            series_for(entries, rows, rate(|s| s.r)),
        ));
        panels.push(panel(
            "Quaternionic reflection rate",
            "|R~|",
            series_for(entries, rows, rate(|s| s.r_tilde)),
        ));
    }
    if matches!(want, PanelSet::Full | PanelSet::Transmission) {
        panels.push(panel(
            "Transmission rate",
            "|T|",
            series_for(entries, rows, rate(|s| s.t)),
        ));
        panels.push(panel(
            "Quaternionic transmission rate",
            "|T~|",
            series_for(entries, rows, rate(|s| s.t_tilde)),
        ));
    }
    if matches!(want, PanelSet::Conservation) {
        panels.push(panel(
            "Reflected flux",
            "|R|^2 + |R~|^2",
            series_for(entries, rows, reflected_flux),
        ));
        panels.push(panel(
            "Transmitted flux",
            "rho |T|^2 + rho~ |T~|^2",
            series_for(entries, rows, transmitted_flux),
        ));
    }
    if matches!(want, PanelSet::Full | PanelSet::Conservation) {
        panels.push(panel(
            "Flux balance residual",
            "residual",
            series_for(entries, rows, |row| row.flux_residual),
        ));
    }
    if matches!(want, PanelSet::Full | PanelSet::Velocities) {
        panels.push(panel(
            "Plus-channel group velocity",
            "v+",
            series_for(entries, rows, |row| row.v_plus),
        ));
        panels.push(panel(
            "Minus-channel group velocity",
            "v-",
            series_for(entries, rows, |row| row.v_minus),
        ));
    }
    if matches!(want, PanelSet::Velocities) {
        panels.push(panel(
            "Incident velocity",
            "v_in",
            series_for(entries, rows, |row| row.v_in),
        ));
    }
    svg::render_document("E/m", &panels)
}
