//! Human-readable report for a single evaluation point.

use std::fmt::Write;

use qstep_core::conservation::{flux_balance, flux_weights};
use qstep_core::observables::{group_velocities, ChannelVelocity};
use qstep_core::scattering::{matching_residual, solve, SolveMethod};
use qstep_core::spinors::channel_coeffs;
use qstep_core::{zone_boundaries, Kinematics, Result, StepPotential, C64};

/// Everything `qstep point` prints, plus the flux residual for the exit
/// code decision.
pub struct PointOutcome {
    pub text: String,
    pub flux_residual: f64,
}

fn fmt_c(z: C64) -> String {
    format!("{} {} {}i", z.re, if z.im < 0.0 { "-" } else { "+" }, z.im.abs())
}

/// Evaluate one (E, potential) point and format the report.
pub fn point_report(mass: f64, pot: &StepPotential, energy: f64) -> Result<PointOutcome> {
    let kin = Kinematics::new(energy, mass, pot)?;
    let sol = solve(&kin, pot)?;
    let cc = channel_coeffs(&kin, pot)?;
    let fw = flux_weights(&cc, &kin, pot);
    let residual = flux_balance(&sol, &fw);
    let velocities = group_velocities(&kin, pot);
    let matching = matching_residual(&kin, pot, &cc, &sol);
    let (klein_edge, diffusion_edge) = zone_boundaries(mass, pot);
    let (abs_r, abs_rt, abs_t, abs_tt) = sol.rates();

    let mut text = String::new();
    let out = &mut text;
    let _ = writeln!(out, "m     = {}", mass);
    let _ = writeln!(out, "V0    = {}", pot.v0());
    let _ = writeln!(
        out,
        "W0    = {}  (|W0| = {}, phi = {})",
        fmt_c(pot.w0()),
        pot.w_mag(),
        pot.phi()
    );
    let _ = writeln!(out, "E     = {}  (E/m = {})", energy, energy / mass);
    let _ = writeln!(
        out,
        "zone  = {}  (Klein edge {}, diffusion edge {})",
        kin.zone, klein_edge, diffusion_edge
    );
    let _ = writeln!(out, "p     = {}", kin.p);
    let _ = writeln!(out, "a     = {}", kin.a);
    let _ = writeln!(out, "delta = {}", kin.delta);
    let _ = writeln!(
        out,
        "Q-    = {}  (Q-^2 = {})",
        fmt_c(kin.big_q_minus),
        kin.big_q_minus_sq
    );
    let _ = writeln!(
        out,
        "Q+    = {}  (Q+^2 = {})",
        fmt_c(kin.big_q_plus),
        kin.big_q_plus_sq
    );
    if sol.method == SolveMethod::PureQuaternionic {
        let _ = writeln!(
            out,
            "total transmission: purely quaternionic step (R = R~ = 0, T = 1/2)"
        );
    }
    let _ = writeln!(out, "R     = {}  |R|  = {}", fmt_c(sol.r), abs_r);
    let _ = writeln!(out, "R~    = {}  |R~| = {}", fmt_c(sol.r_tilde), abs_rt);
    let _ = writeln!(out, "T     = {}  |T|  = {}", fmt_c(sol.t), abs_t);
    let _ = writeln!(out, "T~    = {}  |T~| = {}", fmt_c(sol.t_tilde), abs_tt);
    let _ = writeln!(out, "rho   = {}  rho~ = {}", fw.rho, fw.rho_tilde);
    let _ = writeln!(out, "flux residual     = {:e}", residual);
    let _ = writeln!(out, "v_in  = {}", velocities.v_in);
    let _ = writeln!(out, "v+    = {}", velocities.v_plus);
    match velocities.v_minus {
        ChannelVelocity::Propagating(v) => {
            let _ = writeln!(out, "v-    = {}", v);
        }
        ChannelVelocity::Evanescent => {
            let _ = writeln!(out, "v-    = evanescent");
        }
    }
    let _ = writeln!(out, "matching residual = {:e}", matching);
    let method = match sol.method {
        SolveMethod::ClosedForm => "closed form",
        SolveMethod::LinearSolve => "linear solve",
        SolveMethod::ComplexLimit => "complex limit",
        SolveMethod::PureQuaternionic => "pure quaternionic",
    };
    let _ = writeln!(out, "method = {}", method);

    Ok(PointOutcome {
        text,
        flux_residual: residual,
    })
}
