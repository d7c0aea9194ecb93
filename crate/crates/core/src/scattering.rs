//! Reflection and transmission coefficients from the interface matching at
//! z = 0, by two independent routes: the closed-form expressions and a
//! pivoted solve of the assembled 4x4 complex system. The complex and
//! purely quaternionic steps get dedicated paths.

use crate::error::{Error, Result};
use crate::kinematics::{principal_sqrt, Kinematics, StepPotential};
use crate::linalg::solve4;
use crate::qalgebra::C64;
use crate::spinors::{channel_coeffs, psi_region1, psi_region2, ChannelCoeffs};

/// Which route produced a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMethod {
    ClosedForm,
    LinearSolve,
    ComplexLimit,
    PureQuaternionic,
}

/// The four complex matching coefficients.
#[derive(Clone, Copy, Debug)]
pub struct ScatteringSolution {
    pub r: C64,
    pub r_tilde: C64,
    pub t: C64,
    pub t_tilde: C64,
    pub method: SolveMethod,
}

impl ScatteringSolution {
    /// Moduli (|R|, |R~|, |T|, |T~|).
    pub fn rates(&self) -> (f64, f64, f64, f64) {
        (
            self.r.norm(),
            self.r_tilde.norm(),
            self.t.norm(),
            self.t_tilde.norm(),
        )
    }
}

const REL_TOL: f64 = 1e-12;
const COND_LIMIT: f64 = 1e12;

/// Solve the step, dispatching on the potential: W0 = 0 goes to the complex
/// limit (the quaternionic formulas would mix a decoupled channel back in),
/// V0 = 0 to the exact total-transmission solution, everything else to the
/// closed form.
pub fn solve(kin: &Kinematics, pot: &StepPotential) -> Result<ScatteringSolution> {
    if pot.w_mag() == 0.0 {
        solve_complex_limit(kin, pot.v0())
    } else if pot.v0() == 0.0 {
        solve_pure_quaternionic(kin, pot)
    } else {
        let cc = channel_coeffs(kin, pot)?;
        solve_closed_form(kin, pot, &cc)
    }
}

/// Closed-form coefficients:
/// R  = [(a - A-)(a + A+) + |W0|^2 (M+ - a N+)(M- + a N-)] / D,
/// T  = 2 a (a + A+) / D,
/// R~ = W0 (M- - A+ N-) / (a + A+) * T,
/// T~ = W0 (M- + a N-) / (a + A+) * T,
/// with D = (a + A-)(a + A+) - |W0|^2 (M+ + a N+)(M- + a N-).
pub fn solve_closed_form(
    kin: &Kinematics,
    pot: &StepPotential,
    cc: &ChannelCoeffs,
) -> Result<ScatteringSolution> {
    let a = C64::new(kin.a, 0.0);
    let w_sq = pot.w_mag() * pot.w_mag();

    let sum_minus = cc.m_minus + a * cc.n_minus;
    let sum_plus = cc.m_plus + a * cc.n_plus;
    let dif_plus = cc.m_plus - a * cc.n_plus;

    let lead = (a + cc.a_minus) * (a + cc.a_plus);
    let mix = w_sq * sum_plus * sum_minus;
    let den = lead - mix;
    let den_scale = lead.norm() + mix.norm();
    if den.norm() < REL_TOL * den_scale.max(f64::MIN_POSITIVE) {
        return Err(Error::SingularDenominator {
            context: "matching denominator",
            magnitude: den.norm(),
        });
    }

    let a_plus_sum = a + cc.a_plus;
    if a_plus_sum.norm() < REL_TOL * (kin.a + cc.a_plus.norm()) {
        return Err(Error::SingularDenominator {
            context: "a + A+",
            magnitude: a_plus_sum.norm(),
        });
    }

    let r = ((a - cc.a_minus) * a_plus_sum + w_sq * dif_plus * sum_minus) / den;
    let t = 2.0 * a * a_plus_sum / den;
    let r_tilde = pot.w0() * (cc.m_minus - cc.a_plus * cc.n_minus) / a_plus_sum * t;
    let t_tilde = pot.w0() * sum_minus / a_plus_sum * t;

    Ok(ScatteringSolution {
        r,
        r_tilde,
        t,
        t_tilde,
        method: SolveMethod::ClosedForm,
    })
}

/// Assemble the matching conditions as a 4x4 complex system in the unknowns
/// (R, R~, T, T~) — rows: complex part of each spinor component, then the
/// j part — and solve it by pivoted elimination. Serves as the independent
/// cross-check of [`solve_closed_form`].
pub fn solve_linear_system(
    kin: &Kinematics,
    pot: &StepPotential,
    cc: &ChannelCoeffs,
) -> Result<ScatteringSolution> {
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let a = C64::new(kin.a, 0.0);
    let w0 = pot.w0();
    let w0c = w0.conj();

    let matrix = [
        [one, zero, -one, w0c * cc.n_plus],
        [-a, zero, -cc.a_minus, w0c * cc.m_plus],
        [zero, -a, w0 * cc.m_minus, -cc.a_plus],
        [zero, one, w0 * cc.n_minus, -one],
    ];
    let rhs = [-one, -a, zero, zero];

    let (x, cond) = solve4(&matrix, &rhs)?;
    if cond > COND_LIMIT {
        return Err(Error::SingularMatrix { cond });
    }

    Ok(ScatteringSolution {
        r: x[0],
        r_tilde: x[1],
        t: x[2],
        t_tilde: x[3],
        method: SolveMethod::LinearSolve,
    })
}

/// Complex step (W0 = 0): the j channel decouples, R~ = T~ = 0 and
/// R = (p (E - V0 + m) - q- (E + m)) / (p (E - V0 + m) + q- (E + m)),
/// T = 2 p (E - V0 + m) / (p (E - V0 + m) + q- (E + m)),
/// with q- on the same principal branch as Q-.
pub fn solve_complex_limit(kin: &Kinematics, v0: f64) -> Result<ScatteringSolution> {
    let q_minus = principal_sqrt(kin.q_minus_sq);
    let front = kin.p * (kin.energy - v0 + kin.mass);
    let back = q_minus * (kin.energy + kin.mass);
    let den = front + back;
    let scale = front.abs() + back.norm();
    if den.norm() < REL_TOL * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::SingularDenominator {
            context: "complex-limit denominator",
            magnitude: den.norm(),
        });
    }
    let zero = C64::new(0.0, 0.0);
    Ok(ScatteringSolution {
        r: (front - back) / den,
        r_tilde: zero,
        t: 2.0 * front / den,
        t_tilde: zero,
        method: SolveMethod::ComplexLimit,
    })
}

/// Purely quaternionic step (V0 = 0): total transmission, exactly
/// R = R~ = 0, T = 1/2, T~ = (1/2) e^{i phi}. No floating-point solve.
pub fn solve_pure_quaternionic(
    kin: &Kinematics,
    pot: &StepPotential,
) -> Result<ScatteringSolution> {
    let _ = kin;
    if pot.v0() != 0.0 || pot.w_mag() == 0.0 {
        return Err(Error::Precondition(format!(
            "purely quaternionic step requires V0 = 0 and |W0| > 0 (V0={}, |W0|={})",
            pot.v0(),
            pot.w_mag()
        )));
    }
    let zero = C64::new(0.0, 0.0);
    Ok(ScatteringSolution {
        r: zero,
        r_tilde: zero,
        t: C64::new(0.5, 0.0),
        t_tilde: C64::from_polar(0.5, pot.phi()),
        method: SolveMethod::PureQuaternionic,
    })
}

/// Quaternionic norm of Psi_I(0) - Psi_II(0) for a candidate solution. The
/// matching fixes all four coefficients, so this should sit at solver
/// round-off for every returned solution.
pub fn matching_residual(
    kin: &Kinematics,
    pot: &StepPotential,
    cc: &ChannelCoeffs,
    sol: &ScatteringSolution,
) -> f64 {
    let left = psi_region1(0.0, kin, sol.r, sol.r_tilde);
    let right = psi_region2(0.0, kin, pot, cc, sol.t, sol.t_tilde);
    (left - right).norm()
}
