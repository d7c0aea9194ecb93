//! Probability current and the flux-balance identity
//! |R|^2 + |R~|^2 + rho |T|^2 + rho~ |T~|^2 = 1.

use crate::kinematics::{Kinematics, StepPotential};
use crate::scattering::ScatteringSolution;
use crate::spinors::{ChannelCoeffs, QSpinor2};

/// The real weights multiplying |T|^2 and |T~|^2 in the flux balance.
///
/// rho traces the zone structure: positive in diffusion, zero in tunneling
/// (the minus channel is evanescent and carries no flux) and negative in
/// the Klein zone. rho~ stays positive because Q+^2 > 0 throughout.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FluxWeights {
    pub rho: f64,
    pub rho_tilde: f64,
}

/// Flux weights rho = Re[(A- + |W0|^2 M-* N-)] / a and the analogous
/// plus-channel expression.
pub fn flux_weights(cc: &ChannelCoeffs, kin: &Kinematics, pot: &StepPotential) -> FluxWeights {
    let w_sq = pot.w_mag() * pot.w_mag();
    let rho = (cc.a_minus + w_sq * cc.m_minus.conj() * cc.n_minus).re / kin.a;
    let rho_tilde = (cc.a_plus + w_sq * cc.m_plus.conj() * cc.n_plus).re / kin.a;
    FluxWeights { rho, rho_tilde }
}

/// Signed residual |R|^2 + |R~|^2 + rho |T|^2 + rho~ |T~|^2 - 1.
pub fn flux_balance(sol: &ScatteringSolution, fw: &FluxWeights) -> f64 {
    sol.r.norm_sqr() + sol.r_tilde.norm_sqr() + fw.rho * sol.t.norm_sqr()
        + fw.rho_tilde * sol.t_tilde.norm_sqr()
        - 1.0
}

/// Current density J_z = Psi^dag alpha_3 Psi of a two-component spinor,
/// reduced to 2 Re[conj(u1) u2 + conj(w1) w2].
///
/// The quaternionic sandwich is t1~ t2 + t2~ t1 = q + conj(q), so its i, j
/// and k parts cancel; the sum is formed explicitly and the cancellation is
/// asserted before the scalar part is returned.
pub fn current_density(psi: &QSpinor2) -> f64 {
    let q = psi.component(0).conj() * psi.component(1);
    let full = q + q.conj();
    debug_assert!(
        full.non_scalar_norm() <= 1e-12 * (1.0 + full.scalar().abs()),
        "current density acquired a non-real part: {full:?}"
    );
    full.scalar()
}
