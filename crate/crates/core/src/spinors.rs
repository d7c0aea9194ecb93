//! Two-component quaternionic spinors of the step problem.
//!
//! The incident spin is fixed to chi = (1, 0)^t and the step preserves it,
//! so the spin-down entries of every four-component spinor vanish. Keeping
//! components 1 and 3 of the Dirac spinor reduces the problem to two
//! components; on this pair alpha_3 restricts to sigma_1 and beta to
//! sigma_3, which is the form used throughout this module.

use crate::error::{Error, Result};
use crate::kinematics::{principal_sqrt, Kinematics, StepPotential};
use crate::qalgebra::{Quaternion, C64};

/// Two-component quaternionic spinor stored as the symplectic pair
/// (u, w) meaning u + j*w componentwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QSpinor2 {
    pub u: [C64; 2],
    pub w: [C64; 2],
}

impl QSpinor2 {
    pub fn new(u: [C64; 2], w: [C64; 2]) -> Self {
        Self { u, w }
    }

    pub fn zero() -> Self {
        let z = C64::new(0.0, 0.0);
        Self::new([z, z], [z, z])
    }

    /// Component as a quaternion u_i + j*w_i.
    pub fn component(&self, idx: usize) -> Quaternion {
        Quaternion::new(self.u[idx], self.w[idx])
    }

    /// Quaternionic norm squared: |u1|^2 + |u2|^2 + |w1|^2 + |w2|^2.
    pub fn norm_sqr(&self) -> f64 {
        self.u[0].norm_sqr() + self.u[1].norm_sqr() + self.w[0].norm_sqr() + self.w[1].norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }
}

impl std::ops::Sub for QSpinor2 {
    type Output = QSpinor2;
    fn sub(self, rhs: Self) -> Self {
        Self::new(
            [self.u[0] - rhs.u[0], self.u[1] - rhs.u[1]],
            [self.w[0] - rhs.w[0], self.w[1] - rhs.w[1]],
        )
    }
}

/// Eigenvector data of the two transmitted channels.
///
/// The minus channel is spanned by (1, A-) - j W0 (M-, N-), the plus
/// channel by -W0* (N+, M+) + j (A+, 1).
#[derive(Clone, Copy, Debug)]
pub struct ChannelCoeffs {
    pub a_plus: C64,
    pub a_minus: C64,
    pub m_plus: C64,
    pub m_minus: C64,
    pub n_plus: C64,
    pub n_minus: C64,
}

const REL_TOL: f64 = 1e-12;

/// Channel coefficients A+-, M+-, N+- for the current kinematics.
///
/// For a complex step (W0 = 0) the M and N entries only ever appear
/// multiplied by W0, so they are set to zero and A+- reduce to
/// q+-/(E +- V0 + m); this keeps every downstream formula valid in the
/// complex limit, including the free step.
pub fn channel_coeffs(kin: &Kinematics, pot: &StepPotential) -> Result<ChannelCoeffs> {
    let e = kin.energy;
    let m = kin.mass;
    let v0 = pot.v0();
    let zero = C64::new(0.0, 0.0);

    if pot.w_mag() == 0.0 {
        let den_minus = e - v0 + m;
        let den_plus = e + v0 + m;
        let scale = e + v0 + m;
        if den_minus.abs() < REL_TOL * scale {
            return Err(Error::SingularDenominator {
                context: "complex-limit A- denominator",
                magnitude: den_minus.abs(),
            });
        }
        return Ok(ChannelCoeffs {
            a_plus: principal_sqrt(kin.q_plus_sq) / den_plus,
            a_minus: principal_sqrt(kin.q_minus_sq) / den_minus,
            m_plus: zero,
            m_minus: zero,
            n_plus: zero,
            n_minus: zero,
        });
    }

    let dd = kin.delta / (e - m);
    let den_a_minus = e - v0 + m - dd;
    let den_a_plus = e + v0 + m + dd;
    let scale_a = e + v0 + m + dd;
    if den_a_minus.abs() < REL_TOL * scale_a {
        return Err(Error::SingularDenominator {
            context: "A- denominator",
            magnitude: den_a_minus.abs(),
        });
    }
    if den_a_plus.abs() < REL_TOL * scale_a {
        return Err(Error::SingularDenominator {
            context: "A+ denominator",
            magnitude: den_a_plus.abs(),
        });
    }
    let a_minus = kin.big_q_minus / den_a_minus;
    let a_plus = kin.big_q_plus / den_a_plus;

    let dq_minus = kin.q_plus_sq - kin.big_q_minus_sq;
    let dq_plus = kin.q_minus_sq - kin.big_q_plus_sq;
    let scale_minus = kin.q_plus_sq.abs() + kin.big_q_minus_sq.abs();
    let scale_plus = kin.q_minus_sq.abs() + kin.big_q_plus_sq.abs();
    if dq_minus.abs() < REL_TOL * scale_minus {
        return Err(Error::SingularDenominator {
            context: "minus-channel q+^2 - Q-^2",
            magnitude: dq_minus.abs(),
        });
    }
    if dq_plus.abs() < REL_TOL * scale_plus {
        return Err(Error::SingularDenominator {
            context: "plus-channel q-^2 - Q+^2",
            magnitude: dq_plus.abs(),
        });
    }

    let m_minus = (kin.big_q_minus * a_minus + (e - m + v0)) / dq_minus;
    let n_minus = ((e + m + v0) * a_minus + kin.big_q_minus) / dq_minus;
    let m_plus = (kin.big_q_plus * a_plus + (e - m - v0)) / dq_plus;
    let n_plus = ((e + m - v0) * a_plus + kin.big_q_plus) / dq_plus;

    Ok(ChannelCoeffs {
        a_plus,
        a_minus,
        m_plus,
        m_minus,
        n_plus,
        n_minus,
    })
}

/// Phase factor exp(i q z); returns exact zero once the evanescent decay
/// passes the double-precision underflow scale.
fn channel_phase(q: C64, z: f64) -> C64 {
    let arg = C64::i() * q * z;
    if arg.re < -700.0 {
        C64::new(0.0, 0.0)
    } else {
        arg.exp()
    }
}

/// Wave function in the potential-free region z <= 0: incident wave plus
/// the two reflected channels,
/// (1, a) e^{ipz} + (1, -a) R e^{-ipz} + j (-a, 1) R~ e^{-ipz}.
pub fn psi_region1(z: f64, kin: &Kinematics, r: C64, r_tilde: C64) -> QSpinor2 {
    debug_assert!(z <= 0.0);
    let inc = channel_phase(C64::new(kin.p, 0.0), z);
    let refl = channel_phase(C64::new(-kin.p, 0.0), z);
    QSpinor2::new(
        [inc + r * refl, kin.a * (inc - r * refl)],
        [-kin.a * r_tilde * refl, r_tilde * refl],
    )
}

/// Wave function in the potential region z >= 0: the two transmitted
/// channels with momenta Q- and Q+,
/// [(1, A-) - j W0 (M-, N-)] T e^{iQ-z} + [-W0* (N+, M+) + j (A+, 1)] T~ e^{iQ+z}.
pub fn psi_region2(
    z: f64,
    kin: &Kinematics,
    pot: &StepPotential,
    cc: &ChannelCoeffs,
    t: C64,
    t_tilde: C64,
) -> QSpinor2 {
    debug_assert!(z >= 0.0);
    let ph_minus = channel_phase(kin.big_q_minus, z);
    let ph_plus = channel_phase(kin.big_q_plus, z);
    let w0 = pot.w0();
    let w0c = w0.conj();
    QSpinor2::new(
        [
            t * ph_minus - w0c * cc.n_plus * t_tilde * ph_plus,
            cc.a_minus * t * ph_minus - w0c * cc.m_plus * t_tilde * ph_plus,
        ],
        [
            -w0 * cc.m_minus * t * ph_minus + cc.a_plus * t_tilde * ph_plus,
            -w0 * cc.n_minus * t * ph_minus + t_tilde * ph_plus,
        ],
    )
}

/// Relative residual of the coupled two-component equations
///   (E - Q sigma_1 - m sigma_3 - V0) u = -W0* w
///   (E - Q sigma_1 + m sigma_3 + V0) w = -W0  u
/// for a candidate channel (Q, u, w). This is the strongest single check on
/// the spinor algebra; the reduction to sigma_1/sigma_3 is validated against
/// the four-component Dirac form in the tests.
pub fn coupled_residual(
    kin: &Kinematics,
    pot: &StepPotential,
    q: C64,
    u: [C64; 2],
    w: [C64; 2],
) -> f64 {
    let e = kin.energy;
    let m = kin.mass;
    let v0 = pot.v0();
    let w0 = pot.w0();
    let w0c = w0.conj();

    let r1 = [
        (e - v0 - m) * u[0] - q * u[1] + w0c * w[0],
        (e - v0 + m) * u[1] - q * u[0] + w0c * w[1],
    ];
    let r2 = [
        (e + v0 + m) * w[0] - q * w[1] + w0 * u[0],
        (e + v0 - m) * w[1] - q * w[0] + w0 * u[1],
    ];

    let residual = (r1[0].norm_sqr() + r1[1].norm_sqr() + r2[0].norm_sqr() + r2[1].norm_sqr())
        .sqrt();
    let spinor_norm =
        (u[0].norm_sqr() + u[1].norm_sqr() + w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
    let matrix_scale = e + m + v0 + q.norm() + pot.w_mag();
    residual / (matrix_scale * spinor_norm).max(f64::MIN_POSITIVE)
}

/// The two transmitted channels as (momentum, u, w) triples, convenient for
/// residual checks.
pub fn transmitted_channels(
    kin: &Kinematics,
    pot: &StepPotential,
    cc: &ChannelCoeffs,
) -> [(C64, [C64; 2], [C64; 2]); 2] {
    let one = C64::new(1.0, 0.0);
    let w0 = pot.w0();
    let w0c = w0.conj();
    let minus = (
        kin.big_q_minus,
        [one, cc.a_minus],
        [-w0 * cc.m_minus, -w0 * cc.n_minus],
    );
    let plus = (
        kin.big_q_plus,
        [-w0c * cc.n_plus, -w0c * cc.m_plus],
        [cc.a_plus, one],
    );
    [minus, plus]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::Zone;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pot(v0: f64, w: f64) -> StepPotential {
        StepPotential::from_magnitude(v0, w).unwrap()
    }

    fn kin(energy: f64, mass: f64, p: &StepPotential) -> Kinematics {
        Kinematics::new(energy, mass, p).unwrap()
    }

    #[test]
    fn pure_quaternionic_channel_coefficients() {
        // V0 = 0, E = 3, m = 1, |W0| = 2: A+- = a = sqrt(8)/4,
        // M+- = -+a/2, N+- = -+1/2.
        let potential = pot(0.0, 2.0);
        let k = kin(3.0, 1.0, &potential);
        let cc = channel_coeffs(&k, &potential).unwrap();
        let a = 8.0f64.sqrt() / 4.0;
        assert_relative_eq!(k.a, a, max_relative = 1e-14);
        for (got, want) in [
            (cc.a_plus, a),
            (cc.a_minus, a),
            (cc.m_plus, -a / 2.0),
            (cc.m_minus, a / 2.0),
            (cc.n_plus, -0.5),
            (cc.n_minus, 0.5),
        ] {
            assert!(
                (got - C64::new(want, 0.0)).norm() < 1e-12,
                "{got} vs {want}"
            );
        }
    }

    #[test]
    fn pure_quaternionic_coefficients_below_the_edge() {
        // p < |W0| relies on the signed minus-channel momentum.
        let potential = pot(0.0, 2.0);
        let k = kin(1.2, 1.0, &potential);
        assert!(k.p < 2.0);
        let cc = channel_coeffs(&k, &potential).unwrap();
        let a = k.a;
        assert!((cc.a_minus - C64::new(a, 0.0)).norm() < 1e-12);
        assert!((cc.m_minus - C64::new(a / 2.0, 0.0)).norm() < 1e-12);
        assert!((cc.n_minus - C64::new(0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn reference_point_coefficients() {
        // E=10, m=1, V0=3, |W0|=2: A- = sqrt(40)/(8 - 2/3), M- = 3/22,
        // N- = sqrt(40)/44, M+ = -3/22, N+ = -sqrt(184)/88.
        let potential = pot(3.0, 2.0);
        let k = kin(10.0, 1.0, &potential);
        let cc = channel_coeffs(&k, &potential).unwrap();
        let q_minus = 40.0f64.sqrt();
        let q_plus = 184.0f64.sqrt();
        assert!((cc.a_minus - C64::new(q_minus / (8.0 - 2.0 / 3.0), 0.0)).norm() < 1e-12);
        assert!((cc.a_plus - C64::new(q_plus / (14.0 + 2.0 / 3.0), 0.0)).norm() < 1e-12);
        assert!((cc.m_minus - C64::new(3.0 / 22.0, 0.0)).norm() < 1e-12);
        assert!((cc.n_minus - C64::new(q_minus / 44.0, 0.0)).norm() < 1e-12);
        assert!((cc.m_plus - C64::new(-3.0 / 22.0, 0.0)).norm() < 1e-12);
        assert!((cc.n_plus - C64::new(-q_plus / 88.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn complex_limit_coefficients() {
        let potential = pot(3.0, 0.0);
        let k = kin(10.0, 1.0, &potential);
        let cc = channel_coeffs(&k, &potential).unwrap();
        assert!((cc.a_minus - C64::new(48.0f64.sqrt() / 8.0, 0.0)).norm() < 1e-14);
        assert!((cc.a_plus - C64::new(168.0f64.sqrt() / 14.0, 0.0)).norm() < 1e-14);
        assert_eq!(cc.m_minus, C64::new(0.0, 0.0));
        assert_eq!(cc.n_plus, C64::new(0.0, 0.0));

        // Small |W0|: the quaternionic A- tends to the complex one.
        let potential_eps = pot(3.0, 1e-6);
        let cc_eps = channel_coeffs(&kin(10.0, 1.0, &potential_eps), &potential_eps).unwrap();
        assert!((cc_eps.a_minus - cc.a_minus).norm() < 1e-8);
        let w_sq = 1e-12;
        assert!((w_sq * cc_eps.m_minus * cc_eps.n_minus).norm() < 1e-12);
    }

    #[test]
    fn region1_values_at_the_interface() {
        let potential = pot(3.0, 2.0);
        let k = kin(10.0, 1.0, &potential);
        let zero = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);

        let incident_only = psi_region1(0.0, &k, zero, zero);
        assert_eq!(incident_only.u, [one, C64::new(k.a, 0.0)]);
        assert_eq!(incident_only.w, [zero, zero]);

        let r = C64::new(0.3, -0.2);
        let rt = C64::new(-0.1, 0.4);
        let psi = psi_region1(0.0, &k, r, rt);
        assert!((psi.u[0] - (one + r)).norm() < 1e-15);
        assert!((psi.u[1] - k.a * (one - r)).norm() < 1e-15);
        assert!((psi.w[0] - (-k.a * rt)).norm() < 1e-15);
        assert!((psi.w[1] - rt).norm() < 1e-15);
    }

    #[test]
    fn region1_norm_with_unit_j_reflection() {
        // R = 0, R~ = 1 at z = 0: norm^2 = (1 + a^2)(1 + |R~|^2).
        let potential = pot(3.0, 2.0);
        let k = kin(10.0, 1.0, &potential);
        let psi = psi_region1(0.0, &k, C64::new(0.0, 0.0), C64::new(1.0, 0.0));
        assert_relative_eq!(
            psi.norm_sqr(),
            (1.0 + k.a * k.a) * 2.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn region2_values_at_the_interface() {
        let potential = pot(3.0, 2.0);
        let k = kin(10.0, 1.0, &potential);
        let cc = channel_coeffs(&k, &potential).unwrap();
        let zero = C64::new(0.0, 0.0);

        assert_eq!(psi_region2(0.0, &k, &potential, &cc, zero, zero), QSpinor2::zero());

        let t = C64::new(0.8, 0.1);
        let tt = C64::new(0.05, -0.3);
        let psi = psi_region2(0.0, &k, &potential, &cc, t, tt);
        let w0 = potential.w0();
        assert!((psi.u[0] - (t - w0.conj() * cc.n_plus * tt)).norm() < 1e-15);
        assert!((psi.u[1] - (cc.a_minus * t - w0.conj() * cc.m_plus * tt)).norm() < 1e-15);
        assert!((psi.w[0] - (-w0 * cc.m_minus * t + cc.a_plus * tt)).norm() < 1e-15);
        assert!((psi.w[1] - (-w0 * cc.n_minus * t + tt)).norm() < 1e-15);
    }

    #[test]
    fn evanescent_channel_decays() {
        let potential = pot(3.0, 2.0);
        let k = kin(3.5, 1.0, &potential);
        assert_eq!(k.zone, Zone::Tunneling);
        let cc = channel_coeffs(&k, &potential).unwrap();
        let t = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);

        let im_q = k.big_q_minus.im;
        assert!(im_q > 0.0);
        let z = 10.0 / im_q;
        let at_zero = psi_region2(0.0, &k, &potential, &cc, t, zero);
        let far = psi_region2(z, &k, &potential, &cc, t, zero);
        let damp = (-10.0f64).exp();
        for idx in 0..2 {
            assert!(far.u[idx].norm() <= damp * at_zero.u[idx].norm() * (1.0 + 1e-12));
            assert!(far.w[idx].norm() <= damp * at_zero.w[idx].norm() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn deep_evanescent_terms_underflow_to_exact_zero() {
        let potential = pot(3.0, 2.0);
        let k = kin(3.5, 1.0, &potential);
        let cc = channel_coeffs(&k, &potential).unwrap();
        let z = 701.0 / k.big_q_minus.im;
        let psi = psi_region2(z, &k, &potential, &cc, C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        assert_eq!(psi, QSpinor2::zero());
    }

    #[test]
    fn transmitted_channels_satisfy_the_coupled_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..400 {
            let v0 = if rng.gen_bool(0.2) {
                0.0
            } else {
                rng.gen_range(0.3..5.0)
            };
            let w = rng.gen_range(0.05..4.0);
            let energy = rng.gen_range(1.01..12.0);
            let potential = pot(v0, w);
            let k = kin(energy, 1.0, &potential);
            let cc = match channel_coeffs(&k, &potential) {
                Ok(cc) => cc,
                Err(_) => continue,
            };
            for (q, u, w_part) in transmitted_channels(&k, &potential, &cc) {
                let res = coupled_residual(&k, &potential, q, u, w_part);
                assert!(
                    res < 1e-10,
                    "residual {res:.3e} at E={energy}, V0={v0}, |W0|={w}"
                );
            }
        }
    }

    #[test]
    fn free_channels_satisfy_the_coupled_equations() {
        // Incident u[p], reflected u[-p] and reflected j-channel w~[-p] all
        // solve the free (V = 0) system.
        let free = StepPotential::new(0.0, 0.0, 0.0).unwrap();
        let k = kin(10.0, 1.0, &free);
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let a = C64::new(k.a, 0.0);
        let p = C64::new(k.p, 0.0);

        let incident = coupled_residual(&k, &free, p, [one, a], [zero, zero]);
        let reflected = coupled_residual(&k, &free, -p, [one, -a], [zero, zero]);
        let reflected_j = coupled_residual(&k, &free, -p, [zero, zero], [-a, one]);
        assert!(incident < 1e-14);
        assert!(reflected < 1e-14);
        assert!(reflected_j < 1e-14);
    }

    /// The reduced sigma_1/sigma_3 system must agree with the full Dirac
    /// representation acting on spinors whose spin-down entries vanish.
    #[test]
    fn reduction_matches_four_component_form() {
        let potential = pot(3.0, 2.0);
        let k = kin(10.0, 1.0, &potential);
        let cc = channel_coeffs(&k, &potential).unwrap();
        let (q, u, w) = transmitted_channels(&k, &potential, &cc)[0];

        // Four-component embedding: (u1, 0, u2, 0) and (w1, 0, w2, 0).
        let zero = C64::new(0.0, 0.0);
        let u4 = [u[0], zero, u[1], zero];
        let w4 = [w[0], zero, w[1], zero];
        let e = k.energy;
        let m = k.mass;
        let v0 = potential.v0();
        // alpha_3 swaps the upper and lower blocks through sigma_3; beta is
        // diag(1, 1, -1, -1).
        let apply = |sign_m: f64, sign_v: f64, s: &[C64; 4]| -> [C64; 4] {
            [
                (e + sign_m * m + sign_v * v0) * s[0] - q * s[2],
                (e + sign_m * m + sign_v * v0) * s[1] + q * s[3],
                (e - sign_m * m + sign_v * v0) * s[2] - q * s[0],
                (e - sign_m * m + sign_v * v0) * s[3] + q * s[1],
            ]
        };
        let lhs1 = apply(-1.0, -1.0, &u4);
        let lhs2 = apply(1.0, 1.0, &w4);
        let w0 = potential.w0();
        for idx in [0usize, 2] {
            assert!((lhs1[idx] + w0.conj() * w4[idx]).norm() < 1e-10);
            assert!((lhs2[idx] + w0 * u4[idx]).norm() < 1e-10);
        }
        // Spin-down rows stay identically zero.
        for idx in [1usize, 3] {
            assert_eq!(lhs1[idx], zero);
            assert_eq!(lhs2[idx], zero);
        }
    }

    #[test]
    fn singular_denominators_are_reported() {
        // V0 = 0 with |W0| = 2p makes q+^2 - Q-^2 vanish.
        let energy = 1.25f64;
        let p = (energy * energy - 1.0).sqrt();
        let potential = pot(0.0, 2.0 * p);
        let k = kin(energy, 1.0, &potential);
        assert!(matches!(
            channel_coeffs(&k, &potential),
            Err(Error::SingularDenominator { .. })
        ));
    }
}
