//! Group velocities of the three channels and the position-dependent spin
//! observable of the purely quaternionic step.

use crate::error::{Error, Result};
use crate::kinematics::{Kinematics, StepPotential};
use crate::qalgebra::C64;
use crate::spinors::QSpinor2;

/// Velocity of a transmitted channel; evanescent channels do not propagate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChannelVelocity {
    Propagating(f64),
    Evanescent,
}

impl ChannelVelocity {
    pub fn value(&self) -> Option<f64> {
        match self {
            ChannelVelocity::Propagating(v) => Some(*v),
            ChannelVelocity::Evanescent => None,
        }
    }
}

/// Group velocities in natural units (c = 1).
#[derive(Clone, Copy, Debug)]
pub struct GroupVelocities {
    /// Incident dE/dp = p/E, always in (0, 1).
    pub v_in: f64,
    /// Plus channel dE/dQ+, defined for every admissible energy.
    pub v_plus: f64,
    /// Minus channel dE/dQ-, evanescent in the tunneling zone and negative
    /// in the Klein zone.
    pub v_minus: ChannelVelocity,
}

/// v+- = (Q+-/E) [1 +- (V0^2 + |W0|^2)/sqrt(E^2 V0^2 + p^2 |W0|^2)]^{-1},
/// the derivative dE/dQ of the dispersion relation. A potential with
/// V0 = |W0| = 0 is free and both velocities reduce to p/E.
pub fn group_velocities(kin: &Kinematics, pot: &StepPotential) -> GroupVelocities {
    let v_in = kin.p / kin.energy;
    if pot.v0() == 0.0 && pot.w_mag() == 0.0 {
        return GroupVelocities {
            v_in,
            v_plus: v_in,
            v_minus: ChannelVelocity::Propagating(v_in),
        };
    }

    let root = (kin.energy * pot.v0()).hypot(kin.p * pot.w_mag());
    let ratio = (pot.v0() * pot.v0() + pot.w_mag() * pot.w_mag()) / root;
    let v_plus = kin.big_q_plus.re / (kin.energy * (1.0 + ratio));
    let v_minus = if kin.big_q_minus_sq > 0.0 {
        ChannelVelocity::Propagating(kin.big_q_minus.re / (kin.energy * (1.0 - ratio)))
    } else {
        ChannelVelocity::Evanescent
    };

    GroupVelocities {
        v_in,
        v_plus,
        v_minus,
    }
}

/// Transmitted wave of the purely quaternionic step in rotation form,
/// [(1, a) cos(|W0| z) - k (a, 1) e^{i phi} sin(|W0| z)] e^{ipz},
/// normalised to (1, a) at z = 0 (the overall transmission factor 1/2 is
/// not included; the physical content is the z-independence of the norm).
pub fn transmitted_pure_q(z: f64, kin: &Kinematics, pot: &StepPotential) -> Result<QSpinor2> {
    require_pure_quaternionic(pot)?;
    let phase = (C64::i() * kin.p * z).exp();
    let (sin, cos) = (pot.w_mag() * z).sin_cos();
    let swirl = C64::i() * C64::from_polar(sin, pot.phi()) * phase;
    Ok(QSpinor2::new(
        [cos * phase, kin.a * cos * phase],
        [kin.a * swirl, swirl],
    ))
}

/// Spin-z mean of the incident wave: (1 - a^2)/(2 (1 + a^2)) = m/(2E).
pub fn sz_mean_complex(kin: &Kinematics) -> f64 {
    kin.mass / (2.0 * kin.energy)
}

/// Spin-z mean of the transmitted wave behind a purely quaternionic step:
/// (m/2E) cos(2 |W0| z). The spin precesses with spatial period pi/|W0|,
/// the one observable that distinguishes the step from free propagation.
pub fn sz_mean_pure_q(z: f64, kin: &Kinematics, pot: &StepPotential) -> Result<f64> {
    require_pure_quaternionic(pot)?;
    Ok(kin.mass / (2.0 * kin.energy) * (2.0 * pot.w_mag() * z).cos())
}

fn require_pure_quaternionic(pot: &StepPotential) -> Result<()> {
    if pot.v0() != 0.0 || pot.w_mag() == 0.0 {
        return Err(Error::Precondition(format!(
            "purely quaternionic step requires V0 = 0 and |W0| > 0 (V0={}, |W0|={})",
            pot.v0(),
            pot.w_mag()
        )));
    }
    Ok(())
}
