//! Scalar kinematics of the step: channel momenta, energy zones, boundaries.

use std::fmt;

use crate::error::{Error, Result};
use crate::qalgebra::C64;

/// Principal square root of a real number as a complex value: real and
/// non-negative for x >= 0, and +i*sqrt(-x) for x < 0 so that exp(i*Q*z)
/// decays as z grows.
pub fn principal_sqrt(x: f64) -> C64 {
    if x >= 0.0 {
        C64::new(x.sqrt(), 0.0)
    } else {
        C64::new(0.0, (-x).sqrt())
    }
}

/// The anti-hermitian step i*V0 + j*V1 + k*V2 for z > 0.
///
/// The two quaternionic components are bundled as W0 = V2 + i*V1 with
/// magnitude |W0| and phase phi = atan2(V1, V2).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepPotential {
    v0: f64,
    v1: f64,
    v2: f64,
    w0: C64,
    w_mag: f64,
    phi: f64,
}

impl StepPotential {
    /// Build from the three real components. V0 must be non-negative: the
    /// step is taken upward with the particle incident from the left.
    pub fn new(v0: f64, v1: f64, v2: f64) -> Result<Self> {
        if !v0.is_finite() || !v1.is_finite() || !v2.is_finite() {
            return Err(Error::Domain(format!(
                "potential components must be finite (V0={v0}, V1={v1}, V2={v2})"
            )));
        }
        if v0 < 0.0 {
            return Err(Error::Domain(format!(
                "complex part of the step must be non-negative (V0={v0})"
            )));
        }
        let w_mag = v1.hypot(v2);
        let phi = if w_mag == 0.0 { 0.0 } else { v1.atan2(v2) };
        Ok(Self {
            v0,
            v1,
            v2,
            w0: C64::new(v2, v1),
            w_mag,
            phi,
        })
    }

    /// Build with a purely "k-direction" quaternionic part: V1 = 0,
    /// V2 = w_mag, so phi = 0.
    pub fn from_magnitude(v0: f64, w_mag: f64) -> Result<Self> {
        if w_mag < 0.0 {
            return Err(Error::Domain(format!(
                "quaternionic magnitude must be non-negative (|W0|={w_mag})"
            )));
        }
        Self::new(v0, 0.0, w_mag)
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn v1(&self) -> f64 {
        self.v1
    }

    pub fn v2(&self) -> f64 {
        self.v2
    }

    /// W0 = V2 + i*V1.
    pub fn w0(&self) -> C64 {
        self.w0
    }

    /// |W0| = sqrt(V1^2 + V2^2).
    pub fn w_mag(&self) -> f64 {
        self.w_mag
    }

    /// Phase of W0, measured with the two-argument arctangent of (V1, V2).
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// True when the step has no complex part (V0 = 0) but a quaternionic one.
    pub fn is_pure_quaternionic(&self) -> bool {
        self.v0 == 0.0 && self.w_mag > 0.0
    }

    /// True when the quaternionic part vanishes (V1 = V2 = 0).
    pub fn is_complex(&self) -> bool {
        self.w_mag == 0.0
    }
}

/// Energy zone of the minus channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Zone {
    /// Q-^2 > 0 above the upper edge: partial reflection, both channels run.
    Diffusion,
    /// Q-^2 < 0: the minus channel is evanescent.
    Tunneling,
    /// Q-^2 > 0 below the lower edge: reversed flux, |R| > 1.
    Klein,
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Zone::Diffusion => "Diffusion",
            Zone::Tunneling => "Tunneling",
            Zone::Klein => "Klein",
        };
        f.write_str(name)
    }
}

/// Everything scalar that depends only on (E, m, potential).
///
/// `big_q_*` are the momenta of the two transmitted channels; `q_*_sq` are
/// the squared momenta of the complex-limit step (W0 = 0) kept for the
/// limit formulas.
#[derive(Clone, Copy, Debug)]
pub struct Kinematics {
    pub energy: f64,
    pub mass: f64,
    /// Incident momentum sqrt(E^2 - m^2).
    pub p: f64,
    /// p/(E + m).
    pub a: f64,
    /// sqrt((E V0)^2 + (p |W0|)^2) - E V0, always >= 0.
    pub delta: f64,
    /// (E + V0)^2 - m^2.
    pub q_plus_sq: f64,
    /// (E - V0)^2 - m^2.
    pub q_minus_sq: f64,
    /// q+^2 + |W0|^2 + 2 delta, positive for every admissible input.
    pub big_q_plus_sq: f64,
    /// q-^2 + |W0|^2 - 2 delta; its sign selects the zone.
    pub big_q_minus_sq: f64,
    /// Plus-channel momentum, always real positive.
    pub big_q_plus: C64,
    /// Minus-channel momentum on the branch described in [`Kinematics::new`].
    pub big_q_minus: C64,
    pub zone: Zone,
}

impl Kinematics {
    /// Compute the momentum bundle and classify the zone.
    ///
    /// Branch choice for Q-: the principal square root of Q-^2 (real
    /// non-negative, or +i*sqrt(-Q-^2) in the tunneling zone so the
    /// transmitted exponential decays). For V0 = 0 the squared momenta
    /// factor exactly as (p +- |W0|)^2 and the minus channel keeps the
    /// signed value p - |W0|; the signed root is what keeps the channel
    /// coefficients and the group velocity p/E continuous across p = |W0|.
    pub fn new(energy: f64, mass: f64, pot: &StepPotential) -> Result<Self> {
        if !mass.is_finite() || mass <= 0.0 {
            return Err(Error::Domain(format!("mass must be positive (m={mass})")));
        }
        if !energy.is_finite() || energy <= mass {
            return Err(Error::Domain(format!(
                "energy must exceed the rest mass (E={energy}, m={mass})"
            )));
        }

        let p = ((energy - mass) * (energy + mass)).sqrt();
        let a = p / (energy + mass);

        let ev0 = energy * pot.v0();
        let pw = p * pot.w_mag();
        // delta = hypot(E V0, p |W0|) - E V0, written without cancellation.
        let delta = if pw == 0.0 {
            0.0
        } else {
            pw * pw / (ev0.hypot(pw) + ev0)
        };

        let q_plus_sq = (energy + pot.v0() - mass) * (energy + pot.v0() + mass);
        let q_minus_sq = (energy - pot.v0() - mass) * (energy - pot.v0() + mass);
        let w_sq = pot.w_mag() * pot.w_mag();
        let big_q_plus_sq = q_plus_sq + w_sq + 2.0 * delta;
        let big_q_minus_sq = q_minus_sq + w_sq - 2.0 * delta;

        let big_q_plus = principal_sqrt(big_q_plus_sq);
        let big_q_minus = if pot.v0() == 0.0 {
            C64::new(p - pot.w_mag(), 0.0)
        } else {
            principal_sqrt(big_q_minus_sq)
        };

        let (klein_edge, diffusion_edge) = zone_boundaries(mass, pot);
        let zone = if energy > diffusion_edge {
            Zone::Diffusion
        } else if energy < klein_edge {
            Zone::Klein
        } else {
            // Boundary ties land here: the closed tunneling interval.
            Zone::Tunneling
        };

        Ok(Self {
            energy,
            mass,
            p,
            a,
            delta,
            q_plus_sq,
            q_minus_sq,
            big_q_plus_sq,
            big_q_minus_sq,
            big_q_plus,
            big_q_minus,
            zone,
        })
    }
}

/// Zone edges (klein_edge, diffusion_edge):
/// sqrt(|W0|^2 + (V0 -+ m)^2). The tunneling zone is the closed interval
/// between them; for V0 = 0 it has zero width.
pub fn zone_boundaries(mass: f64, pot: &StepPotential) -> (f64, f64) {
    let klein_edge = pot.w_mag().hypot(pot.v0() - mass);
    let diffusion_edge = pot.w_mag().hypot(pot.v0() + mass);
    (klein_edge, diffusion_edge)
}

/// Channel momenta (Q+, Q-) for an incident energy E.
pub fn momenta(energy: f64, mass: f64, pot: &StepPotential) -> Result<(C64, C64)> {
    let kin = Kinematics::new(energy, mass, pot)?;
    Ok((kin.big_q_plus, kin.big_q_minus))
}

/// Energy-zone label for an incident energy E.
pub fn classify_zone(energy: f64, mass: f64, pot: &StepPotential) -> Result<Zone> {
    Ok(Kinematics::new(energy, mass, pot)?.zone)
}
