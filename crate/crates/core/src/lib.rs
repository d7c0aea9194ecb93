//! Dirac plane-wave scattering at a quaternionic potential step.
//!
//! The step vanishes for z < 0 and is the anti-hermitian quaternionic
//! constant i V0 + j V1 + k V2 for z > 0. The library computes the channel
//! momenta and energy zones, the two-component quaternionic spinors, the
//! reflection and transmission coefficients (closed form and an independent
//! linear-system solve), probability-flux bookkeeping, group velocities and
//! the spin observables of the purely quaternionic step.

pub mod conservation;
pub mod error;
pub mod kinematics;
pub mod linalg;
pub mod observables;
pub mod qalgebra;
pub mod scattering;
pub mod spinors;

pub use conservation::FluxWeights;
pub use error::{Error, Result};
pub use kinematics::{
    classify_zone, momenta, principal_sqrt, zone_boundaries, Kinematics, StepPotential, Zone,
};
pub use observables::{ChannelVelocity, GroupVelocities};
pub use qalgebra::{Quaternion, C64};
pub use scattering::{ScatteringSolution, SolveMethod};
pub use spinors::{ChannelCoeffs, QSpinor2};
