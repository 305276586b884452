//! Group-theoretic simulation toolkit: finite-group density matrices, the
//! Poincaré → Galilei-with-mass contraction, weakly relativistic kinematics,
//! symmetry-operator optics benches, the Born exponent and a relational
//! twin-slit sampler.

pub mod linalg;
pub mod born;
pub mod kinematics;
pub mod lie;
pub mod optics;
pub mod sampler;
pub mod symmetry;
