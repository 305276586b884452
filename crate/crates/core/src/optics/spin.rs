use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use super::OpticsError;
use crate::linalg::{c64, fidelity, inner, norm_sqr, ComplexMatrix, ONE, ZERO};

const NORM_TOL: f64 = 1e-12;

/// Spin state of one or more atoms in the product Z basis
/// (`|Z+⟩ = (1,0)`, atom 1 most significant).
#[derive(Clone, Debug, PartialEq)]
pub struct SpinState {
    amplitudes: Vec<Complex64>,
}

impl SpinState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self, OpticsError> {
        let n = amplitudes.len();
        if n < 2 || !n.is_power_of_two() {
            return Err(OpticsError::SpinLength(n));
        }
        let norm = norm_sqr(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(OpticsError::Unnormalized(norm));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales to unit norm; `None` for (numerically) zero vectors.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Option<Self> {
        let norm = norm_sqr(&amplitudes);
        if norm < 1e-24 {
            return None;
        }
        let s = c64(1.0 / norm.sqrt(), 0.0);
        Some(Self {
            amplitudes: amplitudes.into_iter().map(|z| z * s).collect(),
        })
    }

    pub fn z_plus() -> Self {
        Self { amplitudes: vec![ONE, ZERO] }
    }

    pub fn z_minus() -> Self {
        Self { amplitudes: vec![ZERO, ONE] }
    }

    pub fn x_plus() -> Self {
        let s = c64(FRAC_1_SQRT_2, 0.0);
        Self { amplitudes: vec![s, s] }
    }

    /// `(|Z+Z+⟩ + |Z−Z−⟩)/√2`.
    pub fn epr() -> Self {
        let s = c64(FRAC_1_SQRT_2, 0.0);
        Self {
            amplitudes: vec![s, ZERO, ZERO, s],
        }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn n_atoms(&self) -> usize {
        self.amplitudes.len().trailing_zeros() as usize
    }

    pub fn fidelity(&self, other: &SpinState) -> f64 {
        fidelity(&self.amplitudes, &other.amplitudes)
    }

    /// Probability of X+ for a single atom.
    pub fn x_plus_probability(&self) -> f64 {
        inner(&SpinState::x_plus().amplitudes, &self.amplitudes).norm_sqr()
    }
}

/// Rotation by θ in the measurement plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinRotation {
    pub theta: f64,
}

impl SpinRotation {
    pub fn new(theta: f64) -> Self {
        Self { theta }
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let (s, c) = (self.theta / 2.0).sin_cos();
        ComplexMatrix::from_real_rows(&[&[c, -s], &[s, c]])
    }

    /// `R(θ)|Z+⟩` for `plus`, `R(θ)|Z−⟩` otherwise.
    pub fn eigenvector(&self, plus: bool) -> Vec<Complex64> {
        let m = self.matrix();
        (0..2).map(|r| m[(r, if plus { 0 } else { 1 })]).collect()
    }
}

/// The three analyser orientations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Setting {
    Z,
    Gamma,
    Delta,
}

impl Setting {
    pub const ALL: [Setting; 3] = [Setting::Z, Setting::Gamma, Setting::Delta];

    /// 0°, 120°, 240°.
    pub fn angle(self) -> f64 {
        match self {
            Setting::Z => 0.0,
            Setting::Gamma => 2.0 * PI / 3.0,
            Setting::Delta => 4.0 * PI / 3.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Setting::Z => "Z",
            Setting::Gamma => "Gamma",
            Setting::Delta => "Delta",
        }
    }
}

/// `P(s1, s2)` for outcomes along analysers at `theta_a` (atom 1) and
/// `theta_b` (atom 2); index `[0]` is the + outcome.
pub fn outcome_table(state: &SpinState, theta_a: f64, theta_b: f64) -> Result<[[f64; 2]; 2], OpticsError> {
    if state.n_atoms() != 2 {
        return Err(OpticsError::SpinLength(state.amplitudes.len()));
    }
    let (ra, rb) = (SpinRotation::new(theta_a), SpinRotation::new(theta_b));
    let mut out = [[0.0; 2]; 2];
    for (i, pa) in [true, false].into_iter().enumerate() {
        for (j, pb) in [true, false].into_iter().enumerate() {
            let a = ra.eigenvector(pa);
            let b = rb.eigenvector(pb);
            let prod: Vec<Complex64> = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
            out[i][j] = inner(&prod, &state.amplitudes).norm_sqr();
        }
    }
    Ok(out)
}

/// Probability that both analysers give the same outcome.
pub fn bell_correlations(state: &SpinState, theta_a: f64, theta_b: f64) -> Result<f64, OpticsError> {
    let t = outcome_table(state, theta_a, theta_b)?;
    Ok(t[0][0] + t[1][1])
}

/// Agreement averaged over independent, uniformly random settings.
pub fn random_setting_agreement(state: &SpinState) -> Result<f64, OpticsError> {
    let mut sum = 0.0;
    for a in Setting::ALL {
        for b in Setting::ALL {
            sum += bell_correlations(state, a.angle(), b.angle())?;
        }
    }
    Ok(sum / 9.0)
}

/// Lowest agreement rate of any local instruction set under random settings,
/// as `(numerator, 9)`, by enumerating all 8 sets.
pub fn mermin_local_bound() -> (u32, u32) {
    let mut best = u32::MAX;
    for set in 0u8..8 {
        let outcome = |s: usize| (set >> s) & 1;
        let agree = (0..3)
            .flat_map(|a| (0..3).map(move |b| (a, b)))
            .filter(|&(a, b)| outcome(a) == outcome(b))
            .count() as u32;
        best = best.min(agree);
    }
    (best, 9)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_is_special_orthogonal() {
        let r = SpinRotation::new(1.1).matrix();
        assert!(r.unitarity_residual() < 1e-15);
        let det = r[(0, 0)] * r[(1, 1)] - r[(0, 1)] * r[(1, 0)];
        assert!((det - ONE).norm() < 1e-15);
    }

    #[test]
    fn epr_agreement() {
        let epr = SpinState::epr();
        for s in Setting::ALL {
            assert!((bell_correlations(&epr, s.angle(), s.angle()).unwrap() - 1.0).abs() < 1e-12);
        }
        let cross = bell_correlations(&epr, 0.0, Setting::Gamma.angle()).unwrap();
        assert!((cross - 0.25).abs() < 1e-12);
        assert!((random_setting_agreement(&epr).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn local_bound_is_five_ninths() {
        assert_eq!(mermin_local_bound(), (5, 9));
    }

    #[test]
    fn unnormalized_rejected() {
        assert!(matches!(SpinState::new(vec![ONE, ONE]), Err(OpticsError::Unnormalized(_))));
        assert!(SpinState::new(vec![ONE; 3]).is_err());
    }
}
