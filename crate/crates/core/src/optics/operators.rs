//! The 2×2 symmetry operators of a Mach-Zehnder bench, with wavenumber `k`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::linalg::{c64, ComplexMatrix, I, ONE, ZERO};

/// Default wavenumber; only ratios `k·a` enter the results.
pub const DEFAULT_K: f64 = 1.0;

/// `e^{iθ}`, exact when θ is a multiple of π/2.
pub fn unit_phase(theta: f64) -> Complex64 {
    let q = theta / FRAC_PI_2;
    if (q - q.round()).abs() < 1e-12 {
        match (q.round() as i64).rem_euclid(4) {
            0 => ONE,
            1 => I,
            2 => -ONE,
            _ => -I,
        }
    } else {
        Complex64::from_polar(1.0, theta)
    }
}

/// `a₀ = π/(4k)`, the beam-splitter parameter.
pub fn splitter_parameter(k: f64) -> f64 {
    PI / (4.0 * k)
}

/// `T(a) = diag(e^{−ika}, e^{ika})`.
pub fn translation(k: f64, a: f64) -> ComplexMatrix {
    ComplexMatrix::diagonal(&[unit_phase(-k * a), unit_phase(k * a)])
}

/// `S(a) = antidiag(e^{−2ika}, e^{2ika})`.
pub fn reflection(k: f64, a: f64) -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        vec![ZERO, unit_phase(-2.0 * k * a)],
        vec![unit_phase(2.0 * k * a), ZERO],
    ])
}

/// `Q(a₀) = (I − iS(a₀))/√2`.
pub fn beam_splitter(k: f64) -> ComplexMatrix {
    let s = reflection(k, splitter_parameter(k));
    (&ComplexMatrix::identity(2) - &s.scale(I)).scale(c64(FRAC_1_SQRT_2, 0.0))
}

#[derive(Clone, Debug, PartialEq)]
pub enum OperatorLabel {
    Translation(f64),
    Reflection(f64),
    BeamSplitter { a0: f64, adjoint: bool },
    /// Routes the named arm's amplitude into an absorbing channel.
    Blocker { arm: super::Arm, channel: usize },
    Identity,
}

/// An element operator on the extended channel space.
#[derive(Clone, Debug)]
pub struct BenchOperator {
    pub label: OperatorLabel,
    pub matrix: ComplexMatrix,
}

impl BenchOperator {
    /// Embeds a 2×2 mode operator as `m ⊕ 1` on `dim` channels.
    pub fn on_modes(label: OperatorLabel, m: &ComplexMatrix, dim: usize) -> Self {
        let rest = dim - 2;
        let matrix = if rest == 0 {
            m.clone()
        } else {
            m.direct_sum(&ComplexMatrix::identity(rest))
        };
        Self { label, matrix }
    }

    /// Swap of `mode` with absorbing channel `channel`: unitary, and the
    /// channel starts empty, so this moves the mode's amplitude out.
    pub fn blocker(arm: super::Arm, mode: usize, channel: usize, dim: usize) -> Self {
        let mut m = ComplexMatrix::identity(dim);
        m[(mode, mode)] = ZERO;
        m[(channel, channel)] = ZERO;
        m[(mode, channel)] = ONE;
        m[(channel, mode)] = ONE;
        Self {
            label: OperatorLabel::Blocker { arm, channel },
            matrix: m,
        }
    }
}
