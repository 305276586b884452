//! The Poincaré algebra, its c → ∞ contraction, and the canonical
//! commutation relations that fall out of it.
//!
//! Conventions (fixed here and nowhere else):
//! * brackets carry an explicit `i`, so generators are hermitian;
//! * `eps = 1/c²` is kept symbolic;
//! * `M = hbar·eps·T0`, the rescaled time translation, is read as `m·I`
//!   wherever a scalar is needed.

mod algebra;
pub mod coeff;

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::BigRational;
use thiserror::Error;

pub use algebra::{Combination, LieAlgebra};
pub use coeff::{rat, Coeff, Gaussian, Symbol};

use crate::linalg::{c64, ComplexMatrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("bracket {bracket} has a pole at eps = 0 after rescaling")]
    Singular { bracket: String },
    #[error("expected the Poincaré basis, missing `{0}`")]
    NotPoincare(String),
    #[error("bracket {bracket} is not central")]
    NonCentral { bracket: String },
    #[error("invalid contraction parameters: {0}")]
    InvalidParams(String),
}

/// Numeric values used when a symbolic result is evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContractionParams {
    hbar: f64,
    mass: f64,
}

impl ContractionParams {
    pub fn new(hbar: f64, mass: f64) -> Result<Self, LieError> {
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(LieError::InvalidParams(format!("hbar must be positive, got {hbar}")));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(LieError::InvalidParams(format!("mass must be positive, got {mass}")));
        }
        Ok(Self { hbar, mass })
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Evaluates a coefficient at `eps = 0`.
    pub fn evaluate(&self, c: &Coeff) -> Complex64 {
        c.at_zero(Symbol::Eps).evaluate(0.0, self.hbar, self.mass)
    }
}

impl Default for ContractionParams {
    fn default() -> Self {
        Self { hbar: 1.0, mass: 1.0 }
    }
}

pub const POINCARE_BASIS: [&str; 10] = ["J1", "J2", "J3", "K1", "K2", "K3", "T0", "T1", "T2", "T3"];

fn levi_civita(m: usize, n: usize) -> Option<(usize, i64)> {
    // (k, sign) with [m,n,k] a permutation of (1,2,3)
    match (m, n) {
        (1, 2) => Some((3, 1)),
        (2, 3) => Some((1, 1)),
        (3, 1) => Some((2, 1)),
        (2, 1) => Some((3, -1)),
        (3, 2) => Some((1, -1)),
        (1, 3) => Some((2, -1)),
        _ => None,
    }
}

fn build_poincare(t0_k_sign: i64) -> LieAlgebra {
    let mut alg = LieAlgebra::new(&POINCARE_BASIS);
    let i = |s: i64| Coeff::int(0, s);
    let eps = |s: i64| Coeff::monomial(Gaussian::int(0, s), [1, 0, 0]);
    let set = |alg: &mut LieAlgebra, a: String, b: String, c: Coeff, l: String| {
        alg.set_bracket(&a, &b, &[(c, &l)]).expect("Poincaré labels");
    };
    for m in 1..=3 {
        for n in 1..=3 {
            // only (m,n) with m < n in cyclic order, so each pair is set once
            if let Some((k, 1)) = levi_civita(m, n) {
                set(&mut alg, format!("J{m}"), format!("J{n}"), i(1), format!("J{k}"));
                set(&mut alg, format!("K{m}"), format!("K{n}"), eps(-1), format!("J{k}"));
            }
            if let Some((k, s)) = levi_civita(m, n) {
                set(&mut alg, format!("J{m}"), format!("K{n}"), i(s), format!("K{k}"));
                set(&mut alg, format!("J{m}"), format!("T{n}"), i(s), format!("T{k}"));
            }
        }
        set(&mut alg, "T0".into(), format!("K{m}"), i(t0_k_sign), format!("T{m}"));
        set(&mut alg, format!("T{m}"), format!("K{m}"), eps(-1), "T0".into());
    }
    alg
}

/// The ten-generator Poincaré algebra over `eps = 1/c²`.
///
/// `[T0,K_n] = -i T_n`: with the other five families this is the only sign
/// for which the Jacobi identity holds at order `eps`.
pub fn poincare_algebra() -> LieAlgebra {
    build_poincare(-1)
}

/// The bracket list with `[T0,K_n] = +i T_n`. Not a Lie algebra: the Jacobi
/// identity fails at order `eps` on triples like `(K1, K2, T1)`.
pub fn poincare_with_positive_time_boost() -> LieAlgebra {
    build_poincare(1)
}

/// Poincaré algebra with `eps` set to zero before any rescaling, so that
/// `[T_m,K_n] = 0` (absolute simultaneity).
pub fn galilean_control() -> LieAlgebra {
    poincare_algebra().map_coefficients(|c| c.at_zero(Symbol::Eps))
}

fn require_poincare_basis(alg: &LieAlgebra) -> Result<(), LieError> {
    for l in POINCARE_BASIS {
        if alg.index_of(l).is_none() {
            return Err(LieError::NotPoincare(l.to_string()));
        }
    }
    Ok(())
}

/// Replaces `T0` by `M = hbar·eps·T0` and rewrites every structure constant
/// in the new basis, keeping `eps` symbolic.
pub fn rescale(alg: &LieAlgebra) -> Result<LieAlgebra, LieError> {
    require_poincare_basis(alg)?;
    let n = alg.dim();
    let t0 = alg.index_of("T0").expect("checked");
    let scale = |i: usize| -> Coeff {
        if i == t0 {
            Coeff::monomial(Gaussian::int(1, 0), [1, 1, 0])
        } else {
            Coeff::one()
        }
    };
    let inv_scale = |i: usize| -> Coeff {
        if i == t0 {
            Coeff::monomial(Gaussian::int(1, 0), [-1, -1, 0])
        } else {
            Coeff::one()
        }
    };
    let f = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    (0..n)
                        .map(|c| {
                            let k = alg.structure(a, b)[c].clone();
                            if k.is_zero() {
                                k
                            } else {
                                &(&(&scale(a) * &scale(b)) * &inv_scale(c)) * &k
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let basis = alg
        .basis()
        .iter()
        .map(|l| if l == "T0" { "M".to_string() } else { l.clone() })
        .collect();
    Ok(LieAlgebra::from_parts(basis, f))
}

/// The c → ∞ contraction: rescale, then take `eps → 0` bracket by bracket.
/// The parameters are only validated here; the result stays symbolic in `hbar`.
pub fn contract(alg: &LieAlgebra, _params: &ContractionParams) -> Result<LieAlgebra, LieError> {
    let r = rescale(alg)?;
    let n = r.dim();
    for a in 0..n {
        for b in a + 1..n {
            if r.structure(a, b).iter().any(|c| c.min_power(Symbol::Eps) < 0) {
                return Err(LieError::Singular {
                    bracket: format!("[{},{}]", r.basis()[a], r.basis()[b]),
                });
            }
        }
    }
    Ok(r.map_coefficients(|c| c.at_zero(Symbol::Eps)))
}

/// Scalar value of a combination that lies along `M`, with `M = m·I`.
fn scalar_along_m(alg: &LieAlgebra, comb: &Combination, what: &str) -> Result<Coeff, LieError> {
    let mi = alg.index_of("M").ok_or_else(|| LieError::NotPoincare("M".into()))?;
    if comb.iter().enumerate().any(|(i, c)| i != mi && !c.is_zero()) {
        return Err(LieError::NonCentral {
            bracket: what.to_string(),
        });
    }
    Ok(&comb[mi] * &Coeff::symbol(Symbol::Mass, 1))
}

/// `[P_m, Q_n]` as a multiple of the identity, with `P_m = hbar·T_m` and
/// `Q_n = -(hbar/m)·K_n`. Indices run over 1..=3.
pub fn ccr_check(contracted: &LieAlgebra, m: usize, n: usize) -> Result<Coeff, LieError> {
    let p = contracted.element(&format!("T{m}"), Coeff::symbol(Symbol::Hbar, 1))?;
    let q = contracted.element(
        &format!("K{n}"),
        Coeff::monomial(Gaussian::int(-1, 0), [0, 1, -1]),
    )?;
    let comb = contracted.bracket_comb(&p, &q);
    scalar_along_m(contracted, &comb, &format!("[P{m},Q{n}]"))
}

/// Central phase `phi` with `U_K U_T = U_T U_K e^{phi}`, where
/// `U_T = e^{-i a T1}` and `U_K = e^{-i v K1}`. Symbolic in `hbar` and `m`.
pub fn weyl_phase(contracted: &LieAlgebra, a: &BigRational, v: &BigRational) -> Result<Coeff, LieError> {
    let tk = contracted.bracket("T1", "K1")?;
    for (i, c) in tk.iter().enumerate() {
        if !c.is_zero() && !contracted.is_central(&contracted.basis()[i])? {
            return Err(LieError::NonCentral {
                bracket: "[T1,K1]".into(),
            });
        }
    }
    // [A,B] with A = -i a T1, B = -i v K1 is -a v [T1,K1]; phi = -[A,B].
    let av = Gaussian::real(a * v);
    let comb: Combination = tk.iter().map(|c| c.scale(&av)).collect();
    scalar_along_m(contracted, &comb, "[T1,K1]")
}

/// `exp(N)` for nilpotent `N`, as the finite series.
pub fn exp_nilpotent(n: &ComplexMatrix) -> ComplexMatrix {
    let dim = n.dim();
    let mut out = ComplexMatrix::identity(dim);
    let mut term = ComplexMatrix::identity(dim);
    for k in 1..=dim {
        term = (&term * n).scale(c64(1.0 / k as f64, 0.0));
        out = &out + &term;
    }
    out
}

/// The 3×3 Heisenberg representation `T1 → E12`, `K1 → E23`,
/// `M → i·hbar·E13`, so that `[T1,K1] = (-i/hbar) M`.
#[derive(Clone, Debug)]
pub struct NilpotentRep {
    params: ContractionParams,
    matrices: BTreeMap<String, ComplexMatrix>,
}

impl NilpotentRep {
    pub fn new(params: ContractionParams) -> Self {
        let e = |i: usize, j: usize, z: Complex64| {
            let mut m = ComplexMatrix::zeros(3);
            m[(i, j)] = z;
            m
        };
        let mut matrices = BTreeMap::new();
        matrices.insert("T1".to_string(), e(0, 1, c64(1.0, 0.0)));
        matrices.insert("K1".to_string(), e(1, 2, c64(1.0, 0.0)));
        matrices.insert("M".to_string(), e(0, 2, c64(0.0, params.hbar)));
        Self { params, matrices }
    }

    pub fn matrix(&self, label: &str) -> Option<&ComplexMatrix> {
        self.matrices.get(label)
    }

    /// Largest deviation between matrix commutators and the contracted
    /// structure constants on `{T1, K1, M}`. Components outside that set
    /// count as failures.
    pub fn bracket_residual(&self, contracted: &LieAlgebra) -> Result<f64, LieError> {
        let mut worst = 0.0f64;
        for (a, ma) in &self.matrices {
            for (b, mb) in &self.matrices {
                let comb = contracted.bracket(a, b)?;
                let mut expected = ComplexMatrix::zeros(3);
                for (i, c) in comb.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let label = &contracted.basis()[i];
                    let m = self.matrices.get(label).ok_or_else(|| LieError::NonCentral {
                        bracket: format!("[{a},{b}]"),
                    })?;
                    expected = &expected + &m.scale(self.params.evaluate(c));
                }
                worst = worst.max(ma.commutator(mb).max_abs_diff(&expected));
            }
        }
        Ok(worst)
    }

    /// `phi` from the group commutator `(U_T U_K)^{-1} U_K U_T = e^{phi M / m}`,
    /// computed with exact polynomial exponentials.
    pub fn weyl_phase(&self, a: f64, v: f64) -> Complex64 {
        let t = &self.matrices["T1"];
        let k = &self.matrices["K1"];
        let ut = |s: f64| exp_nilpotent(&t.scale(c64(0.0, -a * s)));
        let uk = |s: f64| exp_nilpotent(&k.scale(c64(0.0, -v * s)));
        // (U_T U_K)^{-1} = U_K^{-1} U_T^{-1}
        let g = &(&(&uk(-1.0) * &ut(-1.0)) * &uk(1.0)) * &ut(1.0);
        g[(0, 2)] / c64(0.0, self.params.hbar) * self.params.mass
    }
}
