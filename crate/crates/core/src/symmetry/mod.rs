//! Finite-group representations and density-matrix reconstruction.
//!
//! Given a unitary irrep `D` of a finite group `G` and the measured averages
//! `⟨D(g)⟩`, the state is recovered as
//!
//! ```text
//! ρ = (n/N) Σ_g D(g⁻¹) ⟨D(g)⟩
//! ```
//!
//! which follows from the orthogonality relation
//! `Σ_g (n/N) [D(g⁻¹)]_kj [D(g)]_lm = δ_jl δ_km`. The construction assumes
//! the irrep occurs once in the Hilbert space; repeated irreps are not handled.

mod corpus;
mod group;
mod import;
mod rep;

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{norm_sqr, ComplexMatrix, ZERO};

pub use corpus::{cyclic_group, quaternion_group, shipped_corpus, symmetric_group_s3, GroupCorpus};
pub use group::{FiniteGroup, EXHAUSTIVE_ASSOCIATIVITY_LIMIT};
pub use import::parse_group_file;
pub use rep::GroupRep;

/// Tolerance for identities that are exact in exact arithmetic.
pub const EXACT_TOL: f64 = 1e-12;
/// Tolerance for results of chained floating-point computations.
pub const CHAINED_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymmetryError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("{rep} is not a homomorphism: D({g})D({h}) != D({g}{h}) (residual {residual:.3e})")]
    NotHomomorphism {
        rep: String,
        g: String,
        h: String,
        residual: f64,
    },
    #[error("state vector has length {got}, representation dimension is {expected}")]
    StateLength { expected: usize, got: usize },
    #[error("state vector is not normalized: |psi|^2 = {0}")]
    Unnormalized(f64),
    #[error("missing averages for elements: {}", .0.join(", "))]
    MissingAverages(Vec<String>),
    #[error("dimension mismatch: density matrix is {rho}x{rho}, operator is {op}x{op}")]
    DimensionMismatch { rho: usize, op: usize },
    #[error("group file line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Measured (or ideal) averages `⟨D(g)⟩`, keyed by group element index.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AverageSet {
    values: BTreeMap<usize, Complex64>,
}

impl AverageSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_fn(group: &FiniteGroup, f: impl Fn(usize) -> Complex64) -> Self {
        Self {
            values: group.elements().map(|g| (g, f(g))).collect(),
        }
    }

    pub fn insert(&mut self, g: usize, value: Complex64) {
        self.values.insert(g, value);
    }

    pub fn remove(&mut self, g: usize) -> Option<Complex64> {
        self.values.remove(&g)
    }

    pub fn get(&self, g: usize) -> Option<Complex64> {
        self.values.get(&g).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.values.iter().map(|(&g, &v)| (g, v))
    }

    /// Largest `|⟨D(g⁻¹)⟩ − conj⟨D(g)⟩|` over the stored elements.
    pub fn conjugate_symmetry_residual(&self, group: &FiniteGroup) -> f64 {
        self.iter()
            .filter_map(|(g, v)| self.get(group.inv(g)).map(|w| (w - v.conj()).norm()))
            .fold(0.0, f64::max)
    }
}

/// A density matrix reconstructed from irrep averages.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn from_matrix(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    pub fn pure(psi: &[Complex64]) -> Self {
        Self {
            matrix: ComplexMatrix::outer(psi, psi),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.matrix.hermiticity_residual()
    }

    /// Eigenvalues of the hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let n = self.dim();
        let m = DMatrix::from_fn(n, n, |i, j| 0.5 * (self.matrix[(i, j)] + self.matrix[(j, i)].conj()));
        let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// Max residual of the single-irrep orthogonality relation
/// `Σ_g (n/N)[D(g⁻¹)]_kj [D(g)]_lm − δ_jl δ_km` over all index quadruples.
pub fn verify_orthogonality(rep: &GroupRep) -> Result<f64, SymmetryError> {
    rep.check_homomorphism()?;
    let group = rep.group();
    let n = rep.dim();
    let weight = n as f64 / group.order() as f64;
    let mut worst: f64 = 0.0;
    for k in 0..n {
        for j in 0..n {
            for l in 0..n {
                for m in 0..n {
                    let sum: Complex64 = group
                        .elements()
                        .map(|g| rep.matrix(group.inv(g))[(k, j)] * rep.matrix(g)[(l, m)])
                        .sum::<Complex64>()
                        * weight;
                    let expected = if j == l && k == m { 1.0 } else { 0.0 };
                    worst = worst.max((sum - expected).norm());
                }
            }
        }
    }
    Ok(worst)
}

/// Ideal averages `⟨ψ|D(g)|ψ⟩` for a normalized state.
pub fn averages_from_state(rep: &GroupRep, psi: &[Complex64]) -> Result<AverageSet, SymmetryError> {
    if psi.len() != rep.dim() {
        return Err(SymmetryError::StateLength {
            expected: rep.dim(),
            got: psi.len(),
        });
    }
    let nsq = norm_sqr(psi);
    if (nsq - 1.0).abs() > EXACT_TOL {
        return Err(SymmetryError::Unnormalized(nsq));
    }
    Ok(AverageSet::from_fn(rep.group(), |g| {
        crate::linalg::inner(psi, &rep.matrix(g).apply(psi))
    }))
}

/// `ρ = (n/N) Σ_g D(g⁻¹)⟨D(g)⟩`.
pub fn reconstruct_density(rep: &GroupRep, avgs: &AverageSet) -> Result<DensityMatrix, SymmetryError> {
    let group = rep.group();
    let missing: Vec<String> = group
        .elements()
        .filter(|&g| avgs.get(g).is_none())
        .map(|g| group.label(g).to_string())
        .collect();
    if !missing.is_empty() {
        return Err(SymmetryError::MissingAverages(missing));
    }
    let weight = rep.dim() as f64 / group.order() as f64;
    let mut rho = ComplexMatrix::zeros(rep.dim());
    for g in group.elements() {
        let avg = avgs.get(g).unwrap_or(ZERO);
        rho = &rho + &rep.matrix(group.inv(g)).scale(avg * weight);
    }
    Ok(DensityMatrix::from_matrix(rho))
}

/// `Tr{ρD}`.
pub fn expectation(rho: &DensityMatrix, op: &ComplexMatrix) -> Result<Complex64, SymmetryError> {
    if rho.dim() != op.dim() {
        return Err(SymmetryError::DimensionMismatch {
            rho: rho.dim(),
            op: op.dim(),
        });
    }
    Ok((rho.matrix() * op).trace())
}
