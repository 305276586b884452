use std::sync::Arc;

use num_complex::Complex64;

use super::{FiniteGroup, SymmetryError, EXACT_TOL};
use crate::linalg::ComplexMatrix;

/// A unitary representation `g ↦ D(g)` of a finite group.
#[derive(Clone, Debug)]
pub struct GroupRep {
    group: Arc<FiniteGroup>,
    name: String,
    dim: usize,
    matrices: Vec<ComplexMatrix>,
}

impl GroupRep {
    /// Builds a representation and checks that it is unitary, maps the
    /// identity to `I` and respects the multiplication table.
    pub fn new(
        group: Arc<FiniteGroup>,
        name: impl Into<String>,
        matrices: Vec<ComplexMatrix>,
    ) -> Result<Self, SymmetryError> {
        let rep = Self::new_unchecked(group, name, matrices)?;
        rep.validate()?;
        Ok(rep)
    }

    /// Only checks the shape (one `dim × dim` matrix per element).
    pub fn new_unchecked(
        group: Arc<FiniteGroup>,
        name: impl Into<String>,
        matrices: Vec<ComplexMatrix>,
    ) -> Result<Self, SymmetryError> {
        let name = name.into();
        if matrices.len() != group.order() {
            return Err(SymmetryError::InvalidRep(format!(
                "{name}: expected {} matrices, got {}",
                group.order(),
                matrices.len()
            )));
        }
        let dim = matrices[0].dim();
        if dim == 0 || matrices.iter().any(|m| m.dim() != dim) {
            return Err(SymmetryError::InvalidRep(format!(
                "{name}: matrices must share one positive dimension"
            )));
        }
        Ok(Self {
            group,
            name,
            dim,
            matrices,
        })
    }

    pub fn validate(&self) -> Result<(), SymmetryError> {
        let e = self.group.identity();
        if self.matrices[e].max_abs_diff(&ComplexMatrix::identity(self.dim)) > EXACT_TOL {
            return Err(SymmetryError::InvalidRep(format!(
                "{}: D(e) is not the identity",
                self.name
            )));
        }
        for g in self.group.elements() {
            let r = self.matrices[g].unitarity_residual();
            if r > EXACT_TOL {
                return Err(SymmetryError::InvalidRep(format!(
                    "{}: D({}) is not unitary (residual {r:.3e})",
                    self.name,
                    self.group.label(g)
                )));
            }
        }
        self.check_homomorphism()
    }

    /// `D(g)D(h) = D(gh)` for every pair, reporting the first failure.
    pub fn check_homomorphism(&self) -> Result<(), SymmetryError> {
        for g in self.group.elements() {
            for h in self.group.elements() {
                let prod = &self.matrices[g] * &self.matrices[h];
                let residual = prod.max_abs_diff(&self.matrices[self.group.mul(g, h)]);
                if residual > EXACT_TOL {
                    return Err(SymmetryError::NotHomomorphism {
                        rep: self.name.clone(),
                        g: self.group.label(g).to_string(),
                        h: self.group.label(h).to_string(),
                        residual,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &ComplexMatrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }

    pub fn character(&self, g: usize) -> Complex64 {
        self.matrices[g].trace()
    }
}
