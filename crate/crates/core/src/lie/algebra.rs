use std::fmt;

use super::coeff::Coeff;
use super::LieError;

/// A linear combination of basis elements, indexed like the basis.
pub type Combination = Vec<Coeff>;

/// Finite-dimensional Lie algebra given by exact structure constants
/// `[e_a, e_b] = Σ_c f[a][b][c] e_c`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    basis: Vec<String>,
    f: Vec<Vec<Combination>>,
}

impl LieAlgebra {
    /// Abelian algebra on the given basis; brackets are added with [`set_bracket`](Self::set_bracket).
    pub fn new(basis: &[&str]) -> Self {
        let n = basis.len();
        Self {
            basis: basis.iter().map(|s| s.to_string()).collect(),
            f: vec![vec![vec![Coeff::zero(); n]; n]; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    fn idx(&self, label: &str) -> Result<usize, LieError> {
        self.index_of(label)
            .ok_or_else(|| LieError::UnknownGenerator(label.to_string()))
    }

    /// Sets `[a,b] = Σ coeff·c` and `[b,a]` to its negative.
    pub fn set_bracket(&mut self, a: &str, b: &str, terms: &[(Coeff, &str)]) -> Result<(), LieError> {
        let (ia, ib) = (self.idx(a)?, self.idx(b)?);
        let mut comb = vec![Coeff::zero(); self.dim()];
        for (c, label) in terms {
            let ic = self.idx(label)?;
            comb[ic] = comb[ic].clone() + c.clone();
        }
        self.f[ib][ia] = comb.iter().map(|c| -c.clone()).collect();
        self.f[ia][ib] = comb;
        Ok(())
    }

    pub fn structure(&self, a: usize, b: usize) -> &Combination {
        &self.f[a][b]
    }

    /// `[a,b]` for two basis labels.
    pub fn bracket(&self, a: &str, b: &str) -> Result<Combination, LieError> {
        Ok(self.f[self.idx(a)?][self.idx(b)?].clone())
    }

    /// Single coefficient of `c` in `[a,b]`.
    pub fn coefficient(&self, a: &str, b: &str, c: &str) -> Result<Coeff, LieError> {
        Ok(self.f[self.idx(a)?][self.idx(b)?][self.idx(c)?].clone())
    }

    /// Bilinear extension of the bracket to arbitrary combinations.
    pub fn bracket_comb(&self, x: &Combination, y: &Combination) -> Combination {
        let n = self.dim();
        let mut out = vec![Coeff::zero(); n];
        for a in 0..n {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if y[b].is_zero() {
                    continue;
                }
                let xy = &x[a] * &y[b];
                for c in 0..n {
                    if !self.f[a][b][c].is_zero() {
                        out[c] = out[c].clone() + &xy * &self.f[a][b][c];
                    }
                }
            }
        }
        out
    }

    /// The combination `coeff · e_label`.
    pub fn element(&self, label: &str, coeff: Coeff) -> Result<Combination, LieError> {
        let mut v = vec![Coeff::zero(); self.dim()];
        v[self.idx(label)?] = coeff;
        Ok(v)
    }

    pub fn unit(&self, i: usize) -> Combination {
        let mut v = vec![Coeff::zero(); self.dim()];
        v[i] = Coeff::one();
        v
    }

    /// Pairs `(a,b)` with `[a,b] ≠ -[b,a]`.
    pub fn antisymmetry_violations(&self) -> Vec<(String, String)> {
        let n = self.dim();
        let mut bad = Vec::new();
        for a in 0..n {
            for b in a..n {
                let ok = (0..n).all(|c| (self.f[a][b][c].clone() + self.f[b][a][c].clone()).is_zero());
                if !ok {
                    bad.push((self.basis[a].clone(), self.basis[b].clone()));
                }
            }
        }
        bad
    }

    /// Triples `a<b<c` whose cyclic double-bracket sum is not identically zero.
    pub fn jacobi_violations(&self) -> Vec<(String, String, String)> {
        let n = self.dim();
        let mut bad = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let (ea, eb, ec) = (self.unit(a), self.unit(b), self.unit(c));
                    let t1 = self.bracket_comb(&ea, &self.bracket_comb(&eb, &ec));
                    let t2 = self.bracket_comb(&eb, &self.bracket_comb(&ec, &ea));
                    let t3 = self.bracket_comb(&ec, &self.bracket_comb(&ea, &eb));
                    let zero = (0..n).all(|i| (t1[i].clone() + t2[i].clone() + t3[i].clone()).is_zero());
                    if !zero {
                        bad.push((self.basis[a].clone(), self.basis[b].clone(), self.basis[c].clone()));
                    }
                }
            }
        }
        bad
    }

    /// Whether `label` brackets to zero with every basis element.
    pub fn is_central(&self, label: &str) -> Result<bool, LieError> {
        let i = self.idx(label)?;
        Ok(self.f[i].iter().all(|comb| comb.iter().all(Coeff::is_zero)))
    }

    /// Applies `g` to every structure constant.
    pub fn map_coefficients(&self, g: impl Fn(&Coeff) -> Coeff) -> Self {
        Self {
            basis: self.basis.clone(),
            f: self
                .f
                .iter()
                .map(|row| row.iter().map(|comb| comb.iter().map(&g).collect()).collect())
                .collect(),
        }
    }

    pub(crate) fn from_parts(basis: Vec<String>, f: Vec<Vec<Combination>>) -> Self {
        Self { basis, f }
    }

    /// Renders a combination as `coeff * label + ...`.
    pub fn format_combination(&self, comb: &Combination) -> String {
        let parts: Vec<String> = comb
            .iter()
            .zip(&self.basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| format!("{c} * {l}"))
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// One line per non-zero bracket `[a,b]` with `a` before `b` in basis order.
impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        for a in 0..n {
            for b in a + 1..n {
                let comb = &self.f[a][b];
                if comb.iter().all(Coeff::is_zero) {
                    continue;
                }
                writeln!(
                    f,
                    "[{},{}] = {}",
                    self.basis[a],
                    self.basis[b],
                    self.format_combination(comb)
                )?;
            }
        }
        Ok(())
    }
}
