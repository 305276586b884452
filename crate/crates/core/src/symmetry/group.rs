use std::fmt;

use super::SymmetryError;

/// Largest group order for which associativity is checked over every triple.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 24;

/// A finite group given by its multiplication table.
///
/// Elements are indices `0..order`; `labels` only matter for display and
/// import. `table[g][h]` is the index of `gh`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and (for small groups)
    /// associativity before accepting the table.
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, SymmetryError> {
        let name = name.into();
        let n = labels.len();
        if n == 0 {
            return Err(SymmetryError::InvalidGroup("group has no elements".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(SymmetryError::InvalidGroup(format!(
                "multiplication table must be {n}x{n}"
            )));
        }
        for (g, row) in table.iter().enumerate() {
            for (h, &gh) in row.iter().enumerate() {
                if gh >= n {
                    return Err(SymmetryError::InvalidGroup(format!(
                        "table not closed: {}*{} is out of range",
                        labels[g], labels[h]
                    )));
                }
            }
        }

        let identities: Vec<usize> = (0..n)
            .filter(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .collect();
        let identity = match identities.as_slice() {
            [e] => *e,
            [] => return Err(SymmetryError::InvalidGroup("no identity element".into())),
            _ => {
                return Err(SymmetryError::InvalidGroup(
                    "identity element is not unique".into(),
                ))
            }
        };

        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity) {
                Some(h) => inverse.push(h),
                None => {
                    return Err(SymmetryError::InvalidGroup(format!(
                        "element {} has no two-sided inverse",
                        labels[g]
                    )))
                }
            }
        }

        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if table[table[a][b]][c] != table[a][table[b][c]] {
                            return Err(SymmetryError::InvalidGroup(format!(
                                "associativity fails on ({}, {}, {})",
                                labels[a], labels[b], labels[c]
                            )));
                        }
                    }
                }
            }
        }

        Ok(Self {
            name,
            labels,
            table,
            identity,
            inverse,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order())
            .finish()
    }
}
