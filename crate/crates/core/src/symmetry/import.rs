//! Plain-text import of user-supplied groups and irreps.
//!
//! ```text
//! # comments start with '#'
//! group Z2
//! elements e a
//! table
//! e a
//! a e
//! irrep sign 1
//! matrix e
//! 1,0
//! matrix a
//! -1,0
//! ```
//!
//! Table row `g` lists `g*h` for every `h` in element order. Each matrix row
//! holds `dim` entries written as `re,im`.

use std::sync::Arc;

use num_complex::Complex64;

use super::{FiniteGroup, GroupCorpus, GroupRep, SymmetryError};
use crate::linalg::ComplexMatrix;

fn perr(line: usize, message: impl Into<String>) -> SymmetryError {
    SymmetryError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_entry(tok: &str, line: usize) -> Result<Complex64, SymmetryError> {
    let (re, im) = tok
        .split_once(',')
        .ok_or_else(|| perr(line, format!("expected re,im pair, found `{tok}`")))?;
    let re: f64 = re
        .trim()
        .parse()
        .map_err(|_| perr(line, format!("bad real part `{re}`")))?;
    let im: f64 = im
        .trim()
        .parse()
        .map_err(|_| perr(line, format!("bad imaginary part `{im}`")))?;
    Ok(Complex64::new(re, im))
}

struct PendingIrrep {
    name: String,
    dim: usize,
    line: usize,
    matrices: Vec<Option<ComplexMatrix>>,
}

/// Parses the text format above and validates the group and every irrep.
pub fn parse_group_file(text: &str) -> Result<GroupCorpus, SymmetryError> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, toks)| !toks.is_empty())
        .collect();

    let mut it = lines.into_iter().peekable();
    let mut name = String::from("imported");
    let mut labels: Option<Vec<String>> = None;
    let mut table: Vec<Vec<usize>> = Vec::new();
    let mut group: Option<Arc<FiniteGroup>> = None;
    let mut irreps: Vec<GroupRep> = Vec::new();
    let mut pending: Option<PendingIrrep> = None;

    let finish = |p: PendingIrrep, group: &Arc<FiniteGroup>| -> Result<GroupRep, SymmetryError> {
        let mut mats = Vec::with_capacity(p.matrices.len());
        for (g, m) in p.matrices.into_iter().enumerate() {
            mats.push(m.ok_or_else(|| {
                perr(p.line, format!("irrep {} has no matrix for {}", p.name, group.label(g)))
            })?);
        }
        GroupRep::new(group.clone(), p.name, mats)
    };

    while let Some((ln, toks)) = it.next() {
        match toks[0] {
            "group" if toks.len() == 2 => name = toks[1].to_string(),
            "elements" => {
                if toks.len() < 2 {
                    return Err(perr(ln, "element list is empty"));
                }
                labels = Some(toks[1..].iter().map(|s| s.to_string()).collect());
            }
            "table" => {
                let labels = labels.as_ref().ok_or_else(|| perr(ln, "`table` before `elements`"))?;
                for _ in 0..labels.len() {
                    let (rl, row) = it.next().ok_or_else(|| perr(ln, "table is missing rows"))?;
                    if row.len() != labels.len() {
                        return Err(perr(rl, format!("table row needs {} entries", labels.len())));
                    }
                    let row = row
                        .iter()
                        .map(|t| {
                            labels
                                .iter()
                                .position(|l| l == t)
                                .ok_or_else(|| perr(rl, format!("unknown element `{t}`")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    table.push(row);
                }
                group = Some(Arc::new(FiniteGroup::from_table(
                    name.clone(),
                    labels.clone(),
                    std::mem::take(&mut table),
                )?));
            }
            "irrep" if toks.len() == 3 => {
                let g = group.as_ref().ok_or_else(|| perr(ln, "`irrep` before `table`"))?;
                if let Some(p) = pending.take() {
                    irreps.push(finish(p, g)?);
                }
                let dim: usize = toks[2]
                    .parse()
                    .ok()
                    .filter(|&d| d > 0)
                    .ok_or_else(|| perr(ln, "irrep dimension must be a positive integer"))?;
                pending = Some(PendingIrrep {
                    name: toks[1].to_string(),
                    dim,
                    line: ln,
                    matrices: vec![None; g.order()],
                });
            }
            "matrix" if toks.len() == 2 => {
                let g = group.as_ref().ok_or_else(|| perr(ln, "`matrix` before `table`"))?;
                let p = pending.as_mut().ok_or_else(|| perr(ln, "`matrix` outside an irrep"))?;
                let idx = g
                    .index_of(toks[1])
                    .ok_or_else(|| perr(ln, format!("unknown element `{}`", toks[1])))?;
                let mut rows = Vec::with_capacity(p.dim);
                for _ in 0..p.dim {
                    let (rl, row) = it.next().ok_or_else(|| perr(ln, "matrix is missing rows"))?;
                    if row.len() != p.dim {
                        return Err(perr(rl, format!("matrix row needs {} entries", p.dim)));
                    }
                    rows.push(row.iter().map(|t| parse_entry(t, rl)).collect::<Result<Vec<_>, _>>()?);
                }
                p.matrices[idx] = Some(ComplexMatrix::from_rows(&rows));
            }
            other => return Err(perr(ln, format!("unexpected `{other}`"))),
        }
    }

    let group = group.ok_or_else(|| perr(0, "no multiplication table"))?;
    if let Some(p) = pending.take() {
        irreps.push(finish(p, &group)?);
    }
    Ok(GroupCorpus { group, irreps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::verify_orthogonality;

    const Z2: &str = "\
# the sign representation
group Z2
elements e a
table
e a
a e
irrep sign 1
matrix e
1,0
matrix a
-1,0
";

    #[test]
    fn parses_z2_sign() {
        let c = parse_group_file(Z2).unwrap();
        assert_eq!(c.group.order(), 2);
        assert_eq!(c.irreps.len(), 1);
        assert_eq!(verify_orthogonality(&c.irreps[0]).unwrap(), 0.0);
    }

    #[test]
    fn missing_matrix_is_reported() {
        let text = Z2.replace("matrix a\n-1,0\n", "");
        let err = parse_group_file(&text).unwrap_err();
        assert!(err.to_string().contains("no matrix for a"), "{err}");
    }

    #[test]
    fn non_homomorphic_import_rejected() {
        let text = Z2.replace("-1,0", "0,1");
        assert!(matches!(
            parse_group_file(&text),
            Err(SymmetryError::NotHomomorphism { .. })
        ));
    }

    #[test]
    fn bad_entry_has_line_number() {
        let text = Z2.replace("-1,0", "minus-one");
        match parse_group_file(&text) {
            Err(SymmetryError::Parse { line, .. }) => assert_eq!(line, 11),
            other => panic!("unexpected {other:?}"),
        }
    }
}
