//! Built-in groups: Z₂, Z₄, S₃ and Q₈ with all of their irreps.
//!
//! Multiplication tables are derived from an independent model of each group
//! (addition mod n, permutation composition, quaternion units) so that the
//! irrep matrices are genuinely checked against them.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::{FiniteGroup, GroupRep};
use crate::linalg::{c64, ComplexMatrix, I, ONE, ZERO};

/// A group together with its complete list of irreps.
#[derive(Clone, Debug)]
pub struct GroupCorpus {
    pub group: Arc<FiniteGroup>,
    pub irreps: Vec<GroupRep>,
}

/// Every shipped group: Z₂, Z₄, S₃, Q₈.
pub fn shipped_corpus() -> Vec<GroupCorpus> {
    vec![cyclic_group(2), cyclic_group(4), symmetric_group_s3(), quaternion_group()]
}

/// `i^k` without going through floating-point trigonometry.
fn i_pow(k: usize) -> Complex64 {
    match k % 4 {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    }
}

/// Z_n with its n one-dimensional irreps `a^j ↦ ω^{jk}`.
pub fn cyclic_group(n: usize) -> GroupCorpus {
    assert!(n >= 1);
    let labels: Vec<String> = (0..n)
        .map(|j| match j {
            0 => "e".to_string(),
            1 => "a".to_string(),
            _ => format!("a{j}"),
        })
        .collect();
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    let group = Arc::new(FiniteGroup::from_table(format!("Z{n}"), labels, table).expect("Z_n table"));

    let root = |jk: usize| -> Complex64 {
        let jk = jk % n;
        if (4 * jk) % n == 0 {
            i_pow(4 * jk / n)
        } else {
            Complex64::from_polar(1.0, 2.0 * PI * jk as f64 / n as f64)
        }
    };
    let irreps = (0..n)
        .map(|k| {
            let mats = (0..n).map(|j| ComplexMatrix::diagonal(&[root(j * k)])).collect();
            let name = match (n, k) {
                (_, 0) => "trivial".to_string(),
                (2, 1) => "sign".to_string(),
                _ => format!("chi{k}"),
            };
            GroupRep::new(group.clone(), name, mats).expect("Z_n irrep")
        })
        .collect();
    GroupCorpus { group, irreps }
}

type Perm = [usize; 3];

fn compose(g: &Perm, h: &Perm) -> Perm {
    // (g∘h)(x) = g(h(x))
    [g[h[0]], g[h[1]], g[h[2]]]
}

fn parity(p: &Perm) -> i32 {
    let mut inversions = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// S₃ ≅ D₃ with elements `s^b r^a`; the 2-dim irrep sends `r` to the
/// rotation by 2π/3 and `s` to the reflection `diag(1, −1)`.
pub fn symmetric_group_s3() -> GroupCorpus {
    let id: Perm = [0, 1, 2];
    let r: Perm = [1, 2, 0];
    let s: Perm = [0, 2, 1];
    let r2 = compose(&r, &r);
    let perms = [id, r, r2, s, compose(&s, &r), compose(&s, &r2)];
    let labels: Vec<String> = ["e", "r", "r2", "s", "sr", "sr2"].iter().map(|s| s.to_string()).collect();
    let index = |p: &Perm| perms.iter().position(|q| q == p).expect("closed");
    let table = perms
        .iter()
        .map(|g| perms.iter().map(|h| index(&compose(g, h))).collect())
        .collect();
    let group = Arc::new(FiniteGroup::from_table("S3", labels, table).expect("S3 table"));

    let trivial = (0..6).map(|_| ComplexMatrix::identity(1)).collect();
    let sign = perms
        .iter()
        .map(|p| ComplexMatrix::diagonal(&[c64(parity(p) as f64, 0.0)]))
        .collect();

    let t = 2.0 * PI / 3.0;
    let rot = ComplexMatrix::from_real_rows(&[&[t.cos(), -t.sin()], &[t.sin(), t.cos()]]);
    let refl = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]);
    let rot2 = &rot * &rot;
    let standard = vec![
        ComplexMatrix::identity(2),
        rot.clone(),
        rot2.clone(),
        refl.clone(),
        &refl * &rot,
        &refl * &rot2,
    ];

    let irreps = vec![
        GroupRep::new(group.clone(), "trivial", trivial).expect("S3 trivial"),
        GroupRep::new(group.clone(), "sign", sign).expect("S3 sign"),
        GroupRep::new(group.clone(), "standard", standard).expect("S3 standard"),
    ];
    GroupCorpus { group, irreps }
}

/// Q₈ = {±1, ±i, ±j, ±k} with four 1-dim irreps and the 2-dim spinor irrep.
pub fn quaternion_group() -> GroupCorpus {
    // Element = (negative?, unit) with unit 0..4 standing for 1, i, j, k.
    let units = ["1", "i", "j", "k"];
    let mut elems = Vec::new();
    for u in 0..4 {
        elems.push((false, u));
        elems.push((true, u));
    }
    let labels: Vec<String> = elems
        .iter()
        .map(|&(neg, u)| format!("{}{}", if neg { "-" } else { "" }, units[u]))
        .collect();

    // unit products: (sign flip, result unit)
    let unit_mul = |a: usize, b: usize| -> (bool, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    };
    let index = |e: (bool, usize)| elems.iter().position(|&x| x == e).expect("closed");
    let table = elems
        .iter()
        .map(|&(na, a)| {
            elems
                .iter()
                .map(|&(nb, b)| {
                    let (flip, u) = unit_mul(a, b);
                    index((na ^ nb ^ flip, u))
                })
                .collect()
        })
        .collect();
    let group = Arc::new(FiniteGroup::from_table("Q8", labels, table).expect("Q8 table"));

    let one_dim = |name: &str, kernel_unit: Option<usize>| {
        let mats = elems
            .iter()
            .map(|&(_, u)| {
                let v = match kernel_unit {
                    None => 1.0,
                    Some(k) if u == 0 || u == k => 1.0,
                    Some(_) => -1.0,
                };
                ComplexMatrix::diagonal(&[c64(v, 0.0)])
            })
            .collect();
        GroupRep::new(group.clone(), name, mats).expect("Q8 1-dim irrep")
    };

    let spinor_unit = [
        ComplexMatrix::identity(2),
        ComplexMatrix::from_rows(&[vec![I, ZERO], vec![ZERO, -I]]),
        ComplexMatrix::from_rows(&[vec![ZERO, ONE], vec![-ONE, ZERO]]),
        ComplexMatrix::from_rows(&[vec![ZERO, I], vec![I, ZERO]]),
    ];
    let spinor = elems
        .iter()
        .map(|&(neg, u)| {
            if neg {
                spinor_unit[u].scale(-ONE)
            } else {
                spinor_unit[u].clone()
            }
        })
        .collect();

    let irreps = vec![
        one_dim("trivial", None),
        one_dim("chi_i", Some(1)),
        one_dim("chi_j", Some(2)),
        one_dim("chi_k", Some(3)),
        GroupRep::new(group.clone(), "spinor", spinor).expect("Q8 spinor"),
    ];
    GroupCorpus { group, irreps }
}
