//! Complex numbers, quaternions and octonions as amplitude candidates.
//!
//! Octonion units `e1..e7` multiply along the oriented lines
//! (1,2,3), (1,4,5), (1,7,6), (2,4,6), (2,5,7), (3,4,7), (3,6,5):
//! for a line (a,b,c), `e_a e_b = e_c` cyclically and `e_b e_a = −e_c`.

use std::fmt;
use std::ops::{Add, Mul};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Common interface for the three algebras.
pub trait Amplitude: Copy + Add<Output = Self> + Mul<Output = Self> + fmt::Debug {
    const NAME: &'static str;
    fn norm(&self) -> f64;
    fn random<R: Rng>(rng: &mut R) -> Self;
    fn coefficients(&self) -> Vec<f64>;
}

impl Amplitude for Complex64 {
    const NAME: &'static str = "complex";
    fn norm(&self) -> f64 {
        Complex64::norm(*self)
    }
    fn random<R: Rng>(rng: &mut R) -> Self {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    }
    fn coefficients(&self) -> Vec<f64> {
        vec![self.re, self.im]
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quaternion(pub [f64; 4]);

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Quaternion(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let [a1, b1, c1, d1] = self.0;
        let [a2, b2, c2, d2] = o.0;
        Quaternion([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])
    }
}

impl Amplitude for Quaternion {
    const NAME: &'static str = "quaternion";
    fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
    fn random<R: Rng>(rng: &mut R) -> Self {
        Quaternion(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))
    }
    fn coefficients(&self) -> Vec<f64> {
        self.0.to_vec()
    }
}

pub const FANO_LINES: [[usize; 3]; 7] = [[1, 2, 3], [1, 4, 5], [1, 7, 6], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 6, 5]];

/// `e_i e_j = sign · e_k` for units `0..8` (index 0 is the real unit).
fn unit_product(i: usize, j: usize) -> (f64, usize) {
    if i == 0 {
        return (1.0, j);
    }
    if j == 0 {
        return (1.0, i);
    }
    if i == j {
        return (-1.0, 0);
    }
    for [a, b, c] in FANO_LINES {
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            if (i, j) == (x, y) {
                return (1.0, z);
            }
            if (i, j) == (y, x) {
                return (-1.0, z);
            }
        }
    }
    unreachable!("every pair of distinct imaginary units lies on one line")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Octonion(pub [f64; 8]);

impl Octonion {
    pub fn unit(i: usize) -> Self {
        let mut c = [0.0; 8];
        c[i] = 1.0;
        Octonion(c)
    }
}

impl Add for Octonion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Octonion(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Mul for Octonion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut out = [0.0; 8];
        for i in 0..8 {
            if self.0[i] == 0.0 {
                continue;
            }
            for j in 0..8 {
                let (s, k) = unit_product(i, j);
                out[k] += s * self.0[i] * o.0[j];
            }
        }
        Octonion(out)
    }
}

impl Amplitude for Octonion {
    const NAME: &'static str = "octonion";
    fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
    fn random<R: Rng>(rng: &mut R) -> Self {
        Octonion(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))
    }
    fn coefficients(&self) -> Vec<f64> {
        self.0.to_vec()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algebra {
    Complex,
    Quaternion,
    Octonion,
}

impl Algebra {
    pub const ALL: [Algebra; 3] = [Algebra::Complex, Algebra::Quaternion, Algebra::Octonion];

    pub fn name(self) -> &'static str {
        match self {
            Algebra::Complex => Complex64::NAME,
            Algebra::Quaternion => Quaternion::NAME,
            Algebra::Octonion => Octonion::NAME,
        }
    }
}

fn max_norm_residual<A: Amplitude>(trials: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let (x, y) = (A::random(&mut rng), A::random(&mut rng));
            ((x * y).norm() - x.norm() * y.norm()).abs()
        })
        .fold(0.0, f64::max)
}

/// Largest `||ψϕ| − |ψ||ϕ||` over random pairs.
pub fn norm_multiplicativity(algebra: Algebra, trials: usize, seed: u64) -> f64 {
    match algebra {
        Algebra::Complex => max_norm_residual::<Complex64>(trials, seed),
        Algebra::Quaternion => max_norm_residual::<Quaternion>(trials, seed),
        Algebra::Octonion => max_norm_residual::<Octonion>(trials, seed),
    }
}

/// A tuple with `|ψ₁(ψ₂ψ₃)+ϕ| ≠ |(ψ₁ψ₂)ψ₃+ϕ|`, coefficients listed per element.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub algebra: &'static str,
    pub psi1: Vec<f64>,
    pub psi2: Vec<f64>,
    pub psi3: Vec<f64>,
    pub phi: Vec<f64>,
    pub left_norm: f64,
    pub right_norm: f64,
    pub draws: usize,
}

impl Witness {
    pub fn gap(&self) -> f64 {
        (self.left_norm - self.right_norm).abs()
    }
}

/// Minimum gap for a draw to count as a witness.
pub const WITNESS_GAP: f64 = 0.01;

fn evaluate<A: Amplitude>(p1: A, p2: A, p3: A, phi: A, draws: usize) -> Witness {
    Witness {
        algebra: A::NAME,
        left_norm: (p1 * (p2 * p3) + phi).norm(),
        right_norm: ((p1 * p2) * p3 + phi).norm(),
        psi1: p1.coefficients(),
        psi2: p2.coefficients(),
        psi3: p3.coefficients(),
        phi: phi.coefficients(),
        draws,
    }
}

fn search<A: Amplitude>(seed: u64, max_draws: usize) -> Option<Witness> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for draw in 1..=max_draws {
        let (p1, p2, p3, phi) = (A::random(&mut rng), A::random(&mut rng), A::random(&mut rng), A::random(&mut rng));
        let w = evaluate(p1, p2, p3, phi, draw);
        if w.gap() > WITNESS_GAP {
            return Some(w);
        }
    }
    None
}

/// Random search for a nonassociativity witness in `algebra`.
pub fn find_witness(algebra: Algebra, seed: u64, max_draws: usize) -> Option<Witness> {
    match algebra {
        Algebra::Complex => search::<Complex64>(seed, max_draws),
        Algebra::Quaternion => search::<Quaternion>(seed, max_draws),
        Algebra::Octonion => search::<Octonion>(seed, max_draws),
    }
}

/// Octonion witness from a random search of at most 1000 draws.
pub fn octonion_nonassociativity_witness(seed: u64) -> Result<Witness, super::BornError> {
    find_witness(Algebra::Octonion, seed, 1000).ok_or(super::BornError::NoWitness { draws: 1000 })
}

/// `e1(e2 e4) = −e7`, `(e1 e2) e4 = e7`, with `ϕ = e7`: norms 0 and 2.
pub fn basis_witness() -> Witness {
    let e = Octonion::unit;
    evaluate(e(1), e(2), e(4), e(7), 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_table_basics() {
        let e = Octonion::unit;
        assert_eq!(e(1) * e(2), e(3));
        assert_eq!(e(2) * e(1), Octonion([0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0]));
        assert_eq!(e(5) * e(5), Octonion([-1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]));
        let neg_e7 = Octonion([0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0]);
        assert_eq!(e(1) * (e(2) * e(4)), neg_e7);
        assert_eq!((e(1) * e(2)) * e(4), e(7));
    }

    #[test]
    fn basis_witness_norms() {
        let w = basis_witness();
        assert_eq!((w.left_norm, w.right_norm), (0.0, 2.0));
    }

    #[test]
    fn four_square_identity_by_hand() {
        // (1 + 2i + 3j + 4k)(5 - i + 0j + 2k)
        let p = Quaternion([1.0, 2.0, 3.0, 4.0]) * Quaternion([5.0, -1.0, 0.0, 2.0]);
        assert_eq!(p, Quaternion([-1.0, 15.0, 7.0, 25.0]));
        assert_eq!(p.norm().powi(2), 30.0 * 30.0);
    }

    #[test]
    fn norms_multiply() {
        for a in Algebra::ALL {
            assert!(norm_multiplicativity(a, 1000, 7) < 1e-10, "{}", a.name());
        }
    }

    #[test]
    fn witness_only_for_octonions() {
        assert!(octonion_nonassociativity_witness(1).is_ok());
        assert!(find_witness(Algebra::Quaternion, 1, 10_000).is_none());
        assert!(find_witness(Algebra::Complex, 1, 10_000).is_none());
    }
}
