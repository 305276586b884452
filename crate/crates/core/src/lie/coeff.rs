//! Exact structure-constant coefficients.
//!
//! A [`Coeff`] is a Laurent polynomial in the symbols `eps` (= 1/c²), `hbar`
//! and `m`, with Gaussian-rational coefficients `p + q·i`. Rescaling a
//! generator by a monomial and then letting `eps → 0` only ever needs
//! monomial denominators, so Laurent polynomials are closed under every
//! operation the contraction performs.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact `re + im·i` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gaussian {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn int(re: i64, im: i64) -> Self {
        Self::new(rat(re, 1), rat(im, 1))
    }

    pub fn i() -> Self {
        Self::int(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|²`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, o: Gaussian) -> Gaussian {
        Gaussian::new(self.re + o.re, self.im + o.im)
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

impl Mul for &Gaussian {
    type Output = Gaussian;
    fn mul(self, o: &Gaussian) -> Gaussian {
        Gaussian::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |r: &BigRational| -> String {
            if r.abs().is_one() {
                "i".to_string()
            } else {
                format!("{}i", fmt_rational(&r.abs()))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => {
                let sign = if self.im.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}", im_part(&self.im))
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "({} {sign} {})", fmt_rational(&self.re), im_part(&self.im))
            }
        }
    }
}

/// Symbols a coefficient may depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// `1/c²`
    Eps,
    Hbar,
    Mass,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::Eps, Symbol::Hbar, Symbol::Mass];

    fn slot(self) -> usize {
        self as usize
    }

    fn name(self) -> &'static str {
        match self {
            Symbol::Eps => "eps",
            Symbol::Hbar => "hbar",
            Symbol::Mass => "m",
        }
    }
}

type Exponents = [i32; 3];

/// Laurent polynomial in `eps`, `hbar`, `m` with Gaussian-rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Coeff {
    terms: BTreeMap<Exponents, Gaussian>,
}

impl Coeff {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(z: Gaussian) -> Self {
        Self::monomial(z, [0; 3])
    }

    pub fn int(re: i64, im: i64) -> Self {
        Self::constant(Gaussian::int(re, im))
    }

    pub fn one() -> Self {
        Self::int(1, 0)
    }

    pub fn i() -> Self {
        Self::int(0, 1)
    }

    /// `z · eps^a · hbar^b · m^c`.
    pub fn monomial(z: Gaussian, exps: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        if !z.is_zero() {
            terms.insert(exps, z);
        }
        Self { terms }
    }

    /// `sym^power` with unit coefficient.
    pub fn symbol(sym: Symbol, power: i32) -> Self {
        let mut e = [0; 3];
        e[sym.slot()] = power;
        Self::monomial(Gaussian::int(1, 0), e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Gaussian)> {
        self.terms.iter()
    }

    /// Lowest power of `sym` present (0 for the zero polynomial).
    pub fn min_power(&self, sym: Symbol) -> i32 {
        self.terms.keys().map(|e| e[sym.slot()]).min().unwrap_or(0)
    }

    /// Keeps only the terms in which `sym` appears to the power zero, i.e. the
    /// value at `sym = 0` of a coefficient without poles in `sym`.
    pub fn at_zero(&self, sym: Symbol) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[sym.slot()] == 0)
                .map(|(e, z)| (*e, z.clone()))
                .collect(),
        }
    }

    /// Replaces `sym` by a non-zero rational value.
    pub fn substitute(&self, sym: Symbol, value: &BigRational) -> Self {
        assert!(!value.is_zero(), "cannot substitute zero into a Laurent polynomial");
        let mut out = Coeff::zero();
        for (e, z) in &self.terms {
            let p = e[sym.slot()];
            let factor = if p >= 0 {
                num_traits::pow(value.clone(), p as usize)
            } else {
                num_traits::pow(value.recip(), (-p) as usize)
            };
            let mut e2 = *e;
            e2[sym.slot()] = 0;
            out = out + Coeff::monomial(&Gaussian::real(factor) * z, e2);
        }
        out
    }

    /// The Gaussian coefficient of a single monomial, if `self` is one.
    pub fn as_monomial(&self) -> Option<(Exponents, &Gaussian)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, z)| (*e, z))
        } else {
            None
        }
    }

    pub fn evaluate(&self, eps: f64, hbar: f64, mass: f64) -> Complex64 {
        let vals = [eps, hbar, mass];
        self.terms
            .iter()
            .map(|(e, z)| {
                let scale: f64 = e.iter().zip(vals).map(|(&p, v)| v.powi(p)).product();
                z.to_complex() * scale
            })
            .sum()
    }

    pub fn scale(&self, z: &Gaussian) -> Self {
        let mut out = Coeff::zero();
        for (e, w) in &self.terms {
            out = out + Coeff::monomial(z * w, *e);
        }
        out
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(mut self, o: Coeff) -> Coeff {
        for (e, z) in o.terms {
            let sum = match self.terms.remove(&e) {
                Some(w) => w + z,
                None => z,
            };
            if !sum.is_zero() {
                self.terms.insert(e, sum);
            }
        }
        self
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff {
            terms: self.terms.into_iter().map(|(e, z)| (e, -z)).collect(),
        }
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, o: Coeff) -> Coeff {
        self + (-o)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        let mut out = Coeff::zero();
        for (ea, za) in &self.terms {
            for (eb, zb) in &o.terms {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                out = out + Coeff::monomial(za * zb, e);
            }
        }
        out
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, o: Coeff) -> Coeff {
        &self * &o
    }
}

fn fmt_term(e: &Exponents, z: &Gaussian) -> String {
    let syms: Vec<String> = Symbol::ALL
        .iter()
        .filter(|s| e[s.slot()] != 0)
        .map(|s| match e[s.slot()] {
            1 => s.name().to_string(),
            p => format!("{}^{p}", s.name()),
        })
        .collect();
    if syms.is_empty() {
        return z.to_string();
    }
    let prefix = match z.to_string().as_str() {
        "1" => String::new(),
        "-1" => "-".to_string(),
        other => format!("{other}*"),
    };
    format!("{prefix}{}", syms.join("*"))
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.terms.len() {
            0 => write!(f, "0"),
            1 => {
                let (e, z) = self.terms.iter().next().expect("one term");
                write!(f, "{}", fmt_term(e, z))
            }
            _ => {
                let parts: Vec<String> = self.terms.iter().map(|(e, z)| fmt_term(e, z)).collect();
                write!(f, "({})", parts.join(" + "))
            }
        }
    }
}
