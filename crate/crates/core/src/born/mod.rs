//! Born exponent from the phase-average constraint, and the division
//! algebras that qualify as amplitudes.

mod division;
mod quadrature;

use thiserror::Error;

pub use division::{
    basis_witness, find_witness, norm_multiplicativity, octonion_nonassociativity_witness, Algebra, Amplitude,
    Octonion, Quaternion, Witness, FANO_LINES, WITNESS_GAP,
};
pub use quadrature::{
    adaptive_simpson, factorial_identity, find_born_exponent, ln_factorial_identity, odd_closed_form,
    phase_avg_integral,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BornError {
    #[error("no nonassociativity witness in {draws} draws")]
    NoWitness { draws: usize },
}

/// One row of the exponent scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExponentRow {
    pub n: u32,
    pub integral: f64,
    pub deviation: f64,
}

pub fn exponent_table(max_n: u32) -> Vec<ExponentRow> {
    (0..=max_n)
        .map(|n| {
            let integral = phase_avg_integral(n);
            ExponentRow {
                n,
                integral,
                deviation: (integral - 1.0).abs(),
            }
        })
        .collect()
}
