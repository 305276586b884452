//! Interaction-free measurement, the two-atom liar configuration and the
//! delayed-choice consistency check.

use num_complex::Complex64;

use super::bench::{fig13, fig14, run_bench, run_bench_with_atoms, Arm, BenchOutcome};
use super::spin::{SpinRotation, SpinState};
use super::OpticsError;
use crate::linalg::{inner, norm_sqr};

/// `p[atom configuration][channel]`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution {
    pub atom_outcomes: Vec<String>,
    pub channels: Vec<String>,
    pub p: Vec<Vec<f64>>,
}

impl JointDistribution {
    fn from_outcome(out: &BenchOutcome) -> Self {
        let n = out.modes.atoms.len();
        let configs = 1usize << n;
        let atom_outcomes = (0..configs)
            .map(|c| {
                (0..n)
                    .map(|i| if (c >> (n - 1 - i)) & 1 == 0 { "Z+" } else { "Z-" })
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        let p = (0..configs)
            .map(|c| out.modes.slice(c).iter().map(|z| z.norm_sqr()).collect())
            .collect();
        Self {
            atom_outcomes,
            channels: out.modes.channels.clone(),
            p,
        }
    }

    pub fn channel(&self, label: &str) -> Option<usize> {
        self.channels.iter().position(|c| c == label)
    }

    pub fn marginal(&self, channel: usize) -> f64 {
        self.p.iter().map(|row| row[channel]).sum()
    }
}

/// Click statistics and the atom states they select.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomBenchResult {
    pub outcome: BenchOutcome,
    pub joint: JointDistribution,
    pub p_d1: f64,
    pub p_d2: f64,
    /// Everything not registered at D1 or D2.
    pub p_absorbed: f64,
    pub post_d1: Option<SpinState>,
    pub post_d2: Option<SpinState>,
}

impl AtomBenchResult {
    fn new(outcome: BenchOutcome) -> Self {
        let joint = JointDistribution::from_outcome(&outcome);
        let p = &outcome.probabilities;
        let post = |d: &str| {
            outcome
                .post_selected
                .iter()
                .find(|(l, _)| l == d)
                .and_then(|(_, s)| s.clone())
        };
        Self {
            p_d1: p[0],
            p_d2: p[1],
            p_absorbed: p[2..].iter().sum(),
            post_d1: post("D1"),
            post_d2: post("D2"),
            joint,
            outcome,
        }
    }
}

/// IFM result plus the X+ probability of the atom after a D2 click.
#[derive(Clone, Debug, PartialEq)]
pub struct IfmResult {
    pub bench: AtomBenchResult,
    pub x_plus_after_d2: f64,
}

/// One atom, its Z+ box in `placement`.
pub fn run_ifm(atom: &SpinState, placement: Arm) -> Result<IfmResult, OpticsError> {
    let norm = norm_sqr(atom.amplitudes());
    if (norm - 1.0).abs() > 1e-12 {
        return Err(OpticsError::Unnormalized(norm));
    }
    let out = run_bench_with_atoms(&fig13(placement), std::slice::from_ref(atom))?;
    let bench = AtomBenchResult::new(out);
    let x_plus_after_d2 = bench.post_d2.as_ref().map_or(0.0, SpinState::x_plus_probability);
    Ok(IfmResult { bench, x_plus_after_d2 })
}

/// Two atoms prepared X+: atom 1's Z+ box in the lower arm, atom 2's Z−
/// box in the upper arm.
pub fn run_qle() -> AtomBenchResult {
    AtomBenchResult::new(run_bench(&fig14()).expect("preset bench runs"))
}

/// Joint table `P(channel, spin outcomes)` for analysers at `thetas`,
/// built twice: photon click first, then spins; and spins first, then
/// photon. `residual` is the largest disagreement between the two.
#[derive(Clone, Debug, PartialEq)]
pub struct DelayedChoice {
    pub channels: Vec<String>,
    /// Outcome strings like `"+-"`, one per spin-outcome combination.
    pub spin_outcomes: Vec<String>,
    pub photon_first: Vec<Vec<f64>>,
    pub spins_first: Vec<Vec<f64>>,
    pub residual: f64,
}

fn analyser_basis(thetas: &[f64]) -> Vec<(String, Vec<Complex64>)> {
    let mut basis: Vec<(String, Vec<Complex64>)> = vec![(String::new(), vec![Complex64::new(1.0, 0.0)])];
    for &t in thetas {
        let r = SpinRotation::new(t);
        basis = basis
            .into_iter()
            .flat_map(|(label, v)| {
                [true, false].into_iter().map(move |plus| {
                    let e = r.eigenvector(plus);
                    let prod = v.iter().flat_map(|x| e.iter().map(move |y| x * y)).collect();
                    (format!("{label}{}", if plus { '+' } else { '-' }), prod)
                })
            })
            .collect();
    }
    basis
}

pub fn delayed_choice(outcome: &BenchOutcome, thetas: &[f64]) -> Result<DelayedChoice, OpticsError> {
    let modes = &outcome.modes;
    let n_atoms = modes.atoms.len();
    if thetas.len() != n_atoms || n_atoms == 0 {
        return Err(OpticsError::AtomCount {
            expected: n_atoms,
            found: thetas.len(),
        });
    }
    let basis = analyser_basis(thetas);
    let nch = modes.channels.len();
    let configs = 1usize << n_atoms;

    // Photon first: P(d) · P(s | d) from the post-selected atom state.
    let photon_first: Vec<Vec<f64>> = (0..nch)
        .map(|d| {
            let pd = outcome.probabilities[d];
            match modes.post_selected(d) {
                None => vec![0.0; basis.len()],
                Some(state) => basis
                    .iter()
                    .map(|(_, b)| pd * inner(b, state.amplitudes()).norm_sqr())
                    .collect(),
            }
        })
        .collect();

    // Spins first: P(s) · P(d | s) from the photon state left by outcome s.
    let mut spins_first = vec![vec![0.0; basis.len()]; nch];
    for (si, (_, b)) in basis.iter().enumerate() {
        let photon: Vec<Complex64> = (0..nch)
            .map(|d| (0..configs).map(|c| b[c].conj() * modes.slice(c)[d]).sum())
            .collect();
        let ps = norm_sqr(&photon);
        if ps == 0.0 {
            continue;
        }
        for d in 0..nch {
            spins_first[d][si] = ps * (photon[d].norm_sqr() / ps);
        }
    }

    let residual = photon_first
        .iter()
        .flatten()
        .zip(spins_first.iter().flatten())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(DelayedChoice {
        channels: modes.channels.clone(),
        spin_outcomes: basis.into_iter().map(|(l, _)| l).collect(),
        photon_first,
        spins_first,
        residual,
    })
}
