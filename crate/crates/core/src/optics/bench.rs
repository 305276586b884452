//! Bench description, validation and the state-vector engine.
//!
//! Channel order: `D1` (mode |1⟩), `D2` (mode |2⟩), then one absorbing
//! channel per blocking element in bench order. At the input of the second
//! beam splitter the upper arm carries mode |1⟩ and the lower arm mode |2⟩;
//! every complete mirror pair (one mirror per arm) applies `S(0)`, a swap,
//! so upstream of a pair the arm-to-mode assignment is exchanged.
//!
//! With atoms, the joint basis is `atom configuration ⊗ channel`, the
//! configuration index having atom 1 as its most significant bit
//! (bit 0 = Z+, bit 1 = Z−).

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::fmt;

use num_complex::Complex64;

use super::operators::{beam_splitter, reflection, splitter_parameter, BenchOperator, OperatorLabel, DEFAULT_K};
use super::spin::SpinState;
use super::OpticsError;
use crate::linalg::{norm_sqr, ComplexMatrix, ONE, ZERO};

/// Atom-count cap (the joint space grows as 2^n).
pub const MAX_ATOMS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arm {
    Upper,
    Lower,
}

impl Arm {
    pub fn other(self) -> Arm {
        match self {
            Arm::Upper => Arm::Lower,
            Arm::Lower => Arm::Upper,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Arm::Upper => "upper",
            Arm::Lower => "lower",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZState {
    Plus,
    Minus,
}

impl ZState {
    pub fn name(self) -> &'static str {
        match self {
            ZState::Plus => "Z+",
            ZState::Minus => "Z-",
        }
    }

    fn bit(self) -> usize {
        match self {
            ZState::Plus => 0,
            ZState::Minus => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DetectorId {
    D1,
    D2,
    D3,
}

impl DetectorId {
    pub fn name(self) -> &'static str {
        match self {
            DetectorId::D1 => "D1",
            DetectorId::D2 => "D2",
            DetectorId::D3 => "D3",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Source { name: String },
    BeamSplitter { name: String },
    Mirror { name: String, arm: Arm },
    Block { arm: Arm },
    /// A box holding `atom` in `arm`; it blocks the arm when the atom's Z
    /// value equals `state`.
    Boxes { atom: String, arm: Arm, state: ZState },
    Detector(DetectorId),
}

impl Element {
    fn arm(&self) -> Option<Arm> {
        match self {
            Element::Mirror { arm, .. } | Element::Block { arm } | Element::Boxes { arm, .. } => Some(*arm),
            _ => None,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Element::Source { .. } => "source",
            Element::BeamSplitter { .. } => "beamsplitter",
            Element::Mirror { .. } => "mirror",
            Element::Block { .. } => "block",
            Element::Boxes { .. } => "boxes",
            Element::Detector(_) => "detector",
        }
    }
}

/// An ordered element list. Construct through [`BenchConfig::new`], which validates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    elements: Vec<Element>,
    atoms: Vec<String>,
}

fn invalid(element: Option<usize>, message: impl Into<String>) -> OpticsError {
    OpticsError::Invalid {
        element,
        message: message.into(),
    }
}

impl BenchConfig {
    pub fn new(elements: Vec<Element>) -> Result<Self, OpticsError> {
        let atoms = validate(&elements)?;
        Ok(Self { elements, atoms })
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    /// Atom names in order of first appearance.
    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    fn has_detector(&self, d: DetectorId) -> bool {
        self.elements.contains(&Element::Detector(d))
    }

    /// Channel labels in basis order.
    pub fn channels(&self) -> Vec<String> {
        let mut out = vec!["D1".to_string(), "D2".to_string()];
        let mut d3_used = !self.has_detector(DetectorId::D3);
        for e in &self.elements {
            match e {
                Element::Block { arm } => {
                    if !d3_used {
                        out.push("D3".to_string());
                        d3_used = true;
                    } else {
                        out.push(format!("absorbed({})", arm.name()));
                    }
                }
                Element::Boxes { atom, state, .. } => out.push(format!("{atom}:{}", state.name())),
                _ => {}
            }
        }
        out
    }
}

/// Returns the atom list on success.
fn validate(elements: &[Element]) -> Result<Vec<String>, OpticsError> {
    if elements.is_empty() {
        return Err(invalid(None, "no source"));
    }
    if !matches!(elements[0], Element::Source { .. }) {
        return Err(invalid(Some(0), format!("bench must start with a source, found {}", elements[0].kind())));
    }
    let mut splitters = 0;
    let mut pending_mirror: Option<(usize, Arm)> = None;
    let mut in_detectors = false;
    let mut detectors: Vec<DetectorId> = Vec::new();
    let mut blocks = 0;
    let mut atoms: Vec<String> = Vec::new();
    let mut boxes: Vec<(String, Arm, ZState)> = Vec::new();

    for (i, e) in elements.iter().enumerate() {
        if in_detectors && !matches!(e, Element::Detector(_)) {
            return Err(invalid(Some(i), format!("{} after a detector; detectors terminate the bench", e.kind())));
        }
        if let Some(arm) = e.arm() {
            if splitters != 1 {
                return Err(invalid(Some(i), format!("dangling arm: {} on the {} arm outside the interferometer", e.kind(), arm.name())));
            }
        }
        match e {
            Element::Source { .. } if i > 0 => return Err(invalid(Some(i), "more than one source")),
            Element::Source { .. } => {}
            Element::BeamSplitter { .. } => {
                if let Some((mi, _)) = pending_mirror {
                    return Err(invalid(Some(mi), "unpaired mirror"));
                }
                splitters += 1;
                if splitters > 2 {
                    return Err(invalid(Some(i), "at most two beam splitters"));
                }
            }
            Element::Mirror { arm, .. } => {
                pending_mirror = match pending_mirror {
                    None => Some((i, *arm)),
                    Some((_, first)) if first != *arm => None,
                    Some(_) => {
                        return Err(invalid(Some(i), format!("mirror pair needs one mirror per arm; both on the {} arm", arm.name())))
                    }
                };
            }
            Element::Block { .. } => blocks += 1,
            Element::Boxes { atom, arm, state } => {
                for (a, b_arm, b_state) in &boxes {
                    if a == atom && (b_arm == arm || b_state == state) {
                        return Err(invalid(Some(i), format!("atom {atom} already has a box on the {} arm or in state {}", b_arm.name(), b_state.name())));
                    }
                }
                boxes.push((atom.clone(), *arm, *state));
                if !atoms.contains(atom) {
                    if atoms.len() == MAX_ATOMS {
                        return Err(invalid(Some(i), format!("at most {MAX_ATOMS} atoms")));
                    }
                    atoms.push(atom.clone());
                }
            }
            Element::Detector(d) => {
                if let Some((mi, _)) = pending_mirror.take() {
                    return Err(invalid(Some(mi), "unpaired mirror"));
                }
                if detectors.contains(d) {
                    return Err(invalid(Some(i), format!("detector {} declared twice", d.name())));
                }
                in_detectors = true;
                detectors.push(*d);
            }
        }
    }
    if let Some((mi, _)) = pending_mirror {
        return Err(invalid(Some(mi), "unpaired mirror"));
    }
    for d in [DetectorId::D1, DetectorId::D2] {
        if !detectors.contains(&d) {
            return Err(invalid(None, format!("missing detector {}", d.name())));
        }
    }
    if detectors.contains(&DetectorId::D3) && blocks == 0 {
        return Err(invalid(None, "detector D3 needs a blocked arm"));
    }
    Ok(atoms)
}

/// Amplitudes over the (joint) channel basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeVector {
    pub channels: Vec<String>,
    pub atoms: Vec<String>,
    pub amplitudes: Vec<Complex64>,
}

impl ModeVector {
    pub fn channel_index(&self, label: &str) -> Option<usize> {
        self.channels.iter().position(|c| c == label)
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    fn configs(&self) -> usize {
        1 << self.atoms.len()
    }

    /// Photon-channel amplitudes for one atom configuration.
    pub fn slice(&self, config: usize) -> &[Complex64] {
        let n = self.channels.len();
        &self.amplitudes[config * n..(config + 1) * n]
    }

    /// Marginal click probability per channel.
    pub fn click_distribution(&self) -> Vec<f64> {
        click_distribution(self)
    }

    /// Normalized atom state given a click in `channel`, or `None` for a
    /// zero-probability click or an atom-free bench.
    pub fn post_selected(&self, channel: usize) -> Option<SpinState> {
        if self.atoms.is_empty() {
            return None;
        }
        let amps: Vec<Complex64> = (0..self.configs()).map(|c| self.slice(c)[channel]).collect();
        SpinState::normalized(amps)
    }
}

pub fn click_distribution(m: &ModeVector) -> Vec<f64> {
    let n = m.channels.len();
    let mut p = vec![0.0; n];
    for (i, a) in m.amplitudes.iter().enumerate() {
        p[i % n] += a.norm_sqr();
    }
    p
}

/// Result of running a bench.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchOutcome {
    pub modes: ModeVector,
    pub probabilities: Vec<f64>,
    /// Post-selected atom state for D1 and D2 clicks (atom benches only).
    pub post_selected: Vec<(String, Option<SpinState>)>,
}

/// Element operators for one atom configuration, in application order.
pub fn element_operators(config: &BenchConfig, atom_config: usize) -> Vec<BenchOperator> {
    let k = DEFAULT_K;
    let dim = config.channels().len();
    let elems = config.elements();
    let n_atoms = config.atoms().len();
    let atom_z = |atom: &str| -> usize {
        let idx = config.atoms().iter().position(|a| a == atom).expect("validated atom");
        (atom_config >> (n_atoms - 1 - idx)) & 1
    };

    // Mirror pairs still ahead of each position, up to the second splitter.
    let mut pairs_after = vec![0usize; elems.len()];
    let mut count = 0usize;
    for i in (0..elems.len()).rev() {
        pairs_after[i] = count / 2;
        match &elems[i] {
            Element::BeamSplitter { .. } => count = 0,
            Element::Mirror { .. } => count += 1,
            _ => {}
        }
    }
    let mode_of = |arm: Arm, i: usize| -> usize {
        let base = match arm {
            Arm::Upper => 0,
            Arm::Lower => 1,
        };
        if pairs_after[i] % 2 == 0 {
            base
        } else {
            1 - base
        }
    };

    let mut ops = Vec::new();
    let mut splitters = 0;
    let mut mirrors_in_pair = 0;
    let mut channel = 2;
    for (i, e) in elems.iter().enumerate() {
        match e {
            Element::BeamSplitter { .. } => {
                let q = beam_splitter(k);
                let (m, adjoint) = if splitters == 0 { (q, false) } else { (q.adjoint(), true) };
                splitters += 1;
                ops.push(BenchOperator::on_modes(
                    OperatorLabel::BeamSplitter {
                        a0: splitter_parameter(k),
                        adjoint,
                    },
                    &m,
                    dim,
                ));
            }
            Element::Mirror { .. } => {
                mirrors_in_pair += 1;
                if mirrors_in_pair == 2 {
                    mirrors_in_pair = 0;
                    ops.push(BenchOperator::on_modes(OperatorLabel::Reflection(0.0), &reflection(k, 0.0), dim));
                }
            }
            Element::Block { arm } => {
                ops.push(BenchOperator::blocker(*arm, mode_of(*arm, i), channel, dim));
                channel += 1;
            }
            Element::Boxes { atom, arm, state } => {
                if atom_z(atom) == state.bit() {
                    ops.push(BenchOperator::blocker(*arm, mode_of(*arm, i), channel, dim));
                } else {
                    ops.push(BenchOperator {
                        label: OperatorLabel::Identity,
                        matrix: ComplexMatrix::identity(dim),
                    });
                }
                channel += 1;
            }
            Element::Source { .. } | Element::Detector(_) => {}
        }
    }
    ops
}

/// `a + b·√2` with complex `a`, `b`. Splitter and mirror entries at the
/// default wavenumber have dyadic `a`, `b`, so products stay exact in f64
/// and a plain MZI really returns `(1, 0)` rather than `1 + 4e-16`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Surd {
    a: Complex64,
    b: Complex64,
}

impl Surd {
    const ZERO: Surd = Surd { a: ZERO, b: ZERO };

    fn part(x: f64) -> Option<(f64, f64)> {
        if x == 0.0 || x.abs() == 1.0 {
            Some((x, 0.0))
        } else if x.abs() == FRAC_1_SQRT_2 {
            Some((0.0, 0.5f64.copysign(x)))
        } else {
            None
        }
    }

    fn recognise(z: Complex64) -> Option<Surd> {
        let (ra, rb) = Self::part(z.re)?;
        let (ia, ib) = Self::part(z.im)?;
        Some(Surd {
            a: Complex64::new(ra, ia),
            b: Complex64::new(rb, ib),
        })
    }

    fn mul_add(self, x: Surd, y: Surd) -> Surd {
        Surd {
            a: self.a + x.a * y.a + 2.0 * x.b * y.b,
            b: self.b + x.a * y.b + x.b * y.a,
        }
    }

    fn value(self) -> Complex64 {
        self.a + self.b * SQRT_2
    }
}

fn exact_product(ops: &[BenchOperator], dim: usize) -> Option<ComplexMatrix> {
    let mut acc: Vec<Surd> = (0..dim * dim)
        .map(|k| if k / dim == k % dim { Surd { a: ONE, b: ZERO } } else { Surd::ZERO })
        .collect();
    for op in ops {
        let m: Vec<Surd> = (0..dim * dim)
            .map(|k| Surd::recognise(op.matrix[(k / dim, k % dim)]))
            .collect::<Option<_>>()?;
        let mut next = vec![Surd::ZERO; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                next[i * dim + j] = (0..dim).fold(Surd::ZERO, |s, l| s.mul_add(m[i * dim + l], acc[l * dim + j]));
            }
        }
        // dyadic parts with a handful of bits; give up if that ever changes
        let dyadic = |x: f64| (x * 1048576.0).fract() == 0.0 && x.abs() < 1e6;
        if !next.iter().all(|s| [s.a.re, s.a.im, s.b.re, s.b.im].into_iter().all(dyadic)) {
            return None;
        }
        acc = next;
    }
    let mut out = ComplexMatrix::zeros(dim);
    for (k, s) in acc.iter().enumerate() {
        out[(k / dim, k % dim)] = s.value();
    }
    Some(out)
}

/// Product of the element operators, last element leftmost.
pub fn composed_operator(config: &BenchConfig, atom_config: usize) -> ComplexMatrix {
    let dim = config.channels().len();
    let ops = element_operators(config, atom_config);
    exact_product(&ops, dim)
        .unwrap_or_else(|| ops.iter().fold(ComplexMatrix::identity(dim), |acc, op| &op.matrix * &acc))
}

/// Runs the bench with every atom prepared in X+.
pub fn run_bench(config: &BenchConfig) -> Result<BenchOutcome, OpticsError> {
    let atoms = vec![SpinState::x_plus(); config.atoms().len()];
    run_bench_with_atoms(config, &atoms)
}

/// Runs the bench with the given single-atom preparations (one per atom).
pub fn run_bench_with_atoms(config: &BenchConfig, atom_states: &[SpinState]) -> Result<BenchOutcome, OpticsError> {
    let n_atoms = config.atoms().len();
    if atom_states.len() != n_atoms {
        return Err(OpticsError::AtomCount {
            expected: n_atoms,
            found: atom_states.len(),
        });
    }
    let mut atom_amps = vec![ONE];
    for s in atom_states {
        if s.n_atoms() != 1 {
            return Err(OpticsError::AtomCount {
                expected: 1,
                found: s.n_atoms(),
            });
        }
        atom_amps = atom_amps
            .iter()
            .flat_map(|a| s.amplitudes().iter().map(move |b| a * b))
            .collect();
    }

    let channels = config.channels();
    let dim = channels.len();
    let mut source = vec![ZERO; dim];
    source[0] = ONE;
    let mut amplitudes = Vec::with_capacity(atom_amps.len() * dim);
    for (cfg, a) in atom_amps.iter().enumerate() {
        let out = composed_operator(config, cfg).apply(&source);
        amplitudes.extend(out.into_iter().map(|z| z * a));
    }
    let modes = ModeVector {
        channels,
        atoms: config.atoms().to_vec(),
        amplitudes,
    };
    let probabilities = click_distribution(&modes);
    let post_selected = if n_atoms == 0 {
        Vec::new()
    } else {
        ["D1", "D2"]
            .iter()
            .map(|d| (d.to_string(), modes.post_selected(modes.channel_index(d).expect("D1/D2 always present"))))
            .collect()
    };
    Ok(BenchOutcome {
        modes,
        probabilities,
        post_selected,
    })
}

impl fmt::Display for Arm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn src(name: &str) -> Element {
    Element::Source { name: name.into() }
}

fn bs(name: &str) -> Element {
    Element::BeamSplitter { name: name.into() }
}

fn mirror(name: &str, arm: Arm) -> Element {
    Element::Mirror { name: name.into(), arm }
}

fn plain_mzi(middle: Vec<Element>, extra_detectors: &[DetectorId]) -> BenchConfig {
    let mut e = vec![src("laser"), bs("BS1"), mirror("M1", Arm::Upper), mirror("M2", Arm::Lower)];
    e.extend(middle);
    e.push(bs("BS2"));
    e.push(Element::Detector(DetectorId::D1));
    e.push(Element::Detector(DetectorId::D2));
    e.extend(extra_detectors.iter().map(|d| Element::Detector(*d)));
    BenchConfig::new(e).expect("preset benches are valid")
}

/// Plain Mach-Zehnder interferometer.
pub fn fig11() -> BenchConfig {
    plain_mzi(vec![], &[])
}

/// Lower arm blocked by detector D3.
pub fn fig12a() -> BenchConfig {
    plain_mzi(vec![Element::Block { arm: Arm::Lower }], &[DetectorId::D3])
}

/// Upper arm blocked by detector D3.
pub fn fig12b() -> BenchConfig {
    plain_mzi(vec![Element::Block { arm: Arm::Upper }], &[DetectorId::D3])
}

/// One atom whose Z+ box sits in `arm`.
pub fn fig13(arm: Arm) -> BenchConfig {
    plain_mzi(
        vec![Element::Boxes {
            atom: "atom".into(),
            arm,
            state: ZState::Plus,
        }],
        &[],
    )
}

/// Two atoms: the Z+ box of atom 1 in the lower arm, the Z− box of atom 2
/// in the upper arm.
pub fn fig14() -> BenchConfig {
    plain_mzi(
        vec![
            Element::Boxes {
                atom: "atom1".into(),
                arm: Arm::Lower,
                state: ZState::Plus,
            },
            Element::Boxes {
                atom: "atom2".into(),
                arm: Arm::Upper,
                state: ZState::Minus,
            },
        ],
        &[],
    )
}
