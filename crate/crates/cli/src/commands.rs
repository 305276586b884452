use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use relational_qm::born::{
    exponent_table, factorial_identity, find_born_exponent, find_witness, norm_multiplicativity, odd_closed_form,
    octonion_nonassociativity_witness, Algebra,
};
use relational_qm::kinematics::{blockworld_scenario, transform, Event, FrameKind, FrameTransform, C_KM_S};
use relational_qm::lie::{
    ccr_check, contract, galilean_control, poincare_algebra, weyl_phase, ContractionParams, NilpotentRep,
};
use relational_qm::optics::{
    bell_correlations, fig13, fig14, mermin_local_bound, outcome_table, random_setting_agreement, run_bench,
    run_bench_with_atoms, Arm, BenchConfig, BenchOutcome, Setting, SpinState,
};
use relational_qm::sampler::{run_trials, transition_experiment, TwinSlitGeometry};
use relational_qm::symmetry::{
    averages_from_state, expectation, parse_group_file, reconstruct_density, shipped_corpus, verify_orthogonality,
    GroupCorpus,
};

use crate::dsl::parse_bench;
use crate::format::{complex, complex_list, complex_text, num, nums, text, Table};
use crate::CliError;

/// What a subcommand produced, in all three renderings.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub csv: Table,
    /// Printed to stderr regardless of format.
    pub warnings: Vec<String>,
}

impl Report {
    fn new(json: Value, text: String, csv: Table) -> Self {
        Self {
            json,
            text,
            csv,
            warnings: Vec::new(),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Contract the Poincaré algebra and report the CCR and Weyl phase.
    Contract(ContractArgs),
    /// Reconstruct density matrices from group averages.
    Density(DensityArgs),
    /// Run a bench script.
    Mzi(MziArgs),
    /// Interaction-free measurement with one atom.
    Ifm(IfmArgs),
    /// Two atoms entangled through a shared interferometer.
    Qle(QleArgs),
    /// Same-setting, 120° and random-setting agreement rates.
    Bell(BellArgs),
    /// Phase-average exponent scan and division-algebra checks.
    Born(BornArgs),
    /// Boost events between frames; prints the five-observer table.
    Lorentz(LorentzArgs),
    /// Twin-slit first-event sampler.
    Twinslit(TwinslitArgs),
}

#[derive(Args, Debug)]
pub struct ContractArgs {
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    /// Contract the control algebra with [T,K] set to zero.
    #[arg(long)]
    pub galilean: bool,
    /// Translation distance for the Weyl phase.
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    /// Boost velocity for the Weyl phase.
    #[arg(long, default_value_t = 1.0)]
    pub v: f64,
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    /// One of the shipped groups: Z2, Z4, S3, Q8. Default: all.
    #[arg(long, conflicts_with = "group_file")]
    pub group: Option<String>,
    /// Group and irreps in the plain-text import format.
    #[arg(long)]
    pub group_file: Option<PathBuf>,
    /// Random pure states per irrep.
    #[arg(long, default_value_t = 20)]
    pub states: usize,
}

#[derive(Args, Debug)]
pub struct MziArgs {
    pub bench: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ArmArg {
    Upper,
    Lower,
}

impl From<ArmArg> for Arm {
    fn from(a: ArmArg) -> Arm {
        match a {
            ArmArg::Upper => Arm::Upper,
            ArmArg::Lower => Arm::Lower,
        }
    }
}

#[derive(Args, Debug)]
pub struct IfmArgs {
    /// Arm holding the atom's Z+ box.
    #[arg(long, value_enum, default_value = "lower")]
    pub arm: ArmArg,
    /// Use a one-atom bench script instead of the built-in layout.
    #[arg(long, conflicts_with = "arm")]
    pub bench: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct QleArgs {
    /// Use a two-atom bench script instead of the built-in layout.
    #[arg(long)]
    pub bench: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BellArgs {
    /// Also simulate this many runs with random settings.
    #[arg(long)]
    pub trials: Option<usize>,
}

#[derive(Args, Debug)]
pub struct BornArgs {
    #[arg(long, default_value_t = 20)]
    pub max_n: u32,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FrameArg {
    Lorentz,
    K4,
    Galilean,
}

#[derive(Args, Debug)]
pub struct LorentzArgs {
    /// Relative velocity as a fraction of c.
    #[arg(long, default_value_t = 0.6)]
    pub beta: f64,
    /// Event time in seconds; with --x, transform this event too.
    #[arg(long, requires = "x", allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// Event position in km.
    #[arg(long, requires = "t", allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long, value_enum, default_value = "lorentz")]
    pub frame: FrameArg,
}

#[derive(Args, Debug)]
pub struct TwinslitArgs {
    /// Depth of the first-event slice as a fraction of L.
    #[arg(long, default_value_t = 0.95)]
    pub depth: f64,
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    /// Histogram bins across the final surface (default: ten per fringe).
    #[arg(long)]
    pub bins: Option<usize>,
    /// Close slit 1 or 2.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub close_slit: Option<u8>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn load_bench(path: &Path) -> Result<BenchConfig, CliError> {
    let text = read(path)?;
    parse_bench(&text).map_err(|d| CliError::Validation(format!("{}:{d}", path.display())))
}

/// `raw_events` asks stochastic commands for per-trial rows in the CSV table.
pub fn execute(cmd: &Command, seed: u64, raw_events: bool) -> Result<Report, CliError> {
    match cmd {
        Command::Contract(a) => cmd_contract(a),
        Command::Density(a) => cmd_density(a, seed),
        Command::Mzi(a) => cmd_mzi(a),
        Command::Ifm(a) => cmd_ifm(a),
        Command::Qle(a) => cmd_qle(a),
        Command::Bell(a) => cmd_bell(a, seed),
        Command::Born(a) => cmd_born(a, seed),
        Command::Lorentz(a) => cmd_lorentz(a),
        Command::Twinslit(a) => cmd_twinslit(a, seed, raw_events),
    }
}

fn rational(x: f64, what: &str) -> Result<BigRational, CliError> {
    BigRational::from_float(x).ok_or_else(|| CliError::Validation(format!("{what} must be finite")))
}

fn cmd_contract(a: &ContractArgs) -> Result<Report, CliError> {
    let params = ContractionParams::new(a.hbar, a.mass).map_err(|e| CliError::Validation(e.to_string()))?;
    let (name, source) = if a.galilean {
        ("galilean-control", galilean_control())
    } else {
        ("poincare", poincare_algebra())
    };
    let c = contract(&source, &params).map_err(|e| CliError::Internal(e.to_string()))?;
    let brackets: Vec<String> = c.to_string().lines().map(str::to_string).collect();

    let mut ccr_sym = Vec::new();
    let mut ccr_num = Vec::new();
    let mut table = Table::new(&["m", "n", "ccr", "re", "im"]);
    for m in 1..=3 {
        let mut row_s = Vec::new();
        let mut row_n = Vec::new();
        for n in 1..=3 {
            let coeff = ccr_check(&c, m, n).map_err(|e| CliError::Internal(e.to_string()))?;
            let z = params.evaluate(&coeff);
            table.push(vec![m.to_string(), n.to_string(), coeff.to_string(), text(z.re), text(z.im)]);
            row_s.push(Value::String(coeff.to_string()));
            row_n.push(complex(z));
        }
        ccr_sym.push(Value::Array(row_s));
        ccr_num.push(Value::Array(row_n));
    }

    let phase = weyl_phase(&c, &rational(a.a, "a")?, &rational(a.v, "v")?)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let phase_value = params.evaluate(&phase);
    let matrix_phase = NilpotentRep::new(params).weyl_phase(a.a, a.v);
    let jacobi = c.jacobi_violations().len();
    let central = c.is_central("M").unwrap_or(false);

    let json = json!({
        "algebra": name,
        "hbar": num(a.hbar),
        "mass": num(a.mass),
        "brackets": brackets,
        "jacobi_violations": jacobi,
        "m_central": central,
        "ccr": ccr_sym,
        "ccr_value": ccr_num,
        "weyl_phase": {
            "a": num(a.a),
            "v": num(a.v),
            "symbolic": phase.to_string(),
            "value": complex(phase_value),
            "magnitude": num(phase_value.norm()),
            "matrix": complex(matrix_phase),
        },
    });
    let mut t = format!("contracted {name} algebra (hbar = {}, m = {})\n", text(a.hbar), text(a.mass));
    for b in &brackets {
        t += &format!("  {b}\n");
    }
    t += &format!("jacobi violations: {jacobi}\nM central: {central}\n[P_m,Q_n]:\n");
    for row in &table.rows {
        t += &format!("  [P{},Q{}] = {} * I\n", row[0], row[1], row[2]);
    }
    t += &format!(
        "Weyl phase (a = {}, v = {}): {} = {}  (matrix check {})\n",
        text(a.a),
        text(a.v),
        phase,
        complex_text(phase_value),
        complex_text(matrix_phase)
    );
    Ok(Report::new(json, t, table))
}

fn select_groups(a: &DensityArgs) -> Result<Vec<GroupCorpus>, CliError> {
    if let Some(path) = &a.group_file {
        let text = read(path)?;
        return parse_group_file(&text)
            .map(|g| vec![g])
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())));
    }
    let all = shipped_corpus();
    match &a.group {
        None => Ok(all),
        Some(name) => {
            let names: Vec<String> = all.iter().map(|g| g.group.name().to_string()).collect();
            all.into_iter()
                .find(|g| g.group.name().eq_ignore_ascii_case(name))
                .map(|g| vec![g])
                .ok_or_else(|| CliError::Validation(format!("unknown group `{name}` (expected one of: {})", names.join(", "))))
        }
    }
}

fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-3 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

fn cmd_density(a: &DensityArgs, seed: u64) -> Result<Report, CliError> {
    if a.states == 0 {
        return Err(CliError::Validation("--states must be at least 1".into()));
    }
    let groups = select_groups(a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut table = Table::new(&["group", "irrep", "dim", "orthogonality", "reconstruction", "hermiticity", "trace_consistency"]);
    for corpus in &groups {
        for rep in &corpus.irreps {
            let orth = verify_orthogonality(rep).map_err(|e| CliError::Validation(e.to_string()))?;
            let (mut recon, mut herm, mut trace) = (0f64, 0f64, 0f64);
            for _ in 0..a.states {
                let psi = random_state(&mut rng, rep.dim());
                let avgs = averages_from_state(rep, &psi).map_err(|e| CliError::Internal(e.to_string()))?;
                let rho = reconstruct_density(rep, &avgs).map_err(|e| CliError::Internal(e.to_string()))?;
                let pure = relational_qm::linalg::ComplexMatrix::outer(&psi, &psi);
                recon = recon.max(rho.matrix().max_abs_diff(&pure));
                herm = herm.max(rho.hermiticity_residual());
                for g in corpus.group.elements() {
                    let e = expectation(&rho, rep.matrix(g)).map_err(|e| CliError::Internal(e.to_string()))?;
                    trace = trace.max((e - avgs.get(g).unwrap_or_default()).norm());
                }
            }
            table.push(vec![
                corpus.group.name().to_string(),
                rep.name().to_string(),
                rep.dim().to_string(),
                format!("{orth:.3e}"),
                format!("{recon:.3e}"),
                format!("{herm:.3e}"),
                format!("{trace:.3e}"),
            ]);
            rows.push(json!({
                "group": corpus.group.name(),
                "irrep": rep.name(),
                "dim": rep.dim(),
                "orthogonality_residual": orth,
                "reconstruction_error": recon,
                "hermiticity_residual": herm,
                "trace_consistency": trace,
            }));
        }
    }
    let json = json!({ "states_per_irrep": a.states, "seed": seed, "irreps": rows });
    let mut t = format!("{} random states per irrep (seed {seed}); largest residuals:\n", a.states);
    t += &format!("{:<6} {:<10} {:>3} {:>12} {:>12} {:>12} {:>12}\n", "group", "irrep", "dim", "orthog", "recon", "herm", "trace");
    for r in &table.rows {
        t += &format!("{:<6} {:<10} {:>3} {:>12} {:>12} {:>12} {:>12}\n", r[0], r[1], r[2], r[3], r[4], r[5], r[6]);
    }
    Ok(Report::new(json, t, table))
}

fn spin_json(s: &Option<SpinState>) -> Value {
    s.as_ref().map_or(Value::Null, |s| complex_list(s.amplitudes()))
}

fn spin_text(s: &Option<SpinState>) -> String {
    match s {
        None => "none".into(),
        Some(s) => format!(
            "({})",
            s.amplitudes().iter().map(|z| complex_text(*z)).collect::<Vec<_>>().join(", ")
        ),
    }
}

fn atom_label(n: usize, cfg: usize) -> String {
    (0..n)
        .map(|i| if (cfg >> (n - 1 - i)) & 1 == 0 { "Z+" } else { "Z-" })
        .collect::<Vec<_>>()
        .join(",")
}

fn bench_report(out: &BenchOutcome) -> Report {
    let m = &out.modes;
    let n = m.atoms.len();
    let mut table = Table::new(&["atoms", "channel", "re", "im", "probability"]);
    let mut t = String::new();
    let amplitudes = if n == 0 {
        complex_list(&m.amplitudes)
    } else {
        Value::Array(
            (0..1usize << n)
                .map(|cfg| json!({ "atoms": atom_label(n, cfg), "amplitudes": complex_list(m.slice(cfg)) }))
                .collect(),
        )
    };
    for cfg in 0..1usize << n {
        let label = atom_label(n, cfg);
        if n > 0 {
            t += &format!("atoms {label}:\n");
        }
        for (ch, z) in m.channels.iter().zip(m.slice(cfg)) {
            table.push(vec![label.clone(), ch.clone(), text(z.re), text(z.im), text(z.norm_sqr())]);
            t += &format!("  {ch:<12} amplitude {:<24} p = {}\n", complex_text(*z), text(z.norm_sqr()));
        }
    }
    t += "click distribution:\n";
    for (ch, p) in m.channels.iter().zip(&out.probabilities) {
        t += &format!("  {ch:<12} {}\n", text(*p));
    }
    let mut json = Map::new();
    json.insert("channels".into(), json!(m.channels));
    json.insert("atoms".into(), json!(m.atoms));
    json.insert("amplitudes".into(), amplitudes);
    json.insert("probabilities".into(), nums(&out.probabilities));
    if n > 0 {
        let post: Map<String, Value> = out.post_selected.iter().map(|(d, s)| (d.clone(), spin_json(s))).collect();
        for (d, s) in &out.post_selected {
            t += &format!("atom state after {d}: {}\n", spin_text(s));
        }
        json.insert("post_selected".into(), Value::Object(post));
    }
    Report::new(Value::Object(json), t, table)
}

fn cmd_mzi(a: &MziArgs) -> Result<Report, CliError> {
    let cfg = load_bench(&a.bench)?;
    let out = run_bench(&cfg).map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(bench_report(&out))
}

fn probability(out: &BenchOutcome, label: &str) -> f64 {
    out.modes
        .channels
        .iter()
        .position(|c| c == label)
        .map_or(0.0, |i| out.probabilities[i])
}

fn post(out: &BenchOutcome, label: &str) -> Option<SpinState> {
    out.post_selected.iter().find(|(d, _)| d == label).and_then(|(_, s)| s.clone())
}

fn cmd_ifm(a: &IfmArgs) -> Result<Report, CliError> {
    let cfg = match &a.bench {
        Some(p) => load_bench(p)?,
        None => fig13(a.arm.into()),
    };
    if cfg.atoms().len() != 1 {
        return Err(CliError::Validation(format!("ifm needs a bench with one atom, found {}", cfg.atoms().len())));
    }
    let out = run_bench_with_atoms(&cfg, &[SpinState::x_plus()]).map_err(|e| CliError::Internal(e.to_string()))?;
    let (p1, p2) = (probability(&out, "D1"), probability(&out, "D2"));
    let after = post(&out, "D2");
    let x_plus = after.as_ref().map_or(0.0, SpinState::x_plus_probability);
    let mut rep = bench_report(&out);
    if let Value::Object(m) = &mut rep.json {
        m.insert("p_d1".into(), num(p1));
        m.insert("p_d2".into(), num(p2));
        m.insert("p_absorbed".into(), num(1.0 - p1 - p2));
        m.insert("x_plus_after_d2".into(), num(x_plus));
    }
    rep.text = format!(
        "P(D1) = {}\nP(D2) = {}\nabsorbed = {}\natom after D2: {}\nP(X+ | D2) = {}\n\n{}",
        text(p1),
        text(p2),
        text(1.0 - p1 - p2),
        spin_text(&after),
        text(x_plus),
        rep.text
    );
    Ok(rep)
}

fn cmd_qle(a: &QleArgs) -> Result<Report, CliError> {
    let cfg = match &a.bench {
        Some(p) => load_bench(p)?,
        None => fig14(),
    };
    if cfg.atoms().len() != 2 {
        return Err(CliError::Validation(format!("qle needs a bench with two atoms, found {}", cfg.atoms().len())));
    }
    let out = run_bench(&cfg).map_err(|e| CliError::Internal(e.to_string()))?;
    let (p1, p2) = (probability(&out, "D1"), probability(&out, "D2"));
    let after = post(&out, "D2");
    let s = FRAC_1_SQRT_2;
    let phi_minus = SpinState::new(vec![s.into(), 0.0.into(), 0.0.into(), (-s).into()]).expect("normalized");
    let f_epr = after.as_ref().map_or(0.0, |st| st.fidelity(&SpinState::epr()));
    let f_minus = after.as_ref().map_or(0.0, |st| st.fidelity(&phi_minus));
    // configurations in which both boxes sit in the photon's path
    let blocked: Vec<usize> = (0..4)
        .filter(|&cfg_idx| {
            let ops = relational_qm::optics::element_operators(&cfg, cfg_idx);
            ops.iter()
                .filter(|o| matches!(o.label, relational_qm::optics::OperatorLabel::Blocker { .. }))
                .count()
                == 2
        })
        .collect();
    let both_blocked: f64 = blocked
        .iter()
        .map(|&c| out.modes.slice(c)[..2].iter().map(|z| z.norm_sqr()).sum::<f64>())
        .sum();
    let mut rep = bench_report(&out);
    if let Value::Object(m) = &mut rep.json {
        m.insert("p_d1".into(), num(p1));
        m.insert("p_d2".into(), num(p2));
        m.insert("p_absorbed".into(), num(1.0 - p1 - p2));
        m.insert("fidelity_epr".into(), num(f_epr));
        m.insert("fidelity_phi_minus".into(), num(f_minus));
        m.insert("both_blocked_d1_d2".into(), num(both_blocked));
    }
    rep.text = format!(
        "P(D1) = {}\nP(D2) = {}\nabsorbed = {}\natoms after D2: {}\nfidelity with (|Z+Z+> + |Z-Z->)/sqrt2: {}\nfidelity with (|Z+Z+> - |Z-Z->)/sqrt2: {}\nD1/D2 weight with both arms blocked: {}\n\n{}",
        text(p1),
        text(p2),
        text(1.0 - p1 - p2),
        spin_text(&after),
        text(f_epr),
        text(f_minus),
        text(both_blocked),
        rep.text
    );
    Ok(rep)
}

fn cmd_bell(a: &BellArgs, seed: u64) -> Result<Report, CliError> {
    let epr = SpinState::epr();
    let internal = |e: relational_qm::optics::OpticsError| CliError::Internal(e.to_string());
    let mut table = Table::new(&["setting_1", "setting_2", "agreement"]);
    let mut pairs = Vec::new();
    for s1 in Setting::ALL {
        for s2 in Setting::ALL {
            let p = bell_correlations(&epr, s1.angle(), s2.angle()).map_err(internal)?;
            table.push(vec![s1.name().into(), s2.name().into(), text(p)]);
            pairs.push(json!({ "setting_1": s1.name(), "setting_2": s2.name(), "agreement": num(p) }));
        }
    }
    let same = bell_correlations(&epr, 0.0, 0.0).map_err(internal)?;
    let at_120 = bell_correlations(&epr, 0.0, 2.0 * PI / 3.0).map_err(internal)?;
    let random = random_setting_agreement(&epr).map_err(internal)?;
    let (bn, bd) = mermin_local_bound();
    let mut json = json!({
        "same_setting": num(same),
        "angle_120": num(at_120),
        "random_settings": num(random),
        "local_bound": format!("{bn}/{bd}"),
        "local_bound_value": num(bn as f64 / bd as f64),
        "pairs": pairs,
    });
    let mut t = format!(
        "same setting agreement: {}\n120 degree agreement: {}\nrandom-setting agreement: {} (local bound {bn}/{bd} = {})\n",
        text(same),
        text(at_120),
        text(random),
        text(bn as f64 / bd as f64)
    );
    if let Some(trials) = a.trials {
        if trials == 0 {
            return Err(CliError::Validation("--trials must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut agree = 0usize;
        for _ in 0..trials {
            let s1 = Setting::ALL[rng.random_range(0..3)];
            let s2 = Setting::ALL[rng.random_range(0..3)];
            let tab = outcome_table(&epr, s1.angle(), s2.angle()).map_err(internal)?;
            let u: f64 = rng.random();
            // outcomes (++, +-, -+, --) in order
            let mut acc = 0.0;
            let mut pick = 3;
            for (k, p) in [tab[0][0], tab[0][1], tab[1][0], tab[1][1]].into_iter().enumerate() {
                acc += p;
                if u < acc {
                    pick = k;
                    break;
                }
            }
            if pick == 0 || pick == 3 {
                agree += 1;
            }
        }
        let freq = agree as f64 / trials as f64;
        json["simulated"] = json!({ "trials": trials, "seed": seed, "agreement": num(freq) });
        t += &format!("simulated random-setting agreement: {} over {trials} runs (seed {seed})\n", text(freq));
    }
    Ok(Report::new(json, t, table))
}

fn cmd_born(a: &BornArgs, seed: u64) -> Result<Report, CliError> {
    if !(a.tol > 0.0) {
        return Err(CliError::Validation("--tol must be positive".into()));
    }
    let rows = exponent_table(a.max_n);
    let mut table = Table::new(&["n", "integral", "deviation", "closed_form"]);
    let mut jrows = Vec::new();
    for r in &rows {
        let m = u64::from(r.n / 2);
        let closed = match r.n {
            0 => 0.5,
            n if n % 2 == 0 => factorial_identity(m),
            _ => odd_closed_form(m),
        };
        table.push(vec![r.n.to_string(), text(r.integral), format!("{:.3e}", r.deviation), text(closed)]);
        jrows.push(json!({ "n": r.n, "integral": num(r.integral), "deviation": num(r.deviation), "closed_form": num(closed) }));
    }
    let exponents = find_born_exponent(a.max_n, a.tol);
    let algebras: Vec<Value> = Algebra::ALL
        .iter()
        .map(|&alg| json!({ "algebra": alg.name(), "norm_residual": num(norm_multiplicativity(alg, 1000, seed)) }))
        .collect();
    let witness = octonion_nonassociativity_witness(seed).ok();
    let quaternion_witness = find_witness(Algebra::Quaternion, seed, 100_000).is_some();
    let json = json!({
        "rows": jrows,
        "tolerance": num(a.tol),
        "exponents": exponents,
        "algebras": algebras,
        "octonion_witness": witness.as_ref().map(|w| json!({
            "psi1": nums(&w.psi1), "psi2": nums(&w.psi2), "psi3": nums(&w.psi3), "phi": nums(&w.phi),
            "left_norm": num(w.left_norm), "right_norm": num(w.right_norm), "gap": num(w.gap()), "draws": w.draws,
        })),
        "quaternion_witness_found": quaternion_witness,
    });
    let mut t = format!("{:>3} {:>22} {:>12} {:>22}\n", "n", "I(n)", "|I(n)-1|", "closed form");
    for r in &table.rows {
        t += &format!("{:>3} {:>22} {:>12} {:>22}\n", r[0], r[1], r[2], r[3]);
    }
    t += &format!("exponents with |I(n)-1| < {}: {exponents:?}\n", a.tol);
    for alg in &algebras {
        t += &format!("{} norm residual: {}\n", alg["algebra"].as_str().unwrap_or(""), alg["norm_residual"]);
    }
    match &witness {
        Some(w) => t += &format!("octonion witness after {} draws: gap {}\n", w.draws, text(w.gap())),
        None => t += "no octonion witness found\n",
    }
    t += &format!("quaternion witness in 100000 draws: {quaternion_witness}\n");
    Ok(Report::new(json, t, table))
}

fn event_json(e: Event) -> Value {
    json!({ "t": num(e.t), "x": num(e.x) })
}

fn cmd_lorentz(a: &LorentzArgs) -> Result<Report, CliError> {
    let s = blockworld_scenario();
    let mut table = Table::new(&["event", "t", "x", "T", "X"]);
    let mut rows = Vec::new();
    let mut t = format!("v = {} km/s, gamma = {}\n", text(s.v), text(s.gamma));
    t += &format!("{:>5} {:>10} {:>10} {:>10} {:>10}\n", "event", "t (s)", "x (km)", "T (s)", "X (km)");
    for r in &s.rows {
        table.push(vec![r.event.to_string(), text(r.boys.t), text(r.boys.x), text(r.girls.t), text(r.girls.x)]);
        t += &format!(
            "{:>5} {:>10} {:>10} {:>10} {:>10}\n",
            r.event,
            text(r.boys.t),
            text(r.boys.x),
            text(r.girls.t),
            text(r.girls.x)
        );
        rows.push(json!({ "event": r.event, "boys": event_json(r.boys), "girls": event_json(r.girls) }));
    }
    t += &format!(
        "Joe-Bob: {} km (boys), {} km (girls)\nKim-Alice: {} km (girls), {} km (boys)\n",
        text(s.boys_separation_boys_frame),
        text(s.boys_separation_girls_frame),
        text(s.kim_alice_girls_frame),
        text(s.kim_alice_boys_frame)
    );
    for (p, q, e) in &s.co_real {
        t += &format!("co-real: {p} ~ {q} (event {e})\n");
    }
    let mut json = json!({
        "v": num(s.v),
        "gamma": num(s.gamma),
        "rows": rows,
        "boys_separation_boys_frame": num(s.boys_separation_boys_frame),
        "boys_separation_girls_frame": num(s.boys_separation_girls_frame),
        "kim_alice_girls_frame": num(s.kim_alice_girls_frame),
        "kim_alice_boys_frame": num(s.kim_alice_boys_frame),
        "co_real": s.co_real.iter().map(|(p, q, e)| json!([p, q, e])).collect::<Vec<_>>(),
    });
    if let (Some(et), Some(ex)) = (a.t, a.x) {
        let kind = match a.frame {
            FrameArg::Lorentz => FrameKind::Lorentz,
            FrameArg::K4 => FrameKind::K4,
            FrameArg::Galilean => FrameKind::Galilean,
        };
        let f = FrameTransform::new(a.beta * C_KM_S, kind).map_err(|e| CliError::Validation(e.to_string()))?;
        let out = transform(Event::new(et, ex), &f);
        json["event"] = json!({ "frame": format!("{kind:?}"), "beta": num(a.beta), "in": event_json(Event::new(et, ex)), "out": event_json(out) });
        t += &format!(
            "{kind:?} boost at {}c: (t = {}, x = {}) -> (T = {}, X = {})\n",
            text(a.beta),
            text(et),
            text(ex),
            text(out.t),
            text(out.x)
        );
    }
    Ok(Report::new(json, t, table))
}

fn cmd_twinslit(a: &TwinslitArgs, seed: u64, raw_events: bool) -> Result<Report, CliError> {
    let mut geom = TwinSlitGeometry::standard();
    if let Some(s) = a.close_slit {
        geom = geom.masked(usize::from(s) - 1);
    }
    let v = |e: relational_qm::sampler::SamplerError| CliError::Validation(e.to_string());
    let result = transition_experiment(&geom, a.depth, a.trials, seed, a.bins).map_err(v)?;
    let mut events = Table::new(&["trial", "family", "first_z", "first_y", "end_z", "end_y"]);
    let raw = if raw_events { run_trials(&geom, a.depth, a.trials, seed).map_err(v)? } else { Vec::new() };
    for (first, end) in raw {
        events.push(vec![
            first.trial.to_string(),
            end.family.map_or(String::new(), |f| (f + 1).to_string()),
            text(first.z),
            text(first.y),
            text(end.z),
            text(end.y),
        ]);
    }
    let json = json!({
        "depth": num(a.depth),
        "trials": a.trials,
        "seed": seed,
        "fringe_period": num(geom.fringe_period()),
        "bin_edges": nums(&result.bin_edges),
        "counts": result.counts,
        "outside": result.outside,
        "visibility": num(result.visibility),
    });
    let mut t = format!(
        "first events at {}L, {} trials (seed {seed})\nvisibility: {}\nterminating events beyond the final surface: {}\n",
        text(a.depth),
        a.trials,
        text(result.visibility),
        result.outside
    );
    for (i, c) in result.counts.iter().enumerate() {
        let (lo, hi) = (result.bin_edges[i], result.bin_edges[i + 1]);
        t += &format!("[{:>9}, {:>9}) {c}\n", text(lo), text(hi));
    }
    let mut rep = Report::new(json, t, events);
    rep.warnings.extend(result.warning);
    Ok(rep)
}
