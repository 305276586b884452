//! Acceptance gate: fourteen criteria, one PASS/FAIL line each.
//!
//! By default the process exits 0 after reporting so the rest of the test
//! suite still runs; pass `--strict` to exit 1 when any criterion fails:
//!
//! ```text
//! cargo test -p relational-qm --test acceptance -- --strict
//! ```

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::Instant;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relational_qm::born::{
    factorial_identity, find_born_exponent, find_witness, norm_multiplicativity, octonion_nonassociativity_witness,
    odd_closed_form, phase_avg_integral, Algebra, WITNESS_GAP,
};
use relational_qm::kinematics::{transform, Event, FrameKind, FrameTransform, C_KM_S};
use relational_qm::lie::{
    ccr_check, contract, galilean_control, poincare_algebra, rat, weyl_phase, Coeff, ContractionParams, Gaussian,
    LieAlgebra, NilpotentRep, Symbol,
};
use relational_qm::linalg::{c64, ComplexMatrix};
use relational_qm::optics::{
    bell_correlations, mermin_local_bound, random_setting_agreement, run_bench, run_ifm, run_qle, Arm, SpinState,
};
use relational_qm::sampler::{chi_square_first_events, sample_first_events, transition_experiment, TwinSlitGeometry};
use relational_qm::symmetry::{
    averages_from_state, expectation, reconstruct_density, shipped_corpus, verify_orthogonality,
};
use relational_qm_cli::{parse_bench, parse_script, print_bench, run_captured};

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn bench_text(name: &str) -> String {
    std::fs::read_to_string(root().join("benches").join(format!("{name}.bench"))).expect("shipped bench script")
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

fn c1_lorentz() -> Verdict {
    let f = FrameTransform::new(0.6 * C_KM_S, FrameKind::Lorentz).map_err(|e| e.to_string())?;
    let e2 = transform(Event::new(0.0, 1000.0), &f);
    let e3 = transform(Event::new(0.002, 1000.0), &f);
    ensure(f.gamma() == 1.25, || format!("gamma = {}", f.gamma()))?;
    ensure(rel_close(e2.t, -0.0025, 1e-9) && rel_close(e2.x, 1250.0, 1e-9), || format!("event 2 -> {e2:?}"))?;
    ensure(e3.t.abs() <= 1e-9 * 0.002 && rel_close(e3.x, 800.0, 1e-9), || format!("event 3 -> {e3:?}"))?;
    Ok(format!("(0, 1000) -> ({}, {}), (0.002, 1000) -> ({}, {}), gamma 1.25", e2.t, e2.x, e3.t, e3.x))
}

fn levi_civita(m: usize, n: usize) -> (i64, usize) {
    let k = 6 - m - n;
    let sign = if [(1, 2), (2, 3), (3, 1)].contains(&(m, n)) { 1 } else { -1 };
    (sign, k)
}

/// The contracted algebra written out by hand.
fn expected_contraction(basis: &[String]) -> LieAlgebra {
    let labels: Vec<&str> = basis.iter().map(String::as_str).collect();
    let mut e = LieAlgebra::new(&labels);
    for m in 1..=3 {
        for n in 1..=3 {
            if m == n {
                let t = format!("T{m}");
                let k = format!("K{m}");
                let coeff = Coeff::monomial(Gaussian::int(0, -1), [0, -1, 0]);
                e.set_bracket(&t, &k, &[(coeff, "M")]).unwrap();
                continue;
            }
            let (s, k) = levi_civita(m, n);
            let z = Coeff::int(0, s);
            for fam in ["J", "T", "K"] {
                let target = format!("{fam}{k}");
                e.set_bracket(&format!("J{m}"), &format!("{fam}{n}"), &[(z.clone(), target.as_str())])
                    .unwrap();
            }
        }
    }
    e
}

fn contracted() -> Result<LieAlgebra, String> {
    contract(&poincare_algebra(), &ContractionParams::default()).map_err(|e| e.to_string())
}

fn c2_contraction() -> Verdict {
    let c = contracted()?;
    let e = expected_contraction(c.basis());
    let mut mismatches = Vec::new();
    for a in 0..c.dim() {
        for b in 0..c.dim() {
            if c.structure(a, b) != e.structure(a, b) {
                mismatches.push(format!("[{},{}]", c.basis()[a], c.basis()[b]));
            }
        }
    }
    ensure(mismatches.is_empty(), || format!("brackets differ: {}", mismatches.join(" ")))?;
    let jac = c.jacobi_violations();
    ensure(jac.is_empty(), || format!("Jacobi fails on {jac:?}"))?;
    let tk = c.coefficient("T1", "K1", "M").map_err(|e| e.to_string())?;
    Ok(format!("{} basis brackets match, [T1,K1] = {tk} * M, Jacobi exact", c.dim() * c.dim()))
}

fn c3_ccr() -> Verdict {
    let c = contracted()?;
    let g = contract(&galilean_control(), &ContractionParams::default()).map_err(|e| e.to_string())?;
    let mut wrong = Vec::new();
    for m in 1..=3 {
        for n in 1..=3 {
            let got = ccr_check(&c, m, n).map_err(|e| e.to_string())?;
            let want = if m == n {
                Coeff::monomial(Gaussian::int(0, -1), [0, 1, 0])
            } else {
                Coeff::zero()
            };
            if got != want {
                wrong.push(format!("[P{m},Q{n}] = {got} * I (want {want})"));
            }
            let control = ccr_check(&g, m, n).map_err(|e| e.to_string())?;
            ensure(control.is_zero(), || format!("control [P{m},Q{n}] = {control}"))?;
        }
    }
    ensure(wrong.is_empty(), || format!("{}; control gives 0", wrong.join("; ")))?;
    Ok("[P_m,Q_n] = -i*hbar delta_mn I; control gives 0".into())
}

fn c4_weyl() -> Verdict {
    let c = contracted()?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let draw = |rng: &mut ChaCha8Rng| (rng.random_range(1..40i64), rng.random_range(1..8i64));
        let (a, v, m, h) = (draw(&mut rng), draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let q = |(n, d): (i64, i64)| rat(n, d);
        let f = |(n, d): (i64, i64)| n as f64 / d as f64;
        let phase = weyl_phase(&c, &q(a), &q(v)).map_err(|e| e.to_string())?;
        let exact = phase.substitute(Symbol::Hbar, &q(h)).substitute(Symbol::Mass, &q(m));
        let (_, z) = exact.as_monomial().ok_or_else(|| format!("phase {exact} is not a single term"))?;
        let magnitude: BigRational = q(a) * q(v) * q(m) / q(h);
        ensure(z.norm_sqr() == &magnitude * &magnitude, || format!("|{exact}| != {magnitude}"))?;
        let params = ContractionParams::new(f(h), f(m)).map_err(|e| e.to_string())?;
        let numeric = NilpotentRep::new(params).weyl_phase(f(a), f(v));
        let target = f(a) * f(v) * f(m) / f(h);
        let err = (numeric.norm() - target).abs() / target.max(1.0);
        worst = worst.max(err);
        ensure(err < 1e-12, || format!("matrix phase {numeric} vs {target}"))?;
    }
    Ok(format!("10 triples exact; matrix cross-check worst relative error {worst:.1e}"))
}

fn c5_orthogonality() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for corpus in shipped_corpus() {
        for rep in &corpus.irreps {
            let r = verify_orthogonality(rep).map_err(|e| e.to_string())?;
            ensure(r < 1e-12, || format!("{} {}: residual {r:e}", corpus.group.name(), rep.name()))?;
            worst = worst.max(r);
            count += 1;
        }
    }
    Ok(format!("{count} irreps of Z2, Z4, S3, Q8; worst residual {worst:.1e}"))
}

fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim)
            .map(|_| c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-3 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

fn c6_density() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut recon, mut trace, mut herm) = (0f64, 0f64, 0f64);
    for corpus in shipped_corpus() {
        for rep in &corpus.irreps {
            for _ in 0..20 {
                let psi = random_state(&mut rng, rep.dim());
                let avgs = averages_from_state(rep, &psi).map_err(|e| e.to_string())?;
                let rho = reconstruct_density(rep, &avgs).map_err(|e| e.to_string())?;
                recon = recon.max(rho.matrix().max_abs_diff(&ComplexMatrix::outer(&psi, &psi)));
                herm = herm.max(rho.hermiticity_residual());
                for g in corpus.group.elements() {
                    let t = expectation(&rho, rep.matrix(g)).map_err(|e| e.to_string())?;
                    trace = trace.max((t - avgs.get(g).unwrap_or_default()).norm());
                }
            }
        }
    }
    ensure(recon < 1e-10 && trace < 1e-10 && herm < 1e-12, || {
        format!("reconstruction {recon:e}, trace {trace:e}, hermiticity {herm:e}")
    })?;
    Ok(format!("reconstruction {recon:.1e}, trace consistency {trace:.1e}, hermiticity {herm:.1e}"))
}

fn c7_mzi() -> Verdict {
    let run = |name: &str| -> Result<(Vec<f64>, Vec<Complex64>), String> {
        let cfg = parse_bench(&bench_text(name)).map_err(|d| d.to_string())?;
        let out = run_bench(&cfg).map_err(|e| e.to_string())?;
        Ok((out.probabilities, out.modes.amplitudes))
    };
    let (p11, _) = run("fig11")?;
    ensure(p11 == vec![1.0, 0.0], || format!("fig11 probabilities {p11:?}"))?;
    let quarter = [0.25, 0.25, 0.5];
    for name in ["fig12a", "fig12b"] {
        let (p, _) = run(name)?;
        ensure(p.iter().zip(quarter).all(|(a, b)| (a - b).abs() < 1e-12), || format!("{name} probabilities {p:?}"))?;
    }
    let (_, amps) = run("fig12b")?;
    let want = [0.5, 0.5, FRAC_1_SQRT_2];
    ensure(amps.iter().zip(want).all(|(z, w)| (z - w).norm() < 1e-12), || format!("fig12b amplitudes {amps:?}"))?;
    Ok("fig11 (1, 0); fig12a and fig12b (1/4, 1/4, 1/2); fig12b amplitudes (1/2, 1/2, 1/sqrt2)".into())
}

// Brute-force tensor model: atoms ⊗ photon modes, built from projectors.

fn swap(dim: usize, a: usize, b: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(dim);
    m[(a, a)] = c64(0.0, 0.0);
    m[(b, b)] = c64(0.0, 0.0);
    m[(a, b)] = c64(1.0, 0.0);
    m[(b, a)] = c64(1.0, 0.0);
    m
}

fn factor(n_atoms: usize, atom: usize, op: &ComplexMatrix) -> ComplexMatrix {
    (0..n_atoms).fold(ComplexMatrix::identity(1), |acc, i| {
        acc.kron(&if i == atom { op.clone() } else { ComplexMatrix::identity(2) })
    })
}

/// `boxes`: (atom, blocking Z bit, photon mode). Returns the final state.
fn tensor_model(n_atoms: usize, boxes: &[(usize, usize, usize)]) -> Vec<Complex64> {
    let dim = 2 + boxes.len();
    let s = FRAC_1_SQRT_2;
    let q = ComplexMatrix::from_real_rows(&[&[s, -s], &[s, s]]).direct_sum(&ComplexMatrix::identity(dim - 2));
    let atoms_id = ComplexMatrix::identity(1 << n_atoms);
    let mut u = atoms_id.kron(&q);
    u = &atoms_id.kron(&swap(dim, 0, 1)) * &u;
    for (k, &(atom, bit, mode)) in boxes.iter().enumerate() {
        let mut p = ComplexMatrix::zeros(2);
        p[(bit, bit)] = c64(1.0, 0.0);
        let mut p_off = ComplexMatrix::zeros(2);
        p_off[(1 - bit, 1 - bit)] = c64(1.0, 0.0);
        let gate = &factor(n_atoms, atom, &p).kron(&swap(dim, mode, 2 + k))
            + &factor(n_atoms, atom, &p_off).kron(&ComplexMatrix::identity(dim));
        u = &gate * &u;
    }
    u = &atoms_id.kron(&q.adjoint()) * &u;
    let mut state = vec![c64(1.0, 0.0)];
    for _ in 0..n_atoms {
        state = state.iter().flat_map(|a| [a * s, a * s]).collect();
    }
    let photon: Vec<Complex64> = (0..dim).map(|i| c64(if i == 0 { 1.0 } else { 0.0 }, 0.0)).collect();
    let full: Vec<Complex64> = state.iter().flat_map(|a| photon.iter().map(move |b| a * b)).collect();
    u.apply(&full)
}

fn channel_p(amps: &[Complex64], dim: usize, ch: usize) -> f64 {
    amps.iter().skip(ch).step_by(dim).map(|z| z.norm_sqr()).sum()
}

fn c8_ifm() -> Verdict {
    let oracle = tensor_model(1, &[(0, 0, 1)]);
    let (o1, o2) = (channel_p(&oracle, 3, 0), channel_p(&oracle, 3, 1));
    ensure((o1 - 0.625).abs() < 1e-12 && (o2 - 0.125).abs() < 1e-12, || format!("oracle gives {o1}, {o2}"))?;
    let r = run_ifm(&SpinState::x_plus(), Arm::Lower).map_err(|e| e.to_string())?;
    let b = &r.bench;
    ensure((b.p_d2 - o2).abs() < 1e-12 && (b.p_d1 - o1).abs() < 1e-12, || {
        format!("P(D1) = {}, P(D2) = {}", b.p_d1, b.p_d2)
    })?;
    let f = b.post_d2.as_ref().map_or(0.0, |s| s.fidelity(&SpinState::z_plus()));
    ensure((f - 1.0).abs() < 1e-12, || format!("post-D2 fidelity with Z+ {f}"))?;
    ensure((r.x_plus_after_d2 - 0.5).abs() < 1e-12, || format!("P(X+) = {}", r.x_plus_after_d2))?;
    Ok(format!("P(D2) = {}, P(D1) = {} (tensor oracle agrees); post-D2 |Z+>, P(X+) = {}", b.p_d2, b.p_d1, r.x_plus_after_d2))
}

fn c9_qle() -> Verdict {
    let oracle = tensor_model(2, &[(0, 0, 1), (1, 1, 0)]);
    let r = run_qle();
    let o2 = channel_p(&oracle, 4, 1);
    ensure((r.p_d2 - 0.125).abs() < 1e-12 && (o2 - r.p_d2).abs() < 1e-12, || {
        format!("P(D2) = {} (oracle {o2})", r.p_d2)
    })?;
    // configuration (Z+, Z-) puts both boxes in the photon's way
    let both = r.outcome.modes.slice(1)[..2].iter().map(|z| z.norm_sqr()).sum::<f64>();
    ensure(both == 0.0, || format!("both-blocked branch reaches D1/D2 with weight {both}"))?;
    let post = r.post_d2.as_ref().ok_or("no D2 state")?;
    let f = post.fidelity(&SpinState::epr());
    let shown: Vec<String> = post.amplitudes().iter().map(|z| format!("{:.6}", z.re)).collect();
    ensure((f - 1.0).abs() < 1e-10, || {
        format!(
            "fidelity with (|Z+Z+> + |Z-Z->)/sqrt2 is {f:.3}; post-D2 state ({}) [P(D2) = 1/8 and both-blocked = 0 hold]",
            shown.join(", ")
        )
    })?;
    Ok(format!("fidelity {f}, P(D2) = 1/8, both-blocked 0"))
}

fn c10_bell() -> Verdict {
    let epr = SpinState::epr();
    let e = |x: relational_qm::optics::OpticsError| x.to_string();
    for t in [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0] {
        let same = bell_correlations(&epr, t, t).map_err(e)?;
        ensure((same - 1.0).abs() < 1e-12, || format!("same setting {t}: {same}"))?;
    }
    let p120 = bell_correlations(&epr, 0.0, 2.0 * PI / 3.0).map_err(e)?;
    ensure((p120 - 0.25).abs() < 1e-12, || format!("120 degrees: {p120}"))?;
    let random = random_setting_agreement(&epr).map_err(e)?;
    // every instruction set is a 3-bit outcome table shared by both particles
    let bound = (0u32..8)
        .map(|set| {
            (0..3)
                .flat_map(|a| (0..3).map(move |b| (a, b)))
                .filter(|&(a, b)| (set >> a) & 1 == (set >> b) & 1)
                .count()
        })
        .min()
        .unwrap_or(0);
    ensure(bound == 5 && mermin_local_bound() == (5, 9), || format!("enumerated bound {bound}/9"))?;
    ensure((random - 0.5).abs() < 1e-12 && random < 5.0 / 9.0, || format!("random settings {random}"))?;
    Ok(format!("same 1, 120 degrees {p120}, random {random} < 5/9 (enumerated)"))
}

fn c11_born() -> Verdict {
    let found = find_born_exponent(20, 1e-6);
    ensure(found == vec![2], || format!("exponents {found:?}"))?;
    let (i4, i6) = (phase_avg_integral(4), phase_avg_integral(6));
    ensure((i4 - 3.0).abs() < 1e-9 && (i4 - factorial_identity(2)).abs() < 1e-9, || format!("I(4) = {i4}"))?;
    ensure((i6 - 10.0).abs() < 1e-9 && (i6 - factorial_identity(3)).abs() < 1e-9, || format!("I(6) = {i6}"))?;
    let mut worst: f64 = 0.0;
    for m in 0..10u64 {
        let d = (phase_avg_integral(2 * m as u32 + 1) - odd_closed_form(m)).abs();
        worst = worst.max(d);
    }
    ensure(worst < 1e-9, || format!("odd closed form off by {worst:e}"))?;
    Ok(format!("exponents {{2}}; I(4) = {i4:.12}, I(6) = {i6:.12}; odd closed form within {worst:.1e}"))
}

fn c12_division() -> Verdict {
    let mut res = Vec::new();
    for alg in Algebra::ALL {
        let r = norm_multiplicativity(alg, 1000, 12);
        ensure(r < 1e-10, || format!("{} residual {r:e}", alg.name()))?;
        res.push(format!("{} {r:.1e}", alg.name()));
    }
    let w = octonion_nonassociativity_witness(12).map_err(|e| e.to_string())?;
    ensure(w.gap() > WITNESS_GAP, || format!("witness gap {}", w.gap()))?;
    let q = find_witness(Algebra::Quaternion, 12, 100_000);
    ensure(q.is_none(), || "quaternion witness found".into())?;
    Ok(format!("norm residuals {}; octonion gap {:.3}; no quaternion witness in 1e5 draws", res.join(", "), w.gap()))
}

fn c13_sampler() -> Verdict {
    let g = TwinSlitGeometry::standard();
    let z = 0.95 * g.length();
    let events = sample_first_events(&g, z, 100_000, 13).map_err(|e| e.to_string())?;
    let (chi2, p) = chi_square_first_events(&g, z, &events, 100).map_err(|e| e.to_string())?;
    ensure(p > 0.01, || format!("chi2 = {chi2:.1}, p = {p:.4}"))?;
    let depths = [0.05, 0.06552, 0.095, 0.17273, 0.95];
    let mut v = Vec::new();
    for d in depths {
        v.push(transition_experiment(&g, d, 100_000, 13, None).map_err(|e| e.to_string())?.visibility);
    }
    ensure(v[4] > 0.8, || format!("V(0.95L) = {:.3}", v[4]))?;
    ensure(v[0] < 0.2, || format!("V(0.05L) = {:.3}", v[0]))?;
    ensure(v.windows(2).all(|w| w[1] >= w[0]), || format!("not monotone: {v:?}"))?;
    let vs: Vec<String> = v.iter().map(|x| format!("{x:.3}")).collect();
    Ok(format!("chi2 p = {p:.3}; V at 0.05..0.95 L: {}", vs.join(" ")))
}

const VOCAB: [&str; 24] = [
    "source", "beamsplitter", "mirror", "block", "boxes", "detector", "arm", "state", "upper", "lower", "Z+", "Z-",
    "D1", "D2", "D3", "laser", "BS", "M", "atom", "#", "\n", "\n", "\t", "",
];

fn random_input(rng: &mut ChaCha8Rng) -> String {
    match rng.random_range(0..3) {
        0 => (0..rng.random_range(0..40))
            .map(|_| VOCAB[rng.random_range(0..VOCAB.len())])
            .collect::<Vec<_>>()
            .join(" "),
        1 => {
            let bytes: Vec<u8> = (0..rng.random_range(0..120)).map(|_| rng.random()).collect();
            String::from_utf8_lossy(&bytes).into_owned()
        }
        _ => {
            // perturb a shipped script
            let mut lines: Vec<String> = bench_text(["fig11", "fig12a", "fig13", "fig14"][rng.random_range(0..4)])
                .lines()
                .map(str::to_string)
                .collect();
            for _ in 0..rng.random_range(0..3) {
                let i = rng.random_range(0..lines.len());
                match rng.random_range(0..3) {
                    0 => {
                        lines.remove(i);
                    }
                    1 => lines.insert(i, VOCAB[rng.random_range(0..VOCAB.len())].to_string()),
                    _ => {
                        let j = rng.random_range(0..lines.len());
                        lines.swap(i, j);
                    }
                }
                if lines.is_empty() {
                    break;
                }
            }
            lines.join("\n")
        }
    }
}

fn c14_parser() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let (mut crashes, mut accepted, mut roundtrip_fail) = (0, 0, 0);
    for _ in 0..10_000 {
        let input = random_input(&mut rng);
        match catch_unwind(|| parse_script(&input)) {
            Err(_) => crashes += 1,
            Ok(Ok(script)) => {
                accepted += 1;
                if parse_bench(&print_bench(&script.config)).as_ref() != Ok(&script.config) {
                    roundtrip_fail += 1;
                }
            }
            Ok(Err(_)) => {}
        }
    }
    ensure(crashes == 0 && roundtrip_fail == 0, || format!("{crashes} crashes, {roundtrip_fail} round-trip failures"))?;
    for name in ["fig11", "fig12a", "fig12b", "fig13", "fig14"] {
        let path = root().join("benches").join(format!("{name}.bench"));
        let golden = std::fs::read_to_string(
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json")),
        )
        .map_err(|e| format!("{name}: {e}"))?;
        for _ in 0..2 {
            let (code, out, err) = run_captured(["relational-qm", "mzi", path.to_str().unwrap_or_default(), "--json"]);
            ensure(code == 0, || format!("{name}: exit {code}: {err}"))?;
            ensure(out == golden, || format!("{name}: output differs from golden file"))?;
        }
    }
    Ok(format!("10000 inputs, 0 crashes, {accepted} accepted and round-tripped; 5 golden files identical"))
}

fn main() {
    let strict = std::env::args().any(|a| a == "--strict");
    let criteria: [(&str, fn() -> Verdict); 14] = [
        ("Lorentz numbers", c1_lorentz),
        ("contraction brackets and Jacobi", c2_contraction),
        ("canonical commutator", c3_ccr),
        ("Weyl phase magnitude", c4_weyl),
        ("irrep orthogonality", c5_orthogonality),
        ("density round trip", c6_density),
        ("Mach-Zehnder benches", c7_mzi),
        ("interaction-free measurement", c8_ifm),
        ("two-atom entanglement", c9_qle),
        ("Bell agreement", c10_bell),
        ("Born exponent", c11_born),
        ("division algebras", c12_division),
        ("relational sampler", c13_sampler),
        ("parser fuzz and golden files", c14_parser),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    std::panic::set_hook(Box::new(|_| {}));
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let ms = t.elapsed().as_millis();
        match verdict {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({ms} ms)", i + 1),
            Err(detail) => {
                println!("criterion {:>2} FAIL  {name}: {detail} ({ms} ms)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    let _ = std::panic::take_hook();
    println!(
        "acceptance: {}/{} passed in {:.1} s{}",
        criteria.len() - failed.len(),
        criteria.len(),
        start.elapsed().as_secs_f64(),
        if failed.is_empty() { String::new() } else { format!("; failing: {failed:?}") }
    );
    if strict && !failed.is_empty() {
        std::process::exit(1);
    }
}
