use proptest::prelude::*;

use relational_qm::optics::run_bench;
use relational_qm_cli::{parse_bench, parse_script, print_bench};

const VOCAB: [&str; 22] = [
    "source", "beamsplitter", "mirror", "block", "boxes", "detector", "arm", "state", "upper", "lower", "Z+",
    "Z-", "D1", "D2", "D3", "laser", "BS1", "a", "#", "\n", "\n", "\n",
];

fn token_stream() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(VOCAB.to_vec()), 0..60).prop_map(|toks| toks.join(" "))
}

/// Lines drawn from well-formed statements, so some inputs validate.
fn statement_stream() -> impl Strategy<Value = String> {
    let stmt = prop_oneof![
        Just("source laser".to_string()),
        Just("beamsplitter BS".to_string()),
        prop::sample::select(vec!["upper", "lower"]).prop_map(|a| format!("mirror M arm {a}")),
        prop::sample::select(vec!["upper", "lower"]).prop_map(|a| format!("block arm {a}")),
        (0..3u8, prop::sample::select(vec!["upper", "lower"]), prop::sample::select(vec!["Z+", "Z-"]))
            .prop_map(|(n, a, s)| format!("boxes atom{n} arm {a} state {s}")),
        prop::sample::select(vec!["D1", "D2", "D3"]).prop_map(|d| format!("detector {d}")),
    ];
    prop::collection::vec(stmt, 0..14).prop_map(|l| l.join("\n"))
}

fn check(text: &str) -> Result<(), TestCaseError> {
    match parse_script(text) {
        Ok(script) => {
            let printed = print_bench(&script.config);
            prop_assert_eq!(parse_bench(&printed).unwrap(), script.config.clone());
            let out = run_bench(&script.config).unwrap();
            prop_assert!((out.probabilities.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        Err(d) => {
            prop_assert!(d.span.line >= 1 && d.span.column >= 1);
            prop_assert!(!d.message.is_empty());
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4000))]

    #[test]
    fn random_tokens_never_crash(text in token_stream()) {
        check(&text)?;
    }

    #[test]
    fn random_statements_round_trip(text in statement_stream()) {
        check(&text)?;
    }

    #[test]
    fn arbitrary_text_never_crashes(text in "\\PC{0,200}") {
        check(&text)?;
    }
}
