use proptest::prelude::*;

use padic_voa::fock::{HeisenbergState, Partition};
use padic_voa::scalar::rat;
use padic_voa_cli::{parse_state, ExprError};

fn arb_state() -> impl Strategy<Value = HeisenbergState> {
    let term = (prop::collection::vec(1u32..6, 0..4), -40i64..40, 1i64..30);
    prop::collection::vec(term, 0..5).prop_map(|terms| {
        HeisenbergState::from_terms(terms.into_iter().map(|(parts, n, d)| (Partition::new(parts), rat(n, d))))
    })
}

proptest! {
    #[test]
    fn rendered_states_parse_back(s in arb_state()) {
        let text = s.to_string();
        let back = parse_state(&text).unwrap().to_heisenberg().unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn canonical_rendering_is_stable(s in arb_state()) {
        let once = parse_state(&s.to_string()).unwrap().to_heisenberg().unwrap().to_string();
        prop_assert_eq!(once, s.to_string());
    }

    #[test]
    fn expression_rendering_is_the_identity_on_canonical_text(s in arb_state()) {
        let text = s.to_string();
        let expr = parse_state(&text).unwrap();
        prop_assert_eq!(expr.to_string(), text.clone());
        prop_assert_eq!(parse_state(&expr.to_string()).unwrap(), expr);
    }
}

#[test]
fn corpus() {
    let cases = [
        ("h(-1)^2 vac", "h(-1)^2 |0>"),
        ("1/2 h(-3)h(-1) vac - 1/12 vac", "1/2 h(-3) h(-1) |0> - 1/12 |0>"),
        ("h(-1) h(-2) vac", "h(-2) h(-1) |0>"),
        ("2/4 vac + 1/2 vac", "|0>"),
        ("-h(-1) vac", "-h(-1) |0>"),
        ("h(-1) vac - h(-1) vac", "0 |0>"),
        ("L(-2) vac", "1/2 h(-1)^2 |0>"),
        ("L(0) h(-3) vac", "3 h(-3) |0>"),
    ];
    for (input, canonical) in cases {
        let s = parse_state(input).unwrap().to_heisenberg().unwrap();
        assert_eq!(s.to_string(), canonical, "{input}");
    }
}

#[test]
fn syntax_errors_report_offsets() {
    let offset = |text: &str| match parse_state(text) {
        Err(ExprError::Syntax { offset, .. }) => Some(offset),
        _ => None,
    };
    assert_eq!(offset("h(-1 vac"), Some(5));
    assert_eq!(offset("h-1) vac"), Some(1));
    assert_eq!(offset("3 h(-1) vac +"), Some(13));
    assert_eq!(offset("x vac"), Some(0));
    assert_eq!(offset("h(-1)^ vac"), Some(7));
}
