use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use padic_voa::fock::{grade_basis, HeisenbergState, Partition};
use padic_voa::kummer::family_index;
use padic_voa::linear::Monomial;
use padic_voa::modes::{mode_action, zero_mode};
use padic_voa::qseries::character;
use padic_voa::scalar::{c_row, int, rat, Rational};
use padic_voa::virasoro::{pbw_basis_upto, Virasoro, VirasoroState};

fn arb_state(max_part: u32, max_len: usize) -> impl Strategy<Value = HeisenbergState> {
    let term = (prop::collection::vec(1..=max_part, 0..=max_len), -30i64..30, 1i64..20);
    prop::collection::vec(term, 1..4).prop_map(|terms| {
        HeisenbergState::from_terms(terms.into_iter().map(|(parts, n, d)| (Partition::new(parts), rat(n, d))))
    })
}

fn arb_scalar() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..15).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn modes_are_bilinear(
        u in arb_state(3, 2), v in arb_state(3, 2), b in arb_state(2, 2),
        alpha in arb_scalar(), beta in arb_scalar(), n in -3i64..3,
    ) {
        let combo = &u.scale(&alpha) + &v.scale(&beta);
        let lhs = mode_action(&combo, n, &b);
        let rhs = &mode_action(&u, n, &b).scale(&alpha) + &mode_action(&v, n, &b).scale(&beta);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn modes_shift_grade(parts in prop::collection::vec(1u32..4, 0..3), b in arb_state(3, 2), n in -3i64..4) {
        let v = HeisenbergState::monomial(Partition::new(parts));
        let wv = v.max_weight().unwrap() as i64;
        for (k, c) in b.iter() {
            let image = mode_action(&v, n, &HeisenbergState::term(k.clone(), c.clone()));
            let target = wv + k.weight() as i64 - n - 1;
            prop_assert!(image.iter().all(|(m, _)| m.weight() as i64 == target));
        }
    }

    #[test]
    fn zero_mode_preserves_grade(v in arb_state(3, 2), g in 0u32..5) {
        for b in grade_basis(g) {
            let image = zero_mode(&v, &HeisenbergState::monomial(b));
            prop_assert!(image.iter().all(|(m, _)| m.weight() == g));
        }
    }

    #[test]
    fn character_is_linear(u in arb_state(3, 2), v in arb_state(3, 2), alpha in arb_scalar(), beta in arb_scalar()) {
        let combo = &u.scale(&alpha) + &v.scale(&beta);
        let rhs = character(&u, 5).scale(&alpha).add(&character(&v, 5).scale(&beta)).unwrap();
        prop_assert_eq!(character(&combo, 5), rhs);
    }

    #[test]
    fn virasoro_grading(idx in 0usize..17, n in -4i64..5, c in -3i64..13) {
        let words = pbw_basis_upto(6);
        let word = words[idx % words.len()].clone();
        let vir = Virasoro::new(int(c));
        let s = VirasoroState::monomial(word.clone());
        prop_assert_eq!(vir.l_action(0, &s), s.scale(&int(word.weight() as i64)));
        let image = vir.l_action(n, &s);
        prop_assert!(image.iter().all(|(w, _)| w.weight() as i64 == word.weight() as i64 - n));
        prop_assert!(image.is_integral());
    }
}

#[test]
fn stirling_coefficients_satisfy_kummer_congruences() {
    for p in [3u64, 5, 7] {
        for a in 0..=2u32 {
            let modulus = BigInt::from(p).pow(a + 1);
            let r = family_index(p, a) as u32;
            let row_r = c_row(r);
            for b in a..=2 {
                let s = family_index(p, b) as u32;
                let row_s = c_row(s);
                for (m, cs) in row_s.iter().enumerate() {
                    let cr = row_r.get(m).cloned().unwrap_or_default();
                    let diff = &cr - cs;
                    assert!(diff.mod_floor(&modulus) == BigInt::from(0), "p={p} a={a} b={b} m={m}");
                }
            }
        }
    }
}
