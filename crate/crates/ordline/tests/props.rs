//! Property tests for the algebraic kernels.

use proptest::prelude::*;

use ordline::pl::{evaluate_word, PLHomeo};
use ordline::rat::{rat, Rat};
use ordline::word::ReducedWord;

fn raw_letters() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..3, -4i64..=4), 0..40)
}

fn reduced_word() -> impl Strategy<Value = ReducedWord> {
    raw_letters().prop_map(|raw| ReducedWord::reduce(&raw, 3))
}

fn rational() -> impl Strategy<Value = Rat> {
    (-400i64..400, 1i64..40).prop_map(|(p, q)| rat(p, q))
}

fn pl_map() -> impl Strategy<Value = PLHomeo> {
    (
        prop::collection::vec((1i64..8, 1i64..4), 1..4),
        rational(),
        rational(),
        prop::sample::select(vec![rat(1, 2), rat(1, 1), rat(2, 1), rat(3, 2)]),
        prop::sample::select(vec![rat(1, 2), rat(1, 1), rat(2, 1), rat(5, 3)]),
    )
        .prop_map(|(steps, x0, y0, ls, rs)| {
            let mut knots = Vec::with_capacity(steps.len() + 1);
            let mut x = x0;
            let mut y = y0;
            knots.push((x.clone(), y.clone()));
            for (dx, dy) in steps {
                x += rat(dx, 2);
                y += rat(dy, 3);
                knots.push((x.clone(), y.clone()));
            }
            PLHomeo::from_knots(knots, ls, rs).unwrap()
        })
}

proptest! {
    #[test]
    fn reduce_is_idempotent(raw in raw_letters()) {
        let once = ReducedWord::reduce(&raw, 3);
        let again = ReducedWord::reduce(
            &once.syllables().iter().map(|s| (s.gen, s.exp)).collect::<Vec<_>>(),
            3,
        );
        prop_assert_eq!(once, again);
    }

    #[test]
    fn words_cancel_their_inverses(u in reduced_word()) {
        prop_assert!(u.concat(&u.inverse()).is_identity());
        prop_assert!(u.inverse().concat(&u).is_identity());
    }

    #[test]
    fn concatenation_is_associative(
        u in reduced_word(),
        v in reduced_word(),
        t in reduced_word(),
    ) {
        prop_assert_eq!(u.concat(&v).concat(&t), u.concat(&v.concat(&t)));
    }

    #[test]
    fn display_parse_round_trip(u in reduced_word()) {
        prop_assert_eq!(ReducedWord::parse(&u.to_string()).unwrap(), u);
    }

    #[test]
    fn word_evaluation_is_a_homomorphism(
        u in reduced_word(),
        v in reduced_word(),
        f in pl_map(),
        g in pl_map(),
        h in pl_map(),
    ) {
        let maps = [f, g, h];
        let left = evaluate_word(&u.concat(&v), &maps).unwrap();
        let right = evaluate_word(&u, &maps).unwrap().compose(&evaluate_word(&v, &maps).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composition_inverts_exactly(f in pl_map(), x in rational()) {
        prop_assert_eq!(f.evaluate_inverse(&f.evaluate(&x)), x.clone());
        prop_assert!(f.compose(&f.inverse()).is_identity());
    }

    #[test]
    fn map_json_round_trip(f in pl_map()) {
        let v = ordline::fixture::plhomeo_to_json(&f);
        prop_assert_eq!(ordline::fixture::plhomeo_from_json(&v).unwrap(), f);
    }

    #[test]
    fn violation_construction_postcondition(raw in prop::collection::vec((0usize..2, -3i64..=3), 1..12)) {
        use num_traits::Signed;
        use ordline::order::{construct_violation, ViolationError};
        let word = ReducedWord::reduce(&raw, 2);
        if word.is_identity() {
            return Ok(());
        }
        match construct_violation(&word) {
            Ok(witness) => {
                let maps = [witness.f.clone(), witness.g.clone()];
                let zero = Rat::from_integer(0.into());
                prop_assert!(witness.f.evaluate(&zero).is_positive());
                prop_assert!(witness.g.evaluate(&zero).is_positive());
                let image = ordline::pl::evaluate_word_at(&word, &maps, &zero).unwrap();
                prop_assert!(image.is_negative());
            }
            Err(ViolationError::AllPositive) => {
                prop_assert!(word.syllables().iter().all(|s| s.exp > 0));
            }
            Err(e) => return Err(TestCaseError::fail(format!("unexpected error {e}"))),
        }
    }
}
