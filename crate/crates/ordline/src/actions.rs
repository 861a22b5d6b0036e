//! Named stock actions used across tests, examples and shipped fixtures.

use crate::classify::MarkedAction;
use crate::lift::{LineMap, PLLift};
use crate::pl::PLHomeo;
use crate::rat::{rat, rat_i};

/// `a: x+1`, `b: x+1/3`: a pair of translations with the discrete
/// invariant progression `(1/3)Z`.
pub fn translations_pair() -> [PLHomeo; 2] {
    [PLHomeo::translation(rat_i(1)), PLHomeo::translation(rat(1, 3))]
}

/// Two copies of `x+1`: the marked action is maximally non-faithful, so word
/// comparison exercises the tiebreak.
pub fn abelian_unit_pair() -> [PLHomeo; 2] {
    [PLHomeo::translation(rat_i(1)), PLHomeo::translation(rat_i(1))]
}

/// The classical interval pair: `a` squeezes `[0, 1]` toward 0 with slopes
/// 1/2, 1, 2; `b` is the same shape compressed into `[1/2, 1]`. Both are the
/// identity outside `[0, 1]`.
pub fn thompson_pair() -> [PLHomeo; 2] {
    let a = PLHomeo::from_knots(
        vec![
            (rat_i(0), rat_i(0)),
            (rat(1, 2), rat(1, 4)),
            (rat(3, 4), rat(1, 2)),
            (rat_i(1), rat_i(1)),
        ],
        rat_i(1),
        rat_i(1),
    )
    .unwrap();
    let b = PLHomeo::from_knots(
        vec![
            (rat(1, 2), rat(1, 2)),
            (rat(3, 4), rat(5, 8)),
            (rat(7, 8), rat(3, 4)),
            (rat_i(1), rat_i(1)),
        ],
        rat_i(1),
        rat_i(1),
    )
    .unwrap();
    [a, b]
}

/// The affine solvable action `a: x+1`, `b: 2x` (so `b a b^-1 = a^2`).
pub fn bs12_pair() -> [PLHomeo; 2] {
    [PLHomeo::translation(rat_i(1)), PLHomeo::affine(rat_i(2), rat_i(0))]
}

/// Degree-one lifts of two circle maps with disjoint, alternating pairs of
/// transversal fixed points (`0, 1/2` for the first, `1/4, 3/4` for the
/// second, mod 1): the lift action commutes with `x -> x+1`.
pub fn schottky_lift_pair() -> [PLLift; 2] {
    let f = PLLift::new(
        rat_i(1),
        vec![
            (rat_i(0), rat_i(0)),
            (rat(1, 4), rat(3, 8)),
            (rat(1, 2), rat(1, 2)),
            (rat(3, 4), rat(5, 8)),
        ],
    )
    .unwrap();
    let g = PLLift::new(
        rat_i(1),
        vec![
            (rat_i(0), rat(-1, 8)),
            (rat(1, 4), rat(1, 4)),
            (rat(1, 2), rat(5, 8)),
            (rat(3, 4), rat(3, 4)),
        ],
    )
    .unwrap();
    [f, g]
}

/// A translation plus a compactly supported bump that moves the origin:
/// falls through every sufficient test of the classifier. (A bump fixing all
/// integers would instead leave the discrete orbit Z and classify as type I.)
pub fn mixed_inconclusive_pair() -> [PLHomeo; 2] {
    let bump = PLHomeo::from_knots(
        vec![
            (rat(-1, 2), rat(-1, 2)),
            (rat_i(0), rat(1, 4)),
            (rat(3, 2), rat(3, 2)),
        ],
        rat_i(1),
        rat_i(1),
    )
    .unwrap();
    [PLHomeo::translation(rat_i(1)), bump]
}

pub fn translations_action(depth: u32) -> MarkedAction {
    let [a, b] = translations_pair();
    MarkedAction::new(
        vec![("a".into(), LineMap::Pl(a)), ("b".into(), LineMap::Pl(b))],
        depth,
    )
}

pub fn bs12_action(depth: u32) -> MarkedAction {
    let [a, b] = bs12_pair();
    MarkedAction::new(
        vec![("a".into(), LineMap::Pl(a)), ("b".into(), LineMap::Pl(b))],
        depth,
    )
}

pub fn schottky_lift_action(depth: u32) -> MarkedAction {
    let [a, b] = schottky_lift_pair();
    MarkedAction::new(
        vec![("a".into(), LineMap::Lift(a)), ("b".into(), LineMap::Lift(b))],
        depth,
    )
}

pub fn mixed_inconclusive_action(depth: u32) -> MarkedAction {
    let [a, b] = mixed_inconclusive_pair();
    MarkedAction::new(
        vec![("a".into(), LineMap::Pl(a)), ("b".into(), LineMap::Pl(b))],
        depth,
    )
}
