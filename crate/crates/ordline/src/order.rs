//! Left-orders on words induced by a marked PL action of the line together
//! with an ordered sequence of reference points, and the order-theoretic
//! machinery built on them: the order-violating pair construction, W-order
//! checking on balls, the conjugacy action, the agreement metric, and
//! resilient-pair search.
//!
//! Comparison rule: two words are compared by evaluating their maps at the
//! reference points in order; the first point where the images differ
//! decides. Words acting by the identical map are separated by a convex
//! extension, a fixed auxiliary left-order on the free group: first the
//! lexicographic order pulled back from the free 2-step nilpotent quotient
//! (left-invariant and conjugation-invariant, total up to the third lower
//! central term), then the dynamical order of the certified reference action
//! from [`crate::witness`], and as a final formal resort shortlex. Every
//! comparison in the shipped corpora is decided before the last level.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::pl::{evaluate_word, evaluate_word_at, PLHomeo};
use crate::rat::{rat, rat_i, rationals_by_height, Rat};
use crate::word::{
    decompose_for_construction, enumerate_ball, ReducedWord, Syllable, WordError,
};

/// How a comparison was decided.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Decision {
    IdenticalWords,
    /// Decided at the `index`-th reference point of the sequence.
    RefPoint { index: usize, point: Rat },
    TieBreak(TieLevel),
}

/// Levels of the convex-extension tiebreak.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TieLevel {
    /// Lexicographic order on the free 2-step nilpotent quotient.
    Nilpotent,
    /// Dynamical order of the certified reference action.
    AuxAction,
    /// Formal last resort; not left-invariant, never reached in practice.
    Shortlex,
}

impl fmt::Display for TieLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieLevel::Nilpotent => write!(f, "nilpotent"),
            TieLevel::AuxAction => write!(f, "aux-action"),
            TieLevel::Shortlex => write!(f, "shortlex"),
        }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decision::IdenticalWords => write!(f, "identical words"),
            Decision::RefPoint { index, point } => {
                write!(f, "reference point #{index} = {}", crate::rat::fmt_rat(point))
            }
            Decision::TieBreak(level) => write!(f, "{level} tiebreak"),
        }
    }
}

/// Image of a word in the free 2-step nilpotent group on two generators,
/// `a -> (1,0,0)`, `b -> (0,1,0)` with `(x,y,z)(x',y',z') = (x+x', y+y',
/// z+z'+x y')`. Generators beyond the second fold into the second coordinate,
/// which keeps the map a homomorphism on two-letter words (the only place
/// ties can occur) and still separates many longer-alphabet words.
pub fn nilpotent_key(w: &ReducedWord) -> (i64, i64, i64) {
    let mut x = 0i64;
    let mut y = 0i64;
    let mut z = 0i64;
    for s in w.syllables() {
        if s.gen == 0 {
            x += s.exp;
        } else {
            y += s.exp;
            z += x * s.exp;
        }
    }
    (x, y, z)
}

/// A left-order presentation: a marked action plus reference points.
#[derive(Clone, Debug)]
pub struct DynOrder {
    action: Vec<PLHomeo>,
    /// Explicit reference points scanned before the default enumeration.
    refpoints: Vec<Rat>,
}

impl DynOrder {
    /// Order induced by the action with the default rational reference
    /// sequence `0, 1, -1, 1/2, -1/2, 2, -2, ...`.
    pub fn new(action: Vec<PLHomeo>) -> Self {
        assert!(!action.is_empty());
        DynOrder { action, refpoints: Vec::new() }
    }

    pub fn with_refpoints(action: Vec<PLHomeo>, refpoints: Vec<Rat>) -> Self {
        assert!(!action.is_empty());
        DynOrder { action, refpoints }
    }

    pub fn action(&self) -> &[PLHomeo] {
        &self.action
    }

    pub fn alphabet(&self) -> usize {
        self.action.len()
    }

    /// The full reference sequence: the explicit points, then the default
    /// enumeration of the rationals by height.
    pub fn refpoint_sequence(&self) -> impl Iterator<Item = Rat> + '_ {
        self.refpoints.iter().cloned().chain(rationals_by_height())
    }

    pub fn evaluate(&self, w: &ReducedWord) -> PLHomeo {
        evaluate_word(w, &self.action).expect("word over the action alphabet")
    }

    /// Compares two already-evaluated maps; `None` when they are equal.
    fn compare_maps(&self, mu: &PLHomeo, mv: &PLHomeo) -> Option<(Ordering, usize, Rat)> {
        if mu == mv {
            return None;
        }
        for (index, r) in self.refpoint_sequence().enumerate() {
            let a = mu.evaluate(&r);
            let b = mv.evaluate(&r);
            match a.cmp(&b) {
                Ordering::Equal => continue,
                o => return Some((o, index, r)),
            }
        }
        unreachable!("distinct PL maps differ at some rational")
    }

    pub fn compare(&self, u: &ReducedWord, v: &ReducedWord) -> Ordering {
        self.compare_detailed(u, v).0
    }

    pub fn compare_detailed(&self, u: &ReducedWord, v: &ReducedWord) -> (Ordering, Decision) {
        if u == v {
            return (Ordering::Equal, Decision::IdenticalWords);
        }
        let mu = self.evaluate(u);
        let mv = self.evaluate(v);
        match self.compare_maps(&mu, &mv) {
            Some((o, index, point)) => (o, Decision::RefPoint { index, point }),
            None => {
                let (o, level) = tiebreak_compare(u, v);
                (o, Decision::TieBreak(level))
            }
        }
    }

    pub fn is_positive(&self, u: &ReducedWord) -> bool {
        self.sign(u) == Ordering::Greater
    }

    /// Sign of `u` against the identity.
    pub fn sign(&self, u: &ReducedWord) -> Ordering {
        self.compare(u, &ReducedWord::identity(self.alphabet()))
    }

    /// The image of this order under the conjugacy action by `h`.
    pub fn conjugated(&self, h: ReducedWord) -> ConjugatedOrder<'_> {
        ConjugatedOrder { base: self, h }
    }
}

/// Compares two distinct words that act by the identical PL map.
///
/// The reference action has two generators, so inside one nilpotent class the
/// two-letter words come first (ordered by the reference action, then
/// shortlex) and wider words after (by shortlex). The stratification keeps
/// the comparison a genuine total order on mixed alphabets.
fn tiebreak_compare(u: &ReducedWord, v: &ReducedWord) -> (Ordering, TieLevel) {
    match nilpotent_key(u).cmp(&nilpotent_key(v)) {
        Ordering::Equal => {}
        o => return (o, TieLevel::Nilpotent),
    }
    let two_letter = |w: &ReducedWord| w.max_gen().is_none_or(|g| g < 2);
    match (two_letter(u), two_letter(v)) {
        (true, false) => return (Ordering::Less, TieLevel::Shortlex),
        (false, true) => return (Ordering::Greater, TieLevel::Shortlex),
        (false, false) => return (u.shortlex_cmp(v), TieLevel::Shortlex),
        (true, true) => {}
    }
    let aux = crate::witness::certified_free_action();
    let au = evaluate_word(u, &aux).expect("two-letter tie words");
    let av = evaluate_word(v, &aux).expect("two-letter tie words");
    if au != av {
        for r in rationals_by_height() {
            match au.evaluate(&r).cmp(&av.evaluate(&r)) {
                Ordering::Equal => continue,
                o => return (o, TieLevel::AuxAction),
            }
        }
    }
    (u.shortlex_cmp(v), TieLevel::Shortlex)
}

/// The comparison view `u <_h v  iff  u h < v h`.
pub struct ConjugatedOrder<'a> {
    base: &'a DynOrder,
    h: ReducedWord,
}

impl ConjugatedOrder<'_> {
    pub fn compare(&self, u: &ReducedWord, v: &ReducedWord) -> Ordering {
        self.base.compare(&u.concat(&self.h), &v.concat(&self.h))
    }

    pub fn is_positive(&self, u: &ReducedWord) -> bool {
        self.compare(u, &ReducedWord::identity(self.base.alphabet())) == Ordering::Greater
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ViolationError {
    #[error("an all-positive word is positive in every left-order; no violating pair exists")]
    AllPositive,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("word must use only the first two generators")]
    TooManyGenerators,
}

/// A pair of PL maps violating the verbal property of a word: both move the
/// origin right while the word evaluated on them moves it left, all three
/// inequalities verified by exact evaluation.
#[derive(Clone, Debug)]
pub struct OrderViolationWitness {
    pub word: ReducedWord,
    pub f: PLHomeo,
    pub g: PLHomeo,
    pub f_at_origin: Rat,
    pub g_at_origin: Rat,
    pub word_at_origin: Rat,
}

impl OrderViolationWitness {
    /// The order presented by this witness action.
    pub fn order(&self) -> DynOrder {
        DynOrder::new(vec![self.f.clone(), self.g.clone()])
    }
}

/// Piecewise data accumulated while extending a map to the left, as a list of
/// knots to be merged into the final map.
struct LeftExtension {
    knots: Vec<(Rat, Rat)>,
}

impl LeftExtension {
    fn new() -> Self {
        LeftExtension { knots: Vec::new() }
    }

    fn push(&mut self, x: Rat, y: Rat) {
        self.knots.push((x, y));
    }

    fn into_sorted(mut self) -> Vec<(Rat, Rat)> {
        self.knots.sort_by(|a, b| a.0.cmp(&b.0));
        self.knots.dedup();
        self.knots
    }
}

/// Builds homeomorphisms `f, g`, both moving the origin to the right, such
/// that the given mixed-sign word evaluated on them moves the origin to the
/// left. All-negative words get the trivial witness (a pair of positive
/// translations); all-positive words are rejected.
pub fn construct_violation(w: &ReducedWord) -> Result<OrderViolationWitness, ViolationError> {
    if w.is_identity() {
        return Err(ViolationError::Word(WordError::EmptyWord));
    }
    if w.max_gen().is_some_and(|g| g >= 2) {
        return Err(ViolationError::TooManyGenerators);
    }
    let dec = match decompose_for_construction(w) {
        Ok(d) => d,
        Err(WordError::NotMixedSign { all_positive: true }) => {
            return Err(ViolationError::AllPositive);
        }
        Err(WordError::NotMixedSign { all_positive: false }) => {
            // any pair of positive maps works
            let f = PLHomeo::translation(rat_i(1));
            let g = PLHomeo::translation(rat_i(1));
            return Ok(finish_witness(w, f, g));
        }
        Err(e) => return Err(ViolationError::Word(e)),
    };

    // Work on the (possibly swapped) word W = W1 a^-n W2.
    let ww = if dec.swapped { w.swap_generators() } else { w.clone() };
    let len = ww.len() as i64;
    let m_step = rat_i(len.max(2)); // translation amount of f on the right
    let x_span = rat_i(len + 1) * &m_step + rat_i(1);
    let half = rat(1, 2);

    // Right-side behaviour: f is translation by M on [p, +inf); g maps
    // [0, X] affinely onto [1/2, 1]. The positive suffix W2 opens with a
    // b-syllable, so W2(f,g)(0) lands in [1/2, 1] (or is 0 when W2 is empty),
    // strictly below f^n(0) = nM.
    let g_right = [(rat_i(0), half.clone()), (x_span.clone(), rat_i(1))];
    let w2_at_zero = {
        let mut v = Rat::zero();
        for s in dec.w2.syllables().iter().rev() {
            debug_assert!(s.exp > 0);
            for _ in 0..s.exp {
                v = match s.gen {
                    0 => v + &m_step,
                    _ => {
                        debug_assert!(v >= rat_i(0) && v <= x_span);
                        &half + (&rat_i(1) - &half) * &v / &x_span
                    }
                };
            }
        }
        v
    };
    let n = dec.n;
    let p = &w2_at_zero - rat_i(n) * &m_step;
    debug_assert!(p < Rat::zero());

    let (f, g) = if dec.w1.is_identity() {
        // W(f,g)(0) = f^-n(W2(f,g)(0)) = p < 0 already
        let f = PLHomeo::translation(m_step.clone());
        let g = PLHomeo::from_knots(g_right.to_vec(), rat_i(1), rat_i(1)).unwrap();
        (f, g)
    } else {
        build_left_extensions(&dec.w1, &p, &m_step, &g_right)
    };

    // Undo the swap for the reported witness.
    let (f, g) = if dec.swapped { (g, f) } else { (f, g) };
    Ok(finish_witness(w, f, g))
}

/// Processes the syllables of `W1` right to left, giving each one a new fixed
/// point one unit further left and one contracting (positive exponent) or
/// expanding (negative exponent) zone, so that each application drives the
/// tracked value past the previous fixed point with margin 1/4.
fn build_left_extensions(
    w1: &ReducedWord,
    p: &Rat,
    m_step: &Rat,
    g_right: &[(Rat, Rat); 2],
) -> (PLHomeo, PLHomeo) {
    let sylls: Vec<Syllable> = w1.syllables().iter().rev().copied().collect();
    debug_assert_eq!(sylls[0].gen, 1, "W1 ends with a b-syllable by reducedness");

    let quarter = rat(1, 4);
    let eighth = rat(1, 8);
    let x1 = p - rat_i(1); // f's trap fixed point between its zones and p

    let mut f_ext = LeftExtension::new();
    let mut g_ext = LeftExtension::new();
    f_ext.push(x1.clone(), x1.clone());
    f_ext.push(p.clone(), p + m_step);

    // anchor of the previous stage (c_0 = x1), and of the one before for the
    // same map (the zone's right end)
    let mut anchors: Vec<Rat> = vec![x1.clone()];
    for (t, syll) in sylls.iter().enumerate() {
        let stage = t + 1;
        let c = p - rat_i(1 + stage as i64); // new fixed point
        let prev = anchors[t].clone(); // fixed point of the previous stage
        // right end of this map's zone: its own previous fixed point, or the
        // right-side structure for the first two stages
        let zone_end: Option<Rat> = if stage >= 3 { Some(anchors[t - 1].clone()) } else { None };
        // largest value the chain can carry into this stage
        let inc_max = if stage == 1 { p.clone() } else { &prev + rat_i(1) - &quarter };
        let target = &prev - &quarter;

        let ext = if syll.gen == 1 { &mut g_ext } else { &mut f_ext };
        ext.push(c.clone(), c.clone());
        if syll.exp > 0 {
            // contracting zone: anchored slope 2^-j with j minimal so the
            // working point maps at or below the target
            let w_pt = inc_max.clone();
            let ratio = (&target - &c) / (&w_pt - &c);
            debug_assert!(ratio.is_positive());
            let mut slope = rat_i(1);
            while slope > ratio {
                slope /= rat_i(2);
            }
            ext.push(w_pt.clone(), &c + slope * (&w_pt - &c));
        } else {
            // expanding zone: pin the working knot so one inverse step from
            // anywhere at or below inc_max lands at or below the target
            let knot_y = if stage == 1 { p + &eighth } else { &inc_max + &eighth };
            ext.push(target.clone(), knot_y);
        }
        if let Some(end) = zone_end {
            ext.push(end.clone(), end);
        }
        anchors.push(c);
    }

    let f_knots = f_ext.into_sorted();
    let mut g_knots = g_ext.into_sorted();
    g_knots.extend(g_right.iter().cloned());
    let f = PLHomeo::from_knots(f_knots, rat_i(1), rat_i(1)).expect("f extension is monotone");
    let g = PLHomeo::from_knots(g_knots, rat_i(1), rat_i(1)).expect("g extension is monotone");
    (f, g)
}

fn finish_witness(w: &ReducedWord, f: PLHomeo, g: PLHomeo) -> OrderViolationWitness {
    let zero = Rat::zero();
    let maps = [f.clone(), g.clone()];
    let f_at_origin = f.evaluate(&zero);
    let g_at_origin = g.evaluate(&zero);
    let word_at_origin = evaluate_word_at(w, &maps, &zero).expect("two-letter word");
    assert!(f_at_origin.is_positive(), "postcondition f(0) > 0");
    assert!(g_at_origin.is_positive(), "postcondition g(0) > 0");
    assert!(word_at_origin.is_negative(), "postcondition W(f,g)(0) < 0");
    OrderViolationWitness { word: w.clone(), f, g, f_at_origin, g_at_origin, word_at_origin }
}

/// Result of checking the W-order property on a ball.
#[derive(Clone, Debug, PartialEq)]
pub enum WOrderOutcome {
    /// No counterexample up to the given radius (evidence, not proof).
    Pass,
    /// Positive `u`, `v` with `W(u, v)` negative.
    Counterexample { u: ReducedWord, v: ReducedWord, substituted: ReducedWord },
}

/// Searches the radius-ball for positive `u, v` whose substitution into `w`
/// is negative; reports the first pair in shortlex order.
pub fn is_w_order_on_ball(o: &DynOrder, w: &ReducedWord, radius: u32) -> WOrderOutcome {
    let ball = enumerate_ball(radius, o.alphabet().max(2));
    let positives: Vec<&ReducedWord> = ball.iter().filter(|u| o.is_positive(u)).collect();
    for u in &positives {
        for v in &positives {
            let subst = w.substitute(&[(*u).clone(), (*v).clone()]).expect("two-letter law");
            if o.sign(&subst) == Ordering::Less {
                return WOrderOutcome::Counterexample {
                    u: (*u).clone(),
                    v: (*v).clone(),
                    substituted: subst,
                };
            }
        }
    }
    WOrderOutcome::Pass
}

/// Largest radius `R <= max_radius` on which the two orders assign the same
/// sign to every word, together with whether the bound saturated.
pub fn agreement_radius(o1: &DynOrder, o2: &DynOrder, max_radius: u32) -> (u32, bool) {
    assert_eq!(o1.alphabet(), o2.alphabet(), "orders must share the alphabet");
    let ball = enumerate_ball(max_radius, o1.alphabet());
    let mut radius = max_radius;
    for w in &ball {
        if w.is_identity() || w.len() as u32 > radius {
            continue;
        }
        if o1.sign(w) != o2.sign(w) {
            radius = w.len() as u32 - 1;
            if radius == 0 {
                return (0, false);
            }
        }
    }
    (radius, radius == max_radius)
}

/// The order metric `1/(1 + R)` where `R` is the agreement radius capped at
/// `max_radius`; a saturated result is an upper bound for the true distance.
pub fn order_distance(o1: &DynOrder, o2: &DynOrder, max_radius: u32) -> Rat {
    let (r, _) = agreement_radius(o1, o2, max_radius);
    rat(1, 1 + r as i64)
}

/// A quadruple realizing the resilience chain at n = 1, with the chain
/// re-verified for higher powers.
#[derive(Clone, Debug)]
pub struct ResilientWitness {
    pub f: ReducedWord,
    pub g: ReducedWord,
    pub h1: ReducedWord,
    pub h2: ReducedWord,
    /// Powers `2..=n_max` for which the chain was re-verified.
    pub verified_to: u32,
    /// Powers at which the chain broke, if any. The underlying claim is that
    /// n = 1 suffices; this list reports the empirical check rather than
    /// assuming it.
    pub failures: Vec<u32>,
}

/// Exhaustively searches quadruples `(f, g, h1, h2)` in the ball for
/// `h1 < f h1 < f h2 < g h1 < g h2 < h2` at n = 1, returning the first
/// witness in lexicographic shortlex order, then re-checks the chain with
/// `f^n, g^n` for `n = 2..=n_max`.
pub fn find_resilient_pair(
    o: &DynOrder,
    radius: u32,
    n_max: u32,
) -> Option<ResilientWitness> {
    let ball = enumerate_ball(radius, o.alphabet());
    let n = ball.len();
    let ranker = Ranker::new(o, &ball);
    let rank_of_ball: Vec<u32> = (0..n).map(|i| ranker.rank_of_ball_word(i)).collect();
    let rank_prod = ranker.product_ranks();

    for fi in 0..n {
        for gi in 0..n {
            for h1i in 0..n {
                let fh1 = rank_prod[fi * n + h1i];
                let gh1 = rank_prod[gi * n + h1i];
                // h1 < f h1, and f h1 < g h1 is forced by the middle of the
                // chain, so prune on it early
                if !(rank_of_ball[h1i] < fh1 && fh1 < gh1) {
                    continue;
                }
                for h2i in 0..n {
                    let gh2 = rank_prod[gi * n + h2i];
                    if gh2 >= rank_of_ball[h2i] {
                        continue;
                    }
                    let fh2 = rank_prod[fi * n + h2i];
                    if fh1 < fh2 && fh2 < gh1 && gh1 < gh2 {
                        let witness = (&ball[fi], &ball[gi], &ball[h1i], &ball[h2i]);
                        return Some(verify_higher_powers(o, witness, n_max));
                    }
                }
            }
        }
    }
    None
}

fn verify_higher_powers(
    o: &DynOrder,
    (f, g, h1, h2): (&ReducedWord, &ReducedWord, &ReducedWord, &ReducedWord),
    n_max: u32,
) -> ResilientWitness {
    let mut failures = Vec::new();
    for n in 2..=n_max {
        let fe = f.pow(n as i64);
        let ge = g.pow(n as i64);
        let chain = [
            h1.clone(),
            fe.concat(h1),
            fe.concat(h2),
            ge.concat(h1),
            ge.concat(h2),
            h2.clone(),
        ];
        let ok = chain.windows(2).all(|w| o.compare(&w[0], &w[1]) == Ordering::Less);
        if !ok {
            failures.push(n);
        }
    }
    ResilientWitness {
        f: f.clone(),
        g: g.clone(),
        h1: h1.clone(),
        h2: h2.clone(),
        verified_to: n_max,
        failures,
    }
}

/// Precomputed total ranks for all ball words and pairwise products under a
/// dynamical order, so ball searches reduce to integer comparisons.
struct Ranker {
    ball_ids: Vec<usize>,
    prod_ids: Vec<usize>,
    ranks: Vec<u32>,
}

/// Number of leading reference points cached per word for ranking.
const RANK_PREFIX: usize = 12;

impl Ranker {
    fn new(order: &DynOrder, ball: &[ReducedWord]) -> Self {
        let n = ball.len();
        let mut index: HashMap<ReducedWord, usize> = HashMap::new();
        let mut words: Vec<ReducedWord> = Vec::new();
        let mut intern = |w: ReducedWord, words: &mut Vec<ReducedWord>| -> usize {
            if let Some(&i) = index.get(&w) {
                return i;
            }
            let i = words.len();
            index.insert(w.clone(), i);
            words.push(w);
            i
        };
        let ball_ids: Vec<usize> = ball.iter().map(|w| intern(w.clone(), &mut words)).collect();
        let mut prod_ids = Vec::with_capacity(n * n);
        for u in ball {
            for v in ball {
                prod_ids.push(intern(u.concat(v), &mut words));
            }
        }

        // evaluate every distinct word once; products compose cached ball maps
        let ball_maps: Vec<PLHomeo> = ball.iter().map(|w| order.evaluate(w)).collect();
        let mut maps: Vec<Option<PLHomeo>> = vec![None; words.len()];
        for (i, &id) in ball_ids.iter().enumerate() {
            maps[id] = Some(ball_maps[i].clone());
        }
        for ui in 0..n {
            for vi in 0..n {
                let id = prod_ids[ui * n + vi];
                if maps[id].is_none() {
                    maps[id] = Some(ball_maps[ui].compose(&ball_maps[vi]));
                }
            }
        }
        let maps: Vec<PLHomeo> = maps.into_iter().map(|m| m.unwrap()).collect();

        let prefix: Vec<Rat> = order.refpoint_sequence().take(RANK_PREFIX).collect();
        let values: Vec<Vec<Rat>> = maps
            .iter()
            .map(|m| prefix.iter().map(|r| m.evaluate(r)).collect())
            .collect();
        let keys: Vec<(i64, i64, i64)> = words.iter().map(nilpotent_key).collect();
        let aux_values: RefCell<Vec<Option<Vec<Rat>>>> = RefCell::new(vec![None; words.len()]);
        let aux = crate::witness::certified_free_action();

        let mut ids: Vec<usize> = (0..words.len()).collect();
        ids.sort_by(|&i, &j| {
            match values[i].cmp(&values[j]) {
                Ordering::Equal => {}
                o => return o,
            }
            if maps[i] != maps[j] {
                // agree on the cached prefix but differ as maps: continue the
                // scan where the cache stopped
                for r in order.refpoint_sequence().skip(RANK_PREFIX) {
                    match maps[i].evaluate(&r).cmp(&maps[j].evaluate(&r)) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                unreachable!("distinct maps differ at some rational");
            }
            match keys[i].cmp(&keys[j]) {
                Ordering::Equal => {}
                o => return o,
            }
            // deep tie: compare under the reference action, lazily cached
            let two_letter =
                |w: &ReducedWord| w.max_gen().is_none_or(|g| g < 2);
            if two_letter(&words[i]) && two_letter(&words[j]) {
                let mut cache = aux_values.borrow_mut();
                for id in [i, j] {
                    if cache[id].is_none() {
                        let vals: Vec<Rat> = prefix
                            .iter()
                            .map(|r| {
                                evaluate_word_at(&words[id], &aux, r).expect("two-letter word")
                            })
                            .collect();
                        cache[id] = Some(vals);
                    }
                }
                match cache[i].as_ref().unwrap().cmp(cache[j].as_ref().unwrap()) {
                    Ordering::Equal => {}
                    o => return o,
                }
            }
            let (o, _) = tiebreak_compare(&words[i], &words[j]);
            o
        });
        let mut ranks = vec![0u32; words.len()];
        for (r, &id) in ids.iter().enumerate() {
            ranks[id] = r as u32;
        }
        Ranker { ball_ids, prod_ids, ranks }
    }

    fn rank_of_ball_word(&self, i: usize) -> u32 {
        self.ranks[self.ball_ids[i]]
    }

    fn product_ranks(&self) -> Vec<u32> {
        self.prod_ids.iter().map(|&id| self.ranks[id]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::engel;

    fn w(s: &str) -> ReducedWord {
        ReducedWord::parse(s).unwrap()
    }

    fn translations() -> DynOrder {
        DynOrder::new(vec![PLHomeo::translation(rat_i(1)), PLHomeo::translation(rat(1, 3))])
    }

    fn abelian_unit() -> DynOrder {
        DynOrder::new(vec![PLHomeo::translation(rat_i(1)), PLHomeo::translation(rat_i(1))])
    }

    #[test]
    fn compare_translations_at_origin() {
        let o = translations();
        assert_eq!(o.compare(&w("a"), &w("b")), Ordering::Greater);
        assert!(o.is_positive(&w("a")));
        assert!(o.is_positive(&w("b")));
        assert!(!o.is_positive(&w("a^-1")));
    }

    #[test]
    fn compare_decided_at_later_refpoint() {
        // maps agreeing at 0 but differing at 1: use explicit refpoints 0, 1
        let f = PLHomeo::from_knots(
            vec![(rat_i(0), rat_i(0)), (rat_i(1), rat_i(3))],
            rat_i(1),
            rat_i(1),
        )
        .unwrap();
        let g = PLHomeo::from_knots(
            vec![(rat_i(0), rat_i(0)), (rat_i(1), rat_i(2))],
            rat_i(1),
            rat_i(1),
        )
        .unwrap();
        let o = DynOrder::with_refpoints(vec![f, g], vec![rat_i(0), rat_i(1)]);
        let (ord, dec) = o.compare_detailed(&w("a"), &w("b"));
        assert_eq!(ord, Ordering::Greater);
        assert_eq!(dec, Decision::RefPoint { index: 1, point: rat_i(1) });
    }

    #[test]
    fn equal_maps_decided_by_tiebreak() {
        let o = abelian_unit();
        let (ord, dec) = o.compare_detailed(&w("a"), &w("b"));
        // nilpotent keys (1,0,0) vs (0,1,0): a is larger
        assert_eq!(ord, Ordering::Greater);
        assert_eq!(dec, Decision::TieBreak(TieLevel::Nilpotent));
    }

    #[test]
    fn left_invariance_on_random_triples() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0010);
        let orders = [abelian_unit(), translations()];
        for o in &orders {
            for _ in 0..100 {
                let u = crate::word::random_reduced_word(&mut rng, 4, 2);
                let v = crate::word::random_reduced_word(&mut rng, 4, 2);
                let t = crate::word::random_reduced_word(&mut rng, 4, 2);
                let uv = o.compare(&u, &v);
                let tu = t.concat(&u);
                let tv = t.concat(&v);
                assert_eq!(o.compare(&tu, &tv), uv, "left invariance broke at {u}, {v}, {t}");
            }
        }
    }

    #[test]
    fn violation_for_conradian_word() {
        let witness = construct_violation(&w("a^-1 b a^2")).unwrap();
        assert!(witness.f_at_origin.is_positive());
        assert!(witness.g_at_origin.is_positive());
        assert!(witness.word_at_origin.is_negative());
    }

    #[test]
    fn violation_for_biinvariance_word() {
        let witness = construct_violation(&w("a^-1 b a")).unwrap();
        assert!(witness.word_at_origin.is_negative());
    }

    #[test]
    fn violation_trivial_and_rejected_cases() {
        let witness = construct_violation(&w("a^-1 b^-1")).unwrap();
        assert_eq!(witness.f, PLHomeo::translation(rat_i(1)));
        assert!(witness.word_at_origin.is_negative());
        assert!(matches!(construct_violation(&w("a b")), Err(ViolationError::AllPositive)));
    }

    #[test]
    fn violation_for_engel_words() {
        for n in 1..=4 {
            let word = engel(&w("a"), &w("b"), n);
            let witness = construct_violation(&word).unwrap();
            assert!(witness.word_at_origin.is_negative(), "engel {n}");
        }
    }

    #[test]
    fn violation_for_awkward_shapes() {
        // single-syllable W1, swapped decompositions, empty W2, big exponents
        for text in [
            "b^-1 a",
            "a b^-9",
            "b^-5 a^12 b^-3 a^-7 b",
            "a^-3 b a^-2 b^4",
            "b a^-1",
            "a^7 b^-1 a^-6 b^2 a^-1 b^-3 a",
        ] {
            let word = w(text);
            let witness = construct_violation(&word).unwrap();
            assert!(witness.word_at_origin.is_negative(), "word {word}");
        }
    }

    #[test]
    fn w_order_checks() {
        // abelian translation action: conjugation-invariant, passes a^-1 b a
        let o = translations();
        assert_eq!(is_w_order_on_ball(&o, &w("a^-1 b a"), 3), WOrderOutcome::Pass);

        // the violating action built for a^-1 b a fails at radius 1 with the
        // generators themselves
        let witness = construct_violation(&w("a^-1 b a")).unwrap();
        let o = witness.order();
        match is_w_order_on_ball(&o, &w("a^-1 b a"), 1) {
            WOrderOutcome::Counterexample { u, v, .. } => {
                assert_eq!((u, v), (w("a"), w("b")));
            }
            WOrderOutcome::Pass => panic!("expected a counterexample"),
        }

        // all-positive words can never be violated
        assert_eq!(is_w_order_on_ball(&o, &w("a b"), 3), WOrderOutcome::Pass);
    }

    #[test]
    fn abelian_action_is_a_biinvariance_w_order_on_ball_four() {
        // even with every map-equal pair routed through the tiebreak, the
        // conjugation word u^-1 v u keeps the sign of v: the nilpotent levels
        // are conjugation-invariant
        let o = abelian_unit();
        assert_eq!(is_w_order_on_ball(&o, &w("a^-1 b a"), 4), WOrderOutcome::Pass);
    }

    #[test]
    fn distance_separates_at_the_first_disagreeing_length() {
        // abelian (x+1, x+1) and translations (x+1, x+1/3) agree on balls 1
        // and 2 but disagree at length 3 (a b^-2 flips sign), so d = 1/3
        let (r, saturated) = agreement_radius(&abelian_unit(), &translations(), 5);
        assert_eq!((r, saturated), (2, false));
        assert_eq!(order_distance(&abelian_unit(), &translations(), 5), rat(1, 3));
    }

    #[test]
    fn conjugated_order_identity_and_abelian() {
        let o = translations();
        let conj = o.conjugated(w("a"));
        for word in enumerate_ball(3, 2) {
            if word.is_identity() {
                continue;
            }
            assert_eq!(conj.is_positive(&word), o.is_positive(&word));
        }
    }

    #[test]
    fn distance_examples() {
        let o1 = translations();
        let o2 = translations();
        assert_eq!(order_distance(&o1, &o2, 5), rat(1, 6));

        // disagree on a generator: b is positive here, negative there
        let o3 = DynOrder::new(vec![
            PLHomeo::translation(rat_i(1)),
            PLHomeo::translation(rat(-1, 3)),
        ]);
        assert_eq!(order_distance(&o1, &o3, 5), rat_i(1));
    }

    #[test]
    fn resilient_search_finds_nothing_for_translations() {
        let o = translations();
        assert!(find_resilient_pair(&o, 2, 3).is_none());
        // commuting unit translations at radius 3
        assert!(find_resilient_pair(&abelian_unit(), 3, 3).is_none());
    }

    #[test]
    fn resilient_search_is_deterministic() {
        let o = DynOrder::new(crate::actions::thompson_pair().to_vec());
        let a = find_resilient_pair(&o, 2, 2);
        let b = find_resilient_pair(&o, 2, 2);
        match (a, b) {
            (None, None) => {}
            (Some(x), Some(y)) => {
                assert_eq!((x.f, x.g, x.h1, x.h2), (y.f, y.g, y.h1, y.h2));
            }
            other => panic!("nondeterministic outcome {other:?}"),
        }
    }
}
