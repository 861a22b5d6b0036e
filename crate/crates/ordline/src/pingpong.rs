//! Finite ping-pong certificates and their exact verifier.
//!
//! A certificate `(f, g, k, A_1..A_k, B_1..B_k)` asserts that for every
//! nonzero integer `n`, `f^n(A_i) ⊆ B_i` and `g^n(B_i) ⊆ A_{i+1}`, and that
//! `A_1` and `B_k` are disjoint. A verified certificate proves that no
//! reduced two-letter word with at most `k` syllables in the first generator
//! (after conjugation by a power of it) acts trivially on the pair: the image
//! of `A_1` is chased through the sets into `B_k`.
//!
//! The verifier checks the closed orbit hull of every component, including
//! non-attained limit points. This is conservative: it may reject a
//! borderline certificate, it never accepts a false one.

use std::fmt;

use thiserror::Error;

use crate::interval::{ClosedInterval, IntervalSet};
use crate::pl::{forward_orbit_hull, PLHomeo, PowerDirection};
use crate::rat::Rat;
use crate::word::{syllable_normal_form, ReducedWord, WordError};

/// Which of the two maps a verification step talks about.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapTag {
    F,
    G,
}

impl fmt::Display for MapTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapTag::F => write!(f, "f"),
            MapTag::G => write!(f, "g"),
        }
    }
}

/// Ping-pong data for one pair of maps.
#[derive(Clone, PartialEq, Debug)]
pub struct PingPongCertificate {
    pub f: PLHomeo,
    pub g: PLHomeo,
    pub k: usize,
    /// `A_1 .. A_k`.
    pub a_sets: Vec<IntervalSet>,
    /// `B_1 .. B_k`.
    pub b_sets: Vec<IntervalSet>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertFormatError {
    #[error("k must be at least 1")]
    ZeroDepth,
    #[error("expected {expected} sets, got {got}")]
    WrongSetCount { expected: usize, got: usize },
    #[error("set {0} is empty")]
    EmptySet(String),
}

impl PingPongCertificate {
    pub fn new(
        f: PLHomeo,
        g: PLHomeo,
        a_sets: Vec<IntervalSet>,
        b_sets: Vec<IntervalSet>,
    ) -> Result<Self, CertFormatError> {
        let k = a_sets.len();
        if k == 0 {
            return Err(CertFormatError::ZeroDepth);
        }
        if b_sets.len() != k {
            return Err(CertFormatError::WrongSetCount { expected: k, got: b_sets.len() });
        }
        for (i, s) in a_sets.iter().enumerate() {
            if s.is_empty() {
                return Err(CertFormatError::EmptySet(format!("A{}", i + 1)));
            }
        }
        for (i, s) in b_sets.iter().enumerate() {
            if s.is_empty() {
                return Err(CertFormatError::EmptySet(format!("B{}", i + 1)));
            }
        }
        Ok(PingPongCertificate { f, g, k, a_sets, b_sets })
    }
}

/// A localized reason a certificate fails.
#[derive(Clone, PartialEq, Debug)]
pub enum CertViolation {
    /// The orbit hull of one component escapes its target set.
    Containment {
        map: MapTag,
        /// 1-based index `i` of the condition (`f^n(A_i) ⊆ B_i` or
        /// `g^n(B_i) ⊆ A_{i+1}`).
        index: usize,
        /// 0-based component within the source set.
        component: usize,
        direction: PowerDirection,
        hull: ClosedInterval,
    },
    /// `A_1` and `B_k` intersect.
    Overlap { a_component: usize, b_component: usize },
}

impl fmt::Display for CertViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertViolation::Containment { map, index, component, direction, hull } => {
                let (src, dst, tgt) = match map {
                    MapTag::F => ("A", "B", *index),
                    MapTag::G => ("B", "A", *index + 1),
                };
                let dir = match direction {
                    PowerDirection::Positive => "positive",
                    PowerDirection::Negative => "negative",
                };
                write!(
                    out,
                    "{map}-condition fails at i={index}: {dir}-power orbit hull {hull} of \
                     {src}{index} component {component} is not contained in {dst}{tgt}"
                )
            }
            CertViolation::Overlap { a_component, b_component } => write!(
                out,
                "A1 component {a_component} meets Bk component {b_component}: the sets are not disjoint"
            ),
        }
    }
}

/// Outcome of verification; a rejection is an answer, not an error.
#[derive(Clone, PartialEq, Debug)]
pub enum VerifyOutcome {
    Ok,
    Violation(CertViolation),
}

impl VerifyOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, VerifyOutcome::Ok)
    }
}

/// Checks every hypothesis of the certificate exactly. Containment is decided
/// on closed orbit hulls, so `Ok` implies `f^n(A_i) ⊆ B_i` and
/// `g^n(B_i) ⊆ A_{i+1}` for every nonzero `n`. The first failing triple
/// (map, index, component) in scan order is reported.
pub fn verify_certificate(c: &PingPongCertificate) -> VerifyOutcome {
    for i in 0..c.k {
        for (ci, comp) in c.a_sets[i].components().iter().enumerate() {
            for dir in [PowerDirection::Positive, PowerDirection::Negative] {
                let hull = forward_orbit_hull(&c.f, comp, dir);
                if !c.b_sets[i].contains_interval(&hull) {
                    return VerifyOutcome::Violation(CertViolation::Containment {
                        map: MapTag::F,
                        index: i + 1,
                        component: ci,
                        direction: dir,
                        hull,
                    });
                }
            }
        }
    }
    for i in 0..c.k.saturating_sub(1) {
        for (ci, comp) in c.b_sets[i].components().iter().enumerate() {
            for dir in [PowerDirection::Positive, PowerDirection::Negative] {
                let hull = forward_orbit_hull(&c.g, comp, dir);
                if !c.a_sets[i + 1].contains_interval(&hull) {
                    return VerifyOutcome::Violation(CertViolation::Containment {
                        map: MapTag::G,
                        index: i + 1,
                        component: ci,
                        direction: dir,
                        hull,
                    });
                }
            }
        }
    }
    if let Some((ai, bi)) = c.a_sets[0].intersection_witness(&c.b_sets[c.k - 1]) {
        return VerifyOutcome::Violation(CertViolation::Overlap { a_component: ai, b_component: bi });
    }
    VerifyOutcome::Ok
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WordImageError {
    #[error("word is empty")]
    EmptyWord,
    #[error("word needs ping-pong depth {needed} but the certificate has k = {available}")]
    SyllableOverflow { needed: usize, available: usize },
    #[error("chain inclusion failed applying {map}^{exponent} toward set index {index}")]
    ChainInclusionFailed { map: MapTag, exponent: i64, index: usize },
    #[error("the g map of this certificate is the identity; it cannot witness a pure power of the second letter")]
    SecondMapTrivial,
    #[error("the chain landed back on the witness point; the certificate cannot distinguish this word")]
    WitnessNotMoved,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// One step of the replayed containment chain.
#[derive(Clone, PartialEq, Debug)]
pub struct ChainStep {
    pub map: MapTag,
    pub exponent: i64,
    /// Image of `A_1` after this step.
    pub image: IntervalSet,
    /// 1-based index of the target set the image was checked against.
    pub target_index: usize,
}

/// Proof data that `w(f, g)` moves a point.
#[derive(Clone, PartialEq, Debug)]
pub enum WordImageReport {
    /// The containment chain for words using both letters (or only the first).
    Chain {
        /// Power of `a` used to reach the alternating form.
        conjugator_power: i64,
        /// `a`-syllable count of the conjugated word.
        syllables: usize,
        steps: Vec<ChainStep>,
        /// A point of `A_1` moved by the conjugated word.
        witness: Rat,
        image: Rat,
        /// The same proof transported back to the original word.
        original_witness: Rat,
        original_image: Rat,
    },
    /// Pure powers of the second letter are witnessed by `g` directly.
    DirectPower { exponent: i64, witness: Rat, image: Rat },
}

impl WordImageReport {
    /// The pair (point, image under the original word).
    pub fn original_pair(&self) -> (Rat, Rat) {
        match self {
            WordImageReport::Chain { original_witness, original_image, .. } => {
                (original_witness.clone(), original_image.clone())
            }
            WordImageReport::DirectPower { witness, image, .. } => (witness.clone(), image.clone()),
        }
    }
}

/// Replays the containment chain of the certificate on `w`, producing an
/// explicit moved point. Requires `verify_certificate(c)` to pass and the
/// conjugated syllable count of `w` to be at most `c.k`.
pub fn word_image(c: &PingPongCertificate, w: &ReducedWord) -> Result<WordImageReport, WordImageError> {
    if w.is_identity() {
        return Err(WordImageError::EmptyWord);
    }
    if let Some(g) = w.max_gen() {
        if g >= 2 {
            return Err(WordImageError::Word(WordError::MissingGenerator { got: g, alphabet: 2 }));
        }
    }
    let form = match syllable_normal_form(w) {
        Ok(form) => form,
        Err(WordError::PureBPower) => {
            // w = b^m: evaluate g^m at a point g moves
            let exp = w.syllables()[0].exp;
            let fs = c.g.fixed_sets();
            let witness = moved_point(&fs).ok_or(WordImageError::SecondMapTrivial)?;
            let image = c.g.iterate(&witness, exp);
            debug_assert_ne!(image, witness);
            return Ok(WordImageReport::DirectPower { exponent: exp, witness, image });
        }
        Err(e) => return Err(WordImageError::Word(e)),
    };
    let k = form.k();
    if k > c.k {
        return Err(WordImageError::SyllableOverflow { needed: k, available: c.k });
    }

    // Chase A_1 through the sets, rightmost syllable first:
    // f^{n_1} into B_1, g^{m_1} into A_2, ..., f^{n_k} into B_k.
    let mut image = c.a_sets[0].clone();
    let mut steps = Vec::with_capacity(2 * k - 1);
    for j in 0..k {
        let n = form.a_exponents[j];
        image = image.map_monotone(|x| c.f.iterate(x, n));
        if !c.b_sets[j].contains_set(&image) {
            return Err(WordImageError::ChainInclusionFailed {
                map: MapTag::F,
                exponent: n,
                index: j + 1,
            });
        }
        steps.push(ChainStep { map: MapTag::F, exponent: n, image: image.clone(), target_index: j + 1 });
        if j + 1 < k {
            let m = form.b_exponents[j];
            image = image.map_monotone(|x| c.g.iterate(x, m));
            if !c.a_sets[j + 1].contains_set(&image) {
                return Err(WordImageError::ChainInclusionFailed {
                    map: MapTag::G,
                    exponent: m,
                    index: j + 2,
                });
            }
            steps.push(ChainStep { map: MapTag::G, exponent: m, image: image.clone(), target_index: j + 2 });
        }
    }

    let witness = c.a_sets[0].components()[0].finite_witness();
    let maps = [c.f.clone(), c.g.clone()];
    let conj = form.conjugated_word();
    let moved = crate::pl::evaluate_word_at(&conj, &maps, &witness).expect("two-letter word");
    if moved == witness {
        // only possible when the word needs fewer syllables than the
        // certificate provides and A1 meets the intermediate target
        return Err(WordImageError::WitnessNotMoved);
    }
    let t = form.conjugator_power;
    let original_witness = c.f.iterate(&witness, -t);
    let original_image = c.f.iterate(&moved, -t);
    Ok(WordImageReport::Chain {
        conjugator_power: t,
        syllables: k,
        steps,
        witness,
        image: moved,
        original_witness,
        original_image,
    })
}

/// Some point strictly displaced by the map, if one exists.
fn moved_point(fs: &crate::pl::FixedSet) -> Option<Rat> {
    use crate::interval::Endpoint;
    use crate::rat::rat_i;
    if fs.gap_signs.is_empty() {
        return None; // identity
    }
    if fs.components.is_empty() {
        return Some(Rat::from_integer(0.into()));
    }
    // midpoint of the first gap (or one unit past an unbounded end)
    let first_lo = fs.components[0].lo();
    match first_lo {
        Endpoint::NegInf => {
            let hi = fs.components[0].hi();
            match fs.components.get(1) {
                Some(next) => {
                    let a = hi.finite().expect("interior endpoint").clone();
                    let b = next.lo().finite().expect("interior endpoint").clone();
                    Some((a + b) / rat_i(2))
                }
                None => match hi {
                    Endpoint::Finite(h) => Some(h + rat_i(1)),
                    _ => None,
                },
            }
        }
        Endpoint::Finite(a) => Some(a - rat_i(1)),
        Endpoint::PosInf => unreachable!(),
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InterleaveError {
    #[error("expected an odd number 2k+1 >= 3 of points in each family")]
    WrongPointCount,
    #[error("the families are not intertwined (need p1 < q1 < p2 < ... < p_{{2k+1}} < q_{{2k+1}})")]
    NotIntertwined,
    #[error("radius {0} is too large: neighborhoods touch or overlap")]
    OverlappingNeighborhoods(String),
}

/// Builds the nested candidate sets around interleaved fixed-point families:
/// `A_i` collects radius-neighborhoods of `p_{k+1+j}` for `|j| <= i-1`,
/// `B_i` of `q_{k+1+j}` for `-i <= j <= i-1`. The candidate must still pass
/// `verify_certificate`, typically after replacing `f`, `g` by powers.
pub fn from_interleaved_points(
    f: PLHomeo,
    g: PLHomeo,
    p: &[Rat],
    q: &[Rat],
    radius: &Rat,
) -> Result<PingPongCertificate, InterleaveError> {
    use num_traits::Signed;
    if p.len() != q.len() || p.len() < 3 || p.len().is_multiple_of(2) {
        return Err(InterleaveError::WrongPointCount);
    }
    let k = (p.len() - 1) / 2;
    // interleaving p1 < q1 < p2 < q2 < ...
    let mut prev: Option<&Rat> = None;
    for i in 0..p.len() {
        for x in [&p[i], &q[i]] {
            if let Some(pr) = prev {
                if pr >= x {
                    return Err(InterleaveError::NotIntertwined);
                }
            }
            prev = Some(x);
        }
    }
    if !radius.is_positive() {
        return Err(InterleaveError::OverlappingNeighborhoods(crate::rat::fmt_rat(radius)));
    }
    // Neighborhoods actually used must stay pairwise separated. The sets
    // reach q_1..q_2k and p_2..p_2k only; the outermost grid points carry no
    // neighborhood.
    let mut used: Vec<&Rat> = Vec::new();
    for i in 0..p.len() - 1 {
        used.push(&q[i]);
        if i + 1 < p.len() - 1 {
            used.push(&p[i + 1]);
        }
    }
    let min_gap = used
        .windows(2)
        .map(|w| w[1] - w[0])
        .min()
        .expect("at least two used points");
    if radius + radius >= min_gap {
        return Err(InterleaveError::OverlappingNeighborhoods(crate::rat::fmt_rat(radius)));
    }

    let nbhd = |c: &Rat| ClosedInterval::finite(c - radius, c + radius);
    let center = k; // 0-based index of p_{k+1}, q_{k+1}
    let mut a_sets = Vec::with_capacity(k);
    let mut b_sets = Vec::with_capacity(k);
    for i in 1..=k {
        let a_comps: Vec<ClosedInterval> = (-(i as i64 - 1)..=(i as i64 - 1))
            .map(|j| nbhd(&p[(center as i64 + j) as usize]))
            .collect();
        let b_comps: Vec<ClosedInterval> = (-(i as i64)..=(i as i64 - 1))
            .map(|j| nbhd(&q[(center as i64 + j) as usize]))
            .collect();
        a_sets.push(IntervalSet::from_components(a_comps));
        b_sets.push(IntervalSet::from_components(b_comps));
    }
    Ok(PingPongCertificate::new(f, g, a_sets, b_sets).expect("sets are nonempty by construction"))
}
