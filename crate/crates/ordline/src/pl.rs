//! Orientation-preserving, eventually-affine piecewise-linear homeomorphisms
//! of the real line with exact rational breakpoints, values and slopes.
//!
//! The class is closed under composition and inversion and contains
//! translations, the affine group, and every map supported in a compact
//! interval. Maps are kept in a canonical form (no redundant breakpoints,
//! affine maps anchored at 0) so that structural equality decides equality of
//! maps.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::interval::{ClosedInterval, Endpoint};
use crate::rat::{fmt_rat, Rat};
use crate::word::ReducedWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlError {
    #[error("breakpoints must be strictly increasing")]
    BreakpointsNotIncreasing,
    #[error("values must be strictly increasing")]
    ValuesNotIncreasing,
    #[error("tail slopes must be strictly positive")]
    NonPositiveSlope,
    #[error("at least one breakpoint/value pair is required")]
    NoKnots,
    #[error("word uses generator {got} but the assignment covers {have}")]
    MissingAssignment { got: usize, have: usize },
}

/// An eventually-affine PL homeomorphism, canonical form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PLHomeo {
    xs: Vec<Rat>,
    ys: Vec<Rat>,
    left_slope: Rat,
    right_slope: Rat,
}

impl PLHomeo {
    /// The identity, anchored at the origin.
    pub fn identity() -> Self {
        PLHomeo {
            xs: vec![Rat::zero()],
            ys: vec![Rat::zero()],
            left_slope: Rat::one(),
            right_slope: Rat::one(),
        }
    }

    /// `x -> x + c`.
    pub fn translation(c: Rat) -> Self {
        PLHomeo {
            xs: vec![Rat::zero()],
            ys: vec![c],
            left_slope: Rat::one(),
            right_slope: Rat::one(),
        }
    }

    /// `x -> slope * x + offset`, slope positive.
    pub fn affine(slope: Rat, offset: Rat) -> Self {
        assert!(slope.is_positive());
        PLHomeo {
            xs: vec![Rat::zero()],
            ys: vec![offset],
            left_slope: slope.clone(),
            right_slope: slope,
        }
    }

    /// Builds a map from `(x, f(x))` knots plus tail slopes and canonicalizes.
    pub fn from_knots(
        knots: Vec<(Rat, Rat)>,
        left_slope: Rat,
        right_slope: Rat,
    ) -> Result<Self, PlError> {
        if knots.is_empty() {
            return Err(PlError::NoKnots);
        }
        if !(left_slope.is_positive() && right_slope.is_positive()) {
            return Err(PlError::NonPositiveSlope);
        }
        let (xs, ys): (Vec<Rat>, Vec<Rat>) = knots.into_iter().unzip();
        for w in xs.windows(2) {
            if w[0] >= w[1] {
                return Err(PlError::BreakpointsNotIncreasing);
            }
        }
        for w in ys.windows(2) {
            if w[0] >= w[1] {
                return Err(PlError::ValuesNotIncreasing);
            }
        }
        let mut map = PLHomeo { xs, ys, left_slope, right_slope };
        map.canonicalize();
        Ok(map)
    }

    pub fn knots(&self) -> impl Iterator<Item = (&Rat, &Rat)> {
        self.xs.iter().zip(self.ys.iter())
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.xs
    }

    pub fn values(&self) -> &[Rat] {
        &self.ys
    }

    pub fn left_slope(&self) -> &Rat {
        &self.left_slope
    }

    pub fn right_slope(&self) -> &Rat {
        &self.right_slope
    }

    /// Slopes around the knots: entry `i` is the slope left of knot `i`,
    /// entry `i+1` the slope right of it.
    fn slopes(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(self.xs.len() + 1);
        out.push(self.left_slope.clone());
        for i in 0..self.xs.len() - 1 {
            out.push(
                (&self.ys[i + 1] - &self.ys[i]) / (&self.xs[i + 1] - &self.xs[i]),
            );
        }
        out.push(self.right_slope.clone());
        out
    }

    fn canonicalize(&mut self) {
        let slopes = self.slopes();
        let mut keep_xs = Vec::with_capacity(self.xs.len());
        let mut keep_ys = Vec::with_capacity(self.ys.len());
        for i in 0..self.xs.len() {
            if slopes[i] != slopes[i + 1] {
                keep_xs.push(self.xs[i].clone());
                keep_ys.push(self.ys[i].clone());
            }
        }
        if keep_xs.is_empty() {
            // Affine map: anchor at the origin.
            let y0 = &self.ys[0] - &self.left_slope * &self.xs[0];
            self.xs = vec![Rat::zero()];
            self.ys = vec![y0];
        } else {
            self.xs = keep_xs;
            self.ys = keep_ys;
        }
    }

    pub fn is_identity(&self) -> bool {
        self == &Self::identity()
    }

    pub fn evaluate(&self, x: &Rat) -> Rat {
        if *x <= self.xs[0] {
            return &self.ys[0] + &self.left_slope * (x - &self.xs[0]);
        }
        let last = self.xs.len() - 1;
        if *x >= self.xs[last] {
            return &self.ys[last] + &self.right_slope * (x - &self.xs[last]);
        }
        // x strictly between xs[0] and xs[last]
        let i = match self.xs.binary_search_by(|p| p.cmp(x)) {
            Ok(i) => return self.ys[i].clone(),
            Err(i) => i, // xs[i-1] < x < xs[i]
        };
        let slope = (&self.ys[i] - &self.ys[i - 1]) / (&self.xs[i] - &self.xs[i - 1]);
        &self.ys[i - 1] + slope * (x - &self.xs[i - 1])
    }

    /// Exact preimage: the unique `x` with `f(x) = y`.
    pub fn evaluate_inverse(&self, y: &Rat) -> Rat {
        if *y <= self.ys[0] {
            return &self.xs[0] + (y - &self.ys[0]) / &self.left_slope;
        }
        let last = self.ys.len() - 1;
        if *y >= self.ys[last] {
            return &self.xs[last] + (y - &self.ys[last]) / &self.right_slope;
        }
        let i = match self.ys.binary_search_by(|p| p.cmp(y)) {
            Ok(i) => return self.xs[i].clone(),
            Err(i) => i,
        };
        let slope = (&self.ys[i] - &self.ys[i - 1]) / (&self.xs[i] - &self.xs[i - 1]);
        &self.xs[i - 1] + (y - &self.ys[i - 1]) / slope
    }

    /// `self ∘ g`: first apply `g`, then `self`.
    pub fn compose(&self, g: &PLHomeo) -> PLHomeo {
        let mut xs: Vec<Rat> = g.xs.clone();
        xs.extend(self.xs.iter().map(|bx| g.evaluate_inverse(bx)));
        xs.sort();
        xs.dedup();
        let ys: Vec<Rat> = xs.iter().map(|x| self.evaluate(&g.evaluate(x))).collect();
        let mut map = PLHomeo {
            xs,
            ys,
            left_slope: &self.left_slope * &g.left_slope,
            right_slope: &self.right_slope * &g.right_slope,
        };
        map.canonicalize();
        map
    }

    pub fn inverse(&self) -> PLHomeo {
        let mut map = PLHomeo {
            xs: self.ys.clone(),
            ys: self.xs.clone(),
            left_slope: self.left_slope.recip(),
            right_slope: self.right_slope.recip(),
        };
        map.canonicalize();
        map
    }

    /// `f^n` for any integer `n`; `f^0` is the identity.
    pub fn power(&self, n: i64) -> PLHomeo {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = PLHomeo::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base);
            }
        }
        acc
    }

    /// Pointwise `f^n(x)` without materializing the power.
    pub fn iterate(&self, x: &Rat, n: i64) -> Rat {
        let mut v = x.clone();
        if n >= 0 {
            for _ in 0..n {
                v = self.evaluate(&v);
            }
        } else {
            for _ in 0..(-n) {
                v = self.evaluate_inverse(&v);
            }
        }
        v
    }

    /// The displacement `f(x) - x` on the far left and far right, when the
    /// tails have slope one.
    fn tail_displacements(&self) -> Option<(Rat, Rat)> {
        if self.left_slope.is_one() && self.right_slope.is_one() {
            let last = self.xs.len() - 1;
            Some((
                &self.ys[0] - &self.xs[0],
                &self.ys[last] - &self.xs[last],
            ))
        } else {
            None
        }
    }

    pub fn fixed_sets(&self) -> FixedSet {
        fixed_sets(self)
    }
}

impl fmt::Display for PLHomeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let knots: Vec<String> = self
            .knots()
            .map(|(x, y)| format!("({}, {})", fmt_rat(x), fmt_rat(y)))
            .collect();
        write!(
            f,
            "PL[slope {} | {} | slope {}]",
            fmt_rat(&self.left_slope),
            knots.join(" "),
            fmt_rat(&self.right_slope)
        )
    }
}

/// Evaluates a word under an assignment of PL maps to generators. The
/// rightmost letters act first, so this is a homomorphism:
/// `evaluate_word(u·v) = evaluate_word(u) ∘ evaluate_word(v)`.
pub fn evaluate_word(w: &ReducedWord, maps: &[PLHomeo]) -> Result<PLHomeo, PlError> {
    let mut acc = PLHomeo::identity();
    for s in w.syllables() {
        let m = maps
            .get(s.gen)
            .ok_or(PlError::MissingAssignment { got: s.gen, have: maps.len() })?;
        acc = acc.compose(&m.power(s.exp));
    }
    Ok(acc)
}

/// Pointwise `w(maps)(x)` without building the composite map.
pub fn evaluate_word_at(w: &ReducedWord, maps: &[PLHomeo], x: &Rat) -> Result<Rat, PlError> {
    let mut v = x.clone();
    for s in w.syllables().iter().rev() {
        let m = maps
            .get(s.gen)
            .ok_or(PlError::MissingAssignment { got: s.gen, have: maps.len() })?;
        v = m.iterate(&v, s.exp);
    }
    Ok(v)
}

/// How an isolated fixed point sits relative to the displacement sign on its
/// two sides.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FixKind {
    /// `f > id` on the left, `f < id` on the right: transversal, attracting.
    Attracting,
    /// `f < id` on the left, `f > id` on the right: transversal, repelling.
    Repelling,
    /// `f > id` on both sides: attracts from the left only.
    AttractLeftRepelRight,
    /// `f < id` on both sides: attracts from the right only.
    RepelLeftAttractRight,
}

impl FixKind {
    pub fn is_transversal(&self) -> bool {
        matches!(self, FixKind::Attracting | FixKind::Repelling)
    }

    fn from_signs(left_positive: bool, right_positive: bool) -> FixKind {
        match (left_positive, right_positive) {
            (true, false) => FixKind::Attracting,
            (false, true) => FixKind::Repelling,
            (true, true) => FixKind::AttractLeftRepelRight,
            (false, false) => FixKind::RepelLeftAttractRight,
        }
    }
}

/// An isolated fixed point with its classification.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedPoint {
    pub at: Rat,
    pub kind: FixKind,
}

/// One connected component of the fixed set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FixComponent {
    Point(FixedPoint),
    /// A maximal interval (possibly a ray or the whole line) on which f = id.
    Interval(ClosedInterval),
}

impl FixComponent {
    pub fn lo(&self) -> Endpoint {
        match self {
            FixComponent::Point(p) => Endpoint::Finite(p.at.clone()),
            FixComponent::Interval(i) => i.lo().clone(),
        }
    }

    pub fn hi(&self) -> Endpoint {
        match self {
            FixComponent::Point(p) => Endpoint::Finite(p.at.clone()),
            FixComponent::Interval(i) => i.hi().clone(),
        }
    }
}

/// The exact fixed set of a PL homeomorphism: ordered components plus the
/// displacement sign on each complementary open component.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixedSet {
    /// Components, ascending, pairwise disjoint and non-adjacent.
    pub components: Vec<FixComponent>,
    /// Sign of `f(x) - x` on the complementary components, left to right.
    /// Empty when f is the identity; a single entry when f is fixed-point
    /// free; otherwise `components.len() + 1` entries unless a component is
    /// an unbounded ray absorbing that side.
    pub gap_signs: Vec<bool>, // true = displacement positive
}

impl FixedSet {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn isolated_points(&self) -> impl Iterator<Item = &FixedPoint> {
        self.components.iter().filter_map(|c| match c {
            FixComponent::Point(p) => Some(p),
            _ => None,
        })
    }

    pub fn identity_intervals(&self) -> impl Iterator<Item = &ClosedInterval> {
        self.components.iter().filter_map(|c| match c {
            FixComponent::Interval(i) => Some(i),
            _ => None,
        })
    }

    /// Infimum of the fixed set strictly above `x` (`PosInf` if none).
    pub fn infimum_above(&self, x: &Rat) -> Endpoint {
        let e = Endpoint::Finite(x.clone());
        for c in &self.components {
            if c.hi() > e {
                // component reaches above x; its low end (clamped to > x) is the inf
                let lo = c.lo();
                return if lo > e { lo } else { e };
            }
        }
        Endpoint::PosInf
    }

    /// Supremum of the fixed set strictly below `x` (`NegInf` if none).
    pub fn supremum_below(&self, x: &Rat) -> Endpoint {
        let e = Endpoint::Finite(x.clone());
        for c in self.components.iter().rev() {
            if c.lo() < e {
                let hi = c.hi();
                return if hi < e { hi } else { e };
            }
        }
        Endpoint::NegInf
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let e = Endpoint::Finite(x.clone());
        self.components.iter().any(|c| c.lo() <= e && e <= c.hi())
    }
}

/// Solves `f(x) = x` exactly piece by piece, merging identity pieces into
/// maximal intervals and classifying the isolated points by the displacement
/// sign change.
fn fixed_sets(f: &PLHomeo) -> FixedSet {
    // Pieces of the displacement d(x) = f(x) - x, left to right.
    // Each entry: (lo, hi, zero set on the closed piece, sign left over the
    // nonzero part). Zero set per piece is either empty, a point, or the
    // whole piece.
    #[derive(Debug)]
    enum PieceZero {
        None { positive: bool },
        Point { at: Rat, left_positive: Option<bool>, right_positive: Option<bool> },
        Whole,
    }

    let n = f.xs.len();
    let slopes = f.slopes();
    // piece i: domain [piece_lo(i), piece_hi(i)] with slope slopes[i];
    // i = 0 is the left tail, i = n the right tail.
    let piece = |i: usize| -> (Endpoint, Endpoint, &Rat, (&Rat, &Rat)) {
        let lo = if i == 0 { Endpoint::NegInf } else { Endpoint::Finite(f.xs[i - 1].clone()) };
        let hi = if i == n { Endpoint::PosInf } else { Endpoint::Finite(f.xs[i].clone()) };
        let anchor_idx = if i == 0 { 0 } else { i - 1 };
        (lo, hi, &slopes[i], (&f.xs[anchor_idx], &f.ys[anchor_idx]))
    };

    let mut zeros: Vec<(Endpoint, Endpoint, PieceZero)> = Vec::new();
    for i in 0..=n {
        let (lo, hi, slope, (ax, ay)) = piece(i);
        let d_slope = slope - Rat::one();
        let d_anchor = ay - ax;
        let z = if d_slope.is_zero() {
            if d_anchor.is_zero() {
                PieceZero::Whole
            } else {
                PieceZero::None { positive: d_anchor.is_positive() }
            }
        } else {
            // d(x) = d_anchor + d_slope (x - ax); root where d = 0
            let root = ax - &d_anchor / &d_slope;
            let re = Endpoint::Finite(root.clone());
            if re < lo || re > hi {
                // sign on the whole piece: d_slope*(x - root) for x in piece
                let positive = if re < lo {
                    d_slope.is_positive()
                } else {
                    d_slope.is_negative()
                };
                PieceZero::None { positive }
            } else {
                let left_positive = if re > lo { Some(d_slope.is_negative()) } else { None };
                let right_positive = if re < hi { Some(d_slope.is_positive()) } else { None };
                PieceZero::Point { at: root, left_positive, right_positive }
            }
        };
        zeros.push((lo, hi, z));
    }

    // Walk pieces, assembling maximal fixed components and gap signs.
    // `runs` alternates between fixed components and signed gaps.
    #[derive(Clone, Debug, PartialEq)]
    enum Run {
        Fixed(Endpoint, Endpoint), // a closed chunk of the fixed set
        Gap(bool),                 // sign of d on an open complementary chunk
    }
    let mut runs: Vec<Run> = Vec::new();
    let push = |runs: &mut Vec<Run>, r: Run| match (runs.last_mut(), &r) {
        (Some(Run::Fixed(_, hi)), Run::Fixed(lo2, hi2)) => {
            debug_assert!(*lo2 <= *hi, "fixed runs touch at piece boundaries");
            if *hi2 > *hi {
                *hi = hi2.clone();
            }
        }
        (Some(Run::Gap(s)), Run::Gap(s2)) => {
            debug_assert_eq!(*s, *s2, "adjacent gaps must carry one sign");
        }
        _ => runs.push(r),
    };
    for (lo, hi, z) in zeros {
        match z {
            PieceZero::Whole => push(&mut runs, Run::Fixed(lo, hi)),
            PieceZero::None { positive } => push(&mut runs, Run::Gap(positive)),
            PieceZero::Point { at, left_positive, right_positive } => {
                if let Some(s) = left_positive {
                    push(&mut runs, Run::Gap(s));
                }
                push(
                    &mut runs,
                    Run::Fixed(Endpoint::Finite(at.clone()), Endpoint::Finite(at)),
                );
                if let Some(s) = right_positive {
                    push(&mut runs, Run::Gap(s));
                }
            }
        }
    }

    let mut components = Vec::new();
    let mut gap_signs = Vec::new();
    for (i, r) in runs.iter().enumerate() {
        match r {
            Run::Gap(s) => gap_signs.push(*s),
            Run::Fixed(lo, hi) => {
                if lo == hi {
                    let at = lo.finite().expect("point component is finite").clone();
                    let left_positive = match i.checked_sub(1).map(|j| &runs[j]) {
                        Some(Run::Gap(s)) => *s,
                        _ => unreachable!("isolated point has a gap on its left"),
                    };
                    let right_positive = match runs.get(i + 1) {
                        Some(Run::Gap(s)) => *s,
                        _ => unreachable!("isolated point has a gap on its right"),
                    };
                    components.push(FixComponent::Point(FixedPoint {
                        at,
                        kind: FixKind::from_signs(left_positive, right_positive),
                    }));
                } else {
                    components.push(FixComponent::Interval(ClosedInterval::new(
                        lo.clone(),
                        hi.clone(),
                    )));
                }
            }
        }
    }
    FixedSet { components, gap_signs }
}

/// Which power direction an orbit hull covers.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PowerDirection {
    /// All `f^n` with `n >= 1`.
    Positive,
    /// All `f^n` with `n <= -1`.
    Negative,
}

/// The closed convex hull of the union of all `f^n(I)` over one sign of `n`,
/// computed exactly from the monotonicity of endpoint orbits: each hull end is
/// either the first iterate or the limiting fixed point. The hull is
/// conservative: it contains every attained iterate and the limit points.
pub fn forward_orbit_hull(
    f: &PLHomeo,
    interval: &ClosedInterval,
    direction: PowerDirection,
) -> ClosedInterval {
    let fs = f.fixed_sets();
    let step = |x: &Rat| match direction {
        PowerDirection::Positive => f.evaluate(x),
        PowerDirection::Negative => f.evaluate_inverse(x),
    };
    let lo = match interval.lo() {
        Endpoint::NegInf => Endpoint::NegInf,
        Endpoint::Finite(a) => {
            let v = step(a);
            match v.cmp(a) {
                Ordering::Equal => Endpoint::Finite(a.clone()),
                Ordering::Greater => Endpoint::Finite(v),
                Ordering::Less => fs.supremum_below(a),
            }
        }
        Endpoint::PosInf => unreachable!(),
    };
    let hi = match interval.hi() {
        Endpoint::PosInf => Endpoint::PosInf,
        Endpoint::Finite(b) => {
            let v = step(b);
            match v.cmp(b) {
                Ordering::Equal => Endpoint::Finite(b.clone()),
                Ordering::Less => Endpoint::Finite(v),
                Ordering::Greater => fs.infimum_above(b),
            }
        }
        Endpoint::NegInf => unreachable!(),
    };
    ClosedInterval::new(lo, hi)
}

/// Translation-number classification of a single map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TranslationNumber {
    /// The map has fixed points; its translation number is zero.
    FixedPoints,
    /// Fixed-point free with slope-one tails whose displacements agree: the
    /// map is eventually translation by this amount on both ends.
    Translation(Rat),
    /// Fixed-point free but not translation-like at the ends.
    Undefined,
}

pub fn translation_number(f: &PLHomeo) -> TranslationNumber {
    if !f.fixed_sets().is_empty() {
        return TranslationNumber::FixedPoints;
    }
    match f.tail_displacements() {
        Some((l, r)) if l == r => TranslationNumber::Translation(l),
        _ => TranslationNumber::Undefined,
    }
}
