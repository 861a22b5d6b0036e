//! Closed intervals with possibly infinite endpoints and normalized finite
//! unions of them. These carry the ping-pong sets and orbit hulls.

use std::cmp::Ordering;
use std::fmt;

use crate::rat::{fmt_rat, Rat};
use num_traits::Zero;

/// A point of the extended line.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum Endpoint {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl Endpoint {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Endpoint::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Endpoint::Finite(_))
    }

    /// Applies a strictly increasing map to the finite part, fixing the ends.
    pub fn map<F: FnOnce(&Rat) -> Rat>(&self, f: F) -> Endpoint {
        match self {
            Endpoint::Finite(q) => Endpoint::Finite(f(q)),
            e => e.clone(),
        }
    }
}

impl PartialOrd for Endpoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Endpoint {
    fn cmp(&self, other: &Self) -> Ordering {
        use Endpoint::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::NegInf => write!(f, "-inf"),
            Endpoint::PosInf => write!(f, "inf"),
            Endpoint::Finite(q) => write!(f, "{}", fmt_rat(q)),
        }
    }
}

/// A nonempty closed interval `[lo, hi]`, where an infinite end means a ray.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClosedInterval {
    lo: Endpoint,
    hi: Endpoint,
}

impl ClosedInterval {
    pub fn new(lo: Endpoint, hi: Endpoint) -> Self {
        assert!(lo <= hi, "empty interval: {lo} > {hi}");
        assert!(lo != Endpoint::PosInf && hi != Endpoint::NegInf);
        ClosedInterval { lo, hi }
    }

    pub fn finite(a: Rat, b: Rat) -> Self {
        Self::new(Endpoint::Finite(a), Endpoint::Finite(b))
    }

    pub fn point(q: Rat) -> Self {
        Self::new(Endpoint::Finite(q.clone()), Endpoint::Finite(q))
    }

    pub fn ray_left(hi: Rat) -> Self {
        Self::new(Endpoint::NegInf, Endpoint::Finite(hi))
    }

    pub fn ray_right(lo: Rat) -> Self {
        Self::new(Endpoint::Finite(lo), Endpoint::PosInf)
    }

    pub fn line() -> Self {
        Self::new(Endpoint::NegInf, Endpoint::PosInf)
    }

    pub fn lo(&self) -> &Endpoint {
        &self.lo
    }

    pub fn hi(&self) -> &Endpoint {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_point(&self, q: &Rat) -> bool {
        let e = Endpoint::Finite(q.clone());
        self.lo <= e && e <= self.hi
    }

    pub fn contains(&self, other: &ClosedInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &ClosedInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Some finite point inside the interval, used as a deterministic witness.
    pub fn finite_witness(&self) -> Rat {
        match (&self.lo, &self.hi) {
            (Endpoint::Finite(a), Endpoint::Finite(b)) => (a + b) / crate::rat::rat_i(2),
            (Endpoint::NegInf, Endpoint::Finite(b)) => b - crate::rat::rat_i(1),
            (Endpoint::Finite(a), Endpoint::PosInf) => a + crate::rat::rat_i(1),
            (Endpoint::NegInf, Endpoint::PosInf) => Rat::zero(),
            _ => unreachable!(),
        }
    }

    /// Image under a strictly increasing bijection of the line.
    pub fn map_monotone<F: Fn(&Rat) -> Rat>(&self, f: F) -> ClosedInterval {
        ClosedInterval::new(self.lo.map(&f), self.hi.map(&f))
    }

    /// Grows both finite endpoints outward by `delta >= 0`.
    pub fn inflate(&self, delta: &Rat) -> ClosedInterval {
        ClosedInterval::new(self.lo.map(|a| a - delta), self.hi.map(|b| b + delta))
    }
}

impl fmt::Display for ClosedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A finite union of pairwise-disjoint closed intervals, kept sorted with
/// genuine gaps between components (touching components are merged).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntervalSet {
    components: Vec<ClosedInterval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { components: Vec::new() }
    }

    /// Normalizes an arbitrary list of closed intervals.
    pub fn from_components(mut comps: Vec<ClosedInterval>) -> Self {
        comps.sort_by(|x, y| x.lo.cmp(&y.lo).then_with(|| x.hi.cmp(&y.hi)));
        let mut merged: Vec<ClosedInterval> = Vec::with_capacity(comps.len());
        for c in comps {
            match merged.last_mut() {
                Some(last) if c.lo <= last.hi => {
                    if c.hi > last.hi {
                        last.hi = c.hi;
                    }
                }
                _ => merged.push(c),
            }
        }
        IntervalSet { components: merged }
    }

    pub fn components(&self) -> &[ClosedInterval] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn contains_point(&self, q: &Rat) -> bool {
        self.components.iter().any(|c| c.contains_point(q))
    }

    /// A connected set fits in a union of disjoint components only if it fits
    /// in a single one.
    pub fn contains_interval(&self, other: &ClosedInterval) -> bool {
        self.components.iter().any(|c| c.contains(other))
    }

    pub fn contains_set(&self, other: &IntervalSet) -> bool {
        other.components.iter().all(|c| self.contains_interval(c))
    }

    /// First pairwise intersection with another set, if any.
    pub fn intersection_witness(&self, other: &IntervalSet) -> Option<(usize, usize)> {
        for (i, c) in self.components.iter().enumerate() {
            for (j, d) in other.components.iter().enumerate() {
                if c.intersects(d) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_disjoint_from(&self, other: &IntervalSet) -> bool {
        self.intersection_witness(other).is_none()
    }

    pub fn map_monotone<F: Fn(&Rat) -> Rat>(&self, f: F) -> IntervalSet {
        IntervalSet::from_components(
            self.components.iter().map(|c| c.map_monotone(&f)).collect(),
        )
    }

    pub fn inflate(&self, delta: &Rat) -> IntervalSet {
        IntervalSet::from_components(self.components.iter().map(|c| c.inflate(delta)).collect())
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" u "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;

    #[test]
    fn normalization_merges_touching_components() {
        let s = IntervalSet::from_components(vec![
            ClosedInterval::finite(rat_i(2), rat_i(3)),
            ClosedInterval::finite(rat_i(0), rat_i(1)),
            ClosedInterval::finite(rat_i(1), rat_i(2)),
        ]);
        assert_eq!(s.components().len(), 1);
        assert_eq!(s.components()[0], ClosedInterval::finite(rat_i(0), rat_i(3)));
    }

    #[test]
    fn containment_needs_a_single_component() {
        let s = IntervalSet::from_components(vec![
            ClosedInterval::finite(rat_i(0), rat_i(1)),
            ClosedInterval::finite(rat_i(5), rat_i(6)),
        ]);
        assert!(s.contains_interval(&ClosedInterval::finite(rat_i(0), rat_i(1))));
        assert!(!s.contains_interval(&ClosedInterval::finite(rat_i(0), rat_i(6))));
        assert!(s.contains_point(&rat_i(5)));
        assert!(!s.contains_point(&rat_i(2)));
    }

    #[test]
    fn rays_order_and_disjointness() {
        let left = IntervalSet::from_components(vec![ClosedInterval::ray_left(rat_i(-1))]);
        let right = IntervalSet::from_components(vec![ClosedInterval::ray_right(rat_i(1))]);
        assert!(left.is_disjoint_from(&right));
        let both = IntervalSet::from_components(vec![
            ClosedInterval::ray_left(rat_i(-1)),
            ClosedInterval::ray_right(rat_i(1)),
        ]);
        assert_eq!(both.components().len(), 2);
        assert!(both.contains_interval(&ClosedInterval::ray_right(rat_i(7))));
    }
}
