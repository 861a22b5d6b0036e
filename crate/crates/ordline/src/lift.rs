//! Degree-one lifts of PL circle maps: homeomorphisms of the line commuting
//! with a rational translation.
//!
//! An eventually-affine map (finitely many breakpoints) other than a
//! translation can never commute with a translation: the breakpoint pattern
//! would have to repeat forever. Circle-map lifts therefore get their own
//! representation: knots on one fundamental window plus the equivariance rule
//! `h(x + period) = h(x) + period`. The classifier accepts both kinds of
//! generator through [`LineMap`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::pl::PLHomeo;
use crate::rat::{fmt_rat, rat_floor, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("period must be positive")]
    NonPositivePeriod,
    #[error("at least one knot is required")]
    NoKnots,
    #[error("knots must be strictly increasing and span less than one period")]
    BadKnots,
    #[error("values must be strictly increasing and rise less than one period")]
    BadValues,
}

/// A PL homeomorphism with `h(x + p) = h(x) + p` for a rational period
/// `p > 0`, given by knots on a window of length `< p` and extended
/// periodically (the last knot connects affinely to the first knot shifted by
/// one period).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PLLift {
    period: Rat,
    xs: Vec<Rat>,
    ys: Vec<Rat>,
}

impl PLLift {
    pub fn new(period: Rat, knots: Vec<(Rat, Rat)>) -> Result<Self, LiftError> {
        if !period.is_positive() {
            return Err(LiftError::NonPositivePeriod);
        }
        if knots.is_empty() {
            return Err(LiftError::NoKnots);
        }
        let (xs, ys): (Vec<Rat>, Vec<Rat>) = knots.into_iter().unzip();
        for w in xs.windows(2) {
            if w[0] >= w[1] {
                return Err(LiftError::BadKnots);
            }
        }
        if xs.last().unwrap() - &xs[0] >= period {
            return Err(LiftError::BadKnots);
        }
        for w in ys.windows(2) {
            if w[0] >= w[1] {
                return Err(LiftError::BadValues);
            }
        }
        if ys.last().unwrap() - &ys[0] >= period {
            return Err(LiftError::BadValues);
        }
        Ok(PLLift { period, xs, ys })
    }

    pub fn period(&self) -> &Rat {
        &self.period
    }

    pub fn knots(&self) -> impl Iterator<Item = (&Rat, &Rat)> {
        self.xs.iter().zip(self.ys.iter())
    }

    /// Shift of `x` into the fundamental window `[xs[0], xs[0] + period)` as
    /// a whole number of periods.
    fn window_shift(&self, x: &Rat) -> BigInt {
        rat_floor(&((x - &self.xs[0]) / &self.period))
    }

    pub fn evaluate(&self, x: &Rat) -> Rat {
        let n = self.window_shift(x);
        let shift = Rat::from_integer(n) * &self.period;
        let xw = x - &shift;
        // interpolate on the window; past the last knot, connect to the first
        // knot one period up
        let val = match self.xs.binary_search_by(|p| p.cmp(&xw)) {
            Ok(i) => self.ys[i].clone(),
            Err(i) if i > 0 && i < self.xs.len() => {
                let slope = (&self.ys[i] - &self.ys[i - 1]) / (&self.xs[i] - &self.xs[i - 1]);
                &self.ys[i - 1] + slope * (&xw - &self.xs[i - 1])
            }
            Err(i) => {
                debug_assert_eq!(i, self.xs.len());
                let last = self.xs.len() - 1;
                let next_x = &self.xs[0] + &self.period;
                let next_y = &self.ys[0] + &self.period;
                let slope = (&next_y - &self.ys[last]) / (&next_x - &self.xs[last]);
                &self.ys[last] + slope * (&xw - &self.xs[last])
            }
        };
        val + shift
    }

    pub fn evaluate_inverse(&self, y: &Rat) -> Rat {
        // h^-1 is the lift with knots swapped
        self.inverse().evaluate(y)
    }

    pub fn inverse(&self) -> PLLift {
        PLLift { period: self.period.clone(), xs: self.ys.clone(), ys: self.xs.clone() }
    }

    pub fn iterate(&self, x: &Rat, n: i64) -> Rat {
        let mut v = x.clone();
        if n >= 0 {
            for _ in 0..n {
                v = self.evaluate(&v);
            }
        } else {
            let inv = self.inverse();
            for _ in 0..(-n) {
                v = inv.evaluate(&v);
            }
        }
        v
    }

    pub fn is_translation(&self) -> Option<Rat> {
        let d0 = &self.ys[0] - &self.xs[0];
        if self.knots().all(|(x, y)| y - x == d0) {
            Some(d0)
        } else {
            None
        }
    }

    /// Exact check of `h(x + t) = h(x) + t` for all `x`: the displacement
    /// `h(x) - x` must be `t`-periodic, which for a PL lift holds iff the
    /// knot structure is invariant under the shift.
    pub fn commutes_with_translation(&self, t: &Rat) -> bool {
        if self.is_translation().is_some() {
            return true;
        }
        // Verify h(x + t) - t = h(x) at every knot and at every shifted knot
        // (two PL maps with the same period agree iff they agree on the union
        // of their knot sets plus the interleaving is affine; checking each
        // map's knots under the other covers all slope changes).
        for (x, y) in self.knots() {
            if &self.evaluate(&(x + t)) - t != *y {
                return false;
            }
            let x_back = x - t;
            if &self.evaluate(&x_back) + t != *y {
                return false;
            }
        }
        true
    }

    /// Fixed points inside the half-open window `[lo, lo + period)`, exact.
    /// The full fixed set is this family shifted by all multiples of the
    /// period (empty if the lift has no fixed point at all).
    pub fn fixed_points_in_window(&self, lo: &Rat) -> Vec<Rat> {
        // scan the pieces of one period starting at xs[0], solve per piece,
        // then shift into the requested window
        let mut roots: Vec<Rat> = Vec::new();
        let mut pts: Vec<(Rat, Rat)> = self.knots().map(|(x, y)| (x.clone(), y.clone())).collect();
        pts.push((&self.xs[0] + &self.period, &self.ys[0] + &self.period));
        for w in pts.windows(2) {
            let (x0, y0) = &w[0];
            let (x1, y1) = &w[1];
            let slope = (y1 - y0) / (x1 - x0);
            let d_slope = slope - Rat::from_integer(1.into());
            let d0 = y0 - x0;
            if d_slope.is_zero() {
                if d0.is_zero() {
                    // identity piece: endpoints suffice as representatives
                    roots.push(x0.clone());
                }
                continue;
            }
            let root = x0 - &d0 / &d_slope;
            if root >= *x0 && root < *x1 {
                roots.push(root);
            }
        }
        roots.sort();
        roots.dedup();
        // shift each root into [lo, lo + period)
        let mut out: Vec<Rat> = roots
            .into_iter()
            .map(|r| {
                let n = rat_floor(&((&r - lo) / &self.period));
                r - Rat::from_integer(n) * &self.period
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn has_fixed_points(&self) -> bool {
        !self.fixed_points_in_window(&self.xs[0]).is_empty()
    }
}

impl fmt::Display for PLLift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let knots: Vec<String> = self
            .knots()
            .map(|(x, y)| format!("({}, {})", fmt_rat(x), fmt_rat(y)))
            .collect();
        write!(f, "Lift[period {} | {}]", fmt_rat(&self.period), knots.join(" "))
    }
}

/// A generator of a marked action: either eventually affine or a periodic
/// lift.
#[derive(Clone, PartialEq, Debug)]
pub enum LineMap {
    Pl(PLHomeo),
    Lift(PLLift),
}

impl LineMap {
    pub fn evaluate(&self, x: &Rat) -> Rat {
        match self {
            LineMap::Pl(f) => f.evaluate(x),
            LineMap::Lift(f) => f.evaluate(x),
        }
    }

    pub fn iterate(&self, x: &Rat, n: i64) -> Rat {
        match self {
            LineMap::Pl(f) => f.iterate(x, n),
            LineMap::Lift(f) => f.iterate(x, n),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            LineMap::Pl(f) => f.is_identity(),
            LineMap::Lift(f) => f.is_translation().is_some_and(|d| d.is_zero()),
        }
    }

    /// Exact commutation with `x -> x + t`.
    pub fn commutes_with_translation(&self, t: &Rat) -> bool {
        match self {
            // an eventually-affine map commutes with a translation iff it is
            // itself a translation
            LineMap::Pl(f) => {
                let shifted = f.compose(&PLHomeo::translation(t.clone()));
                let other = PLHomeo::translation(t.clone()).compose(f);
                shifted == other
            }
            LineMap::Lift(f) => f.commutes_with_translation(t),
        }
    }
}

/// Pointwise evaluation of a word over line maps (no composite is built).
pub fn evaluate_word_at_linemaps(
    w: &crate::word::ReducedWord,
    maps: &[LineMap],
    x: &Rat,
) -> Option<Rat> {
    let mut v = x.clone();
    for s in w.syllables().iter().rev() {
        let m = maps.get(s.gen)?;
        v = m.iterate(&v, s.exp);
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_i};

    /// North-south circle map lifted: fixes 0 and 1/2 (mod 1), pushed right
    /// on (0, 1/2), left on (1/2, 1).
    pub(crate) fn north_south() -> PLLift {
        PLLift::new(
            rat_i(1),
            vec![
                (rat_i(0), rat_i(0)),
                (rat(1, 4), rat(3, 8)),
                (rat(1, 2), rat(1, 2)),
                (rat(3, 4), rat(5, 8)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn evaluation_is_periodic() {
        let f = north_south();
        assert_eq!(f.evaluate(&rat(1, 4)), rat(3, 8));
        assert_eq!(f.evaluate(&rat(9, 4)), rat(3, 8) + rat_i(2));
        assert_eq!(f.evaluate(&rat(-3, 4)), rat(3, 8) - rat_i(1));
        // between 3/4 and 1 the lift interpolates toward (1, 1)
        assert_eq!(f.evaluate(&rat(7, 8)), rat(13, 16));
        assert_eq!(f.evaluate(&rat_i(1)), rat_i(1));
    }

    #[test]
    fn inverse_round_trip() {
        let f = north_south();
        for x in [rat_i(0), rat(1, 3), rat(7, 8), rat(-5, 2), rat(22, 7)] {
            assert_eq!(f.evaluate_inverse(&f.evaluate(&x)), x);
        }
    }

    #[test]
    fn fixed_points_and_commutation() {
        let f = north_south();
        assert_eq!(f.fixed_points_in_window(&rat_i(0)), vec![rat_i(0), rat(1, 2)]);
        assert!(f.has_fixed_points());
        assert!(f.commutes_with_translation(&rat_i(1)));
        assert!(f.commutes_with_translation(&rat_i(2)));
        // the zigzag is asymmetric on purpose: half a period does not work
        assert!(!f.commutes_with_translation(&rat(1, 2)));
    }

    #[test]
    fn translation_lift() {
        let t = PLLift::new(rat_i(1), vec![(rat_i(0), rat(1, 3))]).unwrap();
        assert_eq!(t.is_translation(), Some(rat(1, 3)));
        assert!(t.commutes_with_translation(&rat(7, 5)));
        assert!(!t.has_fixed_points());
        assert_eq!(t.evaluate(&rat(5, 2)), rat(5, 2) + rat(1, 3));
    }

    #[test]
    fn eventually_affine_maps_commute_only_as_translations() {
        let t = LineMap::Pl(PLHomeo::translation(rat(2, 3)));
        assert!(t.commutes_with_translation(&rat_i(1)));
        let d = LineMap::Pl(PLHomeo::affine(rat_i(2), rat_i(0)));
        assert!(!d.commutes_with_translation(&rat_i(1)));
    }
}
