//! Closed rational intervals, axis-parallel boxes, and the piercing
//! primitive.
//!
//! Boxes are products of closed intervals and may collapse (lo = hi) in
//! any subset of coordinates. Axis-parallel boxes have Helly number 2:
//! pairwise intersection of any finite set implies a common point, and
//! the coordinatewise maximum of the lower endpoints is one. All
//! predicates are exact.

use crate::direction::DirSet;
use crate::error::{Error, Result};
use crate::rational::{format_rational, rat, Rational};

/// Closed interval [lo, hi] with lo ≤ hi; lo = hi is a point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidParameter(format!(
                "interval lower end {} exceeds upper end {}",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(v: Rational) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn of_ints(lo: i64, hi: i64) -> Result<Self> {
        Interval::new(rat(lo), rat(hi))
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then(|| Interval { lo, hi })
    }

    pub fn translate(&self, delta: &Rational) -> Interval {
        Interval {
            lo: &self.lo + delta,
            hi: &self.hi + delta,
        }
    }

    /// [lo − eps, hi + eps]; eps must be nonnegative.
    pub fn enlarged(&self, eps: &Rational) -> Interval {
        Interval {
            lo: &self.lo - eps,
            hi: &self.hi + eps,
        }
    }
}

impl std::fmt::Debug for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_point() {
            write!(f, "{{{}}}", format_rational(&self.lo))
        } else {
            write!(
                f,
                "[{},{}]",
                format_rational(&self.lo),
                format_rational(&self.hi)
            )
        }
    }
}

/// Intersection of two closed intervals, or `None` when empty.
pub fn interval_intersect(a: &Interval, b: &Interval) -> Option<Interval> {
    a.intersection(b)
}

/// Product of d closed intervals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AxisBox {
    sides: Vec<Interval>,
}

impl AxisBox {
    pub fn new(sides: Vec<Interval>) -> Result<Self> {
        if sides.is_empty() {
            return Err(Error::EmptyInput("box needs at least one side".into()));
        }
        if sides.len() > DirSet::MAX_DIMENSION {
            return Err(Error::InvalidParameter(format!(
                "dimension {} exceeds {}",
                sides.len(),
                DirSet::MAX_DIMENSION
            )));
        }
        Ok(AxisBox { sides })
    }

    /// Integer-endpoint box from (lo, hi) pairs, one per axis.
    pub fn from_ints(pairs: &[(i64, i64)]) -> Result<Self> {
        AxisBox::new(
            pairs
                .iter()
                .map(|&(lo, hi)| Interval::of_ints(lo, hi))
                .collect::<Result<_>>()?,
        )
    }

    pub fn dimension(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[Interval] {
        &self.sides
    }

    /// Side along a 1-based axis.
    pub fn side(&self, axis: usize) -> &Interval {
        &self.sides[axis - 1]
    }

    /// Axes along which the box has positive extent.
    pub fn direction_set(&self) -> DirSet {
        let mut s = DirSet::empty();
        for (i, side) in self.sides.iter().enumerate() {
            if !side.is_point() {
                s = s.with(i + 1);
            }
        }
        s
    }

    pub fn intersects(&self, other: &AxisBox) -> bool {
        debug_assert_eq!(self.dimension(), other.dimension());
        self.sides
            .iter()
            .zip(&other.sides)
            .all(|(a, b)| a.intersects(b))
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        debug_assert_eq!(self.dimension(), p.dimension());
        self.sides
            .iter()
            .zip(p.coords())
            .all(|(side, x)| side.contains(x))
    }

    pub fn translate(&self, axis: usize, delta: &Rational) -> AxisBox {
        let mut sides = self.sides.clone();
        sides[axis - 1] = sides[axis - 1].translate(delta);
        AxisBox { sides }
    }

    /// Replace the side along a 1-based axis.
    pub fn with_side(&self, axis: usize, side: Interval) -> AxisBox {
        let mut sides = self.sides.clone();
        sides[axis - 1] = side;
        AxisBox { sides }
    }
}

impl std::fmt::Debug for AxisBox {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, s) in self.sides.iter().enumerate() {
            if i > 0 {
                write!(f, "×")?;
            }
            write!(f, "{s:?}")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyInput("point needs at least one coordinate".into()));
        }
        Ok(Point { coords })
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Coordinate along a 1-based axis.
    pub fn coord(&self, axis: usize) -> &Rational {
        &self.coords[axis - 1]
    }
}

fn check_common_dimension(boxes: &[AxisBox]) -> Result<usize> {
    let first = boxes
        .first()
        .ok_or_else(|| Error::EmptyInput("no boxes given".into()))?;
    let d = first.dimension();
    for b in boxes {
        if b.dimension() != d {
            return Err(Error::DimensionMismatch(format!(
                "boxes of dimension {d} and {}",
                b.dimension()
            )));
        }
    }
    Ok(d)
}

/// Common intersection of all boxes, or `None` when empty.
pub fn box_intersect(boxes: &[AxisBox]) -> Result<Option<AxisBox>> {
    check_common_dimension(boxes)?;
    let mut acc = boxes[0].clone();
    for b in &boxes[1..] {
        let mut sides = Vec::with_capacity(acc.dimension());
        for (x, y) in acc.sides.iter().zip(&b.sides) {
            match x.intersection(y) {
                Some(i) => sides.push(i),
                None => return Ok(None),
            }
        }
        acc = AxisBox { sides };
    }
    Ok(Some(acc))
}

/// Helly piercing: if every pair of boxes intersects, a common point
/// exists, and the coordinatewise maximum of lower endpoints is one.
/// Returns `None` exactly when some pair (equivalently, the common
/// intersection) is empty.
pub fn helly_pierce(boxes: &[AxisBox]) -> Result<Option<Point>> {
    let d = check_common_dimension(boxes)?;
    for (i, a) in boxes.iter().enumerate() {
        for b in &boxes[i + 1..] {
            if !a.intersects(b) {
                return Ok(None);
            }
        }
    }
    let mut coords = Vec::with_capacity(d);
    for axis in 1..=d {
        let lo_max = boxes
            .iter()
            .map(|b| b.side(axis).lo())
            .max()
            .unwrap()
            .clone();
        coords.push(lo_max);
    }
    Ok(Some(Point { coords }))
}
