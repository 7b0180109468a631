//! Phenomenal time: exact coordinates, chronoids and their boundaries.
//!
//! A [`Chronoid`] is a connected interval of non-zero duration, represented
//! symbolically by its endpoints. Its [`TimeBoundary`] entities are
//! individuals, not numbers: the right boundary of `[0,5]` and the left
//! boundary of `[5,10]` are distinct entities that *coincide*.
//!
//! Coincidence is decided by coordinate equality alone, for any two
//! boundaries, whether or not their chronoids are otherwise related.

use alloc::format;
use core::fmt;
use core::str::FromStr;

use crate::value::{half, parse_rational, ParseRationalError, Rational};
use crate::Id;

/// Exact time coordinate (dimensionless model time).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Time(Rational);

impl Time {
    /// `numer / denom`; panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        Time(Rational::new(numer.into(), denom.into()))
    }

    pub fn int(n: i64) -> Self {
        Time(Rational::from_integer(n.into()))
    }

    pub fn from_rational(r: Rational) -> Self {
        Time(r)
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }

    pub fn midpoint(&self, other: &Time) -> Time {
        Time((&self.0 + &other.0) * half())
    }
}

impl fmt::Display for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Time {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).map(Time)
    }
}

impl From<i64> for Time {
    fn from(n: i64) -> Self {
        Time::int(n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TimeError {
    ZeroOrNegativeDuration { left: Time, right: Time },
    OutOfExtent { chronoid: Id, at: Time },
    NotASubinterval { chronoid: Id, left: Time, right: Time },
}

impl fmt::Display for TimeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeError::ZeroOrNegativeDuration { left, right } => {
                write!(f, "[{left}, {right}] has zero or negative duration")
            }
            TimeError::OutOfExtent { chronoid, at } => {
                write!(f, "time {at} lies outside chronoid `{chronoid}`")
            }
            TimeError::NotASubinterval { chronoid, left, right } => {
                write!(f, "[{left}, {right}] is not a subinterval of chronoid `{chronoid}`")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundaryKind {
    Left,
    Right,
    Inner,
}

/// Instantaneous boundary of a chronoid.
///
/// Boundaries are interned by `(owner, coordinate)`: the id is
/// `owner@coordinate`, so asking a chronoid for its boundary at the same
/// coordinate always yields the same entity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimeBoundary {
    id: Id,
    coordinate: Time,
    owner: Id,
    kind: BoundaryKind,
}

impl TimeBoundary {
    pub fn id(&self) -> &Id {
        &self.id
    }

    pub fn coordinate(&self) -> &Time {
        &self.coordinate
    }

    pub fn owner(&self) -> &Id {
        &self.owner
    }

    pub fn kind(&self) -> BoundaryKind {
        self.kind
    }
}

/// Connected time interval `[left, right]` with `left < right`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chronoid {
    id: Id,
    left: Time,
    right: Time,
}

impl Chronoid {
    pub fn new(id: impl Into<Id>, left: Time, right: Time) -> Result<Self, TimeError> {
        if left >= right {
            return Err(TimeError::ZeroOrNegativeDuration { left, right });
        }
        Ok(Chronoid { id: id.into(), left, right })
    }

    pub fn id(&self) -> &Id {
        &self.id
    }

    pub fn left(&self) -> &Time {
        &self.left
    }

    pub fn right(&self) -> &Time {
        &self.right
    }

    pub fn duration(&self) -> Rational {
        self.right.as_rational() - self.left.as_rational()
    }

    /// Closed containment: `left <= t <= right`.
    pub fn contains(&self, t: &Time) -> bool {
        &self.left <= t && t <= &self.right
    }

    /// Whether `self` lies within `other` (improper containment included).
    pub fn within(&self, other: &Chronoid) -> bool {
        other.left <= self.left && self.right <= other.right
    }

    pub fn same_span(&self, other: &Chronoid) -> bool {
        self.left == other.left && self.right == other.right
    }

    pub fn left_boundary(&self) -> TimeBoundary {
        self.make_boundary(self.left.clone(), BoundaryKind::Left)
    }

    pub fn right_boundary(&self) -> TimeBoundary {
        self.make_boundary(self.right.clone(), BoundaryKind::Right)
    }

    /// The boundary entity at `t`: the left or right boundary at the
    /// endpoints, an inner boundary otherwise.
    pub fn boundary_at(&self, t: &Time) -> Result<TimeBoundary, TimeError> {
        if !self.contains(t) {
            return Err(TimeError::OutOfExtent { chronoid: self.id.clone(), at: t.clone() });
        }
        let kind = if t == &self.left {
            BoundaryKind::Left
        } else if t == &self.right {
            BoundaryKind::Right
        } else {
            BoundaryKind::Inner
        };
        Ok(self.make_boundary(t.clone(), kind))
    }

    /// The temporal part `[left, right]` of this chronoid, named `id`.
    pub fn restrict(&self, id: impl Into<Id>, left: &Time, right: &Time) -> Result<Chronoid, TimeError> {
        if left >= right {
            return Err(TimeError::ZeroOrNegativeDuration { left: left.clone(), right: right.clone() });
        }
        if left < &self.left || right > &self.right {
            return Err(TimeError::NotASubinterval {
                chronoid: self.id.clone(),
                left: left.clone(),
                right: right.clone(),
            });
        }
        Ok(Chronoid { id: id.into(), left: left.clone(), right: right.clone() })
    }

    /// `self` ends exactly where `other` begins.
    pub fn meets(&self, other: &Chronoid) -> bool {
        self.right == other.left
    }

    fn make_boundary(&self, coordinate: Time, kind: BoundaryKind) -> TimeBoundary {
        TimeBoundary {
            id: Id::from(format!("{}@{}", self.id, coordinate)),
            coordinate,
            owner: self.id.clone(),
            kind,
        }
    }
}

impl fmt::Display for Chronoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.left, self.right)
    }
}

pub fn make_chronoid(id: impl Into<Id>, left: Time, right: Time) -> Result<Chronoid, TimeError> {
    Chronoid::new(id, left, right)
}

/// Two boundaries coincide when they occupy the same instant.
pub fn coincides(a: &TimeBoundary, b: &TimeBoundary) -> bool {
    a.coordinate == b.coordinate
}

pub fn meets(a: &Chronoid, b: &Chronoid) -> bool {
    a.meets(b)
}
