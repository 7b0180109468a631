use core::fmt;

use crate::time::{Time, TimeError};
use crate::Id;

/// Errors raised by queries over a [`Model`](crate::Model).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    Time(TimeError),
    UnknownEntity(Id),
    /// The id is declared under more than one kind; see `check_disjointness`.
    AmbiguousKind(Id),
    UnknownProperty(Id),
    UnknownSituation(Id),
    UnknownFunction(Id),
    OutOfExtent { process: Id, at: Time },
    OutOfLifetime { continuant: Id, at: Time },
    /// The coordinate lies inside the extent but is not a declared sample.
    UnsampledTime { entity: Id, at: Time },
    NotASubinterval { process: Id, left: Time, right: Time },
    MalformedContinuant { continuant: Id, reason: &'static str },
    MalformedTriple { situation: Id, reason: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Time(e) => write!(f, "{e}"),
            Error::UnknownEntity(id) => write!(f, "unknown entity `{id}`"),
            Error::AmbiguousKind(id) => write!(f, "`{id}` is declared under several kinds"),
            Error::UnknownProperty(id) => write!(f, "unknown property `{id}`"),
            Error::UnknownSituation(id) => write!(f, "unknown situation `{id}`"),
            Error::UnknownFunction(id) => write!(f, "unknown function `{id}`"),
            Error::OutOfExtent { process, at } => {
                write!(f, "time {at} is outside the extent of `{process}`")
            }
            Error::OutOfLifetime { continuant, at } => {
                write!(f, "time {at} is outside the lifetime of `{continuant}`")
            }
            Error::UnsampledTime { entity, at } => {
                write!(f, "`{entity}` has no declared sample at {at}")
            }
            Error::NotASubinterval { process, left, right } => {
                write!(f, "[{left}, {right}] is not a subinterval of the extent of `{process}`")
            }
            Error::MalformedContinuant { continuant, reason } => {
                write!(f, "malformed continuant `{continuant}`: {reason}")
            }
            Error::MalformedTriple { situation, reason } => {
                write!(f, "malformed truth-maker triple on `{situation}`: {reason}")
            }
        }
    }
}

impl From<TimeError> for Error {
    fn from(e: TimeError) -> Self {
        Error::Time(e)
    }
}
