//! Property definitions, values and value constraints.

use alloc::collections::BTreeSet;
use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Id;

/// Exact rational number.
pub type Rational = BigRational;

/// Failure to read a rational literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseRationalError {
    pub literal: String,
    pub reason: &'static str,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad rational `{}`: {}", self.literal, self.reason)
    }
}

fn digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Reads `n`, `p/q` or a decimal such as `0.25`, with an optional leading `-`.
/// Decimals are converted exactly (`0.25` is `1/4`).
pub fn parse_rational(literal: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError { literal: literal.into(), reason };
    let (negative, body) = match literal.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, literal),
    };
    let value = if let Some((num, den)) = body.split_once('/') {
        if !digits(num) || !digits(den) {
            return Err(err("expected digits on both sides of `/`"));
        }
        let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
        BigRational::new(num, den)
    } else if let Some((int, frac)) = body.split_once('.') {
        if !digits(int) || !digits(frac) {
            return Err(err("expected digits on both sides of `.`"));
        }
        let scale = num_traits::pow(BigInt::from(10u8), frac.len());
        let whole: BigInt = int.parse().map_err(|_| err("bad integer part"))?;
        let part: BigInt = frac.parse().map_err(|_| err("bad fractional part"))?;
        BigRational::new(whole * &scale + part, scale)
    } else {
        if !digits(body) {
            return Err(err("expected a number"));
        }
        BigRational::from_integer(body.parse().map_err(|_| err("bad integer"))?)
    };
    Ok(if negative { -value } else { value })
}

/// A property value: a symbol from a categorical domain or an exact number.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Number(Rational),
    Symbol(Id),
}

impl Value {
    pub fn symbol(s: &str) -> Self {
        Value::Symbol(Id::from(s))
    }

    pub fn int(n: i64) -> Self {
        Value::Number(Rational::from_integer(n.into()))
    }

    pub fn as_number(&self) -> Option<&Rational> {
        match self {
            Value::Number(n) => Some(n),
            Value::Symbol(_) => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(n) => write!(f, "{n}"),
            Value::Symbol(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ValueDomain {
    Categorical(BTreeSet<Id>),
    Numeric,
}

impl ValueDomain {
    pub fn admits(&self, value: &Value) -> bool {
        match (self, value) {
            (ValueDomain::Categorical(symbols), Value::Symbol(s)) => symbols.contains(s),
            (ValueDomain::Numeric, Value::Number(_)) => true,
            _ => false,
        }
    }
}

/// How much time a property needs to be determined.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Support {
    /// Determined at a single time boundary (the color of a ball).
    Isolated,
    /// Needs a temporal window of the given radius around the boundary (velocity).
    NonIsolated { window_radius: Rational },
    /// Only determined over an extended interval (an electrocardiogram).
    Global,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PropertyDef {
    pub name: Id,
    pub domain: ValueDomain,
    pub support: Support,
}

impl PropertyDef {
    pub fn new(name: impl Into<Id>, domain: ValueDomain, support: Support) -> Self {
        PropertyDef { name: name.into(), domain, support }
    }

    pub fn categorical<'a>(
        name: impl Into<Id>,
        symbols: impl IntoIterator<Item = &'a str>,
        support: Support,
    ) -> Self {
        let symbols = symbols.into_iter().map(Id::from).collect();
        PropertyDef::new(name, ValueDomain::Categorical(symbols), support)
    }

    pub fn is_isolated(&self) -> bool {
        self.support == Support::Isolated
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Comparison {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Comparison {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Eq => "=",
            Comparison::Ne => "!=",
            Comparison::Lt => "<",
            Comparison::Le => "<=",
            Comparison::Gt => ">",
            Comparison::Ge => ">=",
        }
    }
}

/// `op value`, e.g. `= red` or `> 3/2`. Ordering comparisons only hold between numbers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValueConstraint {
    pub op: Comparison,
    pub value: Value,
}

impl ValueConstraint {
    pub fn new(op: Comparison, value: Value) -> Self {
        ValueConstraint { op, value }
    }

    pub fn eq(value: Value) -> Self {
        ValueConstraint::new(Comparison::Eq, value)
    }

    pub fn admits(&self, candidate: &Value) -> bool {
        match self.op {
            Comparison::Eq => candidate == &self.value,
            Comparison::Ne => candidate != &self.value,
            op => match (candidate.as_number(), self.value.as_number()) {
                (Some(c), Some(v)) => match op {
                    Comparison::Lt => c < v,
                    Comparison::Le => c <= v,
                    Comparison::Gt => c > v,
                    Comparison::Ge => c >= v,
                    Comparison::Eq | Comparison::Ne => unreachable!(),
                },
                _ => false,
            },
        }
    }
}

impl fmt::Display for ValueConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.op.symbol(), self.value)
    }
}

/// `|a - b| > tol`, with `tol >= 0`.
pub(crate) fn exceeds(a: &Rational, b: &Rational, tol: &Rational) -> bool {
    (a - b).abs() > *tol
}

pub(crate) fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

pub(crate) fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2u8))
}
