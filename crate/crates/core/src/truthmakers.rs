//! Elementary propositions and their truth-makers `(process, situation, fact)`.
//!
//! A triple is well formed when the situation is founded on the process and
//! the fact is one of the situation's constituents. Finding no truth-maker
//! means the model holds no witness, not that the proposition is false.

use alloc::vec::Vec;
use core::fmt;

use crate::functions::{is_actual_realization, FunctionSpec, Slot};
use crate::model::{Fact, Situation, SituationExtent};
use crate::time::{Chronoid, Time};
use crate::value::{Support, ValueConstraint};
use crate::{Error, Id, Model, Process, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TimeRef {
    At(Time),
    During(Chronoid),
    Unanchored,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropositionForm {
    /// `holds(subject, property, constraint)`.
    Holds { subject: Id, property: Id, constraint: ValueConstraint },
    /// `fact relator(args)`.
    Fact { relator: Id, args: Vec<Slot> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proposition {
    pub form: PropositionForm,
    pub time: TimeRef,
}

impl Proposition {
    pub fn fact(relator: impl Into<Id>, args: Vec<Slot>, time: TimeRef) -> Self {
        Proposition { form: PropositionForm::Fact { relator: relator.into(), args }, time }
    }

    pub fn holds(subject: impl Into<Id>, property: impl Into<Id>, constraint: ValueConstraint, time: TimeRef) -> Self {
        Proposition {
            form: PropositionForm::Holds { subject: subject.into(), property: property.into(), constraint },
            time,
        }
    }

    /// Property names must be declared; relators and entity ids need not
    /// be (they simply find no truth-maker).
    pub fn validate(&self, m: &Model) -> Result<()> {
        if let PropositionForm::Holds { property, .. } = &self.form {
            m.property(property)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TruthMakerTriple {
    pub process: Id,
    pub situation: Id,
    pub fact: Fact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropertySupportClass {
    PresenticIsolated,
    PresenticNonIsolated,
    Global,
}

impl PropertySupportClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PropertySupportClass::PresenticIsolated => "presenticIsolated",
            PropertySupportClass::PresenticNonIsolated => "presenticNonIsolated",
            PropertySupportClass::Global => "global",
        }
    }
}

impl fmt::Display for PropertySupportClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `at(t)`: a presentic situation at `t`, or a situoid containing `t`.
/// `during(c)`: the situation's extent lies within `c`.
fn time_matches(extent: &SituationExtent, time: &TimeRef) -> bool {
    match (time, extent) {
        (TimeRef::Unanchored, _) => true,
        (TimeRef::At(t), SituationExtent::Presentic(b)) => b.coordinate() == t,
        (TimeRef::At(t), SituationExtent::Situoid(c)) => c.contains(t),
        (TimeRef::During(d), SituationExtent::Presentic(b)) => d.contains(b.coordinate()),
        (TimeRef::During(d), SituationExtent::Situoid(c)) => c.within(d),
    }
}

fn fact_satisfies(s: &Situation, fact: &Fact, phi: &Proposition) -> bool {
    let form_ok = match &phi.form {
        PropositionForm::Fact { relator, args } => {
            fact.relator == *relator
                && fact.args.len() == args.len()
                && args.iter().zip(&fact.args).all(|(slot, a)| slot.matches(a))
        }
        PropositionForm::Holds { subject, property, constraint } => {
            fact.relator == *property
                && fact.args.len() == 1
                && fact.args[0] == *subject
                && fact.value.as_ref().is_some_and(|v| constraint.admits(v))
        }
    };
    form_ok && time_matches(&s.extent, &phi.time)
}

/// `(P, S, f) ⊨ φ`. Ill-formed triples are rejected, never certified.
pub fn satisfies(m: &Model, tm: &TruthMakerTriple, phi: &Proposition) -> Result<bool> {
    let s = m
        .situations()
        .get(&tm.situation)
        .ok_or(Error::MalformedTriple { situation: tm.situation.clone(), reason: "unknown situation" })?;
    if !m.processes().contains_key(&tm.process) {
        return Err(Error::MalformedTriple { situation: tm.situation.clone(), reason: "unknown process" });
    }
    if s.founded_on.as_ref() != Some(&tm.process) {
        return Err(Error::MalformedTriple {
            situation: tm.situation.clone(),
            reason: "situation is not founded on the process",
        });
    }
    if !s.constituents.contains(&tm.fact) {
        return Err(Error::MalformedTriple {
            situation: tm.situation.clone(),
            reason: "fact is not a constituent of the situation",
        });
    }
    Ok(fact_satisfies(s, &tm.fact, phi))
}

/// Every truth-maker of `phi`, ordered by process, situation, then fact.
pub fn find_truthmakers(m: &Model, phi: &Proposition) -> Vec<TruthMakerTriple> {
    let mut out = Vec::new();
    for s in m.situations().values() {
        let Some(p) = &s.founded_on else { continue };
        for fact in &s.constituents {
            if fact_satisfies(s, fact, phi) {
                out.push(TruthMakerTriple { process: p.clone(), situation: s.id.clone(), fact: fact.clone() });
            }
        }
    }
    out.sort();
    out
}

/// `p` is a truth-maker for `phi` through one of its founded situations.
pub fn has_propositional_property(m: &Model, p: &str, phi: &Proposition) -> Result<bool> {
    m.process(p)?;
    Ok(find_truthmakers(m, phi).iter().any(|tm| tm.process == p))
}

pub fn classify_property_support(m: &Model, prop: &str, _p: &Process) -> Result<PropertySupportClass> {
    Ok(match m.property(prop)?.support {
        Support::Isolated => PropertySupportClass::PresenticIsolated,
        Support::NonIsolated { .. } => PropertySupportClass::PresenticNonIsolated,
        Support::Global => PropertySupportClass::Global,
    })
}

/// Whether `f` is a functional property of `p`. Functional properties are
/// always [`PropertySupportClass::Global`].
pub fn functional_property(m: &Model, p: &Process, f: &FunctionSpec) -> bool {
    is_actual_realization(m, p, f).is_some()
}

pub const FUNCTIONAL_PROPERTY_SUPPORT: PropertySupportClass = PropertySupportClass::Global;
