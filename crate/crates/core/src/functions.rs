//! Functions as conceptual structures `(labels, requirements, goal, functional item)`,
//! and their realizations.
//!
//! A process *actually realizes* a function when a presentic situation at its
//! initial boundary instantiates the requirement concept and one at its final
//! boundary instantiates the goal concept. `Exe(x, p)` is primitive: it is
//! asserted in the model and never inferred.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::model::{Fact, Situation};
use crate::time::Time;
use crate::value::ValueConstraint;
use crate::{Error, Id, Model, Process, Result};

/// Argument slot of a fact pattern.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Id(Id),
    Wildcard,
}

impl Slot {
    pub fn matches(&self, id: &Id) -> bool {
        match self {
            Slot::Id(x) => x == id,
            Slot::Wildcard => true,
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Id(x) => write!(f, "{x}"),
            Slot::Wildcard => f.write_str("_"),
        }
    }
}

/// `relator(slot, ...)`. Matches facts with the same relator and arity,
/// whatever value a property fact carries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactPattern {
    pub relator: Id,
    pub args: Vec<Slot>,
}

impl FactPattern {
    pub fn new(relator: impl Into<Id>, args: Vec<Slot>) -> Self {
        FactPattern { relator: relator.into(), args }
    }

    pub fn matches(&self, fact: &Fact) -> bool {
        fact.relator == self.relator
            && fact.args.len() == self.args.len()
            && self.args.iter().zip(&fact.args).all(|(slot, a)| slot.matches(a))
    }
}

/// `entity.property op value`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PropertyRequirement {
    pub entity: Id,
    pub property: Id,
    pub constraint: ValueConstraint,
}

/// A concept whose instances are situations (requirements or goals).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SituationConcept {
    pub name: Id,
    pub facts: Vec<FactPattern>,
    pub properties: Vec<PropertyRequirement>,
}

impl SituationConcept {
    pub fn new(name: impl Into<Id>) -> Self {
        SituationConcept { name: name.into(), facts: Vec::new(), properties: Vec::new() }
    }

    pub fn fact(mut self, pattern: FactPattern) -> Self {
        self.facts.push(pattern);
        self
    }

    pub fn property(mut self, entity: impl Into<Id>, property: impl Into<Id>, constraint: ValueConstraint) -> Self {
        self.properties.push(PropertyRequirement { entity: entity.into(), property: property.into(), constraint });
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FunctionKind {
    Conceptual,
    Universal,
    Individual { bearer: Id },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionSpec {
    pub id: Id,
    /// Natural-language labels ("to pump blood"); inert metadata.
    pub labels: BTreeSet<String>,
    pub req: SituationConcept,
    pub goal: SituationConcept,
    /// Necessary properties of a bearer.
    pub fitem: Vec<(Id, ValueConstraint)>,
    pub kind: FunctionKind,
}

impl FunctionSpec {
    pub fn new(id: impl Into<Id>, req: SituationConcept, goal: SituationConcept) -> Self {
        FunctionSpec {
            id: id.into(),
            labels: BTreeSet::new(),
            req,
            goal,
            fitem: Vec::new(),
            kind: FunctionKind::Conceptual,
        }
    }

    pub fn label(mut self, label: impl Into<String>) -> Self {
        self.labels.insert(label.into());
        self
    }

    pub fn requires_property(mut self, prop: impl Into<Id>, constraint: ValueConstraint) -> Self {
        self.fitem.push((prop.into(), constraint));
        self
    }

    pub fn kind(mut self, kind: FunctionKind) -> Self {
        self.kind = kind;
        self
    }
}

/// Witness of `RI_act(p, f)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RealizationRecord {
    pub process: Id,
    pub requirement: Id,
    pub goal: Id,
}

fn property_holds(m: &Model, s: &Situation, entity: &Id, prop: &Id, constraint: &ValueConstraint) -> bool {
    let from_facts = s.constituents.iter().any(|f| {
        f.relator == *prop && f.args.len() == 1 && f.args[0] == *entity && f.value.as_ref().is_some_and(|v| constraint.admits(v))
    });
    if from_facts {
        return true;
    }
    let Some(t) = s.extent.presentic_at() else {
        return false;
    };
    if !s.participants.contains(entity) {
        return false;
    }
    m.valuation_at(entity, t)
        .ok()
        .and_then(|vals| vals.get(prop).map(|v| constraint.admits(v)))
        .unwrap_or(false)
}

fn situation_satisfies(m: &Model, s: &Situation, c: &SituationConcept) -> bool {
    c.facts.iter().all(|pat| s.constituents.iter().any(|f| pat.matches(f)))
        && c.properties.iter().all(|r| property_holds(m, s, &r.entity, &r.property, &r.constraint))
}

/// Whether situation `s` is an instance of `c`: every fact pattern matches a
/// constituent, and every property requirement holds either through a
/// constituent property fact or, for a presentic situation, through the
/// participant's valuation at the situation's time.
pub fn satisfies_concept(m: &Model, s: &str, c: &SituationConcept) -> Result<bool> {
    Ok(situation_satisfies(m, m.situation(s)?, c))
}

fn presentic_instances<'m>(m: &'m Model, at: &'m Time, c: &'m SituationConcept) -> impl Iterator<Item = &'m Id> + 'm {
    m.situations()
        .values()
        .filter(move |s| s.extent.presentic_at() == Some(at) && situation_satisfies(m, s, c))
        .map(|s| &s.id)
}

/// `RI_act(p, f)`: picks the smallest qualifying requirement and goal
/// situation ids.
pub fn is_actual_realization(m: &Model, p: &Process, f: &FunctionSpec) -> Option<RealizationRecord> {
    let requirement = presentic_instances(m, p.extent.left(), &f.req).next()?;
    let goal = presentic_instances(m, p.extent.right(), &f.goal).next()?;
    Some(RealizationRecord { process: p.id.clone(), requirement: requirement.clone(), goal: goal.clone() })
}

/// All actual realizations of `f` in the model, ordered by process id.
pub fn realizations(m: &Model, f: &FunctionSpec) -> Vec<RealizationRecord> {
    m.processes().values().filter_map(|p| is_actual_realization(m, p, f)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalRealization {
    pub holds: bool,
    /// Members without a realization record.
    pub unrealized: Vec<Id>,
    /// Requirement instances not covered by any member's record.
    pub uncovered: Vec<Id>,
}

/// `UnRI_act(members, f)`: every member realizes `f`, and the members'
/// requirement situations cover every registered requirement instance of
/// `f` that satisfies its requirement concept.
pub fn is_universal_realization(m: &Model, members: &BTreeSet<Id>, f: &FunctionSpec) -> Result<UniversalRealization> {
    let mut unrealized = Vec::new();
    let mut covered = BTreeSet::new();
    for id in members {
        match is_actual_realization(m, m.process(id)?, f) {
            Some(rec) => {
                covered.insert(rec.requirement);
            }
            None => unrealized.push(id.clone()),
        }
    }
    let uncovered: Vec<Id> = requirement_instances(m, f)
        .into_iter()
        .filter(|s| !covered.contains(*s))
        .cloned()
        .collect();
    Ok(UniversalRealization { holds: unrealized.is_empty() && uncovered.is_empty(), unrealized, uncovered })
}

/// Registered requirement instances of `f` that instantiate its requirement concept.
pub fn requirement_instances<'m>(m: &'m Model, f: &FunctionSpec) -> Vec<&'m Id> {
    m.requirement_instances()
        .get(&f.id)
        .into_iter()
        .flatten()
        .filter(|s| m.situations().get(*s).is_some_and(|sit| situation_satisfies(m, sit, &f.req)))
        .collect()
}

/// `Exe(x, p)`, as asserted in the model.
pub fn executes(m: &Model, x: &str, p: &str) -> Result<bool> {
    if !m.is_individual(x) {
        return Err(Error::UnknownEntity(x.into()));
    }
    if !m.is_individual(p) {
        return Err(Error::UnknownEntity(p.into()));
    }
    Ok(m.exe_assertions().contains(&(Id::from(x), Id::from(p))))
}

/// `R_Act(x, f)`: `x` executes some process that actually realizes `f`.
pub fn is_actual_realizer(m: &Model, x: &str, f: &FunctionSpec) -> Result<bool> {
    if !m.is_individual(x) {
        return Err(Error::UnknownEntity(x.into()));
    }
    Ok(m.exe_assertions()
        .iter()
        .filter(|(e, _)| e == x)
        .filter_map(|(_, p)| m.processes().get(p))
        .any(|p| is_actual_realization(m, p, f).is_some()))
}

/// Every actual realizer of `f`, sorted.
pub fn realizers(m: &Model, f: &FunctionSpec) -> Vec<Id> {
    let executors: BTreeSet<&Id> = m.exe_assertions().iter().map(|(x, _)| x).collect();
    executors
        .into_iter()
        .filter(|x| is_actual_realizer(m, x, f).unwrap_or(false))
        .cloned()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitemCheck {
    pub satisfied: bool,
    pub unmet: Vec<(Id, ValueConstraint)>,
}

/// Whether the bearer's valuation at `t` meets every functional-item constraint.
pub fn check_fitem(m: &Model, bearer: &str, f: &FunctionSpec, t: &Time) -> Result<FitemCheck> {
    let values = m.valuation_at(bearer, t)?;
    let unmet: Vec<_> = f
        .fitem
        .iter()
        .filter(|(prop, c)| !values.get(prop).is_some_and(|v| c.admits(v)))
        .cloned()
        .collect();
    Ok(FitemCheck { satisfied: unmet.is_empty(), unmet })
}
