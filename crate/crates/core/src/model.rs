//! Immutable store of individuals, situations, facts and property definitions.
//!
//! Continuants and processes carry finitely many declared time samples.
//! Every relation that quantifies over time (snapshots, process boundaries,
//! the integration axiom) is evaluated over those samples only.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::functions::FunctionSpec;
use crate::time::{Chronoid, Time, TimeBoundary};
use crate::value::{PropertyDef, Value};
use crate::{Error, Id, Result};

/// The pairwise-disjoint kinds of addressable entities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Continuant,
    Presential,
    Process,
    Situation,
    Fact,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Continuant => "continuant",
            Kind::Presential => "presential",
            Kind::Process => "process",
            Kind::Situation => "situation",
            Kind::Fact => "fact",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An individual wholly present at one time boundary. Holds isolated
/// property values only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presential {
    pub id: Id,
    pub at: TimeBoundary,
    pub valuation: BTreeMap<Id, Value>,
    pub material: bool,
}

impl Presential {
    pub fn coordinate(&self) -> &Time {
        self.at.coordinate()
    }
}

/// A temporally extended individual. Its identity is not determined by its
/// boundaries: two processes may share an identical boundary map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Process {
    pub id: Id,
    pub extent: Chronoid,
    /// Sampled process boundaries: coordinate to presential id.
    pub boundaries: BTreeMap<Time, Id>,
    /// Non-isolated and global property data, sorted by coordinate.
    pub trajectories: BTreeMap<Id, Vec<(Time, Value)>>,
}

impl Process {
    /// The presential id at a declared sample; realizes `procbd(P, t, N)`.
    pub fn boundary_at(&self, t: &Time) -> Result<&Id> {
        if !self.extent.contains(t) {
            return Err(Error::OutOfExtent { process: self.id.clone(), at: t.clone() });
        }
        self.boundaries
            .get(t)
            .ok_or_else(|| Error::UnsampledTime { entity: self.id.clone(), at: t.clone() })
    }

    /// Restriction to `[left, right]`; both must be declared samples.
    /// The result keeps this process's id; callers give it a fresh one.
    pub fn temporal_part(&self, extent_id: impl Into<Id>, left: &Time, right: &Time) -> Result<Process> {
        let not_sub = || Error::NotASubinterval {
            process: self.id.clone(),
            left: left.clone(),
            right: right.clone(),
        };
        if left >= right {
            return Err(not_sub());
        }
        let extent = self.extent.restrict(extent_id, left, right).map_err(|_| not_sub())?;
        for t in [left, right] {
            if !self.boundaries.contains_key(t) {
                return Err(Error::UnsampledTime { entity: self.id.clone(), at: t.clone() });
            }
        }
        let boundaries = self
            .boundaries
            .range(left.clone()..=right.clone())
            .map(|(t, m)| (t.clone(), m.clone()))
            .collect();
        let trajectories = self
            .trajectories
            .iter()
            .map(|(p, samples)| {
                let kept = samples.iter().filter(|(t, _)| extent.contains(t)).cloned().collect();
                (p.clone(), kept)
            })
            .collect();
        Ok(Process { id: self.id.clone(), extent, boundaries, trajectories })
    }
}

/// An individual persisting through its lifetime, exhibiting presentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Continuant {
    pub id: Id,
    pub lifetime: Chronoid,
    /// Sampled snapshots: coordinate to presential id.
    pub exhibits: BTreeMap<Time, Id>,
    pub material: bool,
}

impl Continuant {
    /// The exhibited presential id; realizes `exhib(C, t, M)`.
    pub fn exhibited_at(&self, t: &Time) -> Result<&Id> {
        if !self.lifetime.contains(t) {
            return Err(Error::OutOfLifetime { continuant: self.id.clone(), at: t.clone() });
        }
        self.exhibits
            .get(t)
            .ok_or_else(|| Error::UnsampledTime { entity: self.id.clone(), at: t.clone() })
    }
}

/// A relator applied to entity arguments. A *property fact* carries a
/// value: `color(ball) = red` records a property of its single argument.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fact {
    pub relator: Id,
    pub args: Vec<Id>,
    pub value: Option<Value>,
}

impl Fact {
    pub fn new<I, A>(relator: impl Into<Id>, args: I) -> Self
    where
        I: IntoIterator<Item = A>,
        A: Into<Id>,
    {
        Fact { relator: relator.into(), args: args.into_iter().map(Into::into).collect(), value: None }
    }

    pub fn property(property: impl Into<Id>, subject: impl Into<Id>, value: Value) -> Self {
        Fact { relator: property.into(), args: alloc::vec![subject.into()], value: Some(value) }
    }
}

impl fmt::Display for Fact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.relator)?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")?;
        if let Some(v) = &self.value {
            write!(f, " = {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SituationExtent {
    /// Temporally extended situation.
    Situoid(Chronoid),
    /// Situation present at a single time boundary.
    Presentic(TimeBoundary),
}

impl SituationExtent {
    pub fn presentic_at(&self) -> Option<&Time> {
        match self {
            SituationExtent::Presentic(b) => Some(b.coordinate()),
            SituationExtent::Situoid(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Situation {
    pub id: Id,
    pub extent: SituationExtent,
    pub constituents: BTreeSet<Fact>,
    pub participants: BTreeSet<Id>,
    pub founded_on: Option<Id>,
}

/// A fact given its own id; it is also a constituent of `situation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedFact {
    pub situation: Id,
    pub fact: Fact,
}

/// Role, disposition or other attributive kept as inert metadata.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Attributive {
    pub bearer: Id,
    pub kind: Id,
    pub note: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Model {
    pub(crate) chronoids: BTreeMap<Id, Chronoid>,
    pub(crate) properties: BTreeMap<Id, PropertyDef>,
    pub(crate) presentials: BTreeMap<Id, Presential>,
    pub(crate) processes: BTreeMap<Id, Process>,
    pub(crate) continuants: BTreeMap<Id, Continuant>,
    pub(crate) situations: BTreeMap<Id, Situation>,
    pub(crate) facts: BTreeMap<Id, NamedFact>,
    pub(crate) functions: BTreeMap<Id, FunctionSpec>,
    pub(crate) exe: BTreeSet<(Id, Id)>,
    pub(crate) requirement_instances: BTreeMap<Id, BTreeSet<Id>>,
    pub(crate) attributives: BTreeSet<Attributive>,
}

impl Model {
    pub fn chronoids(&self) -> &BTreeMap<Id, Chronoid> {
        &self.chronoids
    }

    pub fn properties(&self) -> &BTreeMap<Id, PropertyDef> {
        &self.properties
    }

    pub fn presentials(&self) -> &BTreeMap<Id, Presential> {
        &self.presentials
    }

    pub fn processes(&self) -> &BTreeMap<Id, Process> {
        &self.processes
    }

    pub fn continuants(&self) -> &BTreeMap<Id, Continuant> {
        &self.continuants
    }

    pub fn situations(&self) -> &BTreeMap<Id, Situation> {
        &self.situations
    }

    pub fn named_facts(&self) -> &BTreeMap<Id, NamedFact> {
        &self.facts
    }

    pub fn functions(&self) -> &BTreeMap<Id, FunctionSpec> {
        &self.functions
    }

    /// Declared `Exe(executor, process)` assertions.
    pub fn exe_assertions(&self) -> &BTreeSet<(Id, Id)> {
        &self.exe
    }

    pub fn requirement_instances(&self) -> &BTreeMap<Id, BTreeSet<Id>> {
        &self.requirement_instances
    }

    pub fn attributives(&self) -> &BTreeSet<Attributive> {
        &self.attributives
    }

    pub fn property(&self, name: &str) -> Result<&PropertyDef> {
        self.properties.get(name).ok_or_else(|| Error::UnknownProperty(name.into()))
    }

    pub fn presential(&self, id: &str) -> Result<&Presential> {
        self.presentials.get(id).ok_or_else(|| Error::UnknownEntity(id.into()))
    }

    pub fn process(&self, id: &str) -> Result<&Process> {
        self.processes.get(id).ok_or_else(|| Error::UnknownEntity(id.into()))
    }

    pub fn continuant(&self, id: &str) -> Result<&Continuant> {
        self.continuants.get(id).ok_or_else(|| Error::UnknownEntity(id.into()))
    }

    pub fn situation(&self, id: &str) -> Result<&Situation> {
        self.situations.get(id).ok_or_else(|| Error::UnknownSituation(id.into()))
    }

    pub fn function(&self, id: &str) -> Result<&FunctionSpec> {
        self.functions.get(id).ok_or_else(|| Error::UnknownFunction(id.into()))
    }

    /// All kinds under which `id` is declared, in `Kind` order.
    pub fn kinds_of(&self, id: &str) -> Vec<Kind> {
        let mut kinds = Vec::new();
        if self.continuants.contains_key(id) {
            kinds.push(Kind::Continuant);
        }
        if self.presentials.contains_key(id) {
            kinds.push(Kind::Presential);
        }
        if self.processes.contains_key(id) {
            kinds.push(Kind::Process);
        }
        if self.situations.contains_key(id) {
            kinds.push(Kind::Situation);
        }
        if self.facts.contains_key(id) {
            kinds.push(Kind::Fact);
        }
        kinds
    }

    /// `Cont(x)`, `Pres(x)`, `Proc(x)` plus situations and named facts.
    pub fn classify(&self, id: &str) -> Result<Kind> {
        match self.kinds_of(id).as_slice() {
            [] => Err(Error::UnknownEntity(id.into())),
            [kind] => Ok(*kind),
            _ => Err(Error::AmbiguousKind(id.into())),
        }
    }

    /// Whether `id` names a spatio-temporal individual (continuant,
    /// presential or process).
    pub fn is_individual(&self, id: &str) -> bool {
        self.continuants.contains_key(id)
            || self.presentials.contains_key(id)
            || self.processes.contains_key(id)
    }

    /// All ids of continuants, presentials and processes, sorted and deduplicated.
    pub fn individual_ids(&self) -> BTreeSet<&Id> {
        self.continuants
            .keys()
            .chain(self.presentials.keys())
            .chain(self.processes.keys())
            .collect()
    }

    /// The process boundary of `p` at a declared sample `t`.
    pub fn process_boundary(&self, p: &Process, t: &Time) -> Result<&Presential> {
        let id = p.boundary_at(t)?;
        self.presential(id)
    }

    /// The snapshot `C(t)` of `c` at a declared sample `t`.
    pub fn snapshot(&self, c: &Continuant, t: &Time) -> Result<&Presential> {
        let id = c.exhibited_at(t)?;
        self.presential(id)
    }

    /// Temporal part of `p` restricted to `[left, right]`, with fresh ids
    /// for both the part and its extent chronoid.
    pub fn process_temporal_part(&self, p: &Process, left: &Time, right: &Time) -> Result<Process> {
        let extent_id = self.fresh_id(&format!("{}-span", p.id));
        let mut part = p.temporal_part(extent_id, left, right)?;
        part.id = self.fresh_id(&format!("{}-part", p.id));
        Ok(part)
    }

    /// First id among `base`, `base-2`, `base-3`, ... that is unused by any
    /// declaration in the model.
    pub fn fresh_id(&self, base: &str) -> Id {
        if !self.is_used(base) {
            return Id::from(base);
        }
        (2u64..)
            .map(|n| format!("{base}-{n}"))
            .find(|c| !self.is_used(c))
            .map(Id::from)
            .expect("unbounded counter")
    }

    pub(crate) fn is_used(&self, id: &str) -> bool {
        !self.kinds_of(id).is_empty()
            || self.chronoids.contains_key(id)
            || self.properties.contains_key(id)
            || self.functions.contains_key(id)
    }

    /// Property values of an individual at `t`: a presential's valuation at
    /// its own coordinate, a continuant's snapshot, or a process boundary
    /// merged with trajectory samples at exactly `t`.
    pub fn valuation_at(&self, entity: &str, t: &Time) -> Result<BTreeMap<Id, Value>> {
        if let Some(m) = self.presentials.get(entity) {
            if m.coordinate() != t {
                return Err(Error::UnsampledTime { entity: entity.into(), at: t.clone() });
            }
            return Ok(m.valuation.clone());
        }
        if let Some(c) = self.continuants.get(entity) {
            return Ok(self.snapshot(c, t)?.valuation.clone());
        }
        if let Some(p) = self.processes.get(entity) {
            if !p.extent.contains(t) {
                return Err(Error::OutOfExtent { process: p.id.clone(), at: t.clone() });
            }
            let mut values = match p.boundaries.get(t) {
                Some(m) => self.presential(m)?.valuation.clone(),
                None => BTreeMap::new(),
            };
            for (prop, samples) in &p.trajectories {
                if let Some((_, v)) = samples.iter().find(|(s, _)| s == t) {
                    values.insert(prop.clone(), v.clone());
                }
            }
            if values.is_empty() && !p.boundaries.contains_key(t) {
                return Err(Error::UnsampledTime { entity: entity.into(), at: t.clone() });
            }
            return Ok(values);
        }
        Err(Error::UnknownEntity(entity.into()))
    }

    /// Samples of `prop` along `p`: its trajectory if declared, otherwise the
    /// values recorded at the process boundaries.
    pub fn trajectory(&self, p: &Process, prop: &str) -> Result<Vec<(Time, Value)>> {
        self.property(prop)?;
        if let Some(samples) = p.trajectories.get(prop) {
            return Ok(samples.clone());
        }
        let mut samples = Vec::new();
        for (t, m) in &p.boundaries {
            if let Some(v) = self.presential(m)?.valuation.get(prop) {
                samples.push((t.clone(), v.clone()));
            }
        }
        if samples.is_empty() {
            return Err(Error::UnknownProperty(prop.into()));
        }
        Ok(samples)
    }

    /// Total number of declared time samples over continuants and processes.
    pub fn sample_count(&self) -> usize {
        self.continuants.values().map(|c| c.exhibits.len()).sum::<usize>()
            + self.processes.values().map(|p| p.boundaries.len()).sum::<usize>()
    }

    pub fn entity_count(&self) -> usize {
        self.continuants.len() + self.presentials.len() + self.processes.len()
    }
}
