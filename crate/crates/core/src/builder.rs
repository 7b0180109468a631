//! Two-pass model construction.
//!
//! Declarations refer to each other by id, in any order. [`ModelBuilder::build`]
//! links them and checks every structural invariant of the store; an id
//! declared under two *different* entity kinds is not a structural error
//! here but an axiom violation reported by
//! [`check_disjointness`](crate::checker::check_disjointness).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::functions::{FunctionKind, FunctionSpec, SituationConcept, Slot};
use crate::model::{Attributive, Continuant, Fact, NamedFact, Presential, Process, Situation, SituationExtent};
use crate::time::{Chronoid, Time};
use crate::value::{is_positive, PropertyDef, Support, Value, ValueDomain};
use crate::{Id, Model};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelErrorKind {
    DuplicateId,
    DuplicateEntry,
    DanglingReference,
    UnknownProperty,
    OutOfExtent,
    CoordinateMismatch,
    MissingEndpointSample,
    InvalidValue,
    SupportMismatch,
    NonPositiveWindow,
    EmptyDomain,
    EmptyConcept,
    EmptyFact,
    MalformedPropertyFact,
}

/// A structural invariant broken by a declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelError {
    pub kind: ModelErrorKind,
    /// The declaration at fault.
    pub subject: Id,
    /// The referenced id, for dangling references and unknown properties.
    pub target: Option<Id>,
    /// The time sample at fault, if any.
    pub at: Option<Time>,
    pub message: String,
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl ModelError {
    fn new(kind: ModelErrorKind, subject: &Id, message: String) -> Self {
        ModelError { kind, subject: subject.clone(), target: None, at: None, message }
    }

    fn target(mut self, target: &Id) -> Self {
        self.target = Some(target.clone());
        self
    }

    fn at(mut self, t: &Time) -> Self {
        self.at = Some(t.clone());
        self
    }

    fn dangling(subject: &Id, what: &str, target: &Id) -> Self {
        ModelError::new(
            ModelErrorKind::DanglingReference,
            subject,
            format!("`{subject}` refers to undeclared {what} `{target}`"),
        )
        .target(target)
    }

    fn unknown_property(subject: &Id, prop: &Id) -> Self {
        ModelError::new(
            ModelErrorKind::UnknownProperty,
            subject,
            format!("`{subject}` uses undeclared property `{prop}`"),
        )
        .target(prop)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentialDecl {
    pub id: Id,
    pub chronoid: Id,
    pub at: Time,
    pub valuation: Vec<(Id, Value)>,
    pub material: bool,
}

impl PresentialDecl {
    pub fn new(id: impl Into<Id>, chronoid: impl Into<Id>, at: impl Into<Time>) -> Self {
        PresentialDecl {
            id: id.into(),
            chronoid: chronoid.into(),
            at: at.into(),
            valuation: Vec::new(),
            material: true,
        }
    }

    pub fn with(mut self, prop: impl Into<Id>, value: Value) -> Self {
        self.valuation.push((prop.into(), value));
        self
    }

    pub fn immaterial(mut self) -> Self {
        self.material = false;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcessDecl {
    pub id: Id,
    pub extent: Id,
    pub boundaries: Vec<(Time, Id)>,
    pub trajectories: Vec<(Id, Vec<(Time, Value)>)>,
}

impl ProcessDecl {
    pub fn new(id: impl Into<Id>, extent: impl Into<Id>) -> Self {
        ProcessDecl { id: id.into(), extent: extent.into(), boundaries: Vec::new(), trajectories: Vec::new() }
    }

    pub fn boundary(mut self, t: impl Into<Time>, presential: impl Into<Id>) -> Self {
        self.boundaries.push((t.into(), presential.into()));
        self
    }

    pub fn trajectory(mut self, prop: impl Into<Id>, samples: Vec<(Time, Value)>) -> Self {
        self.trajectories.push((prop.into(), samples));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuantDecl {
    pub id: Id,
    pub lifetime: Id,
    pub exhibits: Vec<(Time, Id)>,
    pub material: bool,
}

impl ContinuantDecl {
    pub fn new(id: impl Into<Id>, lifetime: impl Into<Id>) -> Self {
        ContinuantDecl { id: id.into(), lifetime: lifetime.into(), exhibits: Vec::new(), material: true }
    }

    pub fn exhibit(mut self, t: impl Into<Time>, presential: impl Into<Id>) -> Self {
        self.exhibits.push((t.into(), presential.into()));
        self
    }

    pub fn immaterial(mut self) -> Self {
        self.material = false;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtentDecl {
    /// Situoid spanning the named chronoid.
    Over(Id),
    /// Presentic situation at `chronoid@t`.
    At(Id, Time),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SituationDecl {
    pub id: Id,
    pub extent: ExtentDecl,
    pub facts: Vec<Fact>,
    pub participants: Vec<Id>,
    pub founded_on: Option<Id>,
}

impl SituationDecl {
    pub fn presentic(id: impl Into<Id>, chronoid: impl Into<Id>, t: impl Into<Time>) -> Self {
        SituationDecl::with_extent(id, ExtentDecl::At(chronoid.into(), t.into()))
    }

    pub fn situoid(id: impl Into<Id>, chronoid: impl Into<Id>) -> Self {
        SituationDecl::with_extent(id, ExtentDecl::Over(chronoid.into()))
    }

    fn with_extent(id: impl Into<Id>, extent: ExtentDecl) -> Self {
        SituationDecl { id: id.into(), extent, facts: Vec::new(), participants: Vec::new(), founded_on: None }
    }

    pub fn founded_on(mut self, process: impl Into<Id>) -> Self {
        self.founded_on = Some(process.into());
        self
    }

    pub fn participant(mut self, id: impl Into<Id>) -> Self {
        self.participants.push(id.into());
        self
    }

    pub fn fact(mut self, fact: Fact) -> Self {
        self.facts.push(fact);
        self
    }
}

/// Collects declarations in any order and links them into a [`Model`].
#[derive(Clone, Debug, Default)]
pub struct ModelBuilder {
    chronoids: Vec<Chronoid>,
    properties: Vec<PropertyDef>,
    presentials: Vec<PresentialDecl>,
    processes: Vec<ProcessDecl>,
    continuants: Vec<ContinuantDecl>,
    situations: Vec<SituationDecl>,
    facts: Vec<(Id, Id, Fact)>,
    functions: Vec<FunctionSpec>,
    exe: Vec<(Id, Id)>,
    requirement_instances: Vec<(Id, Id)>,
    attributives: Vec<Attributive>,
}

impl ModelBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn chronoid(&mut self, chronoid: Chronoid) -> &mut Self {
        self.chronoids.push(chronoid);
        self
    }

    pub fn property(&mut self, property: PropertyDef) -> &mut Self {
        self.properties.push(property);
        self
    }

    pub fn presential(&mut self, decl: PresentialDecl) -> &mut Self {
        self.presentials.push(decl);
        self
    }

    pub fn process(&mut self, decl: ProcessDecl) -> &mut Self {
        self.processes.push(decl);
        self
    }

    pub fn continuant(&mut self, decl: ContinuantDecl) -> &mut Self {
        self.continuants.push(decl);
        self
    }

    pub fn situation(&mut self, decl: SituationDecl) -> &mut Self {
        self.situations.push(decl);
        self
    }

    /// A named fact, added as a constituent of `situation`.
    pub fn named_fact(&mut self, id: impl Into<Id>, situation: impl Into<Id>, fact: Fact) -> &mut Self {
        self.facts.push((id.into(), situation.into(), fact));
        self
    }

    pub fn function(&mut self, spec: FunctionSpec) -> &mut Self {
        self.functions.push(spec);
        self
    }

    /// Declares the primitive assertion `Exe(executor, process)`.
    pub fn exe(&mut self, executor: impl Into<Id>, process: impl Into<Id>) -> &mut Self {
        self.exe.push((executor.into(), process.into()));
        self
    }

    pub fn requirement_instance(&mut self, function: impl Into<Id>, situation: impl Into<Id>) -> &mut Self {
        self.requirement_instances.push((function.into(), situation.into()));
        self
    }

    pub fn attributive(&mut self, attributive: Attributive) -> &mut Self {
        self.attributives.push(attributive);
        self
    }

    pub fn build(&self) -> Result<Model, Vec<ModelError>> {
        let mut m = Model::default();
        let mut errors = Vec::new();

        for ch in &self.chronoids {
            insert_unique(&mut m.chronoids, ch.id(), ch.clone(), "chronoid", &mut errors);
        }
        for p in &self.properties {
            check_property(p, &mut errors);
            insert_unique(&mut m.properties, &p.name, p.clone(), "property", &mut errors);
        }
        for decl in &self.presentials {
            if let Some(p) = link_presential(&m, decl, &mut errors) {
                insert_unique(&mut m.presentials, &p.id.clone(), p, "presential", &mut errors);
            }
        }
        for decl in &self.processes {
            let Some(extent) = lookup_chronoid(&m, &decl.id, &decl.extent, &mut errors) else {
                continue;
            };
            let boundaries = collect_samples(&decl.id, &decl.boundaries, &mut errors);
            let mut trajectories = BTreeMap::new();
            for (prop, samples) in &decl.trajectories {
                if trajectories.contains_key(prop) {
                    errors.push(ModelError::new(
                        ModelErrorKind::DuplicateEntry,
                        &decl.id,
                        format!("`{}` declares trajectory `{prop}` twice", decl.id),
                    ));
                    continue;
                }
                let sorted = collect_samples(&decl.id, samples, &mut errors);
                trajectories.insert(prop.clone(), sorted.into_iter().collect());
            }
            let p = Process { id: decl.id.clone(), extent, boundaries, trajectories };
            check_process(&m, &p, &mut errors);
            insert_unique(&mut m.processes, &decl.id, p, "process", &mut errors);
        }
        for decl in &self.continuants {
            let Some(lifetime) = lookup_chronoid(&m, &decl.id, &decl.lifetime, &mut errors) else {
                continue;
            };
            let exhibits = collect_samples(&decl.id, &decl.exhibits, &mut errors);
            let c = Continuant { id: decl.id.clone(), lifetime, exhibits, material: decl.material };
            check_continuant(&m, &c, &mut errors);
            insert_unique(&mut m.continuants, &decl.id, c, "continuant", &mut errors);
        }
        for decl in &self.situations {
            if let Some(s) = link_situation(&m, decl, &mut errors) {
                insert_unique(&mut m.situations, &decl.id, s, "situation", &mut errors);
            }
        }
        for (id, situation, fact) in &self.facts {
            check_fact(&m, id, fact, &mut errors);
            match m.situations.get_mut(situation) {
                Some(s) => {
                    s.constituents.insert(fact.clone());
                }
                None => errors.push(ModelError::dangling(id, "situation", situation)),
            }
            let named = NamedFact { situation: situation.clone(), fact: fact.clone() };
            insert_unique(&mut m.facts, id, named, "fact", &mut errors);
        }
        for f in &self.functions {
            check_function(&m, f, &mut errors);
            insert_unique(&mut m.functions, &f.id, f.clone(), "function", &mut errors);
        }
        for (x, p) in &self.exe {
            if !m.is_individual(x) {
                errors.push(ModelError::dangling(x, "executor", x));
            }
            if !m.processes.contains_key(p) {
                errors.push(ModelError::dangling(x, "process", p));
            }
            m.exe.insert((x.clone(), p.clone()));
        }
        for (f, s) in &self.requirement_instances {
            if !m.functions.contains_key(f) {
                errors.push(ModelError::dangling(s, "function", f));
            }
            if !m.situations.contains_key(s) {
                errors.push(ModelError::dangling(f, "situation", s));
            }
            m.requirement_instances.entry(f.clone()).or_default().insert(s.clone());
        }
        for a in &self.attributives {
            if !m.is_individual(&a.bearer) {
                errors.push(ModelError::dangling(&a.bearer, "bearer", &a.bearer));
            }
            m.attributives.insert(a.clone());
        }

        if errors.is_empty() {
            Ok(m)
        } else {
            Err(errors)
        }
    }
}

impl Model {
    /// A copy of the model with `process` added. Its extent chronoid is
    /// registered if the model does not know it yet.
    pub fn with_process(&self, process: Process) -> Result<Model, Vec<ModelError>> {
        let mut errors = Vec::new();
        let mut m = self.clone();
        match m.chronoids.get(process.extent.id()) {
            Some(known) if known != &process.extent => errors.push(ModelError::new(
                ModelErrorKind::DuplicateId,
                process.extent.id(),
                format!("chronoid `{}` is already declared with another span", process.extent.id()),
            )),
            Some(_) => {}
            None => {
                m.chronoids.insert(process.extent.id().clone(), process.extent.clone());
            }
        }
        check_process(&m, &process, &mut errors);
        let id = process.id.clone();
        insert_unique(&mut m.processes, &id, process, "process", &mut errors);
        if errors.is_empty() {
            Ok(m)
        } else {
            Err(errors)
        }
    }
}

fn insert_unique<T>(map: &mut BTreeMap<Id, T>, id: &Id, value: T, what: &str, errors: &mut Vec<ModelError>) {
    if map.contains_key(id) {
        errors.push(ModelError::new(ModelErrorKind::DuplicateId, id, format!("{what} `{id}` is declared twice")));
    } else {
        map.insert(id.clone(), value);
    }
}

fn lookup_chronoid(m: &Model, subject: &Id, chronoid: &Id, errors: &mut Vec<ModelError>) -> Option<Chronoid> {
    let found = m.chronoids.get(chronoid).cloned();
    if found.is_none() {
        errors.push(ModelError::dangling(subject, "chronoid", chronoid));
    }
    found
}

fn collect_samples<V: Clone>(subject: &Id, samples: &[(Time, V)], errors: &mut Vec<ModelError>) -> BTreeMap<Time, V> {
    let mut map = BTreeMap::new();
    for (t, v) in samples {
        if map.insert(t.clone(), v.clone()).is_some() {
            errors.push(
                ModelError::new(
                    ModelErrorKind::DuplicateEntry,
                    subject,
                    format!("`{subject}` declares the sample at {t} twice"),
                )
                .at(t),
            );
        }
    }
    map
}

fn check_property(p: &PropertyDef, errors: &mut Vec<ModelError>) {
    if let Support::NonIsolated { window_radius } = &p.support {
        if !is_positive(window_radius) {
            errors.push(ModelError::new(
                ModelErrorKind::NonPositiveWindow,
                &p.name,
                format!("property `{}` needs a positive window radius, got {window_radius}", p.name),
            ));
        }
    }
    if let ValueDomain::Categorical(symbols) = &p.domain {
        if symbols.is_empty() {
            errors.push(ModelError::new(
                ModelErrorKind::EmptyDomain,
                &p.name,
                format!("property `{}` has an empty categorical domain", p.name),
            ));
        }
    }
}

fn check_value(m: &Model, subject: &Id, prop: &Id, value: &Value, errors: &mut Vec<ModelError>) -> Option<PropertyDef> {
    let Some(def) = m.properties.get(prop) else {
        errors.push(ModelError::unknown_property(subject, prop));
        return None;
    };
    if !def.domain.admits(value) {
        errors.push(
            ModelError::new(
                ModelErrorKind::InvalidValue,
                subject,
                format!("value `{value}` is outside the domain of property `{prop}`"),
            )
            .target(prop),
        );
    }
    Some(def.clone())
}

fn link_presential(m: &Model, decl: &PresentialDecl, errors: &mut Vec<ModelError>) -> Option<Presential> {
    let ch = lookup_chronoid(m, &decl.id, &decl.chronoid, errors)?;
    let at = match ch.boundary_at(&decl.at) {
        Ok(b) => b,
        Err(e) => {
            errors.push(ModelError::new(ModelErrorKind::OutOfExtent, &decl.id, format!("{e}")).at(&decl.at));
            return None;
        }
    };
    let mut valuation = BTreeMap::new();
    for (prop, value) in &decl.valuation {
        if let Some(def) = check_value(m, &decl.id, prop, value, errors) {
            if !def.is_isolated() {
                errors.push(
                    ModelError::new(
                        ModelErrorKind::SupportMismatch,
                        &decl.id,
                        format!("presential `{}` cannot hold non-isolated property `{prop}`", decl.id),
                    )
                    .target(prop),
                );
            }
        }
        if valuation.insert(prop.clone(), value.clone()).is_some() {
            errors.push(ModelError::new(
                ModelErrorKind::DuplicateEntry,
                &decl.id,
                format!("presential `{}` values `{prop}` twice", decl.id),
            ));
        }
    }
    Some(Presential { id: decl.id.clone(), at, valuation, material: decl.material })
}

/// Shared sample-map invariants of processes and continuants.
fn check_sample_map(
    m: &Model,
    subject: &Id,
    span: &Chronoid,
    samples: &BTreeMap<Time, Id>,
    errors: &mut Vec<ModelError>,
) {
    for endpoint in [span.left(), span.right()] {
        if !samples.contains_key(endpoint) {
            errors.push(
                ModelError::new(
                    ModelErrorKind::MissingEndpointSample,
                    subject,
                    format!("`{subject}` has no sample at endpoint {endpoint} of {span}"),
                )
                .at(endpoint),
            );
        }
    }
    for (t, pres) in samples {
        if !span.contains(t) {
            errors.push(
                ModelError::new(ModelErrorKind::OutOfExtent, subject, format!("sample {t} of `{subject}` lies outside {span}"))
                    .at(t),
            );
        }
        match m.presentials.get(pres) {
            None => errors.push(ModelError::dangling(subject, "presential", pres).at(t)),
            Some(p) if p.coordinate() != t => errors.push(
                ModelError::new(
                    ModelErrorKind::CoordinateMismatch,
                    subject,
                    format!("presential `{pres}` is at {} but mapped at {t} by `{subject}`", p.coordinate()),
                )
                .target(pres)
                .at(t),
            ),
            Some(_) => {}
        }
    }
}

fn check_process(m: &Model, p: &Process, errors: &mut Vec<ModelError>) {
    check_sample_map(m, &p.id, &p.extent, &p.boundaries, errors);
    for (prop, samples) in &p.trajectories {
        if let Some(def) = m.properties.get(prop) {
            if def.is_isolated() {
                errors.push(
                    ModelError::new(
                        ModelErrorKind::SupportMismatch,
                        &p.id,
                        format!("isolated property `{prop}` belongs in presential valuations, not a trajectory"),
                    )
                    .target(prop),
                );
            }
        }
        for (t, v) in samples {
            check_value(m, &p.id, prop, v, errors);
            if !p.extent.contains(t) {
                errors.push(
                    ModelError::new(
                        ModelErrorKind::OutOfExtent,
                        &p.id,
                        format!("trajectory sample {t} of `{}` lies outside {}", p.id, p.extent),
                    )
                    .at(t),
                );
            }
        }
    }
}

fn check_continuant(m: &Model, c: &Continuant, errors: &mut Vec<ModelError>) {
    check_sample_map(m, &c.id, &c.lifetime, &c.exhibits, errors);
}

fn check_fact(m: &Model, subject: &Id, fact: &Fact, errors: &mut Vec<ModelError>) {
    if fact.args.is_empty() {
        errors.push(ModelError::new(
            ModelErrorKind::EmptyFact,
            subject,
            format!("fact `{}` in `{subject}` has no arguments", fact.relator),
        ));
    }
    for a in &fact.args {
        if !m.is_individual(a) {
            errors.push(ModelError::dangling(subject, "entity", a));
        }
    }
    if let Some(v) = &fact.value {
        if fact.args.len() != 1 {
            errors.push(ModelError::new(
                ModelErrorKind::MalformedPropertyFact,
                subject,
                format!("property fact `{fact}` must have exactly one subject"),
            ));
        }
        check_value(m, subject, &fact.relator, v, errors);
    }
}

fn link_situation(m: &Model, decl: &SituationDecl, errors: &mut Vec<ModelError>) -> Option<Situation> {
    let extent = match &decl.extent {
        ExtentDecl::Over(ch) => SituationExtent::Situoid(lookup_chronoid(m, &decl.id, ch, errors)?),
        ExtentDecl::At(ch, t) => {
            let ch = lookup_chronoid(m, &decl.id, ch, errors)?;
            match ch.boundary_at(t) {
                Ok(b) => SituationExtent::Presentic(b),
                Err(e) => {
                    errors.push(ModelError::new(ModelErrorKind::OutOfExtent, &decl.id, format!("{e}")).at(t));
                    return None;
                }
            }
        }
    };
    if let Some(p) = &decl.founded_on {
        if !m.processes.contains_key(p) {
            errors.push(ModelError::dangling(&decl.id, "process", p));
        }
    }
    let mut participants = BTreeSet::new();
    for x in &decl.participants {
        if !m.is_individual(x) {
            errors.push(ModelError::dangling(&decl.id, "entity", x));
        }
        participants.insert(x.clone());
    }
    for f in &decl.facts {
        check_fact(m, &decl.id, f, errors);
    }
    Some(Situation {
        id: decl.id.clone(),
        extent,
        constituents: decl.facts.iter().cloned().collect(),
        participants,
        founded_on: decl.founded_on.clone(),
    })
}

fn check_concept(m: &Model, f: &Id, c: &SituationConcept, errors: &mut Vec<ModelError>) {
    if c.facts.is_empty() && c.properties.is_empty() {
        errors.push(ModelError::new(
            ModelErrorKind::EmptyConcept,
            f,
            format!("concept `{}` of function `{f}` has no constraint", c.name),
        ));
    }
    for pattern in &c.facts {
        for slot in &pattern.args {
            if let Slot::Id(x) = slot {
                if !m.is_individual(x) {
                    errors.push(ModelError::dangling(f, "entity", x));
                }
            }
        }
    }
    for req in &c.properties {
        if !m.is_individual(&req.entity) {
            errors.push(ModelError::dangling(f, "entity", &req.entity));
        }
        if !m.properties.contains_key(&req.property) {
            errors.push(ModelError::unknown_property(f, &req.property));
        }
    }
}

fn check_function(m: &Model, f: &FunctionSpec, errors: &mut Vec<ModelError>) {
    check_concept(m, &f.id, &f.req, errors);
    check_concept(m, &f.id, &f.goal, errors);
    for (prop, _) in &f.fitem {
        if !m.properties.contains_key(prop) {
            errors.push(ModelError::unknown_property(&f.id, prop));
        }
    }
    if let FunctionKind::Individual { bearer } = &f.kind {
        if !m.is_individual(bearer) {
            errors.push(ModelError::dangling(&f.id, "bearer", bearer));
        }
    }
}
