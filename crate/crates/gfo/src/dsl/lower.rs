//! Second pass: checks declarations across statements, feeds the builder and
//! maps its errors back onto source spans.

use std::collections::HashMap;

use gfo_core::builder::{ContinuantDecl, PresentialDecl, ProcessDecl, SituationDecl};
use gfo_core::functions::{FactPattern, FunctionKind, FunctionSpec, SituationConcept};
use gfo_core::model::Attributive;
use gfo_core::{Chronoid, Fact, Id, Kind, Model, ModelBuilder, ModelError, ModelErrorKind, PropertyDef, Time};

use super::diagnostic::{Code, Raw, Span};
use super::parser::{ConceptExpr, ExtentExpr, FactExpr, SId, Sp, Stmt};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Namespace {
    Chronoid,
    Property,
    Function,
    Entity(Kind),
}

impl Namespace {
    fn describe(self) -> &'static str {
        match self {
            Namespace::Chronoid => "chronoid",
            Namespace::Property => "property",
            Namespace::Function => "function",
            Namespace::Entity(k) => k.as_str(),
        }
    }
}

#[derive(Default)]
struct Spans {
    decl: HashMap<Id, Span>,
    refs: HashMap<(Id, Id), Span>,
    times: HashMap<(Id, Time), Span>,
}

impl Spans {
    fn decl(&mut self, id: &SId) {
        self.decl.entry(id.node.clone()).or_insert(id.span);
    }

    fn reference(&mut self, subject: &Id, target: &SId) {
        self.refs.entry((subject.clone(), target.node.clone())).or_insert(target.span);
    }

    fn time(&mut self, subject: &Id, t: &Sp<Time>) {
        // Later occurrences win so that duplicated samples point at the repeat.
        self.times.insert((subject.clone(), t.node.clone()), t.span);
    }

    fn locate(&self, e: &ModelError) -> Span {
        if let Some(target) = &e.target {
            if let Some(s) = self.refs.get(&(e.subject.clone(), target.clone())) {
                return *s;
            }
        }
        if let Some(at) = &e.at {
            if let Some(s) = self.times.get(&(e.subject.clone(), at.clone())) {
                return *s;
            }
        }
        self.decl.get(&e.subject).copied().unwrap_or_default()
    }
}

fn code_for(kind: ModelErrorKind) -> Code {
    use ModelErrorKind::*;
    match kind {
        DuplicateId | DuplicateEntry => Code::DuplicateId,
        DanglingReference => Code::DanglingReference,
        UnknownProperty => Code::UnknownId,
        OutOfExtent | CoordinateMismatch | MissingEndpointSample | NonPositiveWindow => Code::BadRational,
        SupportMismatch => Code::KindConflict,
        InvalidValue | EmptyDomain | EmptyConcept | EmptyFact | MalformedPropertyFact => Code::UnexpectedToken,
    }
}

fn declared(stmt: &Stmt) -> Vec<(&SId, Namespace)> {
    match stmt {
        Stmt::Chronoid { id, .. } => vec![(id, Namespace::Chronoid)],
        Stmt::Property { id, .. } => vec![(id, Namespace::Property)],
        Stmt::Presential { id, .. } => vec![(id, Namespace::Entity(Kind::Presential))],
        Stmt::Process { id, .. } => vec![(id, Namespace::Entity(Kind::Process))],
        Stmt::Continuant { id, .. } => vec![(id, Namespace::Entity(Kind::Continuant))],
        Stmt::Situation { id, facts, .. } => std::iter::once((id, Namespace::Entity(Kind::Situation)))
            .chain(facts.iter().filter_map(|(n, _)| n.as_ref()).map(|n| (n, Namespace::Entity(Kind::Fact))))
            .collect(),
        Stmt::Fact { id, .. } => vec![(id, Namespace::Entity(Kind::Fact))],
        Stmt::Function { id, .. } => vec![(id, Namespace::Function)],
        Stmt::Exe { .. } | Stmt::RequirementInstance { .. } | Stmt::Attributive { .. } => Vec::new(),
    }
}

/// First pass over declarations: duplicate ids within a namespace and ids
/// declared under two entity kinds. Returns the ids whose later
/// declarations must be dropped before building.
fn check_declarations(stmts: &[Stmt], errors: &mut Vec<Raw>) -> HashMap<(Id, usize), ()> {
    let mut seen: HashMap<Id, Vec<(Namespace, Span)>> = HashMap::new();
    let mut dropped = HashMap::new();
    for (i, stmt) in stmts.iter().enumerate() {
        for (id, ns) in declared(stmt) {
            let prior = seen.entry(id.node.clone()).or_default();
            let entity = matches!(ns, Namespace::Entity(_));
            if let Some((_, _)) = prior.iter().find(|(p, _)| *p == ns) {
                errors.push(Raw::new(id.span, Code::DuplicateId, format!("{} `{}` is declared twice", ns.describe(), id.node)));
                dropped.insert((id.node.clone(), i), ());
            } else if let Some((p, _)) = prior.iter().find(|(p, _)| entity && matches!(p, Namespace::Entity(_))) {
                errors.push(Raw::new(
                    id.span,
                    Code::KindConflict,
                    format!("`{}` is declared as a {} and as a {}", id.node, p.describe(), ns.describe()),
                ));
                dropped.insert((id.node.clone(), i), ());
            }
            prior.push((ns, id.span));
        }
    }
    dropped
}

fn fact_of(f: &FactExpr) -> Fact {
    Fact { relator: f.relator.node.clone(), args: f.args.iter().map(|a| a.node.clone()).collect(), value: f.value.clone() }
}

fn concept_of(owner: &Id, suffix: &str, c: Option<&ConceptExpr>) -> SituationConcept {
    let Some(c) = c else {
        return SituationConcept::new(format!("{owner}-{suffix}"));
    };
    let mut out = SituationConcept::new(c.name.clone().unwrap_or_else(|| format!("{owner}-{suffix}").into()));
    for p in &c.facts {
        out = out.fact(FactPattern::new(p.relator.clone(), p.args.clone()));
    }
    for h in &c.holds {
        out = out.property(h.entity.node.clone(), h.property.node.clone(), h.constraint.clone());
    }
    out
}

pub(crate) fn lower(stmts: &[Stmt]) -> Result<Model, Vec<Raw>> {
    let mut errors = Vec::new();
    let dropped = check_declarations(stmts, &mut errors);
    let mut spans = Spans::default();
    let mut b = ModelBuilder::new();

    for (i, stmt) in stmts.iter().enumerate() {
        let keep = |id: &SId| !dropped.contains_key(&(id.node.clone(), i));
        match stmt {
            Stmt::Chronoid { id, left, right } => {
                spans.decl(id);
                match Chronoid::new(id.node.clone(), left.node.clone(), right.node.clone()) {
                    Ok(ch) if keep(id) => {
                        b.chronoid(ch);
                    }
                    Ok(_) => {}
                    Err(e) => errors.push(Raw::new(right.span, Code::BadRational, format!("zero-duration chronoid `{}`: {e}", id.node))),
                }
            }
            Stmt::Property { id, domain, support } => {
                spans.decl(id);
                if keep(id) {
                    b.property(PropertyDef::new(id.node.clone(), domain.clone(), support.node.clone()));
                }
            }
            Stmt::Presential { id, material, chronoid, at, valuation } => {
                spans.decl(id);
                spans.reference(&id.node, chronoid);
                spans.time(&id.node, at);
                let mut d = PresentialDecl::new(id.node.clone(), chronoid.node.clone(), at.node.clone());
                for (prop, v) in valuation {
                    spans.reference(&id.node, prop);
                    d = d.with(prop.node.clone(), v.clone());
                }
                if !material {
                    d = d.immaterial();
                }
                if keep(id) {
                    b.presential(d);
                }
            }
            Stmt::Process { id, extent, boundaries, trajectories } => {
                spans.decl(id);
                spans.reference(&id.node, extent);
                let mut d = ProcessDecl::new(id.node.clone(), extent.node.clone());
                for (t, m) in boundaries {
                    spans.time(&id.node, t);
                    spans.reference(&id.node, m);
                    d = d.boundary(t.node.clone(), m.node.clone());
                }
                for (prop, samples) in trajectories {
                    spans.reference(&id.node, prop);
                    for (t, _) in samples {
                        spans.time(&id.node, t);
                    }
                    d = d.trajectory(prop.node.clone(), samples.iter().map(|(t, v)| (t.node.clone(), v.clone())).collect());
                }
                if keep(id) {
                    b.process(d);
                }
            }
            Stmt::Continuant { id, material, lifetime, exhibits } => {
                spans.decl(id);
                spans.reference(&id.node, lifetime);
                let mut d = ContinuantDecl::new(id.node.clone(), lifetime.node.clone());
                for (t, m) in exhibits {
                    spans.time(&id.node, t);
                    spans.reference(&id.node, m);
                    d = d.exhibit(t.node.clone(), m.node.clone());
                }
                if !material {
                    d = d.immaterial();
                }
                if keep(id) {
                    b.continuant(d);
                }
            }
            Stmt::Situation { id, extent, founded_on, participants, facts } => {
                spans.decl(id);
                let mut d = match extent {
                    ExtentExpr::At(ch, t) => {
                        spans.reference(&id.node, ch);
                        spans.time(&id.node, t);
                        SituationDecl::presentic(id.node.clone(), ch.node.clone(), t.node.clone())
                    }
                    ExtentExpr::Over(ch) => {
                        spans.reference(&id.node, ch);
                        SituationDecl::situoid(id.node.clone(), ch.node.clone())
                    }
                };
                if let Some(p) = founded_on {
                    spans.reference(&id.node, p);
                    d = d.founded_on(p.node.clone());
                }
                for x in participants {
                    spans.reference(&id.node, x);
                    d = d.participant(x.node.clone());
                }
                for (name, f) in facts {
                    spans.reference(&id.node, &f.relator);
                    for a in &f.args {
                        spans.reference(&id.node, a);
                        if let Some(n) = name {
                            spans.reference(&n.node, a);
                        }
                    }
                    let fact = fact_of(f);
                    if let Some(n) = name {
                        spans.decl(n);
                        spans.reference(&n.node, &f.relator);
                        if keep(n) {
                            b.named_fact(n.node.clone(), id.node.clone(), fact.clone());
                        }
                    }
                    d = d.fact(fact);
                }
                if keep(id) {
                    b.situation(d);
                }
            }
            Stmt::Fact { id, fact, situation } => {
                spans.decl(id);
                spans.reference(&id.node, situation);
                spans.reference(&id.node, &fact.relator);
                for a in &fact.args {
                    spans.reference(&id.node, a);
                }
                if keep(id) {
                    b.named_fact(id.node.clone(), situation.node.clone(), fact_of(fact));
                }
            }
            Stmt::Function { id, labels, kind, req, goal, fitem } => {
                spans.decl(id);
                let mut f = FunctionSpec::new(id.node.clone(), concept_of(&id.node, "req", req.as_ref()), concept_of(&id.node, "goal", goal.as_ref()));
                for l in labels {
                    f = f.label(l.clone());
                }
                for c in req.iter().chain(goal) {
                    for h in &c.holds {
                        spans.reference(&id.node, &h.property);
                        spans.reference(&id.node, &h.entity);
                    }
                }
                for (prop, c) in fitem {
                    spans.reference(&id.node, prop);
                    f = f.requires_property(prop.node.clone(), c.clone());
                }
                if let Some(k) = kind {
                    if let FunctionKind::Individual { bearer } = &k.node {
                        spans.reference(&id.node, &Sp { node: bearer.clone(), span: k.span });
                    }
                    f = f.kind(k.node.clone());
                }
                if keep(id) {
                    b.function(f);
                }
            }
            Stmt::Exe { executor, process } => {
                spans.reference(&executor.node, executor);
                spans.reference(&executor.node, process);
                b.exe(executor.node.clone(), process.node.clone());
            }
            Stmt::RequirementInstance { function, situation } => {
                spans.reference(&situation.node, function);
                spans.reference(&function.node, situation);
                b.requirement_instance(function.node.clone(), situation.node.clone());
            }
            Stmt::Attributive { bearer, kind, note } => {
                spans.reference(&bearer.node, bearer);
                b.attributive(Attributive { bearer: bearer.node.clone(), kind: kind.node.clone(), note: note.clone() });
            }
        }
    }

    match b.build() {
        Ok(m) if errors.is_empty() => Ok(m),
        Ok(_) => Err(errors),
        Err(model_errors) => {
            // Duplicates were already reported (and dropped) by the first pass.
            errors.extend(model_errors.into_iter().map(|e| Raw::new(spans.locate(&e), code_for(e.kind), e.message)));
            Err(errors)
        }
    }
}
