//! Axiom suite over a loaded [`Model`].
//!
//! - disjointness of continuants, presentials, processes, situations and facts;
//! - object-process integration: every material continuant `C` has a process
//!   `P` with `lft(C) = tempext(P)` whose boundary at every sample is the
//!   presential `C` exhibits there (`exhib(C,t,M) <-> procbd(P,t,M)`);
//! - presential dependence: every material presential is a process boundary.
//!
//! Violations are data. [`run_checks`] returns them in canonical order:
//! by axiom name, then subjects, then time.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::functions::requirement_instances;
use crate::model::Kind;
use crate::time::Time;
use crate::value::{exceeds, Rational, Value};
use crate::{Continuant, Error, Id, Model, Process, Result};

/// Registered axiom names. Variant order is the alphabetical order of the names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Disjointness,
    Integration,
    IntegrationNoProcess,
    PresentialDependence,
    RequirementInstance,
}

impl Axiom {
    pub fn as_str(self) -> &'static str {
        match self {
            Axiom::Disjointness => "disjointness",
            Axiom::Integration => "integration",
            Axiom::IntegrationNoProcess => "integration-no-process",
            Axiom::PresentialDependence => "presential-dependence",
            Axiom::RequirementInstance => "requirement-instance",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub axiom: Axiom,
    pub subjects: Vec<Id>,
    pub at: Option<Time>,
    pub message: String,
    pub severity: Severity,
}

impl Violation {
    fn error(axiom: Axiom, subjects: Vec<Id>, at: Option<Time>, message: String) -> Self {
        Violation { axiom, subjects, at, message, severity: Severity::Error }
    }
}

/// How "coincide" is read when comparing snapshots with process boundaries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum IntegrationMode {
    /// The very same presential entity at every sample.
    #[default]
    Identity,
    /// Presentials with equal valuations at every sample.
    Valuation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrationWitness {
    pub continuant: Id,
    pub process: Id,
    pub matched_samples: Vec<Time>,
}

pub fn check_disjointness(m: &Model) -> Vec<Violation> {
    let ids: BTreeSet<&Id> = m
        .continuants()
        .keys()
        .chain(m.presentials().keys())
        .chain(m.processes().keys())
        .chain(m.situations().keys())
        .chain(m.named_facts().keys())
        .collect();
    ids.into_iter()
        .filter_map(|id| {
            let kinds = m.kinds_of(id);
            (kinds.len() > 1).then(|| {
                let names: Vec<&str> = kinds.iter().map(|k| Kind::as_str(*k)).collect();
                Violation::error(
                    Axiom::Disjointness,
                    alloc::vec![id.clone()],
                    None,
                    format!("`{id}` is declared as {}", names.join(" and ")),
                )
            })
        })
        .collect()
}

fn same_presential(m: &Model, a: &Id, b: &Id, mode: IntegrationMode) -> bool {
    match mode {
        IntegrationMode::Identity => a == b,
        IntegrationMode::Valuation => {
            a == b
                || match (m.presentials().get(a), m.presentials().get(b)) {
                    (Some(x), Some(y)) => x.valuation == y.valuation,
                    _ => false,
                }
        }
    }
}

fn integration_mismatches(m: &Model, c: &Continuant, p: &Process, mode: IntegrationMode) -> Vec<Violation> {
    let subjects = || alloc::vec![c.id.clone(), p.id.clone()];
    let mut out = Vec::new();
    if !c.lifetime.same_span(&p.extent) {
        out.push(Violation::error(
            Axiom::Integration,
            subjects(),
            None,
            format!("lifetime {} of `{}` differs from extent {} of `{}`", c.lifetime, c.id, p.extent, p.id),
        ));
    }
    let samples: BTreeSet<&Time> = c.exhibits.keys().chain(p.boundaries.keys()).collect();
    for t in samples {
        let message = match (c.exhibits.get(t), p.boundaries.get(t)) {
            (Some(ex), None) => format!("`{}` exhibits `{ex}` at {t} but `{}` has no boundary there", c.id, p.id),
            (None, Some(bd)) => format!("`{}` has boundary `{bd}` at {t} but `{}` exhibits nothing there", p.id, c.id),
            (Some(ex), Some(bd)) if !same_presential(m, ex, bd, mode) => {
                format!("`{}` exhibits `{ex}` at {t} but the boundary of `{}` there is `{bd}`", c.id, p.id)
            }
            _ => continue,
        };
        out.push(Violation::error(Axiom::Integration, subjects(), Some(t.clone()), message));
    }
    out
}

/// Processes worth comparing with `c`: those with the same span as its
/// lifetime, or sharing at least one presential with it.
fn integration_candidates<'m>(m: &'m Model, c: &Continuant) -> Vec<&'m Process> {
    let exhibited: BTreeSet<&Id> = c.exhibits.values().collect();
    m.processes()
        .values()
        .filter(|p| p.extent.same_span(&c.lifetime) || p.boundaries.values().any(|b| exhibited.contains(b)))
        .collect()
}

/// Object-process integration for one continuant.
///
/// On success the witness names the smallest-id process that integrates
/// `c`. Otherwise the violations describe the mismatches against the
/// closest candidate (fewest mismatches, then smallest id), or a single
/// `integration-no-process` when no process shares its span or any of its
/// presentials.
pub fn check_integration(m: &Model, c: &Continuant, mode: IntegrationMode) -> core::result::Result<IntegrationWitness, Vec<Violation>> {
    let candidates = integration_candidates(m, c);
    if candidates.is_empty() {
        return Err(alloc::vec![Violation::error(
            Axiom::IntegrationNoProcess,
            alloc::vec![c.id.clone()],
            None,
            format!("no process integrates continuant `{}` over {}", c.id, c.lifetime),
        )]);
    }
    let mut best: Option<Vec<Violation>> = None;
    for p in candidates {
        let mismatches = integration_mismatches(m, c, p, mode);
        if mismatches.is_empty() {
            return Ok(IntegrationWitness {
                continuant: c.id.clone(),
                process: p.id.clone(),
                matched_samples: c.exhibits.keys().cloned().collect(),
            });
        }
        if best.as_ref().is_none_or(|b| mismatches.len() < b.len()) {
            best = Some(mismatches);
        }
    }
    Err(best.unwrap_or_default())
}

/// A fresh process with extent equal to `c`'s lifetime and boundaries equal
/// to its exhibited presentials.
pub fn derive_process(m: &Model, c: &Continuant) -> Result<Process> {
    let malformed = |reason| Error::MalformedContinuant { continuant: c.id.clone(), reason };
    if c.exhibits.is_empty() {
        return Err(malformed("no exhibited presentials"));
    }
    if !c.exhibits.contains_key(c.lifetime.left()) {
        return Err(malformed("left lifetime endpoint is not sampled"));
    }
    if !c.exhibits.contains_key(c.lifetime.right()) {
        return Err(malformed("right lifetime endpoint is not sampled"));
    }
    Ok(Process {
        id: m.fresh_id(&format!("{}-process", c.id)),
        extent: c.lifetime.clone(),
        boundaries: c.exhibits.clone(),
        trajectories: BTreeMap::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completion {
    pub model: Model,
    pub derived: Vec<Id>,
}

/// Derives a process for every material continuant that fails integration.
pub fn complete(m: &Model, mode: IntegrationMode) -> Completion {
    let mut model = m.clone();
    let mut derived = Vec::new();
    for c in m.continuants().values().filter(|c| c.material) {
        if check_integration(&model, c, mode).is_ok() {
            continue;
        }
        let Ok(p) = derive_process(&model, c) else { continue };
        derived.push(p.id.clone());
        model = model.with_process(p).expect("derived process is valid by construction");
    }
    Completion { model, derived }
}

/// Every material presential must be the boundary of some process.
pub fn check_presential_dependence(m: &Model) -> Vec<Violation> {
    let referenced: BTreeSet<&Id> = m.processes().values().flat_map(|p| p.boundaries.values()).collect();
    m.presentials()
        .values()
        .filter(|p| p.material && !referenced.contains(&p.id))
        .map(|p| {
            Violation::error(
                Axiom::PresentialDependence,
                alloc::vec![p.id.clone()],
                Some(p.coordinate().clone()),
                format!("material presential `{}` is not a boundary of any process", p.id),
            )
        })
        .collect()
}

/// Registered requirement instances that do not instantiate the function's
/// requirement concept are ignored for coverage; flag them as warnings.
pub fn check_requirement_instances(m: &Model) -> Vec<Violation> {
    let mut out = Vec::new();
    for (f_id, registered) in m.requirement_instances() {
        let Some(f) = m.functions().get(f_id) else { continue };
        let valid: BTreeSet<&Id> = requirement_instances(m, f).into_iter().collect();
        for s in registered.iter().filter(|s| !valid.contains(s)) {
            out.push(Violation {
                axiom: Axiom::RequirementInstance,
                subjects: alloc::vec![f_id.clone(), s.clone()],
                at: None,
                message: format!("registered requirement instance `{s}` does not satisfy the requirements of `{f_id}`"),
                severity: Severity::Warning,
            });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ContinuantChange {
    pub from: Time,
    pub to: Time,
    pub property: Id,
    /// `None` when the property is undefined on that snapshot.
    pub before: Option<Value>,
    pub after: Option<Value>,
}

/// Property differences between consecutive snapshots of `c`.
pub fn detect_continuant_changes(m: &Model, c: &Continuant) -> Vec<ContinuantChange> {
    let snapshots: Vec<(&Time, &BTreeMap<Id, Value>)> = c
        .exhibits
        .iter()
        .filter_map(|(t, id)| m.presentials().get(id).map(|p| (t, &p.valuation)))
        .collect();
    let mut out = Vec::new();
    for pair in snapshots.windows(2) {
        let ((t1, v1), (t2, v2)) = (pair[0], pair[1]);
        let props: BTreeSet<&Id> = v1.keys().chain(v2.keys()).collect();
        for prop in props {
            let (a, b) = (v1.get(prop), v2.get(prop));
            if a != b {
                out.push(ContinuantChange {
                    from: t1.clone(),
                    to: t2.clone(),
                    property: prop.clone(),
                    before: a.cloned(),
                    after: b.cloned(),
                });
            }
        }
    }
    out
}

fn values_differ(a: &Value, b: &Value, tol: &Rational) -> bool {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => exceeds(x, y, tol),
        _ => a != b,
    }
}

/// Midpoints between consecutive samples of `prop` along `p` whose values
/// differ (numbers by more than `tol`).
pub fn detect_process_changes(m: &Model, p: &Process, prop: &str, tol: &Rational) -> Result<Vec<Time>> {
    let samples = m.trajectory(p, prop)?;
    Ok(samples
        .windows(2)
        .filter(|w| values_differ(&w[0].1, &w[1].1, tol))
        .map(|w| w[0].0.midpoint(&w[1].0))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChangeRecord {
    Continuant { entity: Id, change: ContinuantChange },
    Process { entity: Id, property: Id, at: Time },
}

/// Changes of every continuant and every sampled property of every process.
pub fn summarize_changes(m: &Model, tol: &Rational) -> Vec<ChangeRecord> {
    let mut out = Vec::new();
    for c in m.continuants().values() {
        for change in detect_continuant_changes(m, c) {
            out.push(ChangeRecord::Continuant { entity: c.id.clone(), change });
        }
    }
    for p in m.processes().values() {
        for prop in process_properties(m, p) {
            for at in detect_process_changes(m, p, prop, tol).unwrap_or_default() {
                out.push(ChangeRecord::Process { entity: p.id.clone(), property: prop.clone(), at });
            }
        }
    }
    out
}

/// Properties with samples along `p`: trajectories plus isolated properties
/// valued at its boundaries.
pub fn process_properties<'m>(m: &'m Model, p: &'m Process) -> BTreeSet<&'m Id> {
    let mut props: BTreeSet<&Id> = p.trajectories.keys().collect();
    for b in p.boundaries.values() {
        if let Some(pres) = m.presentials().get(b) {
            props.extend(pres.valuation.keys());
        }
    }
    props
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    pub complete: bool,
    pub mode: IntegrationMode,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    /// The checked model: the input, plus derived processes under completion.
    pub model: Model,
    pub derived: Vec<Id>,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn error_count(&self) -> usize {
        self.violations.iter().filter(|v| v.severity == Severity::Error).count()
    }
}

/// Runs every axiom check and merges the violations in canonical order.
pub fn run_checks(m: &Model, opts: &CheckOptions) -> CheckReport {
    let (model, derived) = if opts.complete {
        let done = complete(m, opts.mode);
        (done.model, done.derived)
    } else {
        (m.clone(), Vec::new())
    };
    let mut violations = check_disjointness(&model);
    for c in model.continuants().values().filter(|c| c.material) {
        if let Err(vs) = check_integration(&model, c, opts.mode) {
            violations.extend(vs);
        }
    }
    violations.extend(check_presential_dependence(&model));
    violations.extend(check_requirement_instances(&model));
    violations.sort();
    CheckReport { model, derived, violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{ContinuantDecl, PresentialDecl, ProcessDecl};
    use crate::fixtures::*;
    use crate::{ModelBuilder, PropertyDef, Support, ValueDomain};

    fn john(m: &Model) -> &Continuant {
        m.continuant("John").unwrap()
    }

    #[test]
    fn disjointness() {
        assert!(check_disjointness(&heart()).is_empty());
        assert!(check_disjointness(&Model::default()).is_empty());
        let mut b = john_builder();
        b.process(ProcessDecl::new("John", "c").boundary(0, "j0").boundary(1, "j1").boundary(2, "j2"));
        let vs = check_disjointness(&b.build().unwrap());
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].axiom, Axiom::Disjointness);
        assert_eq!(vs[0].subjects, ["John"]);
    }

    #[test]
    fn integration_passes_with_matching_process() {
        let m = john_with_process();
        let w = check_integration(&m, john(&m), IntegrationMode::Identity).unwrap();
        assert_eq!(w.process, "P");
        assert_eq!(w.matched_samples, [Time::int(0), Time::int(1), Time::int(2)]);
    }

    #[test]
    fn integration_reports_the_mismatched_sample() {
        let mut b = john_builder();
        b.presential(PresentialDecl::new("other1", "c", 1));
        b.process(ProcessDecl::new("P", "c").boundary(0, "j0").boundary(1, "other1").boundary(2, "j2"));
        let m = b.build().unwrap();
        let vs = check_integration(&m, john(&m), IntegrationMode::Identity).unwrap_err();
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].axiom, Axiom::Integration);
        assert_eq!(vs[0].subjects, ["John", "P"]);
        assert_eq!(vs[0].at, Some(Time::int(1)));
    }

    #[test]
    fn valuation_mode_accepts_equal_valued_presentials() {
        let mut b = john_builder();
        b.presential(PresentialDecl::new("twin1", "c", 1).with("mood", Value::symbol("calm")));
        b.process(ProcessDecl::new("P", "c").boundary(0, "j0").boundary(1, "twin1").boundary(2, "j2"));
        let m = b.build().unwrap();
        assert!(check_integration(&m, john(&m), IntegrationMode::Identity).is_err());
        assert!(check_integration(&m, john(&m), IntegrationMode::Valuation).is_ok());
    }

    #[test]
    fn integration_requires_equal_extent() {
        let mut b = john_builder();
        b.chronoid(ch("short", 0, 1));
        b.process(ProcessDecl::new("P", "short").boundary(0, "j0").boundary(1, "j1"));
        let m = b.build().unwrap();
        let vs = check_integration(&m, john(&m), IntegrationMode::Identity).unwrap_err();
        assert!(vs.iter().any(|v| v.at.is_none() && v.message.contains("differs")));
        assert!(vs.iter().any(|v| v.at == Some(Time::int(2))));
    }

    #[test]
    fn integration_without_candidates() {
        let m = john_builder().build().unwrap();
        let vs = check_integration(&m, john(&m), IntegrationMode::Identity).unwrap_err();
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].axiom, Axiom::IntegrationNoProcess);
        assert_eq!(vs[0].subjects, ["John"]);
    }

    #[test]
    fn derived_process_integrates_its_continuant() {
        let m = john_builder().build().unwrap();
        let p = derive_process(&m, john(&m)).unwrap();
        assert_eq!(p.boundaries, john(&m).exhibits);
        let m2 = m.with_process(p.clone()).unwrap();
        assert_eq!(check_integration(&m2, john(&m2), IntegrationMode::Identity).unwrap().process, p.id);
        let q = derive_process(&m2, john(&m2)).unwrap();
        assert_ne!(p.id, q.id);
        assert_eq!(p.boundaries, q.boundaries);
    }

    #[test]
    fn derive_rejects_continuants_missing_endpoints() {
        let c = Continuant {
            id: "C".into(),
            lifetime: ch("c", 0, 2),
            exhibits: [(Time::int(0), Id::from("j0"))].into_iter().collect(),
            material: true,
        };
        let m = john_builder().build().unwrap();
        assert!(matches!(derive_process(&m, &c), Err(Error::MalformedContinuant { .. })));
    }

    #[test]
    fn presential_dependence_with_and_without_completion() {
        let m = john_builder().build().unwrap();
        assert_eq!(check_presential_dependence(&m).len(), 3);
        let done = complete(&m, IntegrationMode::Identity);
        assert_eq!(done.derived.len(), 1);
        assert!(check_presential_dependence(&done.model).is_empty());

        let mut b = john_builder();
        b.presential(PresentialDecl::new("ghostly", "c", 1).immaterial());
        let m = complete(&b.build().unwrap(), IntegrationMode::Identity).model;
        assert!(check_presential_dependence(&m).is_empty());
    }

    #[test]
    fn immaterial_continuants_are_exempt() {
        let mut b = ModelBuilder::new();
        b.chronoid(ch("c", 0, 1));
        b.presential(PresentialDecl::new("n0", "c", 0).immaterial());
        b.presential(PresentialDecl::new("n1", "c", 1).immaterial());
        b.continuant(ContinuantDecl::new("Number", "c").exhibit(0, "n0").exhibit(1, "n1").immaterial());
        let report = run_checks(&b.build().unwrap(), &CheckOptions::default());
        assert!(report.violations.is_empty());
    }

    #[test]
    fn run_checks_is_canonically_sorted() {
        let mut b = john_builder();
        b.process(ProcessDecl::new("j1", "c").boundary(0, "j0").boundary(2, "j2"));
        let m = b.build().unwrap();
        let report = run_checks(&m, &CheckOptions::default());
        let mut sorted = report.violations.clone();
        sorted.sort();
        assert_eq!(report.violations, sorted);
        assert_eq!(report.violations[0].axiom, Axiom::Disjointness);
        assert_eq!(report, run_checks(&m, &CheckOptions::default()));
    }

    fn ball(colors: &[(i64, Option<&str>)]) -> Model {
        let mut b = ModelBuilder::new();
        b.chronoid(ch("c", 0, colors.len() as i64 - 1));
        b.property(PropertyDef::categorical("color", ["red", "blue"], Support::Isolated));
        let mut c = ContinuantDecl::new("ball", "c");
        for (t, color) in colors {
            let mut p = PresentialDecl::new(format!("b{t}"), "c", *t);
            if let Some(col) = color {
                p = p.with("color", Value::symbol(col));
            }
            b.presential(p);
            c = c.exhibit(*t, format!("b{t}"));
        }
        b.continuant(c);
        b.build().unwrap()
    }

    #[test]
    fn continuant_changes() {
        let m = ball(&[(0, Some("red")), (1, Some("red"))]);
        assert!(detect_continuant_changes(&m, m.continuant("ball").unwrap()).is_empty());

        let m = ball(&[(0, Some("red")), (1, Some("blue"))]);
        let changes = detect_continuant_changes(&m, m.continuant("ball").unwrap());
        assert_eq!(
            changes,
            [ContinuantChange {
                from: Time::int(0),
                to: Time::int(1),
                property: "color".into(),
                before: Some(Value::symbol("red")),
                after: Some(Value::symbol("blue")),
            }]
        );

        let m = ball(&[(0, Some("red")), (1, None)]);
        let changes = detect_continuant_changes(&m, m.continuant("ball").unwrap());
        assert_eq!(changes.len(), 1);
        assert_eq!(changes[0].after, None);
    }

    fn trajectory_model(prop: PropertyDef, samples: alloc::vec::Vec<(Time, Value)>, end: i64) -> Model {
        let mut b = ModelBuilder::new();
        b.chronoid(ch("c", 0, end));
        b.property(prop.clone());
        b.presential(PresentialDecl::new("m0", "c", 0));
        b.presential(PresentialDecl::new("mE", "c", end));
        b.process(ProcessDecl::new("P", "c").boundary(0, "m0").boundary(end, "mE").trajectory(prop.name, samples));
        b.build().unwrap()
    }

    #[test]
    fn process_changes() {
        let phase = PropertyDef::categorical("phase", ["on", "off"], Support::Global);
        let sym = |s| Value::symbol(s);
        let flat = (0..6).map(|t| (Time::int(t), sym("on"))).collect();
        let m = trajectory_model(phase.clone(), flat, 5);
        let zero = Rational::from_integer(0.into());
        assert!(detect_process_changes(&m, m.process("P").unwrap(), "phase", &zero).unwrap().is_empty());

        let flip = (0..6).map(|t| (Time::int(t), sym(if t <= 3 { "on" } else { "off" }))).collect();
        let m = trajectory_model(phase, flip, 5);
        assert_eq!(detect_process_changes(&m, m.process("P").unwrap(), "phase", &zero).unwrap(), [Time::new(7, 2)]);

        let velocity = PropertyDef::new(
            "velocity",
            ValueDomain::Numeric,
            Support::NonIsolated { window_radius: Rational::new(1.into(), 2.into()) },
        );
        let ramp = alloc::vec![(Time::int(0), Value::int(0)), (Time::int(1), Value::int(1))];
        let m = trajectory_model(velocity, ramp, 1);
        let p = m.process("P").unwrap();
        let two = Rational::from_integer(2.into());
        assert!(detect_process_changes(&m, p, "velocity", &two).unwrap().is_empty());
        assert_eq!(detect_process_changes(&m, p, "velocity", &zero).unwrap(), [Time::new(1, 2)]);
        assert!(matches!(detect_process_changes(&m, p, "mass", &zero), Err(Error::UnknownProperty(_))));
    }

    #[test]
    fn process_changes_fall_back_to_boundary_valuations() {
        let m = complete(&ball(&[(0, Some("red")), (1, Some("blue")), (2, Some("blue"))]), IntegrationMode::Identity).model;
        let p = m.process("ball-process").unwrap();
        let zero = Rational::from_integer(0.into());
        assert_eq!(detect_process_changes(&m, p, "color", &zero).unwrap(), [Time::new(1, 2)]);
    }
}
