//! JSON encodings. Rationals (times and numeric values) are strings such as
//! `"3/2"`; symbols are plain strings, which cannot be confused with numbers
//! since identifiers never start with a digit. Object keys come out sorted.

use gfo_core::checker::{ChangeRecord, CheckReport, ContinuantChange, Violation};
use gfo_core::functions::{FunctionKind, RealizationRecord, SituationConcept};
use gfo_core::truthmakers::TruthMakerTriple;
use gfo_core::{Fact, Id, Model, SituationExtent, Support, Time, Value, ValueDomain};
use serde_json::{json, Map, Value as Json};

use crate::dsl::ParseDiagnostic;

fn s(x: impl ToString) -> Json {
    Json::String(x.to_string())
}

fn ids<'a>(xs: impl IntoIterator<Item = &'a Id>) -> Json {
    Json::Array(xs.into_iter().map(s).collect())
}

fn opt(v: Option<&Value>) -> Json {
    v.map_or(Json::Null, s)
}

fn time(t: Option<&Time>) -> Json {
    t.map_or(Json::Null, s)
}

fn object<'a, T: 'a>(entries: impl IntoIterator<Item = (&'a Id, T)>, f: impl Fn(T) -> Json) -> Json {
    Json::Object(entries.into_iter().map(|(k, v)| (k.to_string(), f(v))).collect::<Map<_, _>>())
}

pub fn fact(f: &Fact) -> Json {
    json!({ "relator": s(&f.relator), "args": ids(&f.args), "value": opt(f.value.as_ref()) })
}

fn concept(c: &SituationConcept) -> Json {
    json!({
        "name": s(&c.name),
        "facts": c.facts.iter().map(|p| json!({
            "relator": s(&p.relator),
            "args": p.args.iter().map(s).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "holds": c.properties.iter().map(|r| json!({
            "entity": s(&r.entity),
            "property": s(&r.property),
            "op": r.constraint.op.symbol(),
            "value": s(&r.constraint.value),
        })).collect::<Vec<_>>(),
    })
}

/// The whole store, keyed by id.
pub fn model(m: &Model) -> Json {
    json!({
        "properties": object(m.properties(), |p| json!({
            "domain": match &p.domain {
                ValueDomain::Categorical(xs) => json!({ "categorical": ids(xs) }),
                ValueDomain::Numeric => json!("numeric"),
            },
            "support": match &p.support {
                Support::Isolated => json!("isolated"),
                Support::NonIsolated { window_radius } => json!({ "non-isolated": s(window_radius) }),
                Support::Global => json!("global"),
            },
        })),
        "chronoids": object(m.chronoids(), |c| json!({ "left": s(c.left()), "right": s(c.right()) })),
        "presentials": object(m.presentials(), |p| json!({
            "chronoid": s(p.at.owner()),
            "at": s(p.at.coordinate()),
            "material": p.material,
            "valuation": object(&p.valuation, s),
        })),
        "processes": object(m.processes(), |p| json!({
            "extent": s(p.extent.id()),
            "boundaries": p.boundaries.iter().map(|(t, b)| json!([s(t), s(b)])).collect::<Vec<_>>(),
            "trajectories": object(&p.trajectories, |samples| samples.iter().map(|(t, v)| json!([s(t), s(v)])).collect()),
        })),
        "continuants": object(m.continuants(), |c| json!({
            "lifetime": s(c.lifetime.id()),
            "material": c.material,
            "exhibits": c.exhibits.iter().map(|(t, x)| json!([s(t), s(x)])).collect::<Vec<_>>(),
        })),
        "situations": object(m.situations(), |sit| {
            let extent = match &sit.extent {
                SituationExtent::Presentic(b) => json!({ "at": { "chronoid": s(b.owner()), "coordinate": s(b.coordinate()) } }),
                SituationExtent::Situoid(c) => json!({ "over": s(c.id()) }),
            };
            json!({
                "extent": extent,
                "founded_on": sit.founded_on.as_ref().map_or(Json::Null, s),
                "participants": ids(&sit.participants),
                "facts": sit.constituents.iter().map(fact).collect::<Vec<_>>(),
            })
        }),
        "facts": object(m.named_facts(), |nf| json!({ "situation": s(&nf.situation), "fact": fact(&nf.fact) })),
        "functions": object(m.functions(), |f| json!({
            "labels": f.labels.iter().collect::<Vec<_>>(),
            "kind": match &f.kind {
                FunctionKind::Conceptual => json!("conceptual"),
                FunctionKind::Universal => json!("universal"),
                FunctionKind::Individual { bearer } => json!({ "individual": s(bearer) }),
            },
            "requires": concept(&f.req),
            "goal": concept(&f.goal),
            "fitem": f.fitem.iter().map(|(p, c)| json!({ "property": s(p), "op": c.op.symbol(), "value": s(&c.value) })).collect::<Vec<_>>(),
        })),
        "exe": m.exe_assertions().iter().map(|(x, p)| json!([s(x), s(p)])).collect::<Vec<_>>(),
        "requirement_instances": object(m.requirement_instances(), ids),
        "attributives": m.attributives().iter().map(|a| json!({ "bearer": s(&a.bearer), "kind": s(&a.kind), "note": a.note })).collect::<Vec<_>>(),
    })
}

pub fn violation(v: &Violation) -> Json {
    json!({
        "axiom": v.axiom.as_str(),
        "subjects": ids(&v.subjects),
        "at": time(v.at.as_ref()),
        "message": v.message,
        "severity": v.severity.as_str(),
    })
}

pub fn continuant_change(c: &ContinuantChange) -> Json {
    json!({
        "from": s(&c.from),
        "to": s(&c.to),
        "property": s(&c.property),
        "before": opt(c.before.as_ref()),
        "after": opt(c.after.as_ref()),
    })
}

pub fn change(c: &ChangeRecord) -> Json {
    match c {
        ChangeRecord::Continuant { entity, change } => {
            let mut j = continuant_change(change);
            j["entity"] = s(entity);
            j["kind"] = json!("continuant");
            j
        }
        ChangeRecord::Process { entity, property, at } => {
            json!({ "entity": s(entity), "kind": "process", "property": s(property), "at": s(at) })
        }
    }
}

pub fn check_report(file: &str, r: &CheckReport, changes: &[ChangeRecord]) -> Json {
    json!({
        "file": file,
        "derived": ids(&r.derived),
        "violations": r.violations.iter().map(violation).collect::<Vec<_>>(),
        "changes": changes.iter().map(change).collect::<Vec<_>>(),
        "summary": {
            "violations": r.violations.len(),
            "errors": r.error_count(),
            "entities": r.model.entity_count(),
            "samples": r.model.sample_count(),
        },
    })
}

pub fn triple(t: &TruthMakerTriple) -> Json {
    json!({ "process": s(&t.process), "situation": s(&t.situation), "fact": fact(&t.fact) })
}

pub fn realization(r: &RealizationRecord) -> Json {
    json!({ "process": s(&r.process), "requirement": s(&r.requirement), "goal": s(&r.goal) })
}

pub fn diagnostic(d: &ParseDiagnostic) -> Json {
    json!({
        "file": d.span.file,
        "line": d.span.line,
        "column": d.span.column,
        "length": d.span.length,
        "code": d.code.as_str(),
        "message": d.message,
    })
}

/// Pretty text with a trailing newline.
pub fn render(j: &Json) -> String {
    let mut out = serde_json::to_string_pretty(j).expect("JSON values always serialize");
    out.push('\n');
    out
}
