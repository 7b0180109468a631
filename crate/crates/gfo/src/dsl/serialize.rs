//! Canonical text form: fixed section order, declarations sorted by id,
//! normalized rationals. Every top-level statement starts at column 0 and
//! continuation lines are indented.

use std::fmt::Write;

use gfo_core::functions::{FunctionKind, SituationConcept};
use gfo_core::{Fact, Model, SituationExtent, Support, ValueDomain};

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn fact(f: &Fact) -> String {
    let mut s = format!("{}({})", f.relator, join(&f.args));
    if let Some(v) = &f.value {
        write!(s, " = {v}").unwrap();
    }
    s
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn concept(out: &mut String, keyword: &str, c: &SituationConcept) {
    if c.facts.is_empty() && c.properties.is_empty() {
        writeln!(out, "  {keyword} {} {{}}", c.name).unwrap();
        return;
    }
    writeln!(out, "  {keyword} {} {{", c.name).unwrap();
    for p in &c.facts {
        writeln!(out, "    fact {}({});", p.relator, join(&p.args)).unwrap();
    }
    for r in &c.properties {
        writeln!(out, "    holds {}.{} {};", r.entity, r.property, r.constraint).unwrap();
    }
    out.push_str("  }\n");
}

/// Renders `m` as DSL text that parses back to an equal model.
pub fn serialize(m: &Model) -> String {
    let mut sections: Vec<String> = Vec::new();
    let mut push = |s: String| {
        if !s.is_empty() {
            sections.push(s);
        }
    };

    let mut s = String::new();
    for p in m.properties().values() {
        let domain = match &p.domain {
            ValueDomain::Categorical(symbols) => format!("{{{}}}", join(symbols)),
            ValueDomain::Numeric => "numeric".to_string(),
        };
        let support = match &p.support {
            Support::Isolated => "isolated".to_string(),
            Support::NonIsolated { window_radius } => format!("non-isolated({window_radius})"),
            Support::Global => "global".to_string(),
        };
        writeln!(s, "property {} : {domain} {support};", p.name).unwrap();
    }
    push(s);

    let mut s = String::new();
    for c in m.chronoids().values() {
        writeln!(s, "chronoid {} = [{}, {}];", c.id(), c.left(), c.right()).unwrap();
    }
    push(s);

    let mut s = String::new();
    for p in m.presentials().values() {
        let prefix = if p.material { "" } else { "immaterial " };
        write!(s, "{prefix}presential {} at {}@{}", p.id, p.at.owner(), p.at.coordinate()).unwrap();
        if p.valuation.is_empty() {
            s.push_str(";\n");
        } else {
            s.push_str(" {\n");
            for (prop, v) in &p.valuation {
                writeln!(s, "  {prop} = {v};").unwrap();
            }
            s.push_str("}\n");
        }
    }
    push(s);

    let mut s = String::new();
    for p in m.processes().values() {
        writeln!(s, "process {} extent {} {{", p.id, p.extent.id()).unwrap();
        for (t, b) in &p.boundaries {
            writeln!(s, "  boundary {t} -> {b};").unwrap();
        }
        for (prop, samples) in &p.trajectories {
            writeln!(s, "  trajectory {prop} {{").unwrap();
            for (t, v) in samples {
                writeln!(s, "    {t} -> {v};").unwrap();
            }
            s.push_str("  }\n");
        }
        s.push_str("}\n");
    }
    push(s);

    let mut s = String::new();
    for c in m.continuants().values() {
        let prefix = if c.material { "" } else { "immaterial " };
        writeln!(s, "{prefix}continuant {} lifetime {} {{", c.id, c.lifetime.id()).unwrap();
        for (t, x) in &c.exhibits {
            writeln!(s, "  exhibits {t} -> {x};").unwrap();
        }
        s.push_str("}\n");
    }
    push(s);

    let mut s = String::new();
    for sit in m.situations().values() {
        let extent = match &sit.extent {
            SituationExtent::Presentic(b) => format!("at {}@{}", b.owner(), b.coordinate()),
            SituationExtent::Situoid(c) => format!("over {}", c.id()),
        };
        write!(s, "situation {} {extent}", sit.id).unwrap();
        if let Some(p) = &sit.founded_on {
            write!(s, " founded-on {p}").unwrap();
        }
        s.push_str(" {\n");
        if !sit.participants.is_empty() {
            writeln!(s, "  participants {};", join(&sit.participants)).unwrap();
        }
        for f in &sit.constituents {
            writeln!(s, "  fact {};", fact(f)).unwrap();
        }
        s.push_str("}\n");
    }
    push(s);

    let mut s = String::new();
    for (id, nf) in m.named_facts() {
        writeln!(s, "fact {id}: {} in {};", fact(&nf.fact), nf.situation).unwrap();
    }
    push(s);

    let mut s = String::new();
    for f in m.functions().values() {
        writeln!(s, "function {} {{", f.id).unwrap();
        for l in &f.labels {
            writeln!(s, "  label {};", quote(l)).unwrap();
        }
        match &f.kind {
            FunctionKind::Conceptual => {}
            FunctionKind::Universal => s.push_str("  kind universal;\n"),
            FunctionKind::Individual { bearer } => writeln!(s, "  kind individual({bearer});").unwrap(),
        }
        concept(&mut s, "requires", &f.req);
        concept(&mut s, "goal", &f.goal);
        if !f.fitem.is_empty() {
            s.push_str("  fitem {\n");
            for (prop, c) in &f.fitem {
                writeln!(s, "    {prop} {c};").unwrap();
            }
            s.push_str("  }\n");
        }
        s.push_str("}\n");
    }
    push(s);

    let mut s = String::new();
    for (x, p) in m.exe_assertions() {
        writeln!(s, "exe {x} -> {p};").unwrap();
    }
    push(s);

    let mut s = String::new();
    for (f, sits) in m.requirement_instances() {
        for sit in sits {
            writeln!(s, "requirement-instance {f} : {sit};").unwrap();
        }
    }
    push(s);

    let mut s = String::new();
    for a in m.attributives() {
        writeln!(s, "attributive {} {} {};", a.bearer, a.kind, quote(&a.note)).unwrap();
    }
    push(s);

    sections.join("\n")
}
