//! Small hand-built models shared by unit tests.

use crate::builder::{ContinuantDecl, PresentialDecl, ProcessDecl, SituationDecl};
use crate::functions::{FactPattern, FunctionSpec, SituationConcept, Slot};
use crate::model::Fact;
use crate::{Chronoid, Model, ModelBuilder, PropertyDef, Support, Time, Value};

pub fn ch(id: &str, l: i64, r: i64) -> Chronoid {
    Chronoid::new(id, Time::int(l), Time::int(r)).unwrap()
}

pub fn slot(s: &str) -> Slot {
    if s == "_" {
        Slot::Wildcard
    } else {
        Slot::Id(s.into())
    }
}

pub fn pattern(relator: &str, args: &[&str]) -> FactPattern {
    FactPattern::new(relator, args.iter().map(|a| slot(a)).collect())
}

/// John over [0,2] sampled at 0, 1, 2, with presentials `j0..j2`.
pub fn john_builder() -> ModelBuilder {
    let mut b = ModelBuilder::new();
    b.chronoid(ch("c", 0, 2));
    b.property(PropertyDef::categorical("mood", ["calm", "tense"], Support::Isolated));
    for t in 0..3 {
        b.presential(PresentialDecl::new(format!("j{t}"), "c", t).with("mood", Value::symbol("calm")));
    }
    b.continuant(ContinuantDecl::new("John", "c").exhibit(0, "j0").exhibit(1, "j1").exhibit(2, "j2"));
    b
}

pub fn john_with_process() -> Model {
    let mut b = john_builder();
    b.process(ProcessDecl::new("P", "c").boundary(0, "j0").boundary(1, "j1").boundary(2, "j2"));
    b.build().unwrap()
}

/// Heart pumping blood over [0,1]; `blood-movement` realizes `f_pump`.
pub fn heart_builder() -> ModelBuilder {
    let mut b = ModelBuilder::new();
    b.chronoid(ch("c", 0, 1));
    b.property(PropertyDef::categorical("state", ["intact", "damaged"], Support::Isolated));
    b.property(PropertyDef::categorical("rigidity", ["high", "low"], Support::Isolated));
    for e in ["heart", "blood", "veins", "arteries"] {
        for t in 0..2 {
            let mut p = PresentialDecl::new(format!("{e}{t}"), "c", t);
            if e == "heart" {
                p = p.with("state", Value::symbol("intact")).with("rigidity", Value::symbol("high"));
            }
            b.presential(p);
        }
        b.continuant(ContinuantDecl::new(e, "c").exhibit(0, format!("{e}0")).exhibit(1, format!("{e}1")));
        b.process(
            ProcessDecl::new(format!("{e}-life"), "c").boundary(0, format!("{e}0")).boundary(1, format!("{e}1")),
        );
    }
    b.presential(PresentialDecl::new("bm0", "c", 0));
    b.presential(PresentialDecl::new("bm1", "c", 1));
    b.process(ProcessDecl::new("blood-movement", "c").boundary(0, "bm0").boundary(1, "bm1"));
    b.situation(
        SituationDecl::presentic("s-req", "c", 0)
            .founded_on("blood-movement")
            .participant("heart")
            .fact(Fact::new("located", ["blood", "heart"])),
    );
    b.situation(
        SituationDecl::presentic("s-goal", "c", 1)
            .founded_on("blood-movement")
            .fact(Fact::new("located", ["blood", "arteries"])),
    );
    b.function(pump());
    b.exe("heart", "blood-movement");
    b.requirement_instance("f_pump", "s-req");
    b
}

pub fn pump() -> FunctionSpec {
    FunctionSpec::new(
        "f_pump",
        SituationConcept::new("f_pump-req")
            .fact(pattern("located", &["blood", "heart"]))
            .property("heart", "state", crate::ValueConstraint::eq(Value::symbol("intact"))),
        SituationConcept::new("f_pump-goal").fact(pattern("located", &["blood", "arteries"])),
    )
    .label("to pump blood")
    .requires_property("rigidity", crate::ValueConstraint::eq(Value::symbol("high")))
}

pub fn heart() -> Model {
    heart_builder().build().unwrap()
}
