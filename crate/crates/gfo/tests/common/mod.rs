//! Shared test support: random model generation, corpus access, CLI
//! invocation, and brute-force oracles for integration and truth-makers.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gfo::core::builder::{ContinuantDecl, PresentialDecl, ProcessDecl, SituationDecl};
use gfo::core::checker::IntegrationMode;
use gfo::core::functions::{FactPattern, FunctionKind, FunctionSpec, SituationConcept, Slot};
use gfo::core::model::Attributive;
use gfo::core::truthmakers::{Proposition, PropositionForm, TimeRef, TruthMakerTriple};
use gfo::core::{
    Chronoid, Comparison, Continuant, Fact, Id, Model, ModelBuilder, PropertyDef, Rational, SituationExtent, Support,
    Time, Value, ValueConstraint, ValueDomain,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "gfo"))
        .collect();
    files.sort();
    files
}

pub fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn gfo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gfo")).args(args).env_remove("GFO_COLOR").output().expect("run gfo")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Splits canonical text into top-level statements: a statement starts on
/// every line at column 0 that is not a closing brace.
pub fn statements(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let starts = !line.starts_with(char::is_whitespace) && !line.starts_with('}');
        if starts || out.is_empty() {
            out.push(String::new());
        }
        let cur = out.last_mut().unwrap();
        cur.push_str(line);
        cur.push('\n');
    }
    out
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn t(n: i64) -> Time {
    Time::int(n)
}

fn rand_rat<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Rational {
    let d = rng.gen_range(1..=4);
    rat(rng.gen_range(lo * d..=hi * d), d)
}

fn pick<'a, R: Rng, T>(rng: &mut R, xs: &'a [T]) -> &'a T {
    xs.choose(rng).expect("non-empty choice")
}

fn random_value<R: Rng>(rng: &mut R, def: &PropertyDef) -> Value {
    match &def.domain {
        ValueDomain::Categorical(xs) => Value::Symbol(pick(rng, &xs.iter().cloned().collect::<Vec<_>>()).clone()),
        ValueDomain::Numeric => Value::Number(rand_rat(rng, -3, 3)),
    }
}

/// A random structurally valid model touching every kind of declaration.
pub fn random_model<R: Rng>(rng: &mut R) -> Model {
    let mut b = ModelBuilder::new();

    let mut props = Vec::new();
    for i in 0..rng.gen_range(0..=4) {
        let domain = if rng.gen_bool(0.6) {
            ValueDomain::Categorical((0..rng.gen_range(1..=3)).map(|k| Id::from(format!("v{k}"))).collect())
        } else {
            ValueDomain::Numeric
        };
        let support = match rng.gen_range(0..3) {
            0 => Support::Isolated,
            1 => Support::NonIsolated { window_radius: rat(rng.gen_range(1..=4), rng.gen_range(1..=8)) },
            _ => Support::Global,
        };
        let p = PropertyDef::new(format!("q{i}"), domain, support);
        b.property(p.clone());
        props.push(p);
    }
    let isolated: Vec<&PropertyDef> = props.iter().filter(|p| p.is_isolated()).collect();
    let extended: Vec<&PropertyDef> = props.iter().filter(|p| !p.is_isolated()).collect();

    // Chronoids and their sample grids.
    let mut grids: Vec<(Chronoid, Vec<Time>)> = Vec::new();
    for i in 0..rng.gen_range(1..=3) {
        let left = rand_rat(rng, -4, 4);
        let len = rat(rng.gen_range(1..=6), rng.gen_range(1..=3));
        let right = &left + &len;
        let ch = Chronoid::new(format!("c{i}"), Time::from_rational(left.clone()), Time::from_rational(right.clone())).unwrap();
        let mut grid = vec![Time::from_rational(left.clone()), Time::from_rational(right)];
        for k in 1..rng.gen_range(1..=3) {
            grid.push(Time::from_rational(&left + &len * rat(k, 3)));
        }
        grid.sort();
        grid.dedup();
        b.chronoid(ch.clone());
        grids.push((ch, grid));
    }

    // At least one presential per grid point.
    let mut pres: Vec<Vec<Vec<Id>>> = Vec::new();
    let mut n = 0;
    let mut individuals: Vec<Id> = Vec::new();
    for (ch, grid) in &grids {
        let mut per_point = Vec::new();
        for at in grid {
            let mut here = Vec::new();
            for _ in 0..rng.gen_range(1..=2) {
                let id = Id::from(format!("m{n}"));
                n += 1;
                let mut d = PresentialDecl::new(id.clone(), ch.id().clone(), at.clone());
                for p in &isolated {
                    if rng.gen_bool(0.7) {
                        d = d.with(p.name.clone(), random_value(rng, p));
                    }
                }
                if rng.gen_bool(0.15) {
                    d = d.immaterial();
                }
                b.presential(d);
                individuals.push(id.clone());
                here.push(id);
            }
            per_point.push(here);
        }
        pres.push(per_point);
    }

    let sample_map = |rng: &mut R, g: usize| -> Vec<(Time, Id)> {
        let grid = &grids[g].1;
        let last = grid.len() - 1;
        let mut out = Vec::new();
        for k in 0..grid.len() {
            if k == 0 || k == last || rng.gen_bool(0.6) {
                out.push((grid[k].clone(), pick(rng, &pres[g][k]).clone()));
            }
        }
        out
    };

    let mut processes = Vec::new();
    for i in 0..rng.gen_range(0..=3) {
        let g = rng.gen_range(0..grids.len());
        let id = Id::from(format!("pr{i}"));
        let mut d = ProcessDecl::new(id.clone(), grids[g].0.id().clone());
        for (at, m) in sample_map(rng, g) {
            d = d.boundary(at, m);
        }
        for p in &extended {
            if rng.gen_bool(0.5) {
                let mut samples = Vec::new();
                for at in &grids[g].1 {
                    if rng.gen_bool(0.7) {
                        samples.push((at.clone(), random_value(rng, p)));
                    }
                }
                d = d.trajectory(p.name.clone(), samples);
            }
        }
        b.process(d);
        individuals.push(id.clone());
        processes.push(id);
    }
    for i in 0..rng.gen_range(0..=3) {
        let g = rng.gen_range(0..grids.len());
        let id = Id::from(format!("k{i}"));
        let mut d = ContinuantDecl::new(id.clone(), grids[g].0.id().clone());
        for (at, m) in sample_map(rng, g) {
            d = d.exhibit(at, m);
        }
        if rng.gen_bool(0.2) {
            d = d.immaterial();
        }
        b.continuant(d);
        individuals.push(id);
    }

    let random_fact = |rng: &mut R| -> Fact {
        let prop_facts: Vec<&PropertyDef> = props.iter().collect();
        if !prop_facts.is_empty() && rng.gen_bool(0.3) {
            let p = *pick(rng, &prop_facts);
            Fact::property(p.name.clone(), pick(rng, &individuals).clone(), random_value(rng, p))
        } else {
            let args: Vec<Id> = (0..rng.gen_range(1..=2)).map(|_| pick(rng, &individuals).clone()).collect();
            Fact::new(format!("r{}", rng.gen_range(0..3)), args)
        }
    };

    let mut situations = Vec::new();
    for i in 0..rng.gen_range(0..=3) {
        let g = rng.gen_range(0..grids.len());
        let id = Id::from(format!("s{i}"));
        let mut d = if rng.gen_bool(0.5) {
            SituationDecl::presentic(id.clone(), grids[g].0.id().clone(), pick(rng, &grids[g].1).clone())
        } else {
            SituationDecl::situoid(id.clone(), grids[g].0.id().clone())
        };
        if !processes.is_empty() && rng.gen_bool(0.7) {
            d = d.founded_on(pick(rng, &processes).clone());
        }
        for _ in 0..rng.gen_range(0..=2) {
            d = d.participant(pick(rng, &individuals).clone());
        }
        for _ in 0..rng.gen_range(0..=3) {
            d = d.fact(random_fact(rng));
        }
        b.situation(d);
        situations.push(id);
    }
    for i in 0..rng.gen_range(0..=2) {
        if situations.is_empty() {
            break;
        }
        let s = pick(rng, &situations).clone();
        b.named_fact(format!("nf{i}"), s, random_fact(rng));
    }

    let concept = |rng: &mut R, name: String| -> SituationConcept {
        let mut c = SituationConcept::new(name);
        for _ in 0..rng.gen_range(1..=2) {
            let args = (0..rng.gen_range(1..=2))
                .map(|_| if rng.gen_bool(0.3) { Slot::Wildcard } else { Slot::Id(pick(rng, &individuals).clone()) })
                .collect();
            c = c.fact(FactPattern::new(format!("r{}", rng.gen_range(0..3)), args));
        }
        if !props.is_empty() && rng.gen_bool(0.5) {
            let p = pick(rng, &props);
            let op = *pick(rng, &[Comparison::Eq, Comparison::Ne, Comparison::Lt, Comparison::Ge]);
            c = c.property(pick(rng, &individuals).clone(), p.name.clone(), ValueConstraint::new(op, random_value(rng, p)));
        }
        c
    };
    let mut functions = Vec::new();
    for i in 0..rng.gen_range(0..=2) {
        let id = format!("f{i}");
        let mut f = FunctionSpec::new(id.clone(), concept(rng, format!("{id}-req")), concept(rng, format!("{id}-goal")));
        for l in 0..rng.gen_range(0..=2) {
            f = f.label(format!("label {l} with \"quotes\" and \\ slash"));
        }
        if !isolated.is_empty() && rng.gen_bool(0.5) {
            let p = *pick(rng, &isolated);
            f = f.requires_property(p.name.clone(), ValueConstraint::new(Comparison::Eq, random_value(rng, p)));
        }
        f = f.kind(match rng.gen_range(0..3) {
            0 => FunctionKind::Conceptual,
            1 => FunctionKind::Universal,
            _ => FunctionKind::Individual { bearer: pick(rng, &individuals).clone() },
        });
        b.function(f);
        functions.push(Id::from(id));
    }
    if !processes.is_empty() {
        for _ in 0..rng.gen_range(0..=2) {
            b.exe(pick(rng, &individuals).clone(), pick(rng, &processes).clone());
        }
    }
    if !functions.is_empty() && !situations.is_empty() {
        for _ in 0..rng.gen_range(0..=2) {
            b.requirement_instance(pick(rng, &functions).clone(), pick(rng, &situations).clone());
        }
    }
    for _ in 0..rng.gen_range(0..=1) {
        b.attributive(Attributive { bearer: pick(rng, &individuals).clone(), kind: "role".into(), note: "a note".into() });
    }

    b.build().unwrap_or_else(|e| panic!("generator produced an invalid model: {e:?}"))
}

// ---------------------------------------------------------------------------
// Brute-force integration oracle.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrationVerdict {
    pub witness: Option<Id>,
    pub no_process: bool,
    /// Mismatch coordinates against the closest candidate when failing.
    pub mismatches: BTreeSet<Option<Time>>,
}

/// Restates the axiom over the finite sample grid: `P` integrates `C` iff
/// their spans coincide and, at every sampled time and for every
/// presential `M`, `exhib(C, t, M) <-> procbd(P, t, M)`. In valuation mode a
/// presential is replaced by its valuation.
pub fn integration_oracle(m: &Model, c: &Continuant, mode: IntegrationMode) -> IntegrationVerdict {
    let all_presentials: Vec<&Id> = m.presentials().keys().collect();
    let mut times: BTreeSet<Time> = c.exhibits.keys().cloned().collect();
    for p in m.processes().values() {
        times.extend(p.boundaries.keys().cloned());
    }
    let valuation = |x: &Id| m.presentials().get(x).map(|p| p.valuation.clone());

    let mut witness = None;
    let mut scored: Vec<(usize, Id, BTreeSet<Option<Time>>)> = Vec::new();
    for p in m.processes().values() {
        let shares = c.exhibits.values().any(|x| p.boundaries.values().any(|y| x == y));
        let same_span = c.lifetime.left() == p.extent.left() && c.lifetime.right() == p.extent.right();
        if !shares && !same_span {
            continue;
        }
        let mut bad = BTreeSet::new();
        if !same_span {
            bad.insert(None);
        }
        for t in &times {
            if !c.exhibits.contains_key(t) && !p.boundaries.contains_key(t) {
                continue;
            }
            let ok = match mode {
                IntegrationMode::Identity => all_presentials.iter().all(|x| {
                    let exhib = c.exhibits.get(t) == Some(*x);
                    let procbd = p.boundaries.get(t) == Some(*x);
                    exhib == procbd
                }),
                IntegrationMode::Valuation => {
                    let ex: Vec<&Id> = all_presentials.iter().copied().filter(|x| c.exhibits.get(t) == Some(*x)).collect();
                    let bd: Vec<&Id> = all_presentials.iter().copied().filter(|x| p.boundaries.get(t) == Some(*x)).collect();
                    ex.is_empty() == bd.is_empty()
                        && ex.iter().all(|x| bd.iter().all(|y| x == y || valuation(x) == valuation(y)))
                }
            };
            if !ok {
                bad.insert(Some(t.clone()));
            }
        }
        if bad.is_empty() && witness.is_none() {
            witness = Some(p.id.clone());
        }
        scored.push((bad.len(), p.id.clone(), bad));
    }
    let no_process = scored.is_empty();
    scored.sort();
    let mismatches = match (&witness, scored.into_iter().next()) {
        (None, Some((_, _, bad))) => bad,
        _ => BTreeSet::new(),
    };
    IntegrationVerdict { witness, no_process, mismatches }
}

// ---------------------------------------------------------------------------
// Brute-force truth-maker oracle.

fn slot_ok(slot: &Slot, x: &Id) -> bool {
    match slot {
        Slot::Wildcard => true,
        Slot::Id(y) => x == y,
    }
}

fn time_ok(extent: &SituationExtent, time: &TimeRef) -> bool {
    match (time, extent) {
        (TimeRef::Unanchored, _) => true,
        (TimeRef::At(t), SituationExtent::Presentic(b)) => b.coordinate() == t,
        (TimeRef::At(t), SituationExtent::Situoid(c)) => c.left() <= t && t <= c.right(),
        (TimeRef::During(q), SituationExtent::Presentic(b)) => q.left() <= b.coordinate() && b.coordinate() <= q.right(),
        (TimeRef::During(q), SituationExtent::Situoid(c)) => q.left() <= c.left() && c.right() <= q.right(),
    }
}

fn fact_ok(f: &Fact, phi: &Proposition) -> bool {
    match &phi.form {
        PropositionForm::Fact { relator, args } => {
            f.relator == *relator && f.args.len() == args.len() && args.iter().zip(&f.args).all(|(s, a)| slot_ok(s, a))
        }
        PropositionForm::Holds { subject, property, constraint } => {
            f.relator == *property
                && f.args.len() == 1
                && f.args[0] == *subject
                && f.value.as_ref().is_some_and(|v| constraint.admits(v))
        }
    }
}

/// Every `(P, S, f)` over all processes, all situations and every fact in
/// `pool`, kept when well formed and making `phi` true.
pub fn truthmaker_oracle(m: &Model, pool: &[Fact], phi: &Proposition) -> Vec<TruthMakerTriple> {
    let mut out = Vec::new();
    for p in m.processes().keys() {
        for s in m.situations().values() {
            for f in pool {
                let founded = s.founded_on.as_ref() == Some(p);
                let constituent = s.constituents.contains(f);
                if founded && constituent && fact_ok(f, phi) && time_ok(&s.extent, &phi.time) {
                    out.push(TruthMakerTriple { process: p.clone(), situation: s.id.clone(), fact: f.clone() });
                }
            }
        }
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration helpers.

/// Every sample map over the integer grid `0..n`: a chronoid `[l, r]` with
/// both endpoints sampled and each interior point sampled or not, each
/// sample picking presential `a` or `b`.
pub fn sample_maps(n: i64) -> Vec<(i64, i64, Vec<(i64, char)>)> {
    let mut out = Vec::new();
    for l in 0..n {
        for r in l + 1..n {
            let interior: Vec<i64> = (l + 1..r).collect();
            let choices = 3usize.pow(interior.len() as u32);
            for ends in 0..4 {
                for mut code in 0..choices {
                    let mut samples = vec![(l, if ends & 1 == 0 { 'a' } else { 'b' })];
                    for &k in &interior {
                        match code % 3 {
                            0 => {}
                            1 => samples.push((k, 'a')),
                            _ => samples.push((k, 'b')),
                        }
                        code /= 3;
                    }
                    samples.push((r, if ends & 2 == 0 { 'a' } else { 'b' }));
                    out.push((l, r, samples));
                }
            }
        }
    }
    out
}

/// Presential pool over `0..n`: `a{t}` valued `x`, `b{t}` valued per `b_values`.
pub fn presential_pool(n: i64, b_values: u32) -> ModelBuilder {
    let mut b = ModelBuilder::new();
    b.property(PropertyDef::categorical("q", ["x", "y"], Support::Isolated));
    b.chronoid(Chronoid::new("grid", t(0), t(n - 1)).unwrap());
    for k in 0..n {
        b.presential(PresentialDecl::new(format!("a{k}"), "grid", k).with("q", Value::symbol("x")));
        let v = if b_values >> k & 1 == 1 { "y" } else { "x" };
        b.presential(PresentialDecl::new(format!("b{k}"), "grid", k).with("q", Value::symbol(v)));
    }
    b
}

pub fn span_chronoid(l: i64, r: i64) -> Chronoid {
    Chronoid::new(format!("s{l}-{r}"), t(l), t(r)).unwrap()
}

pub fn samples_of(samples: &[(i64, char)]) -> Vec<(Time, Id)> {
    samples.iter().map(|(k, c)| (t(*k), Id::from(format!("{c}{k}")))).collect()
}

pub fn continuant_of(id: &str, (l, r, samples): &(i64, i64, Vec<(i64, char)>)) -> Continuant {
    Continuant { id: id.into(), lifetime: span_chronoid(*l, *r), exhibits: samples_of(samples).into_iter().collect(), material: true }
}

pub fn process_decl(id: &str, (l, r, samples): &(i64, i64, Vec<(i64, char)>)) -> ProcessDecl {
    let mut d = ProcessDecl::new(id, span_chronoid(*l, *r).id().clone());
    for (at, m) in samples_of(samples) {
        d = d.boundary(at, m);
    }
    d
}

pub fn declare_spans(b: &mut ModelBuilder, n: i64) {
    for l in 0..n {
        for r in l + 1..n {
            b.chronoid(span_chronoid(l, r));
        }
    }
}
