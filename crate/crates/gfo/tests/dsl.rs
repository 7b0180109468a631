mod common;

use gfo::core::checker::check_disjointness;
use gfo::core::{Kind, Time, Value};
use gfo::dsl::{parse, parse_named, serialize, Code};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const JOHN: &str = "chronoid c = [0,2]; presential m0 at c@0; presential m1 at c@1; presential m2 at c@2; \
continuant John lifetime c { exhibits 0 -> m0; exhibits 1 -> m1; exhibits 2 -> m2; }";

fn codes(src: &str) -> Vec<(Code, usize, usize)> {
    parse_named("t.gfo", src).unwrap_err().into_iter().map(|d| (d.code, d.span.line, d.span.column)).collect()
}

#[test]
fn parses_a_continuant_model() {
    let m = parse(JOHN).unwrap();
    assert_eq!(m.continuants().len(), 1);
    assert_eq!(m.presentials().len(), 3);
    assert_eq!(m.classify("John").unwrap(), Kind::Continuant);
}

#[test]
fn zero_duration_chronoid_is_a_bad_rational_at_the_literal() {
    let errs = parse_named("z.gfo", "chronoid c = [5,5];").unwrap_err();
    assert_eq!(errs.len(), 1);
    assert_eq!(errs[0].code, Code::BadRational);
    assert_eq!((errs[0].span.line, errs[0].span.column, errs[0].span.length), (1, 17, 1));
    assert!(errs[0].message.contains("zero-duration"));
}

#[test]
fn dangling_exhibit_points_at_the_reference() {
    let src = "chronoid c = [0,1];\npresential m0 at c@0;\ncontinuant C lifetime c { exhibits 0 -> m0;\n  exhibits 1 -> ghost; }";
    assert_eq!(codes(src), [(Code::DanglingReference, 4, 17)]);
}

#[test]
fn diagnostics_for_each_code() {
    assert_eq!(codes("chronoid c = [0 1];")[0].0, Code::UnexpectedToken);
    assert_eq!(codes("chronoid c = [0, 1/0];")[0].0, Code::BadRational);
    assert_eq!(codes("chronoid c = [0,1]; chronoid c = [0,2];"), [(Code::DuplicateId, 1, 30)]);
    assert_eq!(codes("chronoid c = [0,1]; presential m at c@0 { mood = calm; }")[0].0, Code::UnknownId);
    assert_eq!(codes("chronoid c = [0,1]; presential x at c@0; process x extent c { boundary 0 -> x; boundary 1 -> x; }")[0].0, Code::KindConflict);
    assert_eq!(
        codes("property v : numeric global; chronoid c = [0,1]; presential m at c@0 { v = 1; }")[0].0,
        Code::KindConflict
    );
    assert_eq!(codes("chronoid c = [0,1]; presential m at c@2;")[0].0, Code::BadRational);
}

#[test]
fn recovery_reports_several_errors() {
    let errs = parse("chronoid a = [0 1]; chronoid b = [0, 1]; process p extent b { boundary x; } chronoid d = ;").unwrap_err();
    assert_eq!(errs.len(), 3, "{errs:?}");
}

#[test]
fn spans_stay_in_range() {
    let sources = ["", "chronoid", "chronoid c = [0,", "\"open", "situation s at c@", "é ü", "fact f: r(a) in"];
    for src in sources {
        if let Err(errs) = parse(src) {
            let lines = src.split('\n').count();
            for d in errs {
                assert!(d.span.line >= 1 && d.span.line <= lines, "{src:?}: {d}");
                assert!(d.span.column >= 1 && d.span.length >= 1);
                let line = src.split('\n').nth(d.span.line - 1).unwrap();
                assert!(d.span.column <= line.chars().count() + 1, "{src:?}: {d}");
            }
        }
    }
}

#[test]
fn forward_references_resolve() {
    let src = "continuant John lifetime c { exhibits 0 -> m0; exhibits 1 -> m1; }\n\
               presential m0 at c@0; presential m1 at c@1; chronoid c = [0,1];";
    assert!(parse(src).is_ok());
}

#[test]
fn rationals_are_normalized() {
    let m = parse("chronoid c = [2/4, 0.75]; presential m at c@6/8;").unwrap();
    let text = serialize(&m);
    assert!(text.contains("chronoid c = [1/2, 3/4];"), "{text}");
    assert!(text.contains("presential m at c@3/4;"), "{text}");
    assert_eq!(*m.presential("m").unwrap().at.coordinate(), Time::new(3, 4));
}

#[test]
fn property_facts_and_values() {
    let src = "property size : numeric global; chronoid c = [0,1]; presential m at c@0; presential n at c@1;\n\
               process p extent c { boundary 0 -> m; boundary 1 -> n; trajectory size { 0 -> -1/2; 1 -> 3; } }\n\
               situation s over c founded-on p { fact size(p) = 3; fact named: near(m, n); }";
    let m = parse(src).unwrap();
    assert_eq!(m.process("p").unwrap().trajectories["size"][0].1, Value::Number(common::rat(-1, 2)));
    assert_eq!(m.named_facts()["named"].situation, "s");
    assert_eq!(m.situation("s").unwrap().constituents.len(), 2);
}

#[test]
fn corpus_round_trips() {
    let files = common::corpus_files();
    assert!(files.len() >= 10);
    for f in files {
        let m = parse(&common::read(&f)).unwrap_or_else(|e| panic!("{}: {e:?}", f.display()));
        let text = serialize(&m);
        assert_eq!(parse(&text).unwrap(), m, "{}", f.display());
        assert_eq!(serialize(&parse(&text).unwrap()), text);
    }
}

#[test]
fn permuted_declarations_serialize_identically() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for f in common::corpus_files() {
        let text = serialize(&parse(&common::read(&f)).unwrap());
        let mut stmts = common::statements(&text);
        for _ in 0..5 {
            stmts.shuffle(&mut rng);
            let shuffled = stmts.concat();
            assert_eq!(serialize(&parse(&shuffled).unwrap()), text, "{}", f.display());
        }
    }
}

#[test]
fn random_models_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let m = common::random_model(&mut rng);
        let text = serialize(&m);
        let back = parse(&text).unwrap_or_else(|e| panic!("{e:?}\n{text}"));
        assert_eq!(back, m, "{text}");
    }
}

#[test]
fn kind_conflicts_are_rejected_at_the_second_declaration() {
    let src = "chronoid c = [0,1];\npresential m0 at c@0;\npresential m1 at c@1;\n\
               continuant x lifetime c { exhibits 0 -> m0; exhibits 1 -> m1; }\n\
               process x extent c { boundary 0 -> m0; boundary 1 -> m1; }";
    let errs = parse(src).unwrap_err();
    assert_eq!(errs.len(), 1);
    assert_eq!(errs[0].code, Code::KindConflict);
    assert_eq!(errs[0].span.line, 5);
    assert!(errs[0].message.contains("continuant") && errs[0].message.contains("process"));
}

#[test]
fn parsed_models_are_disjoint() {
    for f in common::corpus_files() {
        assert!(check_disjointness(&parse(&common::read(&f)).unwrap()).is_empty());
    }
}
