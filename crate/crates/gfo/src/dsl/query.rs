//! Proposition syntax used by `gfo query --truthmakers`:
//!
//! ```text
//! fact drinks(John, beer)
//! fact located(blood, _) at 1
//! holds(ball, color, red) during [0, 2]
//! holds(car, velocity, >= 3/2) at 1/2
//! ```

use gfo_core::truthmakers::{Proposition, TimeRef};
use gfo_core::{Chronoid, Comparison, ValueConstraint};

use super::diagnostic::{Code, LineIndex, ParseDiagnostic, Raw};
use super::parser::Parser;

fn time_ref(p: &mut Parser) -> Result<TimeRef, Raw> {
    if p.eat_keyword("at") {
        return Ok(TimeRef::At(p.time()?.node));
    }
    if p.eat_keyword("during") {
        p.expect_sym("[")?;
        let l = p.time()?;
        p.expect_sym(",")?;
        let r = p.time()?;
        p.expect_sym("]")?;
        let ch = Chronoid::new("query", l.node, r.node)
            .map_err(|e| Raw::new(l.span.to(r.span), Code::BadRational, e.to_string()))?;
        return Ok(TimeRef::During(ch));
    }
    Ok(TimeRef::Unanchored)
}

fn proposition(p: &mut Parser) -> Result<Proposition, Raw> {
    let phi = if p.eat_keyword("fact") {
        let relator = p.expect_ident("a relator")?.node;
        p.expect_sym("(")?;
        let args = p.slots_until(")")?;
        Proposition::fact(relator, args, time_ref(p)?)
    } else if p.eat_keyword("holds") {
        p.expect_sym("(")?;
        let subject = p.expect_ident("an entity id")?.node;
        p.expect_sym(",")?;
        let property = p.expect_ident("a property name")?.node;
        p.expect_sym(",")?;
        let op = p.comparison().unwrap_or(Comparison::Eq);
        let value = p.value()?;
        p.expect_sym(")")?;
        Proposition::holds(subject, property, ValueConstraint::new(op, value), time_ref(p)?)
    } else {
        return Err(p.error_here("`fact` or `holds`"));
    };
    p.expect_eof()?;
    Ok(phi)
}

/// Parses one proposition. Diagnostics are reported against the file name
/// `<query>`.
pub fn parse_proposition(src: &str) -> Result<Proposition, Vec<ParseDiagnostic>> {
    let mut p = Parser::new(src);
    let result = proposition(&mut p);
    let mut errors = std::mem::take(&mut p.errors);
    let phi = match result {
        Ok(phi) if errors.is_empty() => return Ok(phi),
        Ok(_) => None,
        Err(e) => Some(e),
    };
    errors.extend(phi);
    Err(LineIndex::new(src).finish("<query>", errors))
}
