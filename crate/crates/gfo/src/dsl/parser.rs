//! Recursive-descent parser from tokens to statements. Names are not
//! resolved here; see `lower`.

use gfo_core::functions::{FunctionKind, Slot};
use gfo_core::value::parse_rational;
use gfo_core::{Comparison, Id, Rational, Support, Time, Value, ValueConstraint, ValueDomain};

use super::diagnostic::{Code, Raw, Span};
use super::lexer::{lex, Tok, Token};

#[derive(Clone, Debug)]
pub(crate) struct Sp<T> {
    pub node: T,
    pub span: Span,
}

pub(crate) type SId = Sp<Id>;

#[derive(Clone, Debug)]
pub(crate) struct FactExpr {
    pub relator: SId,
    pub args: Vec<SId>,
    pub value: Option<Value>,
}

#[derive(Clone, Debug)]
pub(crate) enum ExtentExpr {
    At(SId, Sp<Time>),
    Over(SId),
}

#[derive(Clone, Debug)]
pub(crate) struct PatternExpr {
    pub relator: Id,
    pub args: Vec<Slot>,
}

#[derive(Clone, Debug)]
pub(crate) struct HoldsExpr {
    pub entity: SId,
    pub property: SId,
    pub constraint: ValueConstraint,
}

#[derive(Clone, Debug)]
pub(crate) struct ConceptExpr {
    pub name: Option<Id>,
    pub facts: Vec<PatternExpr>,
    pub holds: Vec<HoldsExpr>,
}

#[derive(Clone, Debug)]
pub(crate) enum Stmt {
    Chronoid { id: SId, left: Sp<Time>, right: Sp<Time> },
    Property { id: SId, domain: ValueDomain, support: Sp<Support> },
    Presential { id: SId, material: bool, chronoid: SId, at: Sp<Time>, valuation: Vec<(SId, Value)> },
    Process { id: SId, extent: SId, boundaries: Vec<(Sp<Time>, SId)>, trajectories: Vec<(SId, Vec<(Sp<Time>, Value)>)> },
    Continuant { id: SId, material: bool, lifetime: SId, exhibits: Vec<(Sp<Time>, SId)> },
    Situation { id: SId, extent: ExtentExpr, founded_on: Option<SId>, participants: Vec<SId>, facts: Vec<(Option<SId>, FactExpr)> },
    Fact { id: SId, fact: FactExpr, situation: SId },
    Function {
        id: SId,
        labels: Vec<String>,
        kind: Option<Sp<FunctionKind>>,
        req: Option<ConceptExpr>,
        goal: Option<ConceptExpr>,
        fitem: Vec<(SId, ValueConstraint)>,
    },
    Exe { executor: SId, process: SId },
    RequirementInstance { function: SId, situation: SId },
    Attributive { bearer: SId, kind: SId, note: String },
}

pub(crate) struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    pub errors: Vec<Raw>,
}

type PResult<T> = Result<T, Raw>;

impl Parser {
    pub fn new(src: &str) -> Self {
        let (tokens, errors) = lex(src);
        Parser { tokens, pos: 0, errors }
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.tokens[(self.pos + k).min(self.tokens.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    pub fn at_eof(&self) -> bool {
        self.peek().tok == Tok::Eof
    }

    fn unexpected(&self, expected: &str) -> Raw {
        let t = self.peek();
        let found = match &t.tok {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Str(_) => "a string".to_string(),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".to_string(),
        };
        Raw::new(t.span, Code::UnexpectedToken, format!("expected {expected}, found {found}"))
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Sym(x) if *x == s)
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(x) if x == kw)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        let hit = self.is_sym(s);
        if hit {
            self.bump();
        }
        hit
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        let hit = self.is_kw(kw);
        if hit {
            self.bump();
        }
        hit
    }

    fn sym(&mut self, s: &str) -> PResult<Span> {
        if self.is_sym(s) {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&format!("`{s}`")))
        }
    }

    fn kw(&mut self, kw: &str) -> PResult<Span> {
        if self.is_kw(kw) {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<SId> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let node = Id::from(s.as_str());
                Ok(Sp { node, span: self.bump().span })
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn string(&mut self) -> PResult<String> {
        match &self.peek().tok {
            Tok::Str(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected("a string")),
        }
    }

    fn rational(&mut self) -> PResult<Sp<Rational>> {
        match &self.peek().tok {
            Tok::Number(lit) => {
                let parsed = parse_rational(lit);
                let span = self.bump().span;
                parsed.map(|node| Sp { node, span }).map_err(|e| Raw::new(span, Code::BadRational, e.to_string()))
            }
            _ => Err(self.unexpected("a number")),
        }
    }

    pub(crate) fn time(&mut self) -> PResult<Sp<Time>> {
        let r = self.rational()?;
        Ok(Sp { node: Time::from_rational(r.node), span: r.span })
    }

    pub(crate) fn value(&mut self) -> PResult<Value> {
        match &self.peek().tok {
            Tok::Number(_) => Ok(Value::Number(self.rational()?.node)),
            Tok::Ident(_) => Ok(Value::Symbol(self.ident("a value")?.node)),
            _ => Err(self.unexpected("a value")),
        }
    }

    pub(crate) fn comparison(&mut self) -> Option<Comparison> {
        let op = match &self.peek().tok {
            Tok::Sym("=") => Comparison::Eq,
            Tok::Sym("!=") => Comparison::Ne,
            Tok::Sym("<") => Comparison::Lt,
            Tok::Sym("<=") => Comparison::Le,
            Tok::Sym(">") => Comparison::Gt,
            Tok::Sym(">=") => Comparison::Ge,
            _ => return None,
        };
        self.bump();
        Some(op)
    }

    fn constraint(&mut self) -> PResult<ValueConstraint> {
        let op = self.comparison().ok_or_else(|| self.unexpected("a comparison (=, !=, <, <=, >, >=)"))?;
        Ok(ValueConstraint::new(op, self.value()?))
    }

    fn comma_list<T>(&mut self, close: &str, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        let mut out = Vec::new();
        if self.eat_sym(close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat_sym(close) {
                return Ok(out);
            }
            self.sym(",")?;
        }
    }

    pub(crate) fn slot(&mut self) -> PResult<Slot> {
        let id = self.ident("an argument")?;
        Ok(if id.node == "_" { Slot::Wildcard } else { Slot::Id(id.node) })
    }

    /// Parses the whole token stream, recovering at statement boundaries.
    pub fn statements(&mut self) -> Vec<Stmt> {
        let mut out = Vec::new();
        while !self.at_eof() {
            let start = self.pos;
            match self.statement() {
                Ok(s) => out.push(s),
                Err(e) => {
                    self.errors.push(e);
                    self.recover(start);
                }
            }
        }
        out
    }

    /// Skips from `start` past the end of the broken statement: a `;` at
    /// brace depth 0, or the `}` that closes its outermost block.
    fn recover(&mut self, start: usize) {
        self.pos = start;
        let mut depth = 0usize;
        loop {
            match self.bump().tok {
                Tok::Eof => return,
                Tok::Sym(";") if depth == 0 => return,
                Tok::Sym("{") => depth += 1,
                Tok::Sym("}") => {
                    depth = depth.saturating_sub(1);
                    if depth == 0 {
                        self.eat_sym(";");
                        return;
                    }
                }
                _ => {}
            }
        }
    }

    fn statement(&mut self) -> PResult<Stmt> {
        let Tok::Ident(kw) = &self.peek().tok else {
            return Err(self.unexpected("a declaration"));
        };
        match kw.as_str() {
            "chronoid" => self.chronoid(),
            "property" => self.property(),
            "immaterial" => {
                self.bump();
                match &self.peek().tok {
                    Tok::Ident(k) if k == "presential" => self.presential(false),
                    Tok::Ident(k) if k == "continuant" => self.continuant(false),
                    _ => Err(self.unexpected("`presential` or `continuant`")),
                }
            }
            "presential" => self.presential(true),
            "process" => self.process(),
            "continuant" => self.continuant(true),
            "situation" => self.situation(),
            "fact" => self.named_fact(),
            "function" => self.function(),
            "exe" => {
                self.bump();
                let executor = self.ident("an executor id")?;
                self.sym("->")?;
                let process = self.ident("a process id")?;
                self.sym(";")?;
                Ok(Stmt::Exe { executor, process })
            }
            "requirement-instance" => {
                self.bump();
                let function = self.ident("a function id")?;
                self.sym(":")?;
                let situation = self.ident("a situation id")?;
                self.sym(";")?;
                Ok(Stmt::RequirementInstance { function, situation })
            }
            "attributive" => {
                self.bump();
                let bearer = self.ident("a bearer id")?;
                let kind = self.ident("an attributive kind")?;
                let note = self.string()?;
                self.sym(";")?;
                Ok(Stmt::Attributive { bearer, kind, note })
            }
            _ => Err(self.unexpected("a declaration")),
        }
    }

    fn chronoid(&mut self) -> PResult<Stmt> {
        self.bump();
        let id = self.ident("a chronoid id")?;
        self.sym("=")?;
        self.sym("[")?;
        let left = self.time()?;
        self.sym(",")?;
        let right = self.time()?;
        self.sym("]")?;
        self.sym(";")?;
        Ok(Stmt::Chronoid { id, left, right })
    }

    fn property(&mut self) -> PResult<Stmt> {
        self.bump();
        let id = self.ident("a property name")?;
        self.sym(":")?;
        let domain = if self.eat_sym("{") {
            let symbols = self.comma_list("}", |p| p.ident("a symbol").map(|s| s.node))?;
            ValueDomain::Categorical(symbols.into_iter().collect())
        } else {
            self.kw("numeric").map_err(|_| self.unexpected("`{` or `numeric`"))?;
            ValueDomain::Numeric
        };
        let start = self.peek().span;
        let support = if self.eat_kw("isolated") {
            Support::Isolated
        } else if self.eat_kw("global") {
            Support::Global
        } else if self.eat_kw("non-isolated") {
            self.sym("(")?;
            let r = self.rational()?;
            self.sym(")")?;
            Support::NonIsolated { window_radius: r.node }
        } else {
            return Err(self.unexpected("`isolated`, `non-isolated(r)` or `global`"));
        };
        let span = start.to(self.tokens[self.pos - 1].span);
        self.sym(";")?;
        Ok(Stmt::Property { id, domain, support: Sp { node: support, span } })
    }

    fn presential(&mut self, material: bool) -> PResult<Stmt> {
        self.bump();
        let id = self.ident("a presential id")?;
        self.kw("at")?;
        let chronoid = self.ident("a chronoid id")?;
        self.sym("@")?;
        let at = self.time()?;
        let mut valuation = Vec::new();
        if self.eat_sym("{") {
            while !self.eat_sym("}") {
                let prop = self.ident("a property name")?;
                self.sym("=")?;
                let v = self.value()?;
                self.sym(";")?;
                valuation.push((prop, v));
            }
        } else {
            self.sym(";")?;
        }
        Ok(Stmt::Presential { id, material, chronoid, at, valuation })
    }

    fn process(&mut self) -> PResult<Stmt> {
        self.bump();
        let id = self.ident("a process id")?;
        self.kw("extent")?;
        let extent = self.ident("a chronoid id")?;
        self.sym("{")?;
        let mut boundaries = Vec::new();
        let mut trajectories = Vec::new();
        while !self.eat_sym("}") {
            if self.eat_kw("boundary") {
                let t = self.time()?;
                self.sym("->")?;
                let m = self.ident("a presential id")?;
                self.sym(";")?;
                boundaries.push((t, m));
            } else if self.eat_kw("trajectory") {
                let prop = self.ident("a property name")?;
                self.sym("{")?;
                let mut samples = Vec::new();
                while !self.eat_sym("}") {
                    let t = self.time()?;
                    self.sym("->")?;
                    let v = self.value()?;
                    self.sym(";")?;
                    samples.push((t, v));
                }
                trajectories.push((prop, samples));
            } else {
                return Err(self.unexpected("`boundary`, `trajectory` or `}`"));
            }
        }
        Ok(Stmt::Process { id, extent, boundaries, trajectories })
    }

    fn continuant(&mut self, material: bool) -> PResult<Stmt> {
        self.bump();
        let id = self.ident("a continuant id")?;
        self.kw("lifetime")?;
        let lifetime = self.ident("a chronoid id")?;
        self.sym("{")?;
        let mut exhibits = Vec::new();
        while !self.eat_sym("}") {
            self.kw("exhibits").map_err(|_| self.unexpected("`exhibits` or `}`"))?;
            let t = self.time()?;
            self.sym("->")?;
            let m = self.ident("a presential id")?;
            self.sym(";")?;
            exhibits.push((t, m));
        }
        Ok(Stmt::Continuant { id, material, lifetime, exhibits })
    }

    fn fact_expr(&mut self) -> PResult<FactExpr> {
        let relator = self.ident("a relator")?;
        self.sym("(")?;
        let args = self.comma_list(")", |p| p.ident("an argument"))?;
        let value = if self.eat_sym("=") { Some(self.value()?) } else { None };
        Ok(FactExpr { relator, args, value })
    }

    fn situation(&mut self) -> PResult<Stmt> {
        self.bump();
        let id = self.ident("a situation id")?;
        let extent = if self.eat_kw("at") {
            let ch = self.ident("a chronoid id")?;
            self.sym("@")?;
            ExtentExpr::At(ch, self.time()?)
        } else if self.eat_kw("over") {
            ExtentExpr::Over(self.ident("a chronoid id")?)
        } else {
            return Err(self.unexpected("`at` or `over`"));
        };
        let founded_on = if self.eat_kw("founded-on") { Some(self.ident("a process id")?) } else { None };
        self.sym("{")?;
        let mut participants = Vec::new();
        let mut facts = Vec::new();
        while !self.eat_sym("}") {
            if self.eat_kw("participants") {
                participants.extend(self.comma_list(";", |p| p.ident("a participant id"))?);
            } else if self.eat_kw("fact") {
                let name = if matches!(self.peek_at(1), Tok::Sym(":")) {
                    let n = self.ident("a fact name")?;
                    self.bump();
                    Some(n)
                } else {
                    None
                };
                let f = self.fact_expr()?;
                self.sym(";")?;
                facts.push((name, f));
            } else {
                return Err(self.unexpected("`participants`, `fact` or `}`"));
            }
        }
        Ok(Stmt::Situation { id, extent, founded_on, participants, facts })
    }

    fn named_fact(&mut self) -> PResult<Stmt> {
        self.bump();
        let id = self.ident("a fact name")?;
        self.sym(":")?;
        let fact = self.fact_expr()?;
        self.kw("in")?;
        let situation = self.ident("a situation id")?;
        self.sym(";")?;
        Ok(Stmt::Fact { id, fact, situation })
    }

    fn concept(&mut self) -> PResult<ConceptExpr> {
        let name = match &self.peek().tok {
            Tok::Ident(_) => Some(self.ident("a concept name")?.node),
            _ => None,
        };
        self.sym("{")?;
        let mut c = ConceptExpr { name, facts: Vec::new(), holds: Vec::new() };
        while !self.eat_sym("}") {
            if self.eat_kw("fact") {
                let relator = self.ident("a relator")?.node;
                self.sym("(")?;
                let args = self.comma_list(")", Parser::slot)?;
                self.sym(";")?;
                c.facts.push(PatternExpr { relator, args });
            } else if self.eat_kw("holds") {
                let entity = self.ident("an entity id")?;
                self.sym(".")?;
                let property = self.ident("a property name")?;
                let constraint = self.constraint()?;
                self.sym(";")?;
                c.holds.push(HoldsExpr { entity, property, constraint });
            } else {
                return Err(self.unexpected("`fact`, `holds` or `}`"));
            }
        }
        Ok(c)
    }

    fn function(&mut self) -> PResult<Stmt> {
        self.bump();
        let id = self.ident("a function id")?;
        self.sym("{")?;
        let mut labels = Vec::new();
        let mut kind = None;
        let mut req = None;
        let mut goal = None;
        let mut fitem = Vec::new();
        while !self.eat_sym("}") {
            let section = self.peek().clone();
            if self.eat_kw("label") {
                labels.push(self.string()?);
                self.sym(";")?;
            } else if self.eat_kw("kind") {
                let k = if self.eat_kw("conceptual") {
                    FunctionKind::Conceptual
                } else if self.eat_kw("universal") {
                    FunctionKind::Universal
                } else if self.eat_kw("individual") {
                    self.sym("(")?;
                    let bearer = self.ident("a bearer id")?.node;
                    self.sym(")")?;
                    FunctionKind::Individual { bearer }
                } else {
                    return Err(self.unexpected("`conceptual`, `universal` or `individual(x)`"));
                };
                let span = section.span.to(self.tokens[self.pos - 1].span);
                self.sym(";")?;
                if kind.replace(Sp { node: k, span }).is_some() {
                    return Err(Raw::new(section.span, Code::DuplicateId, format!("function `{}` declares `kind` twice", id.node)));
                }
            } else if self.eat_kw("requires") {
                if req.replace(self.concept()?).is_some() {
                    return Err(Raw::new(section.span, Code::DuplicateId, format!("function `{}` declares `requires` twice", id.node)));
                }
            } else if self.eat_kw("goal") {
                if goal.replace(self.concept()?).is_some() {
                    return Err(Raw::new(section.span, Code::DuplicateId, format!("function `{}` declares `goal` twice", id.node)));
                }
            } else if self.eat_kw("fitem") {
                self.sym("{")?;
                while !self.eat_sym("}") {
                    let prop = self.ident("a property name")?;
                    let c = self.constraint()?;
                    self.sym(";")?;
                    fitem.push((prop, c));
                }
            } else {
                return Err(self.unexpected("`label`, `kind`, `requires`, `goal`, `fitem` or `}`"));
            }
        }
        Ok(Stmt::Function { id, labels, kind, req, goal, fitem })
    }

    pub(crate) fn expect_eof(&mut self) -> PResult<()> {
        if self.at_eof() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    pub(crate) fn eat_keyword(&mut self, kw: &str) -> bool {
        self.eat_kw(kw)
    }

    pub(crate) fn expect_sym(&mut self, s: &str) -> PResult<Span> {
        self.sym(s)
    }

    pub(crate) fn expect_ident(&mut self, what: &str) -> PResult<SId> {
        self.ident(what)
    }

    pub(crate) fn slots_until(&mut self, close: &str) -> PResult<Vec<Slot>> {
        self.comma_list(close, Parser::slot)
    }

    pub(crate) fn error_here(&self, expected: &str) -> Raw {
        self.unexpected(expected)
    }
}
