use std::fmt;

/// Byte range into a source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span { start: self.start, end: other.end.max(self.end) }
    }
}

/// A resolved location: 1-based line and column (in characters), length in
/// characters, always at least 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourceSpan {
    pub file: String,
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    UnexpectedToken,
    UnknownId,
    DuplicateId,
    BadRational,
    DanglingReference,
    KindConflict,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::UnexpectedToken => "unexpected-token",
            Code::UnknownId => "unknown-id",
            Code::DuplicateId => "duplicate-id",
            Code::BadRational => "bad-rational",
            Code::DanglingReference => "dangling-reference",
            Code::KindConflict => "kind-conflict",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParseDiagnostic {
    pub span: SourceSpan,
    pub code: Code,
    pub message: String,
}

impl fmt::Display for ParseDiagnostic {
    /// `file:line:col: code: message`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}: {}: {}", self.span.file, self.span.line, self.span.column, self.code, self.message)
    }
}

impl std::error::Error for ParseDiagnostic {}

/// Unresolved diagnostic, before line/column lookup.
#[derive(Clone, Debug)]
pub(crate) struct Raw {
    pub span: Span,
    pub code: Code,
    pub message: String,
}

impl Raw {
    pub fn new(span: Span, code: Code, message: impl Into<String>) -> Self {
        Raw { span, code, message: message.into() }
    }
}

/// Maps byte offsets to line/column pairs.
pub(crate) struct LineIndex<'a> {
    src: &'a str,
    starts: Vec<usize>,
}

impl<'a> LineIndex<'a> {
    pub fn new(src: &'a str) -> Self {
        let starts = std::iter::once(0).chain(src.match_indices('\n').map(|(i, _)| i + 1)).collect();
        LineIndex { src, starts }
    }

    pub fn resolve(&self, file: &str, span: Span) -> SourceSpan {
        let start = clamp_to_char(self.src, span.start.min(self.src.len()));
        let end = clamp_to_char(self.src, span.end.min(self.src.len())).max(start);
        let line = self.starts.partition_point(|&s| s <= start);
        let line_start = self.starts[line - 1];
        let column = self.src[line_start..start].chars().count() + 1;
        let length = self.src[start..end].chars().count().max(1);
        SourceSpan { file: file.to_string(), line, column, length }
    }

    pub fn finish(&self, file: &str, raw: Vec<Raw>) -> Vec<ParseDiagnostic> {
        let mut out: Vec<ParseDiagnostic> = raw
            .into_iter()
            .map(|r| ParseDiagnostic { span: self.resolve(file, r.span), code: r.code, message: r.message })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn clamp_to_char(src: &str, mut i: usize) -> usize {
    while !src.is_char_boundary(i) {
        i -= 1;
    }
    i
}
