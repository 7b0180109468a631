use super::diagnostic::{Code, Raw, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    /// Raw numeric literal, validated by the parser.
    Number(String),
    Str(String),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: Span,
}

const SYMBOLS: [&str; 19] = ["->", "!=", "<=", ">=", ";", "{", "}", "(", ")", "[", "]", ",", ":", "=", "<", ">", "@", ".", "/"];

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

/// Splits `src` into tokens. The token list always ends with `Eof`.
pub(crate) fn lex(src: &str) -> (Vec<Token>, Vec<Raw>) {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut errors = Vec::new();
    let mut i = 0;
    while i < src.len() {
        let c = src[i..].chars().next().unwrap();
        let start = i;
        if c.is_whitespace() {
            i += c.len_utf8();
        } else if src[i..].starts_with("//") {
            i = src[i..].find('\n').map_or(src.len(), |n| i + n);
        } else if ident_start(c) {
            i += 1;
            while i < src.len() {
                let d = bytes[i] as char;
                if !ident_continue(d) || (d == '-' && bytes.get(i + 1) == Some(&b'>')) {
                    break;
                }
                i += 1;
            }
            tokens.push(Token { tok: Tok::Ident(src[start..i].to_string()), span: Span::new(start, i) });
        } else if c.is_ascii_digit() || (c == '-' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) {
            i += 1;
            let mut seen_sep = false;
            while i < src.len() {
                let d = bytes[i];
                if d.is_ascii_digit() {
                    i += 1;
                } else if (d == b'/' || d == b'.') && !seen_sep && bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
                    seen_sep = true;
                    i += 1;
                } else if d == b'/' || d == b'.' {
                    // `2/` or `2/-3`: swallow it so the parser reports one bad literal.
                    i += 1;
                    while i < src.len() && (bytes[i].is_ascii_alphanumeric() || matches!(bytes[i], b'/' | b'.' | b'-')) {
                        i += 1;
                    }
                } else {
                    break;
                }
            }
            tokens.push(Token { tok: Tok::Number(src[start..i].to_string()), span: Span::new(start, i) });
        } else if c == '"' {
            i += 1;
            let mut text = String::new();
            let mut closed = false;
            while let Some(d) = src[i..].chars().next() {
                i += d.len_utf8();
                match d {
                    '"' => {
                        closed = true;
                        break;
                    }
                    '\\' => match src[i..].chars().next() {
                        Some(e @ ('"' | '\\')) => {
                            text.push(e);
                            i += 1;
                        }
                        Some('n') => {
                            text.push('\n');
                            i += 1;
                        }
                        _ => errors.push(Raw::new(Span::new(i - 1, i), Code::UnexpectedToken, "unknown escape in string")),
                    },
                    '\n' => break,
                    _ => text.push(d),
                }
            }
            if !closed {
                errors.push(Raw::new(Span::new(start, i), Code::UnexpectedToken, "unterminated string"));
            }
            tokens.push(Token { tok: Tok::Str(text), span: Span::new(start, i) });
        } else if let Some(sym) = SYMBOLS.iter().find(|s| src[i..].starts_with(**s)) {
            i += sym.len();
            tokens.push(Token { tok: Tok::Sym(sym), span: Span::new(start, i) });
        } else {
            i += c.len_utf8();
            errors.push(Raw::new(Span::new(start, i), Code::UnexpectedToken, format!("unexpected character `{c}`")));
        }
    }
    tokens.push(Token { tok: Tok::Eof, span: Span::new(src.len(), src.len()) });
    (tokens, errors)
}
