use super::ast::SourceSpan;
use super::ParseError;
use crate::ofe::Value;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    /// Decimal literal; the text is kept so the guard can insist on `0`.
    Nat(Value, String),
    If,
    Then,
    Else,
    LParen,
    RParen,
    Eq,
    Plus,
    Minus,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Nat(_, s) => format!("number `{s}`"),
            Tok::If => "`if`".into(),
            Tok::Then => "`then`".into(),
            Tok::Else => "`else`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

/// Splits `src` into tokens, skipping whitespace and `#` comments. The last
/// token is always `Eof`, spanning the empty range at the end of input.
pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'=' => Some(Tok::Eq),
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            _ => None,
        };
        if let Some(tok) = single {
            i += 1;
            tokens.push(Token {
                tok,
                span: SourceSpan::new(start, i),
            });
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let text = &src[start..i];
            let span = SourceSpan::new(start, i);
            let value = text
                .parse::<Value>()
                .map_err(|_| ParseError::LiteralOutOfRange { span })?;
            tokens.push(Token {
                tok: Tok::Nat(value, text.to_string()),
                span,
            });
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let tok = match &src[start..i] {
                "if" => Tok::If,
                "then" => Tok::Then,
                "else" => Tok::Else,
                word => Tok::Ident(word.to_string()),
            };
            tokens.push(Token {
                tok,
                span: SourceSpan::new(start, i),
            });
        } else {
            let ch = src[start..].chars().next().expect("in bounds");
            return Err(ParseError::Syntax {
                span: SourceSpan::new(start, start + ch.len_utf8()),
                message: format!("unexpected character `{ch}`"),
            });
        }
    }
    tokens.push(Token {
        tok: Tok::Eof,
        span: SourceSpan::new(src.len(), src.len()),
    });
    Ok(tokens)
}
