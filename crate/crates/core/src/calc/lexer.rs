use std::fmt;

use thiserror::Error;

/// Byte range `[start, end)` into the source line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span { start: self.start.min(other.start), end: self.end.max(other.end) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Number(f64),
    UnitI,
    UnitJ,
    UnitK,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    Ident(String),
    End,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Number(x) => write!(f, "number {x}"),
            TokenKind::UnitI => f.write_str("'i'"),
            TokenKind::UnitJ => f.write_str("'j'"),
            TokenKind::UnitK => f.write_str("'k'"),
            TokenKind::Plus => f.write_str("'+'"),
            TokenKind::Minus => f.write_str("'-'"),
            TokenKind::Star => f.write_str("'*'"),
            TokenKind::Caret => f.write_str("'^'"),
            TokenKind::LParen => f.write_str("'('"),
            TokenKind::RParen => f.write_str("')'"),
            TokenKind::Comma => f.write_str("','"),
            TokenKind::Ident(name) => write!(f, "identifier '{name}'"),
            TokenKind::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
    /// Source text of the token.
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("lex error at {position}: unexpected character {found:?}")]
pub struct LexError {
    pub position: usize,
    pub found: char,
}

/// Splits a line into tokens, always terminated by [`TokenKind::End`].
pub fn tokenize(src: &str) -> Result<Vec<Token>, LexError> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        let start = pos;
        let kind = match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                pos += 1;
                continue;
            }
            b'+' => TokenKind::Plus,
            b'-' => TokenKind::Minus,
            b'*' => TokenKind::Star,
            b'^' => TokenKind::Caret,
            b'(' => TokenKind::LParen,
            b')' => TokenKind::RParen,
            b',' => TokenKind::Comma,
            b'0'..=b'9' | b'.' => {
                pos = scan_number(bytes, pos).ok_or_else(|| lex_error(src, start))?;
                // the scanned range is ASCII digits, '.', 'e', and signs
                let value: f64 = src[start..pos].parse().map_err(|_| lex_error(src, start))?;
                tokens.push(token(src, TokenKind::Number(value), start, pos));
                continue;
            }
            b if b.is_ascii_alphabetic() || b == b'_' => {
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                    pos += 1;
                }
                let kind = match &src[start..pos] {
                    "i" => TokenKind::UnitI,
                    "j" => TokenKind::UnitJ,
                    "k" => TokenKind::UnitK,
                    name => TokenKind::Ident(name.to_string()),
                };
                tokens.push(token(src, kind, start, pos));
                continue;
            }
            _ => return Err(lex_error(src, start)),
        };
        pos += 1;
        tokens.push(token(src, kind, start, pos));
    }
    tokens.push(token(src, TokenKind::End, src.len(), src.len()));
    Ok(tokens)
}

fn token(src: &str, kind: TokenKind, start: usize, end: usize) -> Token {
    Token { kind, span: Span::new(start, end), text: src[start..end].to_string() }
}

fn lex_error(src: &str, position: usize) -> LexError {
    let found = src[position..].chars().next().unwrap_or('\0');
    LexError { position, found }
}

/// `digits [. digits] [(e|E) [+|-] digits]`, with at least one mantissa
/// digit. The exponent is only consumed when digits follow it.
fn scan_number(bytes: &[u8], mut pos: usize) -> Option<usize> {
    let digits = |pos: &mut usize| {
        let from = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        *pos - from
    };
    let mut mantissa = digits(&mut pos);
    if pos < bytes.len() && bytes[pos] == b'.' {
        pos += 1;
        mantissa += digits(&mut pos);
    }
    if mantissa == 0 {
        return None;
    }
    if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
        let mut look = pos + 1;
        if look < bytes.len() && (bytes[look] == b'+' || bytes[look] == b'-') {
            look += 1;
        }
        if digits(&mut look) > 0 {
            pos = look;
        }
    }
    Some(pos)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn numbers_and_units() {
        use TokenKind::*;
        assert_eq!(kinds("1+2i"), vec![Number(1.0), Plus, Number(2.0), UnitI, End]);
        assert_eq!(kinds("1.5e-3k"), vec![Number(1.5e-3), UnitK, End]);
        assert_eq!(kinds("2e"), vec![Number(2.0), Ident("e".into()), End]);
        assert_eq!(kinds(".5 j"), vec![Number(0.5), UnitJ, End]);
    }

    #[test]
    fn identifiers() {
        use TokenKind::*;
        assert_eq!(
            kinds("matl(j)"),
            vec![Ident("matl".into()), LParen, UnitJ, RParen, End]
        );
        assert_eq!(kinds("ij"), vec![Ident("ij".into()), End]);
        assert_eq!(kinds("pow(k, -2)"), vec![
            Ident("pow".into()), LParen, UnitK, Comma, Minus, Number(2.0), RParen, End
        ]);
    }

    #[test]
    fn spans() {
        let toks = tokenize(" 12 + ij").unwrap();
        let spans: Vec<_> = toks.iter().map(|t| (t.span.start, t.span.end)).collect();
        assert_eq!(spans, vec![(1, 3), (4, 5), (6, 8), (8, 8)]);
    }

    #[test]
    fn errors() {
        assert_eq!(tokenize("1 @ 2"), Err(LexError { position: 2, found: '@' }));
        assert_eq!(tokenize("."), Err(LexError { position: 0, found: '.' }));
        assert_eq!(tokenize("1+é"), Err(LexError { position: 2, found: 'é' }));
    }
}
