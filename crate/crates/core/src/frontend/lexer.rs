use std::fmt;

use crate::source::{FileId, Span};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    // keywords
    Signature,
    Concept,
    Implementation,
    Program,
    Satisfaction,
    External,
    Use,
    Require,
    Type,
    Function,
    Procedure,
    Predicate,
    Axiom,
    Guard,
    Obs,
    Upd,
    Out,
    Var,
    Call,
    Value,
    Assert,
    If,
    Then,
    Else,
    Models,
    // punctuation
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Colon,
    Dot,
    Assign,
    FatArrow,
    EqEq,
    Bang,
    AndAnd,
    Eof,
}

impl TokenKind {
    fn keyword(s: &str) -> Option<TokenKind> {
        use TokenKind::*;
        Some(match s {
            "signature" => Signature,
            "concept" => Concept,
            "implementation" => Implementation,
            "program" => Program,
            "satisfaction" => Satisfaction,
            "external" => External,
            "use" => Use,
            "require" => Require,
            "type" => Type,
            "function" => Function,
            "procedure" => Procedure,
            "predicate" => Predicate,
            "axiom" => Axiom,
            "guard" => Guard,
            "obs" => Obs,
            "upd" => Upd,
            "out" => Out,
            "var" => Var,
            "call" => Call,
            "value" => Value,
            "assert" => Assert,
            "if" => If,
            "then" => Then,
            "else" => Else,
            "models" => Models,
            _ => return None,
        })
    }

    pub fn is_keyword(s: &str) -> bool {
        Self::keyword(s).is_some()
    }
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use TokenKind::*;
        let s = match self {
            Ident(name) => return write!(f, "identifier `{name}`"),
            Signature => "signature",
            Concept => "concept",
            Implementation => "implementation",
            Program => "program",
            Satisfaction => "satisfaction",
            External => "external",
            Use => "use",
            Require => "require",
            Type => "type",
            Function => "function",
            Procedure => "procedure",
            Predicate => "predicate",
            Axiom => "axiom",
            Guard => "guard",
            Obs => "obs",
            Upd => "upd",
            Out => "out",
            Var => "var",
            Call => "call",
            Value => "value",
            Assert => "assert",
            If => "if",
            Then => "then",
            Else => "else",
            Models => "models",
            LBrace => "{",
            RBrace => "}",
            LParen => "(",
            RParen => ")",
            LBracket => "[",
            RBracket => "]",
            Semi => ";",
            Comma => ",",
            Colon => ":",
            Dot => ".",
            Assign => "=",
            FatArrow => "=>",
            EqEq => "==",
            Bang => "!",
            AndAnd => "&&",
            Eof => "end of file",
        };
        write!(f, "`{s}`")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexError {
    pub message: String,
    pub lexeme: String,
    pub span: Span,
}

/// Splits `text` into tokens; the last token is always `Eof`.
pub fn tokenize(file: FileId, text: &str) -> Result<Vec<Token>, LexError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'/' && bytes.get(i + 1) == Some(&b'/') {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        if c == b'/' && bytes.get(i + 1) == Some(&b'*') {
            let start = i;
            i += 2;
            loop {
                if i + 1 >= bytes.len() {
                    return Err(LexError {
                        message: "unterminated block comment".into(),
                        lexeme: "/*".into(),
                        span: Span::new(file, start, start + 2),
                    });
                }
                if bytes[i] == b'*' && bytes[i + 1] == b'/' {
                    i += 2;
                    break;
                }
                i += 1;
            }
            continue;
        }
        let start = i;
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &text[start..i];
            let kind =
                TokenKind::keyword(word).unwrap_or_else(|| TokenKind::Ident(word.to_string()));
            tokens.push(Token {
                kind,
                span: Span::new(file, start, i),
            });
            continue;
        }
        let two = bytes.get(i + 1).copied();
        let (kind, len) = match (c, two) {
            (b'=', Some(b'>')) => (TokenKind::FatArrow, 2),
            (b'=', Some(b'=')) => (TokenKind::EqEq, 2),
            (b'&', Some(b'&')) => (TokenKind::AndAnd, 2),
            (b'=', _) => (TokenKind::Assign, 1),
            (b'{', _) => (TokenKind::LBrace, 1),
            (b'}', _) => (TokenKind::RBrace, 1),
            (b'(', _) => (TokenKind::LParen, 1),
            (b')', _) => (TokenKind::RParen, 1),
            (b'[', _) => (TokenKind::LBracket, 1),
            (b']', _) => (TokenKind::RBracket, 1),
            (b';', _) => (TokenKind::Semi, 1),
            (b',', _) => (TokenKind::Comma, 1),
            (b':', _) => (TokenKind::Colon, 1),
            (b'.', _) => (TokenKind::Dot, 1),
            (b'!', _) => (TokenKind::Bang, 1),
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                let end = start + ch.len_utf8();
                let message = if ch.is_ascii_digit() || ch == '"' {
                    "literals are not part of the language; use a nullary function".to_string()
                } else {
                    format!("unexpected character `{ch}`")
                };
                return Err(LexError {
                    message,
                    lexeme: ch.to_string(),
                    span: Span::new(file, start, end),
                });
            }
        };
        i += len;
        tokens.push(Token {
            kind,
            span: Span::new(file, start, i),
        });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        span: Span::new(file, bytes.len(), bytes.len()),
    });
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        tokenize(FileId(0), text)
            .unwrap()
            .into_iter()
            .map(|t| t.kind)
            .collect()
    }

    #[test]
    fn operators_and_comments() {
        use TokenKind::*;
        assert_eq!(
            kinds("a => b == !c && d /* x */ // y\n;"),
            vec![
                Ident("a".into()),
                FatArrow,
                Ident("b".into()),
                EqEq,
                Bang,
                Ident("c".into()),
                AndAnd,
                Ident("d".into()),
                Semi,
                Eof
            ]
        );
    }

    #[test]
    fn keywords_are_reserved() {
        assert_eq!(kinds("models")[0], TokenKind::Models);
        assert_eq!(kinds("modelsx")[0], TokenKind::Ident("modelsx".into()));
    }

    #[test]
    fn numeric_literal_is_rejected() {
        let err = tokenize(FileId(0), "var x = 3;").unwrap_err();
        assert_eq!(err.lexeme, "3");
        assert_eq!(err.span.start, 8);
    }

    #[test]
    fn unterminated_comment() {
        assert!(tokenize(FileId(0), "/* open").is_err());
    }
}
