//! Token definitions for the Harp lexer.

use std::fmt;

use crate::diag::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keyword {
    Record,
    Policy,
    Enforce,
    Boundary,
    Extern,
    Scope,
    Scopes,
    Fn,
    Compose,
    Requires,
    Check,
    Case,
    Let,
    If,
    Else,
    True,
    False,
    Private,
    Var,
}

impl Keyword {
    pub fn from_ident(s: &str) -> Option<Keyword> {
        Some(match s {
            "record" => Keyword::Record,
            "policy" => Keyword::Policy,
            "enforce" => Keyword::Enforce,
            "boundary" => Keyword::Boundary,
            "extern" => Keyword::Extern,
            "scope" => Keyword::Scope,
            "scopes" => Keyword::Scopes,
            "fn" => Keyword::Fn,
            "compose" => Keyword::Compose,
            "requires" => Keyword::Requires,
            "check" => Keyword::Check,
            "case" => Keyword::Case,
            "let" => Keyword::Let,
            "if" => Keyword::If,
            "else" => Keyword::Else,
            "true" => Keyword::True,
            "false" => Keyword::False,
            "private" => Keyword::Private,
            "var" => Keyword::Var,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Keyword::Record => "record",
            Keyword::Policy => "policy",
            Keyword::Enforce => "enforce",
            Keyword::Boundary => "boundary",
            Keyword::Extern => "extern",
            Keyword::Scope => "scope",
            Keyword::Scopes => "scopes",
            Keyword::Fn => "fn",
            Keyword::Compose => "compose",
            Keyword::Requires => "requires",
            Keyword::Check => "check",
            Keyword::Case => "case",
            Keyword::Let => "let",
            Keyword::If => "if",
            Keyword::Else => "else",
            Keyword::True => "true",
            Keyword::False => "false",
            Keyword::Private => "private",
            Keyword::Var => "var",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Ident(String),
    Kw(Keyword),
    /// `@name` annotation marker (the parser only accepts `@policyArg`).
    Anno(String),
    Int(i64),
    Str(String),

    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Lt,
    Gt,
    Comma,
    Semi,
    Colon,
    Dot,
    Assign,
    Plus,
    Minus,
    Star,
    Bang,
    EqEq,
    NotEq,
    AndAnd,
    OrOr,
    Arrow,
    FatArrow,
    Underscore,

    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "identifier '{s}'"),
            TokenKind::Kw(k) => write!(f, "'{}'", k.as_str()),
            TokenKind::Anno(s) => write!(f, "'@{s}'"),
            TokenKind::Int(n) => write!(f, "integer {n}"),
            TokenKind::Str(_) => write!(f, "string literal"),
            TokenKind::LParen => write!(f, "'('"),
            TokenKind::RParen => write!(f, "')'"),
            TokenKind::LBrace => write!(f, "'{{'"),
            TokenKind::RBrace => write!(f, "'}}'"),
            TokenKind::LBracket => write!(f, "'['"),
            TokenKind::RBracket => write!(f, "']'"),
            TokenKind::Lt => write!(f, "'<'"),
            TokenKind::Gt => write!(f, "'>'"),
            TokenKind::Comma => write!(f, "','"),
            TokenKind::Semi => write!(f, "';'"),
            TokenKind::Colon => write!(f, "':'"),
            TokenKind::Dot => write!(f, "'.'"),
            TokenKind::Assign => write!(f, "'='"),
            TokenKind::Plus => write!(f, "'+'"),
            TokenKind::Minus => write!(f, "'-'"),
            TokenKind::Star => write!(f, "'*'"),
            TokenKind::Bang => write!(f, "'!'"),
            TokenKind::EqEq => write!(f, "'=='"),
            TokenKind::NotEq => write!(f, "'!='"),
            TokenKind::AndAnd => write!(f, "'&&'"),
            TokenKind::OrOr => write!(f, "'||'"),
            TokenKind::Arrow => write!(f, "'->'"),
            TokenKind::FatArrow => write!(f, "'=>'"),
            TokenKind::Underscore => write!(f, "'_'"),
            TokenKind::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Span,
}
