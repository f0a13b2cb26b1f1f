//! Hand-written lexer. Produces the full token stream up front; the only
//! failure modes are illegal characters and unterminated strings.

use crate::diag::{Code, Diagnostic, Span};

use super::token::{Keyword, Token, TokenKind};

pub fn tokenize(source: &str) -> Result<Vec<Token>, Diagnostic> {
    Lexer::new(source).run()
}

struct Lexer<'s> {
    src: &'s [u8],
    pos: usize,
}

impl<'s> Lexer<'s> {
    fn new(source: &'s str) -> Self {
        Lexer {
            src: source.as_bytes(),
            pos: 0,
        }
    }

    fn run(mut self) -> Result<Vec<Token>, Diagnostic> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            let start = self.pos as u32;
            let Some(c) = self.peek() else {
                out.push(Token {
                    kind: TokenKind::Eof,
                    span: Span::new(start, start),
                });
                return Ok(out);
            };
            let kind = self.next_kind(c, start)?;
            out.push(Token {
                kind,
                span: Span::new(start, self.pos as u32),
            });
        }
    }

    fn next_kind(&mut self, c: u8, start: u32) -> Result<TokenKind, Diagnostic> {
        match c {
            b'a'..=b'z' | b'A'..=b'Z' => {
                let s = self.take_ident();
                Ok(match Keyword::from_ident(&s) {
                    Some(k) => TokenKind::Kw(k),
                    None => TokenKind::Ident(s),
                })
            }
            b'_' => {
                let s = self.take_ident();
                if s == "_" {
                    Ok(TokenKind::Underscore)
                } else {
                    Ok(TokenKind::Ident(s))
                }
            }
            b'0'..=b'9' => self.take_int(start),
            b'"' => self.take_string(start),
            b'@' => {
                self.bump();
                if !matches!(self.peek(), Some(b'a'..=b'z' | b'A'..=b'Z' | b'_')) {
                    return Err(Diagnostic::error(
                        Code::LexError,
                        Span::new(start, self.pos as u32),
                        "expected annotation name after '@'",
                    ));
                }
                Ok(TokenKind::Anno(self.take_ident()))
            }
            b'(' => self.single(TokenKind::LParen),
            b')' => self.single(TokenKind::RParen),
            b'{' => self.single(TokenKind::LBrace),
            b'}' => self.single(TokenKind::RBrace),
            b'[' => self.single(TokenKind::LBracket),
            b']' => self.single(TokenKind::RBracket),
            b'<' => self.single(TokenKind::Lt),
            b'>' => self.single(TokenKind::Gt),
            b',' => self.single(TokenKind::Comma),
            b';' => self.single(TokenKind::Semi),
            b':' => self.single(TokenKind::Colon),
            b'.' => self.single(TokenKind::Dot),
            b'+' => self.single(TokenKind::Plus),
            b'*' => self.single(TokenKind::Star),
            b'-' => {
                self.bump();
                if self.eat(b'>') {
                    Ok(TokenKind::Arrow)
                } else {
                    Ok(TokenKind::Minus)
                }
            }
            b'=' => {
                self.bump();
                if self.eat(b'=') {
                    Ok(TokenKind::EqEq)
                } else if self.eat(b'>') {
                    Ok(TokenKind::FatArrow)
                } else {
                    Ok(TokenKind::Assign)
                }
            }
            b'!' => {
                self.bump();
                if self.eat(b'=') {
                    Ok(TokenKind::NotEq)
                } else {
                    Ok(TokenKind::Bang)
                }
            }
            b'&' => {
                self.bump();
                if self.eat(b'&') {
                    Ok(TokenKind::AndAnd)
                } else {
                    Err(self.illegal(start, "'&' is not a token; did you mean '&&'?"))
                }
            }
            b'|' => {
                self.bump();
                if self.eat(b'|') {
                    Ok(TokenKind::OrOr)
                } else {
                    Err(self.illegal(start, "'|' is not a token; did you mean '||'?"))
                }
            }
            other => {
                self.bump();
                Err(self.illegal(start, format!("illegal character '{}'", other as char)))
            }
        }
    }

    fn illegal(&self, start: u32, msg: impl Into<String>) -> Diagnostic {
        Diagnostic::error(Code::LexError, Span::new(start, self.pos as u32), msg)
    }

    fn single(&mut self, kind: TokenKind) -> Result<TokenKind, Diagnostic> {
        self.bump();
        Ok(kind)
    }

    fn take_ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(b'a'..=b'z' | b'A'..=b'Z' | b'0'..=b'9' | b'_')) {
            self.bump();
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn take_int(&mut self, start: u32) -> Result<TokenKind, Diagnostic> {
        let begin = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.bump();
        }
        let text = std::str::from_utf8(&self.src[begin..self.pos]).unwrap();
        text.parse::<i64>().map(TokenKind::Int).map_err(|_| {
            Diagnostic::error(
                Code::LexError,
                Span::new(start, self.pos as u32),
                format!("integer literal '{text}' out of range"),
            )
        })
    }

    fn take_string(&mut self, start: u32) -> Result<TokenKind, Diagnostic> {
        self.bump(); // opening quote
        let mut value = String::new();
        loop {
            match self.peek() {
                None | Some(b'\n') => {
                    return Err(Diagnostic::error(
                        Code::LexError,
                        Span::new(start, self.pos as u32),
                        "unterminated string literal",
                    ));
                }
                Some(b'"') => {
                    self.bump();
                    return Ok(TokenKind::Str(value));
                }
                Some(b'\\') => {
                    self.bump();
                    match self.peek() {
                        Some(b'"') => value.push('"'),
                        Some(b'\\') => value.push('\\'),
                        Some(b'n') => value.push('\n'),
                        Some(b't') => value.push('\t'),
                        other => {
                            return Err(Diagnostic::error(
                                Code::LexError,
                                Span::new(start, self.pos as u32 + 1),
                                match other {
                                    Some(c) => format!("unknown escape '\\{}'", c as char),
                                    None => "unterminated string literal".to_string(),
                                },
                            ));
                        }
                    }
                    self.bump();
                }
                Some(_) => {
                    // Multi-byte UTF-8 sequences pass through unchanged.
                    let ch_start = self.pos;
                    self.bump();
                    while self.pos < self.src.len() && (self.src[self.pos] & 0xC0) == 0x80 {
                        self.bump();
                    }
                    value.push_str(&String::from_utf8_lossy(&self.src[ch_start..self.pos]));
                }
            }
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(b' ' | b'\t' | b'\r' | b'\n') => self.bump(),
                Some(b'/') if self.src.get(self.pos + 1) == Some(&b'/') => {
                    while !matches!(self.peek(), None | Some(b'\n')) {
                        self.bump();
                    }
                }
                _ => return,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src)
            .unwrap()
            .into_iter()
            .map(|t| t.kind)
            .filter(|k| *k != TokenKind::Eof)
            .collect()
    }

    #[test]
    fn keyword_table_lookup() {
        assert_eq!(
            kinds("x enforce P"),
            vec![
                TokenKind::Ident("x".into()),
                TokenKind::Kw(Keyword::Enforce),
                TokenKind::Ident("P".into()),
            ]
        );
    }

    #[test]
    fn policy_arg_annotation() {
        assert_eq!(
            kinds("@policyArg id: Int"),
            vec![
                TokenKind::Anno("policyArg".into()),
                TokenKind::Ident("id".into()),
                TokenKind::Colon,
                TokenKind::Ident("Int".into()),
            ]
        );
    }

    #[test]
    fn unterminated_string_is_lex_error() {
        let err = tokenize("\"unclosed").unwrap_err();
        assert_eq!(err.code, Code::LexError);
        assert!(err.message.contains("unterminated"));
    }

    #[test]
    fn operators_and_arrows() {
        assert_eq!(
            kinds("-> => == != && || ! - ="),
            vec![
                TokenKind::Arrow,
                TokenKind::FatArrow,
                TokenKind::EqEq,
                TokenKind::NotEq,
                TokenKind::AndAnd,
                TokenKind::OrOr,
                TokenKind::Bang,
                TokenKind::Minus,
                TokenKind::Assign,
            ]
        );
    }

    #[test]
    fn comments_are_trivia() {
        assert_eq!(kinds("1 // two\n3"), vec![TokenKind::Int(1), TokenKind::Int(3)]);
    }

    #[test]
    fn string_escapes() {
        assert_eq!(
            kinds(r#""a\"b\n""#),
            vec![TokenKind::Str("a\"b\n".into())]
        );
    }

    #[test]
    fn spans_cover_source() {
        let toks = tokenize("let xy = 12").unwrap();
        assert_eq!(toks[1].span, Span::new(4, 6));
        assert_eq!(toks[3].span, Span::new(9, 11));
    }

    #[test]
    fn illegal_character() {
        let err = tokenize("a # b").unwrap_err();
        assert_eq!(err.code, Code::LexError);
    }
}
