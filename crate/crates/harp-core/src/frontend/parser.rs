//! Recursive descent parser.
//!
//! The grammar is LL(1) apart from the one-token lookahead used to tell
//! statements from trailing expressions inside blocks. `enforce` is a postfix
//! type modifier, so a field reads left to right as
//! `name: Type enforce Policy(args)`.
//!
//! Blocks desugar at parse time: `{ s1; s2; tail }` becomes nested `Let`
//! bindings (statement position binds `_`), and `!e` becomes `e == false`.
//! On a declaration-level error the parser records the diagnostic and
//! synchronizes to the next top-level keyword, so several errors can be
//! reported in one pass.

use crate::diag::{Code, Diagnostic, Diagnostics, Span};

use super::ast::*;
use super::lexer::tokenize;
use super::token::{Keyword, Token, TokenKind};

pub fn parse(source: &str) -> Result<Program, Vec<Diagnostic>> {
    let tokens = tokenize(source).map_err(|d| vec![d])?;
    Parser::new(tokens).run()
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    next_id: u32,
    errors: Diagnostics,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn new(tokens: Vec<Token>) -> Self {
        Parser {
            tokens,
            pos: 0,
            next_id: 1,
            errors: Diagnostics::new(),
        }
    }

    fn run(mut self) -> Result<Program, Vec<Diagnostic>> {
        let mut decls = Vec::new();
        while !self.at_eof() {
            match self.parse_decl() {
                Ok(d) => decls.push(d),
                Err(e) => {
                    self.errors.push(e);
                    self.synchronize();
                }
            }
        }
        if self.errors.has_errors() {
            Err(self.errors.into_items())
        } else {
            Ok(Program { decls })
        }
    }

    /// Skip forward to the next token that can begin a top-level declaration.
    fn synchronize(&mut self) {
        loop {
            match &self.peek().kind {
                TokenKind::Eof => return,
                TokenKind::Kw(
                    Keyword::Record
                    | Keyword::Policy
                    | Keyword::Fn
                    | Keyword::Extern
                    | Keyword::Boundary
                    | Keyword::Scopes,
                ) => return,
                _ => {
                    self.pos += 1;
                }
            }
        }
    }

    // ── declarations ────────────────────────────────────────────────

    fn parse_decl(&mut self) -> PResult<Decl> {
        match &self.peek().kind {
            TokenKind::Kw(Keyword::Scopes) => self.parse_scopes().map(Decl::Scopes),
            TokenKind::Kw(Keyword::Record) => self.parse_record().map(Decl::Record),
            TokenKind::Kw(Keyword::Policy) => self.parse_policy().map(Decl::Policy),
            TokenKind::Kw(Keyword::Fn) => self.parse_fn(FnKind::Plain).map(Decl::Fn),
            TokenKind::Kw(Keyword::Extern) => {
                self.bump();
                self.parse_fn(FnKind::Extern).map(Decl::Fn)
            }
            TokenKind::Kw(Keyword::Boundary) => {
                self.bump();
                self.parse_fn(FnKind::Boundary).map(Decl::Fn)
            }
            _ => Err(self.expected("a declaration")),
        }
    }

    fn parse_scopes(&mut self) -> PResult<ScopesDecl> {
        let start = self.expect_kw(Keyword::Scopes)?;
        let mut tags = vec![self.expect_ident()?];
        while self.eat(&TokenKind::Comma) {
            tags.push(self.expect_ident()?);
        }
        let end = self.expect(&TokenKind::Semi)?;
        Ok(ScopesDecl {
            tags,
            span: start.merge(end),
        })
    }

    fn parse_record(&mut self) -> PResult<RecordDecl> {
        let start = self.expect_kw(Keyword::Record)?;
        let name = self.expect_ident()?;
        let head_enforce = if self.at_kw(Keyword::Enforce) {
            Some(self.parse_enforce()?)
        } else {
            None
        };
        self.expect(&TokenKind::LBrace)?;

        let mut fields = Vec::new();
        let mut methods = Vec::new();
        loop {
            match &self.peek().kind {
                TokenKind::RBrace => break,
                TokenKind::Kw(Keyword::Fn) => {
                    methods.push(self.parse_fn(FnKind::Plain)?);
                }
                _ => {
                    fields.push(self.parse_field()?);
                    if !self.eat(&TokenKind::Comma)
                        && !matches!(
                            self.peek().kind,
                            TokenKind::RBrace | TokenKind::Kw(Keyword::Fn)
                        )
                    {
                        return Err(self.expected("',' between record fields"));
                    }
                }
            }
        }
        let end = self.expect(&TokenKind::RBrace)?;
        Ok(RecordDecl {
            name,
            head_enforce,
            fields,
            methods,
            span: start.merge(end),
        })
    }

    fn parse_field(&mut self) -> PResult<FieldDecl> {
        let start = self.peek().span;
        let is_private = self.eat_kw(Keyword::Private);
        let is_var = self.eat_kw(Keyword::Var);
        let name = self.expect_ident()?;
        self.expect(&TokenKind::Colon)?;
        let ty = self.parse_type()?;
        let enforce = if self.at_kw(Keyword::Enforce) {
            Some(self.parse_enforce()?)
        } else {
            None
        };
        let end = enforce
            .as_ref()
            .map(|e| e.span)
            .unwrap_or_else(|| ty.span());
        Ok(FieldDecl {
            is_private,
            is_var,
            name,
            ty,
            enforce,
            span: start.merge(end),
        })
    }

    fn parse_enforce(&mut self) -> PResult<EnforceClause> {
        let start = self.expect_kw(Keyword::Enforce)?;
        let policy = self.expect_ident()?;
        let mut static_args = Vec::new();
        let mut end = policy.span;
        if self.eat(&TokenKind::LParen) {
            if !matches!(self.peek().kind, TokenKind::RParen) {
                static_args.push(self.parse_expr()?);
                while self.eat(&TokenKind::Comma) {
                    static_args.push(self.parse_expr()?);
                }
            }
            end = self.expect(&TokenKind::RParen)?;
        }
        Ok(EnforceClause {
            policy,
            static_args,
            span: start.merge(end),
        })
    }

    fn parse_policy(&mut self) -> PResult<PolicyDecl> {
        let start = self.expect_kw(Keyword::Policy)?;
        let name = self.expect_ident()?;
        self.expect(&TokenKind::LParen)?;
        let data_param = self.parse_param(false)?;
        let mut static_params = Vec::new();
        while self.eat(&TokenKind::Comma) {
            static_params.push(self.parse_param(false)?);
        }
        self.expect(&TokenKind::RParen)?;
        self.expect(&TokenKind::LBrace)?;

        let compose = if self.at_kw(Keyword::Compose) {
            self.bump();
            if matches!(self.peek().kind, TokenKind::LBrace) {
                self.expect(&TokenKind::LBrace)?;
                let body = self.parse_block_contents()?;
                self.expect(&TokenKind::RBrace)?;
                ComposeStrategy::Custom(Box::new(body))
            } else {
                let id = self.expect_ident()?;
                let strategy = match id.text.as_str() {
                    "Dominant" => ComposeStrategy::Dominant,
                    "Submissive" => ComposeStrategy::Submissive,
                    "And" => ComposeStrategy::And,
                    "Or" => ComposeStrategy::Or,
                    other => {
                        return Err(Diagnostic::error(
                            Code::ParseError,
                            id.span,
                            format!(
                                "unknown compose strategy '{other}'; expected Dominant, \
                                 Submissive, And, Or, or a custom block"
                            ),
                        ));
                    }
                };
                self.expect(&TokenKind::Semi)?;
                strategy
            }
        } else {
            // Composing through conjunction is the conservative default.
            ComposeStrategy::And
        };

        let mut requires = Vec::new();
        if self.at_kw(Keyword::Requires) {
            self.bump();
            requires.push(self.parse_param(false)?);
            while self.eat(&TokenKind::Comma) {
                requires.push(self.parse_param(false)?);
            }
            self.expect(&TokenKind::Semi)?;
        }

        self.expect_kw(Keyword::Check)?;
        self.expect(&TokenKind::LBrace)?;
        let mut scope_cases = Vec::new();
        while self.at_kw(Keyword::Case) {
            self.bump();
            let tag = self.expect_ident()?;
            self.expect(&TokenKind::FatArrow)?;
            let body = self.parse_expr()?;
            self.expect(&TokenKind::Semi)?;
            scope_cases.push(ScopeCase { tag, body });
        }
        let check_body = self.parse_block_contents()?;
        self.expect(&TokenKind::RBrace)?;
        let end = self.expect(&TokenKind::RBrace)?;

        Ok(PolicyDecl {
            name,
            data_param,
            static_params,
            compose,
            requires,
            scope_cases,
            check_body,
            span: start.merge(end),
        })
    }

    fn parse_fn(&mut self, kind: FnKind) -> PResult<FnDecl> {
        let start = self.expect_kw(Keyword::Fn)?;
        let name = self.expect_ident()?;
        self.expect(&TokenKind::LParen)?;
        let mut params = Vec::new();
        if !matches!(self.peek().kind, TokenKind::RParen) {
            params.push(self.parse_param(true)?);
            while self.eat(&TokenKind::Comma) {
                params.push(self.parse_param(true)?);
            }
        }
        self.expect(&TokenKind::RParen)?;
        let ret = if self.eat(&TokenKind::Arrow) {
            Some(self.parse_type()?)
        } else {
            None
        };
        let (body, end) = if kind == FnKind::Plain {
            let b = self.parse_block()?;
            let end = b.span;
            (Some(b), end)
        } else {
            (None, self.expect(&TokenKind::Semi)?)
        };
        Ok(FnDecl {
            kind,
            name,
            params,
            ret,
            body,
            span: start.merge(end),
        })
    }

    fn parse_param(&mut self, allow_anno: bool) -> PResult<Param> {
        let start = self.peek().span;
        let mut policy_arg = false;
        if let TokenKind::Anno(name) = &self.peek().kind {
            let name = name.clone();
            let span = self.peek().span;
            self.bump();
            if name != "policyArg" {
                return Err(Diagnostic::error(
                    Code::ParseError,
                    span,
                    format!("unknown annotation '@{name}'; expected '@policyArg'"),
                ));
            }
            if !allow_anno {
                return Err(Diagnostic::error(
                    Code::ParseError,
                    span,
                    "'@policyArg' is only allowed on function parameters",
                ));
            }
            policy_arg = true;
        }
        let name = self.expect_ident()?;
        self.expect(&TokenKind::Colon)?;
        let ty = self.parse_type()?;
        let end = ty.span();
        Ok(Param {
            policy_arg,
            name,
            ty,
            span: start.merge(end),
        })
    }

    fn parse_type(&mut self) -> PResult<TypeExpr> {
        let id = self.expect_ident()?;
        Ok(match id.text.as_str() {
            "Int" => TypeExpr::Int(id.span),
            "String" => TypeExpr::String(id.span),
            "Bool" => TypeExpr::Bool(id.span),
            "List" => {
                self.expect(&TokenKind::Lt)?;
                let inner = self.parse_type()?;
                let end = self.expect(&TokenKind::Gt)?;
                TypeExpr::List(Box::new(inner), id.span.merge(end))
            }
            _ => TypeExpr::Named(id),
        })
    }

    // ── blocks and statements ───────────────────────────────────────

    fn parse_block(&mut self) -> PResult<Expr> {
        let start = self.expect(&TokenKind::LBrace)?;
        let body = self.parse_block_contents()?;
        let end = self.expect(&TokenKind::RBrace)?;
        Ok(Expr {
            span: start.merge(end),
            ..body
        })
    }

    /// Statements followed by an optional trailing expression, desugared into
    /// nested `Let`s. Statement position binds `_`; an absent trailing
    /// expression yields Unit.
    fn parse_block_contents(&mut self) -> PResult<Expr> {
        enum Item {
            Binding(String, Expr, Span),
            Discard(Expr),
        }
        let mut items = Vec::new();
        let mut tail: Option<Expr> = None;
        let start = self.peek().span;
        while !matches!(self.peek().kind, TokenKind::RBrace | TokenKind::Eof) {
            if self.at_kw(Keyword::Let) {
                let let_start = self.expect_kw(Keyword::Let)?;
                let name = if self.eat(&TokenKind::Underscore) {
                    "_".to_string()
                } else {
                    self.expect_ident()?.text
                };
                self.expect(&TokenKind::Assign)?;
                let value = self.parse_expr()?;
                self.expect(&TokenKind::Semi)?;
                items.push(Item::Binding(name, value, let_start));
            } else {
                let e = self.parse_expr()?;
                if self.eat(&TokenKind::Semi) {
                    items.push(Item::Discard(e));
                } else {
                    tail = Some(e);
                    break;
                }
            }
        }
        let mut acc = tail.unwrap_or_else(|| Expr {
            id: self.fresh_id(),
            span: Span::new(self.peek().span.start, self.peek().span.start),
            kind: ExprKind::UnitLit,
        });
        for item in items.into_iter().rev() {
            let (name, value, sp) = match item {
                Item::Binding(n, v, sp) => (n, v, sp),
                Item::Discard(v) => {
                    let sp = v.span;
                    ("_".to_string(), v, sp)
                }
            };
            acc = Expr {
                id: self.fresh_id(),
                span: sp.merge(acc.span),
                kind: ExprKind::Let {
                    name,
                    value: Box::new(value),
                    body: Box::new(acc),
                },
            };
        }
        if acc.span == Span::default() {
            acc.span = start;
        }
        Ok(acc)
    }

    // ── expressions ─────────────────────────────────────────────────

    fn parse_expr(&mut self) -> PResult<Expr> {
        self.parse_or()
    }

    fn parse_or(&mut self) -> PResult<Expr> {
        let mut lhs = self.parse_and()?;
        while self.eat(&TokenKind::OrOr) {
            let rhs = self.parse_and()?;
            lhs = self.binop(BinOpKind::Or, lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> PResult<Expr> {
        let mut lhs = self.parse_equality()?;
        while self.eat(&TokenKind::AndAnd) {
            let rhs = self.parse_equality()?;
            lhs = self.binop(BinOpKind::And, lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_equality(&mut self) -> PResult<Expr> {
        let lhs = self.parse_additive()?;
        let op = match self.peek().kind {
            TokenKind::EqEq => BinOpKind::Eq,
            TokenKind::NotEq => BinOpKind::NotEq,
            _ => return Ok(lhs),
        };
        self.bump();
        let rhs = self.parse_additive()?;
        Ok(self.binop(op, lhs, rhs))
    }

    fn parse_additive(&mut self) -> PResult<Expr> {
        let mut lhs = self.parse_multiplicative()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Plus => BinOpKind::Add,
                TokenKind::Minus => BinOpKind::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.parse_multiplicative()?;
            lhs = self.binop(op, lhs, rhs);
        }
    }

    fn parse_multiplicative(&mut self) -> PResult<Expr> {
        let mut lhs = self.parse_unary()?;
        while self.eat(&TokenKind::Star) {
            let rhs = self.parse_unary()?;
            lhs = self.binop(BinOpKind::Mul, lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> PResult<Expr> {
        if matches!(self.peek().kind, TokenKind::Bang) {
            let start = self.peek().span;
            self.bump();
            let operand = self.parse_unary()?;
            // `!e` desugars to `e == false`.
            let span = start.merge(operand.span);
            let f = Expr {
                id: self.fresh_id(),
                span: start,
                kind: ExprKind::BoolLit(false),
            };
            return Ok(Expr {
                id: self.fresh_id(),
                span,
                kind: ExprKind::BinOp {
                    op: BinOpKind::Eq,
                    lhs: Box::new(operand),
                    rhs: Box::new(f),
                },
            });
        }
        self.parse_postfix()
    }

    fn parse_postfix(&mut self) -> PResult<Expr> {
        let mut expr = self.parse_primary()?;
        while self.eat(&TokenKind::Dot) {
            let name = self.expect_ident()?;
            if matches!(self.peek().kind, TokenKind::LParen) {
                self.expect(&TokenKind::LParen)?;
                let mut args = Vec::new();
                if !matches!(self.peek().kind, TokenKind::RParen) {
                    args.push(self.parse_expr()?);
                    while self.eat(&TokenKind::Comma) {
                        args.push(self.parse_expr()?);
                    }
                }
                let end = self.expect(&TokenKind::RParen)?;
                let span = expr.span.merge(end);
                expr = match name.text.as_str() {
                    "contains" => {
                        if args.len() != 1 {
                            return Err(Diagnostic::error(
                                Code::ParseError,
                                name.span,
                                "'contains' takes exactly one argument",
                            ));
                        }
                        let rhs = args.pop().unwrap();
                        Expr {
                            id: self.fresh_id(),
                            span,
                            kind: ExprKind::BinOp {
                                op: BinOpKind::Contains,
                                lhs: Box::new(expr),
                                rhs: Box::new(rhs),
                            },
                        }
                    }
                    "unsafeUnwrap" => {
                        let reason = match args.as_slice() {
                            [Expr {
                                kind: ExprKind::StringLit(s),
                                ..
                            }] if !s.is_empty() => s.clone(),
                            _ => {
                                return Err(Diagnostic::error(
                                    Code::ParseError,
                                    name.span,
                                    "'unsafeUnwrap' takes a single non-empty string literal \
                                     reason",
                                ));
                            }
                        };
                        Expr {
                            id: self.fresh_id(),
                            span,
                            kind: ExprKind::UnsafeUnwrap {
                                target: Box::new(expr),
                                reason,
                            },
                        }
                    }
                    _ => Expr {
                        id: self.fresh_id(),
                        span,
                        kind: ExprKind::MethodCall {
                            recv: Box::new(expr),
                            method: name,
                            args,
                        },
                    },
                };
            } else {
                let span = expr.span.merge(name.span);
                expr = Expr {
                    id: self.fresh_id(),
                    span,
                    kind: ExprKind::FieldAccess {
                        recv: Box::new(expr),
                        field: name,
                    },
                };
            }
        }
        Ok(expr)
    }

    fn parse_primary(&mut self) -> PResult<Expr> {
        let tok = self.peek().clone();
        match tok.kind {
            TokenKind::Int(n) => {
                self.bump();
                Ok(self.leaf(tok.span, ExprKind::IntLit(n)))
            }
            TokenKind::Str(s) => {
                self.bump();
                Ok(self.leaf(tok.span, ExprKind::StringLit(s)))
            }
            TokenKind::Kw(Keyword::True) => {
                self.bump();
                Ok(self.leaf(tok.span, ExprKind::BoolLit(true)))
            }
            TokenKind::Kw(Keyword::False) => {
                self.bump();
                Ok(self.leaf(tok.span, ExprKind::BoolLit(false)))
            }
            TokenKind::LBracket => {
                self.bump();
                let mut items = Vec::new();
                if !matches!(self.peek().kind, TokenKind::RBracket) {
                    items.push(self.parse_expr()?);
                    while self.eat(&TokenKind::Comma) {
                        items.push(self.parse_expr()?);
                    }
                }
                let end = self.expect(&TokenKind::RBracket)?;
                Ok(self.leaf(tok.span.merge(end), ExprKind::ListLit(items)))
            }
            TokenKind::Kw(Keyword::If) => {
                self.bump();
                let cond = self.parse_expr()?;
                let then_branch = self.parse_block()?;
                self.expect_kw(Keyword::Else)?;
                let else_branch = self.parse_block()?;
                let span = tok.span.merge(else_branch.span);
                Ok(self.leaf(
                    span,
                    ExprKind::If {
                        cond: Box::new(cond),
                        then_branch: Box::new(then_branch),
                        else_branch: Box::new(else_branch),
                    },
                ))
            }
            TokenKind::Kw(Keyword::Scope) => {
                self.bump();
                self.expect(&TokenKind::LParen)?;
                let tag = self.expect_ident()?;
                self.expect(&TokenKind::RParen)?;
                let body = self.parse_block()?;
                let span = tok.span.merge(body.span);
                Ok(self.leaf(
                    span,
                    ExprKind::ScopeBlock {
                        tag,
                        body: Box::new(body),
                    },
                ))
            }
            TokenKind::Ident(_) => {
                let name = self.expect_ident()?;
                if matches!(self.peek().kind, TokenKind::LParen) {
                    self.bump();
                    let mut args = Vec::new();
                    if !matches!(self.peek().kind, TokenKind::RParen) {
                        args.push(self.parse_expr()?);
                        while self.eat(&TokenKind::Comma) {
                            args.push(self.parse_expr()?);
                        }
                    }
                    let end = self.expect(&TokenKind::RParen)?;
                    let span = name.span.merge(end);
                    Ok(self.leaf(span, ExprKind::FnCall { callee: name, args }))
                } else {
                    let span = name.span;
                    Ok(self.leaf(span, ExprKind::Var(name.text)))
                }
            }
            TokenKind::LParen => {
                self.bump();
                let inner = self.parse_expr()?;
                self.expect(&TokenKind::RParen)?;
                Ok(inner)
            }
            TokenKind::LBrace => self.parse_block(),
            _ => Err(self.expected("an expression")),
        }
    }

    fn binop(&mut self, op: BinOpKind, lhs: Expr, rhs: Expr) -> Expr {
        let span = lhs.span.merge(rhs.span);
        Expr {
            id: self.fresh_id(),
            span,
            kind: ExprKind::BinOp {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
            },
        }
    }

    fn leaf(&mut self, span: Span, kind: ExprKind) -> Expr {
        Expr {
            id: self.fresh_id(),
            span,
            kind,
        }
    }

    fn fresh_id(&mut self) -> NodeId {
        let id = NodeId(self.next_id);
        self.next_id += 1;
        id
    }

    // ── token helpers ───────────────────────────────────────────────

    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn at_eof(&self) -> bool {
        matches!(self.peek().kind, TokenKind::Eof)
    }

    fn at_kw(&self, kw: Keyword) -> bool {
        matches!(&self.peek().kind, TokenKind::Kw(k) if *k == kw)
    }

    fn bump(&mut self) {
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if &self.peek().kind == kind {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_kw(&mut self, kw: Keyword) -> bool {
        if self.at_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: &TokenKind) -> PResult<Span> {
        if &self.peek().kind == kind {
            let span = self.peek().span;
            self.bump();
            Ok(span)
        } else {
            Err(self.expected(&format!("{kind}")))
        }
    }

    fn expect_kw(&mut self, kw: Keyword) -> PResult<Span> {
        self.expect(&TokenKind::Kw(kw))
    }

    fn expect_ident(&mut self) -> PResult<Ident> {
        match &self.peek().kind {
            TokenKind::Ident(s) => {
                let id = Ident {
                    text: s.clone(),
                    span: self.peek().span,
                };
                self.bump();
                Ok(id)
            }
            _ => Err(self.expected("an identifier")),
        }
    }

    fn expected(&self, what: &str) -> Diagnostic {
        let tok = self.peek();
        Diagnostic::error(
            Code::ParseError,
            tok.span,
            format!("expected {what}, found {}", tok.kind),
        )
    }
}
