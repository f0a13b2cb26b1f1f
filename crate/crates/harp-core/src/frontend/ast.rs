//! Syntax tree produced by the parser.
//!
//! Purely syntactic: names are plain strings here, bound to symbols during
//! resolution. Every expression carries a [`NodeId`] so later stages can hang
//! side tables (types, symbols) off the tree without rebuilding it.

use crate::diag::Span;

/// Dense id assigned to every expression at parse time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

#[derive(Debug, Clone, PartialEq)]
pub struct Program {
    pub decls: Vec<Decl>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decl {
    Scopes(ScopesDecl),
    Record(RecordDecl),
    Policy(PolicyDecl),
    Fn(FnDecl),
}

impl Decl {
    pub fn span(&self) -> Span {
        match self {
            Decl::Scopes(d) => d.span,
            Decl::Record(d) => d.span,
            Decl::Policy(d) => d.span,
            Decl::Fn(d) => d.span,
        }
    }
}

/// `scopes Owner, Admin;` — declares the scope-tag set.
#[derive(Debug, Clone, PartialEq)]
pub struct ScopesDecl {
    pub tags: Vec<Ident>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ident {
    pub text: String,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecordDecl {
    pub name: Ident,
    /// Policy attached to the record header: wraps the whole constructed value.
    pub head_enforce: Option<EnforceClause>,
    pub fields: Vec<FieldDecl>,
    pub methods: Vec<FnDecl>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldDecl {
    pub is_private: bool,
    pub is_var: bool,
    pub name: Ident,
    pub ty: TypeExpr,
    pub enforce: Option<EnforceClause>,
    pub span: Span,
}

/// `enforce PolicyName(staticArgs...)` on a record header or field.
#[derive(Debug, Clone, PartialEq)]
pub struct EnforceClause {
    pub policy: Ident,
    pub static_args: Vec<Expr>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolicyDecl {
    pub name: Ident,
    /// The protected datum; first parameter of the declaration.
    pub data_param: Param,
    pub static_params: Vec<Param>,
    pub compose: ComposeStrategy,
    /// Contextual arguments resolved by type from the dynamic environment.
    pub requires: Vec<Param>,
    /// `case Tag => expr;` arms matched against the top of the scope stack.
    pub scope_cases: Vec<ScopeCase>,
    pub check_body: Expr,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScopeCase {
    pub tag: Ident,
    pub body: Expr,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ComposeStrategy {
    Dominant,
    Submissive,
    And,
    Or,
    /// `compose { expr }` — evaluated with `member` and `parent` bound to the
    /// two check outcomes.
    Custom(Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FnKind {
    Plain,
    Extern,
    Boundary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FnDecl {
    pub kind: FnKind,
    pub name: Ident,
    pub params: Vec<Param>,
    /// `None` means the function returns Unit.
    pub ret: Option<TypeExpr>,
    /// Absent for extern and boundary declarations.
    pub body: Option<Expr>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Param {
    /// Marked `@policyArg`: the bound value is captured into the dynamic
    /// policy-argument environment for the extent of the call.
    pub policy_arg: bool,
    pub name: Ident,
    pub ty: TypeExpr,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TypeExpr {
    Int(Span),
    String(Span),
    Bool(Span),
    List(Box<TypeExpr>, Span),
    Named(Ident),
}

impl TypeExpr {
    pub fn span(&self) -> Span {
        match self {
            TypeExpr::Int(s) | TypeExpr::String(s) | TypeExpr::Bool(s) | TypeExpr::List(_, s) => *s,
            TypeExpr::Named(i) => i.span,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub id: NodeId,
    pub span: Span,
    pub kind: ExprKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOpKind {
    Add,
    Sub,
    Mul,
    Eq,
    NotEq,
    And,
    Or,
    /// `list.contains(x)` — parsed as a binary operator with the receiver on
    /// the left.
    Contains,
}

impl BinOpKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BinOpKind::Add => "+",
            BinOpKind::Sub => "-",
            BinOpKind::Mul => "*",
            BinOpKind::Eq => "==",
            BinOpKind::NotEq => "!=",
            BinOpKind::And => "&&",
            BinOpKind::Or => "||",
            BinOpKind::Contains => "contains",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    IntLit(i64),
    StringLit(String),
    BoolLit(bool),
    /// Internal value of statement position; not writable in source. A block
    /// whose last statement ends with `;` evaluates to this.
    UnitLit,
    ListLit(Vec<Expr>),
    Var(String),
    Let {
        name: String,
        value: Box<Expr>,
        body: Box<Expr>,
    },
    If {
        cond: Box<Expr>,
        then_branch: Box<Expr>,
        else_branch: Box<Expr>,
    },
    BinOp {
        op: BinOpKind,
        lhs: Box<Expr>,
        rhs: Box<Expr>,
    },
    FieldAccess {
        recv: Box<Expr>,
        field: Ident,
    },
    MethodCall {
        recv: Box<Expr>,
        method: Ident,
        args: Vec<Expr>,
    },
    FnCall {
        callee: Ident,
        args: Vec<Expr>,
    },
    /// Produced by resolution when a call names a record; the parser always
    /// emits `FnCall`.
    Construct {
        record: Ident,
        args: Vec<Expr>,
    },
    ScopeBlock {
        tag: Ident,
        body: Box<Expr>,
    },
    UnsafeUnwrap {
        target: Box<Expr>,
        reason: String,
    },
}

impl Expr {
    /// Walk this expression and all children, pre-order.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match &self.kind {
            ExprKind::IntLit(_)
            | ExprKind::StringLit(_)
            | ExprKind::BoolLit(_)
            | ExprKind::UnitLit
            | ExprKind::Var(_) => {}
            ExprKind::ListLit(items) => {
                for e in items {
                    e.walk(f);
                }
            }
            ExprKind::Let { value, body, .. } => {
                value.walk(f);
                body.walk(f);
            }
            ExprKind::If {
                cond,
                then_branch,
                else_branch,
            } => {
                cond.walk(f);
                then_branch.walk(f);
                else_branch.walk(f);
            }
            ExprKind::BinOp { lhs, rhs, .. } => {
                lhs.walk(f);
                rhs.walk(f);
            }
            ExprKind::FieldAccess { recv, .. } => recv.walk(f),
            ExprKind::MethodCall { recv, args, .. } => {
                recv.walk(f);
                for a in args {
                    a.walk(f);
                }
            }
            ExprKind::FnCall { args, .. } | ExprKind::Construct { args, .. } => {
                for a in args {
                    a.walk(f);
                }
            }
            ExprKind::ScopeBlock { body, .. } => body.walk(f),
            ExprKind::UnsafeUnwrap { target, .. } => target.walk(f),
        }
    }
}

/// Erase spans and node ids, for α-equivalence comparisons in tests and the
/// parse determinism property.
pub fn strip_positions(program: &mut Program) {
    for decl in &mut program.decls {
        strip_decl(decl);
    }
}

fn strip_decl(decl: &mut Decl) {
    match decl {
        Decl::Scopes(d) => {
            d.span = Span::default();
            for t in &mut d.tags {
                t.span = Span::default();
            }
        }
        Decl::Record(d) => {
            d.span = Span::default();
            d.name.span = Span::default();
            if let Some(e) = &mut d.head_enforce {
                strip_enforce(e);
            }
            for f in &mut d.fields {
                f.span = Span::default();
                f.name.span = Span::default();
                strip_type(&mut f.ty);
                if let Some(e) = &mut f.enforce {
                    strip_enforce(e);
                }
            }
            for m in &mut d.methods {
                strip_fn(m);
            }
        }
        Decl::Policy(d) => {
            d.span = Span::default();
            d.name.span = Span::default();
            strip_param(&mut d.data_param);
            for p in &mut d.static_params {
                strip_param(p);
            }
            if let ComposeStrategy::Custom(e) = &mut d.compose {
                strip_expr(e);
            }
            for p in &mut d.requires {
                strip_param(p);
            }
            for c in &mut d.scope_cases {
                c.tag.span = Span::default();
                strip_expr(&mut c.body);
            }
            strip_expr(&mut d.check_body);
        }
        Decl::Fn(d) => strip_fn(d),
    }
}

fn strip_fn(d: &mut FnDecl) {
    d.span = Span::default();
    d.name.span = Span::default();
    for p in &mut d.params {
        strip_param(p);
    }
    if let Some(t) = &mut d.ret {
        strip_type(t);
    }
    if let Some(b) = &mut d.body {
        strip_expr(b);
    }
}

fn strip_param(p: &mut Param) {
    p.span = Span::default();
    p.name.span = Span::default();
    strip_type(&mut p.ty);
}

fn strip_type(t: &mut TypeExpr) {
    match t {
        TypeExpr::Int(s) | TypeExpr::String(s) | TypeExpr::Bool(s) => *s = Span::default(),
        TypeExpr::List(inner, s) => {
            *s = Span::default();
            strip_type(inner);
        }
        TypeExpr::Named(i) => i.span = Span::default(),
    }
}

fn strip_expr(e: &mut Expr) {
    e.id = NodeId(0);
    e.span = Span::default();
    match &mut e.kind {
        ExprKind::IntLit(_)
        | ExprKind::StringLit(_)
        | ExprKind::BoolLit(_)
        | ExprKind::UnitLit
        | ExprKind::Var(_) => {}
        ExprKind::ListLit(items) => items.iter_mut().for_each(strip_expr),
        ExprKind::Let { value, body, .. } => {
            strip_expr(value);
            strip_expr(body);
        }
        ExprKind::If {
            cond,
            then_branch,
            else_branch,
        } => {
            strip_expr(cond);
            strip_expr(then_branch);
            strip_expr(else_branch);
        }
        ExprKind::BinOp { lhs, rhs, .. } => {
            strip_expr(lhs);
            strip_expr(rhs);
        }
        ExprKind::FieldAccess { recv, field } => {
            field.span = Span::default();
            strip_expr(recv);
        }
        ExprKind::MethodCall { recv, method, args } => {
            method.span = Span::default();
            strip_expr(recv);
            args.iter_mut().for_each(strip_expr);
        }
        ExprKind::FnCall { callee, args } => {
            callee.span = Span::default();
            args.iter_mut().for_each(strip_expr);
        }
        ExprKind::Construct { record, args } => {
            record.span = Span::default();
            args.iter_mut().for_each(strip_expr);
        }
        ExprKind::ScopeBlock { tag, body } => {
            tag.span = Span::default();
            strip_expr(body);
        }
        ExprKind::UnsafeUnwrap { target, .. } => strip_expr(target),
    }
}
