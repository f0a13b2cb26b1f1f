//! Source printer. `parse(print(parse(s)))` yields an AST α-equivalent to
//! `parse(s)`; parenthesization is conservative rather than minimal.

use super::ast::*;

pub fn print_program(program: &Program) -> String {
    let mut p = Printer::default();
    for (i, decl) in program.decls.iter().enumerate() {
        if i > 0 {
            p.out.push('\n');
        }
        p.decl(decl);
    }
    p.out
}

pub fn print_expr(expr: &Expr) -> String {
    let mut p = Printer::default();
    p.expr(expr);
    p.out
}

/// Escape a string the way the lexer will unescape it.
pub fn escape_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[derive(Default)]
struct Printer {
    out: String,
    indent: usize,
}

impl Printer {
    fn line(&mut self, s: &str) {
        for _ in 0..self.indent {
            self.out.push_str("  ");
        }
        self.out.push_str(s);
        self.out.push('\n');
    }

    fn decl(&mut self, decl: &Decl) {
        match decl {
            Decl::Scopes(d) => {
                let tags: Vec<&str> = d.tags.iter().map(|t| t.text.as_str()).collect();
                self.line(&format!("scopes {};", tags.join(", ")));
            }
            Decl::Record(d) => self.record(d),
            Decl::Policy(d) => self.policy(d),
            Decl::Fn(d) => self.fn_decl(d),
        }
    }

    fn record(&mut self, d: &RecordDecl) {
        let mut head = format!("record {}", d.name.text);
        if let Some(e) = &d.head_enforce {
            head.push(' ');
            head.push_str(&self.enforce(e));
        }
        head.push_str(" {");
        self.line(&head);
        self.indent += 1;
        for (i, f) in d.fields.iter().enumerate() {
            let mut line = String::new();
            if f.is_private {
                line.push_str("private ");
            }
            if f.is_var {
                line.push_str("var ");
            }
            line.push_str(&format!("{}: {}", f.name.text, type_str(&f.ty)));
            if let Some(e) = &f.enforce {
                line.push(' ');
                line.push_str(&self.enforce(e));
            }
            if i + 1 < d.fields.len() {
                line.push(',');
            }
            self.line(&line);
        }
        for m in &d.methods {
            self.fn_decl(m);
        }
        self.indent -= 1;
        self.line("}");
    }

    fn enforce(&mut self, e: &EnforceClause) -> String {
        let mut s = format!("enforce {}", e.policy.text);
        if !e.static_args.is_empty() {
            let args: Vec<String> = e.static_args.iter().map(|a| self.expr_str(a)).collect();
            s.push_str(&format!("({})", args.join(", ")));
        }
        s
    }

    fn policy(&mut self, d: &PolicyDecl) {
        let mut params = vec![param_str(&d.data_param)];
        params.extend(d.static_params.iter().map(param_str));
        self.line(&format!("policy {}({}) {{", d.name.text, params.join(", ")));
        self.indent += 1;
        match &d.compose {
            ComposeStrategy::Dominant => self.line("compose Dominant;"),
            ComposeStrategy::Submissive => self.line("compose Submissive;"),
            ComposeStrategy::And => self.line("compose And;"),
            ComposeStrategy::Or => self.line("compose Or;"),
            ComposeStrategy::Custom(body) => {
                self.line("compose {");
                self.indent += 1;
                self.block_contents(body);
                self.indent -= 1;
                self.line("}");
            }
        }
        if !d.requires.is_empty() {
            let args: Vec<String> = d.requires.iter().map(param_str).collect();
            self.line(&format!("requires {};", args.join(", ")));
        }
        self.line("check {");
        self.indent += 1;
        for case in &d.scope_cases {
            let body = self.expr_str(&case.body);
            self.line(&format!("case {} => {};", case.tag.text, body));
        }
        self.block_contents(&d.check_body);
        self.indent -= 1;
        self.line("}");
        self.indent -= 1;
        self.line("}");
    }

    fn fn_decl(&mut self, d: &FnDecl) {
        let kw = match d.kind {
            FnKind::Plain => "fn",
            FnKind::Extern => "extern fn",
            FnKind::Boundary => "boundary fn",
        };
        let params: Vec<String> = d.params.iter().map(param_str).collect();
        let mut head = format!("{kw} {}({})", d.name.text, params.join(", "));
        if let Some(t) = &d.ret {
            head.push_str(&format!(" -> {}", type_str(t)));
        }
        match &d.body {
            Some(body) => {
                head.push_str(" {");
                self.line(&head);
                self.indent += 1;
                self.block_contents(body);
                self.indent -= 1;
                self.line("}");
            }
            None => {
                head.push(';');
                self.line(&head);
            }
        }
    }

    /// Print a desugared block body back as statements plus trailing
    /// expression. A Unit tail disappears; everything it re-sugars reparses to
    /// the same tree.
    fn block_contents(&mut self, body: &Expr) {
        let mut cur = body;
        loop {
            match &cur.kind {
                ExprKind::Let { name, value, body } => {
                    let v = self.expr_str(value);
                    if name == "_" {
                        self.line(&format!("{v};"));
                    } else {
                        self.line(&format!("let {name} = {v};"));
                    }
                    cur = body;
                }
                ExprKind::UnitLit => return,
                _ => {
                    let s = self.expr_str(cur);
                    self.line(&s);
                    return;
                }
            }
        }
    }

    fn expr(&mut self, e: &Expr) {
        let s = self.expr_str(e);
        self.out.push_str(&s);
    }

    fn expr_str(&mut self, e: &Expr) -> String {
        match &e.kind {
            ExprKind::IntLit(n) => n.to_string(),
            ExprKind::StringLit(s) => escape_str(s),
            ExprKind::BoolLit(b) => b.to_string(),
            ExprKind::UnitLit => "{ }".to_string(),
            ExprKind::ListLit(items) => {
                let parts: Vec<String> = items.iter().map(|i| self.expr_str(i)).collect();
                format!("[{}]", parts.join(", "))
            }
            ExprKind::Var(name) => name.clone(),
            ExprKind::Let { .. } => {
                // An inline let chain prints as a braced block.
                let mut inner = Printer {
                    out: String::new(),
                    indent: self.indent + 1,
                };
                inner.block_contents(e);
                let mut s = String::from("{\n");
                s.push_str(&inner.out);
                for _ in 0..self.indent {
                    s.push_str("  ");
                }
                s.push('}');
                s
            }
            ExprKind::If {
                cond,
                then_branch,
                else_branch,
            } => {
                let c = self.expr_str(cond);
                let t = self.braced(then_branch);
                let f = self.braced(else_branch);
                format!("if {c} {t} else {f}")
            }
            ExprKind::BinOp { op, lhs, rhs } => {
                if *op == BinOpKind::Contains {
                    let l = self.postfix_operand(lhs);
                    let r = self.expr_str(rhs);
                    format!("{l}.contains({r})")
                } else {
                    let l = self.operand(lhs);
                    let r = self.operand(rhs);
                    format!("{l} {} {r}", op.as_str())
                }
            }
            ExprKind::FieldAccess { recv, field } => {
                format!("{}.{}", self.postfix_operand(recv), field.text)
            }
            ExprKind::MethodCall { recv, method, args } => {
                let r = self.postfix_operand(recv);
                let parts: Vec<String> = args.iter().map(|a| self.expr_str(a)).collect();
                format!("{r}.{}({})", method.text, parts.join(", "))
            }
            ExprKind::FnCall { callee, args } => {
                let parts: Vec<String> = args.iter().map(|a| self.expr_str(a)).collect();
                format!("{}({})", callee.text, parts.join(", "))
            }
            ExprKind::Construct { record, args } => {
                let parts: Vec<String> = args.iter().map(|a| self.expr_str(a)).collect();
                format!("{}({})", record.text, parts.join(", "))
            }
            ExprKind::ScopeBlock { tag, body } => {
                format!("scope({}) {}", tag.text, self.braced(body))
            }
            ExprKind::UnsafeUnwrap { target, reason } => {
                format!(
                    "{}.unsafeUnwrap({})",
                    self.postfix_operand(target),
                    escape_str(reason)
                )
            }
        }
    }

    /// Print an expression wrapped in braces (if/else branches, scope bodies).
    fn braced(&mut self, e: &Expr) -> String {
        match &e.kind {
            ExprKind::Let { .. } | ExprKind::UnitLit => {
                let mut inner = Printer {
                    out: String::new(),
                    indent: self.indent + 1,
                };
                inner.block_contents(e);
                let mut s = String::from("{\n");
                s.push_str(&inner.out);
                for _ in 0..self.indent {
                    s.push_str("  ");
                }
                s.push('}');
                s
            }
            _ => format!("{{ {} }}", self.expr_str(e)),
        }
    }

    /// Operand of a binary operator: parenthesize nested operators so the
    /// reparse is structure-preserving regardless of precedence.
    fn operand(&mut self, e: &Expr) -> String {
        match &e.kind {
            ExprKind::BinOp { op, .. } if *op != BinOpKind::Contains => {
                format!("({})", self.expr_str(e))
            }
            ExprKind::Let { .. } | ExprKind::If { .. } => format!("({})", self.expr_str(e)),
            _ => self.expr_str(e),
        }
    }

    /// Receiver of `.field`, `.method(...)`, `.contains(...)`, `.unsafeUnwrap`.
    fn postfix_operand(&mut self, e: &Expr) -> String {
        match &e.kind {
            ExprKind::IntLit(_)
            | ExprKind::StringLit(_)
            | ExprKind::BoolLit(_)
            | ExprKind::ListLit(_)
            | ExprKind::Var(_)
            | ExprKind::FieldAccess { .. }
            | ExprKind::MethodCall { .. }
            | ExprKind::FnCall { .. }
            | ExprKind::Construct { .. }
            | ExprKind::UnsafeUnwrap { .. } => self.expr_str(e),
            _ => format!("({})", self.expr_str(e)),
        }
    }
}

fn param_str(p: &Param) -> String {
    let anno = if p.policy_arg { "@policyArg " } else { "" };
    format!("{anno}{}: {}", p.name.text, type_str(&p.ty))
}

fn type_str(t: &TypeExpr) -> String {
    match t {
        TypeExpr::Int(_) => "Int".to_string(),
        TypeExpr::String(_) => "String".to_string(),
        TypeExpr::Bool(_) => "Bool".to_string(),
        TypeExpr::List(inner, _) => format!("List<{}>", type_str(inner)),
        TypeExpr::Named(i) => i.text.clone(),
    }
}
