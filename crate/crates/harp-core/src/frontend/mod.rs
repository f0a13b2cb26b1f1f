//! Tokenizing, parsing, and printing of Harp source.

pub mod ast;
pub mod lexer;
pub mod parser;
pub mod pretty;
pub mod token;

pub use ast::{Program, strip_positions};
pub use lexer::tokenize;
pub use parser::parse;
pub use pretty::print_program;

#[cfg(test)]
mod tests {
    use super::ast::*;
    use super::*;
    use crate::diag::Span;

    fn parse_ok(src: &str) -> Program {
        parse(src).expect("parse failed")
    }

    fn stripped(src: &str) -> Program {
        let mut p = parse_ok(src);
        strip_positions(&mut p);
        p
    }

    #[test]
    fn field_level_enforce_clause() {
        let p = parse_ok(
            "record Publication {\n\
             \x20 id: PublicationId,\n\
             \x20 name: String,\n\
             \x20 founded: Int,\n\
             \x20 email: PublicationEmail enforce PublicationEmailPolicy(publicationService)\n\
             }\n",
        );
        let Decl::Record(r) = &p.decls[0] else {
            panic!("expected record")
        };
        assert!(r.head_enforce.is_none());
        let email = &r.fields[3];
        let clause = email.enforce.as_ref().expect("enforce clause");
        assert_eq!(clause.policy.text, "PublicationEmailPolicy");
        assert_eq!(clause.static_args.len(), 1);
        assert!(matches!(
            &clause.static_args[0].kind,
            ExprKind::Var(v) if v == "publicationService"
        ));
    }

    #[test]
    fn head_and_field_enforce_together() {
        let p = parse_ok(
            "record User enforce UserPolicy() {\n\
             \x20 id: Int,\n\
             \x20 email: UserEmail enforce UserEmailPolicy\n\
             }\n",
        );
        let Decl::Record(r) = &p.decls[0] else {
            panic!("expected record")
        };
        assert_eq!(r.head_enforce.as_ref().unwrap().policy.text, "UserPolicy");
        assert_eq!(
            r.fields[1].enforce.as_ref().unwrap().policy.text,
            "UserEmailPolicy"
        );
    }

    #[test]
    fn scope_block_body_matches_hand_built_ast() {
        let p = stripped("fn f() -> Int { scope(Owner) { g() } }");
        let Decl::Fn(f) = &p.decls[0] else {
            panic!("expected fn")
        };
        let expected = Expr {
            id: NodeId(0),
            span: Span::default(),
            kind: ExprKind::ScopeBlock {
                tag: Ident {
                    text: "Owner".into(),
                    span: Span::default(),
                },
                body: Box::new(Expr {
                    id: NodeId(0),
                    span: Span::default(),
                    kind: ExprKind::FnCall {
                        callee: Ident {
                            text: "g".into(),
                            span: Span::default(),
                        },
                        args: vec![],
                    },
                }),
            },
        };
        assert_eq!(f.body.as_ref().unwrap(), &expected);
    }

    #[test]
    fn policy_with_cases_requires_compose() {
        let p = parse_ok(
            "policy P(data: Email, svc: String) {\n\
             \x20 compose Dominant;\n\
             \x20 requires band: Band, id: PubId;\n\
             \x20 check {\n\
             \x20   case Owner => true;\n\
             \x20   !lookup(id).contains(band)\n\
             \x20 }\n\
             }\n",
        );
        let Decl::Policy(d) = &p.decls[0] else {
            panic!("expected policy")
        };
        assert_eq!(d.data_param.name.text, "data");
        assert_eq!(d.static_params.len(), 1);
        assert_eq!(d.compose, ComposeStrategy::Dominant);
        assert_eq!(d.requires.len(), 2);
        assert_eq!(d.scope_cases.len(), 1);
        assert_eq!(d.scope_cases[0].tag.text, "Owner");
        // `!x` desugars to `x == false`
        assert!(matches!(
            &d.check_body.kind,
            ExprKind::BinOp {
                op: BinOpKind::Eq,
                ..
            }
        ));
    }

    #[test]
    fn policy_arg_annotations_on_fn_params() {
        let p = parse_ok(
            "boundary fn send(to: String) -> Int;\n\
             fn sendEmail(@policyArg id: PubId, @policyArg band: Band, to: Email) -> Int {\n\
             \x20 send(\"x\")\n\
             }\n",
        );
        let Decl::Fn(f) = &p.decls[1] else {
            panic!("expected fn")
        };
        assert!(f.params[0].policy_arg);
        assert!(f.params[1].policy_arg);
        assert!(!f.params[2].policy_arg);
    }

    #[test]
    fn parse_collects_multiple_errors() {
        let errs = parse("record {1}\nfn f( -> {}\npolicy ;;").unwrap_err();
        assert!(errs.len() >= 2, "got {errs:?}");
    }

    #[test]
    fn unsafe_unwrap_requires_nonempty_reason() {
        assert!(parse("fn f() -> Int { x.unsafeUnwrap(\"\") }").is_err());
        assert!(parse("fn f() -> Int { x.unsafeUnwrap(y) }").is_err());
        let p = parse_ok("fn f() -> Int { x.unsafeUnwrap(\"debug\") }");
        let Decl::Fn(f) = &p.decls[0] else {
            panic!();
        };
        assert!(matches!(
            &f.body.as_ref().unwrap().kind,
            ExprKind::UnsafeUnwrap { reason, .. } if reason == "debug"
        ));
    }

    #[test]
    fn parse_is_deterministic() {
        let src = "scopes Owner;\nfn main() -> Int { let a = 1 + 2 * 3; a }\n";
        assert_eq!(parse_ok(src), parse_ok(src));
    }

    #[test]
    fn block_desugars_to_nested_lets() {
        let p = stripped("fn main() -> Int { let a = 1; f(a); 2 }");
        let Decl::Fn(f) = &p.decls[0] else {
            panic!();
        };
        let ExprKind::Let { name, body, .. } = &f.body.as_ref().unwrap().kind else {
            panic!("expected let");
        };
        assert_eq!(name, "a");
        let ExprKind::Let { name, body, .. } = &body.kind else {
            panic!("expected discard let");
        };
        assert_eq!(name, "_");
        assert!(matches!(body.kind, ExprKind::IntLit(2)));
    }

    #[test]
    fn pretty_reparse_roundtrip() {
        let src = "scopes Owner, Admin;\n\
            record User enforce UserPolicy() {\n\
            \x20 private id: Int,\n\
            \x20 email: Email enforce EmailPolicy\n\
            \x20 fn label() -> String { \"u\" + self.name }\n\
            }\n\
            extern fn q(a: Int) -> List<Int>;\n\
            boundary fn send(to: String) -> Int;\n\
            policy EmailPolicy(data: Email) {\n\
            \x20 compose Or;\n\
            \x20 requires v: Viewer;\n\
            \x20 check { case Owner => true; q(1).contains(2) == false }\n\
            }\n\
            fn main() -> Int {\n\
            \x20 let u = 1;\n\
            \x20 if u == 1 { send(\"a\") } else { 0 };\n\
            \x20 scope(Admin) { u + (2 * 3) }\n\
            }\n";
        let mut first = parse_ok(src);
        let printed = print_program(&first);
        let mut second = parse(&printed)
            .unwrap_or_else(|e| panic!("reparse failed: {e:?}\n---\n{printed}"));
        strip_positions(&mut first);
        strip_positions(&mut second);
        assert_eq!(first, second, "printed:\n{printed}");
    }
}
