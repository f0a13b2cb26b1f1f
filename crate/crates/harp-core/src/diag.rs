//! Source positions and compile-time diagnostics.
//!
//! Every AST node carries a [`Span`] into the original source text. Spans are
//! byte ranges; line/column rendering goes through [`SourceFile`], which keeps
//! a line-start index so diagnostics stay cheap to produce.

use std::fmt;

use serde::Serialize;

/// Byte range into a single source file. `start <= end` always holds for
/// spans produced by the lexer and parser.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Span {
    pub start: u32,
    pub end: u32,
}

impl Span {
    pub fn new(start: u32, end: u32) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    /// Smallest span covering both inputs.
    pub fn merge(self, other: Span) -> Span {
        Span {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

/// One-based line/column pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineCol {
    pub line: u32,
    pub col: u32,
}

/// A loaded source file plus the index needed to turn byte offsets into
/// line/column positions.
#[derive(Debug, Clone)]
pub struct SourceFile {
    pub name: String,
    pub text: String,
    line_starts: Vec<u32>,
}

impl SourceFile {
    pub fn new(name: impl Into<String>, text: impl Into<String>) -> Self {
        let text = text.into();
        let mut line_starts = vec![0u32];
        for (i, b) in text.bytes().enumerate() {
            if b == b'\n' {
                line_starts.push(i as u32 + 1);
            }
        }
        SourceFile {
            name: name.into(),
            text,
            line_starts,
        }
    }

    pub fn line_col(&self, offset: u32) -> LineCol {
        let line = match self.line_starts.binary_search(&offset) {
            Ok(l) => l,
            Err(l) => l - 1,
        };
        LineCol {
            line: line as u32 + 1,
            col: offset - self.line_starts[line] + 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Error => write!(f, "error"),
            Severity::Warning => write!(f, "warning"),
        }
    }
}

/// Stable diagnostic codes. The numeric ranges group by pipeline stage:
/// 0xx lexer/parser, 1xx resolution, 2xx policy registry, 3xx type checking,
/// 9xx internal invariant failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Code {
    LexError,
    ParseError,
    UnresolvedName,
    DuplicateDefinition,
    UnknownPolicy,
    PolicyTypeMismatch,
    StaticArgArityMismatch,
    DuplicateRequiredArg,
    MultiplePoliciesForType,
    UnsupportedProtectedType,
    TypeError,
    VarInProtectedRecord,
    ImplicitLiftNeedsStaticArgs,
    BoundaryCallInCheck,
    ProtectedBoundaryPayload,
    PrivateFieldWarning,
    SelfReferentialPolicyArg,
    MissingMain,
    InternalWeaveError,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::LexError => "E0001",
            Code::ParseError => "E0002",
            Code::UnresolvedName => "E0101",
            Code::DuplicateDefinition => "E0102",
            Code::UnknownPolicy => "E0201",
            Code::PolicyTypeMismatch => "E0202",
            Code::StaticArgArityMismatch => "E0203",
            Code::DuplicateRequiredArg => "E0204",
            Code::MultiplePoliciesForType => "E0205",
            Code::UnsupportedProtectedType => "E0206",
            Code::TypeError => "E0301",
            Code::VarInProtectedRecord => "E0302",
            Code::ImplicitLiftNeedsStaticArgs => "E0303",
            Code::BoundaryCallInCheck => "E0304",
            Code::ProtectedBoundaryPayload => "E0305",
            Code::PrivateFieldWarning => "W0001",
            Code::SelfReferentialPolicyArg => "W0002",
            Code::MissingMain => "E0401",
            Code::InternalWeaveError => "E0901",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// A single compiler diagnostic, renderable as
/// `severity file:line:col code message`.
#[derive(Debug, Clone)]
pub struct Diagnostic {
    pub severity: Severity,
    pub span: Span,
    pub code: Code,
    pub message: String,
}

impl Diagnostic {
    pub fn error(code: Code, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            span,
            code,
            message: message.into(),
        }
    }

    pub fn warning(code: Code, span: Span, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            span,
            code,
            message: message.into(),
        }
    }

    pub fn render(&self, file: &SourceFile) -> String {
        let lc = file.line_col(self.span.start);
        format!(
            "{} {}:{}:{} {} {}",
            self.severity, file.name, lc.line, lc.col, self.code, self.message
        )
    }
}

/// Accumulates diagnostics across pipeline stages.
#[derive(Debug, Default)]
pub struct Diagnostics {
    items: Vec<Diagnostic>,
}

impl Diagnostics {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, d: Diagnostic) {
        self.items.push(d);
    }

    pub fn error(&mut self, code: Code, span: Span, message: impl Into<String>) {
        self.push(Diagnostic::error(code, span, message));
    }

    pub fn warning(&mut self, code: Code, span: Span, message: impl Into<String>) {
        self.push(Diagnostic::warning(code, span, message));
    }

    pub fn has_errors(&self) -> bool {
        self.items.iter().any(|d| d.severity == Severity::Error)
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[Diagnostic] {
        &self.items
    }

    pub fn into_items(self) -> Vec<Diagnostic> {
        self.items
    }

    pub fn extend(&mut self, other: Diagnostics) {
        self.items.extend(other.items);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_col_of_offsets() {
        let f = SourceFile::new("t.harp", "ab\ncd\n");
        assert_eq!(f.line_col(0), LineCol { line: 1, col: 1 });
        assert_eq!(f.line_col(1), LineCol { line: 1, col: 2 });
        assert_eq!(f.line_col(3), LineCol { line: 2, col: 1 });
        assert_eq!(f.line_col(5), LineCol { line: 2, col: 3 });
    }

    #[test]
    fn renders_one_line_format() {
        let f = SourceFile::new("x.harp", "record A {}\n");
        let d = Diagnostic::error(Code::UnknownPolicy, Span::new(7, 8), "unknown policy 'P'");
        assert_eq!(d.render(&f), "error x.harp:1:8 E0201 unknown policy 'P'");
    }
}
