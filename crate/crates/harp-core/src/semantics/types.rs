//! Semantic types. `Membrane<T>` is the type of a policy-protected `T`;
//! surface programs never write it, the checker infers it from policy
//! declarations and propagation.

use std::collections::BTreeSet;
use std::fmt;

/// Semantic type of an expression.
///
/// A membrane type carries the set of organic policies its protection can
/// derive from. The set exists for elaboration only: two membrane types with
/// the same payload are interchangeable, and joining control-flow paths or
/// call sites unions the sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ty {
    Int,
    String,
    Bool,
    Unit,
    List(Box<Ty>),
    Record(String),
    Membrane {
        inner: Box<Ty>,
        /// Organic policies the runtime chain head can originate from.
        roots: BTreeSet<String>,
    },
    /// Produced after a reported error; absorbs all checks to limit cascades.
    Error,
}

impl Ty {
    pub fn membrane(inner: Ty, root: impl Into<String>) -> Ty {
        Ty::Membrane {
            inner: Box::new(inner),
            roots: BTreeSet::from([root.into()]),
        }
    }

    pub fn membrane_with(inner: Ty, roots: BTreeSet<String>) -> Ty {
        Ty::Membrane {
            inner: Box::new(inner),
            roots,
        }
    }

    pub fn is_membrane(&self) -> bool {
        matches!(self, Ty::Membrane { .. })
    }

    pub fn is_error(&self) -> bool {
        matches!(self, Ty::Error)
    }

    /// The payload type with any membrane layer removed.
    pub fn payload(&self) -> &Ty {
        match self {
            Ty::Membrane { inner, .. } => inner,
            other => other,
        }
    }

    pub fn roots(&self) -> BTreeSet<String> {
        match self {
            Ty::Membrane { roots, .. } => roots.clone(),
            _ => BTreeSet::new(),
        }
    }

    /// Name used as the lookup key for type-keyed policy arguments and for
    /// protected-type registration.
    pub fn key(&self) -> String {
        self.to_string()
    }

    /// Equality that ignores membrane layers and root sets on both sides.
    pub fn same_payload(&self, other: &Ty) -> bool {
        if self.is_error() || other.is_error() {
            return true;
        }
        self.payload().erased() == other.payload().erased()
    }

    /// The type with root sets dropped, for structural comparisons.
    fn erased(&self) -> Ty {
        match self {
            Ty::Membrane { inner, .. } => Ty::Membrane {
                inner: Box::new(inner.erased()),
                roots: BTreeSet::new(),
            },
            Ty::List(t) => Ty::List(Box::new(t.erased())),
            other => other.clone(),
        }
    }

    /// Structural match disregarding root sets.
    pub fn same_shape(&self, other: &Ty) -> bool {
        if self.is_error() || other.is_error() {
            return true;
        }
        self.erased() == other.erased()
    }
}

impl fmt::Display for Ty {
    fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ty::Int => write!(f, "Int"),
            Ty::String => write!(f, "String"),
            Ty::Bool => write!(f, "Bool"),
            Ty::Unit => write!(f, "Unit"),
            Ty::List(t) => write!(f, "List<{t}>"),
            Ty::Record(name) => write!(f, "{name}"),
            Ty::Membrane { inner, .. } => write!(f, "Membrane<{inner}>"),
            Ty::Error => write!(f, "<error>"),
        }
    }
}
