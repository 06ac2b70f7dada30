//! A small expression language for composing named generators.
//!
//! ```text
//! expr   := vterm { "." vterm }        // A . B = vcomp(A, B), B first; right-assoc
//! vterm  := hterm { "o" hterm }        // A o B = hcomp2(A, B), B inside; left-assoc
//! hterm  := "dag" "(" expr ")" | "scale" "(" scalar "," expr ")"
//!         | generator | "(" expr ")"
//! scalar := real [ ("+" | "-") real "i" ] | "1/sqrt(" int ")"
//! ```
//!
//! Generators: `WL(n) WR(n) Q(d) Copy(n) Compare(n) Create(n) Delete(n)
//! Bell(d) MBell UBell Id(expr) Meas(comp|plus|bell) CPhase([[..],..])`.

mod eval;
mod parse;

use std::fmt;

use num_complex::Complex64;

pub use eval::{evaluate, EvalError, EvalErrorKind, Value};
pub use parse::{parse, ParseError, ParseErrorKind};

/// Largest integer argument accepted by a generator.
pub const MAX_ARG: usize = 64;

/// Byte range in the source text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Self { start, end }
    }

    pub fn to(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// A syntax tree node. Equality ignores spans.
#[derive(Clone, Debug)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Expr {
    pub fn new(kind: ExprKind) -> Self {
        Self {
            kind,
            span: Span::default(),
        }
    }

    pub fn generator(g: Generator) -> Self {
        Self::new(ExprKind::Generator(g))
    }

    pub fn id(inner: Expr) -> Self {
        Self::new(ExprKind::Id(Box::new(inner)))
    }

    pub fn hcomp(left: Expr, right: Expr) -> Self {
        Self::new(ExprKind::HComp(Box::new(left), Box::new(right)))
    }

    pub fn vcomp(upper: Expr, lower: Expr) -> Self {
        Self::new(ExprKind::VComp(Box::new(upper), Box::new(lower)))
    }

    pub fn dagger(inner: Expr) -> Self {
        Self::new(ExprKind::Dagger(Box::new(inner)))
    }

    pub fn scale(s: Scalar, inner: Expr) -> Self {
        Self::new(ExprKind::Scale(s, Box::new(inner)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Generator(Generator),
    Id(Box<Expr>),
    HComp(Box<Expr>, Box<Expr>),
    VComp(Box<Expr>, Box<Expr>),
    Dagger(Box<Expr>),
    Scale(Scalar, Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisName {
    Comp,
    Plus,
    Bell,
}

impl BasisName {
    pub fn as_str(self) -> &'static str {
        match self {
            BasisName::Comp => "comp",
            BasisName::Plus => "plus",
            BasisName::Bell => "bell",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "comp" => Some(BasisName::Comp),
            "plus" => Some(BasisName::Plus),
            "bell" => Some(BasisName::Bell),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    WL(usize),
    WR(usize),
    Q(usize),
    Copy(usize),
    Compare(usize),
    Create(usize),
    Delete(usize),
    Bell(usize),
    MBell,
    UBell,
    Meas(BasisName),
    CPhase(Vec<Vec<Scalar>>),
}

impl Generator {
    pub fn name(&self) -> &'static str {
        match self {
            Generator::WL(_) => "WL",
            Generator::WR(_) => "WR",
            Generator::Q(_) => "Q",
            Generator::Copy(_) => "Copy",
            Generator::Compare(_) => "Compare",
            Generator::Create(_) => "Create",
            Generator::Delete(_) => "Delete",
            Generator::Bell(_) => "Bell",
            Generator::MBell => "MBell",
            Generator::UBell => "UBell",
            Generator::Meas(_) => "Meas",
            Generator::CPhase(_) => "CPhase",
        }
    }

    /// Constructor for the generators taking one integer.
    pub fn with_int(name: &str, n: usize) -> Option<Self> {
        Some(match name {
            "WL" => Generator::WL(n),
            "WR" => Generator::WR(n),
            "Q" => Generator::Q(n),
            "Copy" => Generator::Copy(n),
            "Compare" => Generator::Compare(n),
            "Create" => Generator::Create(n),
            "Delete" => Generator::Delete(n),
            "Bell" => Generator::Bell(n),
            _ => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scalar {
    Literal {
        re: f64,
        im: f64,
    },
    /// `1/sqrt(k)`
    InvSqrt(u64),
}

impl Scalar {
    pub fn real(re: f64) -> Self {
        Scalar::Literal { re, im: 0.0 }
    }

    pub fn value(self) -> Complex64 {
        match self {
            Scalar::Literal { re, im } => Complex64::new(re, im),
            Scalar::InvSqrt(k) => Complex64::new(1.0 / (k as f64).sqrt(), 0.0),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Scalar::InvSqrt(k) => write!(f, "1/sqrt({k})"),
            Scalar::Literal { re, im: 0.0 } => write!(f, "{re:?}"),
            Scalar::Literal { re, im } if im < 0.0 => write!(f, "{re:?}-{:?}i", -im),
            Scalar::Literal { re, im } => write!(f, "{re:?}+{im:?}i"),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::WL(n)
            | Generator::WR(n)
            | Generator::Q(n)
            | Generator::Copy(n)
            | Generator::Compare(n)
            | Generator::Create(n)
            | Generator::Delete(n)
            | Generator::Bell(n) => write!(f, "{}({n})", self.name()),
            Generator::MBell | Generator::UBell => f.write_str(self.name()),
            Generator::Meas(b) => write!(f, "Meas({})", b.as_str()),
            Generator::CPhase(rows) => {
                f.write_str("CPhase([")?;
                for (i, row) in rows.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str("[")?;
                    for (j, s) in row.iter().enumerate() {
                        if j > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{s}")?;
                    }
                    f.write_str("]")?;
                }
                f.write_str("])")
            }
        }
    }
}

/// Fully parenthesized; `parse(&e.to_string())` gives back `e`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Generator(g) => write!(f, "{g}"),
            ExprKind::Id(e) => write!(f, "Id({e})"),
            ExprKind::HComp(l, r) => write!(f, "({l} o {r})"),
            ExprKind::VComp(u, l) => write!(f, "({u} . {l})"),
            ExprKind::Dagger(e) => write!(f, "dag({e})"),
            ExprKind::Scale(s, e) => write!(f, "scale({s}, {e})"),
        }
    }
}

/// Either stage failing on a source string.
#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum DslError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl DslError {
    pub fn span(&self) -> Span {
        match self {
            DslError::Parse(e) => e.span,
            DslError::Eval(e) => e.span,
        }
    }
}

pub fn eval_str(text: &str) -> Result<Value, DslError> {
    Ok(evaluate(&parse(text)?)?)
}
