use super::{BasisName, Expr, ExprKind, Generator, Span};
use crate::cell::{dagger2, hcomp1, hcomp2, identity_2, rebracket, scalar_mul, vcomp, Bracketing, CellError};
use crate::generators::{
    bell_corrections, bell_measurement, bell_state, compare, controlled_phase, copy, create, delete,
    nondegenerate_measurement, qudit, witness_left, witness_right, GenError, OrthonormalBasis,
};
use crate::linalg::{ComplexMatrix, DEFAULT_TOL};
use crate::{OneCell, TwoCell};

/// Largest dimension of a single entry of any intermediate cell.
const MAX_DIM: u128 = 1024;
/// Largest total number of matrix elements in any intermediate 2-cell.
const MAX_ELEMENTS: u128 = 1 << 20;

/// Result of evaluation. Composite boundaries of a 2-cell are put in
/// right-nested form, so values of differently bracketed expressions compare
/// directly.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    OneCell(OneCell),
    TwoCell(TwoCell),
}

impl Value {
    /// A one-cell is read as its identity 2-cell.
    pub fn into_two_cell(self) -> TwoCell {
        match self {
            Value::OneCell(f) => identity_2(&f),
            Value::TwoCell(a) => a,
        }
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
#[error("{kind} at {span}")]
pub struct EvalError {
    pub kind: EvalErrorKind,
    pub span: Span,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum EvalErrorKind {
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("Id expects a one-cell, found a 2-cell {0}")]
    NotOneCell(String),
    #[error("intermediate cell exceeds the size limit")]
    TooLarge,
}

type Tree = Option<Bracketing>;

#[derive(Clone)]
struct Typed {
    cell: TwoCell,
    source: Tree,
    target: Tree,
}

#[derive(Clone)]
enum Val {
    One { cell: OneCell, tree: Tree, witness: bool },
    Two(Typed),
}

fn err(span: Span, kind: impl Into<EvalErrorKind>) -> EvalError {
    EvalError {
        kind: kind.into(),
        span,
    }
}

fn is_identity(f: &OneCell) -> bool {
    *f == OneCell::identity(f.source())
}

fn leaf(f: &OneCell) -> Tree {
    (!is_identity(f)).then(|| Bracketing::leaf(f))
}

fn join(l: &Tree, r: &Tree) -> Tree {
    match (l, r) {
        (None, x) | (x, None) => x.clone(),
        (Some(a), Some(b)) => Some(Bracketing::node(a.clone(), b.clone())),
    }
}

fn mirror(t: &Bracketing) -> Bracketing {
    match t {
        Bracketing::Leaf(f) => Bracketing::leaf(&f.adjoint()),
        Bracketing::Node(l, r) => Bracketing::node(mirror(r), mirror(l)),
    }
}

fn right_nested(t: &Tree) -> Tree {
    t.as_ref().map(|b| Bracketing::right_nested(&b.factors()))
}

/// Reject composites whose entries would be too large to build.
fn check_composite(g: &OneCell, f: &OneCell, span: Span) -> Result<(), EvalError> {
    if g.source() != f.target() {
        return Ok(());
    }
    for i in 0..g.target() {
        for j in 0..f.source() {
            let d: u128 = (0..g.source()).map(|k| g.dim(i, k) as u128 * f.dim(k, j) as u128).sum();
            if d > MAX_DIM {
                return Err(err(span, EvalErrorKind::TooLarge));
            }
        }
    }
    Ok(())
}

fn check_elements(source: &OneCell, target: &OneCell, span: Span) -> Result<(), EvalError> {
    let total: u128 = source
        .dims()
        .iter()
        .zip(target.dims())
        .map(|(&s, &t)| s as u128 * t as u128)
        .sum();
    if total > MAX_ELEMENTS {
        return Err(err(span, EvalErrorKind::TooLarge));
    }
    Ok(())
}

fn coerce(v: Val, span: Span) -> Result<Typed, EvalError> {
    match v {
        Val::Two(t) => Ok(t),
        Val::One { cell, tree, .. } => {
            check_elements(&cell, &cell, span)?;
            Ok(Typed {
                cell: identity_2(&cell),
                source: tree.clone(),
                target: tree,
            })
        }
    }
}

fn two(cell: TwoCell, source: Tree, target: Tree) -> Val {
    Val::Two(Typed { cell, source, target })
}

/// Permutation from one bracketing to another, or `None` when no reordering
/// is needed or the factor lists differ.
fn bracket_change(from: &Tree, to: &Tree, span: Span) -> Result<Option<TwoCell>, EvalError> {
    match (from, to) {
        (Some(a), Some(b)) if a != b && a.factors() == b.factors() => {
            let f = a.eval().map_err(|e| err(span, e))?;
            check_elements(&f, &f, span)?;
            Ok(Some(rebracket(a, b).map_err(|e| err(span, e))?))
        }
        _ => Ok(None),
    }
}

fn normalize(t: Typed, span: Span) -> Result<TwoCell, EvalError> {
    let mut cell = t.cell;
    if let Some(p) = bracket_change(&t.source, &right_nested(&t.source), span)? {
        cell = vcomp(&cell, &dagger2(&p)).map_err(|e| err(span, e))?;
    }
    if let Some(p) = bracket_change(&t.target, &right_nested(&t.target), span)? {
        cell = vcomp(&p, &cell).map_err(|e| err(span, e))?;
    }
    Ok(cell)
}

/// Evaluate an expression.
pub fn evaluate(e: &Expr) -> Result<Value, EvalError> {
    Ok(match eval(e)? {
        Val::One { cell, .. } => Value::OneCell(cell),
        Val::Two(t) => Value::TwoCell(normalize(t, e.span)?),
    })
}

fn basis(b: BasisName) -> OrthonormalBasis {
    match b {
        BasisName::Comp => OrthonormalBasis::computational(2).expect("dimension 2"),
        BasisName::Plus => OrthonormalBasis::plus_minus(),
        BasisName::Bell => OrthonormalBasis::bell(),
    }
}

fn generator(g: &Generator, span: Span) -> Result<Val, EvalError> {
    let gen = |r: Result<TwoCell, GenError>| r.map_err(|e| err(span, e));
    let wl = |n: usize| witness_left(n).map_err(|e| err(span, e));
    let wr = |n: usize| witness_right(n).map_err(|e| err(span, e));
    let one = |cell: OneCell, witness: bool| Val::One {
        tree: leaf(&cell),
        cell,
        witness,
    };
    let pair = |a: &OneCell, b: &OneCell| join(&leaf(a), &leaf(b));
    Ok(match g {
        Generator::WL(n) => one(wl(*n)?, true),
        Generator::WR(n) => one(wr(*n)?, true),
        Generator::Q(d) => one(qudit(*d), false),
        Generator::Copy(n) => two(gen(copy(*n))?, None, pair(&wl(*n)?, &wr(*n)?)),
        Generator::Compare(n) => two(gen(compare(*n))?, pair(&wl(*n)?, &wr(*n)?), None),
        Generator::Create(n) => two(gen(create(*n))?, None, pair(&wr(*n)?, &wl(*n)?)),
        Generator::Delete(n) => two(gen(delete(*n))?, pair(&wr(*n)?, &wl(*n)?), None),
        Generator::Bell(d) => two(gen(bell_state(*d))?, None, pair(&qudit(*d), &qudit(*d))),
        Generator::MBell => two(bell_measurement(), pair(&qudit(2), &qudit(2)), pair(&wr(4)?, &wl(4)?)),
        Generator::UBell => {
            let t = pair(&wl(4)?, &qudit(2));
            two(bell_corrections(), t.clone(), t)
        }
        Generator::Meas(b) => {
            let b = basis(*b);
            let d = b.dim();
            two(nondegenerate_measurement(&b), leaf(&qudit(d)), pair(&wr(d)?, &wl(d)?))
        }
        Generator::CPhase(rows) => {
            let m = ComplexMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j].value());
            let t = pair(&wl(m.rows())?, &wr(m.cols())?);
            two(gen(controlled_phase(&m, DEFAULT_TOL))?, t.clone(), t)
        }
    })
}

fn hcomp(l: &Val, r: &Val, span: Span) -> Result<Val, EvalError> {
    if let (Val::One { cell: g, tree: gt, .. }, Val::One { cell: f, tree: ft, .. }) = (l, r) {
        check_composite(g, f, span)?;
        let cell = hcomp1(g, f).map_err(|e| err(span, e))?;
        return Ok(Val::One {
            cell,
            tree: join(gt, ft),
            witness: false,
        });
    }
    let (beta, alpha) = (coerce(l.clone(), span)?, coerce(r.clone(), span)?);
    let (bs, as_) = (beta.cell.source(), alpha.cell.source());
    let (bt, at) = (beta.cell.target(), alpha.cell.target());
    check_composite(bs, as_, span)?;
    check_composite(bt, at, span)?;
    if let (Ok(s), Ok(t)) = (hcomp1(bs, as_), hcomp1(bt, at)) {
        check_elements(&s, &t, span)?;
    }
    let cell = hcomp2(&beta.cell, &alpha.cell).map_err(|e| err(span, e))?;
    Ok(two(
        cell,
        join(&beta.source, &alpha.source),
        join(&beta.target, &alpha.target),
    ))
}

fn adjoint_witness(v: &Val) -> Option<Val> {
    match v {
        Val::One {
            cell, witness: true, ..
        } => {
            let cell = cell.adjoint();
            Some(Val::One {
                tree: leaf(&cell),
                cell,
                witness: true,
            })
        }
        _ => None,
    }
}

fn eval(e: &Expr) -> Result<Val, EvalError> {
    let span = e.span;
    match &e.kind {
        ExprKind::Generator(g) => generator(g, span),
        ExprKind::Id(inner) => match eval(inner)? {
            Val::One { cell, tree, .. } => {
                check_elements(&cell, &cell, span)?;
                Ok(two(identity_2(&cell), tree.clone(), tree))
            }
            Val::Two(t) => Err(err(
                inner.span,
                EvalErrorKind::NotOneCell(format!("{} => {}", t.cell.source(), t.cell.target())),
            )),
        },
        ExprKind::HComp(l, r) => {
            let (lv, rv) = (eval(l)?, eval(r)?);
            let first = hcomp(&lv, &rv, span);
            if !matches!(
                first,
                Err(EvalError {
                    kind: EvalErrorKind::Cell(CellError::ObjectMismatch { .. }),
                    ..
                })
            ) {
                return first;
            }
            // a bare witness whisker written with the other orientation
            if let Some(Ok(v)) = adjoint_witness(&lv).map(|l2| hcomp(&l2, &rv, span)) {
                return Ok(v);
            }
            if let Some(Ok(v)) = adjoint_witness(&rv).map(|r2| hcomp(&lv, &r2, span)) {
                return Ok(v);
            }
            first
        }
        ExprKind::VComp(u, l) => {
            let upper = coerce(eval(u)?, u.span)?;
            let mut lower = coerce(eval(l)?, l.span)?;
            if upper.cell.source() != lower.cell.target() {
                return Err(err(
                    span,
                    CellError::BoundaryMismatch {
                        upper_source: upper.cell.source().to_string(),
                        lower_target: lower.cell.target().to_string(),
                    },
                ));
            }
            if let Some(p) = bracket_change(&lower.target, &upper.source, span)? {
                lower.cell = vcomp(&p, &lower.cell).map_err(|e| err(span, e))?;
            }
            let cell = vcomp(&upper.cell, &lower.cell).map_err(|e| err(span, e))?;
            Ok(two(cell, lower.source, upper.target))
        }
        ExprKind::Dagger(inner) => Ok(match eval(inner)? {
            Val::One { cell, tree, .. } => Val::One {
                cell: cell.adjoint(),
                tree: tree.as_ref().map(mirror),
                witness: false,
            },
            Val::Two(t) => two(dagger2(&t.cell), t.target, t.source),
        }),
        ExprKind::Scale(s, inner) => {
            let t = coerce(eval(inner)?, inner.span)?;
            Ok(two(scalar_mul(s.value(), &t.cell), t.source, t.target))
        }
    }
}
