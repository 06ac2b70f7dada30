//! 1-cells and 2-cells of the skeletal 2-category of 2-Hilbert spaces.
//!
//! Objects are natural numbers `n >= 1` (standing for `Hilb^n`). A 1-cell
//! `n -> m` is an `m x n` matrix of dimensions; a 2-cell is a matrix of linear
//! maps between corresponding entries of two parallel 1-cells.
//!
//! Horizontal composition `g ∘ f` multiplies dimension matrices with `⊕` and `⊗`.
//! Entry `(i, j)` of `g ∘ f` is `⊕_k g(i,k) ⊗ f(k,j)`, summands ordered by
//! increasing `k`, each summand flattened by `kron`. This ordering is not
//! associative on the nose, so `Bracketing` and `rebracket` produce the
//! permutation 2-cells that move between bracketings.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;

use crate::linalg::ComplexMatrix;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum CellError {
    #[error("cannot compose: {left} after {right} (object {left_source} vs {right_target})")]
    ObjectMismatch {
        left: String,
        right: String,
        left_source: usize,
        right_target: usize,
    },
    #[error("vertical composition mismatch: {upper_source} vs {lower_target}")]
    BoundaryMismatch { upper_source: String, lower_target: String },
    #[error("2-cell boundaries are not parallel: {from} vs {to}")]
    NotParallel { from: String, to: String },
    #[error("entry ({i},{j}) has shape {actual:?}, expected {expected:?}")]
    EntryShape {
        i: usize,
        j: usize,
        expected: (usize, usize),
        actual: (usize, usize),
    },
    #[error("invalid 1-cell: {0}")]
    InvalidOneCell(String),
    #[error("bracketings do not share the same factors")]
    FactorMismatch,
    #[error("{0}")]
    Invalid(String),
}

/// A 1-cell `Hilb^source -> Hilb^target`, up to isomorphism.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OneCell {
    source: usize,
    target: usize,
    dims: Vec<usize>,
}

impl OneCell {
    /// `dims` is row-major with `target` rows and `source` columns.
    pub fn new(source: usize, target: usize, dims: Vec<usize>) -> Result<Self, CellError> {
        if source == 0 || target == 0 {
            return Err(CellError::InvalidOneCell(format!(
                "objects must have size >= 1, got {source} -> {target}"
            )));
        }
        if dims.len() != source * target {
            return Err(CellError::InvalidOneCell(format!(
                "{} dimensions for a {target}x{source} matrix",
                dims.len()
            )));
        }
        Ok(Self { source, target, dims })
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, CellError> {
        let target = rows.len();
        let source = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != source) {
            return Err(CellError::InvalidOneCell("ragged dimension matrix".into()));
        }
        Self::new(source, target, rows.concat())
    }

    /// The identity 1-cell on `Hilb^n`.
    pub fn identity(n: usize) -> Self {
        let mut dims = vec![0; n * n];
        for i in 0..n {
            dims[i * n + i] = 1;
        }
        Self {
            source: n,
            target: n,
            dims,
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn dim(&self, i: usize, j: usize) -> usize {
        self.dims[i * self.source + j]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_rows(&self) -> Vec<Vec<usize>> {
        self.dims.chunks(self.source).map(<[usize]>::to_vec).collect()
    }

    /// The skeletal adjoint: transpose the dimension matrix.
    pub fn adjoint(&self) -> OneCell {
        let mut dims = Vec::with_capacity(self.dims.len());
        for j in 0..self.source {
            for i in 0..self.target {
                dims.push(self.dim(i, j));
            }
        }
        OneCell {
            source: self.target,
            target: self.source,
            dims,
        }
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &OneCell) -> Result<OneCell, CellError> {
        hcomp1(self, f)
    }
}

impl fmt::Debug for OneCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for OneCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} {:?}", self.source, self.target, self.dim_rows())
    }
}

pub fn hcomp1(g: &OneCell, f: &OneCell) -> Result<OneCell, CellError> {
    if f.target != g.source {
        return Err(CellError::ObjectMismatch {
            left: g.to_string(),
            right: f.to_string(),
            left_source: g.source,
            right_target: f.target,
        });
    }
    let mut dims = Vec::with_capacity(g.target * f.source);
    for i in 0..g.target {
        for j in 0..f.source {
            dims.push((0..g.source).map(|k| g.dim(i, k) * f.dim(k, j)).sum());
        }
    }
    Ok(OneCell {
        source: f.source,
        target: g.target,
        dims,
    })
}

pub fn adjoint1(f: &OneCell) -> OneCell {
    f.adjoint()
}

/// A 2-cell `source => target` between parallel 1-cells.
#[derive(Clone, PartialEq)]
pub struct TwoCell {
    source: OneCell,
    target: OneCell,
    entries: Vec<ComplexMatrix>,
}

impl TwoCell {
    /// `entries` is row-major; entry `(i,j)` must be `target(i,j) x source(i,j)`.
    pub fn new(source: OneCell, target: OneCell, entries: Vec<ComplexMatrix>) -> Result<Self, CellError> {
        if source.source != target.source || source.target != target.target {
            return Err(CellError::NotParallel {
                from: source.to_string(),
                to: target.to_string(),
            });
        }
        if entries.len() != source.dims.len() {
            return Err(CellError::Invalid(format!(
                "{} entries for a {}x{} 2-cell",
                entries.len(),
                source.target,
                source.source
            )));
        }
        for i in 0..source.target {
            for j in 0..source.source {
                let expected = (target.dim(i, j), source.dim(i, j));
                let actual = entries[i * source.source + j].shape();
                if expected != actual {
                    return Err(CellError::EntryShape { i, j, expected, actual });
                }
            }
        }
        Ok(Self {
            source,
            target,
            entries,
        })
    }

    pub fn from_fn(
        source: OneCell,
        target: OneCell,
        mut f: impl FnMut(usize, usize) -> ComplexMatrix,
    ) -> Result<Self, CellError> {
        let mut entries = Vec::new();
        for i in 0..source.target {
            for j in 0..source.source {
                entries.push(f(i, j));
            }
        }
        Self::new(source, target, entries)
    }

    pub fn source(&self) -> &OneCell {
        &self.source
    }

    pub fn target(&self) -> &OneCell {
        &self.target
    }

    pub fn rows(&self) -> usize {
        self.source.target
    }

    pub fn cols(&self) -> usize {
        self.source.source
    }

    pub fn entry(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.entries[i * self.cols() + j]
    }

    pub fn entries(&self) -> &[ComplexMatrix] {
        &self.entries
    }

    pub fn map_entries(&self, f: impl Fn(&ComplexMatrix) -> ComplexMatrix) -> Result<TwoCell, CellError> {
        TwoCell::new(
            self.source.clone(),
            self.target.clone(),
            self.entries.iter().map(f).collect(),
        )
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    /// Every entry unitary within `tol`.
    pub fn is_vertically_unitary(&self, tol: f64) -> bool {
        self.entries.iter().all(|e| e.is_unitary(tol))
    }

    /// Largest entrywise difference; `None` unless boundaries have equal dims.
    pub fn max_abs_diff(&self, other: &TwoCell) -> Option<f64> {
        if self.source != other.source || self.target != other.target {
            return None;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .try_fold(0.0f64, |acc, (a, b)| a.max_abs_diff(b).map(|d| acc.max(d)))
    }

    /// Sum of entrywise Hilbert-Schmidt inner products `<self, other>`.
    pub fn inner(&self, other: &TwoCell) -> Option<Complex64> {
        if self.source != other.source || self.target != other.target {
            return None;
        }
        Some(self.entries.iter().zip(&other.entries).map(|(a, b)| a.inner(b)).sum())
    }
}

impl fmt::Debug for TwoCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TwoCell {} => {}", self.source, self.target)?;
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                writeln!(f, "({i},{j}): {:?}", self.entry(i, j))?;
            }
        }
        Ok(())
    }
}

pub fn identity_2(f: &OneCell) -> TwoCell {
    TwoCell {
        source: f.clone(),
        target: f.clone(),
        entries: f.dims.iter().map(|&d| ComplexMatrix::identity(d)).collect(),
    }
}

/// Horizontal composite `beta ∘ alpha` (alpha on the inside).
pub fn hcomp2(beta: &TwoCell, alpha: &TwoCell) -> Result<TwoCell, CellError> {
    let source = hcomp1(&beta.source, &alpha.source)?;
    let target = hcomp1(&beta.target, &alpha.target)?;
    let mid = beta.cols();
    let mut entries = Vec::with_capacity(beta.rows() * alpha.cols());
    for i in 0..beta.rows() {
        for j in 0..alpha.cols() {
            let blocks: Vec<ComplexMatrix> = (0..mid).map(|k| beta.entry(i, k).kron(alpha.entry(k, j))).collect();
            entries.push(ComplexMatrix::direct_sum(&blocks));
        }
    }
    TwoCell::new(source, target, entries)
}

/// Vertical composite `beta · alpha` (alpha first).
pub fn vcomp(beta: &TwoCell, alpha: &TwoCell) -> Result<TwoCell, CellError> {
    if beta.source != alpha.target {
        return Err(CellError::BoundaryMismatch {
            upper_source: beta.source.to_string(),
            lower_target: alpha.target.to_string(),
        });
    }
    let entries = beta.entries.iter().zip(&alpha.entries).map(|(b, a)| b * a).collect();
    TwoCell::new(alpha.source.clone(), beta.target.clone(), entries)
}

/// Vertical composite of a chain written top to bottom: `cells[0] · cells[1] · ...`.
pub fn vcomp_chain(cells: &[TwoCell]) -> Result<TwoCell, CellError> {
    let (last, rest) = cells
        .split_last()
        .ok_or_else(|| CellError::Invalid("empty vertical chain".into()))?;
    rest.iter().rev().try_fold(last.clone(), |acc, c| vcomp(c, &acc))
}

pub fn dagger2(alpha: &TwoCell) -> TwoCell {
    TwoCell {
        source: alpha.target.clone(),
        target: alpha.source.clone(),
        entries: alpha.entries.iter().map(ComplexMatrix::dagger).collect(),
    }
}

pub fn scalar_mul(s: Complex64, alpha: &TwoCell) -> TwoCell {
    TwoCell {
        source: alpha.source.clone(),
        target: alpha.target.clone(),
        entries: alpha.entries.iter().map(|e| e.scale(s)).collect(),
    }
}

pub fn eq2(alpha: &TwoCell, beta: &TwoCell, tol: f64) -> bool {
    alpha.max_abs_diff(beta).is_some_and(|d| d <= tol)
}

/// `id_f ∘ alpha`.
pub fn whisker_left(f: &OneCell, alpha: &TwoCell) -> Result<TwoCell, CellError> {
    hcomp2(&identity_2(f), alpha)
}

/// `alpha ∘ id_f`.
pub fn whisker_right(alpha: &TwoCell, f: &OneCell) -> Result<TwoCell, CellError> {
    hcomp2(alpha, &identity_2(f))
}

/// The canonical unit `σ: id ⇒ f†∘f` and counit `τ: f∘f† ⇒ id` of the adjunction `f ⊣ f†`.
pub fn adjunction_cells(f: &OneCell) -> (TwoCell, TwoCell) {
    let fd = f.adjoint();
    let n = f.source;
    let m = f.target;
    let ff = hcomp1(&fd, f).expect("adjoint composes");
    let sigma = TwoCell::from_fn(OneCell::identity(n), ff.clone(), |i, j| {
        if i == j {
            let blocks: Vec<ComplexMatrix> = (0..m).map(|k| cup(f.dim(k, i))).collect();
            ComplexMatrix::vstack(&blocks, 1)
        } else {
            ComplexMatrix::zeros(ff.dim(i, j), 0)
        }
    })
    .expect("unit shapes");
    let gg = hcomp1(f, &fd).expect("adjoint composes");
    let tau = TwoCell::from_fn(gg.clone(), OneCell::identity(m), |i, j| {
        if i == j {
            let blocks: Vec<ComplexMatrix> = (0..n).map(|k| cup(f.dim(i, k)).dagger()).collect();
            ComplexMatrix::hstack(&blocks, 1)
        } else {
            ComplexMatrix::zeros(0, gg.dim(i, j))
        }
    })
    .expect("counit shapes");
    (sigma, tau)
}

/// The two triangle composites of `adjunction_cells(f)`:
/// `(τ∘f)·(f∘σ): f ⇒ f` and `(f†∘τ)·(σ∘f†): f† ⇒ f†`, rebracketed in the middle.
pub fn snake_composites(f: &OneCell) -> Result<(TwoCell, TwoCell), CellError> {
    let fd = f.adjoint();
    let (sigma, tau) = adjunction_cells(f);
    let (lf, lfd) = (Bracketing::leaf(f), Bracketing::leaf(&fd));
    let first = vcomp_chain(&[
        whisker_right(&tau, f)?,
        rebracket(
            &Bracketing::node(lf.clone(), Bracketing::node(lfd.clone(), lf.clone())),
            &Bracketing::node(Bracketing::node(lf.clone(), lfd.clone()), lf.clone()),
        )?,
        whisker_left(f, &sigma)?,
    ])?;
    let second = vcomp_chain(&[
        whisker_left(&fd, &tau)?,
        rebracket(
            &Bracketing::node(Bracketing::node(lfd.clone(), lf.clone()), lfd.clone()),
            &Bracketing::node(lfd.clone(), Bracketing::node(lf, lfd)),
        )?,
        whisker_right(&sigma, &fd)?,
    ])?;
    Ok((first, second))
}

/// `Σ_a |a⟩⊗|a⟩` as a `d² x 1` column.
pub fn cup(d: usize) -> ComplexMatrix {
    let mut v = ComplexMatrix::zeros(d * d, 1);
    for a in 0..d {
        v[(a * d + a, 0)] = crate::linalg::ONE;
    }
    v
}

/// A parenthesization of a chain of composable 1-cells.
#[derive(Clone, Debug, PartialEq)]
pub enum Bracketing {
    Leaf(OneCell),
    /// `Node(l, r)` is `l ∘ r`.
    Node(Box<Bracketing>, Box<Bracketing>),
}

/// Basis label of an entry of a bracketed composite: the intermediate object
/// chosen at each junction and the basis index within each factor.
type Label = (Vec<usize>, Vec<usize>);

impl Bracketing {
    pub fn leaf(f: &OneCell) -> Self {
        Bracketing::Leaf(f.clone())
    }

    pub fn node(l: Bracketing, r: Bracketing) -> Self {
        Bracketing::Node(Box::new(l), Box::new(r))
    }

    /// Left-nested `((f0 ∘ f1) ∘ f2) ∘ ...`.
    pub fn left_nested(factors: &[OneCell]) -> Self {
        let mut it = factors.iter();
        let first = Bracketing::leaf(it.next().expect("non-empty chain"));
        it.fold(first, |acc, f| Bracketing::node(acc, Bracketing::leaf(f)))
    }

    /// Right-nested `f0 ∘ (f1 ∘ (f2 ∘ ...))`.
    pub fn right_nested(factors: &[OneCell]) -> Self {
        let (last, rest) = factors.split_last().expect("non-empty chain");
        rest.iter().rev().fold(Bracketing::leaf(last), |acc, f| {
            Bracketing::node(Bracketing::leaf(f), acc)
        })
    }

    pub fn factors(&self) -> Vec<OneCell> {
        match self {
            Bracketing::Leaf(f) => vec![f.clone()],
            Bracketing::Node(l, r) => {
                let mut v = l.factors();
                v.extend(r.factors());
                v
            }
        }
    }

    pub fn eval(&self) -> Result<OneCell, CellError> {
        match self {
            Bracketing::Leaf(f) => Ok(f.clone()),
            Bracketing::Node(l, r) => hcomp1(&l.eval()?, &r.eval()?),
        }
    }

    fn labels(&self, i: usize, j: usize) -> Vec<Label> {
        match self {
            Bracketing::Leaf(f) => (0..f.dim(i, j)).map(|a| (Vec::new(), vec![a])).collect(),
            Bracketing::Node(l, r) => {
                let mid = r.eval().expect("checked composable").target;
                let mut out = Vec::new();
                for k in 0..mid {
                    let right = r.labels(k, j);
                    for (lo, la) in l.labels(i, k) {
                        for (ro, ra) in &right {
                            let mut objs = lo.clone();
                            objs.push(k);
                            objs.extend_from_slice(ro);
                            let mut idx = la.clone();
                            idx.extend_from_slice(ra);
                            out.push((objs, idx));
                        }
                    }
                }
                out
            }
        }
    }
}

/// The permutation 2-cell from one bracketing of a chain to another.
pub fn rebracket(from: &Bracketing, to: &Bracketing) -> Result<TwoCell, CellError> {
    if from.factors() != to.factors() {
        return Err(CellError::FactorMismatch);
    }
    let src = from.eval()?;
    let tgt = to.eval()?;
    TwoCell::from_fn(src.clone(), tgt.clone(), |i, j| {
        let from_labels = from.labels(i, j);
        let position: HashMap<Label, usize> = to.labels(i, j).into_iter().enumerate().map(|(p, l)| (l, p)).collect();
        let mut p = ComplexMatrix::zeros(tgt.dim(i, j), src.dim(i, j));
        for (col, label) in from_labels.into_iter().enumerate() {
            p[(position[&label], col)] = crate::linalg::ONE;
        }
        p
    })
}

/// `(h∘g)∘f ⇒ h∘(g∘f)`.
pub fn associator(f: &OneCell, g: &OneCell, h: &OneCell) -> Result<TwoCell, CellError> {
    let from = Bracketing::node(
        Bracketing::node(Bracketing::leaf(h), Bracketing::leaf(g)),
        Bracketing::leaf(f),
    );
    let to = Bracketing::node(
        Bracketing::leaf(h),
        Bracketing::node(Bracketing::leaf(g), Bracketing::leaf(f)),
    );
    rebracket(&from, &to)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, ONE};

    fn one(rows: &[&[usize]]) -> OneCell {
        OneCell::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn wl(n: usize) -> OneCell {
        OneCell::new(1, n, vec![1; n]).unwrap()
    }

    fn wr(n: usize) -> OneCell {
        OneCell::new(n, 1, vec![1; n]).unwrap()
    }

    #[test]
    fn hcomp1_examples() {
        assert_eq!(hcomp1(&wr(5), &wl(5)).unwrap().dims(), &[5]);
        let f = one(&[&[1, 2], &[0, 3], &[4, 1]]);
        assert_eq!(hcomp1(&OneCell::identity(3), &f).unwrap(), f);
        assert_eq!(hcomp1(&f, &OneCell::identity(2)).unwrap(), f);
        assert_eq!(hcomp1(&wl(2), &wr(2)).unwrap(), one(&[&[1, 1], &[1, 1]]));
        assert!(matches!(hcomp1(&wl(2), &wl(2)), Err(CellError::ObjectMismatch { .. })));
    }

    #[test]
    fn adjoint1_examples() {
        assert_eq!(wl(4).adjoint(), wr(4));
        let f = one(&[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(f.adjoint(), one(&[&[1, 4], &[2, 5], &[3, 6]]));
        assert_eq!(f.adjoint().adjoint(), f);
    }

    #[test]
    fn identity_2_examples() {
        let id = identity_2(&wl(2));
        assert_eq!(id.entries(), &[ComplexMatrix::scalar(ONE), ComplexMatrix::scalar(ONE)]);
        let z = identity_2(&one(&[&[0, 1]]));
        assert_eq!(z.entry(0, 0).shape(), (0, 0));
    }

    #[test]
    fn identity_one_cell_is_strict_unit_for_two_cells() {
        let f = one(&[&[2, 1], &[0, 3]]);
        let alpha = TwoCell::from_fn(f.clone(), f.clone(), |i, j| {
            let d = f.dim(i, j);
            ComplexMatrix::from_fn(d, d, |a, b| c((a + 2 * b + i) as f64, j as f64))
        })
        .unwrap();
        assert_eq!(whisker_left(&OneCell::identity(2), &alpha).unwrap(), alpha);
        assert_eq!(whisker_right(&alpha, &OneCell::identity(2)).unwrap(), alpha);
    }

    #[test]
    fn vcomp_checks_boundaries() {
        let a = identity_2(&wl(2));
        let b = identity_2(&wl(3));
        assert!(matches!(vcomp(&a, &b), Err(CellError::BoundaryMismatch { .. })));
        assert_eq!(vcomp(&a, &a).unwrap(), a);
    }

    #[test]
    fn new_rejects_bad_entries() {
        let f = one(&[&[2]]);
        let e = TwoCell::new(f.clone(), f, vec![ComplexMatrix::identity(3)]);
        assert!(matches!(e, Err(CellError::EntryShape { .. })));
        let nonparallel = TwoCell::new(wl(2), wr(2), vec![]);
        assert!(matches!(nonparallel, Err(CellError::NotParallel { .. })));
    }

    #[test]
    fn adjunction_cells_for_scalar_dimension_two() {
        let (sigma, tau) = adjunction_cells(&one(&[&[2]]));
        let col = ComplexMatrix::real(&[&[1.0], &[0.0], &[0.0], &[1.0]]);
        assert_eq!(sigma.entry(0, 0), &col);
        assert_eq!(tau.entry(0, 0), &col.transpose());
    }

    #[test]
    fn adjunction_cells_of_identity_are_identities() {
        let (sigma, tau) = adjunction_cells(&OneCell::identity(3));
        let id = identity_2(&OneCell::identity(3));
        assert_eq!(sigma, id);
        assert_eq!(tau, id);
    }

    #[test]
    fn associator_trivial_cases() {
        let a = one(&[&[2]]);
        let b = one(&[&[3]]);
        let assoc = associator(&a, &b, &a).unwrap();
        assert!(assoc.entries().iter().all(|e| *e == ComplexMatrix::identity(e.rows())));
        let chain = associator(&wl(2), &OneCell::identity(2), &wr(2)).unwrap();
        assert_eq!(chain.entry(0, 0), &ComplexMatrix::identity(2));
    }

    /// Direct index formula for the associator of `h∘g∘f`.
    fn associator_oracle(f: &OneCell, g: &OneCell, h: &OneCell) -> Vec<ComplexMatrix> {
        let mut out = Vec::new();
        for i in 0..h.target() {
            for j in 0..f.source() {
                // ((h∘g)∘f)(i,j) = ⊕_l (⊕_k h(i,k) g(k,l)) ⊗ f(l,j), order (l, k, a, b, c)
                let mut src = Vec::new();
                for l in 0..g.source() {
                    for k in 0..h.source() {
                        for a in 0..h.dim(i, k) {
                            for b in 0..g.dim(k, l) {
                                for cc in 0..f.dim(l, j) {
                                    src.push((k, l, a, b, cc));
                                }
                            }
                        }
                    }
                }
                // (h∘(g∘f))(i,j) = ⊕_k h(i,k) ⊗ (⊕_l g(k,l) f(l,j)), order (k, a, l, b, c)
                let mut tgt = Vec::new();
                for k in 0..h.source() {
                    for a in 0..h.dim(i, k) {
                        for l in 0..g.source() {
                            for b in 0..g.dim(k, l) {
                                for cc in 0..f.dim(l, j) {
                                    tgt.push((k, l, a, b, cc));
                                }
                            }
                        }
                    }
                }
                let mut p = ComplexMatrix::zeros(tgt.len(), src.len());
                for (col, lab) in src.iter().enumerate() {
                    let row = tgt.iter().position(|t| t == lab).unwrap();
                    p[(row, col)] = ONE;
                }
                out.push(p);
            }
        }
        out
    }

    #[test]
    fn associator_matches_index_formula() {
        let f = one(&[&[1, 2], &[2, 0]]);
        let g = one(&[&[2, 1], &[1, 1], &[0, 3]]);
        let h = one(&[&[1, 2, 1]]);
        let assoc = associator(&f, &g, &h).unwrap();
        assert_eq!(assoc.entries(), associator_oracle(&f, &g, &h).as_slice());
        assert!(assoc.entries().iter().any(|e| *e != ComplexMatrix::identity(e.rows())));
    }

    #[test]
    fn rebracket_rejects_different_factors() {
        let a = Bracketing::leaf(&wl(2));
        let b = Bracketing::leaf(&wl(3));
        assert_eq!(rebracket(&a, &b), Err(CellError::FactorMismatch));
    }

    #[test]
    fn vcomp_chain_order() {
        let f = one(&[&[2]]);
        let x = TwoCell::new(
            f.clone(),
            f.clone(),
            vec![ComplexMatrix::real(&[&[0.0, 1.0], &[1.0, 0.0]])],
        )
        .unwrap();
        let z = TwoCell::new(f.clone(), f, vec![ComplexMatrix::real(&[&[1.0, 0.0], &[0.0, -1.0]])]).unwrap();
        let xz = vcomp_chain(&[x.clone(), z.clone()]).unwrap();
        assert_eq!(xz.entry(0, 0), &(x.entry(0, 0) * z.entry(0, 0)));
    }
}
