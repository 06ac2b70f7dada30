//! Named 1-cells and 2-cells: witnesses, classical data operations,
//! measurements, controlled operations and the qubit Bell kit.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::cell::{dagger2, hcomp1, CellError, OneCell, TwoCell};
use crate::linalg::{c, ComplexMatrix, DEFAULT_TOL, NULLSPACE_TOL, ONE};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum GenError {
    #[error("size must be at least 1")]
    ZeroSize,
    #[error("vectors are not orthonormal (Gram error {0:.3e})")]
    NotOrthonormal(f64),
    #[error("vector {index} has shape {shape:?}, expected a column of length {dim}")]
    BadVector {
        index: usize,
        dim: usize,
        shape: (usize, usize),
    },
    #[error("invalid projector family: {0}")]
    BadProjectors(String),
    #[error("maps must all be square of the same size")]
    Ragged,
    #[error("phase at ({i},{j}) has modulus {modulus}")]
    NotUnimodular { i: usize, j: usize, modulus: f64 },
    #[error(transparent)]
    Cell(#[from] CellError),
}

/// An ordered orthonormal basis of `C^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthonormalBasis {
    dim: usize,
    vectors: Vec<ComplexMatrix>,
}

impl OrthonormalBasis {
    pub fn new(vectors: Vec<ComplexMatrix>, tol: f64) -> Result<Self, GenError> {
        let dim = vectors.len();
        if dim == 0 {
            return Err(GenError::ZeroSize);
        }
        for (index, v) in vectors.iter().enumerate() {
            if v.shape() != (dim, 1) {
                return Err(GenError::BadVector {
                    index,
                    dim,
                    shape: v.shape(),
                });
            }
        }
        let basis = Self { dim, vectors };
        let u = basis.unitary();
        let err = (&u.dagger() * &u)
            .max_abs_diff(&ComplexMatrix::identity(dim))
            .unwrap_or(f64::INFINITY);
        if err > tol {
            return Err(GenError::NotOrthonormal(err));
        }
        Ok(basis)
    }

    /// Columns of `u`.
    pub fn from_columns(u: &ComplexMatrix, tol: f64) -> Result<Self, GenError> {
        Self::new((0..u.cols()).map(|j| u.col(j)).collect(), tol)
    }

    pub fn computational(d: usize) -> Result<Self, GenError> {
        Self::from_columns(&ComplexMatrix::identity(d), 0.0)
    }

    /// `|+>, |->`.
    pub fn plus_minus() -> Self {
        Self::from_columns(&hadamard(), DEFAULT_TOL).expect("hadamard is unitary")
    }

    /// Fourier basis `|k> = (1/√d) Σ_j ω^{jk} |j>`; equals `plus_minus` for `d = 2`.
    pub fn fourier(d: usize) -> Result<Self, GenError> {
        if d == 0 {
            return Err(GenError::ZeroSize);
        }
        let s = 1.0 / (d as f64).sqrt();
        let u = ComplexMatrix::from_fn(d, d, |j, k| root_of_unity(j * k, d) * s);
        Self::from_columns(&u, 1e-12)
    }

    /// `(|00>±|11>)/√2, (|01>±|10>)/√2` in the order matching the Bell measurement rows.
    pub fn bell() -> Self {
        Self::from_columns(&bell_matrix().dagger(), DEFAULT_TOL).expect("Bell basis is orthonormal")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[ComplexMatrix] {
        &self.vectors
    }

    /// The unitary whose columns are the basis vectors.
    pub fn unitary(&self) -> ComplexMatrix {
        ComplexMatrix::hstack(&self.vectors, self.dim)
    }
}

/// An ordered complete family of mutually orthogonal projectors on `C^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectorFamily {
    dim: usize,
    projectors: Vec<ComplexMatrix>,
}

impl ProjectorFamily {
    pub fn new(projectors: Vec<ComplexMatrix>, tol: f64) -> Result<Self, GenError> {
        let bad = |m: String| Err(GenError::BadProjectors(m));
        let Some(first) = projectors.first() else {
            return bad("empty family".into());
        };
        let dim = first.rows();
        if dim == 0 {
            return bad("ambient dimension is 0".into());
        }
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for (i, p) in projectors.iter().enumerate() {
            if p.shape() != (dim, dim) {
                return bad(format!("projector {i} has shape {:?}", p.shape()));
            }
            if !(p * p).approx_eq(p, tol) || !p.dagger().approx_eq(p, tol) {
                return bad(format!("projector {i} is not an orthogonal projector"));
            }
            for (j, q) in projectors.iter().enumerate().skip(i + 1) {
                if (p * q).max_abs() > tol {
                    return bad(format!("projectors {i} and {j} are not orthogonal"));
                }
            }
            sum = &sum + p;
        }
        if !sum.approx_eq(&ComplexMatrix::identity(dim), tol) {
            return bad("projectors do not sum to the identity".into());
        }
        Ok(Self { dim, projectors })
    }

    /// Rank-one projectors onto the vectors of a basis.
    pub fn from_basis(b: &OrthonormalBasis) -> Self {
        let projectors = b.vectors().iter().map(|v| v * &v.dagger()).collect();
        Self {
            dim: b.dim(),
            projectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    /// Orthonormal basis of the image of each projector, as columns.
    pub fn image_bases(&self) -> Vec<ComplexMatrix> {
        let id = ComplexMatrix::identity(self.dim);
        self.projectors
            .iter()
            .map(|p| (&id - p).nullspace_basis(NULLSPACE_TOL.max(1e-9)))
            .collect()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.image_bases().iter().map(ComplexMatrix::cols).collect()
    }
}

/// `Hilb -> Hilb^n`, the column of `n` copies of `C`.
pub fn witness_left(n: usize) -> Result<OneCell, GenError> {
    if n == 0 {
        return Err(GenError::ZeroSize);
    }
    Ok(OneCell::new(1, n, vec![1; n])?)
}

/// `Hilb^n -> Hilb`, the row of `n` copies of `C`.
pub fn witness_right(n: usize) -> Result<OneCell, GenError> {
    Ok(witness_left(n)?.adjoint())
}

/// The endofunctor `- ⊗ C^d` of `Hilb`.
pub fn qudit(d: usize) -> OneCell {
    OneCell::new(1, 1, vec![d]).expect("1x1 cell")
}

/// `id_{Hilb^n} ⇒ W_L(n)∘W_R(n)`.
pub fn copy(n: usize) -> Result<TwoCell, GenError> {
    let wl = witness_left(n)?;
    let target = hcomp1(&wl, &wl.adjoint())?;
    Ok(TwoCell::from_fn(OneCell::identity(n), target, |i, j| {
        if i == j {
            ComplexMatrix::scalar(ONE)
        } else {
            ComplexMatrix::zeros(1, 0)
        }
    })?)
}

pub fn compare(n: usize) -> Result<TwoCell, GenError> {
    Ok(dagger2(&copy(n)?))
}

/// `id_Hilb ⇒ W_R(n)∘W_L(n)`.
pub fn create(n: usize) -> Result<TwoCell, GenError> {
    let wl = witness_left(n)?;
    let target = hcomp1(&wl.adjoint(), &wl)?;
    Ok(TwoCell::new(
        OneCell::identity(1),
        target,
        vec![ComplexMatrix::from_fn(n, 1, |_, _| ONE)],
    )?)
}

pub fn delete(n: usize) -> Result<TwoCell, GenError> {
    Ok(dagger2(&create(n)?))
}

/// `Q_d ⇒ W_R(d)∘W_L(d)`; row `i` of the entry is `<b_i|`.
pub fn nondegenerate_measurement(b: &OrthonormalBasis) -> TwoCell {
    let d = b.dim();
    let wl = witness_left(d).expect("basis is non-empty");
    let target = hcomp1(&wl.adjoint(), &wl).expect("witnesses compose");
    TwoCell::new(qudit(d), target, vec![b.unitary().dagger()]).expect("measurement shapes")
}

/// `Q_d ⇒ W_R(n)∘T` where `T: Hilb -> Hilb^n` has entry `k` equal to the image of `P_k`.
pub fn projective_measurement(p: &ProjectorFamily) -> TwoCell {
    let images = p.image_bases();
    let n = images.len();
    let t = OneCell::new(1, n, images.iter().map(ComplexMatrix::cols).collect()).expect("column cell");
    let target = hcomp1(&witness_right(n).expect("non-empty"), &t).expect("witness composes");
    let rows: Vec<ComplexMatrix> = images.iter().map(ComplexMatrix::dagger).collect();
    let entry = ComplexMatrix::vstack(&rows, p.dim());
    TwoCell::new(qudit(p.dim()), target, vec![entry]).expect("measurement shapes")
}

/// Endomorphism of `W_L(n)∘Q_d` applying `maps[k]` on branch `k`.
pub fn controlled_operation(maps: &[ComplexMatrix]) -> Result<TwoCell, GenError> {
    let n = maps.len();
    let d = maps.first().ok_or(GenError::ZeroSize)?.rows();
    if maps.iter().any(|m| m.shape() != (d, d)) {
        return Err(GenError::Ragged);
    }
    let f = hcomp1(&witness_left(n)?, &qudit(d))?;
    Ok(TwoCell::new(f.clone(), f, maps.to_vec())?)
}

/// Endomorphism of `W_L(n)∘W_R(m)` multiplying branch `(i,j)` by `phases[i][j]`.
pub fn controlled_phase(phases: &ComplexMatrix, tol: f64) -> Result<TwoCell, GenError> {
    let (n, m) = phases.shape();
    for i in 0..n {
        for j in 0..m {
            let modulus = phases[(i, j)].norm();
            if (modulus - 1.0).abs() > tol {
                return Err(GenError::NotUnimodular { i, j, modulus });
            }
        }
    }
    let f = hcomp1(&witness_left(n)?, &witness_right(m)?)?;
    Ok(TwoCell::from_fn(f.clone(), f, |i, j| {
        ComplexMatrix::scalar(phases[(i, j)])
    })?)
}

/// `id_Hilb ⇒ Q_d∘Q_d` with entry `(1/√d) Σ_i |ii>`.
pub fn bell_state(d: usize) -> Result<TwoCell, GenError> {
    if d == 0 {
        return Err(GenError::ZeroSize);
    }
    let entry = crate::cell::cup(d).scale(c(1.0 / (d as f64).sqrt(), 0.0));
    Ok(TwoCell::new(
        OneCell::identity(1),
        hcomp1(&qudit(d), &qudit(d))?,
        vec![entry],
    )?)
}

/// `exp(2πik/d)`, with components that vanish up to rounding set to exactly 0.
pub fn root_of_unity(k: usize, d: usize) -> Complex64 {
    let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k % d) as f64 / d as f64);
    let snap = |x: f64| if x.abs() < 1e-15 { 0.0 } else { x };
    c(snap(z.re), snap(z.im))
}

fn hadamard() -> ComplexMatrix {
    ComplexMatrix::real(&[&[1.0, 1.0], &[1.0, -1.0]]).scale(c(FRAC_1_SQRT_2, 0.0))
}

fn bell_matrix() -> ComplexMatrix {
    ComplexMatrix::real(&[
        &[1.0, 0.0, 0.0, 1.0],
        &[1.0, 0.0, 0.0, -1.0],
        &[0.0, 1.0, 1.0, 0.0],
        &[0.0, 1.0, -1.0, 0.0],
    ])
    .scale(c(FRAC_1_SQRT_2, 0.0))
}

/// `Q_2∘Q_2 ⇒ W_R(4)∘W_L(4)`, measurement in the Bell basis.
pub fn bell_measurement() -> TwoCell {
    nondegenerate_measurement(&OrthonormalBasis::bell())
}

/// The four qubit corrections `I, Z, X, ZX`.
pub fn pauli_kit() -> Vec<ComplexMatrix> {
    weyl_kit(2)
}

/// Endomorphism of `W_L(4)∘Q_2` applying the Pauli corrections.
pub fn bell_corrections() -> TwoCell {
    controlled_operation(&pauli_kit()).expect("four 2x2 maps")
}

/// Shift-and-clock operators: entry `a*d + b` is `Z^b X^a`.
pub fn weyl_kit(d: usize) -> Vec<ComplexMatrix> {
    let x = ComplexMatrix::from_fn(d, d, |i, j| if i == (j + 1) % d { ONE } else { c(0.0, 0.0) });
    let z = ComplexMatrix::from_fn(d, d, |i, j| if i == j { root_of_unity(i, d) } else { c(0.0, 0.0) });
    let pow = |m: &ComplexMatrix, k: usize| (0..k).fold(ComplexMatrix::identity(d), |acc, _| &acc * m);
    let mut kit = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            kit.push(&pow(&z, b) * &pow(&x, a));
        }
    }
    kit
}

/// The measurement paired with a correction kit `U_0..U_{n-1}` on `C^d`:
/// row `k` is `conj(vec U_k)/√d`, with `vec` flattening row-major.
/// Typed `Q_d∘Q_d ⇒ W_R(n)∘W_L(n)`.
pub fn matched_measurement(kit: &[ComplexMatrix]) -> Result<TwoCell, GenError> {
    let n = kit.len();
    let d = kit.first().ok_or(GenError::ZeroSize)?.rows();
    if kit.iter().any(|m| m.shape() != (d, d)) {
        return Err(GenError::Ragged);
    }
    let s = 1.0 / (d as f64).sqrt();
    let entry = ComplexMatrix::from_fn(n, d * d, |k, idx| kit[k].data()[idx].conj() * s);
    let wl = witness_left(n)?;
    Ok(TwoCell::new(
        hcomp1(&qudit(d), &qudit(d))?,
        hcomp1(&wl.adjoint(), &wl)?,
        vec![entry],
    )?)
}

/// The four witness snake composites for `n`, each paired with the identity it should equal.
pub fn witness_snakes(n: usize) -> Result<Vec<(&'static str, TwoCell, TwoCell)>, GenError> {
    use crate::cell::{identity_2, rebracket, vcomp_chain, whisker_left, whisker_right, Bracketing};
    let wl = witness_left(n)?;
    let wr = wl.adjoint();
    let (l, r) = (Bracketing::leaf(&wl), Bracketing::leaf(&wr));
    let node = |a: &Bracketing, b: &Bracketing| Bracketing::node(a.clone(), b.clone());
    let (cp, cm, cr, dl) = (copy(n)?, compare(n)?, create(n)?, delete(n)?);
    let yank1 = vcomp_chain(&[
        whisker_right(&cm, &wl)?,
        rebracket(&node(&l, &node(&r, &l)), &node(&node(&l, &r), &l))?,
        whisker_left(&wl, &cr)?,
    ])?;
    let yank2 = vcomp_chain(&[
        whisker_left(&wr, &cm)?,
        rebracket(&node(&node(&r, &l), &r), &node(&r, &node(&l, &r)))?,
        whisker_right(&cr, &wr)?,
    ])?;
    let yank3 = vcomp_chain(&[
        whisker_right(&dl, &wr)?,
        rebracket(&node(&r, &node(&l, &r)), &node(&node(&r, &l), &r))?,
        whisker_left(&wr, &cp)?,
    ])?;
    let yank4 = vcomp_chain(&[
        whisker_left(&wl, &dl)?,
        rebracket(&node(&node(&l, &r), &l), &node(&l, &node(&r, &l)))?,
        whisker_right(&cp, &wl)?,
    ])?;
    Ok(vec![
        ("compare-create", yank1, identity_2(&wl)),
        ("compare-create-right", yank2, identity_2(&wr)),
        ("delete-copy", yank3, identity_2(&wr)),
        ("delete-copy-left", yank4, identity_2(&wl)),
    ])
}

/// `compare(n)·copy(n)` and the identity it should equal.
pub fn hole_deletion(n: usize) -> Result<(TwoCell, TwoCell), GenError> {
    let hole = crate::cell::vcomp(&compare(n)?, &copy(n)?)?;
    Ok((hole, crate::cell::identity_2(&OneCell::identity(n))))
}
