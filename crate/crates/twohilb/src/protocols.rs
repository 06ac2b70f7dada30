//! Protocol equations and horizontal invertibility.
//!
//! Every composite below is written as a vertical chain, top first, with
//! explicit rebracketing cells between steps whose bracketings differ.
//! `W_L`, `W_R` are the witnesses for `n` outcomes and `Q` is `Q_d`.
//!
//! Teleportation, from `Q` to `W_R∘(W_L∘Q)`:
//! `(W_R ∘ U) · (M ∘ Q) · (Q ∘ ψ)`, compared with `create(n) ∘ Q`.
//!
//! Dense coding, from `W_L` to `(W_L∘W_R)∘W_L`:
//! `(W_L ∘ M) · (U ∘ Q) · (W_L ∘ ψ)`, compared with `copy(n) ∘ W_L`.
//!
//! Both sides are compared after fitting a single complex scalar.

use num_complex::Complex64;

use crate::algebra::{basis_frobenius, AlgebraError};
use crate::cell::{
    adjunction_cells, dagger2, hcomp1, hcomp2, identity_2, rebracket, scalar_mul, vcomp_chain, whisker_left,
    whisker_right, Bracketing, CellError, OneCell, TwoCell,
};
use crate::generators::{
    controlled_phase, copy, create, delete, nondegenerate_measurement, qudit, witness_left, GenError, OrthonormalBasis,
};
use crate::linalg::{c, ComplexMatrix};
use crate::report::CheckReport;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum ProtocolError {
    #[error("{what}: expected {expected}, got {actual}")]
    Shape {
        what: &'static str,
        expected: String,
        actual: String,
    },
    #[error("bases have different dimensions ({0} and {1})")]
    DimensionMismatch(usize, usize),
    #[error(transparent)]
    Cell(#[from] CellError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn expect_boundary(what: &'static str, actual: &OneCell, expected: &OneCell) -> Result<(), ProtocolError> {
    if actual != expected {
        return Err(ProtocolError::Shape {
            what,
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }
    Ok(())
}

fn leaf(f: &OneCell) -> Bracketing {
    Bracketing::leaf(f)
}

fn node(l: Bracketing, r: Bracketing) -> Bracketing {
    Bracketing::node(l, r)
}

/// A 1-cell presented as the composite `left ∘ right`.
#[derive(Clone, Debug, PartialEq)]
pub struct LegSplit {
    pub left: OneCell,
    pub right: OneCell,
}

impl LegSplit {
    pub fn new(left: &OneCell, right: &OneCell) -> Self {
        Self {
            left: left.clone(),
            right: right.clone(),
        }
    }

    pub fn composite(&self) -> Result<OneCell, CellError> {
        hcomp1(&self.left, &self.right)
    }
}

fn check_split(alpha: &TwoCell, top: &LegSplit, bottom: &LegSplit) -> Result<(), ProtocolError> {
    expect_boundary("source split", alpha.source(), &top.composite()?)?;
    expect_boundary("target split", alpha.target(), &bottom.composite()?)
}

/// For `alpha: H∘J ⇒ F∘G`, the composite `F†∘H ⇒ G∘J†` obtained by bending
/// `J` up on the right and `F` down on the left.
pub fn bend(alpha: &TwoCell, top: &LegSplit, bottom: &LegSplit) -> Result<TwoCell, ProtocolError> {
    check_split(alpha, top, bottom)?;
    let (h, j) = (&top.left, &top.right);
    let (f, g) = (&bottom.left, &bottom.right);
    let (fd, jd) = (f.adjoint(), j.adjoint());
    let (cup_j, _) = adjunction_cells(&jd);
    let (_, cap_f) = adjunction_cells(&fd);
    Ok(vcomp_chain(&[
        whisker_right(&cap_f, &hcomp1(g, &jd)?)?,
        rebracket(
            &node(leaf(&fd), node(node(leaf(f), leaf(g)), leaf(&jd))),
            &node(node(leaf(&fd), leaf(f)), node(leaf(g), leaf(&jd))),
        )?,
        whisker_left(&fd, &whisker_right(alpha, &jd)?)?,
        rebracket(
            &node(node(leaf(&fd), leaf(h)), node(leaf(j), leaf(&jd))),
            &node(leaf(&fd), node(node(leaf(h), leaf(j)), leaf(&jd))),
        )?,
        whisker_left(&hcomp1(&fd, h)?, &cup_j)?,
    ])?)
}

/// For `alpha: H∘J ⇒ F∘G`, the composite `J∘G† ⇒ H†∘F` obtained by bending
/// `H` up on the left and `G` down on the right.
pub fn bend_other(alpha: &TwoCell, top: &LegSplit, bottom: &LegSplit) -> Result<TwoCell, ProtocolError> {
    check_split(alpha, top, bottom)?;
    let (h, j) = (&top.left, &top.right);
    let (f, g) = (&bottom.left, &bottom.right);
    let (hd, gd) = (h.adjoint(), g.adjoint());
    let (cup_h, _) = adjunction_cells(h);
    let (_, cap_g) = adjunction_cells(g);
    Ok(vcomp_chain(&[
        whisker_left(&hcomp1(&hd, f)?, &cap_g)?,
        rebracket(
            &node(leaf(&hd), node(node(leaf(f), leaf(g)), leaf(&gd))),
            &node(node(leaf(&hd), leaf(f)), node(leaf(g), leaf(&gd))),
        )?,
        whisker_left(&hd, &whisker_right(alpha, &gd)?)?,
        rebracket(
            &node(node(leaf(&hd), leaf(h)), node(leaf(j), leaf(&gd))),
            &node(leaf(&hd), node(node(leaf(h), leaf(j)), leaf(&gd))),
        )?,
        whisker_right(&cup_h, &hcomp1(j, &gd)?)?,
    ])?)
}

/// Every entry square with smallest singular value above `tol`.
pub fn is_vertically_invertible(alpha: &TwoCell, tol: f64) -> bool {
    alpha
        .entries()
        .iter()
        .all(|e| e.is_square() && e.singular_values().last().is_none_or(|&s| s > tol))
}

pub fn is_horizontally_invertible(
    alpha: &TwoCell,
    top: &LegSplit,
    bottom: &LegSplit,
    tol: f64,
) -> Result<bool, ProtocolError> {
    Ok(is_vertically_invertible(&bend(alpha, top, bottom)?, tol))
}

pub fn is_horizontally_unitary(
    alpha: &TwoCell,
    top: &LegSplit,
    bottom: &LegSplit,
    tol: f64,
) -> Result<bool, ProtocolError> {
    Ok(bend(alpha, top, bottom)?.is_vertically_unitary(tol))
}

/// The positive `c` with `c·alpha` horizontally unitary, if one exists.
pub fn horizontally_unitary_scale(
    alpha: &TwoCell,
    top: &LegSplit,
    bottom: &LegSplit,
    tol: f64,
) -> Result<Option<f64>, ProtocolError> {
    let bent = bend(alpha, top, bottom)?;
    let Some(probe) = bent.entries().iter().find(|e| e.cols() > 0) else {
        return Ok(Some(1.0));
    };
    let lambda = (&probe.dagger() * probe).trace().re / probe.cols() as f64;
    if lambda <= tol {
        return Ok(None);
    }
    let c = 1.0 / lambda.sqrt();
    let scaled = scalar_mul(Complex64::new(c, 0.0), &bent);
    Ok(scaled.is_vertically_unitary(tol).then_some(c))
}

/// Splits used for measurements `Q∘Q ⇒ W_R∘W_L`.
pub fn measurement_splits(n: usize, d: usize) -> Result<(LegSplit, LegSplit), ProtocolError> {
    let wl = witness_left(n)?;
    Ok((LegSplit::new(&qudit(d), &qudit(d)), LegSplit::new(&wl.adjoint(), &wl)))
}

/// Splits used for controlled operations on `W_L∘Q`.
pub fn correction_splits(n: usize, d: usize) -> Result<(LegSplit, LegSplit), ProtocolError> {
    let split = LegSplit::new(&witness_left(n)?, &qudit(d));
    Ok((split.clone(), split))
}

/// `(n, d)` for a correction endomorphism of `W_L(n)∘Q_d`.
fn correction_shape(correction: &TwoCell) -> Result<(usize, usize), ProtocolError> {
    let f = correction.source();
    let bad = || ProtocolError::Shape {
        what: "correction",
        expected: "endomorphism of W_L(n)∘Q_d".into(),
        actual: format!("{} => {}", correction.source(), correction.target()),
    };
    if f.source() != 1 || !correction.is_endomorphism() {
        return Err(bad());
    }
    let d = f.dim(0, 0);
    if f.dims().iter().any(|&x| x != d) {
        return Err(bad());
    }
    Ok((f.target(), d))
}

fn check_kit(
    measurement: &TwoCell,
    correction: &TwoCell,
    n: usize,
) -> Result<(OneCell, OneCell, usize), ProtocolError> {
    let (outcomes, d) = correction_shape(correction)?;
    if outcomes != n {
        return Err(ProtocolError::Shape {
            what: "correction outcomes",
            expected: n.to_string(),
            actual: outcomes.to_string(),
        });
    }
    let wl = witness_left(n)?;
    let q = qudit(d);
    expect_boundary("measurement source", measurement.source(), &hcomp1(&q, &q)?)?;
    expect_boundary("measurement target", measurement.target(), &hcomp1(&wl.adjoint(), &wl)?)?;
    Ok((wl, q, d))
}

/// Left and right sides of the teleportation equation.
pub fn teleportation_sides(
    measurement: &TwoCell,
    correction: &TwoCell,
    n: usize,
) -> Result<(TwoCell, TwoCell), ProtocolError> {
    let (wl, q, d) = check_kit(measurement, correction, n)?;
    let wr = wl.adjoint();
    let psi = crate::generators::bell_state(d)?;
    let lhs = vcomp_chain(&[
        rebracket(
            &node(leaf(&wr), node(leaf(&wl), leaf(&q))),
            &node(node(leaf(&wr), leaf(&wl)), leaf(&q)),
        )?,
        whisker_left(&wr, correction)?,
        rebracket(
            &node(node(leaf(&wr), leaf(&wl)), leaf(&q)),
            &node(leaf(&wr), node(leaf(&wl), leaf(&q))),
        )?,
        whisker_right(measurement, &q)?,
        rebracket(
            &node(leaf(&q), node(leaf(&q), leaf(&q))),
            &node(node(leaf(&q), leaf(&q)), leaf(&q)),
        )?,
        whisker_left(&q, &psi)?,
    ])?;
    let rhs = whisker_right(&create(n)?, &q)?;
    Ok((lhs, rhs))
}

/// Passes when the left side is `s·(create ∘ Q)` with `s = 1/√n`.
pub fn check_teleportation(
    measurement: &TwoCell,
    correction: &TwoCell,
    n: usize,
    tol: f64,
) -> Result<CheckReport, ProtocolError> {
    let (lhs, rhs) = teleportation_sides(measurement, correction, n)?;
    let expected = c(1.0 / (n as f64).sqrt(), 0.0);
    Ok(CheckReport::fitted("teleportation", &lhs, &rhs, expected, tol))
}

/// The equation holds and both cells are physical (vertically unitary).
///
/// The equation alone is satisfied by any kit of unitaries paired with its
/// matched row family, whether or not those rows form a measurement.
pub fn teleportation_solves(
    measurement: &TwoCell,
    correction: &TwoCell,
    n: usize,
    tol: f64,
) -> Result<bool, ProtocolError> {
    let report = check_teleportation(measurement, correction, n, tol)?;
    Ok(report.passed && measurement.is_vertically_unitary(tol) && correction.is_vertically_unitary(tol))
}

/// Dense coding counterpart of [`teleportation_solves`].
pub fn dense_coding_solves(
    correction: &TwoCell,
    measurement: &TwoCell,
    n: usize,
    tol: f64,
) -> Result<bool, ProtocolError> {
    let report = check_dense_coding(correction, measurement, n, tol)?;
    Ok(report.passed && measurement.is_vertically_unitary(tol) && correction.is_vertically_unitary(tol))
}

/// Left and right sides of the dense coding equation.
pub fn dense_coding_sides(
    correction: &TwoCell,
    measurement: &TwoCell,
    n: usize,
) -> Result<(TwoCell, TwoCell), ProtocolError> {
    let (wl, q, d) = check_kit(measurement, correction, n)?;
    let wr = wl.adjoint();
    let psi = crate::generators::bell_state(d)?;
    let lhs = vcomp_chain(&[
        rebracket(
            &node(leaf(&wl), node(leaf(&wr), leaf(&wl))),
            &node(node(leaf(&wl), leaf(&wr)), leaf(&wl)),
        )?,
        whisker_left(&wl, measurement)?,
        rebracket(
            &node(node(leaf(&wl), leaf(&q)), leaf(&q)),
            &node(leaf(&wl), node(leaf(&q), leaf(&q))),
        )?,
        whisker_right(correction, &q)?,
        rebracket(
            &node(leaf(&wl), node(leaf(&q), leaf(&q))),
            &node(node(leaf(&wl), leaf(&q)), leaf(&q)),
        )?,
        whisker_left(&wl, &psi)?,
    ])?;
    let rhs = whisker_right(&copy(n)?, &wl)?;
    Ok((lhs, rhs))
}

/// Passes when the left side is exactly `copy ∘ W_L` (fitted `s = 1`).
pub fn check_dense_coding(
    correction: &TwoCell,
    measurement: &TwoCell,
    n: usize,
    tol: f64,
) -> Result<CheckReport, ProtocolError> {
    let (lhs, rhs) = dense_coding_sides(correction, measurement, n)?;
    Ok(CheckReport::fitted("dense-coding", &lhs, &rhs, c(1.0, 0.0), tol))
}

fn same_dim(red: &OrthonormalBasis, green: &OrthonormalBasis) -> Result<usize, ProtocolError> {
    if red.dim() != green.dim() {
        return Err(ProtocolError::DimensionMismatch(red.dim(), green.dim()));
    }
    Ok(red.dim())
}

/// Measure red, copy the outcome, re-prepare red, measure green:
/// `Q ⇒ (W_R∘W_L)∘(W_R∘W_L)`, red record on the left, green on the right.
pub fn measure_copy_remeasure(red: &OrthonormalBasis, green: &OrthonormalBasis) -> Result<TwoCell, ProtocolError> {
    let n = same_dim(red, green)?;
    let wl = witness_left(n)?;
    let wr = wl.adjoint();
    let loop_ = hcomp1(&wr, &wl)?;
    let m_r = nondegenerate_measurement(red);
    let m_g = nondegenerate_measurement(green);
    Ok(vcomp_chain(&[
        whisker_left(&loop_, &m_g)?,
        whisker_left(&loop_, &dagger2(&m_r))?,
        rebracket(
            &node(node(leaf(&wr), node(leaf(&wl), leaf(&wr))), leaf(&wl)),
            &node(node(leaf(&wr), leaf(&wl)), node(leaf(&wr), leaf(&wl))),
        )?,
        whisker_right(&whisker_left(&wr, &copy(n)?)?, &wl)?,
        m_r,
    ])?)
}

/// `(W_R ∘ φ ∘ W_L) · (M_red ∘ create)`, the unscaled right side of the
/// physical complementarity equation.
pub fn complementarity_rhs(red: &OrthonormalBasis, phi: &TwoCell) -> Result<TwoCell, ProtocolError> {
    let n = red.dim();
    let wl = witness_left(n)?;
    let wr = wl.adjoint();
    let pairs = node(node(leaf(&wr), leaf(&wl)), node(leaf(&wr), leaf(&wl)));
    let middle = node(leaf(&wr), node(node(leaf(&wl), leaf(&wr)), leaf(&wl)));
    Ok(vcomp_chain(&[
        rebracket(&middle, &pairs)?,
        whisker_left(&wr, &whisker_right(phi, &wl)?)?,
        rebracket(&pairs, &middle)?,
        hcomp2(&nondegenerate_measurement(red), &create(n)?)?,
    ])?)
}

/// Passes when measuring red, copying and measuring green equals
/// `(1/√n)·(W_R∘φ∘W_L)·(M_red∘create)`.
pub fn check_complementarity_physical(
    red: &OrthonormalBasis,
    green: &OrthonormalBasis,
    phi: &TwoCell,
    tol: f64,
) -> Result<CheckReport, ProtocolError> {
    let n = same_dim(red, green)?;
    let lhs = measure_copy_remeasure(red, green)?;
    let rhs = complementarity_rhs(red, phi)?;
    let expected = c(1.0 / (n as f64).sqrt(), 0.0);
    Ok(CheckReport::fitted(
        "complementarity-physical",
        &lhs,
        &rhs,
        expected,
        tol,
    ))
}

/// Reads `φ_ij = √n·<i,j| LHS |r_i>` off the measured composite; `None`
/// unless every candidate has unit modulus within `tol`.
pub fn find_controlled_phase(
    red: &OrthonormalBasis,
    green: &OrthonormalBasis,
    tol: f64,
) -> Result<Option<ComplexMatrix>, ProtocolError> {
    let n = same_dim(red, green)?;
    let lhs = measure_copy_remeasure(red, green)?;
    let entry = lhs.entry(0, 0);
    let scale = (n as f64).sqrt();
    let mut phases = ComplexMatrix::zeros(n, n);
    for (i, r) in red.vectors().iter().enumerate() {
        let out = entry * r;
        for j in 0..n {
            phases[(i, j)] = out[(i * n + j, 0)] * scale;
        }
    }
    let unimodular = phases.data().iter().all(|z| (z.norm() - 1.0).abs() <= tol);
    Ok(unimodular.then_some(phases))
}

/// The phase cell when one exists, else `None`.
pub fn controlled_phase_cell(
    red: &OrthonormalBasis,
    green: &OrthonormalBasis,
    tol: f64,
) -> Result<Option<TwoCell>, ProtocolError> {
    match find_controlled_phase(red, green, tol)? {
        Some(p) => Ok(Some(controlled_phase(&p, tol)?)),
        None => Ok(None),
    }
}

/// Scalar-sector form of complementarity: with `μ`, `u` the red and green
/// copying structures, `μ_r·(D⊗1)·μ_g† = (1/n)·u_r·u_g†` where
/// `D = (1⊗u_g†μ_g)·(μ_r†u_r⊗1)`.
pub fn check_complementarity_cd(
    red: &OrthonormalBasis,
    green: &OrthonormalBasis,
    tol: f64,
) -> Result<CheckReport, ProtocolError> {
    let n = same_dim(red, green)?;
    let r = basis_frobenius(red, tol.max(1e-12))?;
    let g = basis_frobenius(green, tol.max(1e-12))?;
    let id = ComplexMatrix::identity(n);
    let cup_r = &r.mult().dagger() * r.unit();
    let cap_g = &g.unit().dagger() * g.mult();
    let d = &id.kron(&cap_g) * &cup_r.kron(&id);
    let lhs = &(r.mult() * &d.kron(&id)) * &g.mult().dagger();
    let rhs = r.unit() * &g.unit().dagger();
    let q = qudit(n);
    let wrap = |m: ComplexMatrix| TwoCell::new(q.clone(), q.clone(), vec![m]);
    let expected = c(1.0 / n as f64, 0.0);
    Ok(CheckReport::fitted(
        "complementarity-cd",
        &wrap(lhs)?,
        &wrap(rhs)?,
        expected,
        tol,
    ))
}

/// Prepare green, measure red, copy, re-prepare red, measure green; no erasure.
/// Maps `W_R∘W_L ⇒ (W_R∘W_L)∘(W_R∘W_L)`.
pub fn unerased_pipeline(red: &OrthonormalBasis, green: &OrthonormalBasis) -> Result<TwoCell, ProtocolError> {
    let prepare = dagger2(&nondegenerate_measurement(green));
    Ok(vcomp_chain(&[measure_copy_remeasure(red, green)?, prepare])?)
}

/// The unerased pipeline followed by deleting the red record.
pub fn erased_pipeline(red: &OrthonormalBasis, green: &OrthonormalBasis) -> Result<TwoCell, ProtocolError> {
    let n = same_dim(red, green)?;
    let wl = witness_left(n)?;
    let loop_ = hcomp1(&wl.adjoint(), &wl)?;
    Ok(vcomp_chain(&[
        whisker_right(&delete(n)?, &loop_)?,
        unerased_pipeline(red, green)?,
    ])?)
}

/// Passes when erasing the red record leaves the identity on the green record.
pub fn check_erasure(red: &OrthonormalBasis, green: &OrthonormalBasis, tol: f64) -> Result<CheckReport, ProtocolError> {
    let n = same_dim(red, green)?;
    let lhs = erased_pipeline(red, green)?;
    let wl = witness_left(n)?;
    let rhs = identity_2(&hcomp1(&wl.adjoint(), &wl)?);
    Ok(CheckReport::fitted("erasure", &lhs, &rhs, c(1.0, 0.0), tol))
}
