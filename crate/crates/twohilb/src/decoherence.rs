//! Environments as classical data types and interactions as comodules.
//!
//! Every map acts on column vectors, tensor factors flattened with `kron`.
//! A classical data type on `E` has `δ: E -> E⊗E` and `ε: E -> C`; an
//! interaction on `S` is `τ: S -> E⊗S`.

use crate::linalg::{ComplexMatrix, ONE, ZERO};
use crate::report::LawReport;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum DecoherenceError {
    #[error("bad shape for {what}: {actual:?}, expected {expected:?}")]
    Shape {
        what: &'static str,
        expected: (usize, usize),
        actual: (usize, usize),
    },
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("interactions use different environments")]
    EnvironmentMismatch,
}

fn expect_shape(what: &'static str, m: &ComplexMatrix, expected: (usize, usize)) -> Result<(), DecoherenceError> {
    if m.shape() != expected {
        return Err(DecoherenceError::Shape {
            what,
            expected,
            actual: m.shape(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalDataType {
    dim: usize,
    delta: ComplexMatrix,
    epsilon: ComplexMatrix,
}

impl ClassicalDataType {
    pub fn new(dim: usize, delta: ComplexMatrix, epsilon: ComplexMatrix) -> Result<Self, DecoherenceError> {
        expect_shape("copying map", &delta, (dim * dim, dim))?;
        expect_shape("deleting map", &epsilon, (1, dim))?;
        Ok(Self { dim, delta, epsilon })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn delta(&self) -> &ComplexMatrix {
        &self.delta
    }

    pub fn epsilon(&self) -> &ComplexMatrix {
        &self.epsilon
    }

    /// Copying and deleting the columns of a unitary `u`.
    pub fn in_basis(u: &ComplexMatrix) -> Result<Self, DecoherenceError> {
        let n = u.rows();
        expect_shape("basis", u, (n, n))?;
        let std = standard_cdt(n);
        let ud = u.dagger();
        Self::new(n, &(&u.kron(u) * &std.delta) * &ud, &std.epsilon * &ud)
    }
}

/// `δ|i> = |ii>`, `ε|i> = 1`.
pub fn standard_cdt(n: usize) -> ClassicalDataType {
    let delta = ComplexMatrix::from_fn(n * n, n, |r, i| if r == i * n + i { ONE } else { ZERO });
    let epsilon = ComplexMatrix::from_fn(1, n, |_, _| ONE);
    ClassicalDataType { dim: n, delta, epsilon }
}

/// Laws `coassoc`, `counit`, `cocomm`.
pub fn check_comonoid(c: &ClassicalDataType, tol: f64) -> LawReport {
    let id = ComplexMatrix::identity(c.dim);
    let d = &c.delta;
    let mut r = LawReport::default();
    r.push("coassoc", &(&d.kron(&id) * d), &(&id.kron(d) * d), tol);
    let left = &c.epsilon.kron(&id) * d;
    let right = &id.kron(&c.epsilon) * d;
    let residual = left
        .max_abs_diff(&id)
        .unwrap_or(f64::INFINITY)
        .max(right.max_abs_diff(&id).unwrap_or(f64::INFINITY));
    r.laws.push(crate::report::LawCheck {
        name: "counit",
        residual,
        passed: residual <= tol,
    });
    r.push("cocomm", &(&ComplexMatrix::tensor_swap(c.dim, c.dim) * d), d, tol);
    r
}

/// Comonoid laws plus `frobenius` (both sides) and `special`.
pub fn check_classical_structure(c: &ClassicalDataType, tol: f64) -> LawReport {
    let mut r = check_comonoid(c, tol);
    let id = ComplexMatrix::identity(c.dim);
    let d = &c.delta;
    let dd = d.dagger();
    let middle = d * &dd;
    let left = &dd.kron(&id) * &id.kron(d);
    let right = &id.kron(&dd) * &d.kron(&id);
    let residual = left
        .max_abs_diff(&middle)
        .unwrap_or(f64::INFINITY)
        .max(right.max_abs_diff(&middle).unwrap_or(f64::INFINITY));
    r.laws.push(crate::report::LawCheck {
        name: "frobenius",
        residual,
        passed: residual <= tol,
    });
    r.push("special", &(&dd * d), &id, tol);
    r
}

/// A system `S` with an interaction `τ: S -> E⊗S`.
#[derive(Clone, Debug, PartialEq)]
pub struct InteractionSystem {
    sys_dim: usize,
    env: ClassicalDataType,
    tau: ComplexMatrix,
}

impl InteractionSystem {
    pub fn new(sys_dim: usize, env: ClassicalDataType, tau: ComplexMatrix) -> Result<Self, DecoherenceError> {
        expect_shape("interaction", &tau, (env.dim * sys_dim, sys_dim))?;
        Ok(Self { sys_dim, env, tau })
    }

    /// The environment copying itself: `τ = δ`.
    pub fn self_interaction(env: &ClassicalDataType) -> Self {
        Self {
            sys_dim: env.dim,
            env: env.clone(),
            tau: env.delta.clone(),
        }
    }

    /// No environment: `E = C`, `τ = id`.
    pub fn isolated(sys_dim: usize) -> Self {
        Self {
            sys_dim,
            env: standard_cdt(1),
            tau: ComplexMatrix::identity(sys_dim),
        }
    }

    pub fn sys_dim(&self) -> usize {
        self.sys_dim
    }

    pub fn env(&self) -> &ClassicalDataType {
        &self.env
    }

    pub fn tau(&self) -> &ComplexMatrix {
        &self.tau
    }

    /// The same interaction seen through a unitary change of system basis: `(1⊗v)·τ·v†`.
    pub fn conjugated(&self, v: &ComplexMatrix) -> Result<Self, DecoherenceError> {
        expect_shape("system unitary", v, (self.sys_dim, self.sys_dim))?;
        let tau = &(&ComplexMatrix::identity(self.env.dim).kron(v) * &self.tau) * &v.dagger();
        Self::new(self.sys_dim, self.env.clone(), tau)
    }
}

/// Laws `comod1` `(δ⊗1)τ = (1⊗τ)τ` and `comod2` `(ε⊗1)τ = 1`.
pub fn check_interaction(sys: &InteractionSystem, tol: f64) -> LawReport {
    let ids = ComplexMatrix::identity(sys.sys_dim);
    let ide = ComplexMatrix::identity(sys.env.dim);
    let t = &sys.tau;
    let mut r = LawReport::default();
    r.push("comod1", &(&sys.env.delta.kron(&ids) * t), &(&ide.kron(t) * t), tol);
    r.push("comod2", &(&sys.env.epsilon.kron(&ids) * t), &ids, tol);
    r
}

/// Largest entrywise gap between the two orders of applying `a` and `b`.
pub fn commutation_residual(a: &InteractionSystem, b: &InteractionSystem) -> Result<f64, DecoherenceError> {
    if a.sys_dim != b.sys_dim {
        return Err(DecoherenceError::Dimension(a.sys_dim, b.sys_dim));
    }
    let (e, f) = (a.env.dim, b.env.dim);
    let first_b = &(&ComplexMatrix::tensor_swap(f, e).kron(&ComplexMatrix::identity(a.sys_dim))
        * &ComplexMatrix::identity(f).kron(&a.tau))
        * &b.tau;
    let first_a = &ComplexMatrix::identity(e).kron(&b.tau) * &a.tau;
    Ok(first_b.max_abs_diff(&first_a).expect("same shape"))
}

pub fn interactions_commute(a: &InteractionSystem, b: &InteractionSystem, tol: f64) -> Result<bool, DecoherenceError> {
    Ok(commutation_residual(a, b)? <= tol)
}

/// The joint states of `S⊗S'` sending equal data to a shared environment.
///
/// Returns the isometric embedding `e` of the equalizer and the induced
/// interaction `(1⊗e†)(τ⊗1)e` on it.
pub fn tensor_over_environment(
    a: &InteractionSystem,
    b: &InteractionSystem,
    tol: f64,
) -> Result<(ComplexMatrix, InteractionSystem), DecoherenceError> {
    if a.env != b.env {
        return Err(DecoherenceError::EnvironmentMismatch);
    }
    let (s, t, e) = (a.sys_dim, b.sys_dim, a.env.dim);
    let idt = ComplexMatrix::identity(t);
    let left = a.tau.kron(&idt);
    let right = &ComplexMatrix::tensor_swap(s, e).kron(&idt) * &ComplexMatrix::identity(s).kron(&b.tau);
    let embedding = (&left - &right).nullspace_basis(tol);
    let induced = &(&ComplexMatrix::identity(e).kron(&embedding.dagger()) * &left) * &embedding;
    let k = embedding.cols();
    Ok((embedding, InteractionSystem::new(k, a.env.clone(), induced)?))
}

/// `τ_B ⊗ 1_S` on `B⊗S`.
pub fn buffered_interaction(buffer: &InteractionSystem, s_dim: usize) -> InteractionSystem {
    InteractionSystem {
        sys_dim: buffer.sys_dim * s_dim,
        env: buffer.env.clone(),
        tau: buffer.tau.kron(&ComplexMatrix::identity(s_dim)),
    }
}

pub fn protection_residual(
    f: &ComplexMatrix,
    from: &InteractionSystem,
    to: &InteractionSystem,
) -> Result<f64, DecoherenceError> {
    expect_shape("map", f, (to.sys_dim, from.sys_dim))?;
    if from.env.dim != to.env.dim {
        return Err(DecoherenceError::Dimension(from.env.dim, to.env.dim));
    }
    let lhs = &to.tau * f;
    let rhs = &ComplexMatrix::identity(from.env.dim).kron(f) * &from.tau;
    Ok(lhs.max_abs_diff(&rhs).expect("same shape"))
}

/// `τ'·f = (1_E⊗f)·τ`.
pub fn is_protected(
    f: &ComplexMatrix,
    from: &InteractionSystem,
    to: &InteractionSystem,
    tol: f64,
) -> Result<bool, DecoherenceError> {
    Ok(protection_residual(f, from, to)? <= tol)
}

/// The blocks `f_i` when `f` on `C^n⊗C^d` is `|i>⊗|σ> ↦ |i>⊗f_i|σ>`.
pub fn controlled_form(f: &ComplexMatrix, n: usize, d: usize, tol: f64) -> Option<Vec<ComplexMatrix>> {
    if f.shape() != (n * d, n * d) {
        return None;
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && f.block(i * d, j * d, d, d).max_abs() > tol {
                return None;
            }
        }
    }
    Some((0..n).map(|i| f.block(i * d, i * d, d, d)).collect())
}
