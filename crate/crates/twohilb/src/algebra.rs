//! Frobenius algebras and their modules in the scalar sector.
//!
//! A witness `W_L(n) ⊣ W_R(n)` induces a special commutative dagger-Frobenius
//! algebra on `C^n`: the loop `W_R∘W_L` has `compare` as multiplication and
//! `create` as unit. Measurements transport it along their basis unitary.

use crate::cell::{hcomp2, identity_2, rebracket, vcomp, Bracketing, CellError};
use crate::generators::{compare, create, witness_left, GenError, OrthonormalBasis, ProjectorFamily};
use crate::linalg::ComplexMatrix;
use crate::report::LawReport;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("bad shape for {what}: {actual:?}, expected {expected:?}")]
    Shape {
        what: &'static str,
        expected: (usize, usize),
        actual: (usize, usize),
    },
    #[error("transport requires a unitary of size {0}")]
    NotUnitary(usize),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Cell(#[from] CellError),
}

fn expect_shape(what: &'static str, m: &ComplexMatrix, expected: (usize, usize)) -> Result<(), AlgebraError> {
    if m.shape() != expected {
        return Err(AlgebraError::Shape {
            what,
            expected,
            actual: m.shape(),
        });
    }
    Ok(())
}

/// Multiplication `d x d²` and unit `d x 1` on `C^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusData {
    carrier: usize,
    mult: ComplexMatrix,
    unit: ComplexMatrix,
}

impl FrobeniusData {
    pub fn new(carrier: usize, mult: ComplexMatrix, unit: ComplexMatrix) -> Result<Self, AlgebraError> {
        expect_shape("multiplication", &mult, (carrier, carrier * carrier))?;
        expect_shape("unit", &unit, (carrier, 1))?;
        Ok(Self { carrier, mult, unit })
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn mult(&self) -> &ComplexMatrix {
        &self.mult
    }

    pub fn unit(&self) -> &ComplexMatrix {
        &self.unit
    }
}

/// The algebra on `C^n` read off the witness composites.
pub fn induced_frobenius(n: usize) -> Result<FrobeniusData, AlgebraError> {
    let wl = witness_left(n)?;
    let wr = wl.adjoint();
    let pair = Bracketing::node(Bracketing::leaf(&wr), Bracketing::leaf(&wl));
    let from = Bracketing::node(pair.clone(), pair);
    let to = Bracketing::node(
        Bracketing::leaf(&wr),
        Bracketing::node(
            Bracketing::node(Bracketing::leaf(&wl), Bracketing::leaf(&wr)),
            Bracketing::leaf(&wl),
        ),
    );
    let merge = hcomp2(&identity_2(&wr), &hcomp2(&compare(n)?, &identity_2(&wl))?)?;
    let mult = vcomp(&merge, &rebracket(&from, &to)?)?;
    let unit = create(n)?;
    FrobeniusData::new(n, mult.entry(0, 0).clone(), unit.entry(0, 0).clone())
}

/// Conjugate `a` by the unitary `u`: `mult' = u·mult·(u†⊗u†)`, `unit' = u·unit`.
pub fn transport_frobenius(u: &ComplexMatrix, a: &FrobeniusData, tol: f64) -> Result<FrobeniusData, AlgebraError> {
    if u.shape() != (a.carrier, a.carrier) || !u.is_unitary(tol) {
        return Err(AlgebraError::NotUnitary(a.carrier));
    }
    let ud = u.dagger();
    let mult = &(u * &a.mult) * &ud.kron(&ud);
    let unit = u * &a.unit;
    FrobeniusData::new(a.carrier, mult, unit)
}

/// The classical structure copying the vectors of `b`.
pub fn basis_frobenius(b: &OrthonormalBasis, tol: f64) -> Result<FrobeniusData, AlgebraError> {
    transport_frobenius(&b.unitary(), &induced_frobenius(b.dim())?, tol)
}

/// Laws `assoc`, `unit`, `comm`, `frobenius`, `special`.
pub fn check_frobenius(a: &FrobeniusData, tol: f64) -> LawReport {
    let d = a.carrier;
    let id = ComplexMatrix::identity(d);
    let m = &a.mult;
    let md = m.dagger();
    let mut r = LawReport::default();
    r.push("assoc", &(m * &m.kron(&id)), &(m * &id.kron(m)), tol);
    let left_unit = m * &a.unit.kron(&id);
    let right_unit = m * &id.kron(&a.unit);
    let unit_residual = left_unit
        .max_abs_diff(&id)
        .unwrap_or(f64::INFINITY)
        .max(right_unit.max_abs_diff(&id).unwrap_or(f64::INFINITY));
    r.laws.push(crate::report::LawCheck {
        name: "unit",
        residual: unit_residual,
        passed: unit_residual <= tol,
    });
    r.push("comm", &(m * &ComplexMatrix::tensor_swap(d, d)), m, tol);
    r.push("frobenius", &(&id.kron(m) * &md.kron(&id)), &(&md * m), tol);
    r.push("special", &(m * &md), &id, tol);
    r
}

/// `action: C^d ⊗ C^m -> C^m`, an `m x (d·m)` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleData {
    algebra: FrobeniusData,
    space: usize,
    action: ComplexMatrix,
}

impl ModuleData {
    pub fn new(algebra: FrobeniusData, space: usize, action: ComplexMatrix) -> Result<Self, AlgebraError> {
        expect_shape("action", &action, (space, algebra.carrier * space))?;
        Ok(Self { algebra, space, action })
    }

    pub fn algebra(&self) -> &FrobeniusData {
        &self.algebra
    }

    pub fn space(&self) -> usize {
        self.space
    }

    pub fn action(&self) -> &ComplexMatrix {
        &self.action
    }
}

/// `|i>⊗|φ> ↦ P_i|φ>` over the algebra induced by the outcome witness.
pub fn module_from_measurement(p: &ProjectorFamily) -> Result<ModuleData, AlgebraError> {
    let algebra = induced_frobenius(p.projectors().len())?;
    let action = ComplexMatrix::hstack(p.projectors(), p.dim());
    ModuleData::new(algebra, p.dim(), action)
}

/// Laws `assoc` and `unit` for a module.
pub fn check_module(m: &ModuleData, tol: f64) -> LawReport {
    let d = m.algebra.carrier;
    let ids = ComplexMatrix::identity(m.space);
    let ida = ComplexMatrix::identity(d);
    let act = &m.action;
    let mut r = LawReport::default();
    r.push(
        "assoc",
        &(act * &ida.kron(act)),
        &(act * &m.algebra.mult.kron(&ids)),
        tol,
    );
    r.push("unit", &(act * &m.algebra.unit.kron(&ids)), &ids, tol);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, ONE};

    fn delta_oracle(n: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n * n, |k, idx| if idx == k * n + k { ONE } else { c(0.0, 0.0) })
    }

    #[test]
    fn induced_matches_delta_rule() {
        for n in 1..=6 {
            let a = induced_frobenius(n).unwrap();
            assert_eq!(a.mult(), &delta_oracle(n), "n = {n}");
            assert_eq!(a.unit(), &ComplexMatrix::from_fn(n, 1, |_, _| ONE));
        }
        let two = induced_frobenius(2).unwrap();
        assert_eq!(
            two.mult(),
            &ComplexMatrix::real(&[&[1.0, 0.0, 0.0, 0.0], &[0.0, 0.0, 0.0, 1.0]])
        );
        let one = induced_frobenius(1).unwrap();
        assert_eq!(one.mult(), &ComplexMatrix::scalar(ONE));
    }

    #[test]
    fn induced_passes_all_laws() {
        for n in 1..=6 {
            let r = check_frobenius(&induced_frobenius(n).unwrap(), 1e-12);
            assert!(r.all_passed(), "n = {n}: {r:?}");
            assert_eq!(r.laws.len(), 5);
        }
    }

    #[test]
    fn doubled_multiplication_is_not_special() {
        let a = induced_frobenius(2).unwrap();
        let doubled = FrobeniusData::new(2, a.mult().scale(c(2.0, 0.0)), a.unit().clone()).unwrap();
        let r = check_frobenius(&doubled, 1e-9);
        assert_eq!(r.get("special"), Some(false));
        assert_eq!(r.get("comm"), Some(true));
    }

    #[test]
    fn swap_twisted_multiplication_still_commutes() {
        let a = induced_frobenius(2).unwrap();
        let twisted = a.mult() * &ComplexMatrix::tensor_swap(2, 2);
        let t = FrobeniusData::new(2, twisted, a.unit().clone()).unwrap();
        assert_eq!(check_frobenius(&t, 1e-12).get("comm"), Some(true));
    }

    #[test]
    fn hadamard_transport_gives_plus_minus_copying() {
        let a = induced_frobenius(2).unwrap();
        let b = OrthonormalBasis::plus_minus();
        let t = transport_frobenius(&b.unitary(), &a, 1e-12).unwrap();
        assert!(check_frobenius(&t, 1e-12).all_passed());
        for (i, bi) in b.vectors().iter().enumerate() {
            for (j, bj) in b.vectors().iter().enumerate() {
                let out = t.mult() * &bi.kron(bj);
                let expected = if i == j { bi.clone() } else { ComplexMatrix::zeros(2, 1) };
                assert!(out.approx_eq(&expected, 1e-12));
            }
        }
        // unit is √2 |+>
        assert!(t
            .unit()
            .approx_eq(&ComplexMatrix::real(&[&[2f64.sqrt()], &[0.0]]), 1e-12));
        let same = transport_frobenius(&ComplexMatrix::identity(2), &a, 0.0).unwrap();
        assert_eq!(same, a);
        assert!(transport_frobenius(&ComplexMatrix::real(&[&[1.0, 1.0], &[0.0, 1.0]]), &a, 1e-9).is_err());
    }

    #[test]
    fn measurement_modules() {
        let comp = ProjectorFamily::from_basis(&OrthonormalBasis::computational(2).unwrap());
        let regular = module_from_measurement(&comp).unwrap();
        assert_eq!(regular.action(), regular.algebra().mult());
        assert!(check_module(&regular, 1e-12).all_passed());

        let trivial = ProjectorFamily::new(vec![ComplexMatrix::identity(3)], 1e-12).unwrap();
        let m = module_from_measurement(&trivial).unwrap();
        assert_eq!(m.action(), &ComplexMatrix::identity(3));
        assert!(check_module(&m, 1e-12).all_passed());

        let p0 = ComplexMatrix::direct_sum(&[ComplexMatrix::identity(2), ComplexMatrix::zeros(2, 2)]);
        let p1 = ComplexMatrix::direct_sum(&[ComplexMatrix::zeros(2, 2), ComplexMatrix::identity(2)]);
        let fam = ProjectorFamily::new(vec![p0, p1], 1e-12).unwrap();
        let m = module_from_measurement(&fam).unwrap();
        let r = check_module(&m, 1e-12);
        assert!(r.all_passed());
        // action on the 8 basis vectors |i>⊗|k>
        for i in 0..2 {
            for k in 0..4 {
                let v = ComplexMatrix::basis(2, i).kron(&ComplexMatrix::basis(4, k));
                let out = m.action() * &v;
                let expected = if k / 2 == i {
                    ComplexMatrix::basis(4, k)
                } else {
                    ComplexMatrix::zeros(4, 1)
                };
                assert_eq!(out, expected);
            }
        }
    }

    #[test]
    fn broken_module_fails_assoc() {
        let fam = ProjectorFamily::from_basis(&OrthonormalBasis::computational(2).unwrap());
        let m = module_from_measurement(&fam).unwrap();
        let bad = ModuleData::new(
            m.algebra().clone(),
            2,
            ComplexMatrix::hstack(&[ComplexMatrix::identity(2), ComplexMatrix::identity(2)], 2),
        )
        .unwrap();
        let r = check_module(&bad, 1e-9);
        assert_eq!(r.get("assoc"), Some(false));
        assert_eq!(r.get("unit"), Some(false));
    }
}
