//! Pass/fail records for equation checks.

use num_complex::Complex64;

use crate::cell::TwoCell;
use crate::linalg::ComplexMatrix;

/// Outcome of comparing two sides of an equation.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub max_entry_error: f64,
    pub fitted_scalar: Option<Complex64>,
}

impl CheckReport {
    /// Compare `lhs` against `rhs` entrywise with no scalar freedom.
    pub fn exact(name: impl Into<String>, lhs: &TwoCell, rhs: &TwoCell, tol: f64) -> Self {
        let err = lhs.max_abs_diff(rhs).unwrap_or(f64::INFINITY);
        Self {
            name: name.into(),
            passed: err <= tol,
            max_entry_error: err,
            fitted_scalar: None,
        }
    }

    /// Fit `s` minimising `‖lhs - s·rhs‖`, then require the residual and
    /// `|s - expected|` to be within `tol`.
    pub fn fitted(name: impl Into<String>, lhs: &TwoCell, rhs: &TwoCell, expected: Complex64, tol: f64) -> Self {
        let name = name.into();
        let (Some(cross), Some(norm)) = (rhs.inner(lhs), rhs.inner(rhs)) else {
            return Self {
                name,
                passed: false,
                max_entry_error: f64::INFINITY,
                fitted_scalar: None,
            };
        };
        let s = if norm.norm() == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            cross / norm
        };
        let scaled = crate::cell::scalar_mul(s, rhs);
        let err = lhs.max_abs_diff(&scaled).unwrap_or(f64::INFINITY);
        Self {
            name,
            passed: err <= tol && (s - expected).norm() <= tol,
            max_entry_error: err,
            fitted_scalar: Some(s),
        }
    }

    /// A report for a boolean fact with a known residual.
    pub fn from_residual(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            passed: residual <= tol,
            max_entry_error: residual,
            fitted_scalar: None,
        }
    }
}

/// One named law with its residual.
#[derive(Clone, Debug, PartialEq)]
pub struct LawCheck {
    pub name: &'static str,
    pub residual: f64,
    pub passed: bool,
}

/// A set of named laws checked at a common tolerance.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LawReport {
    pub laws: Vec<LawCheck>,
}

impl LawReport {
    pub(crate) fn push(&mut self, name: &'static str, lhs: &ComplexMatrix, rhs: &ComplexMatrix, tol: f64) {
        let residual = lhs.max_abs_diff(rhs).unwrap_or(f64::INFINITY);
        self.laws.push(LawCheck {
            name,
            residual,
            passed: residual <= tol,
        });
    }

    /// Whether the named law passed; `None` if no such law was checked.
    pub fn get(&self, name: &str) -> Option<bool> {
        self.laws.iter().find(|l| l.name == name).map(|l| l.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.laws.iter().map(|l| l.residual).fold(0.0, f64::max)
    }

    pub fn to_check_report(&self, name: impl Into<String>) -> CheckReport {
        CheckReport {
            name: name.into(),
            passed: self.all_passed(),
            max_entry_error: self.max_residual(),
            fitted_scalar: None,
        }
    }
}
