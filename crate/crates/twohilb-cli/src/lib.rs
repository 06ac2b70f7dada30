//! Named check suites behind the `twohilb check` command.

use twohilb::algebra::{
    check_frobenius, check_module, induced_frobenius, module_from_measurement, transport_frobenius,
};
use twohilb::cell::{hcomp2, vcomp, TwoCell};
use twohilb::decoherence::{
    buffered_interaction, check_classical_structure, check_interaction, controlled_form, is_protected, standard_cdt,
    tensor_over_environment, InteractionSystem,
};
use twohilb::generators::{
    bell_corrections, bell_measurement, controlled_operation, hole_deletion, matched_measurement, weyl_kit,
    witness_snakes, OrthonormalBasis, ProjectorFamily,
};
use twohilb::linalg::ComplexMatrix;
use twohilb::protocols::{
    check_complementarity_cd, check_complementarity_physical, check_dense_coding, check_erasure, check_teleportation,
    controlled_phase_cell, ProtocolError,
};
use twohilb::random::{gaussian_matrix, haar_unitary, random_one_cell, random_two_cell, seeded};
use twohilb::report::{CheckReport, LawReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Teleportation,
    DenseCoding,
    Complementarity,
    Erasure,
    WitnessAxioms,
    Frobenius,
    Interchange,
    Decoherence,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Teleportation,
        Suite::DenseCoding,
        Suite::Complementarity,
        Suite::Erasure,
        Suite::WitnessAxioms,
        Suite::Frobenius,
        Suite::Interchange,
        Suite::Decoherence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Teleportation => "teleportation",
            Suite::DenseCoding => "dense-coding",
            Suite::Complementarity => "complementarity",
            Suite::Erasure => "erasure",
            Suite::WitnessAxioms => "witness-axioms",
            Suite::Frobenius => "frobenius",
            Suite::Interchange => "interchange",
            Suite::Decoherence => "decoherence",
        }
    }

    /// Whether `--n` changes what the suite checks.
    pub fn takes_n(self) -> bool {
        !matches!(self, Suite::Interchange | Suite::Decoherence)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("{0}")]
    BadSize(String),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error("{0}")]
    Setup(String),
}

fn setup<E: std::fmt::Display>(e: E) -> SuiteError {
    SuiteError::Setup(e.to_string())
}

pub fn run(suite: Suite, n: Option<usize>, tol: f64) -> Result<Vec<CheckReport>, SuiteError> {
    if n == Some(0) {
        return Err(SuiteError::BadSize("--n must be at least 1".into()));
    }
    match suite {
        Suite::Teleportation => teleportation(n.unwrap_or(4), tol),
        Suite::DenseCoding => dense_coding(n.unwrap_or(4), tol),
        Suite::Complementarity => complementarity(n.unwrap_or(2), tol),
        Suite::Erasure => erasure(n.unwrap_or(2), tol),
        Suite::WitnessAxioms => witness_axioms(n, tol),
        Suite::Frobenius => frobenius(n, tol),
        Suite::Interchange => Ok(vec![interchange(100, 2024, tol)]),
        Suite::Decoherence => decoherence(tol),
    }
}

fn unitarity_residual(a: &TwoCell) -> f64 {
    a.entries()
        .iter()
        .map(|e| {
            if !e.is_square() {
                return f64::INFINITY;
            }
            let id = ComplexMatrix::identity(e.rows());
            (&e.dagger() * e).max_abs_diff(&id).unwrap_or(f64::INFINITY)
        })
        .fold(0.0, f64::max)
}

/// Measurement and correction cells for `n = d²` outcomes: the Bell kit for
/// `n = 4`, shift-and-clock operators with their matched measurement otherwise.
pub fn kit(n: usize) -> Result<(TwoCell, TwoCell), SuiteError> {
    let d = (1..=n).find(|d| d * d >= n).unwrap_or(1);
    if d * d != n {
        return Err(SuiteError::BadSize(format!(
            "--n must be a perfect square (outcomes for a qudit pair), got {n}"
        )));
    }
    if n == 4 {
        return Ok((bell_measurement(), bell_corrections()));
    }
    let k = weyl_kit(d);
    Ok((
        matched_measurement(&k).map_err(setup)?,
        controlled_operation(&k).map_err(setup)?,
    ))
}

fn physical(name: &str, measurement: &TwoCell, correction: &TwoCell, tol: f64) -> CheckReport {
    let r = unitarity_residual(measurement).max(unitarity_residual(correction));
    CheckReport::from_residual(name, r, tol)
}

fn teleportation(n: usize, tol: f64) -> Result<Vec<CheckReport>, SuiteError> {
    let (m, u) = kit(n)?;
    Ok(vec![
        check_teleportation(&m, &u, n, tol)?,
        physical("teleportation-kit-unitary", &m, &u, tol),
    ])
}

fn dense_coding(n: usize, tol: f64) -> Result<Vec<CheckReport>, SuiteError> {
    let (m, u) = kit(n)?;
    Ok(vec![
        check_dense_coding(&u, &m, n, tol)?,
        physical("dense-coding-kit-unitary", &m, &u, tol),
    ])
}

fn bases(n: usize) -> Result<(OrthonormalBasis, OrthonormalBasis), SuiteError> {
    Ok((
        OrthonormalBasis::computational(n).map_err(setup)?,
        OrthonormalBasis::fourier(n).map_err(setup)?,
    ))
}

fn complementarity(n: usize, tol: f64) -> Result<Vec<CheckReport>, SuiteError> {
    let (red, green) = bases(n)?;
    let mut out = Vec::new();
    match controlled_phase_cell(&red, &green, tol)? {
        Some(phi) => out.push(check_complementarity_physical(&red, &green, &phi, tol)?),
        None => out.push(CheckReport::from_residual(
            "complementarity-physical",
            f64::INFINITY,
            tol,
        )),
    }
    out.push(check_complementarity_cd(&red, &green, tol)?);
    // the same basis twice must fail both forms
    let cd = check_complementarity_cd(&red, &red, tol)?;
    let no_phase = controlled_phase_cell(&red, &red, tol)?.is_none();
    let mut control = CheckReport::from_residual("complementarity-negative-control", 0.0, tol);
    control.passed = no_phase && !cd.passed;
    out.push(control);
    Ok(out)
}

fn erasure(n: usize, tol: f64) -> Result<Vec<CheckReport>, SuiteError> {
    let (red, green) = bases(n)?;
    Ok(vec![check_erasure(&red, &green, tol)?])
}

fn sizes(n: Option<usize>) -> Vec<usize> {
    n.map_or((1..=6).collect(), |n| vec![n])
}

fn witness_axioms(n: Option<usize>, tol: f64) -> Result<Vec<CheckReport>, SuiteError> {
    let mut out = Vec::new();
    for n in sizes(n) {
        for (name, lhs, rhs) in witness_snakes(n).map_err(setup)? {
            out.push(CheckReport::exact(format!("{name}/{n}"), &lhs, &rhs, tol));
        }
        let (lhs, rhs) = hole_deletion(n).map_err(setup)?;
        out.push(CheckReport::exact(format!("hole-deletion/{n}"), &lhs, &rhs, tol));
    }
    Ok(out)
}

fn law(name: String, r: &LawReport) -> CheckReport {
    r.to_check_report(name)
}

fn frobenius(n: Option<usize>, tol: f64) -> Result<Vec<CheckReport>, SuiteError> {
    let mut out = Vec::new();
    for n in sizes(n) {
        let a = induced_frobenius(n).map_err(setup)?;
        out.push(law(format!("induced/{n}"), &check_frobenius(&a, tol)));
    }
    let mut rng = seeded(31);
    for k in 0..10 {
        let dim = n.unwrap_or(2 + k % 3);
        let u = haar_unitary(&mut rng, dim);
        let a = transport_frobenius(&u, &induced_frobenius(dim).map_err(setup)?, 1e-9).map_err(setup)?;
        out.push(law(format!("transported/{dim}/{k}"), &check_frobenius(&a, tol)));
    }
    let dim = n.unwrap_or(3);
    let u = haar_unitary(&mut rng, dim);
    let basis = OrthonormalBasis::from_columns(&u, 1e-9).map_err(setup)?;
    let mut families = vec![
        (
            "computational",
            ProjectorFamily::from_basis(&OrthonormalBasis::computational(dim).map_err(setup)?),
        ),
        ("random-basis", ProjectorFamily::from_basis(&basis)),
        (
            "trivial",
            ProjectorFamily::new(vec![ComplexMatrix::identity(dim)], 1e-9).map_err(setup)?,
        ),
    ];
    if dim >= 2 {
        // rank split 1 + (dim - 1) in the random basis
        let v = basis.vectors();
        let p0 = &v[0] * &v[0].dagger();
        let p1 = &ComplexMatrix::identity(dim) - &p0;
        families.push(("degenerate", ProjectorFamily::new(vec![p0, p1], 1e-9).map_err(setup)?));
    }
    for (name, fam) in families {
        let m = module_from_measurement(&fam).map_err(setup)?;
        out.push(law(format!("module/{name}"), &check_module(&m, tol)));
    }
    Ok(out)
}

/// `(δ·γ)∘(β·α)` against `(δ∘β)·(γ∘α)` over random composable quadruples.
pub fn interchange(count: usize, seed: u64, tol: f64) -> CheckReport {
    let mut rng = seeded(seed);
    let mut worst: f64 = 0.0;
    for k in 0..count {
        // objects of size 1 or 2, cycling through all eight shapes
        let (a, b, c) = (1 + (k & 1), 1 + ((k >> 1) & 1), 1 + ((k >> 2) & 1));
        let f = random_one_cell(&mut rng, a, b, 3);
        let g = random_one_cell(&mut rng, a, b, 3);
        let h = random_one_cell(&mut rng, a, b, 3);
        let f2 = random_one_cell(&mut rng, b, c, 3);
        let g2 = random_one_cell(&mut rng, b, c, 3);
        let h2 = random_one_cell(&mut rng, b, c, 3);
        let alpha = random_two_cell(&mut rng, &f, &g);
        let beta = random_two_cell(&mut rng, &g, &h);
        let gamma = random_two_cell(&mut rng, &f2, &g2);
        let delta = random_two_cell(&mut rng, &g2, &h2);
        let lhs = hcomp2(&vcomp(&delta, &gamma).unwrap(), &vcomp(&beta, &alpha).unwrap()).unwrap();
        let rhs = vcomp(&hcomp2(&delta, &beta).unwrap(), &hcomp2(&gamma, &alpha).unwrap()).unwrap();
        worst = worst.max(lhs.max_abs_diff(&rhs).unwrap_or(f64::INFINITY));
    }
    CheckReport::from_residual("interchange", worst, tol)
}

fn copying(n: usize) -> InteractionSystem {
    InteractionSystem::self_interaction(&standard_cdt(n))
}

fn decoherence(tol: f64) -> Result<Vec<CheckReport>, SuiteError> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(law(
            format!("classical-structure/{n}"),
            &check_classical_structure(&standard_cdt(n), tol),
        ));
        out.push(law(
            format!("self-interaction/{n}"),
            &check_interaction(&copying(n), tol),
        ));
    }
    let sys = copying(2);
    let (e, induced) = tensor_over_environment(&sys, &sys, 1e-10).map_err(setup)?;
    let mut kernel = CheckReport::from_residual("equalizer-dimension", 0.0, tol);
    kernel.passed = e.cols() == 2;
    out.push(kernel);
    out.push(law("equalizer-induced".into(), &check_interaction(&induced, tol)));

    let mut rng = seeded(77);
    let buffer = buffered_interaction(&copying(2), 2);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let f = ComplexMatrix::identity(2).kron(&gaussian_matrix(&mut rng, 2, 2));
        worst = worst.max(twohilb::decoherence::protection_residual(&f, &buffer, &buffer).map_err(setup)?);
    }
    out.push(CheckReport::from_residual("buffered-protected", worst, tol));

    let (n, d) = (3, 2);
    let sys = buffered_interaction(&copying(n), d);
    let mut agree = true;
    for k in 0..20 {
        let f = if k % 2 == 0 {
            ComplexMatrix::direct_sum(&(0..n).map(|_| gaussian_matrix(&mut rng, d, d)).collect::<Vec<_>>())
        } else {
            gaussian_matrix(&mut rng, n * d, n * d)
        };
        let form = controlled_form(&f, n, d, tol).is_some();
        agree &= form == is_protected(&f, &sys, &sys, tol).map_err(setup)?;
        agree &= form == (k % 2 == 0);
    }
    let mut r = CheckReport::from_residual("controlled-form-iff-protected", 0.0, tol);
    r.passed = agree;
    out.push(r);
    Ok(out)
}

/// One human-readable line per report.
pub fn describe(r: &CheckReport) -> String {
    let status = if r.passed { "PASS" } else { "FAIL" };
    let mut line = format!("{status} {} max_entry_error={:.3e}", r.name, r.max_entry_error);
    if let Some(s) = r.fitted_scalar {
        line.push_str(&format!(" fitted_scalar={:.12}{:+.12}i", s.re, s.im));
    }
    line
}
