use twohilb::cell::scalar_mul;
use twohilb::generators::{
    bell_corrections, bell_measurement, controlled_operation, controlled_phase, matched_measurement,
    nondegenerate_measurement, pauli_kit, OrthonormalBasis,
};
use twohilb::linalg::{c, ComplexMatrix};
use twohilb::protocols::{
    check_complementarity_cd, check_complementarity_physical, check_erasure, check_teleportation, correction_splits,
    dense_coding_solves, find_controlled_phase, horizontally_unitary_scale, is_horizontally_unitary,
    measurement_splits, teleportation_solves, LegSplit,
};
use twohilb::random::{haar_unitary, seeded};

const TOL: f64 = 1e-9;

fn pauli_variants() -> Vec<(&'static str, Vec<ComplexMatrix>)> {
    let p = pauli_kit();
    let mut permuted = p.clone();
    permuted.rotate_left(1);
    let i = c(0.0, 1.0);
    let rephased = vec![p[0].scale(-i), p[1].clone(), p[2].scale(c(-1.0, 0.0)), p[3].scale(i)];
    let degenerate = vec![p[0].clone(), p[0].clone(), p[2].clone(), p[1].clone()];
    vec![
        ("standard", p),
        ("permuted", permuted),
        ("rephased", rephased),
        ("repeated identity", degenerate),
    ]
}

fn random_kits() -> Vec<(String, Vec<ComplexMatrix>)> {
    let mut rng = seeded(42);
    let mut kits = Vec::new();
    for k in 0..3 {
        let a = haar_unitary(&mut rng, 2);
        let b = haar_unitary(&mut rng, 2);
        let kit = pauli_kit().iter().map(|u| &(&a * u) * &b).collect();
        kits.push((format!("random error basis {k}"), kit));
    }
    let kit = (0..4).map(|_| haar_unitary(&mut rng, 2)).collect();
    kits.push(("four random unitaries".into(), kit));
    kits
}

#[test]
fn teleportation_succeeds_iff_corrections_are_horizontally_unitary() {
    let (ct, cb) = correction_splits(4, 2).unwrap();
    let mut seen = (0, 0);
    let kits: Vec<(String, Vec<ComplexMatrix>)> = pauli_variants()
        .into_iter()
        .map(|(n, k)| (n.to_string(), k))
        .chain(random_kits())
        .collect();
    for (name, kit) in kits {
        let u = controlled_operation(&kit).unwrap();
        let m = matched_measurement(&kit).unwrap();
        let tele = teleportation_solves(&m, &u, 4, TOL).unwrap();
        let dense = dense_coding_solves(&u, &m, 4, TOL).unwrap();
        let unitary = horizontally_unitary_scale(&u, &ct, &cb, TOL).unwrap().is_some();
        assert_eq!(tele, unitary, "{name}");
        assert_eq!(tele, dense, "{name}");
        if tele {
            seen.0 += 1;
            let r = check_teleportation(&m, &u, 4, TOL).unwrap();
            assert!((r.fitted_scalar.unwrap() - c(0.5, 0.0)).norm() < TOL);
        } else {
            seen.1 += 1;
        }
    }
    assert_eq!(seen, (6, 2));
}

#[test]
fn unitary_kits_satisfy_the_bare_equation_with_matched_rows() {
    for (name, kit) in pauli_variants()
        .into_iter()
        .skip(3)
        .map(|(n, k)| (n.to_string(), k))
        .chain(random_kits().into_iter().skip(3))
    {
        let u = controlled_operation(&kit).unwrap();
        let m = matched_measurement(&kit).unwrap();
        assert!(check_teleportation(&m, &u, 4, TOL).unwrap().passed, "{name}");
        assert!(!m.is_vertically_unitary(TOL), "{name}");
    }
}

#[test]
fn matched_measurements_of_error_bases_are_horizontally_unitary() {
    let (mt, mb) = measurement_splits(4, 2).unwrap();
    for (name, kit) in random_kits().into_iter().take(3) {
        let m = matched_measurement(&kit).unwrap();
        let scaled = scalar_mul(c(2f64.sqrt(), 0.0), &m);
        assert!(is_horizontally_unitary(&scaled, &mt, &mb, TOL).unwrap(), "{name}");
    }
}

#[test]
fn bell_measurement_and_corrections_are_doubly_unitary() {
    let (mt, mb) = measurement_splits(4, 2).unwrap();
    assert!(bell_measurement().is_vertically_unitary(TOL));
    let m = scalar_mul(c(2f64.sqrt(), 0.0), &bell_measurement());
    assert!(is_horizontally_unitary(&m, &mt, &mb, TOL).unwrap());
    let (ct, cb) = correction_splits(4, 2).unwrap();
    let u = bell_corrections();
    assert!(u.is_vertically_unitary(TOL));
    assert!(horizontally_unitary_scale(&u, &ct, &cb, TOL).unwrap().is_some());
}

fn basis_pairs() -> Vec<(&'static str, OrthonormalBasis, OrthonormalBasis, bool)> {
    let comp2 = OrthonormalBasis::computational(2).unwrap();
    let mut rng = seeded(9);
    let v = haar_unitary(&mut rng, 3);
    let red3 = OrthonormalBasis::from_columns(&v, TOL).unwrap();
    let green3 = OrthonormalBasis::from_columns(&(&v * &OrthonormalBasis::fourier(3).unwrap().unitary()), TOL).unwrap();
    let w = haar_unitary(&mut rng, 3);
    let skew = OrthonormalBasis::from_columns(&w, TOL).unwrap();
    vec![
        ("comp/plus", comp2.clone(), OrthonormalBasis::plus_minus(), true),
        ("comp/comp", comp2.clone(), comp2, false),
        ("random unbiased pair", red3.clone(), green3, true),
        ("random pair", red3, skew, false),
    ]
}

#[test]
fn complementarity_conditions_agree() {
    for (name, red, green, expected) in basis_pairs() {
        let n = red.dim();
        let phases = find_controlled_phase(&red, &green, 1e-9).unwrap();
        let cd = check_complementarity_cd(&red, &green, TOL).unwrap();
        assert_eq!(phases.is_some(), expected, "{name}");
        assert_eq!(cd.passed, expected, "{name}: {cd:?}");

        let mg = nondegenerate_measurement(&green);
        let mr = nondegenerate_measurement(&red);
        let after = twohilb::cell::vcomp(&mg, &twohilb::cell::dagger2(&mr)).unwrap();
        let scaled = scalar_mul(c((n as f64).sqrt(), 0.0), &after);
        let wl = twohilb::generators::witness_left(n).unwrap();
        let loop_split = LegSplit::new(&wl.adjoint(), &wl);
        let horizontal = is_horizontally_unitary(&scaled, &loop_split, &loop_split, 1e-9).unwrap();
        assert_eq!(horizontal, expected, "{name}");

        if let Some(p) = phases {
            let phi = controlled_phase(&p, 1e-9).unwrap();
            let r = check_complementarity_physical(&red, &green, &phi, TOL).unwrap();
            assert!(r.passed, "{name}: {r:?}");
            assert!((r.fitted_scalar.unwrap() - c(1.0 / (n as f64).sqrt(), 0.0)).norm() < TOL);
        }
    }
}

#[test]
fn erasure_holds_for_every_pair() {
    for (name, red, green, _) in basis_pairs() {
        let r = check_erasure(&red, &green, TOL).unwrap();
        assert!(r.passed, "{name}: {r:?}");
    }
}
