use proptest::prelude::*;
use twohilb::cell::{
    adjunction_cells, associator, dagger2, hcomp1, hcomp2, identity_2, snake_composites, vcomp, OneCell, TwoCell,
};
use twohilb::generators::{hole_deletion, witness_snakes};
use twohilb::linalg::{c, ComplexMatrix};
use twohilb::Complex64;

fn scalar() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| c(re, im))
}

fn one_cell(source: usize, target: usize, max_dim: usize) -> impl Strategy<Value = OneCell> {
    proptest::collection::vec(0..=max_dim, source * target)
        .prop_map(move |dims| OneCell::new(source, target, dims).unwrap())
}

fn two_cell(source: OneCell, target: OneCell) -> impl Strategy<Value = TwoCell> {
    let sizes: Vec<usize> = target.dims().iter().zip(source.dims()).map(|(t, s)| t * s).collect();
    let total: usize = sizes.iter().sum();
    proptest::collection::vec(scalar(), total).prop_map(move |data| {
        let mut it = data.into_iter();
        TwoCell::from_fn(source.clone(), target.clone(), |i, j| {
            let (r, cc) = (target.dim(i, j), source.dim(i, j));
            ComplexMatrix::new(r, cc, it.by_ref().take(r * cc).collect()).unwrap()
        })
        .unwrap()
    })
}

/// Three parallel 1-cells `a -> b` and two 2-cells `f => g => h`.
fn composable_pair(a: usize, b: usize) -> impl Strategy<Value = (TwoCell, TwoCell)> {
    (one_cell(a, b, 3), one_cell(a, b, 3), one_cell(a, b, 3))
        .prop_flat_map(|(f, g, h)| (two_cell(f, g.clone()), two_cell(g, h)))
}

fn interchange_quadruple() -> impl Strategy<Value = (TwoCell, TwoCell, TwoCell, TwoCell)> {
    (1usize..=2, 1usize..=2, 1usize..=2).prop_flat_map(|(a, b, cc)| {
        (composable_pair(a, b), composable_pair(b, cc))
            .prop_map(|((alpha, alpha2), (beta, beta2))| (alpha, alpha2, beta, beta2))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interchange_law((alpha, alpha2, beta, beta2) in interchange_quadruple()) {
        let lhs = vcomp(&hcomp2(&beta2, &alpha2).unwrap(), &hcomp2(&beta, &alpha).unwrap()).unwrap();
        let rhs = hcomp2(&vcomp(&beta2, &beta).unwrap(), &vcomp(&alpha2, &alpha).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-9);
    }

    #[test]
    fn vcomp_associative_and_unital((alpha, beta) in composable_pair(2, 2), h in one_cell(2, 2, 3)) {
        let g = beta.target().clone();
        let gamma = TwoCell::from_fn(g.clone(), h.clone(), |i, j| {
            ComplexMatrix::from_fn(h.dim(i, j), g.dim(i, j), |a, b| c((a + 2 * b) as f64, 1.0))
        }).unwrap();
        let l = vcomp(&gamma, &vcomp(&beta, &alpha).unwrap()).unwrap();
        let r = vcomp(&vcomp(&gamma, &beta).unwrap(), &alpha).unwrap();
        prop_assert!(l.max_abs_diff(&r).unwrap() <= 1e-12);
        prop_assert_eq!(vcomp(&identity_2(alpha.target()), &alpha).unwrap(), alpha.clone());
        prop_assert_eq!(vcomp(&alpha, &identity_2(alpha.source())).unwrap(), alpha);
    }

    #[test]
    fn dagger_flips_vertical_and_keeps_horizontal((alpha, alpha2, beta, _b2) in interchange_quadruple()) {
        prop_assert_eq!(dagger2(&dagger2(&alpha)), alpha.clone());
        let v = dagger2(&vcomp(&alpha2, &alpha).unwrap());
        let v2 = vcomp(&dagger2(&alpha), &dagger2(&alpha2)).unwrap();
        prop_assert!(v.max_abs_diff(&v2).unwrap() <= 1e-12);
        let h = dagger2(&hcomp2(&beta, &alpha).unwrap());
        let h2 = hcomp2(&dagger2(&beta), &dagger2(&alpha)).unwrap();
        prop_assert_eq!(h, h2);
    }

    #[test]
    fn hcomp_of_identities_is_identity(f in one_cell(2, 3, 3), g in one_cell(3, 2, 3)) {
        let gf = hcomp1(&g, &f).unwrap();
        prop_assert_eq!(hcomp2(&identity_2(&g), &identity_2(&f)).unwrap(), identity_2(&gf));
    }

    #[test]
    fn snake_equations(rows in 1usize..=3, cols in 1usize..=3, seed in proptest::collection::vec(0usize..=3, 9)) {
        let f = OneCell::new(cols, rows, seed[..rows * cols].to_vec()).unwrap();
        let (first, second) = snake_composites(&f).unwrap();
        prop_assert!(first.max_abs_diff(&identity_2(&f)).unwrap() <= 1e-12);
        prop_assert!(second.max_abs_diff(&identity_2(&f.adjoint())).unwrap() <= 1e-12);
    }

    #[test]
    fn associators_are_permutations(
        f in one_cell(2, 2, 2), g in one_cell(2, 3, 2), h in one_cell(3, 1, 2),
    ) {
        let assoc = associator(&f, &g, &h).unwrap();
        for e in assoc.entries() {
            prop_assert!(e.is_unitary(0.0));
            prop_assert!(e.data().iter().all(|z| *z == c(0.0, 0.0) || *z == c(1.0, 0.0)));
        }
    }

    #[test]
    fn endomorphism_inverse_symmetry(f in one_cell(2, 2, 3), shift in 0.5f64..2.0) {
        // Upper-triangular entries with non-zero diagonal are invertible.
        let sigma = TwoCell::from_fn(f.clone(), f.clone(), |i, j| {
            let d = f.dim(i, j);
            ComplexMatrix::from_fn(d, d, |a, b| if a == b { c(shift + a as f64, 0.0) } else if a < b { c(0.3, -0.7) } else { c(0.0, 0.0) })
        }).unwrap();
        let tau = TwoCell::from_fn(f.clone(), f.clone(), |i, j| {
            let e = sigma.entry(i, j);
            if e.rows() == 0 { return e.clone(); }
            ComplexMatrix::from_nalgebra(&e.to_nalgebra().try_inverse().unwrap())
        }).unwrap();
        let id = identity_2(&f);
        let st = vcomp(&sigma, &tau).unwrap().max_abs_diff(&id).unwrap() <= 1e-9;
        let ts = vcomp(&tau, &sigma).unwrap().max_abs_diff(&id).unwrap() <= 1e-9;
        prop_assert!(st && ts);
        let not_inverse = twohilb::cell::scalar_mul(c(2.0, 0.0), &tau);
        let st = vcomp(&sigma, &not_inverse).unwrap().max_abs_diff(&id).unwrap() <= 1e-9;
        let ts = vcomp(&not_inverse, &sigma).unwrap().max_abs_diff(&id).unwrap() <= 1e-9;
        prop_assert_eq!(st, ts);
    }
}

#[test]
fn witness_adjunction_cells_are_create_and_compare() {
    for n in 1..=5 {
        let wl = twohilb::generators::witness_left(n).unwrap();
        let (sigma, tau) = adjunction_cells(&wl);
        assert_eq!(sigma, twohilb::generators::create(n).unwrap());
        assert_eq!(tau, twohilb::generators::compare(n).unwrap());
    }
}

#[test]
fn witness_snakes_hold_exactly() {
    for n in 1..=6 {
        for (name, lhs, rhs) in witness_snakes(n).unwrap() {
            assert_eq!(lhs.max_abs_diff(&rhs), Some(0.0), "{name} at n = {n}");
        }
        let (hole, id) = hole_deletion(n).unwrap();
        assert_eq!(hole, id);
    }
}

#[test]
fn copy_dagger_is_compare() {
    for n in 1..=4 {
        assert_eq!(
            dagger2(&twohilb::generators::copy(n).unwrap()),
            twohilb::generators::compare(n).unwrap()
        );
    }
}
