//! Structural invariants of the algebra layer over fixtures and random semidirect products.

mod common;

use common::{algebra, invertible, matrix, runner, vector};
use coorbit_core::orbit::is_ideal;
use coorbit_core::rational::int;
use coorbit_core::{
    classify, semidirect_from_derivation, transform_covector, Covector, IdealCheck, LieAlgebra, Rational, Subspace,
    Unimodularity,
};
use num_traits::Zero;
use proptest::prelude::*;

fn algebra_with_vectors(k: usize) -> impl Strategy<Value = (LieAlgebra, Vec<Vec<Rational>>)> {
    algebra().prop_flat_map(move |alg| {
        let n = alg.dim();
        (Just(alg), prop::collection::vec(vector(n), k))
    })
}

#[test]
fn adjoint_is_a_homomorphism() {
    runner(31, 96)
        .run(&algebra_with_vectors(2), |(alg, v)| {
            let (x, y) = (&v[0], &v[1]);
            let lhs = alg.ad_matrix(&alg.bracket(x, y)).unwrap();
            let rhs = alg.ad_matrix(x).unwrap().commutator(&alg.ad_matrix(y).unwrap());
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .unwrap();
}

#[test]
fn bracket_is_antisymmetric_and_trace_is_linear() {
    runner(32, 96)
        .run(&algebra_with_vectors(2), |(alg, v)| {
            let (x, y) = (&v[0], &v[1]);
            let xy = alg.bracket(x, y);
            let yx = alg.bracket(y, x);
            prop_assert!(xy.iter().zip(&yx).all(|(a, b)| (a + b).is_zero()));
            let sum: Vec<_> = x.iter().zip(y).map(|(a, b)| a + b).collect();
            prop_assert_eq!(alg.ad_trace(&sum), alg.ad_trace(x) + alg.ad_trace(y));
            // Traces of ad vanish on the derived algebra.
            prop_assert!(alg.ad_trace(&xy).is_zero());
            Ok(())
        })
        .unwrap();
}

#[test]
fn series_are_strictly_decreasing_ideals() {
    runner(33, 64)
        .run(&algebra(), |alg| {
            for series in [alg.derived_series(), alg.lower_central_series()] {
                prop_assert!(series[0].is_full());
                for pair in series.windows(2) {
                    prop_assert!(pair[1].is_subspace_of(&pair[0]));
                    prop_assert!(pair[1].dim() < pair[0].dim());
                }
                for term in &series {
                    prop_assert_eq!(is_ideal(&alg, term), IdealCheck::Ideal);
                }
            }
            prop_assert_eq!(alg.is_nilpotent(), alg.lower_central_series().last().unwrap().is_zero());
            if alg.is_nilpotent() {
                prop_assert!(alg.is_solvable());
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn quotient_by_derived_algebra_is_abelian_and_projection_is_a_homomorphism() {
    runner(34, 64)
        .run(&algebra_with_vectors(2), |(alg, v)| {
            let full = Subspace::full(alg.dim());
            let derived = alg.bracket_space(&full, &full);
            let q = alg.quotient(&derived).unwrap();
            q.algebra.ensure_valid().unwrap();
            prop_assert_eq!(q.algebra.dim(), alg.dim() - derived.dim());
            let (x, y) = (&v[0], &v[1]);
            let lhs = q.projection.mul_vec(&alg.bracket(x, y));
            let rhs = q.algebra.bracket(&q.projection.mul_vec(x), &q.projection.mul_vec(y));
            prop_assert_eq!(&lhs, &rhs);
            prop_assert!(lhs.iter().all(Zero::is_zero));
            Ok(())
        })
        .unwrap();
}

#[test]
fn change_of_basis_conjugates_the_adjoint() {
    let strategy = algebra().prop_flat_map(|alg| {
        let n = alg.dim();
        (Just(alg), invertible(n), vector(n))
    });
    runner(35, 64)
        .run(&strategy, |(alg, t, y)| {
            let t_inv = t.inverse().unwrap();
            let new = alg.change_of_basis(&t).unwrap();
            new.ensure_valid().unwrap();
            // y is in new coordinates; T y is the same element in old ones.
            let x = t.mul_vec(&y);
            let expected = t_inv.mul(&alg.ad_matrix(&x).unwrap()).mul(&t);
            prop_assert_eq!(new.ad_matrix(&y).unwrap(), expected);
            Ok(())
        })
        .unwrap();
}

#[test]
fn orbit_dimension_is_basis_independent() {
    let strategy = algebra().prop_flat_map(|alg| {
        let n = alg.dim();
        (Just(alg), invertible(n), vector(n))
    });
    runner(36, 48)
        .run(&strategy, |(alg, t, ell)| {
            let ell = Covector::new(ell);
            let new = alg.change_of_basis(&t).unwrap();
            let before = classify(&alg, &ell).unwrap();
            let after = classify(&new, &transform_covector(&ell, &t)).unwrap();
            prop_assert_eq!(before.orbit_dim, after.orbit_dim);
            prop_assert_eq!(before.orbit_dim % 2, 0);
            Ok(())
        })
        .unwrap();
}

#[test]
fn semidirect_product_is_unimodular_iff_derivation_is_traceless() {
    runner(37, 128)
        .run(&(1usize..=4).prop_flat_map(matrix), |d| {
            let alg = semidirect_from_derivation(&d).unwrap();
            alg.ensure_valid().unwrap();
            let unimodular = alg.is_unimodular() == Unimodularity::Unimodular;
            prop_assert_eq!(unimodular, d.trace().is_zero());
            let t = alg.dim() - 1;
            prop_assert_eq!(alg.ad_basis(t).trace(), d.trace());
            Ok(())
        })
        .unwrap();
}

#[test]
fn center_is_an_ideal_with_zero_adjoints() {
    runner(38, 64)
        .run(&algebra(), |alg| {
            let z = alg.center();
            prop_assert_eq!(is_ideal(&alg, &z), IdealCheck::Ideal);
            for c in z.basis() {
                prop_assert!(alg.ad_matrix(c).unwrap().is_zero());
            }
            // The center fixes every element, in particular the sum of the basis.
            let kernel = Subspace::kernel_of(&alg.ad_matrix(&vec![int(1); alg.dim()]).unwrap());
            prop_assert!(z.is_subspace_of(&kernel));
            Ok(())
        })
        .unwrap();
}
