// SPDX-License-Identifier: Apache-2.0

use approx::relative_eq;
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use superheis_core::families::{Family, FamilyParams, StandardGenerators};
use superheis_core::superspace::{
    default_test_vectors, hermite_function, inner_product, norm, super_inner_product, test_set, SuperFunction,
};
use superheis_core::{gauss_moment, GrassmannElement, PolyGauss};

/// Composite Simpson rule on a window around the Gaussian peak.
fn quadrature(n: u32, s: Complex64, t: Complex64) -> Complex64 {
    let f = |x: f64| Complex64::new(x.powi(n as i32), 0.0) * (-s * x * x / 2.0 + t * x).exp();
    let centre = t.re / s.re;
    let half = 12.0 / s.re.sqrt() + 6.0;
    let (lo, hi) = (centre - half, centre + half);
    let steps = 40_000;
    let h = (hi - lo) / steps as f64;
    let mut sum = f(lo) + f(hi);
    for i in 1..steps {
        sum += f(lo + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    sum * h / 3.0
}

fn complex_close(a: Complex64, b: Complex64, rel: f64) -> bool {
    let scale = a.norm().max(b.norm()).max(1.0);
    relative_eq!((a - b).norm() / scale, 0.0, epsilon = rel)
}

fn pool() -> std::sync::Arc<superheis_core::GeneratorPool> {
    StandardGenerators::get().pool.clone()
}

fn c(z: Complex64) -> GrassmannElement {
    GrassmannElement::scalar(&pool(), z)
}

fn coeff() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

/// A combination of shifted, modulated Hermite functions in one variable.
fn profile() -> impl Strategy<Value = PolyGauss> {
    prop::collection::vec((0usize..4, coeff(), -1.0..1.0f64, -1.0..1.0f64), 1..4).prop_map(|parts| {
        let p = pool();
        parts.into_iter().fold(PolyGauss::zero(&p, 1), |acc, (deg, w, shift, omega)| {
            let f = hermite_function(&p, 1, [deg, 0]).translate(0, &GrassmannElement::scalar(&p, shift)).unwrap();
            let phase = PolyGauss::exp_affine(&GrassmannElement::zero(&p), &[c(Complex64::new(0.0, omega))]).unwrap();
            acc.add(&f.multiply(&phase).unwrap().scale(&c(w)))
        })
    })
}

fn pair(f: &PolyGauss, g: &PolyGauss) -> Complex64 {
    PolyGauss::l2_pair(f, g).unwrap().body()
}

fn family_spaces() -> Vec<std::sync::Arc<superheis_core::superspace::SuperHilbertSpec>> {
    (1..=7).map(|id| Family::new(FamilyParams::default_for(id)).unwrap().space().clone()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        rng_seed: RngSeed::Fixed(0x5eed),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn moments_match_quadrature(
        n in 0u32..=8,
        (s, t) in ((0.3..5.0f64, -1.0..1.0f64), (-2.0..2.0f64, -2.0..2.0f64))
            .prop_filter("|S| <= 5, |T| <= 3", |((sr, si), (tr, ti))| sr.hypot(*si) <= 5.0 && tr.hypot(*ti) <= 3.0)
            .prop_map(|((sr, si), (tr, ti))| (Complex64::new(sr, si), Complex64::new(tr, ti)))
    ) {
        let exact = gauss_moment(n, s, t).unwrap();
        let numeric = quadrature(n, s, t);
        prop_assert!(complex_close(exact, numeric, 1e-8), "n={n} S={s} T={t}: {exact} vs {numeric}");
    }

    #[test]
    fn pairing_is_sesquilinear(f in profile(), g in profile(), h in profile(), a in coeff(), b in coeff()) {
        let lhs = pair(&f.scale(&c(a)), &g.scale(&c(b)).add(&h));
        let rhs = a.conj() * b * pair(&f, &g) + a.conj() * pair(&f, &h);
        prop_assert!(complex_close(lhs, rhs, 1e-10));
        prop_assert!(complex_close(pair(&g, &f), pair(&f, &g).conj(), 1e-10));
        prop_assert!(pair(&f, &f).re >= 0.0 && pair(&f, &f).im.abs() <= 1e-10);
    }

    #[test]
    fn pairing_is_translation_and_modulation_invariant(f in profile(), g in profile(), shift in -2.0..2.0f64, omega in -2.0..2.0f64) {
        let p = pool();
        let base = pair(&f, &g);
        let tr = |u: &PolyGauss| u.translate(0, &GrassmannElement::scalar(&p, shift)).unwrap();
        prop_assert!(complex_close(pair(&tr(&f), &tr(&g)), base, 1e-10));
        let phase = PolyGauss::exp_affine(&GrassmannElement::zero(&p), &[c(Complex64::new(0.0, omega))]).unwrap();
        let md = |u: &PolyGauss| u.multiply(&phase).unwrap();
        prop_assert!(complex_close(pair(&md(&f), &md(&g)), base, 1e-10));
    }

    #[test]
    fn integration_by_parts(f in profile(), g in profile()) {
        let lhs = pair(&f.differentiate(0).unwrap(), &g);
        let rhs = -pair(&f, &g.differentiate(0).unwrap());
        prop_assert!(complex_close(lhs, rhs, 1e-10));
    }

    #[test]
    fn super_pairing_is_bounded(family in 0usize..7, w in prop::collection::vec(coeff(), 8)) {
        let space = &family_spaces()[family];
        let vectors = test_set(space);
        let mix = |offset: usize| {
            vectors.iter().enumerate().fold(vectors[0].scale(&c(Complex64::new(0.0, 0.0))), |acc, (i, v)| {
                acc.add(&v.scale(&c(w[(i + offset) % w.len()]))).unwrap()
            })
        };
        let (x, y) = (mix(0), mix(3));
        let value = super_inner_product(&x, &y).unwrap().body().norm();
        prop_assert!(value <= norm(&x).unwrap() * norm(&y).unwrap() * (1.0 + 1e-10) + 1e-12);
    }
}

#[test]
fn super_pairing_graded_symmetry() {
    for space in family_spaces() {
        let vectors = default_test_vectors(&space);
        for x in &vectors {
            for y in &vectors {
                let dx = x.parity().degree().unwrap();
                let dy = y.parity().degree().unwrap();
                let sign = if dx * dy % 2 == 0 { 1.0 } else { -1.0 };
                let xy = super_inner_product(x, y).unwrap().body();
                let yx = super_inner_product(y, x).unwrap().body();
                assert!((yx - xy.conj() * sign).norm() <= 1e-12, "{xy} vs {yx}");
            }
        }
    }
}

#[test]
fn gram_matrices_are_nondegenerate() {
    for space in family_spaces() {
        let vectors: Vec<SuperFunction> = test_set(&space);
        let n = vectors.len();
        let hom = default_test_vectors(&space).len();
        let gram = DMatrix::from_fn(hom, hom, |i, j| inner_product(&vectors[i], &vectors[j]).unwrap().body());
        let smallest = gram.singular_values().min();
        assert!(smallest > 1e-6, "smallest singular value {smallest} of {n} vectors");
        for i in 0..hom {
            assert!((gram[(i, i)] - Complex64::new(1.0, 0.0)).norm() <= 1e-12);
        }
    }
}
