use quivalg::analysis::cartan;
use quivalg::field::FieldSpec;
use quivalg::homotopy::{
    build_generators, build_tilting_complex, endomorphism_algebra, euler_hom_dimension, hom_complexes,
    verify_spherical_presentation, verify_tilting, ChainMap, ProjComplex,
};
use quivalg::presets::{build_preset, parse_element, Preset, PresetParams};
use quivalg::rewrite::QuotientAlgebra;
use quivalg::Error;

fn setup(m: usize, field: FieldSpec) -> (PresetParams, QuotientAlgebra, Vec<ProjComplex>) {
    let p = PresetParams::new(m, field).unwrap();
    let lam = build_preset(Preset::Tetrahedral, &p).unwrap();
    let ts = build_tilting_complex(&lam).unwrap();
    (p, lam, ts)
}

#[test]
fn small_hom_spaces() {
    let (_, lam, ts) = setup(2, FieldSpec::rationals(1).unwrap());
    let a = lam.structure();
    assert_eq!(hom_complexes(a, &ts[0], &ts[2], 0).dim(), 3);
    for t in &ts {
        assert_eq!(hom_complexes(a, &ts[2], t, 1).dim(), 0);
    }
    // a stalk projective has the endomorphisms of the projective module
    let e1 = hom_complexes(a, &ts[0], &ts[0], 0);
    assert_eq!(e1.dim(), 3);
    assert_eq!(e1.null_homotopic_dim(), 0);
}

#[test]
fn identity_of_the_two_term_summand_is_not_null_homotopic() {
    let (_, lam, ts) = setup(2, FieldSpec::rationals(1).unwrap());
    let a = lam.structure();
    let h = hom_complexes(a, &ts[2], &ts[2], 0);
    let id = ChainMap::identity(a, &ts[2]);
    assert!(!h.is_null_homotopic(&id));
    assert!(h.chain_map_dim() > h.dim());
}

#[test]
fn non_complexes_and_non_chain_maps_are_rejected() {
    let (_, lam, ts) = setup(2, FieldSpec::rationals(1).unwrap());
    let a = lam.structure();
    let q = lam.quiver();
    let v = |n: &str| q.vertex(n).unwrap();
    let arrow = |n: &str| lam.arrow_vector(q.arrow_id(n).unwrap());
    let path = |w: &str| lam.to_vector(&parse_element(q, lam.field(), w).unwrap());
    let bad = ProjComplex::new(
        a,
        0,
        vec![vec![v("1")], vec![v("3")], vec![v("2")]],
        vec![vec![vec![arrow("alpha")]], vec![vec![path("epsilon.xi")]]],
    );
    assert!(!quivalg::linalg::is_zero_vector(&path("epsilon.xi.alpha")));
    assert!(matches!(bad, Err(Error::NotAComplex(0))));
    // P_5 → P_2 by ε does not commute with the differential of T_3
    let mut comps = std::collections::BTreeMap::new();
    comps.insert(-1, vec![vec![arrow("epsilon")]]);
    let f = ChainMap::new(a, ProjComplex::stalk(v("5"), -1), ts[2].clone(), comps);
    assert!(matches!(f, Err(Error::NotAChainMap(-1))));
}

#[test]
fn endomorphism_ring_of_the_tilting_complex() {
    for m in [2, 3] {
        let (p, lam, ts) = setup(m, FieldSpec::rationals(1).unwrap());
        let end = endomorphism_algebra(lam.structure(), &ts);
        assert_eq!(end.dim(), 36 * m + 4);
        assert!(end.structure().is_associative());
        let sph = build_preset(Preset::Spherical, &p).unwrap();
        assert_eq!(cartan(end.structure()), cartan(sph.structure()));
    }
}

#[test]
fn endomorphisms_of_the_projective_stalks_recover_the_algebra() {
    let (_, lam, _) = setup(2, FieldSpec::rationals(1).unwrap());
    let stalks: Vec<ProjComplex> = (0..6).map(|v| ProjComplex::stalk(v, 0)).collect();
    let end = endomorphism_algebra(lam.structure(), &stalks);
    assert_eq!(end.dim(), 72);
    assert_eq!(cartan(end.structure()), cartan(lam.structure()));
}

#[test]
fn euler_form_agrees_with_graded_homs() {
    let (_, lam, ts) = setup(2, FieldSpec::rationals(1).unwrap());
    let a = lam.structure();
    let c = cartan(a);
    assert_eq!(euler_hom_dimension(&ts[0], &ts[2], &c), 3);
    for x in &ts {
        for y in &ts {
            let alt: i64 = (-3..=3)
                .map(|s| {
                    let d = hom_complexes(a, x, y, s).dim() as i64;
                    if s % 2 == 0 { d } else { -d }
                })
                .sum();
            assert_eq!(euler_hom_dimension(x, y, &c), alt);
        }
    }
}

#[test]
fn tilting_conditions() {
    for m in [2, 3] {
        let (_, lam, ts) = setup(m, FieldSpec::rationals(-1).unwrap());
        let report = verify_tilting(lam.structure(), &ts).unwrap();
        assert_eq!(report.generation_order.len(), 6);
        assert!(report.shifted_homs.iter().all(|h| h.dim == 0));
    }
    let (_, lam, ts) = setup(2, FieldSpec::rationals(1).unwrap());
    let mut dropped = ts.clone();
    dropped.remove(2);
    assert!(matches!(
        verify_tilting(lam.structure(), &dropped),
        Err(Error::Condition2Failure(2))
    ));
    // adding a shifted copy breaks the vanishing condition
    let mut shifted = ts.clone();
    shifted.push(ts[0].shift(1));
    assert!(matches!(
        verify_tilting(lam.structure(), &shifted),
        Err(Error::Condition1Failure { .. })
    ));
}

#[test]
fn generators_satisfy_the_spherical_relations() {
    for m in [2, 3] {
        for lambda in [1, 2, -1] {
            let (p, lam, ts) = setup(m, FieldSpec::rationals(lambda).unwrap());
            let end = endomorphism_algebra(lam.structure(), &ts);
            let gens = build_generators(&lam, &ts, m).unwrap();
            let report = verify_spherical_presentation(&end, &gens, &p).unwrap();
            for c in report.identities.iter().chain(&report.relations) {
                assert!(c.passed, "m = {m}, λ = {lambda}: {} leaves {}", c.name, c.residual);
            }
            assert_eq!(report.generated_dim, 36 * m + 4);
            assert_eq!(report.image_rank, 36 * m + 4);
            assert_eq!(report.arrow_matrix, report.spherical_arrows);
        }
    }
}

#[test]
fn presentation_over_a_prime_field() {
    let (p, lam, ts) = setup(2, FieldSpec::prime(5, 2).unwrap());
    let end = endomorphism_algebra(lam.structure(), &ts);
    let gens = build_generators(&lam, &ts, 2).unwrap();
    let report = verify_spherical_presentation(&end, &gens, &p).unwrap();
    assert!(report.passed());
}
