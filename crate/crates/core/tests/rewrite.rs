use quivalg::field::FieldSpec;
use quivalg::presets::{build_preset, parse_element, tetrahedral, Preset, PresetParams};
use quivalg::quiver::{AlgebraElement, Path, Quiver};
use quivalg::rewrite::{verify_by_truncation, Strategy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn params(m: usize, lambda: i64) -> PresetParams {
    PresetParams::new(m, FieldSpec::rationals(lambda).unwrap()).unwrap()
}

fn random_path(q: &Quiver, rng: &mut ChaCha8Rng, max_len: usize) -> Path {
    let len = rng.gen_range(0..=max_len);
    let mut p = Path::stationary(rng.gen_range(0..q.num_vertices()));
    for _ in 0..len {
        let out: Vec<usize> = q.arrows_from(p.target()).collect();
        let a = out[rng.gen_range(0..out.len())];
        p = p.compose(&q.arrow_path(a)).unwrap();
    }
    p
}

#[test]
fn preset_dimensions_m2() {
    let s = build_preset(Preset::Spherical, &params(2, 1)).unwrap();
    assert_eq!(s.dim(), 76);
    let t = build_preset(Preset::Tetrahedral, &params(2, 1)).unwrap();
    assert_eq!(t.dim(), 72);
}

#[test]
fn truncation_oracle_agrees_blockwise() {
    for preset in [Preset::Spherical, Preset::Tetrahedral] {
        let p = params(2, 1);
        let a = build_preset(preset, &p).unwrap();
        let pres = preset.presentation(&p);
        let table = verify_by_truncation(&pres.quiver, &pres.elements(), 14).unwrap();
        assert_eq!(table.blocks, a.structure().cartan(), "{preset}");
        assert_eq!(table.total(), preset.expected_dim(2));
    }
}

#[test]
fn defining_relations_vanish() {
    for preset in [Preset::Spherical, Preset::Tetrahedral] {
        for m in [2, 3] {
            let p = params(m, -1);
            let a = build_preset(preset, &p).unwrap();
            for r in preset.presentation(&p).elements() {
                assert!(a.normal_form(&r).is_zero());
            }
        }
    }
}

#[test]
fn leftmost_and_rightmost_rewriting_agree() {
    for preset in [Preset::Spherical, Preset::Tetrahedral] {
        let a = build_preset(preset, &params(2, 2)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let p = AlgebraElement::from_path(random_path(a.quiver(), &mut rng, a.degree_cap()));
            let l = a.system().normal_form_with(&p, Strategy::Leftmost);
            let r = a.system().normal_form_with(&p, Strategy::Rightmost);
            assert_eq!(l, r);
        }
    }
}

#[test]
fn normal_form_is_multiplicative() {
    let a = build_preset(Preset::Spherical, &params(2, 1)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let x = random_path(a.quiver(), &mut rng, 8);
        let mut y = random_path(a.quiver(), &mut rng, 8);
        if x.target() != y.source() {
            y = Path::stationary(x.target());
        }
        let xy = AlgebraElement::from_path(x.compose(&y).unwrap());
        let nx = a.normal_form(&AlgebraElement::from_path(x));
        let ny = a.normal_form(&AlgebraElement::from_path(y));
        assert_eq!(a.normal_form(&xy), a.normal_form(&nx.mul(&ny)));
    }
}

#[test]
fn spherical_lemma_identities() {
    for m in [2, 3] {
        let p = params(m, 1);
        let a = build_preset(Preset::Spherical, &p).unwrap();
        let q = a.quiver();
        let f = p.field();
        let zero = [
            format!("(beta.gamma.sigma.alpha)^{}.beta.gamma.sigma.rho", m - 1),
            format!("(alpha.beta.gamma.sigma)^{m}.rho"),
            format!("omega.gamma.sigma.alpha.(beta.gamma.sigma.alpha)^{}", m - 1),
            format!("omega.(gamma.sigma.alpha.beta)^{m}"),
            format!("(sigma.alpha.beta.gamma)^{}.sigma.alpha.beta.nu", m - 1),
            format!("(gamma.sigma.alpha.beta)^{m}.nu"),
            format!("delta.alpha.beta.gamma.(sigma.alpha.beta.gamma)^{}", m - 1),
            format!("delta.(alpha.beta.gamma.sigma)^{m}"),
        ];
        for z in &zero {
            let x = parse_element(q, f, z).unwrap();
            assert!(a.normal_form(&x).is_zero(), "{z} at m = {m}");
        }
        for r in 2..=m {
            for (l, rr) in [
                ("rho.omega.nu.delta", "alpha.beta.gamma.sigma"),
                ("nu.delta.rho.omega", "gamma.sigma.alpha.beta"),
            ] {
                let x = parse_element(q, f, &format!("({l})^{r} - ({rr})^{r}")).unwrap();
                assert!(a.normal_form(&x).is_zero());
            }
        }
        let wrong = parse_element(q, f, "alpha.beta").unwrap();
        assert_eq!(a.normal_form(&wrong), wrong);
    }
}

#[test]
fn tetrahedral_long_cycles_vanish() {
    let p = params(2, 1);
    let a = build_preset(Preset::Tetrahedral, &p).unwrap();
    let (pres, data) = tetrahedral(&p);
    // f-orbit cycles of length 3m + 1 are zero
    for theta in 0..pres.quiver.num_arrows() {
        let mut w = vec![theta];
        while w.len() < 7 {
            w.push(data.f[*w.last().unwrap()]);
        }
        let x = AlgebraElement::from_path(pres.quiver.path_of(&w).unwrap());
        assert!(a.normal_form(&x).is_zero());
    }
    assert!(a.loewy_length() <= 3 * 2 + 1);
}
