use std::sync::OnceLock;

use proptest::prelude::*;
use quivalg::field::{FieldSpec, Scalar};
use quivalg::homotopy::{build_tilting_complex, hom_complexes, ChainMap, ProjComplex};
use quivalg::linalg::{axpy, Vector};
use quivalg::presets::{build_preset, Preset, PresetParams};
use quivalg::quiver::{AlgebraElement, Path};
use quivalg::rep::{projective, projective_cover, simple, syzygy};
use quivalg::rewrite::QuotientAlgebra;

fn spherical() -> &'static QuotientAlgebra {
    static A: OnceLock<QuotientAlgebra> = OnceLock::new();
    A.get_or_init(|| {
        let p = PresetParams::new(2, FieldSpec::rationals(2).unwrap()).unwrap();
        build_preset(Preset::Spherical, &p).unwrap()
    })
}

fn tetrahedral() -> &'static (QuotientAlgebra, Vec<ProjComplex>) {
    static A: OnceLock<(QuotientAlgebra, Vec<ProjComplex>)> = OnceLock::new();
    A.get_or_init(|| {
        let p = PresetParams::new(2, FieldSpec::rationals(-1).unwrap()).unwrap();
        let a = build_preset(Preset::Tetrahedral, &p).unwrap();
        let ts = build_tilting_complex(&a).unwrap();
        (a, ts)
    })
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| Scalar::ratio(n, d).unwrap())
}

fn residue() -> impl Strategy<Value = Scalar> {
    (0i64..101).prop_map(|v| Scalar::residue(v, 101))
}

/// A path starting at `start`, following arrow choices modulo out-degree.
fn walk(a: &QuotientAlgebra, start: usize, choices: &[usize]) -> Path {
    let q = a.quiver();
    let mut p = Path::stationary(start % q.num_vertices());
    for &c in choices {
        let out: Vec<usize> = q.arrows_from(p.target()).collect();
        p = p.compose(&q.arrow_path(out[c % out.len()])).unwrap();
    }
    p
}

fn field_laws(a: Scalar, b: Scalar, c: Scalar) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert_eq!(&(&a + &b) - &b, a.clone());
    if !a.is_zero() {
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        field_laws(a, b, c)?;
    }

    #[test]
    fn prime_field_laws(a in residue(), b in residue(), c in residue()) {
        field_laws(a, b, c)?;
    }

    #[test]
    fn normal_forms_are_idempotent_and_linear(
        s in 0usize..6, t in 0usize..6,
        x in proptest::collection::vec(0usize..4, 0..12),
        y in proptest::collection::vec(0usize..4, 0..12),
        c in -5i64..5,
    ) {
        let a = spherical();
        let p = AlgebraElement::from_path(walk(a, s, &x));
        let q = AlgebraElement::from_path(walk(a, t, &y));
        let np = a.normal_form(&p);
        prop_assert_eq!(a.normal_form(&np), np.clone());
        if p.endpoints() == q.endpoints() {
            let k = Scalar::from_int(c);
            let lhs = a.normal_form(&p.add(&q.scale(&k)));
            let rhs = np.add(&a.normal_form(&q).scale(&k));
            prop_assert_eq!(a.to_vector(&lhs), a.to_vector(&rhs));
        }
    }

    #[test]
    fn projective_modules_respect_products(
        v in 0usize..6, s in 0usize..6,
        x in proptest::collection::vec(0usize..4, 0..6),
        y in proptest::collection::vec(0usize..4, 0..6),
    ) {
        let a = spherical();
        let m = projective(a, v);
        let px = walk(a, s, &x);
        let py = walk(a, px.target(), &y);
        let xy = AlgebraElement::from_path(px.compose(&py).unwrap());
        let lhs = m.act_element(&a.normal_form(&xy));
        let ax = m.act_path(&px);
        let ay = m.act_path(&py);
        match lhs {
            Some(l) => prop_assert!(l.sub(&ax.mul(&ay)).is_zero()),
            None => prop_assert!(ax.mul(&ay).is_zero()),
        }
    }

    #[test]
    fn top_plus_radical_is_everything(v in 0usize..6, steps in 1usize..4) {
        let a = spherical();
        let mut m = simple(a, v);
        for _ in 0..steps {
            m = syzygy(a, &m);
        }
        let top: usize = m.top_dims(a).iter().sum();
        let cover = projective_cover(a, &m);
        prop_assert_eq!(top, cover.summands.len());
        prop_assert_eq!(syzygy(a, &m).dim() + m.dim(), cover.module.dim());
    }

    #[test]
    fn null_homotopic_maps_form_an_ideal(
        i in 0usize..6, j in 0usize..6, k in 0usize..6,
        seed in proptest::collection::vec(-3i64..4, 16),
    ) {
        let (a, ts) = tetrahedral();
        let st = a.structure();
        // a null-homotopic map T_i → T_j built from a random homotopy, composed
        // with a random chain map T_j → T_k
        let hij = hom_complexes(st, &ts[i], &ts[j], 0);
        let hjk = hom_complexes(st, &ts[j], &ts[k], 0);
        let hik = hom_complexes(st, &ts[i], &ts[k], 0);
        let null = null_homotopic_sample(st, &ts[i], &ts[j], &seed);
        prop_assert!(hij.is_null_homotopic(&null));
        for g in hjk.basis(st) {
            prop_assert!(hik.is_null_homotopic(&g.after(st, &null)));
        }
    }
}

/// `d h + h d` for a homotopy with entries drawn from `coeffs`.
fn null_homotopic_sample(
    st: &quivalg::algebra::FiniteAlgebra,
    x: &ProjComplex,
    y: &ProjComplex,
    coeffs: &[i64],
) -> ChainMap {
    let dim = st.dim();
    let mut it = coeffs.iter().cycle();
    let mut h = std::collections::BTreeMap::new();
    for n in x.start()..=x.end() {
        let rows = y.term(n - 1);
        let cols = x.term(n);
        let m: Vec<Vec<Vector>> = rows
            .iter()
            .map(|&r| {
                cols.iter()
                    .map(|&c| {
                        let mut v = vec![Scalar::zero(); dim];
                        for u in st.block_basis(r, c) {
                            axpy(&mut v, &Scalar::from_int(*it.next().unwrap()), &st.basis_vector(u));
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        h.insert(n, m);
    }
    let get = |n: i32| -> Vec<Vec<Vector>> {
        h.get(&n).cloned().unwrap_or_else(|| {
            vec![vec![vec![Scalar::zero(); dim]; x.term(n).len()]; y.term(n - 1).len()]
        })
    };
    let mut comps = std::collections::BTreeMap::new();
    for n in x.start()..=x.end() {
        let dy = y.diff(dim, n - 1);
        let dx = x.diff(dim, n);
        let (hn, hn1) = (get(n), get(n + 1));
        let rows = y.term(n).len();
        let cols = x.term(n).len();
        let mut out = vec![vec![vec![Scalar::zero(); dim]; cols]; rows];
        for r in 0..rows {
            for c in 0..cols {
                for k in 0..hn.len() {
                    axpy(&mut out[r][c], &Scalar::one(), &st.mul(&dy[r][k], &hn[k][c]));
                }
                for k in 0..dx.len() {
                    axpy(&mut out[r][c], &Scalar::one(), &st.mul(&hn1[r][k], &dx[k][c]));
                }
            }
        }
        comps.insert(n, out);
    }
    ChainMap::new(st, x.clone(), y.clone(), comps).expect("d h + h d is a chain map")
}
