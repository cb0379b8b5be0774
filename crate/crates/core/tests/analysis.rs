use quivalg::analysis::{
    arrow_generators, arrow_matrix, cartan, find_symmetrizing_form, socle_dims, DEFAULT_SEARCH_CAP,
};
use quivalg::field::FieldSpec;
use quivalg::presets::{build_preset, Preset, PresetParams};

const LAMBDAS: [i64; 3] = [1, 2, -1];

#[test]
fn cartan_matrices_match_closed_forms() {
    for preset in [Preset::Spherical, Preset::Tetrahedral] {
        for m in [2, 3] {
            for lambda in LAMBDAS {
                let p = PresetParams::new(m, FieldSpec::rationals(lambda).unwrap()).unwrap();
                let a = build_preset(preset, &p).unwrap();
                let c = cartan(a.structure());
                assert_eq!(c.0, preset.expected_cartan(m), "{preset} m={m} λ={lambda}");
                assert!(c.is_symmetric());
                assert_eq!(c.total(), a.dim());
                let rows: Vec<usize> = (0..6).map(|i| a.structure().row_basis(i).len()).collect();
                assert_eq!(c.row_sums(), rows);
                assert_eq!(c.column_sums(), rows);
            }
        }
    }
    let p = PresetParams::new(2, FieldSpec::rationals(1).unwrap()).unwrap();
    let c = cartan(build_preset(Preset::Spherical, &p).unwrap().structure());
    assert_eq!(c.0[0], vec![3, 2, 3, 2, 2, 2]);
}

#[test]
fn socles_are_simple() {
    for preset in [Preset::Spherical, Preset::Tetrahedral] {
        let p = PresetParams::new(2, FieldSpec::rationals(1).unwrap()).unwrap();
        let a = build_preset(preset, &p).unwrap();
        assert_eq!(socle_dims(a.structure(), &arrow_generators(&a)), vec![1; 6]);
    }
}

#[test]
fn quivers_are_recovered_from_the_radical() {
    for preset in [Preset::Spherical, Preset::Tetrahedral] {
        let p = PresetParams::new(2, FieldSpec::rationals(2).unwrap()).unwrap();
        let a = build_preset(preset, &p).unwrap();
        let mut adj = vec![vec![0usize; 6]; 6];
        for arr in a.quiver().arrows() {
            adj[arr.source][arr.target] += 1;
        }
        assert_eq!(arrow_matrix(a.structure(), &arrow_generators(&a)), adj);
    }
}

#[test]
fn both_presets_are_symmetric() {
    for preset in [Preset::Spherical, Preset::Tetrahedral] {
        for m in [2, 3] {
            for lambda in LAMBDAS {
                let p = PresetParams::new(m, FieldSpec::rationals(lambda).unwrap()).unwrap();
                let a = build_preset(preset, &p).unwrap();
                let form = find_symmetrizing_form(a.structure(), 7, DEFAULT_SEARCH_CAP)
                    .unwrap_or_else(|| panic!("{preset} m={m} λ={lambda}"));
                assert_eq!(form.gram_rank, a.dim());
                assert!(form.check_random_pairs(a.structure(), 50, 3));
            }
        }
    }
}
