use quivalg::field::FieldSpec;
use quivalg::presets::{parse_presentation, serialize_presentation, Preset, PresetParams};
use quivalg::rewrite::DEFAULT_RULE_BUDGET;
use quivalg::Error;

fn q() -> FieldSpec {
    FieldSpec::rationals(1).unwrap()
}

#[test]
fn presets_round_trip() {
    for field in [FieldSpec::rationals(-1).unwrap(), FieldSpec::rationals(2).unwrap(), FieldSpec::prime(7, 3).unwrap()] {
        for preset in [Preset::Spherical, Preset::Tetrahedral] {
            let p = PresetParams::new(2, field.clone()).unwrap();
            let pres = preset.presentation(&p);
            let text = serialize_presentation(&pres);
            let back = parse_presentation(&text, &field).unwrap();
            assert_eq!(back, pres, "{preset} over {field}");
            assert_eq!(serialize_presentation(&back), text);
        }
    }
}

#[test]
fn parsed_file_builds() {
    let text = "\
# a commutative square
vertex 1
vertex 2
vertex 3
vertex 4
arrow a: 1 -> 2
arrow b: 2 -> 4
arrow c: 1 -> 3
arrow d: 3 -> 4
relation a.b = c.d
";
    let pres = parse_presentation(text, &q()).unwrap();
    assert_eq!(pres.quiver.num_arrows(), 4);
    let a = pres.build(&q(), 3, DEFAULT_RULE_BUDGET).unwrap();
    assert_eq!(a.dim(), 9);
}

#[test]
fn scalars_and_powers() {
    let field = FieldSpec::rationals(3).unwrap();
    let text = "vertex 1\narrow x: 1 -> 1\nrelation (x)^3 = 2/3*L^2*x.x\n";
    let pres = parse_presentation(text, &field).unwrap();
    let rhs = &pres.relations[0].rhs;
    assert_eq!(rhs.coefficient(&pres.quiver.word("x.x").unwrap()), field.int(6));
    // x^3 = 6 x^2 keeps every power of x nonzero
    assert!(matches!(
        pres.build(&field, 6, DEFAULT_RULE_BUDGET),
        Err(Error::NoFiniteCertificate { .. })
    ));
}

#[test]
fn syntax_errors_carry_positions() {
    let text = "vertex 1\nvertex 2\narrow a: 1 -> 2\nrelation a = a $ a\n";
    match parse_presentation(text, &q()) {
        Err(Error::Syntax { line, column, .. }) => {
            assert_eq!(line, 4);
            assert_eq!(column, 16);
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        parse_presentation("vertex 1\nfrobnicate 2\n", &q()),
        Err(Error::Syntax { line: 2, column: 1, .. })
    ));
    assert!(matches!(
        parse_presentation("vertex 1\narrow L: 1 -> 1\n", &q()),
        Err(Error::Syntax { line: 2, .. })
    ));
}

#[test]
fn semantic_errors() {
    let base = "vertex 1\nvertex 2\narrow a: 1 -> 2\narrow b: 2 -> 1\n";
    assert!(matches!(
        parse_presentation(&format!("{base}relation a = b\n"), &q()),
        Err(Error::NonParallelRelation(_))
    ));
    assert!(matches!(
        parse_presentation(&format!("{base}relation a.c = 0\n"), &q()),
        Err(Error::UnknownArrow(_))
    ));
    assert!(matches!(
        parse_presentation(&format!("{base}relation a.a = 0\n"), &q()),
        Err(Error::NotComposable(_))
    ));
    assert!(matches!(
        parse_presentation("vertex 1\narrow a: 1 -> 9\n", &q()),
        Err(Error::UnknownVertex(_))
    ));
}
