use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use uqsln::action::assemble;
use uqsln::families;
use uqsln::patterns::{Eta, EtaTable};
use uqsln::verify::{
    classify, hermiticity_check, highest_weight_states, irreducibility, relation_residuals, ClassifyOptions, Family,
    Irreducibility,
};
use uqsln::{build_module, rescale_to_eta, Direction, Error, Variant};

#[test]
fn relations_hold_on_every_family() {
    for n in 2..=4 {
        for spec in [
            families::generic_periodic(n, 3, 8).unwrap(),
            families::semi_periodic(n, 3, 8).unwrap(),
            families::nilpotent(n, 3, 8).unwrap(),
        ] {
            let module = build_module(&spec).unwrap();
            let residuals = relation_residuals(&module.ops);
            assert!(residuals.max() < 1e-9, "{:?}", residuals.by_family());
        }
    }
}

#[test]
fn relations_hold_for_a_non_primitive_root() {
    let mut spec = families::generic_periodic(3, 5, 4).unwrap();
    spec.ctx = uqsln::QContext::root_of_unity_with(5, 2).unwrap();
    let module = build_module(&spec).unwrap();
    assert!(relation_residuals(&module.ops).max() < 1e-9);
}

#[test]
fn families_are_recognised() {
    let cases = [
        (families::generic_periodic(3, 3, 1).unwrap(), Family::Periodic),
        (families::semi_periodic(3, 3, 1).unwrap(), Family::SemiPeriodicHw),
        (families::nilpotent(3, 3, 1).unwrap(), Family::Nilpotent),
        (families::usual(&[1, -1, -3], 0.7).unwrap(), Family::Usual),
    ];
    for (spec, family) in cases {
        let report = classify(&build_module(&spec).unwrap(), ClassifyOptions::default()).unwrap();
        assert_eq!(report.family, family);
        assert_eq!(report.irreducible, Irreducibility::Irreducible);
    }
}

#[test]
fn classification_ignores_state_order() {
    let spec = families::nilpotent(3, 3, 6).unwrap();
    let module = build_module(&spec).unwrap();
    let mut states = module.states.clone();
    states.reverse();
    states.rotate_left(5);
    let shuffled = assemble(&spec, states).unwrap();
    let a = classify(&module, ClassifyOptions::default()).unwrap();
    let b = classify(&shuffled, ClassifyOptions::default()).unwrap();
    assert_eq!(a.family, b.family);
    assert_eq!(a.irreducible, b.irreducible);
    let hw = |m: &uqsln::RepModule, s: Option<usize>| s.map(|s| m.states[s].clone());
    assert_eq!(hw(&module, a.highest_weight), hw(&shuffled, b.highest_weight));
    assert_eq!(hw(&module, a.lowest_weight), hw(&shuffled, b.lowest_weight));
}

#[test]
fn reducibility_is_detected() {
    let module = build_module(&families::generic_periodic(3, 3, 2).unwrap()).unwrap();
    let doubled = module.ops.direct_sum(&module.ops);
    assert_eq!(irreducibility(&doubled, 64, 1), Irreducibility::Reducible);
}

#[test]
fn direct_root_vectors_reject_bad_ranges() {
    let module = build_module(&families::generic_periodic(3, 3, 2).unwrap()).unwrap();
    assert!(module.root_vector_direct(0, 0, Direction::Lower, Variant::Plain).is_err());
    assert!(module.root_vector_direct(2, 1, Direction::Lower, Variant::Plain).is_err());
}

#[test]
fn usual_modules_at_generic_q_are_hermitian() {
    for top in [vec![3, -2], vec![2, 0, -3], vec![1, 0, -2, -4]] {
        let module = build_module(&families::usual(&top, 0.31).unwrap()).unwrap();
        assert!(hermiticity_check(&module).unwrap() < 1e-12, "top {top:?}");
    }
}

#[test]
fn real_nilpotent_modules_are_transpose_symmetric() {
    let module = build_module(&families::nilpotent_real(3, 3, 4).unwrap()).unwrap();
    for l in 1..3 {
        assert!((module.e(l) - &module.f(l).transpose()).max_abs() < 1e-12);
    }
    assert!(hermiticity_check(&build_module(&families::nilpotent(3, 3, 4).unwrap()).unwrap()).is_err());
}

#[test]
fn rescale_needs_distinct_classes() {
    let spec = families::nilpotent(3, 3, 2).unwrap();
    let module = build_module(&spec).unwrap();
    let target = spec.clone().with_eta(EtaTable::uniform(3, Eta::One)).unwrap();
    assert!(matches!(rescale_to_eta(&module, &target), Err(Error::CoincidentClasses(_))));
}

#[test]
fn rescale_to_a_mixed_table_matches_direct_build() {
    let base = families::generic_periodic(3, 3, 12).unwrap();
    let module = build_module(&base).unwrap();
    let mut eta = EtaTable::uniform(3, Eta::Half);
    eta.set(1, 1, 1, Eta::One);
    eta.set(2, 1, 1, Eta::Zero);
    eta.set(3, 2, 2, Eta::One);
    let target = base.clone().with_eta(eta).unwrap();
    let rescaled = rescale_to_eta(&module, &target).unwrap();
    let direct = build_module(&target).unwrap();
    for l in 1..3 {
        assert!((rescaled.e(l) - direct.e(l)).max_abs() < 1e-8);
        assert!((rescaled.f(l) - direct.f(l)).max_abs() < 1e-8);
    }
}

#[test]
fn highest_weight_of_semi_periodic_module_sits_on_the_top_row() {
    let module = build_module(&families::semi_periodic(3, 5, 9).unwrap()).unwrap();
    let hw = highest_weight_states(&module.ops);
    assert_eq!(hw.len(), 1);
    let p = &module.states[hw[0]];
    for l in 1..3 {
        for i in 1..=l {
            let pos = uqsln::Pos::new(i, l);
            assert_eq!(p.get(pos), p.get(uqsln::Pos::new(i, 3)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn generic_periodic_relations(n in 2usize..=3, m in prop::sample::select(vec![3u32, 5, 7]), seed in any::<u64>()) {
        let module = build_module(&families::generic_periodic(n, m, seed).unwrap()).unwrap();
        prop_assert!(relation_residuals(&module.ops).max() < 1e-9);
    }

    #[test]
    fn gauge_change_preserves_spectra(seed in any::<u64>()) {
        let spec = families::nilpotent(3, 3, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let other = spec.clone().with_c(families::random_c(3, &mut rng)).unwrap();
        let (a, b) = (build_module(&spec).unwrap(), build_module(&other).unwrap());
        // f e is gauge invariant entrywise: the c factors cancel along the move and back.
        for l in 1..3 {
            let fa = a.f(l).matmul(a.e(l));
            let fb = b.f(l).matmul(b.e(l));
            let da: Vec<Complex64> = fa.diagonal_values();
            let db: Vec<Complex64> = fb.diagonal_values();
            for (x, y) in da.iter().zip(&db) {
                prop_assert!((x - y).norm() < 1e-9);
            }
        }
    }
}
