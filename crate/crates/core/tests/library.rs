use qsg::pit::{expand_oracle, gen, hitting_set_generate, pit_run, sz_test, HsParams};
use qsg::quadsg::{generate, validate_triple, Family, GenParams, Mutation};
use qsg::rng::seeded;

#[test]
fn corrupted_triples_report_their_documented_violations() {
    for mutation in [Mutation::OutlierSquare, Mutation::DuplicateMember] {
        for seed in 0..5 {
            let p = GenParams { n: 4, sizes: [2, 2, 2], mutation, ..GenParams::default() };
            let t = generate(Family::Corrupted, &p, seed).unwrap();
            let rep = validate_triple(&t, 4).unwrap();
            assert!(!rep.all_ok());
            let expected = &t.meta.as_ref().unwrap().expected_violations;
            for v in expected {
                assert!(rep.violations.contains(v), "{mutation:?} seed {seed}: {v:?}");
            }
        }
    }
}

#[test]
fn valid_families_pass_validation() {
    for family in [Family::Pencil, Family::SquaresEk] {
        for seed in 0..5 {
            let t = generate(family, &GenParams::default(), seed).unwrap();
            assert!(validate_triple(&t, 4).unwrap().all_ok(), "{family:?} {seed}");
        }
    }
}

#[test]
fn hitting_set_and_randomized_test_agree_with_expansion() {
    let mut rng = seeded(5);
    for _ in 0..10 {
        let c = gen::random_circuit(&mut rng, 4, 2).unwrap();
        let hs = hitting_set_generate(4, c.degree(), 4, HsParams::default()).unwrap();
        let zero = expand_oracle(&c).unwrap().is_zero();
        assert_eq!(pit_run(&c, &hs).unwrap().is_zero(), zero);
        if zero {
            assert!(sz_test(&c, 10, 1).unwrap().witness.is_none());
        }
    }
    let z = gen::zero_circuit(&mut rng, 3).unwrap();
    let hs = hitting_set_generate(3, z.degree(), 3, HsParams { identity: true }).unwrap();
    assert!(pit_run(&z, &hs).unwrap().is_zero());
    assert!(sz_test(&z, 10, 1).unwrap().witness.is_none());
}
