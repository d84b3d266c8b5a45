use std::sync::Arc;

use proptest::prelude::*;

use opetope::symcat::{
    check_axioms, check_comb, check_slice_targets, is_equivalence, iterated_slice, skeletalize, slice, slice_full,
    the_multicat_i, AxiomCheckConfig, Presentation, SymMulticat, SymMulticatMorphism, SymcatError,
};

const BINARY: &str = r#"{
    "name": "B",
    "objects": ["a"],
    "arrows": [{"code": "m", "source": ["a", "a"], "target": "a", "size": 1}],
    "composition": "free-on-generators",
    "action": "freely-symmetric"
}"#;

const TWO_COLOURS: &str = r#"{
    "objects": ["a", "b"],
    "arrows": [
        {"code": "f", "source": ["a", "b"], "target": "a", "size": 1},
        {"code": "g", "source": [], "target": "b", "size": 1}
    ],
    "composition": "free-on-generators",
    "action": "freely-symmetric"
}"#;

fn binary() -> Arc<dyn SymMulticat> {
    Arc::new(Presentation::from_json(BINARY).unwrap())
}

/// Planar binary trees with `n` inner nodes, counted by brute force.
fn binary_trees(n: usize) -> usize {
    fn trees(n: usize) -> Vec<String> {
        if n == 0 {
            return vec![".".into()];
        }
        let mut out = Vec::new();
        for left in 0..n {
            for l in trees(left) {
                for r in trees(n - 1 - left) {
                    out.push(format!("({}{})", l, r));
                }
            }
        }
        out
    }
    trees(n).len()
}

fn counts(q: &dyn SymMulticat, max: usize) -> Vec<usize> {
    let mut out = vec![0; max + 1];
    for x in q.objects(max).unwrap() {
        out[q.object_size(&x).unwrap()] += 1;
    }
    out
}

fn small() -> AxiomCheckConfig {
    AxiomCheckConfig {
        exhaustive_size: 3,
        random_size: 4,
        trials: 60,
        seed: 11,
    }
}

#[test]
fn slice_of_a_free_binary_operad_counts_binary_trees() {
    let s = slice(binary()).unwrap();
    let want: Vec<usize> = (0..=5).map(binary_trees).collect();
    assert_eq!(want, vec![1, 1, 2, 5, 14, 42]);
    assert_eq!(counts(&s, 5), want);
}

#[test]
fn full_slice_skeletalizes_to_the_skeletal_slice() {
    let full: Arc<dyn SymMulticat> = Arc::new(slice_full(binary()).unwrap());
    let sk = skeletalize(full.clone()).unwrap();
    assert!(counts(full.as_ref(), 3).iter().sum::<usize>() > counts(&sk, 3).iter().sum::<usize>());
    assert_eq!(counts(&sk, 4), counts(&slice(binary()).unwrap(), 4));
}

#[test]
fn presentations_satisfy_the_axioms() {
    for q in [binary(), Arc::new(Presentation::from_json(TWO_COLOURS).unwrap())] {
        let r = check_axioms(q.as_ref(), &small());
        assert!(r.passed(), "{}: {:?}", q.name(), r.failures().collect::<Vec<_>>());
        let s = slice(q).unwrap();
        let r = check_axioms(&s, &small());
        assert!(r.passed(), "{}: {:?}", s.name(), r.failures().collect::<Vec<_>>());
        assert!(check_slice_targets(&s, 3).passed);
    }
}

#[test]
fn slices_of_i_satisfy_the_axioms() {
    for k in 0..=2 {
        let q = iterated_slice(Arc::new(the_multicat_i()), k).unwrap();
        let r = check_axioms(q.as_ref(), &small());
        assert!(r.passed(), "k = {}: {:?}", k, r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn non_tidy_presentations_cannot_be_sliced() {
    let text = r#"{
        "objects": ["a"],
        "arrows": [{"code": "c", "source": ["a", "a"], "target": "a", "size": 1}],
        "composition": {"table": []},
        "action": {"fixed": [{"arrow": "c", "perm": [2, 1]}]}
    }"#;
    let q: Arc<dyn SymMulticat> = Arc::new(Presentation::from_json(text).unwrap());
    match slice(q.clone()) {
        Err(SymcatError::NotTidy { arrow, perm }) => {
            assert_eq!(arrow, "c");
            assert_eq!(perm, "[2,1]");
        }
        Err(e) => panic!("wrong error {}", e),
        Ok(_) => panic!("sliced a non-tidy presentation"),
    }
    assert!(skeletalize(q).is_err());
}

#[test]
fn slice_without_arrows_has_only_identities() {
    let text =
        r#"{"objects": ["a", "b"], "arrows": [], "composition": "free-on-generators", "action": "freely-symmetric"}"#;
    let q: Arc<dyn SymMulticat> = Arc::new(Presentation::from_json(text).unwrap());
    let s = slice(q.clone()).unwrap();
    let objs = s.objects(6).unwrap();
    assert_eq!(objs.len(), 2);
    for x in objs {
        let id = q.identity(&q.target(&x).unwrap()).unwrap();
        assert_eq!(x, id);
    }
}

#[test]
fn identity_morphism_is_an_equivalence() {
    for q in [binary(), iterated_slice(Arc::new(the_multicat_i()), 2).unwrap()] {
        let id = SymMulticatMorphism::identity(q);
        assert!(id.check_functor(3).passed());
        assert!(is_equivalence(&id, 3).unwrap());
    }
}

#[test]
fn presentations_round_trip_through_json() {
    let p = Presentation::from_json(TWO_COLOURS).unwrap();
    let text = serde_json::to_string(&p.to_file()).unwrap();
    let back = Presentation::from_json(&text).unwrap();
    assert_eq!(back.planar_arrows(3).unwrap(), p.planar_arrows(3).unwrap());
    assert_eq!(back.objects(3).unwrap(), p.objects(3).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn combing_preserves_evaluation(seed in any::<u64>(), k in 0usize..3) {
        let q = iterated_slice(Arc::new(the_multicat_i()), k).unwrap();
        let r = check_comb(q.as_ref(), 10, 5, 2, seed);
        prop_assert!(r.passed, "{:?}", r);
        let r = check_comb(binary().as_ref(), 10, 5, 2, seed);
        prop_assert!(r.passed, "{:?}", r);
    }

    #[test]
    fn planar_factorisation_is_unique(seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let q = slice(binary()).unwrap();
        let Some(f) = opetope::symcat::random_arrow(&q, 3, &mut rng).unwrap() else {
            return Ok(());
        };
        let (p, sigma) = q.planar_rep(&f).unwrap();
        prop_assert_eq!(q.act(&p, &sigma).unwrap(), f.clone());
        let (p2, s2) = q.planar_rep(&p).unwrap();
        prop_assert_eq!(p2, p);
        prop_assert!(s2.is_identity());
    }
}
