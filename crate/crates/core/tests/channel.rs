mod common;

use std::collections::HashMap;

use mac_polytope::channel::{joint_distribution, mi_notation, JointPmf};
use mac_polytope::{mutual_info, ChannelSpec, Error, MiCache, UserSet};
use proptest::prelude::*;

use common::{arb_channel, assert_close, set, spec};

/// `I(X_S; Y | X_A)` as the expectation of `log p(y | x_{S∪A}) / p(y | x_A)`
/// over the joint pmf, marginalizing by hashing index tuples.
fn mi_from_joint(joint: &JointPmf, users: usize, s: UserSet, a: UserSet) -> f64 {
    let sa = s | a;
    let mut p_sa_y: HashMap<(Vec<usize>, usize), f64> = HashMap::new();
    let mut p_sa: HashMap<Vec<usize>, f64> = HashMap::new();
    let mut p_a_y: HashMap<(Vec<usize>, usize), f64> = HashMap::new();
    let mut p_a: HashMap<Vec<usize>, f64> = HashMap::new();
    let mut index = vec![0; joint.shape.len()];
    for &p in &joint.probs {
        let y = index[users];
        let key_sa: Vec<usize> = sa.iter().map(|u| index[u - 1]).collect();
        let key_a: Vec<usize> = a.iter().map(|u| index[u - 1]).collect();
        *p_sa_y.entry((key_sa.clone(), y)).or_default() += p;
        *p_sa.entry(key_sa).or_default() += p;
        *p_a_y.entry((key_a.clone(), y)).or_default() += p;
        *p_a.entry(key_a).or_default() += p;
        for k in (0..index.len()).rev() {
            index[k] += 1;
            if index[k] < joint.shape[k] {
                break;
            }
            index[k] = 0;
        }
    }
    let mut total = 0.0;
    for ((key_sa, y), &p) in &p_sa_y {
        if p <= 0.0 {
            continue;
        }
        let key_a: Vec<usize> = sa
            .iter()
            .zip(key_sa)
            .filter(|(u, _)| a.contains(*u))
            .map(|(_, &x)| x)
            .collect();
        let cond_full = p / p_sa[key_sa];
        let cond_a = p_a_y[&(key_a.clone(), *y)] / p_a[&key_a];
        total += p * (cond_full / cond_a).log2();
    }
    total
}

proptest! {
    #[test]
    fn mutual_information_matches_joint_marginals(spec in arb_channel()) {
        let joint = joint_distribution(&spec).unwrap();
        prop_assert!((joint.total() - 1.0).abs() < 1e-12);
        let cache = MiCache::new(&spec).unwrap();
        for (s, a, value) in cache.entries().unwrap() {
            let oracle = mi_from_joint(&joint, spec.users, s, a);
            prop_assert!((value - oracle).abs() < 1e-9, "I(S={s};Y|A={a}): {value} vs {oracle}");
            prop_assert!((mutual_info(&spec, s, a).unwrap() - value).abs() < 1e-12);
        }
    }

    #[test]
    fn chain_rule_and_bounds(spec in arb_channel()) {
        let cache = MiCache::new(&spec).unwrap();
        let full = UserSet::full(spec.users);
        let ny = spec.output_size as f64;
        for s in full.subsets() {
            for t in (full - s).subsets() {
                for a in (full - s - t).subsets() {
                    let whole = cache.get(s | t, a).unwrap();
                    let split = cache.get(s, a).unwrap() + cache.get(t, a | s).unwrap();
                    prop_assert!((whole - split).abs() < 1e-9);
                }
            }
            let value = cache.get(s, UserSet::EMPTY).unwrap();
            prop_assert!(value >= 0.0 && value <= ny.log2() + 1e-9);
        }
    }

    #[test]
    fn conditioning_never_increases_entropy(spec in arb_channel()) {
        let cache = MiCache::new(&spec).unwrap();
        let full = UserSet::full(spec.users);
        for b in full.subsets() {
            for a in b.subsets() {
                prop_assert!(cache.entropy(b) <= cache.entropy(a) + 1e-12);
            }
        }
    }

    #[test]
    fn conditioning_on_independent_inputs_never_hurts(spec in arb_channel()) {
        let cache = MiCache::new(&spec).unwrap();
        let full = UserSet::full(spec.users);
        for s in full.subsets() {
            for a in (full - s).subsets() {
                prop_assert!(cache.get(s, a).unwrap() + 1e-9 >= cache.get(s, UserSet::EMPTY).unwrap());
            }
        }
    }

    #[test]
    fn json_round_trip(spec in arb_channel()) {
        let text = spec.to_json_string().unwrap();
        prop_assert_eq!(ChannelSpec::from_json_str(&text).unwrap(), spec);
    }
}

#[test]
fn integer_adder_information() {
    let cache = MiCache::new(&spec("adder2")).unwrap();
    assert_close(cache.get(set(&[1]), UserSet::EMPTY).unwrap(), 0.5, 1e-12);
    assert_close(cache.get(set(&[1]), set(&[2])).unwrap(), 1.0, 1e-12);
    assert_close(cache.get(set(&[1, 2]), UserSet::EMPTY).unwrap(), 1.5, 1e-12);

    let cache = MiCache::new(&spec("adder3")).unwrap();
    // Y = X1 + X2 + X3 is Binomial(3, 1/2): H = 3 - (3/4) log2 3.
    let h = 3.0 - 0.75 * 3f64.log2();
    assert_close(cache.get(set(&[1, 2, 3]), UserSet::EMPTY).unwrap(), h, 1e-12);
    assert_close(h, 1.811278, 1e-6);
}

#[test]
fn mod_two_adder_hides_single_users() {
    let cache = MiCache::new(&spec("xor2")).unwrap();
    assert_eq!(cache.get(set(&[1]), UserSet::EMPTY).unwrap(), 0.0);
    assert_close(cache.get(set(&[1]), set(&[2])).unwrap(), 1.0, 1e-12);
    assert_close(cache.get(set(&[1, 2]), UserSet::EMPTY).unwrap(), 1.0, 1e-12);
}

#[test]
fn overlapping_sets_are_rejected() {
    let s = spec("adder2");
    assert!(matches!(mutual_info(&s, set(&[1]), set(&[1, 2])), Err(Error::Precondition(_))));
    assert!(matches!(mutual_info(&s, set(&[3]), UserSet::EMPTY), Err(Error::Precondition(_))));
}

#[test]
fn validation_names_the_field() {
    let mut bad = spec("adder2");
    bad.input_pmfs[1] = vec![0.6, 0.5];
    match bad.validate() {
        Err(Error::Validation { field, .. }) => assert_eq!(field, "input_pmfs[1]"),
        other => panic!("unexpected {other:?}"),
    }
    let mut bad = spec("adder2");
    bad.transition[2] = vec![0.5, 0.5, 0.5];
    match bad.validate() {
        Err(Error::Validation { field, .. }) => assert_eq!(field, "transition[2]"),
        other => panic!("unexpected {other:?}"),
    }
    let mut bad = spec("adder2");
    bad.transition.pop();
    match bad.validate() {
        Err(Error::Validation { field, .. }) => assert_eq!(field, "transition"),
        other => panic!("unexpected {other:?}"),
    }
    assert!(ChannelSpec::from_json_str("{\"users\": 2}").is_err());
}

#[test]
fn notation() {
    assert_eq!(mi_notation(set(&[1]), set(&[2])), "I(X_{1};Y|X_{2})");
    assert_eq!(mi_notation(set(&[1, 2]), UserSet::EMPTY), "I(X_{1,2};Y)");
}
