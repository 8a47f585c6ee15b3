#![allow(dead_code)]

use std::path::PathBuf;

use mac_polytope::{ChannelSpec, Region, UserSet};
use proptest::prelude::*;

pub const NONDEGENERATE: [&str; 5] = ["adder2", "adder3", "adder3_biased", "noisy3", "adder4_biased"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

pub fn spec(name: &str) -> ChannelSpec {
    ChannelSpec::from_path(fixture_path(name)).unwrap()
}

pub fn region(name: &str) -> Region {
    Region::new(&spec(name)).unwrap()
}

pub fn set(users: &[usize]) -> UserSet {
    UserSet::from_users(users.iter().copied())
}

pub fn assert_close(got: f64, want: f64, tol: f64) {
    assert!((got - want).abs() <= tol, "got {got}, want {want}");
}

/// All permutations of `1..=m`, by Heap's algorithm.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            items.swap(j, k - 1);
        }
    }
    let mut items: Vec<usize> = (1..=m).collect();
    let mut out = Vec::new();
    heap(m, &mut items, &mut out);
    out
}

pub fn distribution(weights: Vec<f64>) -> Vec<f64> {
    let total: f64 = weights.iter().sum();
    weights.iter().map(|w| w / total).collect()
}

/// Random channels with up to three users, alphabets up to 3 and outputs up to 4.
pub fn arb_channel() -> impl Strategy<Value = ChannelSpec> {
    (prop::collection::vec(1usize..=3, 1..=3), 1usize..=4)
        .prop_flat_map(|(sizes, output)| {
            let pmfs: Vec<_> = sizes.iter().map(|&n| prop::collection::vec(0.05f64..1.0, n)).collect();
            let rows = prop::collection::vec(
                prop::collection::vec(prop_oneof![Just(0.0), 0.01f64..1.0], output),
                sizes.iter().product::<usize>(),
            );
            (Just(sizes), Just(output), pmfs, rows)
        })
        .prop_map(|(sizes, output, pmfs, rows)| {
            let transition = rows
                .into_iter()
                .enumerate()
                .map(|(r, mut row)| {
                    if row.iter().all(|&w| w == 0.0) {
                        row[r % output] = 1.0;
                    }
                    distribution(row)
                })
                .collect();
            ChannelSpec {
                users: sizes.len(),
                input_sizes: sizes,
                output_size: output,
                input_pmfs: pmfs.into_iter().map(distribution).collect(),
                transition,
            }
        })
}

/// Channels with at least binary alphabets and strictly positive
/// transitions, which are non-degenerate with probability one.
pub fn arb_generic_channel() -> impl Strategy<Value = ChannelSpec> {
    (prop::collection::vec(2usize..=3, 1..=3), 2usize..=4)
        .prop_flat_map(|(sizes, output)| {
            let pmfs: Vec<_> = sizes.iter().map(|&n| prop::collection::vec(0.05f64..1.0, n)).collect();
            let rows = prop::collection::vec(
                prop::collection::vec(0.01f64..1.0, output),
                sizes.iter().product::<usize>(),
            );
            (Just(sizes), Just(output), pmfs, rows)
        })
        .prop_map(|(sizes, output, pmfs, rows)| ChannelSpec {
            users: sizes.len(),
            input_sizes: sizes,
            output_size: output,
            input_pmfs: pmfs.into_iter().map(distribution).collect(),
            transition: rows.into_iter().map(distribution).collect(),
        })
}
