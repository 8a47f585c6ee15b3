mod common;

use std::time::Instant;

use mac_polytope::counting::count_vertices;
use mac_polytope::oracle::{
    affine_rank, build_face_lattice, counts_by_dim, cross_validate, enumerate_vertices, label_vertices,
    FEASIBILITY_TOL,
};
use mac_polytope::{
    build_hrep, dominant_vertex, enumerate_faces, locate_minimal_face, ChannelSpec, Error, Location, Region,
    UserSet,
};

use common::{permutations, region, spec, NONDEGENERATE};

/// Deterministic integer adder with `P(X_i = 1) = p_i`.
fn biased_adder(p: &[f64]) -> ChannelSpec {
    let users = p.len();
    let rows = 1usize << users;
    let transition = (0..rows)
        .map(|row| {
            let ones = row.count_ones() as usize;
            (0..=users).map(|y| if y == ones { 1.0 } else { 0.0 }).collect()
        })
        .collect();
    ChannelSpec {
        users,
        input_sizes: vec![2; users],
        output_size: users + 1,
        input_pmfs: p.iter().map(|&q| vec![1.0 - q, q]).collect(),
        transition,
    }
}

#[test]
fn pentagon_vertices() {
    let r = region("adder2");
    let hrep = r.hrep();
    let set = enumerate_vertices(hrep, FEASIBILITY_TOL).unwrap();
    let want = [[0.0, 0.0], [0.0, 1.0], [0.5, 1.0], [1.0, 0.0], [1.0, 0.5]];
    assert_eq!(set.len(), want.len());
    for (v, w) in set.vertices.iter().zip(want) {
        assert!(v.iter().zip(w).all(|(a, b)| (a - b).abs() < 1e-12), "{v:?} vs {w:?}");
    }
    // Two tight constraints at every vertex of a simple polygon.
    assert!(set.incidence.iter().all(|inc| inc.len() == 2));
    let faces = build_face_lattice(&set, hrep).unwrap();
    assert_eq!(counts_by_dim(&faces, 2), vec![5, 5, 1]);
}

#[test]
fn noiseless_bit_is_a_segment() {
    let bit = ChannelSpec {
        users: 1,
        input_sizes: vec![2],
        output_size: 2,
        input_pmfs: vec![vec![0.5, 0.5]],
        transition: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
    };
    let r = Region::new(&bit).unwrap();
    let set = enumerate_vertices(r.hrep(), FEASIBILITY_TOL).unwrap();
    assert_eq!(set.vertices, vec![vec![0.0], vec![1.0]]);
    let faces = build_face_lattice(&set, r.hrep()).unwrap();
    assert_eq!(counts_by_dim(&faces, 1), vec![2, 1]);
    let report = cross_validate(&bit).unwrap();
    assert!(report.is_clean());
    assert_eq!(report.faces, 3);
    assert_eq!(cross_validate(&spec("adder2")).unwrap().faces, 11);
    assert_eq!(cross_validate(&spec("adder3")).unwrap().faces, 51);
}

#[test]
fn degenerate_channel_loses_vertices() {
    // The mod-2 adder region is the triangle R_1 + R_2 <= 1.
    let hrep = build_hrep(&spec("xor2")).unwrap();
    let set = enumerate_vertices(&hrep, FEASIBILITY_TOL).unwrap();
    assert_eq!(set.len(), 3);
    assert!(matches!(cross_validate(&spec("xor2")), Err(Error::Degenerate(_))));
}

#[test]
fn five_users_have_floor_e_factorial_vertices() {
    let spec = biased_adder(&[0.1, 0.2, 0.3, 0.4, 0.45]);
    let region = Region::new(&spec).unwrap();
    let start = Instant::now();
    let set = enumerate_vertices(region.hrep(), FEASIBILITY_TOL).unwrap();
    assert_eq!(set.len().to_string(), count_vertices(5).to_string());
    assert_eq!(set.len(), 326);
    eprintln!("M=5 vertex enumeration took {:?}", start.elapsed());
    assert!(matches!(cross_validate(&spec), Err(Error::Capacity { .. })));
    let six = biased_adder(&[0.1, 0.2, 0.3, 0.4, 0.45, 0.35]);
    assert!(matches!(
        enumerate_vertices(&build_hrep(&six).unwrap(), FEASIBILITY_TOL),
        Err(Error::Capacity { .. })
    ));
}

#[test]
fn labels_match_the_geometric_lattice() {
    for name in NONDEGENERATE {
        let report = cross_validate(&spec(name)).unwrap();
        assert!(report.is_clean(), "{name}: {:?}", report.mismatches);
        let formula: Vec<String> = report.oracle_counts.iter().map(|c| c.to_string()).collect();
        assert_eq!(formula, report.formula_counts);
        let labels = report.matches.len();
        assert_eq!(report.pairs_checked, labels * (labels + 1) / 2);
    }
}

#[test]
fn lattice_has_the_diamond_property() {
    for name in ["adder3_biased", "noisy3", "adder4_biased"] {
        let r = region(name);
        let set = enumerate_vertices(r.hrep(), FEASIBILITY_TOL).unwrap();
        let faces = build_face_lattice(&set, r.hrep()).unwrap();
        let contains = |big: &[usize], small: &[usize]| small.iter().all(|v| big.binary_search(v).is_ok());
        for lower in &faces {
            for upper in faces.iter().filter(|f| f.dim == lower.dim + 2) {
                if !contains(&upper.vertex_ids, &lower.vertex_ids) {
                    continue;
                }
                let between = faces
                    .iter()
                    .filter(|f| f.dim == lower.dim + 1)
                    .filter(|f| contains(&upper.vertex_ids, &f.vertex_ids) && contains(&f.vertex_ids, &lower.vertex_ids))
                    .count();
                assert_eq!(between, 2, "{name}: {:?} < {:?}", lower.vertex_ids, upper.vertex_ids);
            }
        }
        // Every face is the convex hull of its vertices: affine rank equals dimension.
        for f in &faces {
            let points: Vec<&[f64]> = f.vertex_ids.iter().map(|&v| set.vertices[v].as_slice()).collect();
            assert_eq!(affine_rank(&points), f.dim);
        }
    }
}

#[test]
fn dominant_vertices_are_oracle_vertices() {
    for name in NONDEGENERATE {
        let r = region(name);
        let set = enumerate_vertices(r.hrep(), FEASIBILITY_TOL).unwrap();
        let dominant_facet = r.hrep().front_index(UserSet::full(r.users()));
        let mut seen: Vec<Vec<f64>> = Vec::new();
        for order in permutations(r.users()) {
            let v = dominant_vertex(&r, &order).unwrap();
            let found = set
                .vertices
                .iter()
                .position(|w| w.iter().zip(&v).all(|(a, b)| (a - b).abs() < 1e-9));
            assert!(found.is_some(), "{name}: {order:?} gives {v:?}");
            assert!(set.incidence[found.unwrap()].contains(&dominant_facet));
            assert!(seen.iter().all(|w| w.iter().zip(&v).any(|(a, b)| (a - b).abs() > 1e-7)));
            seen.push(v);
        }
    }
}

#[test]
fn centroids_locate_to_their_own_label() {
    for name in NONDEGENERATE {
        let r = region(name);
        let set = enumerate_vertices(r.hrep(), FEASIBILITY_TOL).unwrap();
        for label in enumerate_faces(r.users(), None).unwrap() {
            let ids = label_vertices(&label, r.hrep(), &set);
            let mut centroid = vec![0.0; r.users()];
            for &v in &ids {
                for (c, x) in centroid.iter_mut().zip(&set.vertices[v]) {
                    *c += x / ids.len() as f64;
                }
            }
            let located = locate_minimal_face(&r, &centroid, 1e-9).unwrap();
            assert_eq!(located, Location::Face { label: label.clone() }, "{name}");
        }
    }
}

#[test]
fn affine_rank_examples() {
    assert_eq!(affine_rank(&[]), 0);
    assert_eq!(affine_rank(&[&[1.0, 2.0]]), 0);
    assert_eq!(affine_rank(&[&[0.0, 0.0], &[1.0, 1.0], &[2.0, 2.0]]), 1);
    assert_eq!(affine_rank(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]), 2);
}
