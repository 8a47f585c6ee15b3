//! Formula-free ground truth: vertices by solving every square subsystem of
//! the half-space description, faces by intersecting facet vertex sets.
//! Exponential in `M` and capped accordingly.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::channel::ChannelSpec;
use crate::counting::count_total;
use crate::error::{Error, Result};
use crate::face::{enumerate_faces, merge_labels, FaceLabel};
use crate::region::{HRep, Region};

pub const VERTEX_CAP: usize = 5;
pub const LATTICE_CAP: usize = 4;

/// Pivot magnitude below which a square subsystem counts as singular.
pub const SINGULAR_PIVOT: f64 = 1e-10;
/// Feasibility and incidence tolerance.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Solutions closer than this are the same vertex.
pub const DEDUP_RADIUS: f64 = 1e-7;
/// Singular values above this count toward affine rank.
pub const RANK_TOL: f64 = 1e-7;

#[derive(Clone, Debug, Serialize)]
pub struct VertexSet {
    pub users: usize,
    pub vertices: Vec<Vec<f64>>,
    /// Sorted indices of the constraints tight at each vertex.
    pub incidence: Vec<Vec<usize>>,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Ids of vertices where every constraint in `constraints` is tight.
    pub fn incident_to(&self, constraints: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| constraints.iter().all(|c| self.incidence[v].binary_search(c).is_ok()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometricFace {
    /// Every constraint tight on the whole face; empty for the region itself.
    pub facet_set: Vec<usize>,
    pub vertex_ids: Vec<usize>,
    pub dim: usize,
}

fn cap(what: &'static str, requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        return Err(Error::Capacity {
            what,
            requested,
            cap,
            advice: "the brute-force oracle is exponential in the number of users",
        });
    }
    Ok(())
}

fn solve_square(hrep: &HRep, rows: &[usize]) -> Result<Option<Vec<f64>>> {
    let m = hrep.users();
    let cs = hrep.constraints();
    let a = DMatrix::from_fn(m, m, |r, c| cs[rows[r]].normal(m)[c]);
    let b = DVector::from_fn(m, |r, _| cs[rows[r]].bound);
    let lu = a.clone().lu();
    if lu.u().diagonal().iter().any(|p| p.abs() < SINGULAR_PIVOT) {
        return Ok(None);
    }
    let Some(x) = lu.solve(&b) else {
        return Ok(None);
    };
    let residual = (&a * &x - &b).amax();
    if residual > FEASIBILITY_TOL {
        return Err(Error::Internal(format!(
            "ill-conditioned subsystem {rows:?}: residual {residual:e}"
        )));
    }
    // Round-off around coordinate zero would otherwise print as -0.
    Ok(Some(x.iter().map(|&v| if v.abs() < 1e-12 { 0.0 } else { v }).collect()))
}

/// Every vertex of the region, sorted lexicographically.
pub fn enumerate_vertices(hrep: &HRep, tol: f64) -> Result<VertexSet> {
    let m = hrep.users();
    cap("users", m, VERTEX_CAP)?;
    let mut vertices: Vec<Vec<f64>> = Vec::new();
    for rows in (0..hrep.constraints().len()).combinations(m) {
        let Some(x) = solve_square(hrep, &rows)? else {
            continue;
        };
        if hrep.first_violation(&x, tol).is_some() {
            continue;
        }
        let duplicate = vertices.iter().any(|v| {
            v.iter().zip(&x).map(|(p, q)| (p - q).powi(2)).sum::<f64>().sqrt() < DEDUP_RADIUS
        });
        if !duplicate {
            vertices.push(x);
        }
    }
    vertices.sort_by(|p, q| {
        p.iter()
            .zip(q)
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let incidence = vertices
        .iter()
        .map(|v| {
            hrep.constraints()
                .iter()
                .enumerate()
                .filter(|(_, c)| c.excess(v).abs() <= tol)
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    Ok(VertexSet {
        users: m,
        vertices,
        incidence,
    })
}

/// Dimension of the affine hull of the given points.
pub fn affine_rank(points: &[&[f64]]) -> usize {
    let Some((base, rest)) = points.split_first() else {
        return 0;
    };
    if rest.is_empty() {
        return 0;
    }
    let diffs = DMatrix::from_fn(rest.len(), base.len(), |r, c| rest[r][c] - base[c]);
    diffs
        .singular_values()
        .iter()
        .filter(|&&s| s > RANK_TOL)
        .count()
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// All nonempty faces, including the region itself, sorted by dimension and
/// then by vertex ids. Faces are the nonempty intersections of facet vertex
/// sets, closed one constraint at a time. Incidence (and so tolerance)
/// comes from the vertex set.
pub fn build_face_lattice(vertices: &VertexSet, hrep: &HRep) -> Result<Vec<GeometricFace>> {
    cap("users", hrep.users(), LATTICE_CAP)?;
    let all: Vec<usize> = (0..vertices.len()).collect();
    let mut family: HashSet<Vec<usize>> = HashSet::new();
    if !all.is_empty() {
        family.insert(all);
    }
    for c in 0..hrep.constraints().len() {
        let on_facet = vertices.incident_to(&[c]);
        if on_facet.is_empty() {
            continue;
        }
        let added: Vec<Vec<usize>> = family
            .iter()
            .map(|set| intersect_sorted(set, &on_facet))
            .filter(|set| !set.is_empty())
            .collect();
        family.extend(added);
    }

    let mut faces = Vec::with_capacity(family.len());
    for vertex_ids in family {
        let facet_set = vertex_ids
            .iter()
            .map(|&v| vertices.incidence[v].clone())
            .reduce(|acc, inc| intersect_sorted(&acc, &inc))
            .unwrap_or_default();
        if vertices.incident_to(&facet_set) != vertex_ids {
            return Err(Error::Internal(format!(
                "vertex set {vertex_ids:?} is not closed under its tight constraints"
            )));
        }
        let points: Vec<&[f64]> = vertex_ids.iter().map(|&v| vertices.vertices[v].as_slice()).collect();
        faces.push(GeometricFace {
            facet_set,
            dim: affine_rank(&points),
            vertex_ids,
        });
    }
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertex_ids.cmp(&b.vertex_ids)));
    Ok(faces)
}

/// Per-dimension counts of a face list, indexed `0..=users`.
pub fn counts_by_dim(faces: &[GeometricFace], users: usize) -> Vec<usize> {
    let mut counts = vec![0; users + 1];
    for face in faces {
        counts[face.dim] += 1;
    }
    counts
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelMatch {
    pub label: FaceLabel,
    pub label_dim: usize,
    pub face: Option<usize>,
    pub geometric_dim: Option<usize>,
    pub vertices: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub users: usize,
    pub oracle_counts: Vec<usize>,
    pub formula_counts: Vec<String>,
    pub vertices: usize,
    pub faces: usize,
    pub pairs_checked: usize,
    pub matches: Vec<LabelMatch>,
    pub mismatches: Vec<String>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Vertex ids of the face a label describes, read off the incidence table.
pub fn label_vertices(label: &FaceLabel, hrep: &HRep, vertices: &VertexSet) -> Vec<usize> {
    let tight: Vec<usize> = label
        .chain()
        .iter()
        .map(|&s| hrep.front_index(s))
        .chain(label.zeros().iter().map(|u| hrep.back_index(u)))
        .sorted()
        .collect();
    vertices.incident_to(&tight)
}

/// Compares labels against the geometric lattice: counts per dimension,
/// a one-to-one label/face correspondence with equal dimensions, and the
/// intersection rule for every unordered pair of labels.
pub fn cross_validate(spec: &ChannelSpec) -> Result<ValidationReport> {
    let users = spec.users;
    cap("users", users, LATTICE_CAP)?;
    let region = Region::new(spec)?;
    let hrep = region.hrep();
    let vertices = enumerate_vertices(hrep, FEASIBILITY_TOL)?;
    let faces = build_face_lattice(&vertices, hrep)?;
    let mut mismatches = Vec::new();

    let oracle_counts = counts_by_dim(&faces, users);
    let mut formula_counts = Vec::with_capacity(users + 1);
    for (d, &oracle) in oracle_counts.iter().enumerate() {
        let formula = count_total(users, d)?;
        if formula != oracle.into() {
            mismatches.push(format!("dimension {d}: oracle has {oracle} faces, formula gives {formula}"));
        }
        formula_counts.push(formula.to_string());
    }

    let face_of: HashMap<&[usize], usize> = faces
        .iter()
        .enumerate()
        .map(|(k, f)| (f.vertex_ids.as_slice(), k))
        .collect();
    let labels = enumerate_faces(users, None)?;
    let label_sets: Vec<Vec<usize>> = labels.iter().map(|l| label_vertices(l, hrep, &vertices)).collect();
    let mut hits = vec![0usize; faces.len()];
    let mut matches = Vec::with_capacity(labels.len());
    for (label, set) in labels.iter().zip(&label_sets) {
        let label_dim = label.dim()?;
        let face = face_of.get(set.as_slice()).copied();
        match face {
            None => mismatches.push(format!("{label} matches no geometric face ({} vertices)", set.len())),
            Some(k) => {
                hits[k] += 1;
                if faces[k].dim != label_dim {
                    mismatches.push(format!(
                        "{label}: label dimension {label_dim}, geometric dimension {}",
                        faces[k].dim
                    ));
                }
            }
        }
        matches.push(LabelMatch {
            label: label.clone(),
            label_dim,
            face,
            geometric_dim: face.map(|k| faces[k].dim),
            vertices: set.len(),
        });
    }
    for (k, &n) in hits.iter().enumerate() {
        if n != 1 {
            mismatches.push(format!(
                "geometric face {:?} (dim {}) is matched by {n} labels",
                faces[k].vertex_ids, faces[k].dim
            ));
        }
    }

    let index_of: HashMap<&FaceLabel, usize> = labels.iter().enumerate().map(|(k, l)| (l, k)).collect();
    let mut pairs_checked = 0;
    for i in 0..labels.len() {
        for j in i..labels.len() {
            pairs_checked += 1;
            let common = intersect_sorted(&label_sets[i], &label_sets[j]);
            match merge_labels(&labels[i], &labels[j]) {
                None if common.is_empty() => {}
                None => mismatches.push(format!(
                    "{} and {} merge to nothing but share {} vertices",
                    labels[i],
                    labels[j],
                    common.len()
                )),
                Some(merged) if common.is_empty() => mismatches.push(format!(
                    "{} and {} merge to {merged} but share no vertex",
                    labels[i], labels[j]
                )),
                Some(merged) => {
                    let same = index_of.get(&merged).map(|&k| label_sets[k] == common);
                    if same != Some(true) {
                        mismatches.push(format!(
                            "{} and {} merge to {merged}, whose face is not their intersection",
                            labels[i], labels[j]
                        ));
                    }
                }
            }
        }
    }

    Ok(ValidationReport {
        users,
        oracle_counts,
        formula_counts,
        vertices: vertices.len(),
        faces: faces.len(),
        pairs_checked,
        matches,
        mismatches,
    })
}
