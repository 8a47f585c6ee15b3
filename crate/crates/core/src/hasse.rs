//! Hasse diagram of the face lattice in Graphviz DOT.

use std::collections::HashMap;
use std::fmt::Write;

use crate::error::Result;
use crate::face::{enumerate_faces, merge_labels, FaceLabel};
use crate::sets::UserSet;

/// `(upper, lower)` index pairs into `labels` where `upper` covers `lower`:
/// one dimension higher and `merge(upper, lower) = lower`.
pub fn covering_pairs(labels: &[FaceLabel]) -> Result<Vec<(usize, usize)>> {
    let index: HashMap<&FaceLabel, usize> = labels.iter().enumerate().map(|(k, l)| (l, k)).collect();
    let mut pairs = Vec::new();
    for (lower, label) in labels.iter().enumerate() {
        let dim = label.dim()?;
        // A covering face's label is the lower label minus one of its sets.
        let chain = label.chain();
        let mut candidates: Vec<FaceLabel> = (0..chain.len())
            .map(|k| {
                let mut rest = chain.to_vec();
                rest.remove(k);
                FaceLabel::new(label.users(), rest, label.zeros())
            })
            .collect();
        candidates.extend(label.zeros().iter().map(|u| {
            FaceLabel::new(label.users(), chain.to_vec(), label.zeros() - UserSet::singleton(u))
        }));
        for upper_label in candidates {
            let Some(&upper) = index.get(&upper_label) else {
                continue;
            };
            if upper_label.dim()? == dim + 1 && merge_labels(&upper_label, label).as_ref() == Some(label) {
                pairs.push((upper, lower));
            }
        }
    }
    pairs.sort_unstable();
    Ok(pairs)
}

/// DOT digraph with one node per face, ranked bottom-up by dimension, and
/// an edge from each face to every face covering it.
pub fn lattice_dot(users: usize) -> Result<String> {
    let labels = enumerate_faces(users, None)?;
    let pairs = covering_pairs(&labels)?;
    let mut out = String::new();
    writeln!(out, "digraph face_lattice {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    for d in 0..=users {
        let members: Vec<usize> = labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.dim().ok() == Some(d))
            .map(|(k, _)| k)
            .collect();
        writeln!(out, "  subgraph dim_{d} {{").unwrap();
        writeln!(out, "    rank=same;").unwrap();
        for k in members {
            writeln!(out, "    n{k} [label=\"{}\"];", labels[k]).unwrap();
        }
        writeln!(out, "  }}").unwrap();
    }
    for (upper, lower) in pairs {
        writeln!(out, "  n{lower} -> n{upper};").unwrap();
    }
    writeln!(out, "}}").unwrap();
    Ok(out)
}
