//! Discrete memoryless multiple-access channels with a fixed product input
//! distribution, and the conditional mutual informations `I(X_S; Y | X_A)`
//! that bound the rate region.
//!
//! All information quantities are in bits.

use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets::{UserSet, MAX_USERS};

/// Probability vectors must sum to one within this tolerance.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// A computed mutual information below `-NEGATIVE_MI_TOL` is a bug, not noise.
pub const NEGATIVE_MI_TOL: f64 = 1e-9;

/// Caches with at most this many users are filled eagerly.
pub const EAGER_CACHE_USERS: usize = 8;

/// An `M`-user discrete MAC `W(y | x_1, ..., x_M)` together with independent
/// input pmfs `P_{X_1}, ..., P_{X_M}`.
///
/// `transition` has one row per input tuple in row-major order with `x_1`
/// varying slowest, and one column per output symbol.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub users: usize,
    pub input_sizes: Vec<usize>,
    pub output_size: usize,
    pub input_pmfs: Vec<Vec<f64>>,
    pub transition: Vec<Vec<f64>>,
}

fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::Validation {
        field: field.into(),
        reason: reason.into(),
    }
}

fn check_distribution(field: &str, probs: &[f64]) -> Result<()> {
    if let Some((k, p)) = probs
        .iter()
        .enumerate()
        .find(|(_, p)| !(0.0..=1.0).contains(*p))
    {
        return Err(invalid(format!("{field}[{k}]"), format!("probability {p} outside [0, 1]")));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(invalid(field, format!("sums to {total}, not 1")));
    }
    Ok(())
}

impl ChannelSpec {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let spec: ChannelSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Number of input tuples, `∏ |X_i|`.
    pub fn input_tuples(&self) -> usize {
        self.input_sizes.iter().product()
    }

    pub fn validate(&self) -> Result<()> {
        if self.users == 0 {
            return Err(invalid("users", "need at least one user"));
        }
        if self.users > MAX_USERS {
            return Err(invalid("users", format!("at most {MAX_USERS} users are supported")));
        }
        if self.input_sizes.len() != self.users {
            return Err(invalid(
                "input_sizes",
                format!("has {} entries for {} users", self.input_sizes.len(), self.users),
            ));
        }
        if let Some(k) = self.input_sizes.iter().position(|&n| n == 0) {
            return Err(invalid(format!("input_sizes[{k}]"), "alphabet must be nonempty"));
        }
        if self.output_size == 0 {
            return Err(invalid("output_size", "alphabet must be nonempty"));
        }
        if self.input_pmfs.len() != self.users {
            return Err(invalid(
                "input_pmfs",
                format!("has {} entries for {} users", self.input_pmfs.len(), self.users),
            ));
        }
        for (i, (pmf, &n)) in self.input_pmfs.iter().zip(&self.input_sizes).enumerate() {
            let field = format!("input_pmfs[{i}]");
            if pmf.len() != n {
                return Err(invalid(field, format!("has {} entries, alphabet size is {n}", pmf.len())));
            }
            check_distribution(&field, pmf)?;
        }
        let rows = self.input_tuples();
        if self.transition.len() != rows {
            return Err(invalid(
                "transition",
                format!("has {} rows, expected {rows}", self.transition.len()),
            ));
        }
        for (r, row) in self.transition.iter().enumerate() {
            let field = format!("transition[{r}]");
            if row.len() != self.output_size {
                return Err(invalid(
                    field,
                    format!("has {} columns, output_size is {}", row.len(), self.output_size),
                ));
            }
            check_distribution(&field, row)?;
        }
        Ok(())
    }

    /// Decodes a transition row index into the input tuple `(x_1, ..., x_M)`.
    pub fn input_tuple(&self, mut row: usize) -> Vec<usize> {
        let mut x = vec![0; self.users];
        for i in (0..self.users).rev() {
            x[i] = row % self.input_sizes[i];
            row /= self.input_sizes[i];
        }
        x
    }

    /// Probability of an input tuple under the product distribution.
    fn input_weight(&self, x: &[usize]) -> f64 {
        x.iter()
            .zip(&self.input_pmfs)
            .map(|(&xi, pmf)| pmf[xi])
            .product()
    }

    /// `H(Y | X_T)` in bits.
    pub fn conditional_entropy(&self, given: UserSet) -> f64 {
        let members: Vec<usize> = given.iter().map(|u| u - 1).collect();
        let groups: usize = members.iter().map(|&i| self.input_sizes[i]).product();
        let ny = self.output_size;
        // p(x_T, y) accumulated row by row; p(x_T) is the row sum.
        let mut joint = vec![0.0; groups * ny];
        for row in 0..self.input_tuples() {
            let x = self.input_tuple(row);
            let weight = self.input_weight(&x);
            if weight == 0.0 {
                continue;
            }
            let g = members
                .iter()
                .fold(0, |acc, &i| acc * self.input_sizes[i] + x[i]);
            for (cell, &w) in joint[g * ny..(g + 1) * ny].iter_mut().zip(&self.transition[row]) {
                *cell += weight * w;
            }
        }
        joint
            .chunks(ny)
            .map(|cells| {
                let marginal: f64 = cells.iter().sum();
                if marginal <= 0.0 {
                    return 0.0;
                }
                cells
                    .iter()
                    .filter(|&&p| p > 0.0)
                    .map(|&p| p * (marginal / p).log2())
                    .sum::<f64>()
            })
            .sum()
    }
}

fn check_disjoint(set: UserSet, given: UserSet) -> Result<()> {
    if set.is_disjoint(given) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "mutual information I(X_{set};Y|X_{given}) needs disjoint sets"
        )))
    }
}

fn check_in_range(users: usize, sets: &[UserSet]) -> Result<()> {
    let full = UserSet::full(users);
    match sets.iter().find(|s| !s.is_subset(full)) {
        Some(s) => Err(Error::Precondition(format!("{s} is not a subset of [{users}]"))),
        None => Ok(()),
    }
}

/// Clamps float noise to zero and rejects genuinely negative values.
fn clamp_mi(value: f64, set: UserSet, given: UserSet) -> Result<f64> {
    if value < -NEGATIVE_MI_TOL {
        return Err(Error::Internal(format!(
            "I(X_{set};Y|X_{given}) computed as {value}"
        )));
    }
    Ok(value.max(0.0))
}

/// `I(X_S; Y | X_A) = H(Y | X_A) - H(Y | X_{A ∪ S})`, computed directly.
pub fn mutual_info(spec: &ChannelSpec, set: UserSet, given: UserSet) -> Result<f64> {
    check_in_range(spec.users, &[set, given])?;
    check_disjoint(set, given)?;
    if set.is_empty() {
        return Ok(0.0);
    }
    let value = spec.conditional_entropy(given) - spec.conditional_entropy(given | set);
    clamp_mi(value, set, given)
}

/// Joint pmf over `(x_1, ..., x_M, y)`, row-major in that order.
#[derive(Clone, Debug, PartialEq)]
pub struct JointPmf {
    pub shape: Vec<usize>,
    pub probs: Vec<f64>,
}

impl JointPmf {
    pub fn get(&self, index: &[usize]) -> f64 {
        debug_assert_eq!(index.len(), self.shape.len());
        let flat = index
            .iter()
            .zip(&self.shape)
            .fold(0, |acc, (&i, &n)| acc * n + i);
        self.probs[flat]
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

/// `P(x_1) ⋯ P(x_M) · W(y | x)` for every cell.
pub fn joint_distribution(spec: &ChannelSpec) -> Result<JointPmf> {
    spec.validate()?;
    let mut shape = spec.input_sizes.clone();
    shape.push(spec.output_size);
    let probs = spec
        .transition
        .iter()
        .enumerate()
        .flat_map(|(row, w)| {
            let weight = spec.input_weight(&spec.input_tuple(row));
            w.iter().map(move |&p| weight * p)
        })
        .collect();
    Ok(JointPmf { shape, probs })
}

/// All conditional mutual informations of one channel.
///
/// Values are derived from the `2^M` conditional entropies `H(Y | X_T)`,
/// which are filled eagerly for small `M` and on first use otherwise. The
/// cache is `Sync`; once built it can be shared across threads.
#[derive(Debug)]
pub struct MiCache {
    spec: ChannelSpec,
    entropies: Vec<OnceLock<f64>>,
}

impl MiCache {
    pub fn new(spec: &ChannelSpec) -> Result<Self> {
        spec.validate()?;
        let cache = MiCache {
            spec: spec.clone(),
            entropies: (0..1usize << spec.users).map(|_| OnceLock::new()).collect(),
        };
        if spec.users <= EAGER_CACHE_USERS {
            for t in UserSet::all(spec.users) {
                cache.entropy(t);
            }
        }
        Ok(cache)
    }

    pub fn users(&self) -> usize {
        self.spec.users
    }

    pub fn spec(&self) -> &ChannelSpec {
        &self.spec
    }

    /// `H(Y | X_T)`.
    pub fn entropy(&self, given: UserSet) -> f64 {
        *self.entropies[given.bits() as usize].get_or_init(|| self.spec.conditional_entropy(given))
    }

    /// `I(X_S; Y | X_A)` for disjoint `S`, `A`.
    pub fn get(&self, set: UserSet, given: UserSet) -> Result<f64> {
        check_in_range(self.users(), &[set, given])?;
        check_disjoint(set, given)?;
        if set.is_empty() {
            return Ok(0.0);
        }
        clamp_mi(self.entropy(given) - self.entropy(given | set), set, given)
    }

    /// `I(X_S; Y | X_{S^c})`, the front bound of `S`.
    pub fn front_bound(&self, set: UserSet) -> Result<f64> {
        self.get(set, set.complement(self.users()))
    }

    /// Every `(S, A, I(X_S; Y | X_A))` with `S ∩ A = ∅`: `3^M` entries.
    pub fn entries(&self) -> Result<Vec<(UserSet, UserSet, f64)>> {
        let full = UserSet::full(self.users());
        let mut out = Vec::new();
        for set in full.subsets() {
            for given in full.difference(set).subsets() {
                out.push((set, given, self.get(set, given)?));
            }
        }
        Ok(out)
    }
}

/// Notation used in reports: `I(X_{1,2};Y|X_{3})`, or `I(X_{1};Y)` when
/// nothing is conditioned on.
pub fn mi_notation(set: UserSet, given: UserSet) -> String {
    if given.is_empty() {
        format!("I(X_{set};Y)")
    } else {
        format!("I(X_{set};Y|X_{given})")
    }
}
