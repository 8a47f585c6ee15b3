//! The rate polytope `R = { R ≥ 0 : R(S) ≤ I(X_S; Y | X_{S^c}) for all S }`
//! in half-space form, and the non-degeneracy test that every face-structure
//! result depends on.

use std::fmt;

use serde::Serialize;

use crate::channel::{mi_notation, ChannelSpec, MiCache};
use crate::error::{Error, Result};
use crate::sets::UserSet;

/// Default strict-inequality margin for the degeneracy test, in bits.
pub const DEFAULT_MARGIN: f64 = 1e-9;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintKind {
    /// `R(S) ≤ bound`.
    Front,
    /// `R_i ≥ 0`.
    Back,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize)]
pub struct Constraint {
    pub subset: UserSet,
    pub bound: f64,
    pub kind: ConstraintKind,
}

impl Constraint {
    /// Left-hand side of the constraint written as `a·R ≤ bound`.
    pub fn lhs(&self, rate: &[f64]) -> f64 {
        match self.kind {
            ConstraintKind::Front => self.subset.sum(rate),
            ConstraintKind::Back => -self.subset.sum(rate),
        }
    }

    /// Amount by which `rate` exceeds the constraint (negative when slack).
    pub fn excess(&self, rate: &[f64]) -> f64 {
        self.lhs(rate) - self.bound
    }

    /// Row `a` of `a·R ≤ bound`.
    pub fn normal(&self, users: usize) -> Vec<f64> {
        let sign = match self.kind {
            ConstraintKind::Front => 1.0,
            ConstraintKind::Back => -1.0,
        };
        (1..=users)
            .map(|u| if self.subset.contains(u) { sign } else { 0.0 })
            .collect()
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ConstraintKind::Front => write!(f, "R({}) <= {:.6}", self.subset, self.bound),
            ConstraintKind::Back => write!(f, "R_{} >= 0", self.subset.max_user()),
        }
    }
}

/// `M` back constraints (by user index) followed by `2^M - 1` front
/// constraints (by subset in binary-counter order).
#[derive(Debug)]
pub struct HRep {
    users: usize,
    constraints: Vec<Constraint>,
    mi: MiCache,
}

impl HRep {
    pub fn users(&self) -> usize {
        self.users
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn mi(&self) -> &MiCache {
        &self.mi
    }

    pub fn spec(&self) -> &ChannelSpec {
        self.mi.spec()
    }

    /// Index of the front constraint for nonempty `set`.
    pub fn front_index(&self, set: UserSet) -> usize {
        debug_assert!(!set.is_empty() && set.is_subset(UserSet::full(self.users)));
        self.users + set.bits() as usize - 1
    }

    /// Index of the back constraint `R_user ≥ 0` (1-based user).
    pub fn back_index(&self, user: usize) -> usize {
        user - 1
    }

    /// `I(X_S; Y | X_{S^c})`; zero for the empty set.
    pub fn bound(&self, set: UserSet) -> f64 {
        if set.is_empty() {
            0.0
        } else {
            self.constraints[self.front_index(set)].bound
        }
    }

    /// The first constraint violated by more than `tol`, if any.
    pub fn first_violation(&self, rate: &[f64], tol: f64) -> Option<(usize, f64)> {
        self.constraints
            .iter()
            .enumerate()
            .map(|(k, c)| (k, c.excess(rate)))
            .find(|&(_, excess)| excess > tol)
    }

    pub fn contains(&self, rate: &[f64], tol: f64) -> bool {
        rate.len() == self.users && self.first_violation(rate, tol).is_none()
    }

    /// Non-degeneracy report computed from this representation's cache.
    pub fn degeneracy(&self, margin: f64) -> Result<DegeneracyReport> {
        degeneracy_from_cache(&self.mi, margin)
    }
}

pub fn build_hrep(spec: &ChannelSpec) -> Result<HRep> {
    let mi = MiCache::new(spec)?;
    let users = spec.users;
    let mut constraints: Vec<Constraint> = (1..=users)
        .map(|u| Constraint {
            subset: UserSet::singleton(u),
            bound: 0.0,
            kind: ConstraintKind::Back,
        })
        .collect();
    for set in UserSet::all(users).skip(1) {
        constraints.push(Constraint {
            subset: set,
            bound: mi.front_bound(set)?,
            kind: ConstraintKind::Front,
        });
    }
    Ok(HRep {
        users,
        constraints,
        mi,
    })
}

/// One failed clause of the non-degeneracy definition.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "condition")]
pub enum Violation {
    /// Condition 1: `I(X_S; Y) > 0` fails.
    #[serde(rename = "1")]
    NoInformation { subset: UserSet, value: f64 },
    /// Condition 2: `I(X_S; Y | X_A) < I(X_S; Y | X_B)` fails for `A ⊂ B`.
    #[serde(rename = "2")]
    NoInterference {
        subset: UserSet,
        weaker: UserSet,
        stronger: UserSet,
        weaker_value: f64,
        stronger_value: f64,
    },
}

impl Violation {
    pub fn condition(&self) -> u8 {
        match self {
            Violation::NoInformation { .. } => 1,
            Violation::NoInterference { .. } => 2,
        }
    }
}

/// Shortest decimal rendering with at most six places.
pub fn fmt_bits(value: f64) -> String {
    let text = format!("{value:.6}");
    let text = text.trim_end_matches('0').trim_end_matches('.');
    if text == "-0" {
        "0".to_string()
    } else {
        text.to_string()
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NoInformation { subset, value } => write!(
                f,
                "condition 1 violated: {}={}",
                mi_notation(subset, UserSet::EMPTY),
                fmt_bits(value)
            ),
            Violation::NoInterference {
                subset,
                weaker,
                stronger,
                weaker_value,
                stronger_value,
            } => write!(
                f,
                "condition 2 violated: {}={} is not below {}={}",
                mi_notation(subset, weaker),
                fmt_bits(weaker_value),
                mi_notation(subset, stronger),
                fmt_bits(stronger_value)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegeneracyReport {
    pub nondegenerate: bool,
    pub margin: f64,
    pub violations: Vec<Violation>,
}

impl DegeneracyReport {
    pub fn summary(&self) -> String {
        match self.violations.first() {
            None => "non-degenerate".to_string(),
            Some(first) if self.violations.len() == 1 => first.to_string(),
            Some(first) => format!("{first} (and {} more)", self.violations.len() - 1),
        }
    }
}

pub fn check_degeneracy(spec: &ChannelSpec, margin: f64) -> Result<DegeneracyReport> {
    degeneracy_from_cache(&MiCache::new(spec)?, margin)
}

fn degeneracy_from_cache(mi: &MiCache, margin: f64) -> Result<DegeneracyReport> {
    if margin.is_nan() || margin <= 0.0 {
        return Err(Error::Precondition(format!("degeneracy margin must be positive, got {margin}")));
    }
    let users = mi.users();
    let full = UserSet::full(users);
    let mut violations = Vec::new();

    for subset in full.subsets().skip(1) {
        let value = mi.get(subset, UserSet::EMPTY)?;
        if value <= margin {
            violations.push(Violation::NoInformation { subset, value });
        }
    }

    // ∅ ⊂ S ⊂ [M], A ⊂ B ⊂ [M] (both strict), S ∩ B = ∅.
    for subset in full.subsets().filter(|s| !s.is_empty() && *s != full) {
        for stronger in full.difference(subset).subsets().filter(|b| *b != full) {
            for weaker in stronger.subsets().filter(|a| *a != stronger) {
                let weaker_value = mi.get(subset, weaker)?;
                let stronger_value = mi.get(subset, stronger)?;
                if stronger_value - weaker_value <= margin {
                    violations.push(Violation::NoInterference {
                        subset,
                        weaker,
                        stronger,
                        weaker_value,
                        stronger_value,
                    });
                }
            }
        }
    }

    Ok(DegeneracyReport {
        nondegenerate: violations.is_empty(),
        margin,
        violations,
    })
}

/// A half-space representation certified non-degenerate. Face-structure
/// operations that depend on a channel take this type.
#[derive(Debug)]
pub struct Region {
    hrep: HRep,
    report: DegeneracyReport,
}

impl Region {
    pub fn new(spec: &ChannelSpec) -> Result<Self> {
        Self::with_margin(spec, DEFAULT_MARGIN)
    }

    pub fn with_margin(spec: &ChannelSpec, margin: f64) -> Result<Self> {
        Self::from_hrep(build_hrep(spec)?, margin)
    }

    /// Fails with [`Error::Degenerate`] when the report lists any violation.
    pub fn from_hrep(hrep: HRep, margin: f64) -> Result<Self> {
        let report = hrep.degeneracy(margin)?;
        if !report.nondegenerate {
            return Err(Error::Degenerate(Box::new(report)));
        }
        Ok(Region { hrep, report })
    }

    pub fn hrep(&self) -> &HRep {
        &self.hrep
    }

    pub fn report(&self) -> &DegeneracyReport {
        &self.report
    }

    pub fn users(&self) -> usize {
        self.hrep.users
    }

    pub fn mi(&self) -> &MiCache {
        &self.hrep.mi
    }

    pub fn bound(&self, set: UserSet) -> f64 {
        self.hrep.bound(set)
    }
}
