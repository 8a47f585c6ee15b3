use serde::Serialize;

use super::FaceLabel;
use crate::error::{Error, Result};
use crate::region::{Constraint, Region};
use crate::sets::UserSet;

/// Tightness tolerance shared by membership and location, in bits.
pub const DEFAULT_TOL: f64 = 1e-9;

fn check_len(region: &Region, rate: &[f64]) -> Result<()> {
    if rate.len() != region.users() {
        return Err(Error::DimensionMismatch {
            expected: region.users(),
            got: rate.len(),
        });
    }
    Ok(())
}

/// `R(L) ≤ I(X_L; Y | X_{cond ∪ (block \ L)}) + tol` for every nonempty
/// `L ⊆ block` (`L ⊂ block` when `proper`), plus nonnegativity on `block`.
fn block_within(region: &Region, rate: &[f64], block: UserSet, cond: UserSet, proper: bool, tol: f64) -> Result<bool> {
    if block.iter().any(|u| rate[u - 1] < -tol) {
        return Ok(false);
    }
    for sub in block.subsets().skip(1) {
        if proper && sub == block {
            continue;
        }
        let bound = region.mi().get(sub, cond | (block - sub))?;
        if sub.sum(rate) > bound + tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Product-decomposition membership test: `R_A = 0`; `R` restricted to
/// `S_1^c` lies in the region of the channel that treats `X_{S_1}` as noise;
/// each block `S_i \ S_{i+1}` lies on the dominant facet of the channel that
/// knows `X_{S_i^c}` and treats `X_{S_{i+1}}` as noise.
pub fn membership(region: &Region, rate: &[f64], label: &FaceLabel, tol: f64) -> Result<bool> {
    check_len(region, rate)?;
    label.ensure_valid()?;
    let users = region.users();
    if label.zeros().iter().any(|u| rate[u - 1].abs() > tol) {
        return Ok(false);
    }
    let outside = label.top().complement(users);
    if !block_within(region, rate, outside, UserSet::EMPTY, false, tol)? {
        return Ok(false);
    }
    let chain = label.chain();
    for (k, &set) in chain.iter().enumerate() {
        let next = chain.get(k + 1).copied().unwrap_or(UserSet::EMPTY);
        let block = set - next;
        let known = set.complement(users);
        if !block_within(region, rate, block, known, true, tol)? {
            return Ok(false);
        }
        let total = region.mi().get(block, known)?;
        if (block.sum(rate) - total).abs() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership checked against the full half-space description: every
/// constraint of the region, equality on each chain set, zeros on `A`.
pub fn membership_direct(region: &Region, rate: &[f64], label: &FaceLabel, tol: f64) -> Result<bool> {
    check_len(region, rate)?;
    label.ensure_valid()?;
    Ok(region.hrep().contains(rate, tol)
        && label
            .chain()
            .iter()
            .all(|&s| (s.sum(rate) - region.bound(s)).abs() <= tol)
        && label.zeros().iter().all(|u| rate[u - 1].abs() <= tol))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Location {
    /// The smallest face containing the rate tuple.
    Face { label: FaceLabel },
    /// The rate tuple lies outside the region.
    NotAchievable {
        index: usize,
        constraint: Constraint,
        excess: f64,
    },
}

/// Smallest face containing `rate`: the zero set is every coordinate within
/// `tol` of zero, the chain is every tight front constraint.
pub fn locate_minimal_face(region: &Region, rate: &[f64], tol: f64) -> Result<Location> {
    check_len(region, rate)?;
    let hrep = region.hrep();
    if let Some((index, excess)) = hrep.first_violation(rate, tol) {
        return Ok(Location::NotAchievable {
            index,
            constraint: hrep.constraints()[index],
            excess,
        });
    }
    let users = region.users();
    let zeros = UserSet::from_users((1..=users).filter(|&u| rate[u - 1] <= tol));
    let tight: Vec<UserSet> = UserSet::all(users)
        .skip(1)
        .filter(|&s| (s.sum(rate) - region.bound(s)).abs() <= tol)
        .collect();
    let label = FaceLabel::new(users, tight, zeros);
    for pair in label.chain().windows(2) {
        if !pair[1].is_proper_subset(pair[0]) {
            return Err(Error::NotTelescopic {
                a: pair[0],
                b: pair[1],
            });
        }
    }
    label.validate().map_err(|defect| {
        Error::Internal(format!("located label {label} is invalid: {defect}"))
    })?;
    Ok(Location::Face { label })
}
