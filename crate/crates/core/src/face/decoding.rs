use std::fmt;

use serde::Serialize;

use super::FaceLabel;
use crate::error::{Error, Result};
use crate::region::Region;
use crate::sets::UserSet;

/// Groups of users decoded one group at a time, in order. Users inside a
/// group are decoded jointly, treating later groups as noise and earlier
/// groups as side information. `skipped` users have rate zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecodingPlan {
    pub groups: Vec<UserSet>,
    pub skipped: UserSet,
}

impl fmt::Display for DecodingPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, g) in self.groups.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("]")?;
        if !self.skipped.is_empty() {
            write!(f, " skip {}", self.skipped)?;
        }
        Ok(())
    }
}

impl FaceLabel {
    /// `([M] \ A \ S_1, S_1 \ S_2, ..., S_{m-1} \ S_m, S_m)`, dropping the
    /// leading group when it is empty.
    pub fn decoding_order(&self) -> Result<DecodingPlan> {
        self.ensure_valid()?;
        let chain = self.chain();
        let mut groups = Vec::with_capacity(chain.len() + 1);
        let first = UserSet::full(self.users()) - self.zeros() - self.top();
        if !first.is_empty() {
            groups.push(first);
        }
        for (k, &set) in chain.iter().enumerate() {
            let next = chain.get(k + 1).copied().unwrap_or(UserSet::EMPTY);
            groups.push(set - next);
        }
        Ok(DecodingPlan {
            groups,
            skipped: self.zeros(),
        })
    }
}

pub(super) fn check_permutation(users: usize, order: &[usize]) -> Result<()> {
    let seen = UserSet::from_users(order.iter().copied().filter(|&u| (1..=users).contains(&u)));
    if order.len() != users || seen != UserSet::full(users) {
        return Err(Error::Precondition(format!(
            "{order:?} is not a permutation of 1..={users}"
        )));
    }
    Ok(())
}

/// Rate tuple reached by successive single-user decoding in `order` (first
/// entry decoded first): user `u_k` gets `I(X_{u_k}; Y | X_{u_1}, ..., X_{u_{k-1}})`.
pub fn dominant_vertex(region: &Region, order: &[usize]) -> Result<Vec<f64>> {
    let users = region.users();
    check_permutation(users, order)?;
    let mut rate = vec![0.0; users];
    let mut decoded = UserSet::EMPTY;
    for &user in order {
        let single = UserSet::singleton(user);
        rate[user - 1] = region.mi().get(single, decoded)?;
        decoded = decoded | single;
    }
    Ok(rate)
}
