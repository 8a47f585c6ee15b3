//! Subsets of the user index set `[M] = {1, ..., M}`.
//!
//! Users are numbered from 1 in every public surface (labels, JSON, CLI);
//! internally user `i` occupies bit `i - 1`.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest number of users a [`UserSet`] can hold.
pub const MAX_USERS: usize = 31;

/// A subset of `[M]`, stored as a bitmask.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UserSet(u32);

impl UserSet {
    pub const EMPTY: UserSet = UserSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        UserSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// The full set `[M]`.
    pub fn full(users: usize) -> Self {
        assert!(users <= MAX_USERS, "at most {MAX_USERS} users are supported");
        UserSet(((1u64 << users) - 1) as u32)
    }

    /// `{user}`, 1-based.
    pub fn singleton(user: usize) -> Self {
        assert!((1..=MAX_USERS).contains(&user), "user index {user} out of range");
        UserSet(1 << (user - 1))
    }

    pub fn from_users<I: IntoIterator<Item = usize>>(users: I) -> Self {
        users
            .into_iter()
            .fold(UserSet::EMPTY, |acc, u| acc | UserSet::singleton(u))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, user: usize) -> bool {
        (1..=MAX_USERS).contains(&user) && self.0 & (1 << (user - 1)) != 0
    }

    pub fn union(self, other: Self) -> Self {
        UserSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        UserSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        UserSet(self.0 & !other.0)
    }

    /// `[M] \ self`.
    pub fn complement(self, users: usize) -> Self {
        UserSet::full(users).difference(self)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Largest user index present, or 0 for the empty set.
    pub fn max_user(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// Members in increasing order, 1-based.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32usize).filter(move |b| self.0 & (1 << b) != 0).map(|b| b + 1)
    }

    /// Every subset of `self` (including `∅` and `self`), in increasing bit order.
    pub fn subsets(self) -> impl Iterator<Item = UserSet> {
        // Enumerate submasks upward: next = ((sub | !mask) + 1) & mask.
        let mask = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == mask {
                None
            } else {
                Some(((current | !mask).wrapping_add(1)) & mask)
            };
            Some(UserSet(current))
        })
    }

    /// Every subset of `[M]` in binary-counter order.
    pub fn all(users: usize) -> impl Iterator<Item = UserSet> {
        UserSet::full(users).subsets()
    }

    /// Sum of `rate[i - 1]` over members `i`.
    pub fn sum(self, rate: &[f64]) -> f64 {
        self.iter().map(|u| rate[u - 1]).sum()
    }
}

impl std::ops::BitOr for UserSet {
    type Output = UserSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl std::ops::BitAnd for UserSet {
    type Output = UserSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl std::ops::Sub for UserSet {
    type Output = UserSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl fmt::Display for UserSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, u) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for UserSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as a sorted list of 1-based user indices.
impl Serialize for UserSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for UserSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let users = Vec::<usize>::deserialize(deserializer)?;
        if let Some(bad) = users.iter().find(|&&u| !(1..=MAX_USERS).contains(&u)) {
            return Err(serde::de::Error::custom(format!("user index {bad} out of range")));
        }
        Ok(UserSet::from_users(users))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_membership() {
        let s = UserSet::from_users([3, 1]);
        assert_eq!(s.to_string(), "{1,3}");
        assert!(s.contains(1) && s.contains(3) && !s.contains(2));
        assert_eq!(UserSet::EMPTY.to_string(), "{}");
        assert_eq!(s.max_user(), 3);
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s = UserSet::from_users([1, 3, 4]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(subs[0], UserSet::EMPTY);
        assert_eq!(*subs.last().unwrap(), s);
        assert_eq!(UserSet::all(3).count(), 8);
        assert_eq!(UserSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn set_algebra() {
        let a = UserSet::from_users([1, 2]);
        let b = UserSet::from_users([2, 3]);
        assert_eq!(a | b, UserSet::full(3));
        assert_eq!(a & b, UserSet::singleton(2));
        assert_eq!(a - b, UserSet::singleton(1));
        assert_eq!(a.complement(3), UserSet::singleton(3));
        assert!(UserSet::singleton(2).is_proper_subset(a));
        assert!(!a.is_proper_subset(a));
    }

    #[test]
    fn serde_as_user_list() {
        let s = UserSet::from_users([2, 4]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "[2,4]");
        assert_eq!(serde_json::from_str::<UserSet>(&json).unwrap(), s);
        assert!(serde_json::from_str::<UserSet>("[0]").is_err());
    }
}
