//! Face labels of a non-degenerate rate region.
//!
//! Every face is the intersection of a nested family of front facets
//! `F_{S_1} ∩ ... ∩ F_{S_m}` (`S_1 ⊃ S_2 ⊃ ... ⊃ S_m`) with the back facets
//! `R_i = 0` for `i ∈ A`, where `A ∩ S_1 = ∅`. The pair `(chain, A)` is the
//! face's [`FaceLabel`]; each face has exactly one. The face has dimension
//! `M - m - |A|`, and two faces meet exactly when the union of their labels
//! is again a valid label.
//!
//! Labels print as `F({1,2,3}>{1,3}>{3}|{4})`. The whole region is `F(|)`.

mod decoding;
mod locate;

pub use decoding::{dominant_vertex, DecodingPlan};
pub use locate::{locate_minimal_face, membership, membership_direct, Location, DEFAULT_TOL};

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sets::{UserSet, MAX_USERS};

/// Largest `M` for which [`enumerate_faces`] lists labels.
pub const ENUMERATION_CAP: usize = 8;

/// `(S_1 ⊃ ... ⊃ S_m | A)`. The chain is kept sorted by decreasing
/// cardinality; a label built from a non-nested family is representable but
/// fails [`FaceLabel::validate`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FaceLabel {
    users: usize,
    chain: Vec<UserSet>,
    zeros: UserSet,
}

/// First reason a label does not describe a nonempty face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelDefect {
    OutOfRange { set: UserSet, users: usize },
    EmptyChainSet,
    NotTelescopic { larger: UserSet, smaller: UserSet },
    ZerosMeetChain { zeros: UserSet, top: UserSet },
}

impl fmt::Display for LabelDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelDefect::OutOfRange { set, users } => {
                write!(f, "{set} is not a subset of [{users}]")
            }
            LabelDefect::EmptyChainSet => f.write_str("chain contains the empty set"),
            LabelDefect::NotTelescopic { larger, smaller } => {
                write!(f, "chain is not telescopic: {smaller} is not a proper subset of {larger}")
            }
            LabelDefect::ZerosMeetChain { zeros, top } => {
                write!(f, "zero-rate set {zeros} meets the largest chain set {top}")
            }
        }
    }
}

impl FaceLabel {
    pub fn new(users: usize, mut chain: Vec<UserSet>, zeros: UserSet) -> Self {
        assert!(users <= MAX_USERS, "at most {MAX_USERS} users are supported");
        chain.sort_by(|a, b| b.len().cmp(&a.len()).then(a.bits().cmp(&b.bits())));
        FaceLabel { users, chain, zeros }
    }

    /// `F(|)`: the region itself.
    pub fn region(users: usize) -> Self {
        Self::new(users, Vec::new(), UserSet::EMPTY)
    }

    /// The vertex reached by decoding single users in `order` (first entry
    /// decoded first): chain `{u_1..u_M} ⊃ {u_2..u_M} ⊃ ... ⊃ {u_M}`.
    pub fn vertex_for_order(users: usize, order: &[usize]) -> Result<Self> {
        decoding::check_permutation(users, order)?;
        let chain = (0..users)
            .map(|k| UserSet::from_users(order[k..].iter().copied()))
            .collect();
        Ok(Self::new(users, chain, UserSet::EMPTY))
    }

    pub fn users(&self) -> usize {
        self.users
    }

    pub fn chain(&self) -> &[UserSet] {
        &self.chain
    }

    pub fn zeros(&self) -> UserSet {
        self.zeros
    }

    /// `S_1`, or `∅` for an empty chain.
    pub fn top(&self) -> UserSet {
        self.chain.first().copied().unwrap_or(UserSet::EMPTY)
    }

    pub fn is_front(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn validate(&self) -> std::result::Result<(), LabelDefect> {
        let full = UserSet::full(self.users);
        if let Some(&set) = self
            .chain
            .iter()
            .chain(std::iter::once(&self.zeros))
            .find(|s| !s.is_subset(full))
        {
            return Err(LabelDefect::OutOfRange {
                set,
                users: self.users,
            });
        }
        if self.chain.iter().any(|s| s.is_empty()) {
            return Err(LabelDefect::EmptyChainSet);
        }
        for pair in self.chain.windows(2) {
            if !pair[1].is_proper_subset(pair[0]) {
                return Err(LabelDefect::NotTelescopic {
                    larger: pair[0],
                    smaller: pair[1],
                });
            }
        }
        if !self.zeros.is_disjoint(self.top()) {
            return Err(LabelDefect::ZerosMeetChain {
                zeros: self.zeros,
                top: self.top(),
            });
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        self.validate().map_err(Error::InvalidLabel)
    }

    /// `M - m - |A|`.
    pub fn dim(&self) -> Result<usize> {
        self.ensure_valid()?;
        Ok(self.users - self.chain.len() - self.zeros.len())
    }

    /// Parses the printed form. Only syntax and index range are checked;
    /// call [`FaceLabel::validate`] for the nesting conditions.
    pub fn parse(text: &str, users: usize) -> Result<Self> {
        let syntax = |reason: &str| Error::LabelSyntax {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix("F(")
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| syntax("expected F(...)"))?;
        let (chain_text, zeros_text) = body
            .split_once('|')
            .ok_or_else(|| syntax("missing `|` separator"))?;
        let parse_set = |s: &str| -> Result<UserSet> {
            let inner = s
                .strip_prefix('{')
                .and_then(|r| r.strip_suffix('}'))
                .ok_or_else(|| syntax("sets must be written {i,j,...}"))?;
            if inner.is_empty() {
                return Ok(UserSet::EMPTY);
            }
            let mut set = UserSet::EMPTY;
            for item in inner.split(',') {
                let user: usize = item.parse().map_err(|_| syntax("user indices must be integers"))?;
                if user == 0 || user > users {
                    return Err(syntax(&format!("user {user} outside 1..={users}")));
                }
                set = set | UserSet::singleton(user);
            }
            Ok(set)
        };
        let chain = if chain_text.is_empty() {
            Vec::new()
        } else {
            chain_text.split('>').map(parse_set).collect::<Result<Vec<_>>>()?
        };
        let zeros = if zeros_text.is_empty() {
            UserSet::EMPTY
        } else {
            parse_set(zeros_text)?
        };
        Ok(Self::new(users, chain, zeros))
    }
}

impl fmt::Display for FaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("F(")?;
        for (k, set) in self.chain.iter().enumerate() {
            if k > 0 {
                f.write_str(">")?;
            }
            write!(f, "{set}")?;
        }
        f.write_str("|")?;
        if !self.zeros.is_empty() {
            write!(f, "{}", self.zeros)?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for FaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}[M={}]", self.users)
    }
}

impl Serialize for FaceLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Label of the intersection of two faces, or `None` when they are disjoint.
pub fn merge_labels(a: &FaceLabel, b: &FaceLabel) -> Option<FaceLabel> {
    assert_eq!(a.users, b.users, "labels belong to regions with different M");
    let mut chain: Vec<UserSet> = a.chain.iter().chain(&b.chain).copied().collect();
    chain.sort();
    chain.dedup();
    let merged = FaceLabel::new(a.users, chain, a.zeros | b.zeros);
    merged.is_valid().then_some(merged)
}

/// All labels of faces of dimension `dim` (or of every dimension, grouped
/// by increasing dimension), in a fixed order.
pub fn enumerate_faces(users: usize, dim: Option<usize>) -> Result<Vec<FaceLabel>> {
    if users > ENUMERATION_CAP {
        return Err(Error::Capacity {
            what: "users",
            requested: users,
            cap: ENUMERATION_CAP,
            advice: "use the counting functions for larger regions",
        });
    }
    match dim {
        Some(d) if d > users => Err(Error::Precondition(format!(
            "face dimension {d} exceeds the number of users {users}"
        ))),
        Some(d) => Ok(faces_of_dim(users, d)),
        None => Ok((0..=users).flat_map(|d| faces_of_dim(users, d)).collect()),
    }
}

fn faces_of_dim(users: usize, dim: usize) -> Vec<FaceLabel> {
    let mut out = Vec::new();
    for zeros in UserSet::all(users) {
        let free = zeros.complement(users);
        // m = M - |A| - D chain sets, all inside [M] \ A.
        let Some(length) = free.len().checked_sub(dim) else {
            continue;
        };
        let mut chain = Vec::with_capacity(length);
        descend(free, length, &mut chain, &mut |chain| {
            out.push(FaceLabel::new(users, chain.to_vec(), zeros));
        });
    }
    out
}

/// Visits every strictly decreasing chain of `length` nonempty subsets of
/// `within`, appended to `prefix`.
fn descend(within: UserSet, length: usize, prefix: &mut Vec<UserSet>, visit: &mut impl FnMut(&[UserSet])) {
    if length == 0 {
        visit(prefix);
        return;
    }
    let candidates: Vec<UserSet> = within
        .subsets()
        .filter(|s| s.len() >= length)
        .filter(|s| prefix.is_empty() || *s != within)
        .collect();
    for set in candidates.into_iter().rev() {
        prefix.push(set);
        descend(set, length - 1, prefix, visit);
        prefix.pop();
    }
}
