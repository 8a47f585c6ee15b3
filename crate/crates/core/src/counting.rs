//! Exact face counts of a non-degenerate `M`-user region, by dimension.
//!
//! `N_d` counts faces of the dominant facet (a permutohedron), `N_f` front
//! faces (no zero-rate user), `N_b` back faces, and `N = N_f + N_b` all
//! faces. Every count is an arbitrary-precision integer; alternating sums
//! are carried in signed big integers and never touch floating point.

use std::io::Write;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Sanity bound on tables; the arithmetic itself has no limit.
pub const TABLE_CAP: usize = 24;

pub const CSV_HEADER: [&str; 6] = ["M", "D", "N_total", "N_dominant", "N_front", "N_back"];

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    // Each prefix product is itself a binomial coefficient, so the division is exact.
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn pow(base: usize, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

fn to_unsigned(value: BigInt, what: &str) -> Result<BigUint> {
    match value.sign() {
        Sign::Minus => Err(Error::Internal(format!("{what} evaluated to {value}"))),
        _ => Ok(value.magnitude().clone()),
    }
}

fn check_dim(users: usize, dim: usize) -> Result<()> {
    if dim > users {
        return Err(Error::Precondition(format!(
            "dimension {dim} exceeds the number of users {users}"
        )));
    }
    Ok(())
}

/// Stirling number of the second kind via `S(n,k) = k S(n-1,k) + S(n-1,k-1)`.
pub fn stirling2(n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Err(Error::Precondition(format!("stirling2({n}, {k}) needs k <= n")));
    }
    // row[j] = S(i, j), built up one i at a time.
    let mut row = vec![BigUint::zero(); k + 1];
    row[0] = BigUint::one();
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            let carried = std::mem::take(&mut row[j]) * j;
            row[j] = carried + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    Ok(row[k].clone())
}

/// `N_d(M, D)` with `D` allowed to be `-1`. Base cases: `N_d(D, D) = 0`,
/// `N_d(D, D-1) = 1`, `N_d(i, -1) = 0` otherwise.
fn dominant(users: usize, dim: isize) -> Result<BigUint> {
    let m = users as isize;
    if dim == m {
        return Ok(BigUint::zero());
    }
    if dim == m - 1 {
        return Ok(BigUint::one());
    }
    if dim < 0 {
        return Ok(BigUint::zero());
    }
    let parts = (m - dim) as usize;
    let mut sum = BigInt::zero();
    for j in 1..=parts {
        let term = BigInt::from(binomial(parts, j)) * pow(j, users);
        if (parts - j).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    to_unsigned(sum, "dominant-facet alternating sum")
}

/// Number of `D`-dimensional faces of the dominant facet:
/// `Σ_{j=1}^{M-D} C(M-D, j) (-1)^{M-D-j} j^M`. Zero for `D = M`.
pub fn count_dominant(users: usize, dim: usize) -> Result<BigUint> {
    check_dim(users, dim)?;
    dominant(users, dim as isize)
}

fn front(users: usize, dim: usize) -> Result<BigUint> {
    Ok(dominant(users, dim as isize)? + dominant(users, dim as isize - 1)?)
}

/// `N_f(M, D) = N_d(M, D) + N_d(M, D-1)`.
pub fn count_front(users: usize, dim: usize) -> Result<BigUint> {
    check_dim(users, dim)?;
    front(users, dim)
}

/// `N_b(M, D) = Σ_{i=D}^{M-1} C(M, i) N_f(i, D)`. Zero for `D = M`.
pub fn count_back(users: usize, dim: usize) -> Result<BigUint> {
    check_dim(users, dim)?;
    (dim..users).try_fold(BigUint::zero(), |acc, i| Ok(acc + binomial(users, i) * front(i, dim)?))
}

/// Closed form `Σ_{i=D}^{M} C(M,i) [(i+1-D)^i - Σ_{j=1}^{i-D} C(i-D, j-1) (-1)^{i-D-j} j^i]`.
fn total_closed_form(users: usize, dim: usize) -> Result<BigUint> {
    let mut total = BigInt::zero();
    for i in dim..=users {
        let span = i - dim;
        let mut bracket = pow(span + 1, i);
        for j in 1..=span {
            let term = BigInt::from(binomial(span, j - 1)) * pow(j, i);
            if (span - j).is_multiple_of(2) {
                bracket -= term;
            } else {
                bracket += term;
            }
        }
        total += BigInt::from(binomial(users, i)) * bracket;
    }
    to_unsigned(total, "closed-form face count")
}

/// `Σ_{i=D}^{M} C(M, i) [N_d(i, D) + N_d(i, D-1)]`.
fn total_by_dominant(users: usize, dim: usize) -> Result<BigUint> {
    (dim..=users).try_fold(BigUint::zero(), |acc, i| Ok(acc + binomial(users, i) * front(i, dim)?))
}

/// Total number of `D`-dimensional faces. Both the closed form and the sum
/// over dominant-facet counts are evaluated and must agree.
pub fn count_total(users: usize, dim: usize) -> Result<BigUint> {
    check_dim(users, dim)?;
    let closed = total_closed_form(users, dim)?;
    let summed = total_by_dominant(users, dim)?;
    if closed != summed {
        return Err(Error::Internal(format!(
            "N({users},{dim}): closed form gives {closed}, dominant-facet sum gives {summed}"
        )));
    }
    Ok(closed)
}

/// `Σ_{i=0}^{M} M!/i!`, which equals `⌊e M!⌋`.
pub fn count_vertices(users: usize) -> BigUint {
    // M!/i! = (i+1)(i+2)...M, accumulated from i = M downward.
    let mut term = BigUint::one();
    let mut sum = BigUint::one();
    for i in (0..users).rev() {
        term *= i + 1;
        sum += &term;
    }
    sum
}

/// `M ⌊e M!⌋ / 2`, with the division checked to be exact.
pub fn count_edges(users: usize) -> Result<BigUint> {
    let doubled = count_vertices(users) * users;
    if (&doubled % 2u32) != BigUint::zero() {
        return Err(Error::Internal(format!("M * N(M,0) is odd for M = {users}")));
    }
    Ok(doubled / 2u32)
}

/// `(M + 2^M - 1, 2^M - 2)`: facets of the region and of its dominant facet.
/// For `M = 1` the dominant facet is a point and the second entry is 0.
pub fn facet_counts(users: usize) -> (BigUint, BigUint) {
    let two_m = BigUint::one() << users;
    let region = &two_m + users - 1u32;
    let dominant = if users >= 1 { two_m - 2u32 } else { BigUint::zero() };
    (region, dominant)
}

/// All counts for one `M`, indexed by dimension `0..=M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCounts {
    pub users: usize,
    #[serde(serialize_with = "as_strings")]
    pub per_dim: Vec<BigUint>,
    #[serde(serialize_with = "as_strings")]
    pub dominant: Vec<BigUint>,
    #[serde(serialize_with = "as_strings")]
    pub front: Vec<BigUint>,
    #[serde(serialize_with = "as_strings")]
    pub back: Vec<BigUint>,
}

fn as_strings<S: serde::Serializer>(values: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(BigUint::to_string))
}

impl FaceCounts {
    pub fn new(users: usize) -> Result<Self> {
        let dims = 0..=users;
        let counts = FaceCounts {
            users,
            per_dim: dims.clone().map(|d| count_total(users, d)).collect::<Result<_>>()?,
            dominant: dims.clone().map(|d| count_dominant(users, d)).collect::<Result<_>>()?,
            front: dims.clone().map(|d| count_front(users, d)).collect::<Result<_>>()?,
            back: dims.map(|d| count_back(users, d)).collect::<Result<_>>()?,
        };
        for d in 0..=users {
            if counts.per_dim[d] != &counts.front[d] + &counts.back[d] {
                return Err(Error::Internal(format!("N({users},{d}) != N_f + N_b")));
            }
        }
        Ok(counts)
    }

    /// `D=0:16 D=1:24 ...`.
    pub fn summary(&self) -> String {
        self.per_dim
            .iter()
            .enumerate()
            .map(|(d, n)| format!("D={d}:{n}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Counts for `M = 1..=max_users`.
pub fn count_table(max_users: usize) -> Result<Vec<FaceCounts>> {
    if max_users > TABLE_CAP {
        return Err(Error::Capacity {
            what: "table size",
            requested: max_users,
            cap: TABLE_CAP,
            advice: "request a smaller table",
        });
    }
    (1..=max_users).map(FaceCounts::new).collect()
}

/// One CSV row per `(M, D)` under [`CSV_HEADER`].
pub fn write_csv<W: Write>(table: &[FaceCounts], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for counts in table {
        for d in 0..=counts.users {
            writer.write_record([
                counts.users.to_string(),
                d.to_string(),
                counts.per_dim[d].to_string(),
                counts.dominant[d].to_string(),
                counts.front[d].to_string(),
                counts.back[d].to_string(),
            ])?;
        }
    }
    writer.flush()?;
    Ok(())
}
