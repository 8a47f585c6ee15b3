//! Rate regions of discrete memoryless multiple-access channels as
//! polytopes: every face carries a label (a nested chain of user sets plus
//! a set of silent users), labels merge the way faces intersect, each label
//! yields a group successive decoding order, and face counts have closed
//! forms.
//!
//! ```
//! use mac_polytope::{enumerate_faces, FaceCounts};
//!
//! let labels = enumerate_faces(3, None).unwrap();
//! assert_eq!(labels.len(), 51);
//! assert_eq!(FaceCounts::new(3).unwrap().summary(), "D=0:16 D=1:24 D=2:10 D=3:1");
//! ```

pub mod channel;
pub mod cli;
pub mod counting;
pub mod error;
pub mod face;
pub mod hasse;
pub mod oracle;
pub mod region;
pub mod sets;

pub use channel::{mutual_info, ChannelSpec, MiCache};
pub use counting::{count_back, count_dominant, count_front, count_total, FaceCounts};
pub use error::{Error, Result};
pub use face::{
    dominant_vertex, enumerate_faces, locate_minimal_face, membership, membership_direct, merge_labels,
    DecodingPlan, FaceLabel, Location,
};
pub use region::{build_hrep, check_degeneracy, DegeneracyReport, HRep, Region};
pub use sets::UserSet;
