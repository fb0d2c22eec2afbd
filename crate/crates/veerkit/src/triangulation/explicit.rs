//! Explicit JSON form of a taut triangulation.
//!
//! The schema is
//!
//! ```json
//! {
//!   "num_tetrahedra": 2,
//!   "gluings": [[[1, "3120"], [1, "1023"], [1, "0213"], [1, "0132"]], ...],
//!   "pi_pair": [1, 1]
//! }
//! ```
//!
//! `gluings[t][k]` gives the target tetrahedron and vertex permutation for
//! face slot `k` (the face opposite vertex `k`) of tetrahedron `t`. The
//! permutation string lists the images of 0, 1, 2, 3. `pi_pair[t]` is 0, 1
//! or 2 and selects the opposite edge pair {0,d+1} / rest carrying angle pi.

use super::{RawTriangulation, VeeringTriangulation};
use crate::perm::Perm4;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Explicit {
    num_tetrahedra: usize,
    gluings: Vec<[(usize, Perm4); 4]>,
    pi_pair: Vec<u8>,
}

/// Parse the explicit JSON form and build the veering triangulation.
pub fn parse_explicit(text: &str) -> Result<VeeringTriangulation> {
    let data: Explicit =
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    if data.gluings.len() != data.num_tetrahedra {
        return Err(Error::Schema(format!(
            "num_tetrahedra is {} but {} gluing rows are given",
            data.num_tetrahedra,
            data.gluings.len()
        )));
    }
    let raw = RawTriangulation::new(data.gluings, data.pi_pair)?;
    raw.to_veering(false)
}

/// Serialize back to the explicit JSON form. The output is deterministic:
/// fields in schema order, arrays in tetrahedron order, no whitespace.
pub fn serialize_explicit(tri: &VeeringTriangulation) -> String {
    let data = Explicit {
        num_tetrahedra: tri.num_tetrahedra(),
        gluings: tri.raw().gluings().to_vec(),
        pi_pair: tri.pi_pair().to_vec(),
    };
    serde_json::to_string(&data).expect("serialization cannot fail")
}
