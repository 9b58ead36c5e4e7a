//! Orbit-indexed generalized Reed–Solomon codes.
//!
//! Coordinates of a code are the orbits of Z/(q^m − 1) under multiplication
//! by q. Given ρ ∈ F[x] and t, the check matrix has entries
//! h_il = Σ_{j∈l} ρ(β^j)·β^(ij) ∈ F for a primitive β of GF(q^m).
//!
//! - [`galois`]: the tower GF(p) ⊂ GF(q) ⊂ GF(q^m)
//! - [`orbits`]: the location set and its size
//! - [`polyring`]: polynomials over GF(q)
//! - [`code`]: check matrices, generators, encoding
//! - [`decoder`]: syndrome decoding up to degree-weight ⌊t/2⌋
//! - [`gilbert`]: the Goppa-style membership test and the search for good g
//! - [`cli`]: file formats, simulation and the command-line driver

pub mod cli;
pub mod code;
pub mod decoder;
pub mod error;
pub mod galois;
pub mod gilbert;
pub mod orbits;
pub mod polyring;

pub use code::{Code, CodeSpec, RhoCheck, Word};
pub use decoder::{DecodeError, Decoder};
pub use error::{Error, Result};
pub use galois::{Felt, FieldParams, TowerField};
pub use orbits::{LocationSet, Orbit};
pub use polyring::{PolyF, PolyRing};
