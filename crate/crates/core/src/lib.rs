//! Exact `Ext^1` dimensions between simple characters of affine pro-p
//! Iwahori-Hecke algebras.
//!
//! Two engines answer the same question: a closed-form formula
//! ([`ext_formula`]) and a brute-force linear-algebra oracle over `F_p`
//! ([`ext_oracle`]). [`quiver`] assembles the answers into the Ext quiver,
//! its blocks, and the orbits of diagram automorphisms.

pub mod cli;
pub mod coxeter;
pub mod datum;
pub mod document;
pub mod error;
pub mod ext_formula;
pub mod ext_oracle;
pub mod hecke_chars;
mod linalg;
pub mod presets;
pub mod quiver;
pub mod torus;

pub use coxeter::{AffineCoxeterDatum, CoxeterOrder, Reflection, ReflectionSet};
pub use datum::GroupDatum;
pub use error::{Error, Result};
pub use ext_formula::{ext_dimension, ExtResult};
pub use ext_oracle::oracle_ext_dimension;
pub use hecke_chars::{enumerate_hecke_characters, is_supersingular, make_character, parse_character, HeckeCharacter};
pub use quiver::{blocks, build_quiver, compare_partitions, l_packets, DiagramAutomorphism, Engine, ExtQuiver};
pub use torus::{Character, Phase, TorusDatum, DEFAULT_ENUMERATION_BOUND};
