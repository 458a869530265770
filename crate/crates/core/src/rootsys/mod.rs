//! Exact root systems, Weyl groups and their Coxeter combinatorics.

pub mod cartan;
pub mod coxeter;
pub mod datum;
pub mod diagram;
pub mod perm;
pub mod weyl;

pub use cartan::{CartanType, Family, SimpleType};
pub use coxeter::CoxeterSystem;
pub use datum::{build_root_system, RootDatum};
pub use diagram::{diagram_automorphisms, standard_twist, DiagramAut};
pub use perm::Perm;
pub use weyl::{Basis, WeylElement};
