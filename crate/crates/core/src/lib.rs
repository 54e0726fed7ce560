//! Exact-arithmetic models of the groups y(m) and ỹ(m) over GF(2) Laurent
//! rings: the orthogonal representation on a rank m+1 quadratic module, its
//! lift into the pin group of the Clifford algebra, Sidki's 2^(m-2)
//! dimensional representation, and finite specializations of all three.

pub mod clifford;
pub mod exec;
pub mod gf2ring;
pub mod ortho_rep;
pub mod presentation;
pub mod quadspace;
pub mod report;
pub mod sidki_rep;
pub mod spectool;
pub mod suites;

pub use exec::Exec;
pub use gf2ring::{Laurent, Qe, Scalar};
