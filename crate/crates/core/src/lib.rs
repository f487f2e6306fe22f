//! Exact computations on Grassmann graphs `J_q(n, m)`: finite-field linear
//! algebra, subspace enumeration, star/top clique structure, duality, exact
//! clique/colouring searches, and the cyclotomic machinery behind the
//! `|V| / omega` core criterion.

pub mod bitset;
pub mod cli;
pub mod cliques;
pub mod colouring;
pub mod config;
pub mod coreness;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod fixture;
pub mod graph;
pub mod lemmas;
pub mod matrix;
pub mod numtheory;
pub mod poly;
pub mod report;
pub mod subspace;

pub use error::{Error, Result};
pub use field::{make_field, FieldElement, FieldSpec};
pub use graph::{build_graph, GrassmannGraph};
pub use matrix::FqMatrix;
pub use poly::IntPolynomial;
pub use subspace::Subspace;
