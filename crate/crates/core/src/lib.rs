//! Khovanov homology in its extreme quantum gradings, computed two ways: by
//! brute force over the cube of resolutions, and from the independence complex
//! of the Lando graph. The two answers are cross-checked by [`verify`].

pub mod builder;
pub mod complex;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod homology;
pub mod lando;
pub mod oracle;
pub mod pd;
pub mod poly;
pub mod resolution;
pub mod verify;

pub use complex::{BigradedComplex, SparseMatrix};
pub use error::{Error, Result};
pub use homology::{AbelianGroup, GradedAbelianGroup};
pub use lando::{LandoGraph, SimplicialComplex};
pub use pd::{parse_pd, LinkDiagram, PdCode, Sign};
pub use poly::LaurentPoly;
pub use resolution::{Resolution, Resolver, State};
