//! Exact generating series for twisted Hodge numbers of Hilbert schemes of
//! points on compact complex surfaces.
//!
//! The input is a table of twisted Hodge numbers `h^{p,q}(S, L^k)` of a
//! surface `S` and a line bundle `L`; everything else (Hilbert schemes,
//! symmetric products, the nested Hilbert scheme, `chi_y` genera, Betti
//! numbers, Hochschild homology, tangent cohomology) is computed from it with
//! exact arithmetic.
//!
//! ```
//! use hilbhodge::engine::hilb_hodge;
//! use hilbhodge::surface::preset;
//!
//! let k3 = preset("k3").unwrap();
//! let h = hilb_hodge(&k3.table, 2).unwrap();
//! assert_eq!(h.get(1, 1).to_string(), "21");
//! ```

pub mod cli;
pub mod coefficient;
pub mod combinatorics;
pub mod engine;
pub mod oracles;
pub mod render;
pub mod series;
pub mod surface;
pub mod verify;

pub use coefficient::Coefficient;
pub use engine::{EngineError, GradedDims, HodgePolynomial};
pub use series::{BiPolynomial, Monomial, SeriesError, TriSeries};
pub use surface::{DataError, SurfaceDataset, SurfaceDiamond, TwistedTable};
