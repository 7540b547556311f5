//! Toric varieties from Cox-ring presentations.
//!
//! A graded polynomial ring (a [`DegreeMatrix`]) determines the rays of a
//! toric variety through Gale duality. A choice of divisor class selects an
//! irrelevant ideal, whose minimal supports give the maximal cones. The
//! resulting fans are certified exactly (validity, simpliciality,
//! completeness, projectivity), chambers of divisor classes are compared,
//! and Mori-embedding criteria are checked at the level of presentation
//! data. The del Pezzo surface of degree five (the plane blown up in four
//! points) ships as a built-in dataset.

pub mod chamber;
pub mod dataset;
pub mod embedding;
pub mod error;
pub mod exact;
pub mod fan;
pub mod graded;
pub mod incidence;
pub mod monomial;
pub mod polyhedral;
pub mod report;

pub use error::{Error, Result};
pub use graded::{gale_dual, DegreeMatrix, GaleDual, Multidegree};
