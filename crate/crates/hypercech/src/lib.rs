//! Čech hypercohomology of simplicial sets with coefficients in a two-term complex,
//! 2-groups built from degree-4 cocycles, and integration of Lie algebra 2-cocycles.

pub mod coeff;
pub mod cochain;
pub mod cohomology;
pub mod covers;
pub mod geometry;
pub mod group;
pub mod linalg;
pub mod report;
pub mod simplicial;
pub mod space;
pub mod twogroup;
