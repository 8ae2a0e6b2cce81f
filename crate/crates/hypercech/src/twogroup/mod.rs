//! 2-groups: bundle groupoids of Čech 2-cocycles, the 2-group of a degree-3 cocycle, the
//! equivalence induced by a coboundary, and central extensions from group 2-cocycles.

pub mod bundle;
pub mod crossed;
pub mod equivalence;
pub mod extension;
pub mod gamma;
pub mod groupoid;
