//! Nonabelian `H¹` by cocycle enumeration and abelian `H²` by integer linear algebra.

mod h1;
mod h2;

pub use h1::{h1_classes, is_one_cocycle, one_cocycles, H1Class, OneCocycle, H1};
pub use h2::{
    h2_abelian, is_two_cocycle, obstruction_report, ObstructionReport, TwoCohomologyGroup,
    MAX_H2_DIMENSION, MAX_LISTED_CLASSES,
};
