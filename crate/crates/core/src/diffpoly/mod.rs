//! Differential polynomials over the rationals.

pub mod frac;
pub mod grammar;
pub mod indet;
pub mod poly;
pub mod ranking;
pub mod reduce;
pub mod structured;
pub mod triangular;

pub use frac::DiffFrac;
pub use grammar::{parse_frac, parse_poly};
pub use indet::{Derivative, DiffIndet, IndetClass};
pub use poly::{DiffPoly, Monomial};
pub use ranking::{Block, Ranking};
pub use reduce::{initial, is_simple, leader, pseudo_reduce_by, separant, PseudoReduction, SimplicityReport, Verdict};
pub use triangular::{SolvedEquation, TriangularSystem};

/// Formal derivative applied `times` times.
pub fn derive(p: &DiffPoly, times: u32) -> DiffPoly {
    p.derive_n(times)
}

/// Highest derivative order of u in p; None stands for −∞.
pub fn order_in(p: &DiffPoly, u: DiffIndet) -> Option<u32> {
    p.order_in(u)
}
