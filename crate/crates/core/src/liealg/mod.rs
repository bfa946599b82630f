//! Chevalley bases, group elements and gauge transformations.

pub mod element;
pub mod gauge;
pub mod group;
pub mod rep;

pub use element::LieElement;
pub use gauge::{adjoint, adjoint_string_coeffs, gauge, log_derivative, weyl_action_from_matrix, StringCoeffs};
pub use group::{root_group_element, simple_reflection_rep, torus_element, weyl_representative, GroupElement, Provenance};
pub use rep::{BasisLabel, LieRepresentation};
