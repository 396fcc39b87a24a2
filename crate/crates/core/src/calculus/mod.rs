//! Differential forms and multivector fields on coordinate charts.

mod chart;
mod form;
mod graded;
pub mod index;
mod map;
mod ops;
mod parse;

pub use chart::Chart;
pub use form::{DiffForm, MultiVectorField};
pub use map::SmoothMap;
pub use ops::{
    contract_form, directional, evaluate_on, exterior_derivative, interior_product, lie_bracket_vf,
    lie_derivative, poisson_jacobiator, wedge, wedge_vectors,
};
pub use parse::{parse_form, parse_form_of_degree, parse_multivector, parse_multivector_of_degree};
