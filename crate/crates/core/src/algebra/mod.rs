//! Fields, polynomials, resultants and root search.

pub mod embed;
pub mod field;
pub mod parse;
pub mod poly;
pub mod resultant;
pub mod roots;

pub use embed::{embed, Embedding};
pub use field::{make_field, make_field_with_limit, parse_field, FieldElement, FiniteField};
pub use parse::{parse_expression, parse_polynomial};
pub use poly::{MultiPoly, UniPoly};
pub use resultant::{formal_resultant, sylvester_resultant};
pub use roots::{find_root_in_tower, TowerRoot};
