//! Generalization-based similarity between elements of finite algebras.

pub mod algebra;
pub mod corpus;
pub mod elemset;
pub mod engine;
pub mod morphism;
pub mod oracle;
pub mod random;
pub mod saturation;
pub mod similarity;
pub mod term;

pub use algebra::{
    parse_algebra, validate_pair, Algebra, AlgebraBuilder, AlgebraPair, Elem, Signature,
};
pub use elemset::ElemSet;
pub use term::{Fragment, Term};
