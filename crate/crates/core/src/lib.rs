//! Span categories over computable categories, their quotients by stable
//! morphism systems, and executable checks of the allegory laws.

pub mod allegory;
pub mod category;
pub mod classes;
pub mod error;
pub mod instances;
pub mod maps;
pub mod pipeline;
pub mod quotient;
pub mod report;
pub mod span;
pub mod sweep;
pub mod verdict;

pub use category::{Category, Product, Pullback, Search};
pub use classes::{FactSystem, MorClass};
pub use error::{CatError, Result};
pub use span::Span;
pub use verdict::{Outcome, Verdict, Witness};
