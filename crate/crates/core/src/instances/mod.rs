//! Concrete categories: finite sets, finite thin categories, finite-table
//! categories and the category of small finite categories.

pub mod fincat;
pub mod finset;
pub mod table;
pub mod thin;

pub use fincat::{FinCat, Functor};
pub use finset::{FinFn, FinSet};
pub use table::{FiniteCategory, TableCategory};
pub use thin::{Arrow, Thin};
