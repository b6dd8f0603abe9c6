//! Smith normal form over `Z` and canonical finitely generated abelian groups.

mod group;
mod matrix;
mod snf;

pub use group::{group_from_relations, group_order, FinAbGroup, GroupError, GroupOrder};
pub use matrix::{IntMatrix, MatrixError};
pub use snf::{smith_diagonal, smith_normal_form, SmithForm};
