//! Exact integer linear algebra: Smith normal form and homology of chain complexes.

mod complex;
mod group;
mod matrix;
mod smith;
mod sparse;

pub use complex::{homology_of_complex, homology_of_pair, ChainComplex};
pub use group::FGAbelianGroup;
pub use matrix::IntegerMatrix;
pub use smith::{invariant_factors, rank, smith_normal_form, SmithDecomposition};
