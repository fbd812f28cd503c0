//! Free partially commutative monoids: normal forms, cliques, the Leech,
//! right-module and Hochschild complexes, and factorization posets.

mod alphabet;
mod factorization;
mod leech;
mod word;

pub use alphabet::IndependenceAlphabet;
pub use factorization::{factorization_poset, Factorization};
pub use leech::{
    hochschild_complex, leech_complex, right_module_complex, t_precubical, Bimodule, CliqueSystem,
    RightModule,
};
pub use word::{normal_form, trace_eq, trace_mul, Trace};
