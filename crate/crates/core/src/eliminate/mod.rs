//! Newform elimination: the traces a solution can produce at each prime of K,
//! the primes that survive the comparison with a newform's eigenvalues, and the
//! irreducibility bounds.

pub mod bound;
pub mod cases;
pub mod engine;
pub mod records;

pub use bound::{irreducibility_bound, IrreducibilityBound};
pub use cases::{case1_values, case2_values, case3_values, case_values, case_values_many, CaseValues, DEFAULT_NORM_CAP};
pub use engine::{
    eliminate_form, lift_char_poly, run_space, Case, CaseSelection, EliminationReport, FormResult, Survivors,
    Witness, RETAINED,
};
pub use records::{load_newforms, parse_newforms, Diagnostic, Eigen, Loaded, NewformRecord};
