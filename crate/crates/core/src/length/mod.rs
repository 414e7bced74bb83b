//! Length functions as finite tables, weight functions and the length
//! functions they induce.

mod ops;
mod table;
mod weight;

#[cfg(test)]
mod tests;

pub use ops::{
    conjugate_length, lipschitz_compare, reconstruct_word_length, validate_length_axioms,
    wm_construction, word_length_table, Comparison, ConjugatedTable, Reconstruction,
    ValidationReport, Violation, WindowConstraint,
};
pub use table::{LengthTable, LengthValue};
pub use weight::{
    brute_force_length, length_from_weight, length_from_weight_exact, DefaultRule, OracleValue,
    WeightSpec,
};
