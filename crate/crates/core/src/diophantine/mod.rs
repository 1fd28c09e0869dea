//! Pell-equation families over polynomial rings and the variety systems
//! built from them.

mod pell;
mod poly;
mod variety;

pub use pell::{pell_closed_form, pell_pair, pell_pair_signed, PellPair, PELL_VAR};
pub use poly::{rational, to_i64, CommPoly, Monomial};
pub use variety::{
    build_system, construct_solution, parametrization_rank, verify_assignment, Assignment, Dioph,
    Equation, EquationRole, SolutionData, SystemKind, VarietySystem,
};
