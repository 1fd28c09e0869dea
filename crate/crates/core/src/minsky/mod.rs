//! The 7-state, 4-color universal machine and the two algebras that encode
//! it: one where halting is nilpotency of the main word, one where halting
//! makes the main word a zero divisor.

mod lab;
mod machine;
mod relations;

pub use lab::{is_irreducible, MinskyLab, StepCheck, Witness};
pub use machine::{
    simulate, tm_step, utm_table, Direction, Instruction, MachineConfig, MachineSpec, Step, Trace,
    COLORS, STATES, STOP_PAIR,
};
pub use relations::{
    alphabet, build_presentation, family_counts, relations, semigroup_presentation, Mode, Relation,
    Sym,
};
