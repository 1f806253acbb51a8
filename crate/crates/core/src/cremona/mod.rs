//! The noncommutative Cremona group: generators `τ`, `t_a`, `p_a` and inner
//! automorphisms, their action by substitution, and the relation suite.

mod auto;
mod gl2;
mod suite;

pub use auto::{
    act_stepwise, classical_word, eq_auto, inner_auto, is_inner_with, p_auto, t_auto, tau_auto, word_to_auto, CremonaWord,
    Generator, InnerCheck, NcAuto,
};
pub use gl2::{embed_univariate, Gl2Rat};
pub use suite::{
    inversion_word, tau_e_word, verify_relation_suite, AlternateConvention, Failure, RelationReport, SuiteReport, SuiteSizes,
    VerdictCounts,
};
