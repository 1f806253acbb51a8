//! Text formats: the expression grammars, generator words and matrix files.

mod comm;
mod lexer;
mod nc;
mod vfile;
mod word;

pub use comm::{parse_comm, print_comm};
pub use nc::{parse_nc, print_nc};
pub use vfile::{parse_ventry, parse_vmatrix_json, print_ventry, VMatrixFile};
pub use word::{parse_gl2, parse_word, print_word};
