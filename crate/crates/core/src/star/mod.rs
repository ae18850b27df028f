//! Star-configuration expressions over path atoms and their evaluation.

pub mod ast;
pub mod eval;
pub mod parse;

pub use ast::{Atom, StarExpr};
pub use eval::{atom_halfplane_dim, evaluate, ExponentSet};
pub use parse::{parse, ParseError, ParseErrorKind};
