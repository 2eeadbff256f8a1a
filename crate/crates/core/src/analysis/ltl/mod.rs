//! Time-bounded linear temporal logic model checking.

mod buchi;
mod check;
mod formula;
mod parse;

pub use check::{check_graph, check_ltl, Lasso, Verdict};
pub use formula::Formula;
pub use parse::{parse_formula, ParseError};
