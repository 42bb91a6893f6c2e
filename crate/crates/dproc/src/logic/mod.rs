//! Constraint templates, temporal formulas, preference expressions and the
//! `.dproc` parser.

mod formula;
mod parser;
mod preference;
mod template;

pub use formula::Formula;
pub use parser::{parse_spec, parse_trace_literal, print_spec, ParseError, Pos};
pub use preference::Preference;
pub use template::{satisfies, ConstraintTemplate};
