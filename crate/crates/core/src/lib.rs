#![no_std]

extern crate alloc;

pub mod classifier;
pub mod error;
pub mod forms;
pub mod jet;
pub mod linalg;
pub mod local_algebra;
pub mod parse;
pub mod portrait;
pub mod unfolding;

pub use error::{GeometryError, JetError, ParseError, ParseErrorKind};
pub use jet::{Jet, Monomial, Rational, Valuation};
pub use parse::parse_expr;
