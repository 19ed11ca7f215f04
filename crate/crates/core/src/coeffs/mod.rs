//! Exact coefficient rings: arbitrary-precision rationals and Laurent
//! polynomials in the grading indeterminate `h` (with `h = 1 - q`).

mod laurent;
mod rational;

pub use laurent::{laurent_substitute, LaurentPoly};
pub use rational::{
    binomial, binomial_i, format_rational, multinomial, parse_rational, rat, rat_arith, try_rat,
    RatOp,
};
