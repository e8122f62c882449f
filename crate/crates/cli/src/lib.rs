//! Surface syntax, generators and verification harness for the `sl2calc`
//! command-line calculator.
//!
//! The expression language mirrors the notation of the underlying calculus:
//! `U(delta[s:2,3],1) x U(delta[t,1],4)` for products of unitary forms and
//! `<[s@-1/2;1], [s@1/2;1]>` for multisegments. Parsing always yields either
//! a canonical value or a [`parse::ParseError`] carrying a byte offset.

pub mod gen;
pub mod harness;
pub mod parse;
pub mod print;
pub mod run;
