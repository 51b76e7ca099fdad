//! Exact evaluation of colored MOY graphs.
//!
//! Two independent routes are provided: the state sum over label
//! assignments ([`statesum`]) and products of cycle polynomials in a quantum
//! torus ([`genseries`], [`homfly`]). All arithmetic is exact.

pub mod checks;
pub mod cycles;
pub mod diagram;
pub mod genseries;
pub mod homfly;
pub mod qexact;
pub mod qtorus;
pub mod report;
pub mod statesum;
