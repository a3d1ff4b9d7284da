//! Independent brute-force oracles and instance corpora for the test
//! suites. Nothing here calls the algorithm under test except to build its
//! inputs.

pub mod congruences;
pub mod corpus;
pub mod homs;
pub mod random;
pub mod sets;
