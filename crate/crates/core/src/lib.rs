//! Exact decompositions of square matrices over GF(2^m) into a
//! diagonalizable (or potent) part plus a square-zero part, with
//! independently checkable certificates.

pub mod canonical;
pub mod cli;
pub mod error;
pub mod gf2m;
pub mod matrix;
pub mod polyring;
pub mod rng;
pub mod splitter;
pub mod verify;
