//! squadkit: exact computational algebra for the 1-type of Waldhausen
//! K-theory.
//!
//! The crate builds stable quadratic module presentations out of finite
//! Waldhausen category descriptions, computes K0, K1 and the first Postnikov
//! invariant by integer lattice algorithms, evaluates the products induced by
//! biexact pairings, and machine-checks the identification of the category
//! presentation with the truncated total crossed complex of the wS. nerve.

pub mod cli;
pub mod exactlin;
pub mod fixtures;
pub mod nil2;
pub mod sqg;
pub mod squad;
pub mod totalcx;
pub mod waldcat;
