//! Farey fractions in residue classes modulo a prime, and Lang-Trotter counters
//! averaged over specializations of a one-parameter elliptic curve family.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: sieves, Legendre symbols, Lucas sequences and exact polynomials.
//! * [`farey`]: coprime-pair enumeration and residue histograms `R_{T,p}(v)`.
//! * [`elliptic`]: curve families `Y^2 = X^3 + A(t) X + B(t)` and traces of Frobenius.
//! * [`quadratic`]: imaginary quadratic fields, class numbers and the Dickson/Lucas identity.
//! * [`langtrotter`]: the averaged counters, computed directly and by summing over residues.
//! * [`cli`]: the `farey-lt` command line front end.

pub mod arith;
pub mod cli;
pub mod elliptic;
pub mod error;
pub mod farey;
pub mod langtrotter;
pub mod quadratic;

pub use error::{Error, Result};
