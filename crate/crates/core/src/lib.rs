//! Hypergeometric functions over finite fields, evaluated exactly in
//! cyclotomic fields, together with verifiers for their transformation and
//! summation identities.

pub mod characters;
pub mod cli;
pub mod cyclotomic;
pub mod finite_field;
pub mod gauss;
pub mod hypergeometric;
pub mod modular;
pub mod theorems;
