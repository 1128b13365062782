//! Finite algebraic structures as Cayley tables.
//!
//! Builds semigroup and ring tables (directly or from residues mod n),
//! verifies their axioms, and decides whether a structure of one kind holds a
//! proper subset of a strictly stronger kind: a semigroup that is not a group
//! but contains a group, or a ring that is not a field but contains a field.

pub mod cli;
pub mod embed;
pub mod magma;
pub mod modular;
pub mod reproduce;
pub mod rings;
pub mod search;
pub mod subset;
pub mod text;
