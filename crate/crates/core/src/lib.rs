//! Adjoint elementary Chevalley groups of types A, D and E over commutative
//! rings with 1/2, with exact arithmetic throughout.

pub mod chevalley;
pub mod cli;
pub mod group;
pub mod matrix;
pub mod rings;
pub mod roots;
pub mod relations;
pub mod verify;
