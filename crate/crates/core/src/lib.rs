//! Opetopes computed two ways, by iterated slicing of symmetric
//! multicategories and by iterating the free-operad construction on
//! polynomial monads, together with bounded checks that the two agree.

pub mod kernel;
pub mod opetope;
pub mod polymonad;
pub mod report;
pub mod symcat;
pub mod zeta;
