pub mod affine;
pub mod catalog;
pub mod field;
pub mod linear;
pub mod projective;
pub mod sporadic;
pub mod symplectic;
pub mod unital;
pub mod wreath;
