pub mod certificate;
pub mod classify;
pub mod closure;
pub mod exact;
pub mod levels;
pub mod reg1;
pub mod regular;
pub mod subsection;
pub mod transformation;

pub use transformation::Transformation;
