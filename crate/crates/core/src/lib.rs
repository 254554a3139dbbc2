pub mod certificates;
pub mod deformation;
pub mod error;
pub mod geometry;
pub mod lemmas;
pub mod numerics;
pub mod packing;
pub mod proofs;
pub mod render;
pub mod report;
pub mod resource;

pub use error::{Error, Result};
