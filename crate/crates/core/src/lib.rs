pub mod algebra;
pub mod pencil;
pub mod cusp;
pub mod local;
pub mod constants;
pub mod geometry;
pub mod cli;
