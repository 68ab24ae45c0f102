//! Siegel-coordinate chart on G_R, lattice point counts in sheared
//! semi-algebraic regions, and random sampling of integral quadruples.

pub mod chart;
pub mod davenport;
pub mod region;
pub mod sample;

use thiserror::Error;

pub use chart::{
    chart_to_group, jacobian_constancy_check, jacobian_constancy_check_with, orbit_map_jacobian,
    phi, ChartPoint, ConstancyReport, JacobianValue,
};
pub use davenport::{davenport_count, ellipsoid_batch, lattice_count, BatchReport, LatticeCountReport, QmcOptions};
pub use region::{Region, RegionSpec};
pub use sample::{sample_box, sample_box_with, SampleStats};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("t and lambda must be positive")]
    NonPositive,
    #[error("ill-conditioned Jacobian: {0}")]
    IllConditioned(String),
    #[error("region has no bounding box")]
    Unbounded,
    #[error("invalid region: {0}")]
    InvalidRegion(String),
}
