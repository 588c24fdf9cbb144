//! Root systems of types A and B and their Weyl groups as exact matrices.

mod root_system;
mod weyl;

use thiserror::Error;

pub use root_system::{Family, RootSystem};
pub use weyl::{to_dominant, weyl_group, WeylElement, WeylGroup, WEYL_ORDER_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("unsupported root system {family}{rank}")]
    Unsupported { family: Family, rank: usize },
    #[error("invalid root list: {0}")]
    InvalidRoots(String),
    #[error("Weyl group closure exceeded {0} elements")]
    GroupTooLarge(usize),
}
