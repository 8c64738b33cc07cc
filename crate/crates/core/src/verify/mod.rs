//! Machine checks of the structural arguments about automorphisms of
//! adjoint elementary Chevalley groups over local rings.

pub mod affine;
pub mod con_system;
pub mod golden;
pub mod involution;
pub mod matrix_units;
pub mod suite;
pub mod torus;
pub mod weyl;

use thiserror::Error;

use crate::group::GroupError;
use crate::matrix::LinAlgError;
use crate::rings::RingError;
use crate::roots::RootError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("matrix is not an involution")]
    NotInvolution,
    #[error("ring {0} has no local structure")]
    NotLocal(String),
    #[error("matrix does not preserve the root/Cartan block split")]
    NotBlockSplit,
    #[error("precondition `{condition}` fails at {index}")]
    PreconditionFailed { condition: String, index: String },
    #[error("division by a non-unit in step `{step}`")]
    PivotNotUnit { step: String },
    #[error("constant term of {condition} at ({row},{col}) does not vanish")]
    NonvanishingConstant { condition: String, row: usize, col: usize },
    #[error("position ({row},{col}) is outside an {size}x{size} matrix")]
    PositionOutOfRange { row: usize, col: usize, size: usize },
    #[error("deduction `{0}` does not hold")]
    ConstraintViolated(String),
    #[error("span closure stalled at dimension {dimension} of {target}")]
    ClosureStalled { dimension: usize, target: usize },
    #[error("structural failure: {0}")]
    StructuralFailure(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Root(#[from] RootError),
}

impl From<LinAlgError> for VerifyError {
    fn from(e: LinAlgError) -> Self {
        match e {
            LinAlgError::Ring(r) => VerifyError::Ring(r),
            other => VerifyError::StructuralFailure(other.to_string()),
        }
    }
}
