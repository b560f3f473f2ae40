//! Homotopes of classical Lie algebras, Lie triple systems and groups over
//! exact rational, Gaussian and quaternionic scalars.

pub mod error;
pub mod families;
pub mod groups;
pub mod homotope;
pub mod involution;
pub mod matrix;
pub mod scalar;

pub use error::{Error, Result};
pub use homotope::{AlphaMap, HomotopeParameter, TripleProduct, TripleSystem};
pub use involution::{joint_eigenspaces, sign_vectors, InvolutionKind, JointDecomposition, MatrixInvolution};
pub use matrix::{block_constant, BlockConstant, Matrix, Subspace};
pub use scalar::{BaseInvolution, Rational, Ring, RingElement, Scalar, Series};
pub use families::{family, instantiate, normal_form, verify_table, Construction, FamilyDescriptor, NormalForm, TableArtifact};
pub use groups::{GroupElement, GroupKind};
