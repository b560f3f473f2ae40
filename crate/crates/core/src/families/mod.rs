//! Concrete constructions, the classification catalog and normal forms.

mod catalog;
mod construction;
mod embed;
mod hermquat;
mod normal_form;
mod rng;
mod space;
mod table;

pub use catalog::{
    block_diag_space, catalog, catalog_json, check_cdual_pairing, check_i_negation, family, lookup, FamilyDescriptor,
    FamilyInfo, FamilyReport, SampleReport, SizeKind,
};
pub use construction::{instantiate, Construction, ConstructionKind, ModelMap};
pub use embed::{iota, kappa, psi};
pub use hermquat::{hermquat_check, hermquat_report, HermQuatReport};
pub use normal_form::{normal_form, NormalForm, NormalFormKind, Signature};
pub use rng::Sampler;
pub use space::MatrixClass;
pub use table::{verify_table, Cell, CellChecks, CellKind, PieceInfo, TableArtifact};
