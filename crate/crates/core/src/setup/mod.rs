//! Weak Floer setups, compatible collections, envelopes and the DF pre-category.

pub mod collection;
pub mod df;
pub mod envelope;
pub mod model;
pub mod validate;

pub use collection::{all_compatible_collections, check_collection, choose_compatible_collection, Strategy};
pub use df::{df_precategory, DFPreCategory};
pub use envelope::{canonical_envelope, check_envelope_independence, unit_label, IndependenceReport};
pub use model::{
    CompatibleCollection, Composable, Continuation, ContinuationHomotopy, Datum, FloerDataSystem, ProductHomotopy, Profile,
    WeakFloerSetup, ENVELOPE_DATUM,
};
pub use validate::{promote_to_full, require_valid, validate_setup, SetupReport, Status};
