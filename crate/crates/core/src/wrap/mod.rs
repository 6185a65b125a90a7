//! Continuation systems, wrapping categories and wrapped Donaldson–Fukaya
//! categories of weakly wrapped setups.

pub mod agreement;
pub mod hw;
pub mod morphism;
pub mod system;

pub use agreement::{check_localization_agreement, AgreementPair, AgreementReport};
pub use hw::{continuation_images, hw_module, hw_table, right_locality, wrapped_df_category, wrapping_category, HwEntry, HwModule, WrappedDFCategory, WrappingCategory, WINDOW};
pub use morphism::{check_wawfs_morphism, InducedPair, MorphismReport};
pub use system::{validate_continuation_system, ContinuationReport, ContinuationSystem, Mode, SystemCheck, Verdict};
