//! Localization at multiplicative systems: right fractions, quotients by
//! cones, and wrapping colimits.

pub mod fraction;
pub mod quotient;
pub mod slice;
pub mod system;

pub use fraction::{check_right_locality, gz_localize, ChainReport, FractionCategory};
pub use quotient::{hom_via_wrapping_colimit, localize_by_cones, PairQuotient, TruncatedQuotient, WrappingChain, WrappingColimit};
pub use slice::{chain_colimit, slice_colimit, Chain, Slice, SliceColimit};
pub use system::{check_right_multiplicative_system, uncovered_vector, Class, ConditionResult, MultiplicativeSystem, RmsReport};
