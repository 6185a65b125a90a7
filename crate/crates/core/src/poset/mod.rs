//! Decorated posets and semisimplicial sets, entanglements, wrapping
//! sequences and the comparison functors between their localizations.

pub mod compare;
pub mod decorated;
pub mod entangle;
pub mod sss;
pub mod wrapping;

pub use compare::HomComparison;
pub use decorated::{build_o_p, find_duplicate, DecoratedPoset, PosetCategory};
pub use entangle::{check_bridge, entangle, entanglement_tower, BridgeHom, BridgeReport, Entanglement, EntanglementStats, VertexWitness};
pub use sss::{build_f_e, canonical_sss, DecoratedSSSet, SSSCategory};
pub use wrapping::{
    extend_to_sufficiently_wrapped, tau_compare, verify_wrapping_sequence, ContinuationOracle, Extension, ExtensionReport,
    FactorizationAnswer, FactorizationOracle, FactorizationQuery, RefusingOracle, SequenceVerifier, TauReport, WrappingReport,
};
