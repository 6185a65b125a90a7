//! Finite A∞-categories: operations, relations, units, cohomology, cones and functors.

pub mod category;
pub mod cone;
pub mod functor;
pub mod hcat;
pub mod relations;
pub mod unitality;

pub use category::{AInfCategory, AInfOps};
pub use cone::{cone, ConeSpec, TwistedExtension, TwistedObject};
pub use hcat::{cohomology_category, HCategory};
pub use relations::{check_ainf_relations, RelationReport};
pub use unitality::{classify_unitality, Unitality, UnitalityReport};
