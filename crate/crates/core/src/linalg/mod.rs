//! Exact graded linear algebra.

pub mod colimit;
pub mod complex;
pub mod graded;
pub mod matrix;
pub mod scalar;
pub mod snf;
pub mod sparse;

pub use colimit::{diagram_colimit, sequence_colimit, Colimit, Diagram, SequenceColimit};
pub use complex::{check_chain_map, check_homotopy, cohomology, induced_cohomology_map, CohomologyPresentation, Complex};
pub use graded::{compose_graded_maps, Generator, GradedMap, GradedModule};
pub use matrix::Matrix;
pub use scalar::{Ring, Scalar};
pub use snf::smith_normal_form;
pub use sparse::{Echelon, SVec};
