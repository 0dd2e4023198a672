//! Exact cross-correlation spectra between a p-ary m-sequence and its
//! decimations, with an independent computation path through solution counts
//! on the unit circle of GF(p^(2m)) for Niho-type decimations.

pub mod arith;
#[cfg(feature = "cli")]
pub mod cli;
pub mod correlation;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod niho;
pub mod poly;
pub mod report;
pub mod sequences;
pub mod verify;

pub use error::{Error, Result};
pub use field::{find_primitive_poly, validate_primitive, Field, FieldElement};
pub use cyclotomic::CycloValue;
pub use sequences::{classify_decimation, m_sequence, DecimationKind, DecimationParams, Sequence};
pub use correlation::{cross_correlation, spectrum, SpectrumReport};
pub use niho::{niho_count_generic, niho_spectrum, theorem1_counts, theorem2_counts, y_exp_for_shift, NihoCount};
