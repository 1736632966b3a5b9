//! The end-to-end sensing system and its two-stage decoder.

mod decode;
mod design;
mod dump;
mod signal;

pub use decode::{DecodeDiagnostics, DecodeOptions, DecodeOutcome, Stage1Output, Stage2Status};
pub use design::{DesignParams, SensingDesign, DEFAULT_DESIGN_CROSSOVER};
pub use dump::DUMP_VERSION;
pub use signal::{MeasurementVector, NoiseModel, SparseSignal};
