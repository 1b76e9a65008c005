//! File formats, rendering, and sweeps behind the `srtool` binary.

pub mod document;
pub mod manifest;
pub mod render;
pub mod sweep;

pub use document::ComplexDocument;
pub use manifest::SweepManifest;
