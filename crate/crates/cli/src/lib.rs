//! Library side of the command-line surface: report documents, run
//! manifests, file loading, and the named-experiment registry.

pub mod experiments;
pub mod io;
pub mod manifest;
pub mod report;
