//! Library surface of the `moonvol` binary: argument types, pipeline
//! stages, and the output writers. Kept as a library so integration tests
//! drive the same code paths the binary runs.

pub mod args;
pub mod commands;
pub mod manifest;
pub mod stages;

/// Marker for failures that indicate a bug rather than bad input; the
/// binary maps these to exit code 2.
#[derive(Debug)]
pub struct InternalError(pub String);

impl std::fmt::Display for InternalError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "internal invariant failure: {}", self.0)
    }
}

impl std::error::Error for InternalError {}
