//! Spec files, builtins, certificate report renderings and the command pipelines behind
//! the `mha` binary.

pub mod builtins;
pub mod pipeline;
pub mod report;
pub mod spec;
