//! Exact construction of nonnegative matrices with a prescribed left
//! half-plane spectrum and Jordan canonical form.

pub mod cli;
pub mod companion;
pub mod exact;
pub mod families;
pub mod glue;
pub mod json;
pub mod merge;
pub mod realize;
pub mod report;
pub mod spectrum;
pub mod verify;
