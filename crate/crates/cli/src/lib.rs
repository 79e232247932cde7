// SPDX-License-Identifier: Apache-2.0

//! Manifest parsing, the verification runner and its report.

pub mod manifest;
pub mod report;
pub mod runner;

pub use manifest::{parse_manifest, Check, FamilyBlock, Manifest, ManifestError};
pub use report::{CheckRecord, Report, Status};
pub use runner::run;
