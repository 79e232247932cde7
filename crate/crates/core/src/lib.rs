// SPDX-License-Identifier: Apache-2.0

//! Exact engine for the 3|3 Heisenberg-type super Lie group `G`, its super
//! Harish-Chandra pair, and seven families of super unitary representations.

pub mod error;
pub mod gaussfun;
pub mod grassmann;
pub mod families;
pub mod heisgroup;
pub mod superspace;

pub use error::{Error, Result};
pub use gaussfun::{gauss_moment, Exponent, PolyGauss};
pub use grassmann::{Generator, GeneratorPool, GeneratorRole, GrassmannElement, Mask, Parity};
