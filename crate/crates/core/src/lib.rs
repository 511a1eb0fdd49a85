//! Height zeta functions of split flag varieties over global function fields.
//!
//! Two independent routes to the leading constant of the height zeta function
//! at its pole: the Eisenstein side (intertwining constants `C_G / C_P`) and
//! the arithmetic side (`alpha* beta tau`), plus a brute-force point counter
//! for checking both against actual rational points.

pub mod cone_lq;
pub mod counter;
pub mod curve_zeta;
pub mod eisenstein;
pub mod error;
pub mod rational_fn;
pub mod root_system;
pub mod tamagawa;
pub mod verify;

pub use error::{Error, Result};
pub use rational_fn::{RatFn, ScaledLimit, Q};
