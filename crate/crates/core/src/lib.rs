// tables are indexed by state and letter throughout
#![allow(clippy::needless_range_loop)]

pub mod action;
pub mod analysis;
pub mod autostruct;
pub mod error;
pub mod format;
pub mod fsa;
pub mod geometry;
mod graphutil;
pub mod mealy;
pub mod words;
pub mod zoo;

pub use error::{Error, Result};
pub use mealy::{CanonicalMachine, Classification, InitialMachine, Letter, MealyMachine, StateId};
pub use words::{Atom, Endomorphism, GroupWord};
