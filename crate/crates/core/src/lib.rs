//! Finite operator groups, 1-cocycles and the coGalois connexion.

pub mod bitset;
pub mod catalog;
pub mod classify;
pub mod cocycle;
pub mod connexion;
pub mod error;
pub mod group;
pub mod kneser;
pub mod operator;
pub mod report;
pub mod rings;
pub mod selfaction;
pub mod verify;

pub use bitset::ElemSet;
pub use error::{Error, Result};
