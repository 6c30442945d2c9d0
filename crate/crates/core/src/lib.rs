//! Quantum game semantics: games with coherence, weighted strategies, their
//! matrices, and composition with interference.

pub mod clique;
pub mod compose;
pub mod config;
pub mod constructors;
pub mod dsl;
pub mod copycat;
pub mod error;
pub mod game;
pub mod gates;
pub mod matrix;
pub mod scalar;
pub mod strategy;
pub mod structural;
pub mod trie;
pub mod unitary;

pub use error::{Error, Result};
pub use game::{AxiomReport, CliqueLabel, Game, Move, MoveLabel, Owner, Position, Shape, Tag, Verdict};
pub use matrix::StrategyMatrix;
pub use scalar::Scalar;
pub use strategy::{Morphism, Strategy, StrategyReport};
