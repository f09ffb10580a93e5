//! Rational graphs, tiling systems and cellular acceptors.
//!
//! Everything is a pure value: automata over explicit alphabets, word
//! transducers, infinite automata given by one transducer per edge label,
//! tiling systems and cellular automata, plus the constructions that move
//! languages between them.

pub mod error;
pub mod letter;
pub mod nfa;
pub mod transducer;
pub mod graph;
pub mod tiling;
pub mod cellular;
pub mod conversions;
pub mod equiv;
pub mod format;
pub mod cli;
pub mod fixtures;

pub use error::{Error, Result};
pub use letter::{Alphabet, Letter, Word};
pub use nfa::{Count, Nfa, SetOp};
pub use transducer::{Transducer, TransducerClass};
pub use graph::{InfiniteAutomaton, PathWitness, RationalGraph};
pub use tiling::{Picture, Tile, TilingSystem};
pub use cellular::CellularAutomaton;
pub use conversions::{ConversionReport, Converted};
