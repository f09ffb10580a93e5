//! Language-preserving constructions between graphs, tiling systems and
//! cellular automata. Each returns its output with a [`ConversionReport`].

use std::collections::BTreeMap;

use crate::graph::RationalGraph;
use crate::letter::Letter;
use crate::transducer::TransducerClass;

mod cellular;
mod degree;
mod rat2synch;
mod sequential;
mod tiles;

pub use cellular::{ca2graph, check_global_det, global_det_witness};
pub use degree::{onepoint, squarets2synchgraph, synch2ratfd, synchfd2squarets, OnePointOptions, RatFdOptions};
pub use rat2synch::{rat2synch, startostar, StarOptions};
pub use sequential::{seq_from_astar_is_det, ts2seq, SeqOptions};
pub use tiles::{synch2ts, ts2synch, Synch2TsOptions};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConversionReport {
    pub conversion: String,
    /// Letters introduced by the construction.
    pub fresh_symbols: Vec<Letter>,
    /// Flags every output transducer is expected to carry.
    pub class_claims: TransducerClass,
    /// Suggested word length for language comparison.
    pub oracle_bound: usize,
    /// Named numeric parameters (height constants, alphabet sizes).
    pub constants: BTreeMap<String, u64>,
    pub notes: Vec<String>,
}

impl ConversionReport {
    pub(crate) fn new(conversion: &str, oracle_bound: usize) -> ConversionReport {
        ConversionReport {
            conversion: conversion.to_string(),
            fresh_symbols: Vec::new(),
            class_claims: TransducerClass::default(),
            oracle_bound,
            constants: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    /// True when every claimed flag holds on every relation of `g`.
    pub fn check_claims(&self, g: &RationalGraph) -> bool {
        let c = self.class_claims;
        g.classify().values().all(|k| {
            (!c.synchronous || k.synchronous)
                && (!c.left_synchronized || k.left_synchronized)
                && (!c.right_synchronized || k.right_synchronized)
                && (!c.sequential || k.sequential)
        })
    }
}

impl std::fmt::Display for ConversionReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "conversion: {}", self.conversion)?;
        let fresh: Vec<&str> = self.fresh_symbols.iter().map(Letter::as_str).collect();
        writeln!(f, "fresh symbols: {}", fresh.join(" "))?;
        writeln!(f, "claims: {}", self.class_claims)?;
        writeln!(f, "oracle bound: {}", self.oracle_bound)?;
        for (k, v) in &self.constants {
            writeln!(f, "{k}: {v}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Converted<T> {
    pub output: T,
    pub report: ConversionReport,
}
