//! Bounded language comparison across formalisms.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::format::Formalism;
use crate::letter::{check_word, shortlex, Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivVerdict {
    /// Largest length up to which both languages agree; `None` when they
    /// already differ on the empty word.
    pub equal_up_to: Option<usize>,
    /// Shortlex-least word in exactly one language, within the bound.
    pub first_divergence: Option<Word>,
    /// Number of distinct accepted words compared.
    pub checked: usize,
}

/// Exact membership for any formalism with a word language.
pub fn member(f: &Formalism, w: &[Letter]) -> Result<bool> {
    match f {
        Formalism::Nfa(a) => {
            check_word(w, &a.alphabet)?;
            Ok(a.accepts(w))
        }
        Formalism::Automaton(m) => m.member(w),
        Formalism::Tiling(ts) => ts.member(w),
        Formalism::Ca(ca) => ca.member(w),
        other => Err(Error::Input(format!("a {} file has no membership test", other.kind()))),
    }
}

/// Accepted words of length at most `max_len`, shortlex ordered.
pub fn language(f: &Formalism, max_len: usize) -> Result<Vec<Word>> {
    let mut words = match f {
        Formalism::Nfa(a) => a.enumerate(max_len),
        Formalism::Automaton(m) => m.enumerate(max_len),
        Formalism::Tiling(ts) => ts.enumerate(max_len),
        Formalism::Ca(ca) => ca.enumerate(max_len),
        other => return Err(Error::Input(format!("a {} file has no word language", other.kind()))),
    };
    words.sort_by(|a, b| shortlex(a, b));
    Ok(words)
}

pub fn equiv(a: &Formalism, b: &Formalism, max_len: usize) -> Result<EquivVerdict> {
    let la: BTreeSet<Word> = language(a, max_len)?.into_iter().collect();
    let lb: BTreeSet<Word> = language(b, max_len)?.into_iter().collect();
    let first = la.symmetric_difference(&lb).min_by(|x, y| shortlex(x, y)).cloned();
    let equal_up_to = match &first {
        Some(w) => w.len().checked_sub(1),
        None => Some(max_len),
    };
    Ok(EquivVerdict { equal_up_to, first_divergence: first, checked: la.union(&lb).count() })
}
