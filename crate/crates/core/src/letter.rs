//! Letters, words and alphabets.
//!
//! A letter is an interned-by-value string. Most fixtures use one
//! character per letter, but constructions build composite letters
//! (letter/state pairs, rule tuples, marked symbols) so the type does not
//! assume single characters.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(Arc<str>);

impl Letter {
    pub fn new(name: &str) -> Letter {
        Letter(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// True when the letter prints as a single character.
    pub fn is_simple(&self) -> bool {
        let mut chars = self.0.chars();
        matches!((chars.next(), chars.next()), (Some(c), None) if c != '{' && c != '}' && c != '\\')
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Letter {
    fn from(s: &str) -> Letter {
        Letter::new(s)
    }
}

impl From<String> for Letter {
    fn from(s: String) -> Letter {
        Letter(Arc::from(s))
    }
}

pub type Word = Vec<Letter>;
pub type Alphabet = BTreeSet<Letter>;

pub fn letter(s: &str) -> Letter {
    Letter::new(s)
}

/// Builds an alphabet from letter names.
pub fn alphabet<I, S>(names: I) -> Alphabet
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    names.into_iter().map(|s| Letter::new(s.as_ref())).collect()
}

/// Parses a word written with one character per letter. Multi-character
/// letters are written inside braces, e.g. `a{xp}b`; a backslash escapes
/// the next character.
pub fn parse_word(text: &str) -> Result<Word> {
    let mut out = Vec::new();
    let mut chars = text.chars();
    while let Some(c) = chars.next() {
        match c {
            '\\' => match chars.next() {
                Some(e) => out.push(Letter::new(&e.to_string())),
                None => return Err(Error::Input("dangling escape in word".into())),
            },
            '{' => {
                let mut name = String::new();
                let mut closed = false;
                while let Some(d) = chars.next() {
                    match d {
                        '}' => {
                            closed = true;
                            break;
                        }
                        '\\' => match chars.next() {
                            Some(e) => name.push(e),
                            None => break,
                        },
                        _ => name.push(d),
                    }
                }
                if !closed || name.is_empty() {
                    return Err(Error::Input(format!("bad braced letter in {text:?}")));
                }
                out.push(Letter::from(name));
            }
            _ => out.push(Letter::new(&c.to_string())),
        }
    }
    Ok(out)
}

/// Inverse of [`parse_word`].
pub fn format_word(w: &[Letter]) -> String {
    let mut s = String::new();
    for l in w {
        if l.is_simple() {
            s.push_str(l.as_str());
        } else if l.as_str().chars().count() == 1 {
            s.push('\\');
            s.push_str(l.as_str());
        } else {
            s.push('{');
            for c in l.as_str().chars() {
                if c == '}' || c == '\\' {
                    s.push('\\');
                }
                s.push(c);
            }
            s.push('}');
        }
    }
    s
}

/// Shorthand used all over the tests: one letter per character.
pub fn word(text: &str) -> Word {
    text.chars().map(|c| Letter::new(&c.to_string())).collect()
}

/// Length-lexicographic order on words.
pub fn shortlex(a: &[Letter], b: &[Letter]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Checks that `w` only uses letters of `sigma`.
pub fn check_word(w: &[Letter], sigma: &Alphabet) -> Result<()> {
    match w.iter().find(|l| !sigma.contains(*l)) {
        Some(l) => Err(Error::Input(format!("letter {l} is not in the alphabet"))),
        None => Ok(()),
    }
}

/// Returns `name` as a letter if it is not already used by any of the
/// given alphabets.
pub fn fresh(name: &str, used: &[&Alphabet]) -> Result<Letter> {
    let l = Letter::new(name);
    if used.iter().any(|a| a.contains(&l)) {
        Err(Error::FreshSymbol(name.to_string()))
    } else {
        Ok(l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braces_round_trip() {
        let w = vec![letter("a"), letter("xp"), letter("{"), letter("⊥")];
        let s = format_word(&w);
        assert_eq!(parse_word(&s).unwrap(), w);
    }

    #[test]
    fn plain_words() {
        assert_eq!(parse_word("aab").unwrap(), word("aab"));
        assert!(parse_word("").unwrap().is_empty());
        assert!(parse_word("a{b").is_err());
    }

    #[test]
    fn fresh_detects_collision() {
        let g = alphabet(["a", "#"]);
        assert!(fresh("#", &[&g]).is_err());
        assert_eq!(fresh("i", &[&g]).unwrap(), letter("i"));
    }
}
