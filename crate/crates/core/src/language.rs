//! Words of a binary shift of finite type, scheduled so that every word of its language
//! recurs as a prefix.

use std::collections::BTreeSet;

use crate::constructions::downarowicz_length;
use crate::error::{Error, Result};

const MAX_FORBIDDEN_LEN: usize = 16;

/// The language of the bi-infinite binary sequences avoiding a set of forbidden words.
#[derive(Debug, Clone)]
pub struct FiniteTypeShift {
    forbidden: Vec<String>,
    /// Window length: words of length `memory` are the vertices of the de Bruijn graph.
    memory: usize,
    /// Vertices lying on a bi-infinite path.
    essential: BTreeSet<String>,
}

impl FiniteTypeShift {
    pub fn new<S: AsRef<str>>(forbidden: &[S]) -> Result<Self> {
        let forbidden: Vec<String> = forbidden.iter().map(|s| s.as_ref().to_string()).collect();
        for f in &forbidden {
            if let Some(c) = f.chars().find(|&c| c != '0' && c != '1') {
                return Err(Error::NonBinarySymbol(c.to_string()));
            }
            if f.is_empty() {
                return Err(Error::EmptyLanguage);
            }
            if f.len() > MAX_FORBIDDEN_LEN {
                return Err(Error::Parse(format!("forbidden word {f:?} is longer than {MAX_FORBIDDEN_LEN}")));
            }
        }
        let memory = forbidden.iter().map(String::len).max().unwrap_or(1).max(2) - 1;
        let admissible = |w: &str| !forbidden.iter().any(|f| w.contains(f.as_str()));
        let mut essential: BTreeSet<String> =
            (0..1usize << memory).map(|v| format!("{v:0memory$b}")).filter(|w| admissible(w)).collect();
        // Repeatedly drop vertices without a predecessor or successor.
        loop {
            let keep: BTreeSet<String> = essential
                .iter()
                .filter(|v| {
                    let has_next = ['0', '1'].iter().any(|&c| {
                        let e = format!("{v}{c}");
                        admissible(&e) && essential.contains(&e[1..])
                    });
                    let has_prev = ['0', '1'].iter().any(|&c| {
                        let e = format!("{c}{v}");
                        admissible(&e) && essential.contains(&e[..memory])
                    });
                    has_next && has_prev
                })
                .cloned()
                .collect();
            if keep.len() == essential.len() {
                break;
            }
            essential = keep;
        }
        if essential.is_empty() {
            return Err(Error::EmptyLanguage);
        }
        Ok(FiniteTypeShift { forbidden, memory, essential })
    }

    fn admissible(&self, w: &str) -> bool {
        !self.forbidden.iter().any(|f| w.contains(f.as_str()))
    }

    /// Whether `w` occurs in some sequence of the shift.
    pub fn contains(&self, w: &str) -> bool {
        if w.chars().any(|c| c != '0' && c != '1') {
            return false;
        }
        let m = self.memory;
        if w.len() < m {
            return self.essential.iter().any(|v| v.contains(w));
        }
        self.admissible(w) && (0..=w.len() - m).all(|i| self.essential.contains(&w[i..i + m]))
    }

    /// Words of the language, nonempty, ordered by length and then lexicographically.
    pub fn enumerate(&self, count: usize) -> Vec<String> {
        let mut out = Vec::with_capacity(count);
        let mut len = 1;
        while out.len() < count {
            let level: Vec<String> =
                (0..1usize << len).map(|v| format!("{v:0len$b}")).filter(|w| self.contains(w)).collect();
            out.extend(level.into_iter().take(count - out.len()));
            len += 1;
        }
        out
    }

    /// Extends `prefix` to length `len`, always appending the least symbol that keeps the
    /// word inside the language.
    pub fn extend_greedy(&self, prefix: &str, len: usize) -> Result<String> {
        let mut w: String = prefix.chars().take(len).collect();
        if !self.contains(&w) {
            return Err(Error::DeadEnd(w));
        }
        while w.len() < len {
            let next = ['0', '1'].iter().map(|&c| format!("{w}{c}")).find(|c| self.contains(c));
            w = next.ok_or_else(|| Error::DeadEnd(w.clone()))?;
        }
        Ok(w)
    }
}

/// Index (zero-based) into the language enumeration of the prefix used for `b_t`.
///
/// Stage `n` lists enumeration entries `1..=n`; stages are concatenated, so every word
/// recurs once per later stage.
pub fn prefix_index(t: usize) -> usize {
    let mut remaining = t - 1;
    let mut stage = 1;
    while remaining >= stage {
        remaining -= stage;
        stage += 1;
    }
    remaining
}

/// Prefixes for `b_1, …, b_{t_max}` before extension.
pub fn prefix_schedule<S: AsRef<str>>(forbidden: &[S], t_max: usize) -> Result<Vec<String>> {
    let shift = FiniteTypeShift::new(forbidden)?;
    let needed = (1..=t_max).map(prefix_index).max().map_or(0, |i| i + 1);
    let words = shift.enumerate(needed);
    Ok((1..=t_max).map(|t| words[prefix_index(t)].clone()).collect())
}

/// `b_1, …, b_{t_max}` of the required lengths, each starting with its scheduled prefix
/// (cut to length when the prefix is longer than `b_t`).
pub fn language_words<S: AsRef<str>>(forbidden: &[S], t_max: usize) -> Result<Vec<String>> {
    let shift = FiniteTypeShift::new(forbidden)?;
    let prefixes = prefix_schedule(forbidden, t_max)?;
    prefixes
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let len = downarowicz_length(i + 1).ok_or_else(|| Error::Parse(format!("b_{} is too long", i + 1)))?;
            shift.extend_greedy(p, len)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const NONE: [&str; 0] = [];

    #[test]
    fn full_shift_starts_with_zero() {
        let b = language_words(&NONE, 3).unwrap();
        assert_eq!(b[0], "0");
        assert_eq!(b.iter().map(String::len).collect::<Vec<_>>(), vec![1, 3, 21]);
    }

    #[test]
    fn golden_mean_words_avoid_double_one() {
        let b = language_words(&["11"], 5).unwrap();
        assert!(b.iter().all(|w| !w.contains("11")));
        let shift = FiniteTypeShift::new(&["11"]).unwrap();
        assert_eq!(shift.enumerate(5), vec!["0", "1", "00", "01", "10"]);
    }

    #[test]
    fn empty_language_detected() {
        assert!(matches!(FiniteTypeShift::new(&["0", "1"]), Err(Error::EmptyLanguage)));
        // "01" and "10" forbidden still allows constant sequences.
        let s = FiniteTypeShift::new(&["01", "10"]).unwrap();
        assert!(s.contains("000") && !s.contains("01"));
        // forbidding "00", "11" and "010" leaves no infinite path
        assert!(matches!(FiniteTypeShift::new(&["00", "11", "010"]), Err(Error::EmptyLanguage)));
    }

    #[test]
    fn transient_words_are_not_in_the_language() {
        // With "10" forbidden, "01" occurs in 0^∞ 1^∞ and stays in the language.
        let s = FiniteTypeShift::new(&["10"]).unwrap();
        assert!(s.contains("0011"));
        assert!(!s.contains("10"));
    }

    #[test]
    fn prefix_indices_dovetail() {
        let idx: Vec<usize> = (1..=10).map(prefix_index).collect();
        assert_eq!(idx, vec![0, 0, 1, 0, 1, 2, 0, 1, 2, 3]);
    }
}
