//! Builders for Oxtoby's classical sequence and the Downarowicz realization schedule.

use std::collections::{BTreeMap, BTreeSet};

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::spec::{FillStep, PeriodStructure, ToeplitzSpec};
use crate::word::PartialWord;

/// Oxtoby's sequence: level `t + 1` fills the remaining holes of the first and the last
/// `p_t`-interval of `[0, p_{t+1})` with `symbols[t]`, where `p_{t+1} = ratios[t] · p_t`.
///
/// When every symbol is `0` or `1` the alphabet is `{0, 1}`; otherwise it is the sorted set
/// of the given symbols.
pub fn oxtoby_classic(ratios: &[usize], symbols: &[String]) -> Result<ToeplitzSpec> {
    if ratios.is_empty() {
        return Err(Error::NoLevels);
    }
    if symbols.len() != ratios.len() {
        return Err(Error::Parse(format!("{} ratios but {} symbols", ratios.len(), symbols.len())));
    }
    let alphabet = if symbols.iter().all(|s| s == "0" || s == "1") {
        Alphabet::binary()
    } else {
        Alphabet::new(symbols.iter().cloned().collect::<BTreeSet<_>>())?
    };
    let mut periods = vec![1usize];
    for (i, &r) in ratios.iter().enumerate() {
        if r < 2 {
            return Err(Error::BadRatio { level: i + 1, ratio: r });
        }
        let last = *periods.last().expect("nonempty");
        let next = last.checked_mul(r).ok_or_else(|| Error::Parse(format!("period overflow at level {}", i + 1)))?;
        periods.push(next);
    }
    let structure = PeriodStructure::new(periods.clone())?;

    let mut word = PartialWord::blank(1);
    let mut fills = Vec::with_capacity(ratios.len());
    for t in 0..ratios.len() {
        let (p, q) = (periods[t], periods[t + 1]);
        let sym = alphabet.lookup(&symbols[t])?;
        let assign: BTreeMap<usize, Symbol> =
            (0..p).chain(q - p..q).filter(|&r| word.is_blank(r as i64)).map(|r| (r, sym)).collect();
        word = word.apply_fill(t + 1, q, &assign)?;
        fills.push(FillStep { level: t + 1, assign });
    }
    ToeplitzSpec::new(alphabet, structure, fills)
}

/// `∏_{i=1}^{t} (2^i - 1)`, the required length of `b_t`.
pub fn downarowicz_length(t: usize) -> Option<usize> {
    (1..=t).try_fold(1usize, |acc, i| {
        let f = 1usize.checked_shl(i as u32)?.checked_sub(1)?;
        acc.checked_mul(f)
    })
}

/// `∏_{i=1}^{t} 2^{i+1}`, the period `p_t` of the Downarowicz tower.
pub fn downarowicz_period(t: usize) -> Option<usize> {
    (1..=t).try_fold(1usize, |acc, i| acc.checked_mul(1usize.checked_shl(i as u32 + 1)?))
}

/// Builds the schedule from binary words `b_1, …, b_T`.
///
/// Level 1 writes `b_1` at residue 0 modulo 4. Level `t + 1` writes the symbols of
/// `b_{t+1}`, in order, into the blanks of `[0, p_t)` when `t` is odd and of
/// `[p_{t+1} - p_t, p_{t+1})` when `t` is even. The level word `x_t` then has
/// `|b_{t+1}|` blanks per period, which is exactly what the next level consumes.
pub fn downarowicz_build<S: AsRef<str>>(b_words: &[S]) -> Result<ToeplitzSpec> {
    if b_words.is_empty() {
        return Err(Error::NoLevels);
    }
    let alphabet = Alphabet::binary();
    let mut words: Vec<Vec<Symbol>> = Vec::with_capacity(b_words.len());
    for (i, w) in b_words.iter().enumerate() {
        let level = i + 1;
        let w = w.as_ref();
        let syms = w
            .chars()
            .map(|c| match c {
                '0' => Ok(Symbol(0)),
                '1' => Ok(Symbol(1)),
                other => Err(Error::NonBinarySymbol(other.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        let expected =
            downarowicz_length(level).ok_or_else(|| Error::Parse(format!("length law overflows at level {level}")))?;
        if syms.len() != expected {
            return Err(Error::LengthLawViolation { level, expected, found: syms.len() });
        }
        words.push(syms);
    }
    let horizon = words.len();
    let periods = (0..=horizon)
        .map(|t| downarowicz_period(t).ok_or_else(|| Error::Parse(format!("period overflows at level {t}"))))
        .collect::<Result<Vec<_>>>()?;
    let structure = PeriodStructure::new(periods.clone())?;

    let first = FillStep { level: 1, assign: BTreeMap::from([(0, words[0][0])]) };
    let mut word = PartialWord::blank(1).apply_fill(1, periods[1], &first.assign)?;
    let mut fills = vec![first];
    for t in 1..horizon {
        let (p, q) = (periods[t], periods[t + 1]);
        check_ledger(&word, t)?;
        let lo = if t % 2 == 1 { 0 } else { q - p };
        let targets: Vec<usize> = (lo..lo + p).filter(|&r| word.is_blank(r as i64)).collect();
        let b = &words[t];
        if targets.len() != b.len() {
            return Err(Error::BlankCountMismatch { level: t, expected: b.len(), found: targets.len() });
        }
        let assign: BTreeMap<usize, Symbol> = targets.into_iter().zip(b.iter().copied()).collect();
        word = word.apply_fill(t + 1, q, &assign)?;
        fills.push(FillStep { level: t + 1, assign });
    }
    check_ledger(&word, horizon)?;
    ToeplitzSpec::new(alphabet, structure, fills)
}

/// Blanks of `x_t` per `p_t`-period must number `|b_{t+1}|`.
fn check_ledger(word: &PartialWord, t: usize) -> Result<()> {
    let expected = downarowicz_length(t + 1).unwrap_or(usize::MAX);
    let found = word.blank_count();
    if found != expected {
        return Err(Error::BlankCountMismatch { level: t, expected, found });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{check_gen_oxtoby, holes};

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn classic_levels() {
        let s = oxtoby_classic(&[4, 4], &strs(&["1", "0"])).unwrap();
        assert_eq!(s.structure().periods(), &[1, 4, 16]);
        assert_eq!(s.render(s.level_word(1).unwrap().cells()), "1□□1");
        assert_eq!(holes(s.level_word(2).unwrap(), 0, 16).unwrap(), vec![5, 6, 9, 10]);
        assert!(check_gen_oxtoby(&s).is_yes());
    }

    #[test]
    fn classic_rejects_small_ratio() {
        assert_eq!(oxtoby_classic(&[4, 1], &strs(&["1", "0"])), Err(Error::BadRatio { level: 2, ratio: 1 }));
        let s = oxtoby_classic(&[3], &strs(&["1"])).unwrap();
        assert!(!holes(s.level_word(1).unwrap(), 0, 3).unwrap().is_empty());
        let s = oxtoby_classic(&[2], &strs(&["1"])).unwrap();
        assert!(s.level_word(1).unwrap().is_full());
    }

    #[test]
    fn classic_non_binary_symbols() {
        let s = oxtoby_classic(&[4, 4], &strs(&["b", "a"])).unwrap();
        assert_eq!(s.alphabet().tokens(), &["a", "b"]);
        assert_eq!(s.render(s.level_word(1).unwrap().cells()), "b□□b");
    }

    #[test]
    fn length_and_period_laws() {
        let lens: Vec<usize> = (1..=5).map(|t| downarowicz_length(t).unwrap()).collect();
        assert_eq!(lens, vec![1, 3, 21, 315, 9765]);
        let ps: Vec<usize> = (0..=5).map(|t| downarowicz_period(t).unwrap()).collect();
        assert_eq!(ps, vec![1, 4, 32, 512, 16384, 1 << 20]);
    }

    #[test]
    fn downarowicz_first_level() {
        let s = downarowicz_build(&["1"]).unwrap();
        assert_eq!(s.structure().periods(), &[1, 4]);
        assert_eq!(s.render(s.level_word(1).unwrap().cells()), "1□□□");
    }

    #[test]
    fn downarowicz_second_level_fills_left_interval() {
        let s = downarowicz_build(&["1", "010"]).unwrap();
        let assign: Vec<(usize, Symbol)> = s.fill(2).unwrap().assign.iter().map(|(&r, &v)| (r, v)).collect();
        assert_eq!(assign, vec![(1, Symbol(0)), (2, Symbol(1)), (3, Symbol(0))]);
        assert!(check_gen_oxtoby(&s).is_yes());
    }

    #[test]
    fn downarowicz_errors() {
        assert_eq!(downarowicz_build(&["1", "01"]), Err(Error::LengthLawViolation { level: 2, expected: 3, found: 2 }));
        assert_eq!(downarowicz_build(&["2"]), Err(Error::NonBinarySymbol("2".into())));
    }
}
