//! Holes, fill levels, the generalized Oxtoby condition and pieces.
//!
//! All checks read the scheduled level words `x_t` as the skeletons `Skel(x, p_t)`.
//! The fill level of a position plays the role of its essential period; positions that
//! are still blank at the horizon form one extra class, level `T + 1`.

use serde::Serialize;

use crate::error::Result;
use crate::spec::ToeplitzSpec;
use crate::verdict::Verdict;
use crate::word::{modulo, PartialWord};

/// Evidence that an interval mixes holes of different fill levels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Level `t` of the interval length `p_t`.
    pub level: usize,
    /// `k` for the aligned interval `[k·p_t, (k+1)·p_t)`, when the interval is aligned.
    pub block_index: Option<i64>,
    /// Half-open interval `[start, end)`.
    pub interval: (i64, i64),
    /// The deeper level at which the holes split.
    pub split_level: usize,
    /// `p_t`-holes filled at `split_level`.
    pub filled: Vec<i64>,
    /// `p_t`-holes still blank after `split_level`.
    pub unfilled: Vec<i64>,
    pub detail: String,
}

/// Positions `i ∈ [lo, hi)` with `w(i) = □`.
pub fn holes(w: &PartialWord, lo: i64, hi: i64) -> Result<Vec<i64>> {
    w.holes(lo, hi)
}

/// Level at which position `i` is first filled; `None` when blank through the horizon.
pub fn fill_level(spec: &ToeplitzSpec, i: i64) -> Option<usize> {
    spec.fill_level(i)
}

/// Least divisor of the stored period under which `w` is periodic.
pub fn smallest_divisor_period(w: &PartialWord) -> usize {
    w.smallest_divisor_period()
}

/// Checks that every level fills the holes of each aligned `p_t`-interval all at once or
/// not at all. Reports the lexicographically first violating `(t, k)`.
pub fn check_gen_oxtoby(spec: &ToeplitzSpec) -> Verdict<(), Violation> {
    for t in 1..spec.horizon() {
        let cur = &spec.level_word(t).expect("level in range");
        let next = &spec.level_word(t + 1).expect("level in range");
        let p = spec.period(t) as i64;
        let blocks = spec.period(t + 1) as i64 / p;
        let rel_holes = cur.holes(0, p).expect("valid range");
        if rel_holes.is_empty() {
            continue;
        }
        for k in 0..blocks {
            let (filled, unfilled): (Vec<i64>, Vec<i64>) =
                rel_holes.iter().map(|&o| k * p + o).partition(|&i| !next.is_blank(i));
            if !filled.is_empty() && !unfilled.is_empty() {
                return Verdict::No(Violation {
                    level: t,
                    block_index: Some(k),
                    interval: (k * p, (k + 1) * p),
                    split_level: t + 1,
                    detail: format!(
                        "level {} fills {:?} but leaves {:?} blank in [{}, {})",
                        t + 1,
                        filled,
                        unfilled,
                        k * p,
                        (k + 1) * p
                    ),
                    filled,
                    unfilled,
                });
            }
        }
    }
    Verdict::Yes(())
}

/// Decides whether `[a, a + p_t)` is a piece: all of its `p_t`-holes share one fill level.
pub fn is_piece(spec: &ToeplitzSpec, a: i64, t: usize) -> Result<Verdict<(), Violation>> {
    spec.check_level(t, 1)?;
    let levels = spec.fill_levels();
    Ok(piece_verdict(spec, &levels, a, t))
}

fn piece_verdict(spec: &ToeplitzSpec, levels: &[usize], a: i64, t: usize) -> Verdict<(), Violation> {
    let p = spec.period(t) as i64;
    let n = levels.len();
    let hole_levels: Vec<(i64, usize)> =
        (a..a + p).map(|i| (i, levels[modulo(i, n)])).filter(|&(_, l)| l > t).collect();
    let Some(min) = hole_levels.iter().map(|&(_, l)| l).min() else {
        return Verdict::Yes(());
    };
    if hole_levels.iter().all(|&(_, l)| l == min) {
        return Verdict::Yes(());
    }
    let filled: Vec<i64> = hole_levels.iter().filter(|&&(_, l)| l == min).map(|&(i, _)| i).collect();
    let unfilled: Vec<i64> = hole_levels.iter().filter(|&&(_, l)| l != min).map(|&(i, _)| i).collect();
    let aligned = a.rem_euclid(p) == 0;
    Verdict::No(Violation {
        level: t,
        block_index: aligned.then(|| a.div_euclid(p)),
        interval: (a, a + p),
        split_level: min,
        detail: format!("level {min} fills {filled:?} while {unfilled:?} stay blank in [{a}, {})", a + p),
        filled,
        unfilled,
    })
}

/// For each start `s ∈ [0, p_T)`, whether `[s, s + p_t)` is a piece.
///
/// Sliding window over the cyclic fill-level table, counting the distinct hole levels.
pub(crate) fn piece_starts(spec: &ToeplitzSpec, levels: &[usize], t: usize) -> Vec<bool> {
    let n = levels.len();
    let p = spec.period(t);
    let mut counts = vec![0usize; spec.horizon() + 2];
    let mut distinct = 0usize;
    for i in 0..p {
        let l = levels[i % n];
        if l > t {
            if counts[l] == 0 {
                distinct += 1;
            }
            counts[l] += 1;
        }
    }
    let mut out = Vec::with_capacity(n);
    for s in 0..n {
        out.push(distinct <= 1);
        let (gone, new) = (levels[s], levels[(s + p) % n]);
        if gone > t {
            counts[gone] -= 1;
            if counts[gone] == 0 {
                distinct -= 1;
            }
        }
        if new > t {
            if counts[new] == 0 {
                distinct += 1;
            }
            counts[new] += 1;
        }
    }
    out
}

/// All `a ∈ [0, p_t)` such that every interval `[-a + k·p_t, -a + (k+1)·p_t)` is a piece.
pub fn oxtoby_offsets(spec: &ToeplitzSpec, t: usize) -> Result<Vec<usize>> {
    spec.check_level(t, 1)?;
    let levels = spec.fill_levels();
    Ok(offsets_from_levels(spec, &levels, t))
}

pub(crate) fn offsets_from_levels(spec: &ToeplitzSpec, levels: &[usize], t: usize) -> Vec<usize> {
    let starts = piece_starts(spec, levels, t);
    let p = spec.period(t);
    let n = levels.len();
    (0..p).filter(|&a| (0..n / p).all(|k| starts[modulo(k as i64 * p as i64 - a as i64, n)])).collect()
}
