#![allow(dead_code)]

use std::collections::BTreeMap;

use oxtoby_core::conjugacy::{relabel, shift_spec, Relabeling};
use oxtoby_core::constructions::oxtoby_classic;
use oxtoby_core::{Alphabet, FillStep, PartialWord, PeriodStructure, Symbol, ToeplitzSpec};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn s0() -> ToeplitzSpec {
    ToeplitzSpec::from_json_str(
        r#"{"alphabet": ["0", "1"], "periods": [1, 4, 8],
            "fills": [{"level": 1, "assign": {"1": "1"}},
                      {"level": 2, "assign": {"2": "0", "3": "0"}}]}"#,
    )
    .unwrap()
}

pub fn s_ox() -> ToeplitzSpec {
    oxtoby_classic(&[4, 4], &["1".into(), "0".into()]).unwrap()
}

pub fn strs(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// Random ratios in `2..=4` with product at most `max_period`, between 2 and `max_levels` levels.
pub fn random_periods<R: Rng>(rng: &mut R, max_levels: usize, max_period: usize) -> Vec<usize> {
    let levels = rng.gen_range(2..=max_levels);
    let mut periods = vec![1usize];
    for _ in 0..levels {
        let r = rng.gen_range(2..=4);
        let next = periods.last().unwrap() * r;
        if next > max_period {
            break;
        }
        periods.push(next);
    }
    if periods.len() < 2 {
        periods.push(2);
    }
    periods
}

/// A generalized Oxtoby schedule: level 1 fills a random proper subset of `[0, p_1)`, and
/// each later level fills all holes of a random set of aligned `p_t`-blocks, keeping at
/// least one block open whenever a further level follows.
pub fn random_go_spec_with<R: Rng>(rng: &mut R, periods: Vec<usize>, symbols: usize) -> ToeplitzSpec {
    let alphabet = Alphabet::new((0..symbols).map(|i| i.to_string())).unwrap();
    let structure = PeriodStructure::new(periods.clone()).unwrap();
    let horizon = periods.len() - 1;
    let sym = |rng: &mut R| Symbol(rng.gen_range(0..symbols) as u16);

    let p1 = periods[1];
    let mut chosen: Vec<usize> = (0..p1).filter(|_| rng.gen_bool(0.5)).collect();
    if chosen.is_empty() {
        chosen.push(rng.gen_range(0..p1));
    }
    if chosen.len() == p1 && horizon > 1 {
        chosen.remove(rng.gen_range(0..p1));
    }
    let first: BTreeMap<usize, Symbol> = chosen.into_iter().map(|r| (r, sym(rng))).collect();
    let mut word = PartialWord::blank(1).apply_fill(1, p1, &first).unwrap();
    let mut fills = vec![FillStep { level: 1, assign: first }];
    for t in 1..horizon {
        let (p, q) = (periods[t], periods[t + 1]);
        let blocks = q / p;
        let mut open: Vec<bool> = (0..blocks).map(|_| rng.gen_bool(0.5)).collect();
        if t + 1 < horizon && open.iter().all(|&o| !o) {
            open[rng.gen_range(0..blocks)] = true;
        }
        if open.iter().all(|&o| o) {
            open[rng.gen_range(0..blocks)] = false;
        }
        let mut assign = BTreeMap::new();
        for (k, &keep_open) in open.iter().enumerate() {
            if keep_open {
                continue;
            }
            for r in k * p..(k + 1) * p {
                if word.is_blank(r as i64) {
                    assign.insert(r, sym(rng));
                }
            }
        }
        word = word.apply_fill(t + 1, q, &assign).unwrap();
        fills.push(FillStep { level: t + 1, assign });
    }
    ToeplitzSpec::new(alphabet, structure, fills).unwrap()
}

pub fn random_go_spec<R: Rng>(rng: &mut R, max_levels: usize, max_period: usize) -> ToeplitzSpec {
    let periods = random_periods(rng, max_levels, max_period);
    let symbols = if rng.gen_bool(0.8) { 2 } else { 3 };
    random_go_spec_with(rng, periods, symbols)
}

/// Random permutations on a random set of residues modulo `p_t`.
pub fn random_relabeling<R: Rng>(rng: &mut R, spec: &ToeplitzSpec, t: usize) -> Relabeling {
    let n = spec.alphabet().len();
    let mut maps = BTreeMap::new();
    for r in 0..spec.period(t) {
        if rng.gen_bool(0.5) {
            let mut perm: Vec<Symbol> = (0..n).map(|i| Symbol(i as u16)).collect();
            perm.shuffle(rng);
            maps.insert(r, perm);
        }
    }
    Relabeling::new(n, maps).unwrap()
}

/// `y = ρ̃(σ^a x)` for a random level, residue permutation and shift.
pub struct ConjugatePair {
    pub x: ToeplitzSpec,
    pub y: ToeplitzSpec,
    pub level: usize,
    pub shift: i64,
}

pub fn random_conjugate_pair<R: Rng>(rng: &mut R, x: ToeplitzSpec) -> ConjugatePair {
    let level = rng.gen_range(1..=x.horizon());
    let shift = rng.gen_range(0..x.deep_word().period()) as i64;
    let rho = random_relabeling(rng, &x, level);
    let y = relabel(&shift_spec(&x, shift), level, &rho).unwrap();
    ConjugatePair { x, y, level, shift }
}

/// Oxtoby-style schedule whose level 1 fills the residues `first` (which must contain 0
/// and `p_1 - 1`); later levels fill the holes of the first and last `p_t`-intervals.
pub fn classic_variant(ratios: &[usize], first: &[usize], symbols: &[Symbol]) -> ToeplitzSpec {
    let mut periods = vec![1usize];
    for r in ratios {
        periods.push(periods.last().unwrap() * r);
    }
    let structure = PeriodStructure::new(periods.clone()).unwrap();
    let one: BTreeMap<usize, Symbol> = first.iter().map(|&r| (r, symbols[0])).collect();
    let mut word = PartialWord::blank(1).apply_fill(1, periods[1], &one).unwrap();
    let mut fills = vec![FillStep { level: 1, assign: one }];
    for t in 1..ratios.len() {
        let (p, q) = (periods[t], periods[t + 1]);
        let assign: BTreeMap<usize, Symbol> =
            (0..p).chain(q - p..q).filter(|&r| word.is_blank(r as i64)).map(|r| (r, symbols[t])).collect();
        word = word.apply_fill(t + 1, q, &assign).unwrap();
        fills.push(FillStep { level: t + 1, assign });
    }
    ToeplitzSpec::new(Alphabet::binary(), structure, fills).unwrap()
}

/// Two classic variants with the same ratios and different numbers of level-1 holes.
pub fn mismatched_pair<R: Rng>(rng: &mut R) -> (ToeplitzSpec, ToeplitzSpec) {
    let levels = rng.gen_range(2..=3);
    let ratios: Vec<usize> = (0..levels).map(|_| rng.gen_range(5..=7)).collect();
    let p1 = ratios[0];
    let symbols: Vec<Symbol> = (0..levels).map(|_| Symbol(rng.gen_range(0..2))).collect();
    let inner: Vec<usize> = (1..p1 - 1).collect();
    let pick = |rng: &mut R, n: usize| {
        let mut s: Vec<usize> = inner.choose_multiple(rng, n).copied().collect();
        s.extend([0, p1 - 1]);
        s.sort_unstable();
        s
    };
    let a = rng.gen_range(0..=1);
    let b = a + rng.gen_range(1..=2);
    let x = classic_variant(&ratios, &pick(rng, a), &symbols);
    let y = classic_variant(&ratios, &pick(rng, b), &symbols);
    (x, y)
}

/// The cyclic family `{x_T rotated by k + j·p_t}` that identifies the part of residue `k`.
pub fn part_family(spec: &ToeplitzSpec, t: usize, k: usize) -> Vec<PartialWord> {
    let p = spec.period(t);
    let n = spec.deep_word().period();
    let mut fam: Vec<PartialWord> = (0..n / p).map(|j| spec.deep_word().rotate((k + j * p) as i64)).collect();
    fam.sort_by(|a, b| a.cells().cmp(b.cells()));
    fam.dedup();
    fam
}
