//! Exact frequency functionals and empirical cylinder measures.
//!
//! All values are `BigRational`. The congruence functional counts occurrences at positions
//! `m ≡ j (mod k)`, which is the reading that makes its comparison term `μ([b]) / k` sum
//! correctly over `j`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::alphabet::Symbol;
use crate::error::{Error, Result};
use crate::spec::ToeplitzSpec;

fn ratio(n: usize, d: usize) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn pow2_inv(l: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << l)
}

fn positions<T: PartialEq>(b0: &[T], b: &[T]) -> Vec<usize> {
    if b.len() > b0.len() {
        return Vec::new();
    }
    (0..=b0.len() - b.len()).filter(|&m| b0[m..m + b.len()] == *b).collect()
}

/// `|{m : b0[m, m + |b|) = b}| / |b0|`.
pub fn freq_star<T: PartialEq>(b0: &[T], b: &[T]) -> Result<BigRational> {
    if b0.is_empty() {
        return Err(Error::EmptyBase);
    }
    Ok(ratio(positions(b0, b).len(), b0.len()))
}

/// Like [`freq_star`], counting only occurrences at `m ≡ j (mod k)`; `k` must be odd.
pub fn freq_double_star<T: PartialEq>(b0: &[T], b: &[T], k: usize, j: usize) -> Result<BigRational> {
    if b0.is_empty() {
        return Err(Error::EmptyBase);
    }
    if k.is_multiple_of(2) || j >= k {
        return Err(Error::BadCongruenceParams { k, j });
    }
    Ok(ratio(positions(b0, b).into_iter().filter(|m| m % k == j).count(), b0.len()))
}

/// Frequencies of words of length `1..=max_len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderMeasure {
    freq: BTreeMap<Vec<Symbol>, BigRational>,
    max_len: usize,
}

impl CylinderMeasure {
    /// Frequencies of the fully defined factors of a cyclic word, normalized per length.
    pub fn from_cyclic_cells(cells: &[Option<Symbol>], max_len: usize) -> Result<Self> {
        let n = cells.len();
        let mut freq = BTreeMap::new();
        for l in 1..=max_len {
            let mut counts: BTreeMap<Vec<Symbol>, usize> = BTreeMap::new();
            let mut total = 0usize;
            for s in 0..n {
                let factor: Option<Vec<Symbol>> = (0..l).map(|i| cells[(s + i) % n]).collect();
                if let Some(f) = factor {
                    *counts.entry(f).or_default() += 1;
                    total += 1;
                }
            }
            if total == 0 {
                return Err(Error::AllBlank);
            }
            freq.extend(counts.into_iter().map(|(w, c)| (w, ratio(c, total))));
        }
        Ok(CylinderMeasure { freq, max_len })
    }

    pub fn from_cyclic_word(word: &[Symbol], max_len: usize) -> Result<Self> {
        let cells: Vec<Option<Symbol>> = word.iter().copied().map(Some).collect();
        CylinderMeasure::from_cyclic_cells(&cells, max_len)
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// `μ([b])`; zero for words that never occur.
    pub fn get(&self, b: &[Symbol]) -> BigRational {
        self.freq.get(b).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Words of length `l` with positive measure, in lexicographic order.
    pub fn support(&self, l: usize) -> impl Iterator<Item = (&[Symbol], &BigRational)> + '_ {
        self.freq.iter().filter(move |(w, _)| w.len() == l).map(|(w, v)| (w.as_slice(), v))
    }
}

/// Cylinder frequencies of `x_t` read cyclically over one period, blanks excluded.
pub fn empirical_measure(spec: &ToeplitzSpec, t: usize, max_len: usize) -> Result<CylinderMeasure> {
    let w = spec.level_word(t)?;
    CylinderMeasure::from_cyclic_cells(w.cells(), max_len)
}

/// Positive weights `c_k` on odd `k` with total at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightScheme {
    c: BTreeMap<usize, BigRational>,
}

impl WeightScheme {
    pub fn new(c: BTreeMap<usize, BigRational>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::BadWeights("no weights".into()));
        }
        if let Some(k) = c.keys().find(|&&k| k % 2 == 0) {
            return Err(Error::BadWeights(format!("modulus {k} is even")));
        }
        if let Some((k, _)) = c.iter().find(|(_, v)| !v.is_positive()) {
            return Err(Error::BadWeights(format!("weight of {k} is not positive")));
        }
        let total: BigRational = c.values().sum();
        if total > BigRational::one() {
            return Err(Error::BadWeights(format!("weights sum to {total}")));
        }
        Ok(WeightScheme { c })
    }

    /// `c_{2i+1} = 2^{-(i+1)}` for every odd `k ≤ k_max`.
    pub fn geometric(k_max: usize) -> Result<Self> {
        WeightScheme::new(
            (0..).map(|i| 2 * i + 1).take_while(|&k| k <= k_max).map(|k| (k, pow2_inv(k / 2 + 1))).collect(),
        )
    }

    /// All weight on `k = 1`.
    pub fn unit() -> Self {
        WeightScheme { c: BTreeMap::from([(1, BigRational::one())]) }
    }

    pub fn total(&self) -> BigRational {
        self.c.values().sum()
    }

    pub fn k_max(&self) -> usize {
        *self.c.keys().next_back().expect("nonempty")
    }

    pub fn weights(&self) -> &BTreeMap<usize, BigRational> {
        &self.c
    }
}

/// A truncated sum together with a bound on everything that was left out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncated {
    pub value: BigRational,
    pub tail_bound: BigRational,
}

/// Words of length `l` that occur in `b0` or carry positive measure.
fn relevant_words(b0: &[Symbol], mu: &CylinderMeasure, l: usize) -> BTreeSet<Vec<Symbol>> {
    let mut words: BTreeSet<Vec<Symbol>> = mu.support(l).map(|(w, _)| w.to_vec()).collect();
    if l <= b0.len() {
        words.extend(b0.windows(l).map(<[Symbol]>::to_vec));
    }
    words
}

fn check_depth(mu: &CylinderMeasure, max_len: usize) -> Result<()> {
    if max_len > mu.max_len() {
        return Err(Error::InsufficientMeasureDepth { requested: max_len, available: mu.max_len() });
    }
    Ok(())
}

/// `Σ_{1 ≤ |b| ≤ L} |F*_{b0}(b) − μ([b])| / 2^{|b|}`, with tail bound `2^{1−L}`.
pub fn d_star(b0: &[Symbol], mu: &CylinderMeasure, max_len: usize) -> Result<Truncated> {
    if b0.is_empty() {
        return Err(Error::EmptyBase);
    }
    check_depth(mu, max_len)?;
    let mut value = BigRational::zero();
    for l in 1..=max_len {
        let w = pow2_inv(l);
        for b in relevant_words(b0, mu, l) {
            value += (freq_star(b0, &b)? - mu.get(&b)).abs() * &w;
        }
    }
    Ok(Truncated { value, tail_bound: pow2_inv(max_len) * BigInt::from(2) })
}

/// `Σ c_k / 2^{|b|} · |F**_{b0}(b, k, j) − μ([b]) / k|` over `|b| ≤ L`, weighted odd `k`
/// and `j < k`. The tail bound covers longer words and the weight left off the scheme.
pub fn d_double_star(b0: &[Symbol], mu: &CylinderMeasure, max_len: usize, weights: &WeightScheme) -> Result<Truncated> {
    if b0.is_empty() {
        return Err(Error::EmptyBase);
    }
    check_depth(mu, max_len)?;
    let mut value = BigRational::zero();
    for l in 1..=max_len {
        let w = pow2_inv(l);
        for b in relevant_words(b0, mu, l) {
            let m = mu.get(&b);
            for (&k, c) in weights.weights() {
                let target = &m / BigInt::from(k);
                let scale = c * &w;
                for j in 0..k {
                    value += (freq_double_star(b0, &b, k, j)? - &target).abs() * &scale;
                }
            }
        }
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let tail_bound =
        weights.total() * pow2_inv(max_len) * BigInt::from(2) + (BigRational::one() - weights.total()) * two;
    Ok(Truncated { value, tail_bound })
}

/// Both functionals along a sequence of base words.
pub fn trajectory(
    words: &[Vec<Symbol>],
    mu: &CylinderMeasure,
    max_len: usize,
    weights: &WeightScheme,
) -> Result<Vec<(Truncated, Truncated)>> {
    words.iter().map(|b| Ok((d_star(b, mu, max_len)?, d_double_star(b, mu, max_len, weights)?))).collect()
}

/// Frequency of `symbol` among the defined cells of `x_t[0, p_t)`, for each listed level.
pub fn density_profile(spec: &ToeplitzSpec, symbol: Symbol, levels: &[usize]) -> Result<Vec<BigRational>> {
    levels
        .iter()
        .map(|&t| {
            spec.fill(t)?;
            let w = spec.level_word(t)?;
            let defined = w.cells().iter().filter(|c| c.is_some()).count();
            if defined == 0 {
                return Err(Error::AllBlank);
            }
            let hits = w.cells().iter().filter(|c| **c == Some(symbol)).count();
            Ok(ratio(hits, defined))
        })
        .collect()
}
