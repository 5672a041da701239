use std::collections::BTreeMap;

use crate::alphabet::{Cell, Symbol};
use crate::error::{Error, Result};

/// A periodic bi-infinite word over the alphabet plus blank, stored as one period.
///
/// Indexing is modulo the period, so `get(i) == cells[i mod q]` for every integer `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialWord {
    cells: Vec<Cell>,
}

pub(crate) fn modulo(i: i64, q: usize) -> usize {
    i.rem_euclid(q as i64) as usize
}

impl PartialWord {
    pub fn blank(period: usize) -> Self {
        assert!(period >= 1, "period must be positive");
        PartialWord { cells: vec![None; period] }
    }

    pub fn from_cells(cells: Vec<Cell>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Parse("a partial word needs period >= 1".into()));
        }
        Ok(PartialWord { cells })
    }

    pub fn period(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn get(&self, i: i64) -> Cell {
        self.cells[modulo(i, self.cells.len())]
    }

    pub fn is_blank(&self, i: i64) -> bool {
        self.get(i).is_none()
    }

    pub fn blank_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_none()).count()
    }

    pub fn is_full(&self) -> bool {
        self.cells.iter().all(Option::is_some)
    }

    /// Cells of the half-open range `[lo, hi)`.
    pub fn window(&self, lo: i64, hi: i64) -> Result<Vec<Cell>> {
        if lo > hi {
            return Err(Error::InvalidRange { lo, hi });
        }
        Ok((lo..hi).map(|i| self.get(i)).collect())
    }

    /// The word `i ↦ self(i + k)`, i.e. the shift σ^k.
    pub fn rotate(&self, k: i64) -> PartialWord {
        let q = self.period();
        let k = modulo(k, q);
        let mut cells = Vec::with_capacity(q);
        cells.extend_from_slice(&self.cells[k..]);
        cells.extend_from_slice(&self.cells[..k]);
        PartialWord { cells }
    }

    /// The same bi-infinite word stored with period `q`, a multiple of the current period.
    pub fn with_period(&self, q: usize) -> Result<PartialWord> {
        let p = self.period();
        if q == 0 || !q.is_multiple_of(p) {
            return Err(Error::IncompatiblePeriod { period: p, modulus: q });
        }
        Ok(PartialWord { cells: self.cells.iter().copied().cycle().take(q).collect() })
    }

    /// `self ≺ other`: every non-blank cell of `other` has the same value in `self`.
    pub fn refines(&self, other: &PartialWord) -> bool {
        let l = num_integer::lcm(self.period(), other.period());
        (0..l as i64).all(|i| match other.get(i) {
            Some(s) => self.get(i) == Some(s),
            None => true,
        })
    }

    /// Fills the residues of `assign` (taken modulo `modulus`) and returns the refined
    /// word of period `modulus`. Every assigned residue must be blank in `self`.
    pub fn apply_fill(&self, level: usize, modulus: usize, assign: &BTreeMap<usize, Symbol>) -> Result<PartialWord> {
        let mut out = self.with_period(modulus)?;
        for (&r, &sym) in assign {
            if r >= modulus {
                return Err(Error::ResidueOutOfRange { level, residue: r, modulus });
            }
            if out.cells[r].is_some() {
                return Err(Error::FillOnFilledPosition { level, residue: r });
            }
            out.cells[r] = Some(sym);
        }
        Ok(out)
    }

    /// Positions `i ∈ [lo, hi)` holding a blank.
    pub fn holes(&self, lo: i64, hi: i64) -> Result<Vec<i64>> {
        if lo > hi {
            return Err(Error::InvalidRange { lo, hi });
        }
        Ok((lo..hi).filter(|&i| self.is_blank(i)).collect())
    }

    /// Least divisor `d` of the stored period with `cells[i] == cells[i + d]` throughout,
    /// comparing blank as an ordinary symbol.
    pub fn smallest_divisor_period(&self) -> usize {
        let q = self.period();
        divisors(q).into_iter().find(|&d| (0..q).all(|i| self.cells[i] == self.cells[(i + d) % q])).unwrap_or(q)
    }

    /// Maps every defined cell through `f`.
    pub fn map_symbols(&self, mut f: impl FnMut(usize, Symbol) -> Symbol) -> PartialWord {
        PartialWord { cells: self.cells.iter().enumerate().map(|(i, c)| c.map(|s| f(i, s))).collect() }
    }
}

pub(crate) fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn word(s: &str) -> PartialWord {
        PartialWord::from_cells(Alphabet::binary().parse_cells(s).unwrap()).unwrap()
    }

    #[test]
    fn fill_reproduces_second_level() {
        let w = word("□1□□");
        let assign = BTreeMap::from([(2, Symbol(0)), (3, Symbol(0))]);
        let out = w.apply_fill(2, 8, &assign).unwrap();
        assert_eq!(out, word("□100□1□□"));
        assert!(out.refines(&w));
        assert!(!w.refines(&out));
    }

    #[test]
    fn empty_fill_only_changes_period() {
        let w = word("□1□□");
        let out = w.apply_fill(2, 8, &BTreeMap::new()).unwrap();
        assert_eq!(out, word("□1□□□1□□"));
    }

    #[test]
    fn complete_fill() {
        let w = word("□1□□");
        let assign: BTreeMap<usize, Symbol> =
            [(0, 1), (2, 0), (3, 0), (4, 1), (6, 1), (7, 0)].into_iter().map(|(r, s)| (r, Symbol(s))).collect();
        assert_eq!(w.apply_fill(2, 8, &assign).unwrap(), word("11001110"));
    }

    #[test]
    fn fill_on_filled_cell_fails() {
        let w = word("□1□□");
        let assign = BTreeMap::from([(5, Symbol(0))]);
        assert_eq!(w.apply_fill(2, 8, &assign), Err(Error::FillOnFilledPosition { level: 2, residue: 5 }));
        assert!(matches!(w.apply_fill(2, 6, &BTreeMap::new()), Err(Error::IncompatiblePeriod { .. })));
    }

    #[test]
    fn modular_window_and_rotation() {
        let w = word("□1□□");
        assert_eq!(Alphabet::binary().render(&w.window(-2, 2).unwrap()), "□□□1");
        assert_eq!(w.rotate(1), word("1□□□"));
        assert_eq!(w.rotate(-1), word("□□1□"));
        assert!(w.window(3, 2).is_err());
    }

    #[test]
    fn divisor_periods() {
        assert_eq!(word("□1□1").smallest_divisor_period(), 2);
        assert_eq!(word("□1□□").smallest_divisor_period(), 4);
        assert_eq!(PartialWord::blank(8).smallest_divisor_period(), 1);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
