//! Finite fill schedules describing Toeplitz sequences.
//!
//! A [`ToeplitzSpec`] fixes an alphabet, a period tower `1 = p_0 | p_1 | … | p_T` and, for
//! every level `t ∈ [1, T]`, a set of residues modulo `p_t` together with the symbols
//! written there. The level words `x_0 ≻ x_1 ≻ … ≻ x_T` are computed once on validation.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Cell, Symbol};
use crate::error::{Error, Result};
use crate::word::{modulo, PartialWord};

/// Strictly increasing divisibility tower starting at 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodStructure {
    periods: Vec<usize>,
}

impl PeriodStructure {
    pub fn new(periods: Vec<usize>) -> Result<Self> {
        let first = *periods.first().ok_or(Error::EmptyStructure)?;
        if first != 1 {
            return Err(Error::FirstPeriodNotOne(first));
        }
        for (index, w) in periods.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(Error::NotIncreasing { index, prev: w[0], next: w[1] });
            }
            if w[1] % w[0] != 0 {
                return Err(Error::NonDividingPeriods { index, prev: w[0], next: w[1] });
            }
        }
        Ok(PeriodStructure { periods })
    }

    pub fn periods(&self) -> &[usize] {
        &self.periods
    }

    /// Index of the last level, `T`.
    pub fn horizon(&self) -> usize {
        self.periods.len() - 1
    }

    pub fn period(&self, t: usize) -> usize {
        self.periods[t]
    }
}

/// Assignments made at one level: residues modulo `p_level` mapped to symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FillStep {
    pub level: usize,
    pub assign: BTreeMap<usize, Symbol>,
}

/// Certification status of one residue of a level word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidueStatus {
    /// Non-blank at this level; periodic in every completion.
    CertifiedFilled,
    /// Two distinct symbols land in the residue class at deeper scheduled levels.
    CertifiedBlank,
    /// Blank at this level, with too little deeper data to decide.
    Undetermined,
}

/// Serialized form of a spec, as read from and written to spec files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSpec {
    pub alphabet: Vec<String>,
    pub periods: Vec<usize>,
    #[serde(default)]
    pub fills: Vec<RawFill>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawFill {
    pub level: usize,
    #[serde(with = "residue_map")]
    pub assign: BTreeMap<usize, String>,
}

/// JSON and TOML object keys are strings; residues are decimal integers.
mod residue_map {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::ser::SerializeMap;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(map: &BTreeMap<usize, String>, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(map.len()))?;
        for (k, v) in map {
            m.serialize_entry(&k.to_string(), v)?;
        }
        m.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, String>, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                k.trim()
                    .parse::<usize>()
                    .map(|k| (k, v))
                    .map_err(|_| D::Error::custom(format!("residue {k:?} is not a decimal integer")))
            })
            .collect()
    }
}

/// A validated fill schedule together with its level words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToeplitzSpec {
    alphabet: Alphabet,
    structure: PeriodStructure,
    fills: Vec<FillStep>,
    levels: Vec<PartialWord>,
}

impl ToeplitzSpec {
    /// Validates a schedule. Missing levels are treated as empty fills.
    pub fn new(alphabet: Alphabet, structure: PeriodStructure, fills: Vec<FillStep>) -> Result<Self> {
        let horizon = structure.horizon();
        if horizon == 0 {
            return Err(Error::NoLevels);
        }
        let mut by_level: Vec<Option<FillStep>> = vec![None; horizon];
        for step in fills {
            if step.level == 0 || step.level > horizon {
                return Err(Error::FillLevelOutOfRange { level: step.level, horizon });
            }
            for &sym in step.assign.values() {
                if sym.index() >= alphabet.len() {
                    return Err(Error::UnknownSymbol(format!("#{}", sym.0)));
                }
            }
            let slot = &mut by_level[step.level - 1];
            if slot.is_some() {
                return Err(Error::DuplicateFillLevel(step.level));
            }
            *slot = Some(step);
        }
        let fills: Vec<FillStep> = by_level
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.unwrap_or(FillStep { level: i + 1, assign: BTreeMap::new() }))
            .collect();

        let mut levels = Vec::with_capacity(horizon + 1);
        levels.push(PartialWord::blank(1));
        for step in &fills {
            let prev = levels.last().expect("level 0 present");
            let next = prev.apply_fill(step.level, structure.period(step.level), &step.assign)?;
            levels.push(next);
        }
        Ok(ToeplitzSpec { alphabet, structure, fills, levels })
    }

    pub fn from_raw(raw: &RawSpec) -> Result<Self> {
        let alphabet = Alphabet::new(raw.alphabet.clone())?;
        let structure = PeriodStructure::new(raw.periods.clone())?;
        let fills = raw
            .fills
            .iter()
            .map(|f| {
                let assign = f
                    .assign
                    .iter()
                    .map(|(&r, tok)| Ok((r, alphabet.lookup(tok)?)))
                    .collect::<Result<BTreeMap<_, _>>>()?;
                Ok(FillStep { level: f.level, assign })
            })
            .collect::<Result<Vec<_>>>()?;
        ToeplitzSpec::new(alphabet, structure, fills)
    }

    /// Serialized form. Empty levels are omitted.
    pub fn to_raw(&self) -> RawSpec {
        RawSpec {
            alphabet: self.alphabet.tokens().to_vec(),
            periods: self.structure.periods().to_vec(),
            fills: self
                .fills
                .iter()
                .filter(|f| !f.assign.is_empty())
                .map(|f| RawFill {
                    level: f.level,
                    assign: f.assign.iter().map(|(&r, &s)| (r, self.alphabet.token(s).to_string())).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: RawSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        ToeplitzSpec::from_raw(&raw)
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawSpec = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        ToeplitzSpec::from_raw(&raw)
    }

    /// Reads a spec file; `.toml` files are parsed as TOML, everything else as JSON.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => ToeplitzSpec::from_toml_str(&text),
            _ => ToeplitzSpec::from_json_str(&text),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("raw spec serializes")
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(&self.to_raw()).expect("raw spec serializes")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn structure(&self) -> &PeriodStructure {
        &self.structure
    }

    pub fn horizon(&self) -> usize {
        self.structure.horizon()
    }

    pub fn period(&self, t: usize) -> usize {
        self.structure.period(t)
    }

    /// Fill step of level `t ∈ [1, T]`.
    pub fn fill(&self, t: usize) -> Result<&FillStep> {
        self.check_level(t, 1)?;
        Ok(&self.fills[t - 1])
    }

    pub fn fills(&self) -> &[FillStep] {
        &self.fills
    }

    pub(crate) fn check_level(&self, t: usize, min: usize) -> Result<()> {
        if t < min || t > self.horizon() {
            return Err(Error::LevelOutOfRange { level: t, min, max: self.horizon() });
        }
        Ok(())
    }

    /// `x_t`, of period `p_t`.
    pub fn level_word(&self, t: usize) -> Result<&PartialWord> {
        self.check_level(t, 0)?;
        Ok(&self.levels[t])
    }

    /// `x_T`, the deepest scheduled word.
    pub fn deep_word(&self) -> &PartialWord {
        self.levels.last().expect("at least one level")
    }

    /// `x_t[lo, hi)`.
    pub fn window(&self, t: usize, lo: i64, hi: i64) -> Result<Vec<Cell>> {
        self.level_word(t)?.window(lo, hi)
    }

    pub fn render(&self, cells: &[Cell]) -> String {
        self.alphabet.render(cells)
    }

    /// Level at which position `i` is filled, or `None` if it is still blank at the horizon.
    pub fn fill_level(&self, i: i64) -> Option<usize> {
        (1..=self.horizon()).find(|&t| !self.levels[t].is_blank(i))
    }

    /// Fill level of each position of `[0, p_T)`; unfilled positions get `T + 1`.
    pub fn fill_levels(&self) -> Vec<usize> {
        let horizon = self.horizon();
        let deep = self.deep_word();
        (0..deep.period() as i64)
            .map(|i| {
                if deep.is_blank(i) {
                    horizon + 1
                } else {
                    (1..=horizon).find(|&t| !self.levels[t].is_blank(i)).expect("filled at the horizon")
                }
            })
            .collect()
    }

    /// Per-residue certificate of `x_t` against the true skeleton `Skel(x, p_t)`.
    ///
    /// A residue is certified blank when deeper scheduled levels write two distinct
    /// symbols into its class modulo `p_t`; that forces a blank in every completion.
    pub fn blank_certificate(&self, t: usize) -> Result<Vec<ResidueStatus>> {
        let word = self.level_word(t)?;
        let p = self.period(t);
        let mut seen: Vec<Option<Symbol>> = vec![None; p];
        let mut status: Vec<ResidueStatus> = word
            .cells()
            .iter()
            .map(|c| if c.is_some() { ResidueStatus::CertifiedFilled } else { ResidueStatus::Undetermined })
            .collect();
        for step in &self.fills[t..] {
            for (&r, &sym) in &step.assign {
                let class = r % p;
                if status[class] != ResidueStatus::Undetermined {
                    continue;
                }
                match seen[class] {
                    None => seen[class] = Some(sym),
                    Some(prev) if prev != sym => status[class] = ResidueStatus::CertifiedBlank,
                    Some(_) => {}
                }
            }
        }
        Ok(status)
    }

    /// Re-anchors the schedule so that every level word becomes `i ↦ x_t(i + a)`.
    pub fn shifted(&self, a: i64) -> ToeplitzSpec {
        let fills = self
            .fills
            .iter()
            .map(|f| {
                let p = self.period(f.level);
                FillStep {
                    level: f.level,
                    assign: f.assign.iter().map(|(&r, &s)| (modulo(r as i64 - a, p), s)).collect(),
                }
            })
            .collect::<Vec<_>>();
        let levels = self.levels.iter().map(|w| w.rotate(a)).collect();
        ToeplitzSpec { alphabet: self.alphabet.clone(), structure: self.structure.clone(), fills, levels }
    }

    /// True when both specs use the same alphabet (in the same order) and period tower.
    pub fn compatible_with(&self, other: &ToeplitzSpec) -> bool {
        self.alphabet == other.alphabet && self.structure == other.structure
    }
}
