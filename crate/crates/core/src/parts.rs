//! Parts of the subshift at scale `p_t`, filled blocks, and recentered parts.
//!
//! The part of residue `k` collects the shifts `σ^i x` with `i ≡ k (mod p_t)`. Its finite
//! shadow is the pair of skeleton `x_t` and deep word `x_T`, both rotated by `k`. Residues
//! `k` and `k'` give the same part exactly when they agree modulo the class modulus
//! `lcm(gcd(p_t, d_T), d_t)`, where `d_s` is the least period of `x_s`: the deep words of
//! the two residue classes then coincide as cyclic families, and so do the skeletons.

use num_integer::{gcd, lcm};

use crate::error::Result;
use crate::spec::{ResidueStatus, ToeplitzSpec};
use crate::verdict::Verdict;
use crate::word::PartialWord;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartDescriptor {
    pub level: usize,
    pub horizon: usize,
    /// Least residue of the class.
    pub residue: usize,
    /// Residues `k ≡ residue` modulo this number describe the same part.
    pub class_modulus: usize,
    /// `x_t` rotated by `residue`, period `p_t`.
    pub skeleton: PartialWord,
    /// `x_T` rotated by `residue`, period `p_T`.
    pub deep_word: PartialWord,
    /// Level-`t` blank certificate rotated by `residue`.
    pub certificate: Vec<ResidueStatus>,
}

impl PartDescriptor {
    /// True when no skeleton blank is left undetermined.
    pub fn certified(&self) -> bool {
        !self.certificate.contains(&ResidueStatus::Undetermined)
    }
}

/// A part whose skeleton starts a filled block at position 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarPart {
    pub part: PartDescriptor,
    /// Length of the filled block starting at 0.
    pub len: usize,
    /// Both blanks bounding the block are certified.
    pub boundary_certified: bool,
}

/// A part recentered on the middle of a long filled block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiPart {
    pub part: PartDescriptor,
    /// Residue of the block-start part this one came from.
    pub source_residue: usize,
    pub len: usize,
    pub shift: usize,
}

/// Offending block of a failed gap dichotomy.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct GapViolation {
    pub residue: usize,
    pub len: usize,
    pub threshold: usize,
    pub c: usize,
}

fn rotate_cert(cert: &[ResidueStatus], k: usize) -> Vec<ResidueStatus> {
    let k = k % cert.len();
    cert[k..].iter().chain(&cert[..k]).copied().collect()
}

/// `lcm(gcd(p_t, d_T), d_t)`.
pub fn class_modulus(spec: &ToeplitzSpec, t: usize) -> Result<usize> {
    let skel = spec.level_word(t)?;
    let d_deep = spec.deep_word().smallest_divisor_period();
    Ok(lcm(gcd(spec.period(t), d_deep), skel.smallest_divisor_period()))
}

fn descriptor(spec: &ToeplitzSpec, t: usize, m: usize, cert: &[ResidueStatus], k: usize) -> PartDescriptor {
    let k = k % m;
    PartDescriptor {
        level: t,
        horizon: spec.horizon(),
        residue: k,
        class_modulus: m,
        skeleton: spec.level_word(t).expect("checked level").rotate(k as i64),
        deep_word: spec.deep_word().rotate(k as i64),
        certificate: rotate_cert(cert, k),
    }
}

/// One descriptor per part of the subshift at scale `p_t`, ordered by least residue.
pub fn parts(spec: &ToeplitzSpec, t: usize) -> Result<Vec<PartDescriptor>> {
    spec.check_level(t, 1)?;
    let m = class_modulus(spec, t)?;
    let cert = spec.blank_certificate(t)?;
    Ok((0..m).map(|k| descriptor(spec, t, m, &cert, k)).collect())
}

/// Parts whose skeleton has a blank at `-1` and a symbol at `0`, with the block length.
pub fn parts_star(spec: &ToeplitzSpec, t: usize) -> Result<Vec<StarPart>> {
    Ok(parts(spec, t)?
        .into_iter()
        .filter_map(|part| {
            let s = &part.skeleton;
            if !s.is_blank(-1) || s.is_blank(0) {
                return None;
            }
            let len = (0..s.period() as i64).find(|&i| s.is_blank(i)).expect("skeleton has a blank") as usize;
            let p = part.certificate.len();
            let boundary_certified = part.certificate[p - 1] == ResidueStatus::CertifiedBlank
                && part.certificate[len % p] == ResidueStatus::CertifiedBlank;
            Some(StarPart { part, len, boundary_certified })
        })
        .collect())
}

/// Block-start parts with `len > p_{t-1}`, each shifted by `⌊len / 2⌋`.
pub fn chi(spec: &ToeplitzSpec, t: usize) -> Result<Vec<ChiPart>> {
    let star = parts_star(spec, t)?;
    let threshold = spec.period(t - 1);
    let cert = spec.blank_certificate(t)?;
    Ok(star
        .into_iter()
        .filter(|s| s.len > threshold)
        .map(|s| {
            let shift = s.len / 2;
            let m = s.part.class_modulus;
            ChiPart {
                part: descriptor(spec, t, m, &cert, s.part.residue + shift),
                source_residue: s.part.residue,
                len: s.len,
                shift,
            }
        })
        .collect())
}

/// Every block length satisfies `len ≥ p_{t-1} + 2c` or `len ≤ p_{t-1}`.
pub fn gap_check(spec: &ToeplitzSpec, t: usize, c: usize) -> Result<Verdict<(), GapViolation>> {
    spec.check_level(t, 2)?;
    let threshold = spec.period(t - 1);
    for s in parts_star(spec, t)? {
        if s.len > threshold && s.len < threshold + 2 * c {
            return Ok(Verdict::No(GapViolation { residue: s.part.residue, len: s.len, threshold, c }));
        }
    }
    Ok(Verdict::Yes(()))
}

/// The gap hypothesis at level `t`: every position `|i| ≤ c` is filled in `x_T` with a
/// value that repeats along `i + k·p_{t-1}` over one full period of `x_T`.
pub fn gap_hypothesis(spec: &ToeplitzSpec, t: usize, c: usize) -> Result<bool> {
    spec.check_level(t, 2)?;
    let deep = spec.deep_word();
    let p = spec.period(t - 1) as i64;
    let n = deep.period() as i64;
    Ok((-(c as i64)..=c as i64).all(|i| {
        let v = deep.get(i);
        v.is_some() && (0..n / p).all(|k| deep.get(i + k * p) == v)
    }))
}

/// Maximal filled blocks of `w` in one period, read cyclically.
pub fn filled_blocks(w: &PartialWord) -> usize {
    (0..w.period() as i64).filter(|&i| w.is_blank(i - 1) && !w.is_blank(i)).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::oxtoby_classic;

    fn s_ox() -> ToeplitzSpec {
        oxtoby_classic(&[4, 4], &["1".into(), "0".into()]).unwrap()
    }

    fn s0() -> ToeplitzSpec {
        ToeplitzSpec::from_json_str(
            r#"{"alphabet": ["0", "1"], "periods": [1, 4, 8],
                "fills": [{"level": 1, "assign": {"1": "1"}},
                          {"level": 2, "assign": {"2": "0", "3": "0"}}]}"#,
        )
        .unwrap()
    }

    #[test]
    fn classic_level_one_parts() {
        let s = s_ox();
        let ps = parts(&s, 1).unwrap();
        let skels: Vec<String> = ps.iter().map(|p| s.render(p.skeleton.cells())).collect();
        assert_eq!(skels, vec!["1□□1", "□□11", "□11□", "11□□"]);
        assert_eq!(parts(&s, 2).unwrap().len(), 16);
    }

    #[test]
    fn periodic_deep_word_collapses() {
        let s = ToeplitzSpec::from_json_str(
            r#"{"alphabet": ["0", "1"], "periods": [1, 2, 4],
                "fills": [{"level": 1, "assign": {"0": "1", "1": "0"}}]}"#,
        )
        .unwrap();
        assert_eq!(parts(&s, 2).unwrap().len(), 2);
    }

    #[test]
    fn block_start_parts() {
        let star = parts_star(&s_ox(), 1).unwrap();
        assert_eq!(star.len(), 1);
        assert_eq!((star[0].part.residue, star[0].len), (3, 2));

        let star = parts_star(&s0(), 1).unwrap();
        assert_eq!(star.len(), 1);
        assert_eq!((star[0].part.residue, star[0].len), (1, 1));

        let blank = ToeplitzSpec::from_json_str(r#"{"alphabet": ["0", "1"], "periods": [1, 2]}"#).unwrap();
        assert!(parts_star(&blank, 1).unwrap().is_empty());
    }

    #[test]
    fn recentered_parts_at_level_one() {
        let s = s_ox();
        let c = chi(&s, 1).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].part.residue, 0);
        assert_eq!(c[0].shift, 1);
        let sk = &c[0].part.skeleton;
        assert!(!sk.is_blank(-1) && !sk.is_blank(0));
    }

    #[test]
    fn gap_violation_on_short_block() {
        // x_1 = "11□□□□", p_0 = 1: a block of length 2 = p_0 + 1 breaks the c = 1 dichotomy.
        let s = ToeplitzSpec::from_json_str(
            r#"{"alphabet": ["0", "1"], "periods": [1, 6, 12],
                "fills": [{"level": 1, "assign": {"0": "1", "1": "1"}}]}"#,
        )
        .unwrap();
        assert!(gap_check(&s, 1, 1).is_err());
        assert!(gap_check(&s, 2, 1).unwrap().is_yes());
        let s = ToeplitzSpec::from_json_str(
            r#"{"alphabet": ["0", "1"], "periods": [1, 2, 12],
                "fills": [{"level": 1, "assign": {"0": "1"}},
                          {"level": 2, "assign": {"1": "0"}}]}"#,
        )
        .unwrap();
        let v = gap_check(&s, 2, 1).unwrap().no().expect("violation");
        assert_eq!((v.len, v.threshold), (3, 2));
    }

    #[test]
    fn block_count_matches_star_parts() {
        let s = s_ox();
        for t in 1..=2 {
            assert_eq!(parts_star(&s, t).unwrap().len(), filled_blocks(s.level_word(t).unwrap()));
        }
    }
}
