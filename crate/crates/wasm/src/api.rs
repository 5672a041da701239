use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use oxtoby_core::analysis::{check_gen_oxtoby, oxtoby_offsets};
use oxtoby_core::conjugacy::{conjugacy_test, relabel, shift_spec, Relabeling};
use oxtoby_core::constructions::oxtoby_classic;
use oxtoby_core::{measures, ToeplitzSpec};
use serde_json::{json, Value};

/// Level words longer than this are cut in the rendered output.
const RENDER_LIMIT: usize = 256;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn describe(spec: &ToeplitzSpec) -> Result<Value, String> {
    let mut levels = Vec::new();
    for t in 1..=spec.horizon() {
        let w = spec.level_word(t).map_err(err)?;
        let shown = w.period().min(RENDER_LIMIT);
        levels.push(json!({
            "level": t,
            "period": w.period(),
            "word": spec.render(&w.cells()[..shown]),
            "truncated": shown < w.period(),
            "blanks": w.blank_count(),
            "offsets": oxtoby_offsets(spec, t).map_err(err)?,
        }));
    }
    let verdict = check_gen_oxtoby(spec);
    Ok(json!({
        "spec": serde_json::to_value(spec.to_raw()).map_err(err)?,
        "levels": levels,
        "generalized_oxtoby": serde_json::to_value(&verdict).map_err(err)?,
    }))
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| format!("bad {what} {s:?}")))
        .collect()
}

pub fn build_classic(ratios: &str, symbols: &str) -> Result<String, String> {
    let ratios: Vec<usize> = parse_list(ratios, "ratio")?;
    let symbols: Vec<String> = parse_list(symbols, "symbol")?;
    let total: usize = ratios.iter().try_fold(1usize, |acc, &r| acc.checked_mul(r)).ok_or("period overflow")?;
    if total > 1 << 20 {
        return Err(format!("p_T = {total} is too large for the demo"));
    }
    let spec = oxtoby_classic(&ratios, &symbols).map_err(err)?;
    Ok(describe(&spec)?.to_string())
}

pub fn inspect(spec_json: &str) -> Result<String, String> {
    let spec = ToeplitzSpec::from_json_str(spec_json).map_err(err)?;
    Ok(describe(&spec)?.to_string())
}

pub fn density_profile(spec_json: &str, symbol: &str) -> Result<String, String> {
    let spec = ToeplitzSpec::from_json_str(spec_json).map_err(err)?;
    let sym = spec.alphabet().lookup(symbol).map_err(err)?;
    let levels: Vec<usize> = (1..=spec.horizon()).collect();
    let profile = measures::density_profile(&spec, sym, &levels).map_err(err)?;
    let rows: Vec<Value> = levels
        .iter()
        .zip(&profile)
        .map(|(t, d)| json!({ "level": t, "density": d.to_string(), "approx": d.to_f64() }))
        .collect();
    Ok(json!({ "symbol": symbol, "profile": rows }).to_string())
}

pub fn conjugacy_against_image(spec_json: &str, shift: i64, level: usize, rho_json: &str) -> Result<String, String> {
    let x = ToeplitzSpec::from_json_str(spec_json).map_err(err)?;
    let maps: BTreeMap<usize, BTreeMap<String, String>> = if rho_json.trim().is_empty() {
        BTreeMap::new()
    } else {
        serde_json::from_str(rho_json).map_err(|e| format!("relabeling: {e}"))?
    };
    let rho = Relabeling::from_tokens(x.alphabet(), &maps).map_err(err)?;
    let y = relabel(&shift_spec(&x, shift), level, &rho).map_err(err)?;
    let report = conjugacy_test(&x, &y, 1, x.horizon()).map_err(err)?;
    Ok(json!({
        "image": describe(&y)?,
        "report": serde_json::to_value(&report).map_err(err)?,
    })
    .to_string())
}
