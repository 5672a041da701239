use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_rational::BigRational;
use oxtoby_core::analysis::{check_gen_oxtoby, is_piece, oxtoby_offsets};
use oxtoby_core::conjugacy::{conjugacy_test, f_t, relabel, shift_spec, Aggregate, Relabeling};
use oxtoby_core::constructions::{downarowicz_build, oxtoby_classic};
use oxtoby_core::language::language_words;
use oxtoby_core::measures::{
    d_double_star, d_star, density_profile, empirical_measure, freq_double_star, freq_star, CylinderMeasure, Truncated,
    WeightScheme,
};
use oxtoby_core::parts::{chi, gap_check, parts, parts_star, PartDescriptor};
use oxtoby_core::{Alphabet, ResidueStatus, Status, Symbol, ToeplitzSpec, Verdict};
use serde_json::{json, Value};

use crate::args::{Command, MeasureCommand, MeasureSource, OutArg};
use crate::error::CliError;

type Result<T> = std::result::Result<T, CliError>;

/// Exit code, human-readable text and JSON document of one run.
pub struct Report {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { code: 0, text, json }
    }

    fn verdict(status: Status, text: String, json: Value) -> Self {
        let code = match status {
            Status::Yes => 0,
            Status::No => 1,
            Status::Unknown => 2,
        };
        Report { code, text, json }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

fn is_toml(path: &Path) -> bool {
    path.extension().and_then(|e| e.to_str()) == Some("toml")
}

pub fn load_spec(path: &Path) -> Result<ToeplitzSpec> {
    let text = read(path)?;
    Ok(if is_toml(path) { ToeplitzSpec::from_toml_str(&text)? } else { ToeplitzSpec::from_json_str(&text)? })
}

/// Writes the result to `--out` when given; otherwise the schedule document is the report.
fn emit_spec(spec: &ToeplitzSpec, out: &OutArg) -> Result<Report> {
    let doc: Value = serde_json::to_value(spec.to_raw()).expect("raw spec serializes");
    match &out.out {
        Some(path) => {
            let body = if is_toml(path) { spec.to_toml_string() } else { spec.to_json_string() + "\n" };
            fs::write(path, body).map_err(|source| CliError::Write { path: path.clone(), source })?;
            let text =
                format!("wrote {} (horizon {}, p_T = {})", path.display(), spec.horizon(), spec.deep_word().period());
            Ok(Report::ok(text, json!({ "written": path.display().to_string() })))
        }
        None => Ok(Report::ok(spec.to_json_string(), doc)),
    }
}

fn status_text(status: Status) -> String {
    status.to_string()
}

fn json_of<T: serde::Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn rational(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

fn truncated(t: &Truncated) -> Value {
    json!({ "value": rational(&t.value), "tail_bound": rational(&t.tail_bound) })
}

fn part_json(spec: &ToeplitzSpec, d: &PartDescriptor) -> Value {
    json!({
        "residue": d.residue,
        "class_modulus": d.class_modulus,
        "skeleton": spec.render(d.skeleton.cells()),
        "certified": d.certified(),
    })
}

fn cert_char(s: ResidueStatus) -> char {
    match s {
        ResidueStatus::CertifiedFilled => 'F',
        ResidueStatus::CertifiedBlank => 'B',
        ResidueStatus::Undetermined => '?',
    }
}

fn parse_rho(alphabet: &Alphabet, arg: &str) -> Result<Relabeling> {
    let text = match arg.strip_prefix('@') {
        Some(path) => read(Path::new(path))?,
        None => arg.to_string(),
    };
    let maps: BTreeMap<usize, BTreeMap<String, String>> =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("--rho: {e}")))?;
    Ok(Relabeling::from_tokens(alphabet, &maps)?)
}

fn parse_weights(text: &str) -> Result<WeightScheme> {
    if text == "unit" {
        return Ok(WeightScheme::unit());
    }
    if let Some(k) = text.strip_prefix("geometric:") {
        let k = k.parse().map_err(|_| CliError::Usage(format!("bad geometric bound {k:?}")))?;
        return Ok(WeightScheme::geometric(k)?);
    }
    let mut c = BTreeMap::new();
    for item in text.split(',') {
        let (k, w) = item.split_once('=').ok_or_else(|| CliError::Usage(format!("bad weight {item:?}")))?;
        let k: usize = k.trim().parse().map_err(|_| CliError::Usage(format!("bad modulus {k:?}")))?;
        let w: BigRational = w.trim().parse().map_err(|_| CliError::Usage(format!("bad weight value {w:?}")))?;
        c.insert(k, w);
    }
    Ok(WeightScheme::new(c)?)
}

/// The measure together with the alphabet used to read base words.
fn measure(source: &MeasureSource, len: usize) -> Result<(CylinderMeasure, Alphabet)> {
    match (&source.measure_word, &source.measure_spec, source.measure_level) {
        (Some(word), None, _) => {
            let alphabet = Alphabet::binary();
            Ok((CylinderMeasure::from_cyclic_word(&alphabet.parse_word(word)?, len)?, alphabet))
        }
        (None, Some(path), Some(level)) => {
            let spec = load_spec(path)?;
            Ok((empirical_measure(&spec, level, len)?, spec.alphabet().clone()))
        }
        _ => Err(CliError::Usage("give --measure-word or --measure-spec with --measure-level".into())),
    }
}

pub fn run(command: Command) -> Result<Report> {
    match command {
        Command::Validate(a) => {
            let s = load_spec(&a.spec)?;
            let periods = s.structure().periods().to_vec();
            let blanks = s.deep_word().blank_count();
            let text = format!("valid: horizon {}, periods {periods:?}, {blanks} blanks per p_T", s.horizon());
            Ok(Report::ok(
                text,
                json!({ "valid": true, "horizon": s.horizon(), "periods": periods, "deep_blanks": blanks }),
            ))
        }
        Command::Show { at, range } => {
            let s = load_spec(&at.spec.spec)?;
            let (lo, hi) = match range.as_deref() {
                Some([lo, hi]) => (*lo, *hi),
                _ => (0, s.level_word(at.level)?.period() as i64),
            };
            let text = s.render(&s.window(at.level, lo, hi)?);
            Ok(Report::ok(text.clone(), json!({ "level": at.level, "range": [lo, hi], "window": text })))
        }
        Command::SkeletonCert(at) => {
            let s = load_spec(&at.spec.spec)?;
            let cert = s.blank_certificate(at.level)?;
            let line: String = cert.iter().map(|&c| cert_char(c)).collect();
            let open = cert.iter().filter(|&&c| c == ResidueStatus::Undetermined).count();
            let text = format!(
                "{}\n{line}\n(F filled, B certified blank, ? undetermined: {open})",
                s.render(s.level_word(at.level)?.cells())
            );
            Ok(Report::ok(text, json!({ "level": at.level, "certificate": json_of(&cert), "undetermined": open })))
        }
        Command::CheckOxtoby(a) => {
            let s = load_spec(&a.spec)?;
            let v = check_gen_oxtoby(&s);
            let text = match &v {
                Verdict::No(viol) => format!(
                    "no: violation at (t = {}, k = {}): {}",
                    viol.level,
                    viol.block_index.map_or("-".into(), |k| k.to_string()),
                    viol.detail
                ),
                other => status_text(other.status()),
            };
            Ok(Report::verdict(v.status(), text, json_of(&v)))
        }
        Command::Pieces { at, start } => {
            let s = load_spec(&at.spec.spec)?;
            let v = is_piece(&s, start, at.level)?;
            let text = match &v {
                Verdict::No(viol) => format!("no: {}", viol.detail),
                other => status_text(other.status()),
            };
            Ok(Report::verdict(v.status(), text, json_of(&v)))
        }
        Command::Offsets(at) => {
            let s = load_spec(&at.spec.spec)?;
            let offs = oxtoby_offsets(&s, at.level)?;
            let status = if offs.is_empty() { Status::No } else { Status::Yes };
            let text = format!("{offs:?}");
            Ok(Report::verdict(status, text, json!({ "level": at.level, "offsets": offs })))
        }
        Command::Parts { at, star } => {
            let s = load_spec(&at.spec.spec)?;
            if star {
                let ps = parts_star(&s, at.level)?;
                let text = ps
                    .iter()
                    .map(|p| format!("{:>6}  len {:>4}  {}", p.part.residue, p.len, s.render(p.part.skeleton.cells())))
                    .collect::<Vec<_>>()
                    .join("\n");
                let doc: Vec<Value> = ps
                    .iter()
                    .map(|p| {
                        let mut v = part_json(&s, &p.part);
                        v["len"] = json!(p.len);
                        v["boundary_certified"] = json!(p.boundary_certified);
                        v
                    })
                    .collect();
                return Ok(Report::ok(text, json!({ "level": at.level, "star_parts": doc })));
            }
            let ps = parts(&s, at.level)?;
            let text = ps
                .iter()
                .map(|p| format!("{:>6}  {}", p.residue, s.render(p.skeleton.cells())))
                .collect::<Vec<_>>()
                .join("\n");
            let doc: Vec<Value> = ps.iter().map(|p| part_json(&s, p)).collect();
            Ok(Report::ok(text, json!({ "level": at.level, "parts": doc })))
        }
        Command::Chi(at) => {
            let s = load_spec(&at.spec.spec)?;
            let cs = chi(&s, at.level)?;
            let text = cs
                .iter()
                .map(|c| {
                    format!(
                        "{:>6}  from {} (block len {}, shift {})  {}",
                        c.part.residue,
                        c.source_residue,
                        c.len,
                        c.shift,
                        s.render(c.part.skeleton.cells())
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let doc: Vec<Value> = cs
                .iter()
                .map(|c| {
                    let mut v = part_json(&s, &c.part);
                    v["source_residue"] = json!(c.source_residue);
                    v["len"] = json!(c.len);
                    v["shift"] = json!(c.shift);
                    v
                })
                .collect();
            Ok(Report::ok(text, json!({ "level": at.level, "chi": doc })))
        }
        Command::GapCheck { at, c } => {
            let s = load_spec(&at.spec.spec)?;
            let v = gap_check(&s, at.level, c)?;
            let text = match &v {
                Verdict::No(g) => format!(
                    "no: block at residue {} has length {} in ({}, {})",
                    g.residue,
                    g.len,
                    g.threshold,
                    g.threshold + 2 * g.c
                ),
                other => status_text(other.status()),
            };
            Ok(Report::verdict(v.status(), text, json_of(&v)))
        }
        Command::Relabel { at, rho, out } => {
            let s = load_spec(&at.spec.spec)?;
            let rho = parse_rho(s.alphabet(), &rho)?;
            emit_spec(&relabel(&s, at.level, &rho)?, &out)
        }
        Command::Shift { spec, by, out } => emit_spec(&shift_spec(&load_spec(&spec.spec)?, by), &out),
        Command::Conjugacy { pair, tmin, tmax } => {
            let x = load_spec(&pair.left)?;
            let y = load_spec(&pair.right)?;
            let report = conjugacy_test(&x, &y, tmin, tmax.unwrap_or(x.horizon()))?;
            let status = match report.aggregate {
                Aggregate::ConjugateWithWitness => Status::Yes,
                Aggregate::NotConjugateUpToHorizon => Status::No,
                Aggregate::Unknown => Status::Unknown,
            };
            let mut lines = vec![format!("{:>5}  {:>7}  {:>9}  essential", "level", "f_t", "chi_equiv")];
            for r in &report.rows {
                lines.push(format!("{:>5}  {:>7}  {:>9}  {:?}", r.level, r.f_t, r.chi_equiv, r.essential));
            }
            if let Some(w) = &report.dkl {
                lines.push(format!(
                    "block map at level {} onto the shift by {} ({} block pairs, verified: {})",
                    w.level,
                    w.shift,
                    w.pairs.len(),
                    w.verified
                ));
            }
            lines.push(format!("aggregate: {}", json_of(&report.aggregate).as_str().unwrap_or_default()));
            lines.push(report.disclaimer.clone());
            Ok(Report::verdict(status, lines.join("\n"), json_of(&report)))
        }
        Command::Ft { pair, level } => {
            let x = load_spec(&pair.left)?;
            let y = load_spec(&pair.right)?;
            let v = f_t(&x, &y, level)?;
            let (text, doc) = match &v {
                Verdict::Yes(w) => (
                    format!("yes: shifts a = {}, b = {} (verified: {})", w.a, w.b, w.verified),
                    json!({ "status": "yes", "a": w.a, "b": w.b, "verified": w.verified,
                            "pairs": w.map.render_pairs(x.alphabet()) }),
                ),
                Verdict::No(g) => (
                    format!("no: {} of {} shift pairs tried", g.candidates, g.grid),
                    json!({ "status": "no", "evidence": json_of(g) }),
                ),
                Verdict::Unknown(u) => {
                    (format!("unknown: {}", u.reason), json!({ "status": "unknown", "evidence": json_of(u) }))
                }
            };
            Ok(Report::verdict(v.status(), text, doc))
        }
        Command::Measures(m) => run_measures(m),
        Command::BuildOxtoby { ratios, symbols, out } => emit_spec(&oxtoby_classic(&ratios, &symbols)?, &out),
        Command::BuildDownarowicz { words, forbidden, levels, out } => {
            let words = match (words, levels) {
                (Some(w), _) => w,
                (None, Some(t)) => language_words(&forbidden.unwrap_or_default(), t)?,
                (None, None) => return Err(CliError::Usage("give --words or --levels".into())),
            };
            emit_spec(&downarowicz_build(&words)?, &out)
        }
        Command::LanguageWords { forbidden, levels } => {
            let forbidden: Vec<String> = forbidden.into_iter().filter(|f| !f.is_empty()).collect();
            let words = language_words(&forbidden, levels)?;
            let text =
                words.iter().enumerate().map(|(i, w)| format!("b_{} = {w}", i + 1)).collect::<Vec<_>>().join("\n");
            Ok(Report::ok(text, json!({ "forbidden": forbidden, "words": words })))
        }
    }
}

fn run_measures(m: MeasureCommand) -> Result<Report> {
    match m {
        MeasureCommand::Freq { base, word, k, j, alphabet } => {
            let alphabet = Alphabet::new(alphabet)?;
            let b0 = alphabet.parse_word(&base)?;
            let b = alphabet.parse_word(&word)?;
            let f = match (k, j) {
                (Some(k), Some(j)) => freq_double_star(&b0, &b, k, j)?,
                _ => freq_star(&b0, &b)?,
            };
            Ok(Report::ok(f.to_string(), json!({ "frequency": rational(&f), "k": k, "j": j })))
        }
        MeasureCommand::DStar { base, measure: source, len } => {
            let (mu, alphabet) = measure(&source, len)?;
            let d = d_star(&alphabet.parse_word(&base)?, &mu, len)?;
            Ok(Report::ok(format!("{} (tail ≤ {})", d.value, d.tail_bound), truncated(&d)))
        }
        MeasureCommand::DDoubleStar { base, measure: source, len, weights } => {
            let (mu, alphabet) = measure(&source, len)?;
            let weights = parse_weights(&weights)?;
            let d = d_double_star(&alphabet.parse_word(&base)?, &mu, len, &weights)?;
            Ok(Report::ok(format!("{} (tail ≤ {})", d.value, d.tail_bound), truncated(&d)))
        }
        MeasureCommand::Profile { spec, symbol, levels } => {
            let s = load_spec(&spec.spec)?;
            let sym: Symbol = s.alphabet().lookup(&symbol)?;
            let levels = levels.unwrap_or_else(|| (1..=s.horizon()).collect());
            let profile = density_profile(&s, sym, &levels)?;
            let text = levels.iter().zip(&profile).map(|(t, d)| format!("{t:>3}  {d}")).collect::<Vec<_>>().join("\n");
            let doc: Vec<Value> =
                levels.iter().zip(&profile).map(|(t, d)| json!({ "level": t, "density": rational(d) })).collect();
            Ok(Report::ok(text, json!({ "symbol": symbol, "profile": doc })))
        }
    }
}
