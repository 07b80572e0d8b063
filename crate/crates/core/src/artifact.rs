//! Plain-text artifact files exchanged between the protocol steps.
//!
//! Every file is a list of `key: value` lines; blank lines and lines starting
//! with `#` are ignored. Code documents end with a `table:` block of
//! `<message> <codeword>` lines or a `generator:` block of row lines.
//!
//! ```text
//! # params                     # commitment           # opening
//! z0: 1/5                      n: 7                   n: 7
//! combiner: XOR                commitment: 1111111    encoded_message: 0100101
//! correction: nearest                                 witness: 1011010
//! prng: chacha20
//! code: paper7
//! ```

use std::fmt::Write as _;

use serde::Serialize;

use crate::bitword::BitWord;
use crate::channel::ChannelSpec;
use crate::codeset::CodeSet;
use crate::commitment::{setup, Opening, SchemeParams};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rng::PRNG_ALGORITHM;
use crate::simulation::SweepRow;

const BUILTIN_CODES: [&str; 2] = ["paper7", "hamming74"];

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Numbered, trimmed, non-comment lines.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn split_key(line_no: usize, line: &str) -> Result<(&str, &str)> {
    line.split_once(':')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| parse_error(line_no, format!("expected `key: value`, got {line:?}")))
}

fn parse_at<T: std::str::FromStr<Err = Error>>(line_no: usize, value: &str) -> Result<T> {
    value.parse().map_err(|e: Error| parse_error(line_no, e.to_string()))
}

fn parse_usize(line_no: usize, value: &str) -> Result<usize> {
    value
        .parse()
        .map_err(|_| parse_error(line_no, format!("expected an integer, got {value:?}")))
}

// ---------------------------------------------------------------- codes

/// Writes a code document. Codes built from generator rows are written as
/// their rows, everything else as the explicit table.
pub fn code_to_text(code: &CodeSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "id: {}", code.id());
    let _ = writeln!(out, "n: {}", code.n());
    let _ = writeln!(out, "k: {}", code.k());
    match code.generator() {
        Some(rows) => {
            out.push_str("generator:\n");
            for row in rows {
                let _ = writeln!(out, "{row}");
            }
        }
        None => {
            out.push_str("table:\n");
            for (m, c) in code.table() {
                let _ = writeln!(out, "{m} {c}");
            }
        }
    }
    out
}

pub fn code_from_text(text: &str) -> Result<CodeSet> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    code_from_lines(&lines)
}

fn code_from_lines(lines: &[(usize, &str)]) -> Result<CodeSet> {
    let mut id = None;
    let mut n = None;
    let mut k = None;
    let mut iter = lines.iter();
    let mut block = None;
    for &(line_no, line) in iter.by_ref() {
        if line == "table:" || line == "generator:" {
            block = Some((line_no, line));
            break;
        }
        match split_key(line_no, line)? {
            ("id", v) => id = Some(v.to_string()),
            ("n", v) => n = Some(parse_usize(line_no, v)?),
            ("k", v) => k = Some(parse_usize(line_no, v)?),
            (key, _) => return Err(parse_error(line_no, format!("unknown code field {key:?}"))),
        }
    }
    let (block_line, kind) = block.ok_or_else(|| parse_error(0, "missing `table:` or `generator:` block"))?;
    let rest: Vec<(usize, &str)> = iter.copied().collect();

    let code = if kind == "generator:" {
        let rows = rest
            .iter()
            .map(|&(no, l)| parse_at::<BitWord>(no, l))
            .collect::<Result<Vec<_>>>()?;
        let mut code = CodeSet::build_linear(&rows).map_err(|e| parse_error(block_line, e.to_string()))?;
        if let Some(id) = &id {
            if !id.starts_with("generator:") {
                code = CodeSet::from_table(id.clone(), code.table().map(|(m, c)| (m.clone(), c.clone())))?
                    .with_generator(rows);
            }
        }
        code
    } else {
        let table = rest
            .iter()
            .map(|&(no, l)| {
                let (m, c) = l
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| parse_error(no, "expected `<message> <codeword>`"))?;
                Ok((parse_at::<BitWord>(no, m)?, parse_at::<BitWord>(no, c.trim())?))
            })
            .collect::<Result<Vec<_>>>()?;
        let id = id.clone().ok_or_else(|| parse_error(block_line, "code table needs an `id`"))?;
        CodeSet::from_table(id, table).map_err(|e| parse_error(block_line, e.to_string()))?
    };

    if n.is_some_and(|n| n != code.n()) || k.is_some_and(|k| k != code.k()) {
        return Err(parse_error(
            block_line,
            format!("declared n/k do not match the code ({}, {})", code.n(), code.k()),
        ));
    }
    Ok(code)
}

// ---------------------------------------------------------------- params

pub fn params_to_text(params: &SchemeParams) -> String {
    let mut out = String::from("# fuzzy commitment parameters\n");
    let _ = writeln!(out, "z0: {}", params.z0);
    let _ = writeln!(out, "combiner: {}", params.combiner);
    let _ = writeln!(out, "correction: {}", params.correction);
    let _ = writeln!(out, "prng: {PRNG_ALGORITHM}");
    if BUILTIN_CODES.contains(&params.code.id()) {
        let _ = writeln!(out, "code: {}", params.code.id());
    } else {
        out.push_str("code: inline\n");
        out.push_str(&code_to_text(&params.code));
    }
    out
}

pub fn params_from_text(text: &str) -> Result<SchemeParams> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let mut z0 = None;
    let mut code = None;
    for (i, &(line_no, line)) in lines.iter().enumerate() {
        match split_key(line_no, line)? {
            ("z0", v) => z0 = Some((line_no, parse_at::<Rational>(line_no, v)?)),
            ("combiner", "XOR") => {}
            ("correction", "nearest") => {}
            ("prng", v) if v == PRNG_ALGORITHM => {}
            ("code", "inline") => {
                code = Some(code_from_lines(&lines[i + 1..])?);
                break;
            }
            ("code", v) => code = Some(CodeSet::builtin(v).map_err(|e| parse_error(line_no, e.to_string()))?),
            (key, v) => return Err(parse_error(line_no, format!("unsupported {key} {v:?}"))),
        }
    }
    let (z0_line, z0) = z0.ok_or_else(|| parse_error(0, "missing z0"))?;
    let code = code.ok_or_else(|| parse_error(0, "missing code"))?;
    setup(code, z0).map_err(|e| parse_error(z0_line, e.to_string()))
}

// ---------------------------------------------------------------- words

/// Audit record left by each transmit step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransmissionNote {
    pub field: String,
    pub channel: ChannelSpec,
    pub mask: BitWord,
}

impl TransmissionNote {
    fn to_line(&self) -> String {
        format!(
            "transmitted: field={} channel={} mask={}",
            self.field, self.channel, self.mask
        )
    }

    fn parse(line_no: usize, value: &str) -> Result<Self> {
        let mut field = None;
        let mut channel = None;
        let mut mask = None;
        for part in value.split_whitespace() {
            match part.split_once('=') {
                Some(("field", v)) => field = Some(v.to_string()),
                Some(("channel", v)) => channel = Some(parse_at::<ChannelSpec>(line_no, v)?),
                Some(("mask", v)) => mask = Some(parse_at::<BitWord>(line_no, v)?),
                _ => return Err(parse_error(line_no, format!("bad transmission note {part:?}"))),
            }
        }
        match (field, channel, mask) {
            (Some(field), Some(channel), Some(mask)) => Ok(TransmissionNote { field, channel, mask }),
            _ => Err(parse_error(line_no, "transmission note needs field, channel and mask")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommitmentFile {
    pub commitment: BitWord,
    pub transmissions: Vec<TransmissionNote>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpeningFile {
    pub opening: Opening,
    pub transmissions: Vec<TransmissionNote>,
}

/// Either artifact, for commands that accept both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordArtifact {
    Commitment(CommitmentFile),
    Opening(OpeningFile),
}

impl CommitmentFile {
    pub fn new(commitment: BitWord) -> Self {
        CommitmentFile {
            commitment,
            transmissions: Vec::new(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n: {}\ncommitment: {}\n", self.commitment.len(), self.commitment);
        for note in &self.transmissions {
            out.push_str(&note.to_line());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        match word_artifact_from_text(text)? {
            WordArtifact::Commitment(c) => Ok(c),
            WordArtifact::Opening(_) => Err(parse_error(0, "expected a commitment file, found an opening")),
        }
    }
}

impl OpeningFile {
    pub fn new(opening: Opening) -> Self {
        OpeningFile {
            opening,
            transmissions: Vec::new(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "n: {}\nencoded_message: {}\nwitness: {}\n",
            self.opening.encoded_message.len(),
            self.opening.encoded_message,
            self.opening.witness
        );
        for note in &self.transmissions {
            out.push_str(&note.to_line());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        match word_artifact_from_text(text)? {
            WordArtifact::Opening(o) => Ok(o),
            WordArtifact::Commitment(_) => Err(parse_error(0, "expected an opening file, found a commitment")),
        }
    }
}

impl WordArtifact {
    pub fn to_text(&self) -> String {
        match self {
            WordArtifact::Commitment(c) => c.to_text(),
            WordArtifact::Opening(o) => o.to_text(),
        }
    }
}

pub fn word_artifact_from_text(text: &str) -> Result<WordArtifact> {
    let mut n = None;
    let mut commitment = None;
    let mut encoded = None;
    let mut witness = None;
    let mut transmissions = Vec::new();
    for (line_no, line) in content_lines(text) {
        match split_key(line_no, line)? {
            ("n", v) => n = Some((line_no, parse_usize(line_no, v)?)),
            ("commitment", v) => commitment = Some(parse_at::<BitWord>(line_no, v)?),
            ("encoded_message", v) => encoded = Some(parse_at::<BitWord>(line_no, v)?),
            ("witness", v) => witness = Some(parse_at::<BitWord>(line_no, v)?),
            ("transmitted", v) => transmissions.push(TransmissionNote::parse(line_no, v)?),
            (key, _) => return Err(parse_error(line_no, format!("unknown field {key:?}"))),
        }
    }
    let check = |w: &BitWord| -> Result<()> {
        match n {
            Some((line, n)) if n != w.len() => Err(parse_error(
                line,
                format!("declared n = {n} but word {w} has {} bits", w.len()),
            )),
            _ => Ok(()),
        }
    };
    match (commitment, encoded, witness) {
        (Some(commitment), None, None) => {
            check(&commitment)?;
            Ok(WordArtifact::Commitment(CommitmentFile {
                commitment,
                transmissions,
            }))
        }
        (None, Some(encoded_message), Some(witness)) => {
            check(&encoded_message)?;
            check(&witness)?;
            Ok(WordArtifact::Opening(OpeningFile {
                opening: Opening {
                    encoded_message,
                    witness,
                },
                transmissions,
            }))
        }
        _ => Err(parse_error(
            0,
            "expected either `commitment` or both `encoded_message` and `witness`",
        )),
    }
}

// ---------------------------------------------------------------- sweeps

/// One line of the machine-readable sweep output.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRecord {
    pub p: Rational,
    pub p_decimal: f64,
    pub trials: u64,
    pub accepted: u64,
    pub rate: Rational,
    pub rate_decimal: f64,
    pub mean_nearness: Rational,
    pub mean_nearness_decimal: f64,
    pub recovery_correct: u64,
    pub code: String,
    pub z0: Rational,
    pub prng: &'static str,
    pub seed: u64,
}

pub fn sweep_records(params: &SchemeParams, rows: &[SweepRow], seed: u64) -> Vec<SweepRecord> {
    rows.iter()
        .map(|row| SweepRecord {
            p: row.p,
            p_decimal: row.p.to_f64(),
            trials: row.stats.trials,
            accepted: row.stats.accepted,
            rate: row.stats.rate,
            rate_decimal: row.stats.rate.to_f64(),
            mean_nearness: row.stats.mean_nearness,
            mean_nearness_decimal: row.stats.mean_nearness.to_f64(),
            recovery_correct: row.stats.recovery_correct,
            code: params.code.id().to_string(),
            z0: params.z0,
            prng: PRNG_ALGORITHM,
            seed,
        })
        .collect()
}

/// JSON lines, one record per row.
pub fn sweep_to_json_lines(records: &[SweepRecord]) -> String {
    records
        .iter()
        .map(|r| serde_json::to_string(r).expect("record serializes") + "\n")
        .collect()
}

pub fn sweep_to_table(records: &[SweepRecord]) -> String {
    let mut out = format!(
        "{:>10} {:>8} {:>8} {:>8} {:>14} {:>9}\n",
        "p", "trials", "accepted", "rate", "mean_nearness", "recovered"
    );
    for r in records {
        let _ = writeln!(
            out,
            "{:>10} {:>8} {:>8} {:>8.4} {:>14.4} {:>9}",
            r.p.to_string(),
            r.trials,
            r.accepted,
            r.rate_decimal,
            r.mean_nearness_decimal,
            r.recovery_correct
        );
    }
    out
}
