use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};

use fuzzcommit_core::artifact::{
    code_from_text, params_from_text, params_to_text, sweep_records, sweep_to_json_lines,
    sweep_to_table, CommitmentFile, OpeningFile, TransmissionNote, WordArtifact,
};
use fuzzcommit_core::{
    commit, enumerate_commitment_masks, open_exact, open_fuzzy, setup, sweep, BitWord, ChannelSpec,
    CodeSet, NoiseTargets, Rational, SchemeParams, Stream, StreamKey, Witness,
};

use crate::{Cli, Command, Field, GlobalOpts, Mode};

pub fn run(cli: Cli) -> Result<ExitCode> {
    let g = cli.global;
    match cli.command {
        Command::Setup { code, z0 } => cmd_setup(&g, &code, &z0),
        Command::Commit {
            message,
            witness,
            opening_out,
        } => cmd_commit(&g, &message, witness.as_deref(), &opening_out),
        Command::Transmit {
            input,
            mask,
            flip_prob,
            field,
            trial,
        } => cmd_transmit(&g, &input, mask.as_deref(), flip_prob.as_deref(), field, trial),
        Command::Open {
            commitment,
            opening,
            mode,
        } => cmd_open(&g, &commitment, &opening, mode),
        Command::Simulate {
            message,
            flip_prob,
            sweep,
            trials,
            noise_on,
            exhaustive_weight,
            witness,
        } => {
            let p_values = match (flip_prob, sweep) {
                (Some(p), _) => vec![p],
                (None, Some(list)) => list,
                (None, None) => vec!["0".to_string()],
            };
            match exhaustive_weight {
                Some(weight) => cmd_enumerate(&g, &message, weight, witness.as_deref()),
                None => cmd_simulate(&g, &message, &p_values, trials, &noise_on),
            }
        }
        Command::Mindist { code } => cmd_mindist(&g, code.as_deref()),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn word(text: &str, what: &str) -> Result<BitWord> {
    text.parse().with_context(|| format!("bad {what}"))
}

fn load_params(g: &GlobalOpts) -> Result<SchemeParams> {
    let path = g.params.clone().unwrap_or_else(|| PathBuf::from("params.txt"));
    params_from_text(&read(&path)?).with_context(|| format!("parsing {}", path.display()))
}

/// `paper7`, `hamming74`, a code document, or a bare list of generator rows.
fn select_code(selector: &str) -> Result<CodeSet> {
    if let Ok(code) = CodeSet::builtin(selector) {
        return Ok(code);
    }
    let path = Path::new(selector);
    if !path.exists() {
        bail!("unknown code {selector:?}: expected paper7, hamming74 or a code file");
    }
    let text = read(path)?;
    if let Ok(code) = code_from_text(&text) {
        return Ok(code);
    }
    let rows = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| word(l, "generator row"))
        .collect::<Result<Vec<_>>>()
        .with_context(|| format!("{} is neither a code document nor generator rows", path.display()))?;
    Ok(CodeSet::build_linear(&rows)?)
}

fn warn_if_not_closed(code: &CodeSet) {
    if let Some((a, b)) = code.closure_witness() {
        let sum = a.xor(b).expect("codewords share a length");
        eprintln!(
            "warning: code {} is not closed under XOR ({a} XOR {b} = {sum} is not a codeword)",
            code.id()
        );
    }
}

fn cmd_setup(g: &GlobalOpts, selector: &str, z0: &str) -> Result<ExitCode> {
    let code = select_code(selector)?;
    let z0: Rational = z0.parse().context("bad --z0")?;
    let params = setup(code, z0)?;
    warn_if_not_closed(&params.code);
    let out = g.out.clone().unwrap_or_else(|| PathBuf::from("params.txt"));
    write(&out, &params_to_text(&params))?;
    println!(
        "code {} (n = {}, k = {}, {} codewords), z0 = {} -> {}",
        params.code.id(),
        params.code.n(),
        params.code.k(),
        params.code.len(),
        params.z0,
        out.display()
    );
    if g.verbose {
        for (m, c) in params.code.table() {
            println!("  g({m}) = {c}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_commit(g: &GlobalOpts, message: &str, witness: Option<&str>, opening_out: &Path) -> Result<ExitCode> {
    let params = load_params(g)?;
    let message = word(message, "message")?;
    let witness = match (witness, g.seed) {
        (Some(w), _) => Witness::Explicit(word(w, "witness")?),
        (None, Some(seed)) => Witness::Seeded(seed),
        (None, None) => bail!("commit needs --witness or --seed"),
    };
    let (c, opening) = commit(&params, &message, &witness)?;
    let out = g.out.clone().unwrap_or_else(|| PathBuf::from("commitment.txt"));
    write(&out, &CommitmentFile::new(c.clone()).to_text())?;
    write(opening_out, &OpeningFile::new(opening.clone()).to_text())?;
    println!("{c}");
    if g.verbose {
        eprintln!(
            "g(m) = {}, S = {}; commitment -> {}, opening -> {}",
            opening.encoded_message,
            opening.witness,
            out.display(),
            opening_out.display()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_transmit(
    g: &GlobalOpts,
    input: &Path,
    mask: Option<&str>,
    flip_prob: Option<&str>,
    field: Option<Field>,
    trial: u64,
) -> Result<ExitCode> {
    let channel = match (mask, flip_prob) {
        (Some(m), _) => ChannelSpec::Mask(word(m, "mask")?),
        (None, Some(p)) => ChannelSpec::bsc(p.parse().context("bad --flip-prob")?, g.seed.unwrap_or(0))?,
        (None, None) => ChannelSpec::Identity,
    };
    let mut artifact = fuzzcommit_core::artifact::word_artifact_from_text(&read(input)?)
        .with_context(|| format!("parsing {}", input.display()))?;

    let (target, field_name, stream): (&mut BitWord, &str, Stream) = match (&mut artifact, field) {
        (WordArtifact::Commitment(c), None | Some(Field::Commitment)) => {
            (&mut c.commitment, "commitment", Stream::Commitment)
        }
        (WordArtifact::Commitment(_), Some(f)) => bail!("{f:?} is not part of a commitment file"),
        (WordArtifact::Opening(o), None | Some(Field::EncodedMessage)) => {
            (&mut o.opening.encoded_message, "encoded_message", Stream::EncodedMessage)
        }
        (WordArtifact::Opening(o), Some(Field::Witness)) => {
            (&mut o.opening.witness, "witness", Stream::WitnessTransit)
        }
        (WordArtifact::Opening(_), Some(Field::Commitment)) => bail!("an opening file has no commitment"),
    };
    let key = StreamKey::new(0, trial, stream);
    let (received, applied) = channel.send(target, key)?;
    *target = received.clone();
    let note = TransmissionNote {
        field: field_name.to_string(),
        channel,
        mask: applied.clone(),
    };
    match &mut artifact {
        WordArtifact::Commitment(c) => c.transmissions.push(note),
        WordArtifact::Opening(o) => o.transmissions.push(note),
    }

    let out = g.out.clone().context("transmit needs --out")?;
    write(&out, &artifact.to_text())?;
    println!("{field_name}: {received} (mask {applied})");
    Ok(ExitCode::SUCCESS)
}

fn cmd_open(g: &GlobalOpts, commitment: &Path, opening: &Path, mode: Mode) -> Result<ExitCode> {
    let params = load_params(g)?;
    let c = CommitmentFile::from_text(&read(commitment)?)
        .with_context(|| format!("parsing {}", commitment.display()))?
        .commitment;
    let o = OpeningFile::from_text(&read(opening)?)
        .with_context(|| format!("parsing {}", opening.display()))?
        .opening;

    let accepted = match mode {
        Mode::Crisp => {
            let accepted = open_exact(&params, &c, &o)?;
            let rebuilt = o.encoded_message.xor(&o.witness)?;
            println!("mode:          crisp");
            println!("commitment:    {c}");
            println!("reconstructed: {rebuilt}");
            println!("decision:      {}", if accepted { "accept" } else { "reject" });
            accepted
        }
        Mode::Fuzzy => {
            let d = open_fuzzy(&params, &c, &o)?;
            println!("mode:          fuzzy");
            println!("commitment:    {c}");
            println!("reconstructed: {}", d.reconstructed);
            println!("corrected:     {}", d.corrected);
            println!(
                "nearness:      {} ({:.4})",
                fraction_over_n(d.nearness_value, params.n()),
                d.nearness_value.to_f64()
            );
            println!("threshold:     {} ({:.4})", params.z0, params.z0.to_f64());
            println!("fuzz:          {}", d.fuzz_value);
            println!("decision:      {}", if d.accepted { "accept" } else { "reject" });
            if let Some(m) = &d.recovered_message {
                println!("message:       {m}");
            }
            if g.verbose && d.accepted && !d.recovery_exact {
                eprintln!("note: corrected XOR witness was not a codeword; message read after a second correction");
            }
            d.accepted
        }
    };
    Ok(if accepted { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// Nearness written over the word length, e.g. `0/7` rather than `0/1`.
fn fraction_over_n(value: Rational, n: usize) -> String {
    let n = n as u64;
    if n.is_multiple_of(value.denominator()) {
        format!("{}/{n}", value.numerator() * (n / value.denominator()))
    } else {
        value.to_string()
    }
}

fn cmd_simulate(g: &GlobalOpts, message: &str, p_values: &[String], trials: u64, noise_on: &[Field]) -> Result<ExitCode> {
    let params = load_params(g)?;
    let message = word(message, "message")?;
    let p_values = p_values
        .iter()
        .map(|p| p.trim().parse::<Rational>().with_context(|| format!("bad flip probability {p:?}")))
        .collect::<Result<Vec<_>>>()?;
    let targets = NoiseTargets {
        commitment: noise_on.contains(&Field::Commitment),
        encoded_message: noise_on.contains(&Field::EncodedMessage),
        witness: noise_on.contains(&Field::Witness),
    };
    let seed = g.seed.unwrap_or(0);
    let rows = sweep(&params, &message, &p_values, trials, seed, targets)?;
    let records = sweep_records(&params, &rows, seed);

    print!("{}", sweep_to_table(&records));
    if let Some(out) = &g.out {
        write(out, &sweep_to_json_lines(&records))?;
        if g.verbose {
            eprintln!("{} records -> {}", records.len(), out.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(g: &GlobalOpts, message: &str, weight: usize, witness: Option<&str>) -> Result<ExitCode> {
    let params = load_params(g)?;
    let message = word(message, "message")?;
    let witness = match witness {
        Some(w) => word(w, "witness")?,
        None => {
            let zero = BitWord::zeros(params.n());
            if params.code.contains(&zero) {
                zero
            } else {
                params.code.codewords().next().expect("codes are non-empty").clone()
            }
        }
    };
    let e = enumerate_commitment_masks(&params, &message, &witness, weight)?;
    println!(
        "weight {}: {}/{} accepted, {} recovered {message}",
        e.weight, e.accepted, e.masks, e.recovered
    );
    if let Some(out) = &g.out {
        write(out, &(serde_json_line(&e)?))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn serde_json_line<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string(value)? + "\n")
}

fn cmd_mindist(g: &GlobalOpts, selector: Option<&str>) -> Result<ExitCode> {
    let code = match selector {
        Some(s) => select_code(s)?,
        None => load_params(g)?.code,
    };
    println!("{}", code.min_distance()?);
    Ok(ExitCode::SUCCESS)
}
