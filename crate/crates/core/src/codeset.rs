//! Codes: a finite set of codewords together with the one-to-one encoding
//! map from messages onto it.

use std::collections::{HashMap, HashSet};

use crate::bitword::BitWord;
use crate::error::{Error, Result};

/// Largest generator row count accepted by [`CodeSet::build_linear`]; the
/// code is enumerated in full, so this keeps it at most 4096 codewords.
pub const MAX_GENERATOR_ROWS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSet {
    id: String,
    n: usize,
    k: usize,
    /// (codeword, message), sorted by codeword.
    entries: Vec<(BitWord, BitWord)>,
    codeword_index: HashMap<BitWord, usize>,
    message_index: HashMap<BitWord, usize>,
    closure_witness: Option<(BitWord, BitWord)>,
    generator: Option<Vec<BitWord>>,
}

impl CodeSet {
    /// Builds a code from an explicit `message -> codeword` table.
    pub fn from_table<I>(id: impl Into<String>, table: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BitWord, BitWord)>,
    {
        let table: Vec<(BitWord, BitWord)> = table.into_iter().collect();
        if table.len() < 2 {
            return Err(Error::TooFewCodewords(table.len()));
        }
        let k = table[0].0.len();
        let n = table[0].1.len();
        let mut entries = Vec::with_capacity(table.len());
        for (message, codeword) in table {
            if message.len() != k {
                return Err(Error::InvalidCode(format!(
                    "message {message} has {} bits, expected {k}",
                    message.len()
                )));
            }
            if codeword.len() != n {
                return Err(Error::InvalidCode(format!(
                    "codeword {codeword} has {} bits, expected {n}",
                    codeword.len()
                )));
            }
            entries.push((codeword, message));
        }
        entries.sort();

        let mut codeword_index = HashMap::with_capacity(entries.len());
        let mut message_index = HashMap::with_capacity(entries.len());
        for (i, (codeword, message)) in entries.iter().enumerate() {
            if codeword_index.insert(codeword.clone(), i).is_some() {
                return Err(Error::InvalidCode(format!(
                    "codeword {codeword} is assigned to more than one message"
                )));
            }
            if message_index.insert(message.clone(), i).is_some() {
                return Err(Error::InvalidCode(format!(
                    "message {message} appears more than once"
                )));
            }
        }

        let closure_witness = find_closure_violation(&entries, &codeword_index);
        Ok(CodeSet {
            id: id.into(),
            n,
            k,
            entries,
            codeword_index,
            message_index,
            closure_witness,
            generator: None,
        })
    }

    /// The linear code spanned by `rows`: message `m` encodes to the XOR of
    /// the rows selected by its 1-bits (bit 1 of `m` selects the first row).
    pub fn build_linear(rows: &[BitWord]) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::InvalidCode("no generator rows".into()));
        }
        if k > MAX_GENERATOR_ROWS {
            return Err(Error::InvalidCode(format!(
                "{k} generator rows exceed the enumeration limit of {MAX_GENERATOR_ROWS}"
            )));
        }
        let n = rows[0].len();
        for row in rows {
            if row.len() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: row.len(),
                });
            }
        }
        let rank = gf2_rank(rows);
        if rank < k {
            return Err(Error::RankDeficient { rank, rows: k });
        }

        let table = (0..1u64 << k).map(|value| {
            let message = BitWord::from_u64(value, k);
            let mut codeword = BitWord::zeros(n);
            for (i, row) in rows.iter().enumerate() {
                if message.get(i) {
                    codeword = codeword.xor(row).expect("rows share a length");
                }
            }
            (message, codeword)
        });
        let mut code = CodeSet::from_table(generator_id(rows), table)?;
        code.generator = Some(rows.to_vec());
        Ok(code)
    }

    /// Systematic Hamming(7,4): rows `[I | P]` with minimum distance 3.
    pub fn hamming74() -> Self {
        let rows: Vec<BitWord> = ["1000110", "0100101", "0010011", "0001111"]
            .iter()
            .map(|r| r.parse().expect("static row"))
            .collect();
        let mut code = CodeSet::build_linear(&rows).expect("hamming rows are independent");
        code.id = "hamming74".into();
        code
    }

    /// The seven-message worked-example code, exactly as published. It is
    /// not closed under XOR; see [`CodeSet::closure_witness`].
    pub fn paper_example_code() -> Self {
        const TABLE: [(&str, &str); 7] = [
            ("0000", "0000000"),
            ("1011", "0100101"),
            ("0101", "0010011"),
            ("1110", "0110110"),
            ("1010", "1011010"),
            ("1100", "1101100"),
            ("1111", "1111111"),
        ];
        CodeSet::from_table(
            "paper7",
            TABLE
                .iter()
                .map(|(m, c)| (m.parse().expect("static"), c.parse().expect("static"))),
        )
        .expect("static table is one-to-one")
    }

    /// Looks up one of the shipped codes by id.
    pub fn builtin(id: &str) -> Result<Self> {
        match id {
            "paper7" => Ok(Self::paper_example_code()),
            "hamming74" => Ok(Self::hamming74()),
            other => Err(Error::UnknownCode(other.to_string())),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// Codeword length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Message length.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Codewords in lexicographic order.
    pub fn codewords(&self) -> impl ExactSizeIterator<Item = &BitWord> {
        self.entries.iter().map(|(c, _)| c)
    }

    /// Messages, ordered by their codewords.
    pub fn messages(&self) -> impl ExactSizeIterator<Item = &BitWord> {
        self.entries.iter().map(|(_, m)| m)
    }

    /// `(message, codeword)` pairs ordered by codeword.
    pub fn table(&self) -> impl ExactSizeIterator<Item = (&BitWord, &BitWord)> {
        self.entries.iter().map(|(c, m)| (m, c))
    }

    pub fn codeword_at(&self, index: usize) -> &BitWord {
        &self.entries[index].0
    }

    pub fn contains(&self, word: &BitWord) -> bool {
        self.codeword_index.contains_key(word)
    }

    pub fn is_message(&self, message: &BitWord) -> bool {
        self.message_index.contains_key(message)
    }

    pub fn closed_under_xor(&self) -> bool {
        self.closure_witness.is_none()
    }

    /// First pair `(a, b)` (in codeword order) whose XOR is not a codeword.
    pub fn closure_witness(&self) -> Option<(&BitWord, &BitWord)> {
        self.closure_witness.as_ref().map(|(a, b)| (a, b))
    }

    pub fn generator(&self) -> Option<&[BitWord]> {
        self.generator.as_deref()
    }

    pub(crate) fn with_generator(mut self, rows: Vec<BitWord>) -> Self {
        self.generator = Some(rows);
        self
    }

    /// `g(message)`.
    pub fn encode(&self, message: &BitWord) -> Result<BitWord> {
        if message.len() != self.k {
            return Err(Error::LengthMismatch {
                left: message.len(),
                right: self.k,
            });
        }
        self.message_index
            .get(message)
            .map(|&i| self.entries[i].0.clone())
            .ok_or_else(|| Error::UnknownMessage(message.to_string()))
    }

    /// `g⁻¹(codeword)`. Words outside the code must be corrected first.
    pub fn decode(&self, codeword: &BitWord) -> Result<BitWord> {
        if codeword.len() != self.n {
            return Err(Error::LengthMismatch {
                left: codeword.len(),
                right: self.n,
            });
        }
        self.codeword_index
            .get(codeword)
            .map(|&i| self.entries[i].1.clone())
            .ok_or_else(|| Error::NotACodeword(codeword.to_string()))
    }

    /// Minimum Hamming distance over distinct codeword pairs.
    pub fn min_distance(&self) -> Result<usize> {
        if self.entries.len() < 2 {
            return Err(Error::TooFewCodewords(self.entries.len()));
        }
        let mut best = usize::MAX;
        for (i, (a, _)) in self.entries.iter().enumerate() {
            for (b, _) in &self.entries[i + 1..] {
                best = best.min(a.distance(b)?);
            }
        }
        Ok(best)
    }
}

pub fn build_linear_code(generator_rows: &[BitWord]) -> Result<CodeSet> {
    CodeSet::build_linear(generator_rows)
}

pub fn paper_example_code() -> CodeSet {
    CodeSet::paper_example_code()
}

pub fn encode(code: &CodeSet, message: &BitWord) -> Result<BitWord> {
    code.encode(message)
}

pub fn decode(code: &CodeSet, codeword: &BitWord) -> Result<BitWord> {
    code.decode(codeword)
}

pub fn min_distance(code: &CodeSet) -> Result<usize> {
    code.min_distance()
}

fn find_closure_violation(
    entries: &[(BitWord, BitWord)],
    index: &HashMap<BitWord, usize>,
) -> Option<(BitWord, BitWord)> {
    let members: HashSet<&BitWord> = index.keys().collect();
    for (i, (a, _)) in entries.iter().enumerate() {
        for (b, _) in &entries[i..] {
            let sum = a.xor(b).expect("codewords share a length");
            if !members.contains(&sum) {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

/// Rank over GF(2) by Gaussian elimination.
fn gf2_rank(rows: &[BitWord]) -> usize {
    let mut rows: Vec<BitWord> = rows.to_vec();
    let n = rows.first().map_or(0, BitWord::len);
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                *row = row.xor(&pivot_row).expect("equal lengths");
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// `generator:<hex>` where the hex digits pack the concatenated rows, most
/// significant bit first, zero-padded to a whole nibble.
fn generator_id(rows: &[BitWord]) -> String {
    let bits: Vec<bool> = rows.iter().flat_map(|r| r.iter()).collect();
    let hex: String = bits
        .chunks(4)
        .map(|chunk| {
            let nibble = chunk
                .iter()
                .enumerate()
                .fold(0u32, |acc, (i, &b)| acc | (u32::from(b) << (3 - i)));
            char::from_digit(nibble, 16).expect("nibble")
        })
        .collect();
    format!("generator:{hex}")
}
