//! Truth tables over small input alphabets, including partial (promise)
//! tables, plus the text file format used by the CLI.
//!
//! Inputs are strings of `n` symbols drawn from `{0..alphabet_size-1}`;
//! outputs are values in `{0..range_size-1}`. A table may be total or may
//! define only a promise subset of inputs.
//!
//! File format, one entry per line, values as digit strings:
//!
//! ```text
//! n 4 alphabet 2 range 2
//! # comment lines and blank lines are skipped
//! 0000 0
//! 0001 1
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// Largest number of inputs a total table may enumerate.
const MAX_TABLE_ENTRIES: usize = 1 << 20;

/// A (possibly partial) function from input strings to answer values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    n: usize,
    alphabet_size: usize,
    range_size: usize,
    map: BTreeMap<Vec<u8>, usize>,
}

impl TruthTable {
    /// Empty table with the given shape.
    pub fn new(n: usize, alphabet_size: usize, range_size: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::arg("truth table needs at least one position"));
        }
        if alphabet_size < 2 {
            return Err(Error::arg("alphabet size must be at least 2"));
        }
        if range_size < 1 {
            return Err(Error::arg("range size must be at least 1"));
        }
        Ok(Self {
            n,
            alphabet_size,
            range_size,
            map: BTreeMap::new(),
        })
    }

    pub fn positions(&self) -> usize {
        self.n
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn range_size(&self) -> usize {
        self.range_size
    }

    fn check_input(&self, input: &[u8]) -> Result<()> {
        if input.len() != self.n {
            return Err(Error::input(format!(
                "input length {} does not match table positions {}",
                input.len(),
                self.n
            )));
        }
        if let Some(&d) = input.iter().find(|&&d| (d as usize) >= self.alphabet_size) {
            return Err(Error::input(format!(
                "symbol {d} out of alphabet range {}",
                self.alphabet_size
            )));
        }
        Ok(())
    }

    /// Defines (or redefines) the value on one input.
    pub fn define(&mut self, input: &[u8], value: usize) -> Result<()> {
        self.check_input(input)?;
        if value >= self.range_size {
            return Err(Error::arg(format!(
                "value {value} out of range {}",
                self.range_size
            )));
        }
        self.map.insert(input.to_vec(), value);
        Ok(())
    }

    /// Value on `input`, or `None` when the input is outside the promise.
    pub fn value(&self, input: &[u8]) -> Option<usize> {
        self.map.get(input).copied()
    }

    /// Number of defined inputs.
    pub fn defined_count(&self) -> usize {
        self.map.len()
    }

    /// Iterates defined `(input, value)` entries in lexicographic input order.
    pub fn entries(&self) -> impl Iterator<Item = (&[u8], usize)> {
        self.map.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// All defined inputs with the given value.
    pub fn level_set(&self, value: usize) -> Vec<Vec<u8>> {
        self.map
            .iter()
            .filter(|&(_, &v)| v == value)
            .map(|(k, _)| k.clone())
            .collect()
    }

    /// True when every input string has a defined value.
    pub fn is_total(&self) -> bool {
        match checked_pow(self.alphabet_size, self.n) {
            Some(total) => self.map.len() == total,
            None => false,
        }
    }

    /// True for a total function on bits with a binary range.
    pub fn is_total_boolean(&self) -> bool {
        self.alphabet_size == 2 && self.range_size == 2 && self.is_total()
    }

    /// Total table filled from a closure over every input string.
    pub fn from_total_fn(
        n: usize,
        alphabet_size: usize,
        range_size: usize,
        f: impl Fn(&[u8]) -> usize,
    ) -> Result<Self> {
        let mut table = Self::new(n, alphabet_size, range_size)?;
        for input in all_strings(n, alphabet_size)? {
            let v = f(&input);
            table.define(&input, v)?;
        }
        Ok(table)
    }

    /// Parses the text format. Line numbers in errors are 1-based.
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut lines = meaningful_lines(text);
        let (header_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header line"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 6 || fields[0] != "n" || fields[2] != "alphabet" || fields[4] != "range" {
            return Err(Error::parse(
                header_no,
                "expected header `n <positions> alphabet <size> range <size>`",
            ));
        }
        let n = parse_count(fields[1], header_no, "positions")?;
        let alphabet = parse_count(fields[3], header_no, "alphabet size")?;
        let range = parse_count(fields[5], header_no, "range size")?;
        if alphabet > 10 {
            return Err(Error::parse(
                header_no,
                "file format supports alphabets up to 10 symbols",
            ));
        }
        let mut table =
            Self::new(n, alphabet, range).map_err(|e| Error::parse(header_no, e.to_string()))?;
        for (line_no, line) in lines {
            let mut parts = line.split_whitespace();
            let word = parts.next().unwrap();
            let value = parts
                .next()
                .ok_or_else(|| Error::parse(line_no, "expected `<input> <value>`"))?;
            if parts.next().is_some() {
                return Err(Error::parse(line_no, "trailing fields after value"));
            }
            let input = parse_digits(word, line_no)?;
            let value: usize = value
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad value `{value}`")))?;
            table
                .define(&input, value)
                .map_err(|e| Error::parse(line_no, e.to_string()))?;
        }
        if table.map.is_empty() {
            return Err(Error::parse(header_no, "table defines no inputs"));
        }
        Ok(table)
    }

    /// Reads the text format from a file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_str(&text)
    }

    /// Renders the text format (deterministic: inputs in lexicographic order).
    pub fn to_text(&self) -> Result<String> {
        if self.alphabet_size > 10 {
            return Err(Error::arg(
                "file format supports alphabets up to 10 symbols",
            ));
        }
        let mut out = String::new();
        let _ = writeln!(
            out,
            "n {} alphabet {} range {}",
            self.n, self.alphabet_size, self.range_size
        );
        for (input, value) in self.entries() {
            for &d in input {
                out.push((b'0' + d) as char);
            }
            let _ = writeln!(out, " {value}");
        }
        Ok(out)
    }
}

fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc > MAX_TABLE_ENTRIES {
            return None;
        }
    }
    Some(acc)
}

/// Every length-`n` string over `{0..alphabet_size-1}` in lexicographic
/// order. Errors when the enumeration would exceed the table cap.
pub fn all_strings(n: usize, alphabet_size: usize) -> Result<Vec<Vec<u8>>> {
    if !(2..=256).contains(&alphabet_size) {
        return Err(Error::arg("alphabet size must be in 2..=256"));
    }
    let total = checked_pow(alphabet_size, n)
        .ok_or_else(|| Error::dim(format!("{alphabet_size}^{n} exceeds enumeration cap")))?;
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![0u8; n];
    loop {
        out.push(cur.clone());
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if (cur[pos] as usize) + 1 < alphabet_size {
                cur[pos] += 1;
                for d in &mut cur[pos + 1..] {
                    *d = 0;
                }
                break;
            }
        }
    }
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_count(field: &str, line: usize, what: &str) -> Result<usize> {
    field
        .parse::<usize>()
        .map_err(|_| Error::parse(line, format!("bad {what} `{field}`")))
}

fn parse_digits(word: &str, line: usize) -> Result<Vec<u8>> {
    word.chars()
        .map(|ch| {
            ch.to_digit(10)
                .map(|d| d as u8)
                .ok_or_else(|| Error::parse(line, format!("bad input symbol `{ch}`")))
        })
        .collect()
}

/// OR of all bits (total, Boolean).
pub fn or_table(n: usize) -> Result<TruthTable> {
    TruthTable::from_total_fn(n, 2, 2, |x| usize::from(x.contains(&1)))
}

/// Parity of the bit sum (total, Boolean).
pub fn parity_table(n: usize) -> Result<TruthTable> {
    TruthTable::from_total_fn(n, 2, 2, |x| {
        x.iter().map(|&b| b as usize).sum::<usize>() % 2
    })
}

/// Majority of the bits (total, Boolean, odd `n`).
pub fn majority_table(n: usize) -> Result<TruthTable> {
    if n.is_multiple_of(2) {
        return Err(Error::arg("majority needs an odd number of positions"));
    }
    TruthTable::from_total_fn(n, 2, 2, |x| {
        usize::from(x.iter().map(|&b| b as usize).sum::<usize>() > n / 2)
    })
}

/// Search identification promise: defined on the `n` one-hot inputs, mapping
/// the input with a 1 at position `i` to answer `i`.
pub fn search_table(n: usize) -> Result<TruthTable> {
    if n < 2 {
        return Err(Error::arg("search needs at least two positions"));
    }
    let mut table = TruthTable::new(n, 2, n)?;
    for i in 0..n {
        let mut input = vec![0u8; n];
        input[i] = 1;
        table.define(&input, i)?;
    }
    Ok(table)
}

/// Permutation-inversion promise: defined on permutations of `{0..n-1}`,
/// mapping each to the parity of the position holding value 0.
pub fn permutation_parity_table(n: usize) -> Result<TruthTable> {
    if !(2..=8).contains(&n) {
        return Err(Error::arg("permutation tables support 2..=8 positions"));
    }
    let mut table = TruthTable::new(n, n, 2)?;
    let mut perm: Vec<u8> = (0..n as u8).collect();
    loop {
        let zero_pos = perm.iter().position(|&v| v == 0).expect("0 present");
        table.define(&perm, zero_pos % 2)?;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(table)
}

/// In-place lexicographic successor; false when `perm` was the last one.
pub(crate) fn next_permutation(perm: &mut [u8]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}
