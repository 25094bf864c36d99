//! Input-pair relations and the query lower bounds they certify.
//!
//! A relation pairs inputs that must receive different answers. Its degree
//! and flip statistics bound how much cross-pair Gram mass exists at the
//! start and how much of it one query can destroy; the ratio of the two is
//! a query lower bound for any algorithm with bounded error.

use std::collections::HashMap;

use itertools::Itertools;
use num_rational::Ratio;

use crate::adversary::SuperpositionSpec;
use crate::error::{Error, Result};
use crate::query::InputAssignment;
use crate::truth_table::{all_strings, TruthTable};

/// Two disjoint input sets and a set of cross pairs.
#[derive(Debug, Clone)]
pub struct AdversaryRelation {
    x_set: Vec<InputAssignment>,
    y_set: Vec<InputAssignment>,
    /// Pairs as (index into `x_set`, index into `y_set`).
    pairs: Vec<(usize, usize)>,
}

impl AdversaryRelation {
    pub fn new(
        x_set: Vec<InputAssignment>,
        y_set: Vec<InputAssignment>,
        pairs: Vec<(usize, usize)>,
    ) -> Result<Self> {
        if x_set.is_empty() || y_set.is_empty() {
            return Err(Error::arg("both input sets must be nonempty"));
        }
        if pairs.is_empty() {
            return Err(Error::arg("relation needs at least one pair"));
        }
        let (n, alphabet) = (x_set[0].n(), x_set[0].alphabet_size());
        for z in x_set.iter().chain(&y_set) {
            if z.n() != n || z.alphabet_size() != alphabet {
                return Err(Error::arg("inputs must share positions and alphabet"));
            }
        }
        let mut all: Vec<&[u8]> = x_set.iter().chain(&y_set).map(|z| z.values()).collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::arg(
                "input sets must be disjoint and free of duplicates",
            ));
        }
        let mut seen = vec![false; x_set.len() * y_set.len()];
        for &(x, y) in &pairs {
            if x >= x_set.len() || y >= y_set.len() {
                return Err(Error::arg(format!("pair ({x}, {y}) out of range")));
            }
            let slot = x * y_set.len() + y;
            if seen[slot] {
                return Err(Error::arg(format!("duplicate pair ({x}, {y})")));
            }
            seen[slot] = true;
        }
        Ok(AdversaryRelation { x_set, y_set, pairs })
    }

    pub fn x_set(&self) -> &[InputAssignment] {
        &self.x_set
    }

    pub fn y_set(&self) -> &[InputAssignment] {
        &self.y_set
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn positions(&self) -> usize {
        self.x_set[0].n()
    }

    pub fn alphabet_size(&self) -> usize {
        self.x_set[0].alphabet_size()
    }

    /// The two-sided superposition over `X` then `Y`.
    pub fn superposition(&self) -> Result<SuperpositionSpec> {
        SuperpositionSpec::two_sided(self.x_set.clone(), self.y_set.clone())
    }

    /// The relation pairs as indices into the [`superposition`] ordering,
    /// where `Y` inputs sit after all `X` inputs.
    ///
    /// [`superposition`]: AdversaryRelation::superposition
    pub fn global_pairs(&self) -> Vec<(usize, usize)> {
        self.pairs
            .iter()
            .map(|&(x, y)| (x, self.x_set.len() + y))
            .collect()
    }

    /// Checks that the table separates the two sides: every input is
    /// defined and no value appears on both sides.
    pub fn check_separates(&self, table: &TruthTable) -> Result<()> {
        let side_values = |side: &[InputAssignment], name: &str| -> Result<Vec<usize>> {
            side.iter()
                .map(|z| {
                    table.value(z.values()).ok_or_else(|| {
                        Error::input(format!("{name} input {:?} is undefined", z.values()))
                    })
                })
                .collect()
        };
        let xv = side_values(&self.x_set, "left")?;
        let yv = side_values(&self.y_set, "right")?;
        for &v in &xv {
            if yv.contains(&v) {
                return Err(Error::input(format!(
                    "value {v} appears on both sides of the relation"
                )));
            }
        }
        Ok(())
    }

    /// Degree and flip statistics of the relation.
    pub fn parameters(&self) -> Result<RelationParameters> {
        let n = self.positions();
        let mut x_degree = vec![0u64; self.x_set.len()];
        let mut y_degree = vec![0u64; self.y_set.len()];
        let mut x_flip = vec![vec![0u64; n]; self.x_set.len()];
        let mut y_flip = vec![vec![0u64; n]; self.y_set.len()];

        for &(xi, yi) in &self.pairs {
            x_degree[xi] += 1;
            y_degree[yi] += 1;
            let (x, y) = (&self.x_set[xi], &self.y_set[yi]);
            for i in 0..n {
                if x.value(i) != y.value(i) {
                    x_flip[xi][i] += 1;
                    y_flip[yi][i] += 1;
                }
            }
        }

        if let Some(xi) = x_degree.iter().position(|&d| d == 0) {
            return Err(Error::DegenerateRelation(format!(
                "left input {xi} participates in no pair"
            )));
        }
        if let Some(yi) = y_degree.iter().position(|&d| d == 0) {
            return Err(Error::DegenerateRelation(format!(
                "right input {yi} participates in no pair"
            )));
        }

        let mut max_flip_product = 0u64;
        for &(xi, yi) in &self.pairs {
            let (x, y) = (&self.x_set[xi], &self.y_set[yi]);
            for i in 0..n {
                if x.value(i) != y.value(i) {
                    max_flip_product = max_flip_product.max(x_flip[xi][i] * y_flip[yi][i]);
                }
            }
        }

        Ok(RelationParameters {
            x_size: self.x_set.len() as u64,
            y_size: self.y_set.len() as u64,
            pair_count: self.pairs.len() as u64,
            min_x_degree: *x_degree.iter().min().expect("nonempty"),
            min_y_degree: *y_degree.iter().min().expect("nonempty"),
            max_x_flip: x_flip.iter().flatten().copied().max().expect("nonempty"),
            max_y_flip: y_flip.iter().flatten().copied().max().expect("nonempty"),
            max_flip_product,
        })
    }
}

/// Exact degree and flip statistics of a relation.
///
/// `min_x_degree`/`min_y_degree` are the guaranteed pairing degrees of each
/// side. `max_x_flip` is the largest number of partners of a single left
/// input that disagree with it on one fixed position (`max_y_flip`
/// symmetrically), and `max_flip_product` is the largest product of the two
/// per-position counts over the pairs and positions where they disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationParameters {
    pub x_size: u64,
    pub y_size: u64,
    pub pair_count: u64,
    pub min_x_degree: u64,
    pub min_y_degree: u64,
    pub max_x_flip: u64,
    pub max_y_flip: u64,
    pub max_flip_product: u64,
}

impl RelationParameters {
    /// `sqrt(m m' / (l l'))`: the query bound from the one-sided flip
    /// maxima.
    pub fn basic_bound(&self) -> f64 {
        let mm = (self.min_x_degree * self.min_y_degree) as f64;
        let ll = (self.max_x_flip * self.max_y_flip) as f64;
        (mm / ll).sqrt()
    }

    /// `sqrt(m m' / l_max)`: the query bound from per-pair flip products.
    /// Never below [`basic_bound`](RelationParameters::basic_bound).
    pub fn refined_bound(&self) -> f64 {
        let mm = (self.min_x_degree * self.min_y_degree) as f64;
        (mm / self.max_flip_product as f64).sqrt()
    }

    /// Per-query budget on the decrease of the pair-summed Gram magnitudes
    /// in the one-sided analysis: `sqrt(l l')`.
    pub fn basic_step_budget(&self) -> f64 {
        ((self.max_x_flip * self.max_y_flip) as f64).sqrt()
    }

    /// Per-query budget from per-pair flip products: `sqrt(l_max)`.
    pub fn refined_step_budget(&self) -> f64 {
        (self.max_flip_product as f64).sqrt()
    }

    /// The starting pair sum of the two-sided superposition:
    /// `|R| / (2 sqrt(|X||Y|))`.
    pub fn expected_start_sum(&self) -> f64 {
        self.pair_count as f64 / (2.0 * ((self.x_size * self.y_size) as f64).sqrt())
    }

    /// Queries certified for algorithms with worst-case error `epsilon`:
    /// the guaranteed drop of the pair sum, `(1 - 2 sqrt(eps (1 - eps)))`
    /// times `sqrt(m m') / 2`, divided by the per-query budget
    /// `sqrt(l_max)`.
    pub fn certified_queries(&self, epsilon: f64) -> f64 {
        let retained = 1.0 - crate::adversary::error_overlap_factor(epsilon);
        retained * self.refined_bound() / 2.0
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial fits u64 for supported sizes")
}

fn boolean_inputs(strings: Vec<Vec<u8>>) -> Result<Vec<InputAssignment>> {
    strings
        .into_iter()
        .map(|s| InputAssignment::new(s, 2))
        .collect()
}

fn index_of(inputs: &[InputAssignment]) -> HashMap<Vec<u8>, usize> {
    inputs
        .iter()
        .enumerate()
        .map(|(i, z)| (z.values().to_vec(), i))
        .collect()
}

/// Unstructured search, decision form: the all-zeros input against the `n`
/// one-hot inputs. Parameters `m = n`, `m' = l = l' = 1`; both bounds are
/// `sqrt(n)`. Paired with the OR table.
pub fn search_relation(n: usize) -> Result<(AdversaryRelation, TruthTable)> {
    if n < 2 {
        return Err(Error::arg("search needs at least two positions"));
    }
    let x_set = vec![InputAssignment::new(vec![0; n], 2)?];
    let y_set = (0..n)
        .map(|i| InputAssignment::one_hot(n, i))
        .collect::<Result<Vec<_>>>()?;
    let pairs = (0..n).map(|i| (0, i)).collect();
    let relation = AdversaryRelation::new(x_set, y_set, pairs)?;
    let table = crate::truth_table::or_table(n)?;
    relation.check_separates(&table)?;
    Ok((relation, table))
}

/// AND of ORs over `sqrt(n)` blocks of `sqrt(n)` positions, on the promise
/// sets where each block holds at most one 1. Left inputs have exactly one
/// 1 per block (function value 1); right inputs have exactly one empty
/// block (value 0). Pairs differ in a single position. Parameters
/// `m = m' = sqrt(n)`, `l = l' = 1`.
pub fn and_of_ors_relation(n: usize) -> Result<(AdversaryRelation, TruthTable)> {
    let k = (n as f64).sqrt().round() as usize;
    if k < 2 || k * k != n {
        return Err(Error::arg(format!(
            "block structure needs a perfect square of at least 4 positions, got {n}"
        )));
    }

    // Left side: choices[b] is the position of the 1 inside block b.
    let mut x_set = Vec::new();
    for choices in std::iter::repeat_n(0..k, k).multi_cartesian_product() {
        let mut v = vec![0u8; n];
        for (b, &j) in choices.iter().enumerate() {
            v[b * k + j] = 1;
        }
        x_set.push(InputAssignment::new(v, 2)?);
    }
    // Right side: one empty block, one 1 in each other block.
    let mut y_set = Vec::new();
    for empty in 0..k {
        let others: Vec<usize> = (0..k).filter(|&b| b != empty).collect();
        for choices in std::iter::repeat_n(0..k, k - 1).multi_cartesian_product() {
            let mut v = vec![0u8; n];
            for (&b, &j) in others.iter().zip(&choices) {
                v[b * k + j] = 1;
            }
            y_set.push(InputAssignment::new(v, 2)?);
        }
    }

    let y_index = index_of(&y_set);
    let mut pairs = Vec::new();
    for (xi, x) in x_set.iter().enumerate() {
        for b in 0..k {
            let mut v = x.values().to_vec();
            for j in 0..k {
                v[b * k + j] = 0;
            }
            let yi = y_index[&v];
            pairs.push((xi, yi));
        }
    }

    let mut table = TruthTable::new(n, 2, 2)?;
    for x in &x_set {
        table.define(x.values(), 1)?;
    }
    for y in &y_set {
        table.define(y.values(), 0)?;
    }
    let relation = AdversaryRelation::new(x_set, y_set, pairs)?;
    relation.check_separates(&table)?;
    Ok((relation, table))
}

/// Closed-form parameters of the weight-counting relation, as binomial
/// coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountingClosedForm {
    pub m: u64,
    pub m_prime: u64,
    pub l: u64,
    pub l_prime: u64,
}

impl CountingClosedForm {
    /// The exact ratio `m m' / (l l')`.
    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new(self.m * self.m_prime, self.l * self.l_prime)
    }
}

fn counting_shape(n: usize, eps_num: u64, eps_den: u64) -> Result<(usize, usize, usize)> {
    if eps_num == 0 || eps_den == 0 || eps_num > eps_den {
        return Err(Error::arg("weight gap must be a fraction in (0, 1]"));
    }
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::arg("weight counting needs an even position count"));
    }
    let half = n as u64 / 2;
    if !(half * eps_num).is_multiple_of(eps_den) {
        return Err(Error::arg(format!(
            "gap {eps_num}/{eps_den} of {half} positions is not an integer"
        )));
    }
    let gap = (half * eps_num / eps_den) as usize;
    if gap == 0 {
        return Err(Error::arg("weight gap must be positive"));
    }
    let low = n / 2;
    let high = low + gap;
    if high > n {
        return Err(Error::dim("upper weight exceeds the position count"));
    }
    Ok((low, high, gap))
}

/// Closed-form counting parameters: `m = C(n/2, g)`,
/// `m' = C(n/2 + g, g)`, `l = C(n/2 - 1, g - 1)`,
/// `l' = C(n/2 + g - 1, g - 1)` for weight gap `g`. The exact identity
/// `m m' / (l l') = (1 + eps) / eps^2` holds with `eps = 2g/n`.
pub fn counting_closed_form(n: usize, eps_num: u64, eps_den: u64) -> Result<CountingClosedForm> {
    let (low, high, gap) = counting_shape(n, eps_num, eps_den)?;
    let (low, high, gap) = (low as u64, high as u64, gap as u64);
    Ok(CountingClosedForm {
        m: binomial(low, gap),
        m_prime: binomial(high, gap),
        l: binomial(low - 1, gap - 1),
        l_prime: binomial(high - 1, gap - 1),
    })
}

/// The predicted counting ratio `(1 + eps) / eps^2` as an exact rational.
pub fn counting_predicted_ratio(eps_num: u64, eps_den: u64) -> Ratio<u64> {
    Ratio::new(eps_den * (eps_den + eps_num), eps_num * eps_num)
}

/// Distinguishing weight `n/2` from weight `(1 + eps) n/2`: left inputs
/// have the low weight, right inputs the high weight, and pairs are
/// superset pairs differing in exactly the weight gap.
pub fn counting_relation(
    n: usize,
    eps_num: u64,
    eps_den: u64,
) -> Result<(AdversaryRelation, TruthTable)> {
    let (low, high, gap) = counting_shape(n, eps_num, eps_den)?;
    let all = all_strings(n, 2)?;
    let weight = |s: &[u8]| s.iter().map(|&b| b as usize).sum::<usize>();
    let x_set = boolean_inputs(all.iter().filter(|s| weight(s) == low).cloned().collect())?;
    let y_set = boolean_inputs(all.iter().filter(|s| weight(s) == high).cloned().collect())?;

    let y_index = index_of(&y_set);
    let mut pairs = Vec::new();
    for (xi, x) in x_set.iter().enumerate() {
        let zeros: Vec<usize> = (0..n).filter(|&i| x.value(i) == 0).collect();
        for extra in zeros.iter().combinations(gap) {
            let mut v = x.values().to_vec();
            for &&i in &extra {
                v[i] = 1;
            }
            pairs.push((xi, y_index[&v]));
        }
    }

    let mut table = TruthTable::new(n, 2, 2)?;
    for x in &x_set {
        table.define(x.values(), 0)?;
    }
    for y in &y_set {
        table.define(y.values(), 1)?;
    }
    let relation = AdversaryRelation::new(x_set, y_set, pairs)?;
    relation.check_separates(&table)?;
    Ok((relation, table))
}

/// Locating the preimage of 0 in a permutation, reduced to the parity of
/// its position. Pairs are transpositions that move the 0 between an even
/// and an odd position. Parameters `m = m' = n/2`, `l = l' = n/2`, but
/// every disagreeing position has flip counts `n/2` on one side and 1 on
/// the other, so `l_max = n/2` and the refined bound `sqrt(n/2)` beats the
/// basic bound 1.
pub fn permutation_inversion_relation(n: usize) -> Result<(AdversaryRelation, TruthTable)> {
    let table = crate::truth_table::permutation_parity_table(n)?;
    if !n.is_multiple_of(2) {
        return Err(Error::arg("parity split needs an even number of positions"));
    }
    let mut x_set = Vec::new();
    let mut y_set = Vec::new();
    for (values, v) in table.entries() {
        let z = InputAssignment::new(values.to_vec(), n)?;
        if v == 0 {
            x_set.push(z);
        } else {
            y_set.push(z);
        }
    }

    let y_index = index_of(&y_set);
    let mut pairs = Vec::new();
    for (xi, x) in x_set.iter().enumerate() {
        let zero_pos = (0..n).position(|i| x.value(i) == 0).expect("permutation");
        for j in (0..n).filter(|j| j % 2 == 1) {
            let mut v = x.values().to_vec();
            v.swap(zero_pos, j);
            pairs.push((xi, y_index[&v]));
        }
    }
    let relation = AdversaryRelation::new(x_set, y_set, pairs)?;
    relation.check_separates(&table)?;
    Ok((relation, table))
}

/// Parity of all positions: even-weight inputs against odd-weight inputs,
/// paired at Hamming distance 1. Parameters `m = m' = n`, `l = l' = 1`.
pub fn parity_relation(n: usize) -> Result<(AdversaryRelation, TruthTable)> {
    if n < 1 {
        return Err(Error::arg("parity needs at least one position"));
    }
    let all = all_strings(n, 2)?;
    let weight = |s: &[u8]| s.iter().map(|&b| b as usize).sum::<usize>();
    let x_set = boolean_inputs(all.iter().filter(|s| weight(s) % 2 == 0).cloned().collect())?;
    let y_set = boolean_inputs(all.iter().filter(|s| weight(s) % 2 == 1).cloned().collect())?;

    let y_index = index_of(&y_set);
    let mut pairs = Vec::new();
    for (xi, x) in x_set.iter().enumerate() {
        for i in 0..n {
            let mut v = x.values().to_vec();
            v[i] ^= 1;
            pairs.push((xi, y_index[&v]));
        }
    }
    let relation = AdversaryRelation::new(x_set, y_set, pairs)?;
    let table = crate::truth_table::parity_table(n)?;
    relation.check_separates(&table)?;
    Ok((relation, table))
}

/// Majority on an odd number of positions, restricted to the two central
/// weight levels, paired at Hamming distance 1. Parameters
/// `m = m' = (n + 1)/2`, `l = l' = 1`.
pub fn majority_relation(n: usize) -> Result<(AdversaryRelation, TruthTable)> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::arg("majority needs an odd count of at least 3"));
    }
    let all = all_strings(n, 2)?;
    let weight = |s: &[u8]| s.iter().map(|&b| b as usize).sum::<usize>();
    let low = n / 2;
    let x_set = boolean_inputs(all.iter().filter(|s| weight(s) == low).cloned().collect())?;
    let y_set = boolean_inputs(all.iter().filter(|s| weight(s) == low + 1).cloned().collect())?;

    let y_index = index_of(&y_set);
    let mut pairs = Vec::new();
    for (xi, x) in x_set.iter().enumerate() {
        for i in (0..n).filter(|&i| x.value(i) == 0) {
            let mut v = x.values().to_vec();
            v[i] = 1;
            pairs.push((xi, y_index[&v]));
        }
    }
    let relation = AdversaryRelation::new(x_set, y_set, pairs)?;
    let table = crate::truth_table::majority_table(n)?;
    relation.check_separates(&table)?;
    Ok((relation, table))
}

/// Serializes a relation in the text format accepted by
/// [`parse_relation_str`]. Requires an alphabet of at most 10.
pub fn relation_to_text(rel: &AdversaryRelation) -> Result<String> {
    if rel.alphabet_size() > 10 {
        return Err(Error::arg("text format supports alphabets up to 10"));
    }
    let mut out = String::new();
    out.push_str(&format!(
        "relation n {} alphabet {}\n",
        rel.positions(),
        rel.alphabet_size()
    ));
    let digits = |z: &InputAssignment| -> String {
        z.values().iter().map(|&d| (b'0' + d) as char).collect()
    };
    out.push_str("X:\n");
    for x in rel.x_set() {
        out.push_str(&digits(x));
        out.push('\n');
    }
    out.push_str("Y:\n");
    for y in rel.y_set() {
        out.push_str(&digits(y));
        out.push('\n');
    }
    out.push_str("R:\n");
    for &(x, y) in rel.pairs() {
        out.push_str(&format!("{x} {y}\n"));
    }
    Ok(out)
}

/// Parses the relation text format:
///
/// ```text
/// relation n 4 alphabet 2
/// X:
/// 0000
/// Y:
/// 1000
/// R:
/// 0 0
/// ```
///
/// Sections list one input per line as digit strings; `R:` lines give
/// 0-based `x y` index pairs. Blank lines and `#` comments are skipped.
pub fn parse_relation_str(text: &str) -> Result<AdversaryRelation> {
    #[derive(PartialEq)]
    enum Section {
        Header,
        X,
        Y,
        R,
    }
    let mut section = Section::Header;
    let mut n = 0usize;
    let mut alphabet = 0usize;
    let mut x_set = Vec::new();
    let mut y_set = Vec::new();
    let mut pairs = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match section {
            Section::Header => {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 5 || parts[0] != "relation" || parts[1] != "n" || parts[3] != "alphabet" {
                    return Err(Error::parse(
                        lineno,
                        "expected header: relation n <positions> alphabet <size>",
                    ));
                }
                n = parts[2]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "bad position count"))?;
                alphabet = parts[4]
                    .parse()
                    .map_err(|_| Error::parse(lineno, "bad alphabet size"))?;
                if !(2..=10).contains(&alphabet) {
                    return Err(Error::parse(lineno, "alphabet must be between 2 and 10"));
                }
                section = Section::X;
            }
            _ if line == "X:" => section = Section::X,
            _ if line == "Y:" => section = Section::Y,
            _ if line == "R:" => section = Section::R,
            Section::X | Section::Y => {
                let values = parse_digits(line, n, alphabet, lineno)?;
                let z = InputAssignment::new(values, alphabet)
                    .map_err(|e| Error::parse(lineno, e.to_string()))?;
                if section == Section::X {
                    x_set.push(z);
                } else {
                    y_set.push(z);
                }
            }
            Section::R => {
                let mut it = line.split_whitespace();
                let (a, b) = (it.next(), it.next());
                if it.next().is_some() {
                    return Err(Error::parse(lineno, "pair lines hold exactly two indices"));
                }
                let parse_idx = |s: Option<&str>| -> Result<usize> {
                    s.and_then(|t| t.parse().ok())
                        .ok_or_else(|| Error::parse(lineno, "bad pair line"))
                };
                pairs.push((parse_idx(a)?, parse_idx(b)?));
            }
        }
    }
    AdversaryRelation::new(x_set, y_set, pairs)
}

fn parse_digits(line: &str, n: usize, alphabet: usize, lineno: usize) -> Result<Vec<u8>> {
    if line.len() != n {
        return Err(Error::parse(
            lineno,
            format!("expected {n} digits, got {}", line.len()),
        ));
    }
    line.bytes()
        .map(|b| {
            let d = b.wrapping_sub(b'0');
            if (d as usize) < alphabet {
                Ok(d)
            } else {
                Err(Error::parse(lineno, format!("digit {} out of alphabet", b as char)))
            }
        })
        .collect()
}

/// Loads a relation from a file in the [`parse_relation_str`] format.
pub fn load_relation(path: &std::path::Path) -> Result<AdversaryRelation> {
    parse_relation_str(&std::fs::read_to_string(path)?)
}

/// Outcome of a best-relation search over a Boolean table.
#[derive(Debug, Clone)]
pub struct RelationSearchOutcome {
    pub relation: AdversaryRelation,
    pub parameters: RelationParameters,
    /// The refined bound of the best relation found.
    pub bound: f64,
    /// Whether every nonempty pair subset was tried.
    pub exhaustive: bool,
}

/// Searches for the relation with the largest refined bound between the
/// two level sets of a total Boolean table. Exhaustive over all nonempty
/// pair subsets when there are at most 16 candidate pairs; otherwise falls
/// back to scanning the Hamming-distance-layered relations (all pairs at
/// distance at most `d` for each `d`), which recovers the standard
/// constructions.
pub fn search_best_relation(table: &TruthTable) -> Result<RelationSearchOutcome> {
    if table.range_size() != 2 {
        return Err(Error::arg("relation search needs a Boolean range"));
    }
    let zeros = table.level_set(0);
    let ones = table.level_set(1);
    if zeros.is_empty() || ones.is_empty() {
        return Err(Error::DegenerateRelation(
            "table does not take both values".into(),
        ));
    }
    let x_all: Vec<InputAssignment> = zeros
        .into_iter()
        .map(|v| InputAssignment::new(v, table.alphabet_size()))
        .collect::<Result<_>>()?;
    let y_all: Vec<InputAssignment> = ones
        .into_iter()
        .map(|v| InputAssignment::new(v, table.alphabet_size()))
        .collect::<Result<_>>()?;

    let candidates: Vec<(usize, usize)> = (0..x_all.len())
        .cartesian_product(0..y_all.len())
        .collect();

    let mut best: Option<RelationSearchOutcome> = None;
    let mut consider = |pairs: &[(usize, usize)], exhaustive: bool| -> Result<()> {
        // Rebuild the sides from the touched inputs so degrees stay
        // positive.
        let mut x_ids: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        let mut y_ids: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        x_ids.sort_unstable();
        x_ids.dedup();
        y_ids.sort_unstable();
        y_ids.dedup();
        let x_pos: HashMap<usize, usize> =
            x_ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let y_pos: HashMap<usize, usize> =
            y_ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let relation = AdversaryRelation::new(
            x_ids.iter().map(|&i| x_all[i].clone()).collect(),
            y_ids.iter().map(|&i| y_all[i].clone()).collect(),
            pairs.iter().map(|&(x, y)| (x_pos[&x], y_pos[&y])).collect(),
        )?;
        let parameters = relation.parameters()?;
        let bound = parameters.refined_bound();
        if best.as_ref().is_none_or(|b| bound > b.bound) {
            best = Some(RelationSearchOutcome {
                relation,
                parameters,
                bound,
                exhaustive,
            });
        }
        Ok(())
    };

    if candidates.len() <= 16 {
        for mask in 1u32..(1u32 << candidates.len()) {
            let pairs: Vec<(usize, usize)> = candidates
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            consider(&pairs, true)?;
        }
    } else {
        let distance = |a: &InputAssignment, b: &InputAssignment| -> usize {
            (0..a.n()).filter(|&i| a.value(i) != b.value(i)).count()
        };
        for d in 1..=table.positions() {
            let pairs: Vec<(usize, usize)> = candidates
                .iter()
                .filter(|&&(x, y)| distance(&x_all[x], &y_all[y]) <= d)
                .copied()
                .collect();
            if !pairs.is_empty() {
                consider(&pairs, false)?;
            }
        }
    }
    Ok(best.expect("at least one candidate relation"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::truth_table;

    #[test]
    fn search_parameters_give_sqrt_n() {
        let (rel, table) = search_relation(4).unwrap();
        let p = rel.parameters().unwrap();
        assert_eq!(
            (p.min_x_degree, p.min_y_degree, p.max_x_flip, p.max_y_flip),
            (4, 1, 1, 1)
        );
        assert_eq!(p.max_flip_product, 1);
        assert!((p.basic_bound() - 2.0).abs() < 1e-15);
        assert!((p.refined_bound() - 2.0).abs() < 1e-15);
        assert!(table.is_total_boolean());
        assert_eq!(p.pair_count, 4);
    }

    #[test]
    fn block_structure_parameters_are_sqrt_blocks() {
        // 4 positions in 2 blocks: 4 left inputs, 4 right inputs, 8 pairs.
        let (rel, _) = and_of_ors_relation(4).unwrap();
        let p = rel.parameters().unwrap();
        assert_eq!((p.x_size, p.y_size, p.pair_count), (4, 4, 8));
        assert_eq!((p.min_x_degree, p.min_y_degree), (2, 2));
        assert_eq!((p.max_x_flip, p.max_y_flip, p.max_flip_product), (1, 1, 1));
        assert!((p.basic_bound() - 2.0).abs() < 1e-15);

        let (rel9, _) = and_of_ors_relation(9).unwrap();
        let p9 = rel9.parameters().unwrap();
        assert_eq!((p9.min_x_degree, p9.min_y_degree), (3, 3));
        assert_eq!((p9.max_x_flip, p9.max_y_flip), (1, 1));
        assert!((p9.basic_bound() - 3.0).abs() < 1e-15);

        assert!(and_of_ors_relation(6).is_err());
    }

    #[test]
    fn counting_enumeration_matches_frozen_binomials() {
        // Independently derived: gap 2 over 4 low zeros and 6 high ones
        // gives degrees C(4,2) = 6 and C(6,2) = 15, flips C(3,1) = 3 and
        // C(5,1) = 5.
        let (rel, _) = counting_relation(8, 1, 2).unwrap();
        let p = rel.parameters().unwrap();
        assert_eq!(
            (p.min_x_degree, p.min_y_degree, p.max_x_flip, p.max_y_flip),
            (6, 15, 3, 5)
        );
        assert_eq!(p.max_flip_product, 15);
        let cf = counting_closed_form(8, 1, 2).unwrap();
        assert_eq!((cf.m, cf.m_prime, cf.l, cf.l_prime), (6, 15, 3, 5));
        assert_eq!(cf.ratio(), Ratio::new(6, 1));
        assert_eq!(counting_predicted_ratio(1, 2), Ratio::new(6, 1));
    }

    #[test]
    fn counting_rejects_non_integer_gaps() {
        assert!(counting_relation(8, 1, 3).is_err());
        assert!(counting_relation(7, 1, 2).is_err());
        assert!(counting_relation(8, 0, 2).is_err());
        assert!(counting_relation(8, 3, 2).is_err());
    }

    #[test]
    fn permutation_relation_beats_its_basic_bound() {
        let (rel, table) = permutation_inversion_relation(4).unwrap();
        let p = rel.parameters().unwrap();
        assert_eq!((p.x_size, p.y_size), (12, 12));
        assert_eq!((p.min_x_degree, p.min_y_degree), (2, 2));
        assert_eq!((p.max_x_flip, p.max_y_flip), (2, 2));
        assert_eq!(p.max_flip_product, 2);
        assert!((p.basic_bound() - 1.0).abs() < 1e-15);
        assert!((p.refined_bound() - 2.0f64.sqrt()).abs() < 1e-15);
        assert!(p.refined_bound() > p.basic_bound());
        assert_eq!(table.defined_count(), 24);
    }

    #[test]
    fn parity_and_majority_parameters() {
        let (rel, _) = parity_relation(4).unwrap();
        let p = rel.parameters().unwrap();
        assert_eq!((p.min_x_degree, p.min_y_degree), (4, 4));
        assert_eq!((p.max_x_flip, p.max_y_flip, p.max_flip_product), (1, 1, 1));
        assert!((p.basic_bound() - 4.0).abs() < 1e-15);

        let (rel5, _) = majority_relation(5).unwrap();
        let p5 = rel5.parameters().unwrap();
        assert_eq!((p5.min_x_degree, p5.min_y_degree), (3, 3));
        assert!((p5.basic_bound() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn step_budgets_and_start_sum_follow_parameters() {
        let (rel, _) = permutation_inversion_relation(4).unwrap();
        let p = rel.parameters().unwrap();
        assert!((p.basic_step_budget() - 2.0).abs() < 1e-15);
        assert!((p.refined_step_budget() - 2.0f64.sqrt()).abs() < 1e-15);
        // 24 pairs over sides of 12: S_0 = 24 / (2 * 12) = 1.
        assert!((p.expected_start_sum() - 1.0).abs() < 1e-15);
        // Exact algorithms: certified queries = refined bound / 2.
        assert!((p.certified_queries(0.0) - 2.0f64.sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(p.certified_queries(0.5), 0.0);
    }

    #[test]
    fn relation_construction_rejects_bad_shapes() {
        let x = vec![InputAssignment::boolean(&[0, 0]).unwrap()];
        let y = vec![InputAssignment::boolean(&[0, 1]).unwrap()];
        assert!(AdversaryRelation::new(x.clone(), y.clone(), vec![]).is_err());
        assert!(AdversaryRelation::new(x.clone(), y.clone(), vec![(0, 1)]).is_err());
        assert!(AdversaryRelation::new(x.clone(), y.clone(), vec![(0, 0), (0, 0)]).is_err());
        assert!(AdversaryRelation::new(x.clone(), x.clone(), vec![(0, 0)]).is_err());

        // An untouched right input makes the degree parameters degenerate.
        let y2 = vec![
            InputAssignment::boolean(&[0, 1]).unwrap(),
            InputAssignment::boolean(&[1, 0]).unwrap(),
        ];
        let rel = AdversaryRelation::new(x, y2, vec![(0, 0)]).unwrap();
        assert!(matches!(
            rel.parameters(),
            Err(crate::Error::DegenerateRelation(_))
        ));
    }

    #[test]
    fn separation_check_needs_disjoint_values() {
        // Both inputs have a 1, so OR maps them to the same value.
        let x = vec![InputAssignment::boolean(&[0, 1]).unwrap()];
        let y = vec![InputAssignment::boolean(&[1, 0]).unwrap()];
        let rel = AdversaryRelation::new(x, y, vec![(0, 0)]).unwrap();
        let or2 = truth_table::or_table(2).unwrap();
        assert!(rel.check_separates(&or2).is_err());

        // Odd weight against even weight is separated by parity.
        let x = vec![InputAssignment::boolean(&[0, 1]).unwrap()];
        let y = vec![InputAssignment::boolean(&[0, 0]).unwrap()];
        let rel = AdversaryRelation::new(x, y, vec![(0, 0)]).unwrap();
        let parity2 = truth_table::parity_table(2).unwrap();
        assert!(rel.check_separates(&parity2).is_ok());
    }

    #[test]
    fn text_round_trip_preserves_relation() {
        let (rel, _) = search_relation(3).unwrap();
        let text = relation_to_text(&rel).unwrap();
        let back = parse_relation_str(&text).unwrap();
        assert_eq!(back.pairs(), rel.pairs());
        assert_eq!(back.x_set()[0].values(), rel.x_set()[0].values());
        assert_eq!(back.y_set()[2].values(), rel.y_set()[2].values());
    }

    #[test]
    fn parser_rejects_malformed_sections() {
        assert!(parse_relation_str("bogus\n").is_err());
        let missing_digit = "relation n 3 alphabet 2\nX:\n00\nY:\n100\nR:\n0 0\n";
        assert!(parse_relation_str(missing_digit).is_err());
        let bad_pair = "relation n 2 alphabet 2\nX:\n00\nY:\n10\nR:\n0 0 0\n";
        assert!(parse_relation_str(bad_pair).is_err());
        let out_of_range = "relation n 2 alphabet 2\nX:\n00\nY:\n10\nR:\n0 3\n";
        assert!(parse_relation_str(out_of_range).is_err());
    }

    #[test]
    fn best_relation_search_recovers_known_bounds() {
        // Single variable: the only pair gives bound 1.
        let mut ident = TruthTable::new(1, 2, 2).unwrap();
        ident.define(&[0], 0).unwrap();
        ident.define(&[1], 1).unwrap();
        let out = search_best_relation(&ident).unwrap();
        assert!(out.exhaustive);
        assert!((out.bound - 1.0).abs() < 1e-12);

        // OR of two: pairing 00 with both weight-1 inputs gives sqrt(2).
        let or2 = truth_table::or_table(2).unwrap();
        let out = search_best_relation(&or2).unwrap();
        assert!(out.exhaustive);
        assert!((out.bound - 2.0f64.sqrt()).abs() < 1e-12);

        // Parity of two: the full distance-1 relation gives 2.
        let parity2 = truth_table::parity_table(2).unwrap();
        let out = search_best_relation(&parity2).unwrap();
        assert!((out.bound - 2.0).abs() < 1e-12);
    }

    #[test]
    fn global_pairs_offset_into_the_joint_ordering() {
        let (rel, _) = search_relation(3).unwrap();
        let spec = rel.superposition().unwrap();
        assert_eq!(spec.len(), 4);
        let global = rel.global_pairs();
        assert_eq!(global, vec![(0, 1), (0, 2), (0, 3)]);
        assert!((spec.amplitudes()[0].re - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((spec.amplitudes()[1].re - (1.0 / 6.0f64).sqrt()).abs() < 1e-15);
    }
}
