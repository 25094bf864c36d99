//! The quantum query model: register layouts, input oracles, and query
//! algorithms as alternating unitary stages.
//!
//! A basis state is a triple `(i, a, w)`: an index register of dimension
//! `index_dim` holding the position about to be queried, an answer register
//! of `answer_bits` bits receiving oracle output, and a work register of
//! dimension `work_dim`. The flat index is `((i * 2^answer_bits) + a) *
//! work_dim + w`.
//!
//! Two oracle conventions are supported for an input string `x`:
//!
//! * XOR: `|i, a, w> -> |i, a XOR x_i, w>` (any alphabet that fits the
//!   answer register),
//! * phase: `|i, a, w> -> (-1)^(a * x_i) |i, a, w>` (Boolean alphabet,
//!   single answer bit).
//!
//! An algorithm with `T` queries is `T + 1` unitary stages `U_0 .. U_T`
//! interleaved with oracle calls; the answer is measured from the layout's
//! output slots.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{tensor_product, ComplexMatrix, StateVector};
use crate::tolerances::{MAX_BIPARTITE_AMPLITUDES, UNITARY_TOL};
use crate::truth_table::TruthTable;
use crate::C64;

/// Which register coordinate contributes to the measured answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputSlot {
    /// The index register value.
    IndexRegister,
    /// The answer register value.
    AnswerRegister,
    /// The top mixed-radix digit of the work register: value `w / (work_dim /
    /// parts)`, requiring `parts` to divide `work_dim`.
    WorkQuotient { parts: usize },
}

/// Register shape shared by an algorithm and the oracles it calls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLayout {
    index_dim: usize,
    answer_bits: usize,
    work_dim: usize,
    output_slots: Vec<OutputSlot>,
}

impl RegisterLayout {
    pub fn new(
        index_dim: usize,
        answer_bits: usize,
        work_dim: usize,
        output_slots: Vec<OutputSlot>,
    ) -> Result<Self> {
        if index_dim < 2 {
            return Err(Error::dim("index register needs dimension >= 2"));
        }
        if answer_bits == 0 || answer_bits > 16 {
            return Err(Error::dim("answer register needs 1..=16 bits"));
        }
        if work_dim == 0 {
            return Err(Error::dim("work register needs dimension >= 1"));
        }
        let dim = index_dim
            .checked_mul(1usize << answer_bits)
            .and_then(|d| d.checked_mul(work_dim))
            .ok_or_else(|| Error::dim("layout dimension overflows"))?;
        if dim > MAX_BIPARTITE_AMPLITUDES {
            return Err(Error::dim(format!(
                "layout dimension {dim} exceeds cap {MAX_BIPARTITE_AMPLITUDES}"
            )));
        }
        if output_slots.is_empty() {
            return Err(Error::arg("at least one output slot is required"));
        }
        for slot in &output_slots {
            if let OutputSlot::WorkQuotient { parts } = *slot {
                if parts == 0 || !work_dim.is_multiple_of(parts) {
                    return Err(Error::arg(format!(
                        "work quotient parts {parts} must divide work dimension {work_dim}"
                    )));
                }
            }
        }
        Ok(Self {
            index_dim,
            answer_bits,
            work_dim,
            output_slots,
        })
    }

    pub fn index_dim(&self) -> usize {
        self.index_dim
    }

    pub fn answer_bits(&self) -> usize {
        self.answer_bits
    }

    /// Dimension of the answer register, `2^answer_bits`.
    pub fn answer_dim(&self) -> usize {
        1usize << self.answer_bits
    }

    pub fn work_dim(&self) -> usize {
        self.work_dim
    }

    pub fn output_slots(&self) -> &[OutputSlot] {
        &self.output_slots
    }

    /// Total Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.index_dim * self.answer_dim() * self.work_dim
    }

    /// Flat basis index of `(i, a, w)`.
    #[inline]
    pub fn flatten(&self, i: usize, a: usize, w: usize) -> usize {
        (i * self.answer_dim() + a) * self.work_dim + w
    }

    /// Register triple of a flat basis index.
    #[inline]
    pub fn unflatten(&self, s: usize) -> (usize, usize, usize) {
        let w = s % self.work_dim;
        let rest = s / self.work_dim;
        let a = rest % self.answer_dim();
        (rest / self.answer_dim(), a, w)
    }

    fn slot_value(&self, slot: OutputSlot, s: usize) -> (usize, usize) {
        let (i, a, w) = self.unflatten(s);
        match slot {
            OutputSlot::IndexRegister => (i, self.index_dim),
            OutputSlot::AnswerRegister => (a, self.answer_dim()),
            OutputSlot::WorkQuotient { parts } => (w / (self.work_dim / parts), parts),
        }
    }

    /// Measured answer value of a basis state: output slots combined in
    /// mixed radix, first slot most significant.
    pub fn answer_value(&self, s: usize) -> usize {
        let mut acc = 0;
        for &slot in &self.output_slots {
            let (v, card) = self.slot_value(slot, s);
            acc = acc * card + v;
        }
        acc
    }

    /// Number of distinct measured answer values.
    pub fn output_cardinality(&self) -> usize {
        self.output_slots
            .iter()
            .map(|&slot| match slot {
                OutputSlot::IndexRegister => self.index_dim,
                OutputSlot::AnswerRegister => self.answer_dim(),
                OutputSlot::WorkQuotient { parts } => parts,
            })
            .product()
    }
}

/// A fixed input string: `n` values over `{0..alphabet_size-1}`, queried by
/// position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InputAssignment {
    alphabet_size: usize,
    values: Vec<u8>,
}

impl InputAssignment {
    pub fn new(values: Vec<u8>, alphabet_size: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::input("input needs at least one position"));
        }
        if !(2..=256).contains(&alphabet_size) {
            return Err(Error::input("alphabet size must be in 2..=256"));
        }
        if let Some(&v) = values.iter().find(|&&v| (v as usize) >= alphabet_size) {
            return Err(Error::input(format!(
                "value {v} out of alphabet range {alphabet_size}"
            )));
        }
        Ok(Self {
            alphabet_size,
            values,
        })
    }

    /// Boolean input from a bit string.
    pub fn boolean(bits: &[u8]) -> Result<Self> {
        Self::new(bits.to_vec(), 2)
    }

    /// The length-`n` Boolean input with a single 1 at `position`.
    pub fn one_hot(n: usize, position: usize) -> Result<Self> {
        if position >= n {
            return Err(Error::input(format!("position {position} out of range {n}")));
        }
        let mut values = vec![0u8; n];
        values[position] = 1;
        Self::new(values, 2)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    #[inline]
    pub fn value(&self, position: usize) -> u8 {
        self.values[position]
    }

    /// True when every alphabet value appears exactly once (requires
    /// `alphabet_size == n`).
    pub fn is_permutation(&self) -> bool {
        if self.alphabet_size != self.values.len() {
            return false;
        }
        let mut seen = vec![false; self.alphabet_size];
        for &v in &self.values {
            if seen[v as usize] {
                return false;
            }
            seen[v as usize] = true;
        }
        true
    }

    /// Digit-string rendering, e.g. `[0,1,0]` as `"010"` (alphabet <= 10).
    pub fn digits(&self) -> String {
        self.values.iter().map(|&d| (b'0' + d) as char).collect()
    }
}

/// Oracle access convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleConvention {
    /// Answer register receives `a XOR x_i`.
    Xor,
    /// Sign flip `(-1)^(a * x_i)` on a single answer bit.
    Phase,
}

impl std::fmt::Display for OracleConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleConvention::Xor => write!(f, "xor"),
            OracleConvention::Phase => write!(f, "phase"),
        }
    }
}

pub(crate) fn check_oracle_input(
    layout: &RegisterLayout,
    x: &InputAssignment,
    convention: OracleConvention,
) -> Result<()> {
    if x.n() != layout.index_dim() {
        return Err(Error::input(format!(
            "input has {} positions, layout indexes {}",
            x.n(),
            layout.index_dim()
        )));
    }
    match convention {
        OracleConvention::Xor => {
            if x.alphabet_size() > layout.answer_dim() {
                return Err(Error::input(format!(
                    "alphabet {} does not fit in {} answer bits",
                    x.alphabet_size(),
                    layout.answer_bits()
                )));
            }
        }
        OracleConvention::Phase => {
            if x.alphabet_size() != 2 || layout.answer_bits() != 1 {
                return Err(Error::input(
                    "phase oracle requires a Boolean alphabet and one answer bit",
                ));
            }
        }
    }
    Ok(())
}

/// Basis permutation realized by the XOR oracle for input `x`.
pub(crate) fn xor_oracle_permutation(layout: &RegisterLayout, x: &InputAssignment) -> Vec<usize> {
    let dim = layout.dim();
    let mut perm = vec![0usize; dim];
    for (s, slot) in perm.iter_mut().enumerate() {
        let (i, a, w) = layout.unflatten(s);
        *slot = layout.flatten(i, a ^ (x.value(i) as usize), w);
    }
    perm
}

/// XOR oracle on a raw amplitude vector.
pub fn apply_xor_oracle(
    layout: &RegisterLayout,
    x: &InputAssignment,
    amps: &[C64],
) -> Result<Vec<C64>> {
    check_oracle_input(layout, x, OracleConvention::Xor)?;
    if amps.len() != layout.dim() {
        return Err(Error::dim("state does not match layout dimension"));
    }
    let perm = xor_oracle_permutation(layout, x);
    let mut out = vec![C64::new(0.0, 0.0); amps.len()];
    for (s, &t) in perm.iter().enumerate() {
        out[t] = amps[s];
    }
    Ok(out)
}

/// Phase oracle on a raw amplitude vector.
pub fn apply_phase_oracle(
    layout: &RegisterLayout,
    x: &InputAssignment,
    amps: &[C64],
) -> Result<Vec<C64>> {
    check_oracle_input(layout, x, OracleConvention::Phase)?;
    if amps.len() != layout.dim() {
        return Err(Error::dim("state does not match layout dimension"));
    }
    let mut out = amps.to_vec();
    for (s, z) in out.iter_mut().enumerate() {
        let (i, a, _) = layout.unflatten(s);
        if a == 1 && x.value(i) == 1 {
            *z = -*z;
        }
    }
    Ok(out)
}

/// Oracle dispatch on the convention.
pub fn apply_oracle(
    convention: OracleConvention,
    layout: &RegisterLayout,
    x: &InputAssignment,
    amps: &[C64],
) -> Result<Vec<C64>> {
    match convention {
        OracleConvention::Xor => apply_xor_oracle(layout, x, amps),
        OracleConvention::Phase => apply_phase_oracle(layout, x, amps),
    }
}

/// A unitary stage: an explicit matrix or a basis permutation.
///
/// Permutations keep large classical stages (transcript bookkeeping in
/// lookup algorithms) at O(dim) application cost.
#[derive(Debug, Clone, PartialEq)]
pub enum Operator {
    Dense(ComplexMatrix),
    /// `perm[s]` is the image of basis state `s`.
    Permutation(Vec<usize>),
}

impl Operator {
    pub fn identity(dim: usize) -> Self {
        Operator::Permutation((0..dim).collect())
    }

    pub fn dim(&self) -> usize {
        match self {
            Operator::Dense(m) => m.rows(),
            Operator::Permutation(p) => p.len(),
        }
    }

    /// Applies the stage to a raw amplitude vector.
    pub fn apply(&self, amps: &[C64]) -> Result<Vec<C64>> {
        match self {
            Operator::Dense(m) => m.matvec(amps),
            Operator::Permutation(perm) => {
                if perm.len() != amps.len() {
                    return Err(Error::dim("permutation does not match state dimension"));
                }
                let mut out = vec![C64::new(0.0, 0.0); amps.len()];
                for (s, &t) in perm.iter().enumerate() {
                    out[t] = amps[s];
                }
                Ok(out)
            }
        }
    }

    /// Unitarity check: explicit for dense stages, bijectivity for
    /// permutations.
    pub fn is_unitary(&self, tol: f64) -> Result<bool> {
        match self {
            Operator::Dense(m) => m.check_unitary(tol),
            Operator::Permutation(perm) => {
                let mut seen = vec![false; perm.len()];
                for &t in perm {
                    if t >= perm.len() || seen[t] {
                        return Ok(false);
                    }
                    seen[t] = true;
                }
                Ok(true)
            }
        }
    }

    /// Expands the stage to a dense matrix.
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        match self {
            Operator::Dense(m) => Ok(m.clone()),
            Operator::Permutation(perm) => {
                let mut m = ComplexMatrix::zeros(perm.len(), perm.len())?;
                for (s, &t) in perm.iter().enumerate() {
                    m.set(t, s, C64::new(1.0, 0.0));
                }
                Ok(m)
            }
        }
    }
}

/// Composition `then . first` (apply `first`, then `then`). Permutation
/// pairs stay permutations; mixed pairs avoid materializing the permutation
/// as a matrix.
pub fn compose(first: &Operator, then: &Operator) -> Result<Operator> {
    if first.dim() != then.dim() {
        return Err(Error::dim("composition dimension mismatch"));
    }
    let dim = first.dim();
    match (first, then) {
        (Operator::Permutation(p1), Operator::Permutation(p2)) => {
            Ok(Operator::Permutation(p1.iter().map(|&s| p2[s]).collect()))
        }
        (Operator::Permutation(p1), Operator::Dense(d2)) => {
            // (D * P)[r, s] = D[r, p1[s]]
            let m = ComplexMatrix::from_fn(dim, dim, |r, s| d2.get(r, p1[s]))?;
            Ok(Operator::Dense(m))
        }
        (Operator::Dense(d1), Operator::Permutation(p2)) => {
            // (P * D)[p2[r], c] = D[r, c]
            let mut m = ComplexMatrix::zeros(dim, dim)?;
            for (r, &dest) in p2.iter().enumerate() {
                for c in 0..dim {
                    m.set(dest, c, d1.get(r, c));
                }
            }
            Ok(Operator::Dense(m))
        }
        (Operator::Dense(d1), Operator::Dense(d2)) => Ok(Operator::Dense(d2.mul(d1)?)),
    }
}

/// A query algorithm: `T + 1` unitary stages around `T` oracle calls.
#[derive(Debug, Clone)]
pub struct QueryAlgorithm {
    layout: RegisterLayout,
    convention: OracleConvention,
    stages: Vec<Operator>,
}

impl QueryAlgorithm {
    /// Validates stage dimensions and unitarity (at [`UNITARY_TOL`]).
    pub fn new(
        layout: RegisterLayout,
        convention: OracleConvention,
        stages: Vec<Operator>,
    ) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::arg("an algorithm needs at least one stage"));
        }
        if convention == OracleConvention::Phase && layout.answer_bits() != 1 {
            return Err(Error::arg(
                "phase-convention algorithms need exactly one answer bit",
            ));
        }
        for (k, stage) in stages.iter().enumerate() {
            if stage.dim() != layout.dim() {
                return Err(Error::dim(format!(
                    "stage {k} has dimension {}, layout needs {}",
                    stage.dim(),
                    layout.dim()
                )));
            }
            if !stage.is_unitary(UNITARY_TOL)? {
                return Err(Error::arg(format!("stage {k} is not unitary")));
            }
        }
        Ok(Self {
            layout,
            convention,
            stages,
        })
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn convention(&self) -> OracleConvention {
        self.convention
    }

    pub fn stages(&self) -> &[Operator] {
        &self.stages
    }

    /// Number of oracle calls `T`.
    pub fn queries(&self) -> usize {
        self.stages.len() - 1
    }

    /// Runs the algorithm on one input from `|0, 0, 0>`, returning the final
    /// state.
    pub fn simulate(&self, x: &InputAssignment) -> Result<StateVector> {
        Ok(self.simulate_stages(x)?.pop().expect("at least one stage"))
    }

    /// Runs the algorithm and returns the state after each stage: entry `t`
    /// is the state after `t` oracle calls and the following unitary.
    pub fn simulate_stages(&self, x: &InputAssignment) -> Result<Vec<StateVector>> {
        check_oracle_input(&self.layout, x, self.convention)?;
        let mut amps = vec![C64::new(0.0, 0.0); self.layout.dim()];
        amps[0] = C64::new(1.0, 0.0);
        let mut out = Vec::with_capacity(self.stages.len());
        amps = self.stages[0].apply(&amps)?;
        out.push(StateVector::from_amplitudes(amps.clone())?);
        for stage in &self.stages[1..] {
            amps = apply_oracle(self.convention, &self.layout, x, &amps)?;
            amps = stage.apply(&amps)?;
            out.push(StateVector::from_amplitudes(amps.clone())?);
        }
        Ok(out)
    }
}

/// Probability of each measured answer value in a final state.
pub fn answer_distribution(
    layout: &RegisterLayout,
    state: &StateVector,
) -> Result<BTreeMap<usize, f64>> {
    if state.dim() != layout.dim() {
        return Err(Error::dim("state does not match layout dimension"));
    }
    let mut dist = BTreeMap::new();
    for (s, z) in state.amplitudes().iter().enumerate() {
        let p = z.norm_sqr();
        if p > 0.0 {
            *dist.entry(layout.answer_value(s)).or_insert(0.0) += p;
        }
    }
    Ok(dist)
}

/// Probability that the measured answer equals `value`.
pub fn answer_probability(layout: &RegisterLayout, state: &StateVector, value: usize) -> Result<f64> {
    Ok(answer_distribution(layout, state)?
        .get(&value)
        .copied()
        .unwrap_or(0.0))
}

/// Worst-case error of an algorithm against a truth table: the maximum over
/// defined inputs of `1 - P[answer = f(x)]`, clamped into `[0, 1]`.
pub fn worst_case_error(alg: &QueryAlgorithm, table: &TruthTable) -> Result<f64> {
    if table.positions() != alg.layout().index_dim() {
        return Err(Error::arg(format!(
            "table has {} positions, algorithm indexes {}",
            table.positions(),
            alg.layout().index_dim()
        )));
    }
    if alg.layout().output_cardinality() < table.range_size() {
        return Err(Error::arg(format!(
            "algorithm output cardinality {} cannot encode range {}",
            alg.layout().output_cardinality(),
            table.range_size()
        )));
    }
    let mut worst: f64 = 0.0;
    for (input, value) in table.entries() {
        let x = InputAssignment::new(input.to_vec(), table.alphabet_size())?;
        let final_state = alg.simulate(&x)?;
        let p = answer_probability(alg.layout(), &final_state, value)?;
        worst = worst.max((1.0 - p).clamp(0.0, 1.0));
    }
    Ok(worst)
}

/// Answer-bit Hadamard `I_index (x) H (x) I_work` as a dense stage.
fn answer_hadamard(layout: &RegisterLayout) -> Result<Operator> {
    let h = 1.0 / 2.0_f64.sqrt();
    let h2 = ComplexMatrix::from_rows(vec![
        vec![C64::new(h, 0.0), C64::new(h, 0.0)],
        vec![C64::new(h, 0.0), C64::new(-h, 0.0)],
    ])?;
    let left = tensor_product(&ComplexMatrix::identity(layout.index_dim())?, &h2)?;
    let full = tensor_product(&left, &ComplexMatrix::identity(layout.work_dim())?)?;
    Ok(Operator::Dense(full))
}

/// Rehosts an algorithm in the other oracle convention.
///
/// Both directions conjugate each oracle call by a Hadamard on the answer
/// bit: with a single answer bit the two oracles satisfy
/// `O_phase = H O_xor H` and `O_xor = H O_phase H` exactly, so the rebuilt
/// algorithm keeps the same query count and reproduces the original final
/// state on every input. Requires a single answer bit; a query-free
/// algorithm is returned with only the convention label changed.
pub fn convert_convention(
    alg: &QueryAlgorithm,
    target: OracleConvention,
) -> Result<QueryAlgorithm> {
    if alg.convention() == target {
        return Ok(alg.clone());
    }
    if alg.queries() == 0 {
        return QueryAlgorithm::new(alg.layout().clone(), target, alg.stages().to_vec());
    }
    if alg.layout().answer_bits() != 1 {
        return Err(Error::arg(
            "convention conversion requires exactly one answer bit",
        ));
    }
    let h = answer_hadamard(alg.layout())?;
    let last = alg.stages().len() - 1;
    let mut stages = Vec::with_capacity(alg.stages().len());
    for (k, stage) in alg.stages().iter().enumerate() {
        let mut s = stage.clone();
        if k > 0 {
            // An oracle call precedes this stage: absorb the trailing H.
            s = compose(&h, &s)?;
        }
        if k < last {
            // An oracle call follows this stage: absorb the leading H.
            s = compose(&s, &h)?;
        }
        stages.push(s);
    }
    QueryAlgorithm::new(alg.layout().clone(), target, stages)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn layout_n2() -> RegisterLayout {
        RegisterLayout::new(2, 1, 2, vec![OutputSlot::IndexRegister]).unwrap()
    }

    /// Fixed non-degenerate test state on an 8-dim layout.
    fn ramp_state(dim: usize) -> Vec<C64> {
        let norm: f64 = (1..=dim).map(|k| (k * k) as f64).sum::<f64>();
        (1..=dim)
            .map(|k| C64::new(k as f64 / norm.sqrt(), 0.0))
            .collect()
    }

    #[test]
    fn phase_oracle_matches_explicit_diagonal() {
        // Oracle first: the full 8-dim diagonal written out by hand for
        // x = (1, 0) on layout (index 2, answer bit, work 2). Flat order is
        // (i, a, w) with w fastest; the sign is -1 exactly when a = 1 and
        // x_i = 1, i.e. flat indices 2 and 3.
        let expected_signs = [1.0, 1.0, -1.0, -1.0, 1.0, 1.0, 1.0, 1.0];

        let layout = layout_n2();
        let x = InputAssignment::boolean(&[1, 0]).unwrap();
        let input = ramp_state(8);
        let output = apply_phase_oracle(&layout, &x, &input).unwrap();
        for s in 0..8 {
            assert_eq!(output[s], input[s] * expected_signs[s]);
        }
    }

    #[test]
    fn phase_oracle_is_involutive_and_trivial_on_zero_input() {
        let layout = layout_n2();
        let input = ramp_state(8);

        let zeros = InputAssignment::boolean(&[0, 0]).unwrap();
        assert_eq!(apply_phase_oracle(&layout, &zeros, &input).unwrap(), input);

        let x = InputAssignment::boolean(&[1, 1]).unwrap();
        let once = apply_phase_oracle(&layout, &x, &input).unwrap();
        let twice = apply_phase_oracle(&layout, &x, &once).unwrap();
        assert_eq!(twice, input);
    }

    #[test]
    fn xor_oracle_flips_answer_for_queried_position() {
        let layout = layout_n2();
        let x = InputAssignment::boolean(&[1, 0]).unwrap();

        // |i=0, a=0, w=0> queries x_0 = 1, so the answer bit flips.
        let s = layout.flatten(0, 0, 0);
        let mut amps = vec![r(0.0); 8];
        amps[s] = r(1.0);
        let out = apply_xor_oracle(&layout, &x, &amps).unwrap();
        assert_eq!(out[layout.flatten(0, 1, 0)], r(1.0));
        assert_eq!(out[s], r(0.0));

        // |i=1, a=0, w=1> queries x_1 = 0 and is untouched.
        let s = layout.flatten(1, 0, 1);
        let mut amps = vec![r(0.0); 8];
        amps[s] = r(1.0);
        let out = apply_xor_oracle(&layout, &x, &amps).unwrap();
        assert_eq!(out[s], r(1.0));
    }

    #[test]
    fn xor_oracle_involutive_on_wide_alphabet() {
        let layout = RegisterLayout::new(3, 2, 1, vec![OutputSlot::AnswerRegister]).unwrap();
        let x = InputAssignment::new(vec![3, 0, 2], 4).unwrap();
        let input = ramp_state(layout.dim());
        let once = apply_xor_oracle(&layout, &x, &input).unwrap();
        let twice = apply_xor_oracle(&layout, &x, &once).unwrap();
        assert_eq!(twice, input);

        // |i=0, a=0, w=0> picks up x_0 = 3.
        let mut amps = vec![r(0.0); layout.dim()];
        amps[layout.flatten(0, 0, 0)] = r(1.0);
        let out = apply_xor_oracle(&layout, &x, &amps).unwrap();
        assert_eq!(out[layout.flatten(0, 3, 0)], r(1.0));
    }

    #[test]
    fn oracle_rejects_mismatched_inputs() {
        let layout = layout_n2();
        let wrong_len = InputAssignment::boolean(&[1, 0, 0]).unwrap();
        assert!(apply_xor_oracle(&layout, &wrong_len, &ramp_state(8)).is_err());

        let wide = InputAssignment::new(vec![2, 0], 3).unwrap();
        assert!(apply_phase_oracle(&layout, &wide, &ramp_state(8)).is_err());

        let narrow = RegisterLayout::new(2, 1, 1, vec![OutputSlot::AnswerRegister]).unwrap();
        let alphabet4 = InputAssignment::new(vec![3, 1], 4).unwrap();
        assert!(apply_xor_oracle(&narrow, &alphabet4, &ramp_state(2)).is_err());
    }

    #[test]
    fn trivial_algorithm_stays_in_initial_state() {
        let layout = layout_n2();
        let alg = QueryAlgorithm::new(
            layout.clone(),
            OracleConvention::Xor,
            vec![Operator::identity(layout.dim())],
        )
        .unwrap();
        assert_eq!(alg.queries(), 0);
        let x = InputAssignment::boolean(&[1, 0]).unwrap();
        let out = alg.simulate(&x).unwrap();
        assert_eq!(out.amplitudes()[0], r(1.0));
        assert_eq!(out.norm(), 1.0);
    }

    #[test]
    fn algorithm_constructor_rejects_non_unitary_stage() {
        let layout = layout_n2();
        let bad = Operator::Permutation(vec![0; 8]);
        assert!(QueryAlgorithm::new(layout, OracleConvention::Xor, vec![bad]).is_err());
    }

    #[test]
    fn answer_distribution_groups_by_output_slots() {
        let layout = RegisterLayout::new(2, 1, 1, vec![OutputSlot::IndexRegister]).unwrap();
        let a = 1.0 / 2.0_f64.sqrt();
        let mut amps = vec![r(0.0); 4];
        amps[layout.flatten(0, 0, 0)] = r(a);
        amps[layout.flatten(1, 1, 0)] = r(a);
        let state = StateVector::from_amplitudes(amps).unwrap();
        let dist = answer_distribution(&layout, &state).unwrap();
        assert_eq!(dist.len(), 2);
        assert!((dist[&0] - 0.5).abs() < 1e-15);
        assert!((dist[&1] - 0.5).abs() < 1e-15);

        let mixed = RegisterLayout::new(
            2,
            1,
            4,
            vec![OutputSlot::IndexRegister, OutputSlot::WorkQuotient { parts: 2 }],
        )
        .unwrap();
        // (i=1, w=3) has top work digit 1, so the combined value is 1*2+1.
        let s = mixed.flatten(1, 0, 3);
        assert_eq!(mixed.answer_value(s), 3);
        assert_eq!(mixed.output_cardinality(), 4);
    }

    #[test]
    fn permutation_stage_composition_matches_dense_product() {
        let dim = 4;
        let p1 = Operator::Permutation(vec![1, 2, 3, 0]);
        let h = 1.0 / 2.0_f64.sqrt();
        let block = ComplexMatrix::from_rows(vec![
            vec![r(h), r(h), r(0.0), r(0.0)],
            vec![r(h), r(-h), r(0.0), r(0.0)],
            vec![r(0.0), r(0.0), r(1.0), r(0.0)],
            vec![r(0.0), r(0.0), r(0.0), r(1.0)],
        ])
        .unwrap();
        let d = Operator::Dense(block);

        for (first, then) in [(&p1, &d), (&d, &p1), (&p1, &p1), (&d, &d)] {
            let composed = compose(first, then).unwrap();
            let expected = then
                .to_matrix()
                .unwrap()
                .mul(&first.to_matrix().unwrap())
                .unwrap();
            assert!(composed
                .to_matrix()
                .unwrap()
                .max_abs_diff(&expected)
                .unwrap()
                < 1e-12);
            assert_eq!(composed.dim(), dim);
        }
    }

    #[test]
    fn conversion_preserves_final_states_and_query_count() {
        // One-query phase algorithm with non-trivial stages.
        let layout = RegisterLayout::new(2, 1, 1, vec![OutputSlot::IndexRegister]).unwrap();
        let h = 1.0 / 2.0_f64.sqrt();
        let mix = ComplexMatrix::from_rows(vec![
            vec![r(h), r(h), r(0.0), r(0.0)],
            vec![r(h), r(-h), r(0.0), r(0.0)],
            vec![r(0.0), r(0.0), r(0.0), r(1.0)],
            vec![r(0.0), r(0.0), r(1.0), r(0.0)],
        ])
        .unwrap();
        let alg = QueryAlgorithm::new(
            layout.clone(),
            OracleConvention::Phase,
            vec![Operator::Dense(mix.clone()), Operator::Dense(mix)],
        )
        .unwrap();

        let hosted = convert_convention(&alg, OracleConvention::Xor).unwrap();
        assert_eq!(hosted.convention(), OracleConvention::Xor);
        assert_eq!(hosted.queries(), alg.queries());

        for bits in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            let x = InputAssignment::boolean(&bits).unwrap();
            let a = alg.simulate(&x).unwrap();
            let b = hosted.simulate(&x).unwrap();
            assert!(a.fidelity(&b).unwrap() > 1.0 - 1e-12);
        }

        // Round trip back to phase hosting.
        let back = convert_convention(&hosted, OracleConvention::Phase).unwrap();
        assert_eq!(back.queries(), alg.queries());
        for bits in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            let x = InputAssignment::boolean(&bits).unwrap();
            let a = alg.simulate(&x).unwrap();
            let b = back.simulate(&x).unwrap();
            assert!(a.fidelity(&b).unwrap() > 1.0 - 1e-12);
        }
    }

    #[test]
    fn conversion_requires_single_answer_bit() {
        let layout = RegisterLayout::new(2, 2, 1, vec![OutputSlot::AnswerRegister]).unwrap();
        let alg = QueryAlgorithm::new(
            layout.clone(),
            OracleConvention::Xor,
            vec![
                Operator::identity(layout.dim()),
                Operator::identity(layout.dim()),
            ],
        )
        .unwrap();
        assert!(convert_convention(&alg, OracleConvention::Phase).is_err());
    }

    #[test]
    fn input_assignment_validation() {
        assert!(InputAssignment::new(vec![0, 2], 2).is_err());
        assert!(InputAssignment::new(vec![], 2).is_err());
        let x = InputAssignment::one_hot(4, 2).unwrap();
        assert_eq!(x.values(), &[0, 0, 1, 0]);
        assert_eq!(x.digits(), "0010");
        let p = InputAssignment::new(vec![2, 0, 1], 3).unwrap();
        assert!(p.is_permutation());
        let q = InputAssignment::new(vec![2, 0, 2], 3).unwrap();
        assert!(!q.is_permutation());
    }
}
