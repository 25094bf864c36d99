//! Concrete query algorithms: amplitude-amplification search, exact
//! classical lookup, constant answers, and seeded random algorithms.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::query::{
    Operator, OracleConvention, OutputSlot, QueryAlgorithm, RegisterLayout,
};
use crate::truth_table::TruthTable;
use crate::C64;

fn ceil_log2(n: usize) -> usize {
    debug_assert!(n >= 1);
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

fn checked_pow(base: usize, exp: usize, what: &str) -> Result<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(base)
            .ok_or_else(|| Error::dim(format!("{what} overflows")))?;
    }
    Ok(acc)
}

/// Unitary whose first column is the given unit vector, built as a
/// Householder reflection. `target` must have a real entry at position 0
/// (all callers prepare real amplitude patterns).
fn householder_with_first_column(target: &[C64]) -> Result<ComplexMatrix> {
    let dim = target.len();
    let mut u: Vec<C64> = target.iter().map(|&z| -z).collect();
    u[0] += 1.0;
    let norm_sq: f64 = u.iter().map(|z| z.norm_sqr()).sum();
    if norm_sq < 1e-30 {
        return ComplexMatrix::identity(dim);
    }
    let scale = 2.0 / norm_sq;
    ComplexMatrix::from_fn(dim, dim, |r, c| {
        let eye = if r == c { 1.0 } else { 0.0 };
        C64::new(eye, 0.0) - u[r] * u[c].conj() * scale
    })
}

/// Search by amplitude amplification (phase-oracle convention).
///
/// Layout: index register of dimension `n`, one answer bit, trivial work
/// register, answer measured from the index register. Stage 0 prepares the
/// uniform superposition over positions with the answer bit set (so the
/// phase oracle kicks a sign onto the marked position); each later stage is
/// the inversion-about-uniform diffusion on the index register.
///
/// On the one-hot input marked at position `m`, the success probability
/// after `t` iterations is `sin^2((2t+1) asin(1/sqrt(n)))`.
pub fn grover_search(n: usize, iterations: usize) -> Result<QueryAlgorithm> {
    let layout = RegisterLayout::new(n, 1, 1, vec![OutputSlot::IndexRegister])?;
    let dim = layout.dim();

    let amp = 1.0 / (n as f64).sqrt();
    let mut target = vec![C64::new(0.0, 0.0); dim];
    for i in 0..n {
        target[layout.flatten(i, 1, 0)] = C64::new(amp, 0.0);
    }
    let prep = Operator::Dense(householder_with_first_column(&target)?);

    // (2|u><u| - I) on the index register, identity on the answer bit.
    let two_over_n = 2.0 / n as f64;
    let diffusion = ComplexMatrix::from_fn(dim, dim, |r, c| {
        let (ri, ra, _) = layout.unflatten(r);
        let (ci, ca, _) = layout.unflatten(c);
        if ra != ca {
            return C64::new(0.0, 0.0);
        }
        let eye = if ri == ci { 1.0 } else { 0.0 };
        C64::new(two_over_n - eye, 0.0)
    })?;

    let mut stages = vec![prep];
    stages.extend(std::iter::repeat_with(|| Operator::Dense(diffusion.clone())).take(iterations));
    QueryAlgorithm::new(layout, OracleConvention::Phase, stages)
}

/// Closed-form success probability of [`grover_search`] on a one-hot input.
pub fn grover_success_probability(n: usize, iterations: usize) -> f64 {
    let theta = (1.0 / (n as f64).sqrt()).asin();
    ((2 * iterations + 1) as f64 * theta).sin().powi(2)
}

struct LookupShape {
    layout: RegisterLayout,
    transcript_dim: usize,
    digit_pow: Vec<usize>,
}

fn lookup_shape(n: usize, alphabet_size: usize, range_size: Option<usize>) -> Result<LookupShape> {
    if n < 2 {
        return Err(Error::arg("lookup needs at least two positions"));
    }
    if alphabet_size < 2 {
        return Err(Error::arg("alphabet size must be at least 2"));
    }
    let answer_bits = ceil_log2(alphabet_size);
    let transcript_dim = checked_pow(alphabet_size, n, "transcript dimension")?;
    let (work_dim, parts) = match range_size {
        Some(r) => (
            transcript_dim
                .checked_mul(r)
                .ok_or_else(|| Error::dim("work dimension overflows"))?,
            r,
        ),
        None => (transcript_dim, transcript_dim),
    };
    let layout = RegisterLayout::new(
        n,
        answer_bits,
        work_dim,
        vec![OutputSlot::WorkQuotient { parts }],
    )?;
    let digit_pow = (0..n)
        .scan(1usize, |acc, _| {
            let v = *acc;
            *acc *= alphabet_size;
            Some(v)
        })
        .collect();
    Ok(LookupShape {
        layout,
        transcript_dim,
        digit_pow,
    })
}

/// Builds the stage permutations of a lookup algorithm. Stage `k`
/// (1-based) moves the freshly read value of position `k-1` from the answer
/// register into transcript digit `k-1` and advances the index pointer; the
/// final stage additionally adds `answer_of(transcript)` onto the dedicated
/// answer digit when one exists.
fn lookup_stages(
    shape: &LookupShape,
    n: usize,
    alphabet_size: usize,
    answer_of: Option<(usize, &dyn Fn(usize) -> usize)>,
) -> Vec<Operator> {
    let layout = &shape.layout;
    let dim = layout.dim();
    let mut stages = Vec::with_capacity(n + 1);
    stages.push(Operator::identity(dim));
    for k in 1..=n {
        let pow = shape.digit_pow[k - 1];
        let mut perm = vec![0usize; dim];
        for (s, slot) in perm.iter_mut().enumerate() {
            let (i, a, w) = layout.unflatten(s);
            let (ans, t) = (w / shape.transcript_dim, w % shape.transcript_dim);
            let d = (t / pow) % alphabet_size;
            // Swap the answer register with the digit; identity on the
            // unreachable values a >= alphabet_size keeps this a bijection.
            let (a2, t2) = if a < alphabet_size {
                (d, t - d * pow + a * pow)
            } else {
                (a, t)
            };
            let ans2 = match (k == n, answer_of) {
                (true, Some((range, f))) => (ans + f(t2)) % range,
                _ => ans,
            };
            let w2 = ans2 * shape.transcript_dim + t2;
            *slot = layout.flatten((i + 1) % n, a2, w2);
        }
        stages.push(Operator::Permutation(perm));
    }
    stages
}

/// Exact classical readout: queries every position once in order and leaves
/// the full input transcript in the work register. The measured answer is
/// the transcript index `sum_k x_k * alphabet_size^k`.
pub fn classical_lookup(n: usize, alphabet_size: usize) -> Result<QueryAlgorithm> {
    let shape = lookup_shape(n, alphabet_size, None)?;
    let stages = lookup_stages(&shape, n, alphabet_size, None);
    QueryAlgorithm::new(shape.layout, OracleConvention::Xor, stages)
}

/// Exact evaluation of a truth table by classical readout: reads the whole
/// input, then reversibly adds the table value of the transcript onto a
/// dedicated answer digit. Inputs outside the table's promise get answer 0.
/// The result makes zero errors on every defined input.
pub fn classical_lookup_for(table: &TruthTable) -> Result<QueryAlgorithm> {
    let n = table.positions();
    let alphabet = table.alphabet_size();
    let range = table.range_size().max(2);
    let shape = lookup_shape(n, alphabet, Some(range))?;
    let pow = shape.digit_pow.clone();
    let value_of_transcript = move |t: usize| -> usize {
        let digits: Vec<u8> = (0..n).map(|j| ((t / pow[j]) % alphabet) as u8).collect();
        table.value(&digits).unwrap_or(0)
    };
    let stages = lookup_stages(&shape, n, alphabet, Some((range, &value_of_transcript)));
    QueryAlgorithm::new(shape.layout, OracleConvention::Xor, stages)
}

/// Query-free algorithm that always answers `value`.
pub fn constant_algorithm(
    n: usize,
    alphabet_size: usize,
    range_size: usize,
    value: usize,
) -> Result<QueryAlgorithm> {
    if value >= range_size {
        return Err(Error::arg(format!(
            "constant value {value} out of range {range_size}"
        )));
    }
    if alphabet_size < 2 {
        return Err(Error::arg("alphabet size must be at least 2"));
    }
    let range = range_size.max(2);
    let layout = RegisterLayout::new(
        n,
        ceil_log2(alphabet_size),
        range,
        vec![OutputSlot::WorkQuotient { parts: range }],
    )?;
    let dim = layout.dim();
    let mut perm = vec![0usize; dim];
    for (s, slot) in perm.iter_mut().enumerate() {
        let (i, a, w) = layout.unflatten(s);
        *slot = layout.flatten(i, a, (w + value) % range);
    }
    QueryAlgorithm::new(layout, OracleConvention::Xor, vec![Operator::Permutation(perm)])
}

/// Haar-distributed random unitary: complex Gaussian matrix, QR
/// decomposition, and a column phase fix so the distribution is exactly
/// invariant.
pub fn haar_random_unitary(dim: usize, rng: &mut impl Rng) -> Result<ComplexMatrix> {
    if dim == 0 {
        return Err(Error::dim("unitary dimension must be positive"));
    }
    let g = nalgebra::DMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let r = qr.r();
    let phases: Vec<C64> = (0..dim)
        .map(|j| {
            let d = r[(j, j)];
            if d.norm() < 1e-300 {
                C64::new(1.0, 0.0)
            } else {
                d / d.norm()
            }
        })
        .collect();
    let q = qr.q();
    ComplexMatrix::from_fn(dim, dim, |row, col| q[(row, col)] * phases[col])
}

/// Random algorithm: `queries + 1` independent Haar-random stages on the
/// given layout, fully determined by the seed.
pub fn random_algorithm(
    layout: RegisterLayout,
    convention: OracleConvention,
    queries: usize,
    seed: u64,
) -> Result<QueryAlgorithm> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let dim = layout.dim();
    let stages = (0..=queries)
        .map(|_| Ok(Operator::Dense(haar_random_unitary(dim, &mut rng)?)))
        .collect::<Result<Vec<_>>>()?;
    QueryAlgorithm::new(layout, convention, stages)
}
