//! Bipartite runs: a query algorithm driven jointly on a superposition of
//! inputs, with the input-side Gram matrix sampled after every query.
//!
//! The joint state lives on `H_A (x) H_I` where `H_A` carries the
//! algorithm's registers and `H_I` holds one basis vector per input. Tracing
//! out `H_A` leaves the Gram matrix of the per-input branches; its
//! off-diagonal entries measure how well the algorithm still confuses the
//! two inputs. The checks in this module budget how fast that confusion can
//! be destroyed and how small it must end up for the answers to be reliable.

use crate::error::{Error, Result};
use crate::linalg::{restricted_offdiag_sum, BipartiteState, ComplexMatrix, StateVector};
use crate::query::{apply_oracle, check_oracle_input, InputAssignment, QueryAlgorithm};
use crate::tolerances::SUPERPOSITION_NORM_TOL;
use crate::C64;

/// A weighted superposition of distinct inputs on the input side.
#[derive(Debug, Clone)]
pub struct SuperpositionSpec {
    inputs: Vec<InputAssignment>,
    amplitudes: Vec<C64>,
}

impl SuperpositionSpec {
    pub fn new(inputs: Vec<InputAssignment>, amplitudes: Vec<C64>) -> Result<Self> {
        if inputs.is_empty() {
            return Err(Error::arg("superposition needs at least one input"));
        }
        if inputs.len() != amplitudes.len() {
            return Err(Error::arg(format!(
                "{} inputs with {} amplitudes",
                inputs.len(),
                amplitudes.len()
            )));
        }
        let (n, alphabet) = (inputs[0].n(), inputs[0].alphabet_size());
        for x in &inputs {
            if x.n() != n || x.alphabet_size() != alphabet {
                return Err(Error::arg("inputs must share positions and alphabet"));
            }
        }
        let mut seen: Vec<&[u8]> = inputs.iter().map(|x| x.values()).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::arg("superposition inputs must be distinct"));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::arg("superposition amplitudes must be finite"));
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > SUPERPOSITION_NORM_TOL {
            return Err(Error::arg(format!(
                "superposition squared norm {norm_sq} is not 1"
            )));
        }
        Ok(SuperpositionSpec { inputs, amplitudes })
    }

    /// Uniform weights `1/sqrt(m)` over the given inputs.
    pub fn uniform(inputs: Vec<InputAssignment>) -> Result<Self> {
        let amp = C64::new(1.0 / (inputs.len() as f64).sqrt(), 0.0);
        let amplitudes = vec![amp; inputs.len()];
        SuperpositionSpec::new(inputs, amplitudes)
    }

    /// Half the weight spread over each side: `1/sqrt(2|X|)` on the first
    /// block, `1/sqrt(2|Y|)` on the second. The returned spec lists all of
    /// `xs` first, so index `|X| + j` addresses `ys[j]`.
    pub fn two_sided(xs: Vec<InputAssignment>, ys: Vec<InputAssignment>) -> Result<Self> {
        if xs.is_empty() || ys.is_empty() {
            return Err(Error::arg("both sides must be nonempty"));
        }
        let ax = C64::new(1.0 / (2.0 * xs.len() as f64).sqrt(), 0.0);
        let ay = C64::new(1.0 / (2.0 * ys.len() as f64).sqrt(), 0.0);
        let mut amplitudes = vec![ax; xs.len()];
        amplitudes.extend(std::iter::repeat_n(ay, ys.len()));
        let mut inputs = xs;
        inputs.extend(ys);
        SuperpositionSpec::new(inputs, amplitudes)
    }

    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    pub fn inputs(&self) -> &[InputAssignment] {
        &self.inputs
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// `|alpha_x| |alpha_y|` for a pair of input indices.
    pub fn amplitude_product(&self, x: usize, y: usize) -> f64 {
        self.amplitudes[x].norm() * self.amplitudes[y].norm()
    }
}

/// Record of a bipartite run.
///
/// `rhos[k]` is the input-side Gram matrix right after the `k`-th query
/// (`rhos[0]` after the preparation stage); unitaries on the algorithm side
/// leave it unchanged, so this is also the Gram matrix at the end of stage
/// `k`. `states[k]` is the joint state at the end of stage `k`.
#[derive(Debug, Clone)]
pub struct BipartiteRun {
    rhos: Vec<ComplexMatrix>,
    states: Vec<BipartiteState>,
    max_norm_drift: f64,
}

impl BipartiteRun {
    pub fn queries(&self) -> usize {
        self.rhos.len() - 1
    }

    pub fn rhos(&self) -> &[ComplexMatrix] {
        &self.rhos
    }

    pub fn final_rho(&self) -> &ComplexMatrix {
        self.rhos.last().expect("run holds at least one matrix")
    }

    pub fn states(&self) -> &[BipartiteState] {
        &self.states
    }

    /// Largest deviation of the joint norm from 1 seen after any stage or
    /// query application.
    pub fn max_norm_drift(&self) -> f64 {
        self.max_norm_drift
    }
}

fn columns_norm_drift(columns: &[Vec<C64>]) -> f64 {
    let norm_sq: f64 = columns
        .iter()
        .flat_map(|c| c.iter())
        .map(|z| z.norm_sqr())
        .sum();
    (norm_sq.sqrt() - 1.0).abs()
}

/// Runs the algorithm on all inputs of the superposition jointly and
/// samples the Gram matrix after every query.
pub fn run_bipartite(alg: &QueryAlgorithm, spec: &SuperpositionSpec) -> Result<BipartiteRun> {
    let layout = alg.layout();
    for x in spec.inputs() {
        check_oracle_input(layout, x, alg.convention())?;
    }

    let dim = layout.dim();
    let mut columns: Vec<Vec<C64>> = spec
        .amplitudes()
        .iter()
        .map(|&a| {
            let mut col = vec![C64::new(0.0, 0.0); dim];
            col[0] = a;
            col
        })
        .collect();
    let mut drift = 0.0f64;

    let mut rhos = Vec::with_capacity(alg.queries() + 1);
    let mut states = Vec::with_capacity(alg.queries() + 1);

    for (k, stage) in alg.stages().iter().enumerate() {
        if k > 0 {
            for (col, x) in columns.iter_mut().zip(spec.inputs()) {
                *col = apply_oracle(alg.convention(), layout, x, col)?;
            }
            drift = drift.max(columns_norm_drift(&columns));
            let post_query = BipartiteState::new(dim, columns.clone())?;
            rhos.push(post_query.trace_out_algorithm());
        }
        for col in columns.iter_mut() {
            *col = stage.apply(col)?;
        }
        drift = drift.max(columns_norm_drift(&columns));
        let state = BipartiteState::new(dim, columns.clone())?;
        if k == 0 {
            rhos.push(state.trace_out_algorithm());
        }
        states.push(state);
    }

    Ok(BipartiteRun {
        rhos,
        states,
        max_norm_drift: drift,
    })
}

/// The factor by which an algorithm with worst-case error `epsilon` can
/// shrink a cross-class Gram entry below its starting magnitude, saturated
/// at 1: entries never need to shrink when the error is 1/2 or worse, and
/// magnitudes can never exceed `|alpha_x||alpha_y|` anyway.
pub fn error_overlap_factor(epsilon: f64) -> f64 {
    if epsilon <= 0.0 {
        0.0
    } else if epsilon < 0.5 {
        2.0 * (epsilon * (1.0 - epsilon)).sqrt()
    } else {
        1.0
    }
}

/// Outcome of an entrywise final-overlap check.
#[derive(Debug, Clone)]
pub struct EntryBoundCheck {
    pub epsilon: f64,
    pub factor: f64,
    /// Largest `|rho_xy| - factor |alpha_x||alpha_y|` over the pairs.
    pub worst_excess: f64,
    pub worst_pair: Option<(usize, usize)>,
    pub pass: bool,
}

/// Checks the final-state overlap bound: an algorithm that distinguishes
/// the two inputs of every pair with error at most `epsilon < 1/2` must
/// leave every listed entry of the final Gram matrix at magnitude at most
/// `2 sqrt(epsilon (1 - epsilon)) |alpha_x| |alpha_y|`.
pub fn check_entry_bound(
    rho_end: &ComplexMatrix,
    spec: &SuperpositionSpec,
    pairs: &[(usize, usize)],
    epsilon: f64,
    slack: f64,
) -> Result<EntryBoundCheck> {
    if !(0.0..0.5).contains(&epsilon) {
        return Err(Error::arg(format!(
            "entry bound needs error in [0, 1/2), got {epsilon}"
        )));
    }
    if rho_end.rows() != spec.len() {
        return Err(Error::dim("Gram matrix does not match superposition size"));
    }
    let factor = error_overlap_factor(epsilon);
    let mut worst_excess = f64::NEG_INFINITY;
    let mut worst_pair = None;
    for &(x, y) in pairs {
        if x >= spec.len() || y >= spec.len() || x == y {
            return Err(Error::arg(format!("invalid pair ({x}, {y})")));
        }
        let excess = rho_end.get(x, y).norm() - factor * spec.amplitude_product(x, y);
        if excess > worst_excess {
            worst_excess = excess;
            worst_pair = Some((x, y));
        }
    }
    let worst_excess = if worst_excess.is_finite() {
        worst_excess
    } else {
        0.0
    };
    Ok(EntryBoundCheck {
        epsilon,
        factor,
        worst_excess,
        worst_pair,
        pass: worst_excess <= slack,
    })
}

/// Per-query progress of the summed Gram magnitudes over a pair set.
#[derive(Debug, Clone)]
pub struct ProgressTrace {
    /// `sums[k]` is the sum after `k` queries; `sums[0]` is the start.
    pub sums: Vec<f64>,
    /// `deltas[k]` = `sums[k] - sums[k+1]`, the decrease at query `k+1`.
    pub deltas: Vec<f64>,
}

/// Sums `|rho_k[x, y]|` over the pair list for every sampled Gram matrix.
/// Pairs are directed; include both orientations to sum a full
/// off-diagonal block.
pub fn progress_trace(run: &BipartiteRun, pairs: &[(usize, usize)]) -> Result<ProgressTrace> {
    let sums = run
        .rhos()
        .iter()
        .map(|rho| restricted_offdiag_sum(rho, pairs))
        .collect::<Result<Vec<f64>>>()?;
    let deltas = sums.windows(2).map(|w| w[0] - w[1]).collect();
    Ok(ProgressTrace { sums, deltas })
}

/// Outcome of checking every per-query decrease against a budget.
#[derive(Debug, Clone)]
pub struct StepBoundCheck {
    pub max_decrease: f64,
    pub bound: f64,
    /// 1-based query index of the largest decrease.
    pub worst_query: Option<usize>,
    pub pass: bool,
}

/// Checks that no single query decreased the progress sum by more than
/// `bound` (plus numerical slack). Increases are always allowed; only
/// decreases are budgeted.
pub fn check_step_decrease(trace: &ProgressTrace, bound: f64, slack: f64) -> StepBoundCheck {
    let mut max_decrease = 0.0f64;
    let mut worst_query = None;
    for (k, &d) in trace.deltas.iter().enumerate() {
        if d > max_decrease {
            max_decrease = d;
            worst_query = Some(k + 1);
        }
    }
    StepBoundCheck {
        max_decrease,
        bound,
        worst_query,
        pass: max_decrease <= bound + slack,
    }
}

/// How states on different inputs are paired for a distance sum.
#[derive(Debug, Clone)]
pub enum DistancePairing {
    /// Sum `||phi_x - phi_ref||^2` over all listed inputs `x`.
    Reference(InputAssignment),
    /// Sum over explicit input pairs.
    Pairs(Vec<(InputAssignment, InputAssignment)>),
}

/// The distance sum after each stage: `Delta(t)` is taken at the end of
/// stage `t`, i.e. after `t` queries, using `||u - v||^2 = 2 - 2 Re<u|v>`.
/// `Delta(0)` is always 0 since no query has touched the input yet.
pub fn distance_trace(
    alg: &QueryAlgorithm,
    inputs: &[InputAssignment],
    pairing: &DistancePairing,
) -> Result<Vec<f64>> {
    let steps = alg.queries() + 1;
    let mut deltas = vec![0.0f64; steps];
    let add_pair = |a: &[StateVector], b: &[StateVector], out: &mut [f64]| -> Result<()> {
        for t in 0..steps {
            out[t] += a[t].distance_sq(&b[t])?;
        }
        Ok(())
    };
    match pairing {
        DistancePairing::Reference(reference) => {
            let ref_states = alg.simulate_stages(reference)?;
            for x in inputs {
                let states = alg.simulate_stages(x)?;
                add_pair(&states, &ref_states, &mut deltas)?;
            }
        }
        DistancePairing::Pairs(pairs) => {
            if !inputs.is_empty() {
                return Err(Error::arg(
                    "explicit pairs carry their own inputs; pass an empty input list",
                ));
            }
            for (x, y) in pairs {
                let xs = alg.simulate_stages(x)?;
                let ys = alg.simulate_stages(y)?;
                add_pair(&xs, &ys, &mut deltas)?;
            }
        }
    }
    Ok(deltas)
}

/// Outcome of checking the Gram entries against independently simulated
/// single-input overlaps.
#[derive(Debug, Clone)]
pub struct GramIdentityCheck {
    /// Largest `|rho_t[x, y] - conj(alpha_x) alpha_y <psi_x^t|psi_y^t>|`
    /// over the pairs and all stages.
    pub max_deviation: f64,
    /// Mean starting magnitude `|rho_0[x, y]|` over the pairs; for a
    /// two-sided uniform superposition this is `1 / (2 sqrt(|X||Y|))`.
    pub measured_constant: f64,
}

/// Verifies that each tracked Gram entry factors into the amplitude weights
/// times the overlap of independently simulated single-input runs, at the
/// end of every stage.
pub fn check_gram_identity(
    alg: &QueryAlgorithm,
    spec: &SuperpositionSpec,
    run: &BipartiteRun,
    pairs: &[(usize, usize)],
) -> Result<GramIdentityCheck> {
    let solo: Vec<Vec<StateVector>> = spec
        .inputs()
        .iter()
        .map(|x| alg.simulate_stages(x))
        .collect::<Result<_>>()?;

    let grams: Vec<ComplexMatrix> = run
        .states()
        .iter()
        .map(BipartiteState::trace_out_algorithm)
        .collect();

    let mut max_deviation = 0.0f64;
    let mut start_sum = 0.0f64;
    for &(x, y) in pairs {
        if x >= spec.len() || y >= spec.len() {
            return Err(Error::arg(format!("invalid pair ({x}, {y})")));
        }
        for (t, rho) in grams.iter().enumerate() {
            let overlap = solo[x][t].inner(&solo[y][t])?;
            let expected = spec.amplitudes()[x].conj() * spec.amplitudes()[y] * overlap;
            let dev = (rho.get(x, y) - expected).norm();
            max_deviation = max_deviation.max(dev);
        }
        start_sum += run.rhos()[0].get(x, y).norm();
    }
    let measured_constant = if pairs.is_empty() {
        0.0
    } else {
        start_sum / pairs.len() as f64
    };
    Ok(GramIdentityCheck {
        max_deviation,
        measured_constant,
    })
}
