//! Acceptance gate: ten end-to-end criteria covering progress bounds,
//! relation parameters, block sensitivity, distances, convention
//! conversion, and structural invariants. Each test prints exactly one
//! PASS/FAIL verdict line; run with `--nocapture` to see them.

use adversim_core::adversary::{
    check_entry_bound, check_gram_identity, distance_trace, error_overlap_factor, progress_trace,
    run_bipartite, DistancePairing, SuperpositionSpec,
};
use adversim_core::algorithms::{
    classical_lookup, classical_lookup_for, grover_search, haar_random_unitary, random_algorithm,
};
use adversim_core::linalg::full_offdiag_pairs;
use adversim_core::query::{worst_case_error, OutputSlot};
use adversim_core::relation::{
    and_of_ors_relation, counting_closed_form, counting_predicted_ratio, counting_relation,
    permutation_inversion_relation, search_relation, AdversaryRelation,
};
use adversim_core::truth_table::{
    majority_table, or_table, parity_table, permutation_parity_table, search_table,
};
use adversim_core::{InputAssignment, OracleConvention, QueryAlgorithm, RegisterLayout, TruthTable};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

const SLACK: f64 = 1e-9;

fn report(criterion: usize, label: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("[criterion {criterion}] {label}: PASS");
    } else {
        println!("[criterion {criterion}] {label}: FAIL");
        for f in failures {
            println!("  - {f}");
        }
        panic!(
            "criterion {criterion} failed with {} violation(s)",
            failures.len()
        );
    }
}

fn one_hots(n: usize) -> Vec<InputAssignment> {
    (0..n)
        .map(|i| InputAssignment::one_hot(n, i).unwrap())
        .collect()
}

fn uniform_search_spec(n: usize) -> SuperpositionSpec {
    SuperpositionSpec::uniform(one_hots(n)).unwrap()
}

#[test]
fn criterion_01_search_progress_budget() {
    let mut failures = Vec::new();
    for n in [4usize, 8, 16] {
        let table = search_table(n).unwrap();
        let budget = 2.0 * ((n - 1) as f64).sqrt();
        for t in 0..=3usize {
            let alg = grover_search(n, t).unwrap();
            let run = run_bipartite(&alg, &uniform_search_spec(n)).unwrap();
            let trace = progress_trace(&run, &full_offdiag_pairs(n)).unwrap();

            let start = trace.sums[0];
            if (start - (n - 1) as f64).abs() > 1e-10 {
                failures.push(format!("n={n} t={t}: start sum {start} != {}", n - 1));
            }
            for (k, &d) in trace.deltas.iter().enumerate() {
                if d > budget + SLACK {
                    failures.push(format!(
                        "n={n} t={t}: query {} decreased the sum by {d} > {budget}",
                        k + 1
                    ));
                }
            }
            let eps = worst_case_error(&alg, &table).unwrap();
            let allowed = error_overlap_factor(eps) * (n - 1) as f64;
            let last = *trace.sums.last().unwrap();
            if last > allowed + SLACK {
                failures.push(format!(
                    "n={n} t={t}: final sum {last} > {allowed} at error {eps}"
                ));
            }
        }
    }
    report(1, "uniform search progress budget", &failures);
}

#[test]
fn criterion_02_exact_runs_decohere_and_entry_bound_holds() {
    let mut failures = Vec::new();

    let decohere = |name: &str,
                    alg: &QueryAlgorithm,
                    rel: &AdversaryRelation,
                    failures: &mut Vec<String>| {
        let run = run_bipartite(alg, &rel.superposition().unwrap()).unwrap();
        let rho = run.final_rho();
        for (x, y) in rel.global_pairs() {
            let mag = rho.get(x, y).norm();
            if mag > SLACK {
                failures.push(format!("{name}: final entry ({x},{y}) has magnitude {mag}"));
            }
        }
    };

    let (search_rel, or4) = search_relation(4).unwrap();
    decohere(
        "or lookup",
        &classical_lookup_for(&or4).unwrap(),
        &search_rel,
        &mut failures,
    );
    let perm_rel = permutation_inversion_relation(4).unwrap().0;
    decohere(
        "permutation lookup",
        &classical_lookup_for(&permutation_parity_table(4).unwrap()).unwrap(),
        &perm_rel,
        &mut failures,
    );

    let alg = grover_search(8, 2).unwrap();
    let eps = worst_case_error(&alg, &search_table(8).unwrap()).unwrap();
    let run = run_bipartite(&alg, &uniform_search_spec(8)).unwrap();
    let entry = check_entry_bound(
        run.final_rho(),
        &uniform_search_spec(8),
        &full_offdiag_pairs(8),
        eps,
        SLACK,
    )
    .unwrap();
    if !entry.pass {
        failures.push(format!(
            "amplified search at error {eps}: entry excess {} at {:?}",
            entry.worst_excess, entry.worst_pair
        ));
    }
    report(2, "exact algorithms decohere, entry bound holds", &failures);
}

#[test]
fn criterion_03_counting_parameters_match_closed_forms() {
    let mut failures = Vec::new();
    for (n, num, den) in [(8usize, 1u64, 2u64), (12, 1, 3), (12, 1, 2)] {
        let (rel, _) = counting_relation(n, num, den).unwrap();
        let params = rel.parameters().unwrap();
        let cf = counting_closed_form(n, num, den).unwrap();
        let enumerated = (
            params.min_x_degree,
            params.min_y_degree,
            params.max_x_flip,
            params.max_y_flip,
        );
        if enumerated != (cf.m, cf.m_prime, cf.l, cf.l_prime) {
            failures.push(format!(
                "n={n} gap={num}/{den}: enumerated {enumerated:?} != closed form ({}, {}, {}, {})",
                cf.m, cf.m_prime, cf.l, cf.l_prime
            ));
        }
        // Exact rational identity, cross-multiplied to avoid reduction.
        let predicted = counting_predicted_ratio(num, den);
        let lhs = (params.min_x_degree as u128)
            * (params.min_y_degree as u128)
            * (*predicted.denom() as u128);
        let rhs = (params.max_x_flip as u128)
            * (params.max_y_flip as u128)
            * (*predicted.numer() as u128);
        if lhs != rhs {
            failures.push(format!(
                "n={n} gap={num}/{den}: m m' / (l l') differs from {}/{}",
                predicted.numer(),
                predicted.denom()
            ));
        }
    }
    report(3, "counting parameters match closed forms", &failures);
}

#[test]
fn criterion_04_permutation_refinement_beats_basic() {
    let mut failures = Vec::new();
    for n in [4usize, 6] {
        let rel = permutation_inversion_relation(n).unwrap().0;
        let params = rel.parameters().unwrap();
        let half = (n / 2) as u64;
        if params.min_x_degree != half || params.min_y_degree != half {
            failures.push(format!(
                "n={n}: degrees ({}, {}) != ({half}, {half})",
                params.min_x_degree, params.min_y_degree
            ));
        }
        if params.max_flip_product != half {
            failures.push(format!(
                "n={n}: flip product {} != {half}",
                params.max_flip_product
            ));
        }
        let basic = params.basic_bound();
        let refined = params.refined_bound();
        if (basic - 1.0).abs() > 1e-12 {
            failures.push(format!("n={n}: basic bound {basic} != 1"));
        }
        if (refined - (half as f64).sqrt()).abs() > 1e-12 {
            failures.push(format!(
                "n={n}: refined bound {refined} != sqrt({half})"
            ));
        }
        if refined <= basic {
            failures.push(format!(
                "n={n}: refinement gained nothing ({refined} <= {basic})"
            ));
        }
    }
    report(4, "permutation inversion gains from flip products", &failures);
}

#[test]
fn criterion_05_block_and_or_parameters() {
    let mut failures = Vec::new();
    for n in [4usize, 9] {
        let (rel, _) = and_of_ors_relation(n).unwrap();
        let params = rel.parameters().unwrap();
        let root = (n as f64).sqrt().round() as u64;
        if params.min_x_degree != root || params.min_y_degree != root {
            failures.push(format!(
                "n={n}: degrees ({}, {}) != ({root}, {root})",
                params.min_x_degree, params.min_y_degree
            ));
        }
        if params.max_x_flip != 1 || params.max_y_flip != 1 {
            failures.push(format!(
                "n={n}: flip counts ({}, {}) != (1, 1)",
                params.max_x_flip, params.max_y_flip
            ));
        }
        if (params.basic_bound() - (n as f64).sqrt()).abs() > 1e-12 {
            failures.push(format!(
                "n={n}: basic bound {} != sqrt({n})",
                params.basic_bound()
            ));
        }
    }
    report(5, "blockwise AND of ORs parameters", &failures);
}

/// Independent reference: enumerate sensitive blocks as bitmasks at every
/// input and take the best disjoint packing by plain unpruned recursion.
fn reference_bs(table: &TruthTable) -> usize {
    let n = table.positions();

    fn pack(blocks: &[u32], idx: usize, used: u32) -> usize {
        if idx == blocks.len() {
            return 0;
        }
        let skip = pack(blocks, idx + 1, used);
        if blocks[idx] & used == 0 {
            skip.max(1 + pack(blocks, idx + 1, used | blocks[idx]))
        } else {
            skip
        }
    }

    let mut best = 0;
    for code in 0..(1usize << n) {
        let input: Vec<u8> = (0..n).map(|i| ((code >> i) & 1) as u8).collect();
        let fx = table.value(&input).unwrap();
        let mut blocks = Vec::new();
        for mask in 1u32..(1 << n) {
            let flipped: Vec<u8> = (0..n)
                .map(|i| input[i] ^ ((mask >> i) & 1) as u8)
                .collect();
            if table.value(&flipped).unwrap() != fx {
                blocks.push(mask);
            }
        }
        best = best.max(pack(&blocks, 0, 0));
    }
    best
}

#[test]
fn criterion_06_block_sensitivity_relations() {
    let mut failures = Vec::new();

    let check_table = |name: &str, table: &TruthTable, failures: &mut Vec<String>| {
        let expected = reference_bs(table);
        let result = adversim_core::blocksens::block_sensitivity(table).unwrap();
        if result.bs != expected {
            failures.push(format!("{name}: bs {} != reference {expected}", result.bs));
            return;
        }
        if expected == 0 {
            return;
        }
        let (rel, _) = adversim_core::blocksens::bs_relation(table).unwrap();
        let params = rel.parameters().unwrap();
        let ratio_num = params.min_x_degree * params.min_y_degree;
        let ratio_den = params.max_x_flip * params.max_y_flip;
        if ratio_num != expected as u64 * ratio_den {
            failures.push(format!(
                "{name}: relation ratio {ratio_num}/{ratio_den} != bs {expected}"
            ));
        }
    };

    for (name, table, known) in [
        ("or4", or_table(4).unwrap(), 4usize),
        ("parity4", parity_table(4).unwrap(), 4),
        ("majority3", majority_table(3).unwrap(), 2),
    ] {
        if reference_bs(&table) != known {
            failures.push(format!("{name}: reference disagrees with known value {known}"));
        }
        check_table(name, &table, &mut failures);
    }

    let mut rng = ChaCha20Rng::seed_from_u64(601);
    let mut generated = 0;
    while generated < 20 {
        let code: u16 = rng.gen();
        if code == 0 || code == u16::MAX {
            continue;
        }
        let table = TruthTable::from_total_fn(4, 2, 2, |input| {
            let idx: usize = input
                .iter()
                .enumerate()
                .map(|(i, &b)| (b as usize) << i)
                .sum();
            ((code >> idx) & 1) as usize
        })
        .unwrap();
        check_table(&format!("random#{generated}"), &table, &mut failures);
        generated += 1;
    }

    report(6, "block sensitivity relations", &failures);
}

#[test]
fn criterion_07_random_algorithms_respect_step_budgets() {
    let mut failures = Vec::new();

    struct Setting {
        name: &'static str,
        layout: RegisterLayout,
        convention: OracleConvention,
        spec: SuperpositionSpec,
        pairs: Vec<(usize, usize)>,
        budget: f64,
    }

    let aoo = and_of_ors_relation(4).unwrap().0;
    let perm = permutation_inversion_relation(4).unwrap().0;
    let settings = [
        Setting {
            name: "search",
            layout: RegisterLayout::new(8, 1, 1, vec![OutputSlot::IndexRegister]).unwrap(),
            convention: OracleConvention::Phase,
            spec: uniform_search_spec(8),
            pairs: full_offdiag_pairs(8),
            budget: 2.0 * 7.0f64.sqrt(),
        },
        Setting {
            name: "and_of_ors",
            layout: RegisterLayout::new(4, 1, 1, vec![OutputSlot::IndexRegister]).unwrap(),
            convention: OracleConvention::Phase,
            spec: aoo.superposition().unwrap(),
            pairs: aoo.global_pairs(),
            budget: aoo.parameters().unwrap().refined_step_budget(),
        },
        Setting {
            name: "permutation",
            layout: RegisterLayout::new(4, 2, 1, vec![OutputSlot::IndexRegister]).unwrap(),
            convention: OracleConvention::Xor,
            spec: perm.superposition().unwrap(),
            pairs: perm.global_pairs(),
            budget: perm.parameters().unwrap().refined_step_budget(),
        },
    ];
    assert!((settings[1].budget - 1.0).abs() < 1e-12);
    assert!((settings[2].budget - 2.0f64.sqrt()).abs() < 1e-12);

    for setting in &settings {
        for i in 0..100u64 {
            let queries = (i % 4) as usize;
            let alg = random_algorithm(
                setting.layout.clone(),
                setting.convention,
                queries,
                7000 + i,
            )
            .unwrap();
            let run = run_bipartite(&alg, &setting.spec).unwrap();
            let trace = progress_trace(&run, &setting.pairs).unwrap();
            for (k, &d) in trace.deltas.iter().enumerate() {
                if d > setting.budget + SLACK {
                    failures.push(format!(
                        "{} seed {}: query {} decreased the sum by {d} > {}",
                        setting.name,
                        7000 + i,
                        k + 1,
                        setting.budget
                    ));
                }
            }
        }
    }
    report(7, "random algorithms respect step budgets", &failures);
}

#[test]
fn criterion_08_distance_growth_and_gram_factorization() {
    let mut failures = Vec::new();

    // Quadratic growth from the all-zeros reference.
    let alg = grover_search(16, 3).unwrap();
    let reference = InputAssignment::new(vec![0; 16], 2).unwrap();
    let deltas = distance_trace(
        &alg,
        &one_hots(16),
        &DistancePairing::Reference(reference),
    )
    .unwrap();
    for (t, &d) in deltas.iter().enumerate() {
        let cap = 4.0 * (t * t) as f64;
        if d > cap + SLACK {
            failures.push(format!("search distance {d} after {t} queries > {cap}"));
        }
    }

    // An exact algorithm must push the distance sum high.
    let lookup = classical_lookup(4, 2).unwrap();
    let reference = InputAssignment::new(vec![0; 4], 2).unwrap();
    let deltas = distance_trace(
        &lookup,
        &one_hots(4),
        &DistancePairing::Reference(reference),
    )
    .unwrap();
    let needed = 2.0 * 4.0 - 2.0 * 4.0f64.sqrt();
    let last = *deltas.last().unwrap();
    if last < needed - SLACK {
        failures.push(format!("exact lookup distance {last} < {needed}"));
    }

    // The input-side density matrix factors through single-input runs.
    let (rel, or4) = search_relation(4).unwrap();
    let alg = classical_lookup_for(&or4).unwrap();
    let spec = rel.superposition().unwrap();
    let run = run_bipartite(&alg, &spec).unwrap();
    let identity = check_gram_identity(&alg, &spec, &run, &rel.global_pairs()).unwrap();
    if identity.max_deviation > 1e-10 {
        failures.push(format!(
            "gram factorization deviates by {}",
            identity.max_deviation
        ));
    }
    let sizes = (rel.x_set().len() * rel.y_set().len()) as f64;
    let expected_entry = 1.0 / (2.0 * sizes.sqrt());
    if (identity.measured_constant - expected_entry).abs() > 1e-12 {
        failures.push(format!(
            "start entries measured {} instead of {expected_entry}",
            identity.measured_constant
        ));
    }
    println!(
        "  start entry magnitude {:.6}, squared {:.6} = 1/(4 |X| |Y|)",
        identity.measured_constant,
        identity.measured_constant * identity.measured_constant
    );

    report(8, "distance growth and Gram factorization", &failures);
}

#[test]
fn criterion_09_convention_conversion_preserves_behavior() {
    let mut failures = Vec::new();

    let check = |name: &str, alg: &QueryAlgorithm, failures: &mut Vec<String>| {
        let target = match alg.convention() {
            OracleConvention::Phase => OracleConvention::Xor,
            OracleConvention::Xor => OracleConvention::Phase,
        };
        let converted = adversim_core::query::convert_convention(alg, target).unwrap();
        if converted.queries() != alg.queries() {
            failures.push(format!(
                "{name}: query count changed {} -> {}",
                alg.queries(),
                converted.queries()
            ));
            return;
        }
        let n = alg.layout().index_dim();
        for code in 0..(1usize << n) {
            let bits: Vec<u8> = (0..n).map(|i| ((code >> i) & 1) as u8).collect();
            let x = InputAssignment::new(bits, 2).unwrap();
            let a = alg.simulate(&x).unwrap();
            let b = converted.simulate(&x).unwrap();
            let fid = a.fidelity(&b).unwrap();
            if fid < 1.0 - SLACK {
                failures.push(format!(
                    "{name}: fidelity {fid} on input {code:0n$b}",
                    n = n
                ));
            }
        }
    };

    for n in [2usize, 3, 4] {
        for t in 0..=3usize {
            let grover = grover_search(n, t).unwrap();
            check(&format!("grover n={n} t={t}"), &grover, &mut failures);

            let layout = RegisterLayout::new(n, 1, 1, vec![OutputSlot::IndexRegister]).unwrap();
            let seed = 900 + (n * 10 + t) as u64;
            let phase_alg =
                random_algorithm(layout.clone(), OracleConvention::Phase, t, seed).unwrap();
            check(&format!("random phase n={n} t={t}"), &phase_alg, &mut failures);
            let xor_alg =
                random_algorithm(layout, OracleConvention::Xor, t, seed + 1000).unwrap();
            check(&format!("random xor n={n} t={t}"), &xor_alg, &mut failures);
        }
    }
    report(9, "convention conversion preserves behavior", &failures);
}

#[test]
fn criterion_10_density_structure_and_algorithm_side_invariance() {
    let mut failures = Vec::new();
    let mut rng = ChaCha20Rng::seed_from_u64(1001);

    let mut runs: Vec<(String, QueryAlgorithm, SuperpositionSpec)> = Vec::new();
    for n in [4usize, 8, 16] {
        runs.push((
            format!("grover n={n}"),
            grover_search(n, 2).unwrap(),
            uniform_search_spec(n),
        ));
    }
    let (search_rel, or4) = search_relation(4).unwrap();
    runs.push((
        "or lookup".into(),
        classical_lookup_for(&or4).unwrap(),
        search_rel.superposition().unwrap(),
    ));
    let perm_rel = permutation_inversion_relation(4).unwrap().0;
    runs.push((
        "permutation lookup".into(),
        classical_lookup_for(&permutation_parity_table(4).unwrap()).unwrap(),
        perm_rel.superposition().unwrap(),
    ));
    let aoo = and_of_ors_relation(4).unwrap().0;
    runs.push((
        "random phase".into(),
        random_algorithm(
            RegisterLayout::new(4, 1, 1, vec![OutputSlot::IndexRegister]).unwrap(),
            OracleConvention::Phase,
            3,
            90,
        )
        .unwrap(),
        aoo.superposition().unwrap(),
    ));
    runs.push((
        "random xor".into(),
        random_algorithm(
            RegisterLayout::new(4, 2, 1, vec![OutputSlot::IndexRegister]).unwrap(),
            OracleConvention::Xor,
            3,
            91,
        )
        .unwrap(),
        perm_rel.superposition().unwrap(),
    ));

    for (name, alg, spec) in &runs {
        let run = run_bipartite(alg, spec).unwrap();
        for (k, rho) in run.rhos().iter().enumerate() {
            if !rho.check_density_matrix(1e-9).unwrap() {
                failures.push(format!("{name}: sample {k} is not a density matrix"));
            }
        }
        if run.max_norm_drift() > 1e-12 {
            failures.push(format!(
                "{name}: norm drifted by {}",
                run.max_norm_drift()
            ));
        }
        let dim = alg.layout().dim();
        if dim <= 256 {
            for (k, state) in run.states().iter().enumerate() {
                let u = haar_random_unitary(dim, &mut rng).unwrap();
                let rotated = state.apply_matrix_to_algorithm(&u).unwrap();
                let before = state.trace_out_algorithm();
                let after = rotated.trace_out_algorithm();
                let diff = before.max_abs_diff(&after).unwrap();
                if diff > 1e-10 {
                    failures.push(format!(
                        "{name}: stage {k} density changed by {diff} under an algorithm-side unitary"
                    ));
                }
            }
        }
    }
    report(10, "density structure and algorithm-side invariance", &failures);
}
