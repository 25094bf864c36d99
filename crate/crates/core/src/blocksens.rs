//! Block sensitivity of total Boolean functions and the input-pair
//! relation it induces.

use crate::error::{Error, Result};
use crate::query::InputAssignment;
use crate::relation::AdversaryRelation;
use crate::truth_table::{all_strings, TruthTable};

/// Largest position count for exact block sensitivity; the packing search
/// is exponential in the number of sensitive blocks.
pub const MAX_BS_POSITIONS: usize = 6;

/// A witness input together with a maximum family of disjoint sensitive
/// blocks.
#[derive(Debug, Clone)]
pub struct BlockSensitivityResult {
    pub bs: usize,
    pub witness: Vec<u8>,
    /// Pairwise disjoint position sets, each flipping the function value at
    /// the witness. Sorted within each block.
    pub blocks: Vec<Vec<usize>>,
}

fn check_total_boolean(table: &TruthTable) -> Result<usize> {
    let n = table.positions();
    if table.alphabet_size() != 2 || table.range_size() != 2 || !table.is_total() {
        return Err(Error::arg(
            "block sensitivity needs a total table over bits with a Boolean range",
        ));
    }
    if n > MAX_BS_POSITIONS {
        return Err(Error::arg(format!(
            "block sensitivity supports up to {MAX_BS_POSITIONS} positions, got {n}"
        )));
    }
    Ok(n)
}

fn mask_to_block(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Depth-first maximum disjoint packing with a remaining-count prune.
fn max_disjoint_packing(blocks: &[u32]) -> (usize, Vec<u32>) {
    fn go(
        blocks: &[u32],
        idx: usize,
        used: u32,
        chosen: &mut Vec<u32>,
        best: &mut (usize, Vec<u32>),
    ) {
        if chosen.len() > best.0 {
            *best = (chosen.len(), chosen.clone());
        }
        if idx == blocks.len() || chosen.len() + (blocks.len() - idx) <= best.0 {
            return;
        }
        if blocks[idx] & used == 0 {
            chosen.push(blocks[idx]);
            go(blocks, idx + 1, used | blocks[idx], chosen, best);
            chosen.pop();
        }
        go(blocks, idx + 1, used, chosen, best);
    }
    let mut best = (0, Vec::new());
    let mut chosen = Vec::new();
    // Small blocks first: disjoint families are easiest to grow from them.
    let mut sorted = blocks.to_vec();
    sorted.sort_by_key(|b| b.count_ones());
    go(&sorted, 0, 0, &mut chosen, &mut best);
    best
}

/// Block sensitivity at one input: the maximum number of pairwise disjoint
/// position sets whose joint flip changes the function value.
pub fn block_sensitivity_at(table: &TruthTable, input: &[u8]) -> Result<BlockSensitivityResult> {
    let n = check_total_boolean(table)?;
    if input.len() != n || input.iter().any(|&b| b > 1) {
        return Err(Error::input("witness must be a bit string of table length"));
    }
    let fx = table.value(input).expect("table is total");
    let mut sensitive = Vec::new();
    for mask in 1u32..(1 << n) {
        let flipped: Vec<u8> = (0..n)
            .map(|i| input[i] ^ (mask >> i & 1) as u8)
            .collect();
        if table.value(&flipped).expect("table is total") != fx {
            sensitive.push(mask);
        }
    }
    let (bs, chosen) = max_disjoint_packing(&sensitive);
    Ok(BlockSensitivityResult {
        bs,
        witness: input.to_vec(),
        blocks: chosen.into_iter().map(mask_to_block).collect(),
    })
}

/// Block sensitivity over all inputs, with a witness achieving it.
pub fn block_sensitivity(table: &TruthTable) -> Result<BlockSensitivityResult> {
    let n = check_total_boolean(table)?;
    let mut best: Option<BlockSensitivityResult> = None;
    for input in all_strings(n, 2)? {
        let here = block_sensitivity_at(table, &input)?;
        if best.as_ref().is_none_or(|b| here.bs > b.bs) {
            best = Some(here);
        }
    }
    Ok(best.expect("at least one input"))
}

/// The relation induced by a block sensitivity witness: the witness on one
/// side against its block flips on the other. Parameters `m = bs(f)`,
/// `m' = l = l' = 1`, so the refined bound is `sqrt(bs(f))`.
pub fn bs_relation(table: &TruthTable) -> Result<(AdversaryRelation, BlockSensitivityResult)> {
    let result = block_sensitivity(table)?;
    if result.bs == 0 {
        return Err(Error::DegenerateRelation(
            "constant table has no sensitive blocks".into(),
        ));
    }
    let x = InputAssignment::new(result.witness.clone(), 2)?;
    let mut y_set = Vec::with_capacity(result.bs);
    for block in &result.blocks {
        let mut v = result.witness.clone();
        for &i in block {
            v[i] ^= 1;
        }
        y_set.push(InputAssignment::new(v, 2)?);
    }
    let pairs = (0..y_set.len()).map(|j| (0, j)).collect();
    let relation = AdversaryRelation::new(vec![x], y_set, pairs)?;
    relation.check_separates(table)?;
    Ok((relation, result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::truth_table;

    /// Independent packing oracle: memoized subset recursion over the
    /// still-available position mask.
    fn bs_oracle(table: &TruthTable) -> usize {
        let n = table.positions();
        let value = |mask: u32| -> usize {
            let bits: Vec<u8> = (0..n).map(|i| (mask >> i & 1) as u8).collect();
            table.value(&bits).unwrap()
        };
        fn pack(allowed: u32, sensitive: &[u32], memo: &mut Vec<Option<usize>>) -> usize {
            if let Some(v) = memo[allowed as usize] {
                return v;
            }
            let mut best = 0;
            for &s in sensitive {
                if s & !allowed == 0 {
                    best = best.max(1 + pack(allowed & !s, sensitive, memo));
                }
            }
            memo[allowed as usize] = Some(best);
            best
        }
        let full = (1u32 << n) - 1;
        let mut best = 0;
        for x in 0..=full {
            let fx = value(x);
            let sensitive: Vec<u32> = (1..=full).filter(|&s| value(x ^ s) != fx).collect();
            let mut memo = vec![None; 1 << n];
            best = best.max(pack(full, &sensitive, &mut memo));
        }
        best
    }

    #[test]
    fn known_functions_have_known_sensitivity() {
        let or4 = truth_table::or_table(4).unwrap();
        let r = block_sensitivity(&or4).unwrap();
        assert_eq!(r.bs, 4);
        assert_eq!(r.witness, vec![0, 0, 0, 0]);
        assert_eq!(r.blocks.len(), 4);

        let parity4 = truth_table::parity_table(4).unwrap();
        assert_eq!(block_sensitivity(&parity4).unwrap().bs, 4);

        let maj3 = truth_table::majority_table(3).unwrap();
        assert_eq!(block_sensitivity(&maj3).unwrap().bs, 2);
    }

    #[test]
    fn and_needs_the_all_ones_witness() {
        let mut and2 = TruthTable::new(2, 2, 2).unwrap();
        for s in all_strings(2, 2).unwrap() {
            let v = (s == [1, 1]) as usize;
            and2.define(&s, v).unwrap();
        }
        let r = block_sensitivity(&and2).unwrap();
        assert_eq!(r.bs, 2);
        assert_eq!(r.witness, vec![1, 1]);
    }

    #[test]
    fn packing_respects_disjointness() {
        let or4 = truth_table::or_table(4).unwrap();
        let r = block_sensitivity(&or4).unwrap();
        let mut seen = [false; 4];
        for block in &r.blocks {
            for &i in block {
                assert!(!seen[i], "position {i} reused across blocks");
                seen[i] = true;
            }
        }
    }

    #[test]
    fn matches_independent_oracle_on_all_small_tables() {
        // Every total Boolean table on 2 and 3 positions.
        for n in [2usize, 3] {
            let inputs = all_strings(n, 2).unwrap();
            for code in 0u32..(1 << (1 << n)) {
                let mut table = TruthTable::new(n, 2, 2).unwrap();
                for (i, s) in inputs.iter().enumerate() {
                    table.define(s, (code >> i & 1) as usize).unwrap();
                }
                assert_eq!(
                    block_sensitivity(&table).unwrap().bs,
                    bs_oracle(&table),
                    "table code {code} on {n} positions"
                );
            }
        }
    }

    #[test]
    fn constant_tables_have_no_blocks_and_no_relation() {
        let mut zero = TruthTable::new(3, 2, 2).unwrap();
        for s in all_strings(3, 2).unwrap() {
            zero.define(&s, 0).unwrap();
        }
        let r = block_sensitivity(&zero).unwrap();
        assert_eq!(r.bs, 0);
        assert!(r.blocks.is_empty());
        assert!(matches!(
            bs_relation(&zero),
            Err(crate::Error::DegenerateRelation(_))
        ));
    }

    #[test]
    fn induced_relation_certifies_sqrt_bs() {
        let or4 = truth_table::or_table(4).unwrap();
        let (rel, result) = bs_relation(&or4).unwrap();
        let p = rel.parameters().unwrap();
        assert_eq!(p.min_x_degree, result.bs as u64);
        assert_eq!((p.min_y_degree, p.max_x_flip, p.max_y_flip), (1, 1, 1));
        assert_eq!(p.max_flip_product, 1);
        assert!((p.refined_bound() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_partial_and_wide_tables() {
        let search4 = truth_table::search_table(4).unwrap();
        assert!(block_sensitivity(&search4).is_err());
        let perm = truth_table::permutation_parity_table(3).unwrap();
        assert!(block_sensitivity(&perm).is_err());
    }
}
