use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::graph::build_graph;
use crate::error::GroupError;
use crate::fg::random::random_endo;
use crate::fg::{endo_string_numbers, Endomorphism, FgGroup};
use crate::linalg::IntMatrix;
use crate::value::StringValue;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const ENUMERATION_LIMIT: u64 = 10_000;
pub const SAMPLES: usize = 500;

/// Every finite abelian group of order at most `max_order`, one per
/// isomorphism class, as invariant-factor chains.
pub fn finite_abelian_groups(max_order: u64) -> Vec<FgGroup> {
    fn extend(chain: &mut Vec<u64>, product: u64, max_order: u64, out: &mut Vec<Vec<u64>>) {
        out.push(chain.clone());
        let start = chain.last().copied().unwrap_or(2);
        let mut d = start;
        while product * d <= max_order {
            if chain.last().is_none_or(|&last| d % last == 0) {
                chain.push(d);
                extend(chain, product * d, max_order, out);
                chain.pop();
            }
            d += 1;
        }
    }
    let mut chains = Vec::new();
    extend(&mut Vec::new(), 1, max_order, &mut chains);
    let mut groups: Vec<FgGroup> = chains
        .into_iter()
        .map(|c| FgGroup::from_orders(&c, 0).expect("orders are at least 2"))
        .collect();
    groups.sort_by(|a, b| {
        (a.torsion_order(), a.invariant_factors()).cmp(&(b.torsion_order(), b.invariant_factors()))
    });
    groups
}

/// `|End(G)| = ∏ gcd(dᵢ, dⱼ)`.
pub fn endomorphism_count(g: &FgGroup) -> Option<BigInt> {
    if !g.is_finite() {
        return None;
    }
    let d = g.invariant_factors();
    Some(
        d.iter()
            .flat_map(|a| d.iter().map(move |b| a.gcd(b)))
            .product(),
    )
}

/// All endomorphisms of a finite group: entry `(i, j)` runs over the multiples
/// of `dᵢ / gcd(dᵢ, dⱼ)` in `[0, dᵢ)`.
pub fn all_endomorphisms(g: &FgGroup) -> Result<Vec<Endomorphism>, GroupError> {
    if !g.is_finite() {
        return Err(GroupError::InfiniteGroup(g.free_rank()));
    }
    let d: Vec<u64> = g
        .invariant_factors()
        .iter()
        .map(|x| x.to_u64().expect("small"))
        .collect();
    let k = d.len();
    let choices: Vec<(u64, u64)> = (0..k * k)
        .map(|idx| {
            let (i, j) = (idx / k, idx % k);
            let gcd = d[i].gcd(&d[j]);
            (d[i] / gcd, gcd)
        })
        .collect();
    let mut out = Vec::new();
    let mut counter = vec![0u64; k * k];
    loop {
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| (counter[i * k + j] * choices[i * k + j].0) as i64)
                    .collect()
            })
            .collect();
        out.push(Endomorphism::new(g, &IntMatrix::from_rows(&rows))?);
        let mut pos = 0;
        loop {
            if pos == k * k {
                return Ok(out);
            }
            counter[pos] += 1;
            if counter[pos] < choices[pos].1 {
                break;
            }
            counter[pos] = 0;
            pos += 1;
        }
    }
}

/// Result of comparing the exact procedures with the brute-force graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub core_matches_eventual_image: bool,
    pub verdict_all_zero: bool,
    pub no_string: bool,
    pub periodic_points_permuted: bool,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.core_matches_eventual_image
            && self.verdict_all_zero
            && self.no_string
            && self.periodic_points_permuted
    }
}

pub fn cross_check(g: &FgGroup, phi: &Endomorphism) -> Result<CrossCheck, GroupError> {
    let graph = build_graph(g, phi)?;
    let verdict = endo_string_numbers(phi);
    let eventual = graph.eventual_image();
    let core_matches_eventual_image = (0..graph.len())
        .all(|x| verdict.surjective_core.contains(&graph.element(x)) == eventual[x]);
    let zero = StringValue::Zero;
    let search = graph.string_search(graph.len());
    Ok(CrossCheck {
        core_matches_eventual_image,
        verdict_all_zero: verdict.triple() == (zero, zero, zero),
        no_string: !search.string_exists && search.longest_chain <= graph.len(),
        periodic_points_permuted: graph.permutes_periodic_points(),
    })
}

/// `true` iff the exact procedures agree with the graph and find no strings.
pub fn oracle_cross_check(g: &FgGroup, phi: &Endomorphism) -> bool {
    cross_check(g, phi).map(|c| c.passed()).unwrap_or(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSweep {
    pub group: String,
    pub order: u64,
    pub endomorphism_count: String,
    pub mode: SweepMode,
    pub checked: usize,
    pub confirmed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub max_order: u64,
    pub seed: u64,
    pub groups_visited: usize,
    pub endos_checked: usize,
    pub confirmations: usize,
    pub mismatches: Vec<String>,
    pub groups: Vec<GroupSweep>,
}

/// Cross-checks every endomorphism of every group of order `≤ max_order`
/// (or `SAMPLES` seeded samples when there are more than `ENUMERATION_LIMIT`).
pub fn sweep(max_order: u64, seed: u64) -> SweepReport {
    let groups = finite_abelian_groups(max_order);
    let results: Vec<(GroupSweep, Vec<String>)> = groups
        .par_iter()
        .enumerate()
        .map(|(gi, g)| {
            let count = endomorphism_count(g).expect("finite");
            let (mode, endos) = if count <= BigInt::from(ENUMERATION_LIMIT) {
                (SweepMode::Exhaustive, all_endomorphisms(g).expect("finite"))
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(
                    seed ^ (gi as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15),
                );
                let endos = (0..SAMPLES).map(|_| random_endo(&mut rng, g, 0)).collect();
                (SweepMode::Sampled, endos)
            };
            let mismatches: Vec<String> = endos
                .par_iter()
                .filter_map(|phi| match cross_check(g, phi) {
                    Ok(c) if c.passed() => None,
                    Ok(c) => Some(format!("{} with matrix {}: {:?}", g, phi.matrix(), c)),
                    Err(e) => Some(format!("{} with matrix {}: {}", g, phi.matrix(), e)),
                })
                .collect();
            let summary = GroupSweep {
                group: g.to_string(),
                order: g.torsion_order().to_u64().expect("small"),
                endomorphism_count: count.to_string(),
                mode,
                checked: endos.len(),
                confirmed: endos.len() - mismatches.len(),
            };
            (summary, mismatches)
        })
        .collect();
    let mut report = SweepReport {
        max_order,
        seed,
        groups_visited: results.len(),
        endos_checked: 0,
        confirmations: 0,
        mismatches: Vec::new(),
        groups: Vec::new(),
    };
    for (summary, mismatches) in results {
        report.endos_checked += summary.checked;
        report.confirmations += summary.confirmed;
        report.mismatches.extend(mismatches);
        report.groups.push(summary);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphism_classes() {
        let count_of = |n: u64| {
            finite_abelian_groups(n)
                .iter()
                .filter(|g| g.torsion_order() == BigInt::from(n))
                .count()
        };
        // partitions of the exponents: 16 → 5, 8 → 3, 12 → 2, 32 → 7, 1 → 1
        assert_eq!(count_of(16), 5);
        assert_eq!(count_of(8), 3);
        assert_eq!(count_of(12), 2);
        assert_eq!(count_of(1), 1);
        assert_eq!(
            finite_abelian_groups(32)
                .iter()
                .filter(|g| g.torsion_order() == BigInt::from(32))
                .count(),
            7
        );
    }

    #[test]
    fn enumeration_matches_hom_count() {
        for orders in [&[2u64, 4][..], &[3, 3], &[2, 2, 2], &[6]] {
            let g = FgGroup::from_orders(orders, 0).unwrap();
            let all = all_endomorphisms(&g).unwrap();
            assert_eq!(BigInt::from(all.len()), endomorphism_count(&g).unwrap());
            let mut dedup = all.clone();
            dedup.sort_by_key(|e| e.matrix().to_string());
            dedup.dedup();
            assert_eq!(dedup.len(), all.len());
        }
    }

    #[test]
    fn examples_cross_check() {
        let z4 = FgGroup::from_orders(&[4], 0).unwrap();
        assert!(oracle_cross_check(&z4, &Endomorphism::scalar(&z4, 2)));
        let z6 = FgGroup::from_orders(&[6], 0).unwrap();
        assert!(oracle_cross_check(&z6, &Endomorphism::identity(&z6)));
        let z2cubed = FgGroup::from_orders(&[2, 2, 2], 0).unwrap();
        for phi in all_endomorphisms(&z2cubed).unwrap().iter().step_by(37) {
            assert!(oracle_cross_check(&z2cubed, phi));
        }
    }

    #[test]
    fn small_sweep() {
        let r = sweep(8, DEFAULT_SEED);
        assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
        assert_eq!(r.confirmations, r.endos_checked);
        assert_eq!(r.groups_visited, finite_abelian_groups(8).len());
    }
}
