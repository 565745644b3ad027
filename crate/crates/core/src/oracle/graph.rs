use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::GroupError;
use crate::fg::{Endomorphism, FgGroup, GroupElement};

/// Successor and preimage structure of an endomorphism of a finite group.
/// Elements are indexed in mixed radix over the invariant factors.
#[derive(Clone, Debug)]
pub struct FunctionalGraph {
    group: FgGroup,
    radices: Vec<u64>,
    elements: Vec<Vec<u64>>,
    successor: Vec<usize>,
    preimages: Vec<Vec<usize>>,
}

fn encode(radices: &[u64], coords: &[u64]) -> usize {
    coords
        .iter()
        .zip(radices)
        .fold(0u64, |acc, (c, d)| acc * d + c) as usize
}

fn decode(radices: &[u64], mut index: usize) -> Vec<u64> {
    let mut out = vec![0u64; radices.len()];
    for (slot, d) in out.iter_mut().zip(radices).rev() {
        *slot = index as u64 % d;
        index /= *d as usize;
    }
    out
}

pub fn build_graph(g: &FgGroup, phi: &Endomorphism) -> Result<FunctionalGraph, GroupError> {
    if !g.is_finite() {
        return Err(GroupError::InfiniteGroup(g.free_rank()));
    }
    if phi.group() != g {
        return Err(GroupError::GroupMismatch);
    }
    let radices: Vec<u64> = g
        .invariant_factors()
        .iter()
        .map(|d| d.to_u64().expect("finite oracle groups are small"))
        .collect();
    let k = radices.len();
    let m: Vec<Vec<u64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| phi.matrix()[(i, j)].to_u64().expect("reduced entries"))
                .collect()
        })
        .collect();
    let size: u64 = radices.iter().product();
    let size = size as usize;
    let elements: Vec<Vec<u64>> = (0..size).map(|x| decode(&radices, x)).collect();
    let successor: Vec<usize> = elements
        .iter()
        .map(|x| {
            let image: Vec<u64> = (0..k)
                .map(|i| {
                    let d = radices[i] as u128;
                    let s: u128 = (0..k).map(|j| m[i][j] as u128 * x[j] as u128).sum();
                    (s % d) as u64
                })
                .collect();
            encode(&radices, &image)
        })
        .collect();
    let mut preimages = vec![Vec::new(); size];
    for (x, &y) in successor.iter().enumerate() {
        preimages[y].push(x);
    }
    Ok(FunctionalGraph {
        group: g.clone(),
        radices,
        elements,
        successor,
        preimages,
    })
}

/// Outcome of the exhaustive backward search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StringSearch {
    pub group_order: usize,
    /// Longest backward chain `x₀ ← x₁ ← …` with pairwise distinct members.
    pub longest_chain: usize,
    /// One chain of that length, `x₀` first.
    pub example: Vec<String>,
    /// Every pseudostring with more than `longest_chain` members repeats an element.
    pub string_exists: bool,
    pub max_depth: usize,
    /// A pseudostring of `max_depth + 1` members exists, necessarily with repeats.
    pub pseudostring_at_depth_repeats: bool,
}

impl FunctionalGraph {
    pub fn group(&self) -> &FgGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.successor.len()
    }

    pub fn is_empty(&self) -> bool {
        self.successor.is_empty()
    }

    pub fn successor(&self, x: usize) -> usize {
        self.successor[x]
    }

    pub fn preimages(&self, x: usize) -> &[usize] {
        &self.preimages[x]
    }

    pub fn index_of(&self, e: &GroupElement) -> usize {
        let coords: Vec<u64> = e
            .coords()
            .iter()
            .map(|c| c.to_u64().expect("reduced"))
            .collect();
        encode(&self.radices, &coords)
    }

    pub fn element(&self, x: usize) -> GroupElement {
        let coords: Vec<i64> = self.elements[x].iter().map(|&c| c as i64).collect();
        self.group.element_i64(&coords).expect("dimension agrees")
    }

    pub fn coords(&self, x: usize) -> &[u64] {
        &self.elements[x]
    }

    fn render(&self, x: usize) -> String {
        self.element(x).to_string()
    }

    /// `⋂ φⁿ(G)`, as a membership mask.
    pub fn eventual_image(&self) -> Vec<bool> {
        let mut current = vec![true; self.len()];
        loop {
            let mut next = vec![false; self.len()];
            for (x, &alive) in current.iter().enumerate() {
                if alive {
                    next[self.successor[x]] = true;
                }
            }
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// Nodes lying on cycles.
    pub fn periodic_points(&self) -> Vec<bool> {
        let n = self.len();
        // 0 = unvisited, 1 = on the current path, 2 = finished
        let mut state = vec![0u8; n];
        let mut on_cycle = vec![false; n];
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut path = Vec::new();
            let mut x = start;
            while state[x] == 0 {
                state[x] = 1;
                path.push(x);
                x = self.successor[x];
            }
            if state[x] == 1 {
                let pos = path.iter().position(|&y| y == x).expect("x is on the path");
                for &y in &path[pos..] {
                    on_cycle[y] = true;
                }
            }
            for y in path {
                state[y] = 2;
            }
        }
        on_cycle
    }

    pub fn kernel_elements(&self) -> Vec<bool> {
        self.successor.iter().map(|&y| y == 0).collect()
    }

    /// Members of a mask, as group elements.
    pub fn collect(&self, mask: &[bool]) -> Vec<GroupElement> {
        mask.iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(x, _)| self.element(x))
            .collect()
    }

    /// Number of distinct nodes on the forward orbit of `x`.
    fn rho_length(&self, x: usize) -> usize {
        let mut seen = vec![false; self.len()];
        let mut y = x;
        let mut count = 0;
        while !seen[y] {
            seen[y] = true;
            count += 1;
            y = self.successor[y];
        }
        count
    }

    /// A repetition-free backward chain `x₀ ← … ← x_m` read off a forward orbit
    /// is the orbit of `x_m` up to its first repeat, so the longest one has the
    /// length of the longest such orbit, which is at most `|G|`.
    pub fn string_search(&self, max_depth: usize) -> StringSearch {
        let (best_start, longest) = (0..self.len())
            .map(|x| (x, self.rho_length(x)))
            .max_by_key(|&(x, l)| (l, std::cmp::Reverse(x)))
            .unwrap_or((0, 0));
        let mut forward = Vec::with_capacity(longest);
        let mut y = best_start;
        for _ in 0..longest {
            forward.push(y);
            y = self.successor[y];
        }
        forward.reverse();
        StringSearch {
            group_order: self.len(),
            longest_chain: longest,
            example: forward.iter().map(|&x| self.render(x)).collect(),
            string_exists: longest > self.len(),
            max_depth,
            pseudostring_at_depth_repeats: max_depth + 1 > longest,
        }
    }

    /// `φ` maps the periodic points bijectively onto themselves.
    pub fn permutes_periodic_points(&self) -> bool {
        let per = self.periodic_points();
        let mut hit = vec![false; self.len()];
        for x in (0..self.len()).filter(|&x| per[x]) {
            let y = self.successor[x];
            if !per[y] || hit[y] {
                return false;
            }
            hit[y] = true;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(orders: &[u64], m: &[&[i64]]) -> FunctionalGraph {
        let g = FgGroup::from_orders(orders, 0).unwrap();
        build_graph(&g, &Endomorphism::from_rows(&g, m).unwrap()).unwrap()
    }

    fn indices(mask: &[bool]) -> Vec<usize> {
        mask.iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| i)
            .collect()
    }

    #[test]
    fn small_graphs() {
        let g = graph(&[2], &[&[1]]);
        assert_eq!((g.successor(0), g.successor(1)), (0, 1));

        let g = graph(&[4], &[&[2]]);
        assert_eq!(
            (0..4).map(|x| g.successor(x)).collect::<Vec<_>>(),
            vec![0, 2, 0, 2]
        );
        assert_eq!(g.preimages(2), &[1, 3]);
        assert_eq!(indices(&g.eventual_image()), vec![0]);
        assert_eq!(indices(&g.periodic_points()), vec![0]);
        assert_eq!(indices(&g.kernel_elements()), vec![0, 2]);
        let s = g.string_search(10);
        assert_eq!(s.longest_chain, 3);
        assert_eq!(s.example, vec!["(0)", "(2)", "(1)"]);
        assert!(!s.string_exists);

        let g = graph(&[3, 3], &[&[0, 0], &[0, 0]]);
        assert_eq!(g.len(), 9);
        assert!((0..9).all(|x| g.successor(x) == 0));
    }

    #[test]
    fn invertible_maps() {
        let g = graph(&[6], &[&[1]]);
        assert_eq!(indices(&g.eventual_image()).len(), 6);
        assert_eq!(indices(&g.periodic_points()).len(), 6);
        let g = graph(&[3], &[&[2]]);
        assert!(g.eventual_image().iter().all(|&b| b));
        assert!(g.periodic_points().iter().all(|&b| b));
        assert!(g.permutes_periodic_points());
    }

    #[test]
    fn infinite_groups_rejected() {
        let z = FgGroup::free(1);
        assert!(build_graph(&z, &Endomorphism::identity(&z)).is_err());
    }
}
