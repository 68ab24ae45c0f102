use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use serde::Serialize;

use super::weight::{coordinate_weight, haar_weight, WeightMonomial};
use super::CuspError;
use crate::pencil::CoordId;

pub const DEFAULT_PI_CAP: usize = 12;

/// Coordinate sets whose simultaneous vanishing forces reducibility.
pub const VANISHING_PATTERNS: [&[&str]; 7] = [
    &["a12", "a13", "a14", "a15", "a23", "a24", "a25"],
    &["a12", "a13", "a14", "a23", "a24", "a34"],
    &["a12", "a13", "a14", "a15", "b12", "b13", "b14", "b15"],
    &[
        "a12", "a13", "a14", "a23", "a24", "b12", "b13", "b14", "b23", "b24",
    ],
    &[
        "a12", "a13", "a14", "b12", "b13", "b14", "c12", "c13", "c14",
    ],
    &[
        "a12", "a13", "a23", "b12", "b13", "b23", "c12", "c13", "c23",
    ],
    &["a12", "a13", "b12", "b13", "c12", "c13", "d12", "d13"],
];

pub fn vanishing_pattern(k: usize) -> BTreeSet<CoordId> {
    VANISHING_PATTERNS[k]
        .iter()
        .map(|s| s.parse().expect("static coordinate name"))
        .collect()
}

pub fn reducible_by_vanishing(t0: &BTreeSet<CoordId>) -> bool {
    (0..VANISHING_PATTERNS.len()).any(|k| vanishing_pattern(k).is_subset(t0))
}

/// Minimal elements of T \ T0 under the componentwise order on weights.
pub fn minimal_coordinates(t0: &BTreeSet<CoordId>) -> BTreeSet<CoordId> {
    let rest: Vec<CoordId> = CoordId::all().filter(|c| !t0.contains(c)).collect();
    rest.iter()
        .copied()
        .filter(|&t| {
            let wt = coordinate_weight(t);
            !rest
                .iter()
                .any(|&u| u != t && coordinate_weight(u).le(&wt))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseNode {
    pub label: String,
    pub t0: BTreeSet<CoordId>,
    pub t1: BTreeSet<CoordId>,
    /// Smallest factor found by `find_pi`.
    pub pi: Vec<CoordId>,
    pub bound_numerator: usize,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Atlas {
    pub nodes: Vec<CaseNode>,
    /// (parent, child) index pairs.
    pub edges: Vec<(usize, usize)>,
}

impl Atlas {
    pub fn find(&self, t0: &BTreeSet<CoordId>) -> Option<&CaseNode> {
        self.nodes.iter().find(|n| &n.t0 == t0)
    }

    pub fn children(&self, idx: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|(p, _)| *p == idx)
            .map(|(_, c)| *c)
            .collect()
    }

    pub fn max_depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }
}

/// Exponent of the integrand after removing T0, multiplying by pi, and
/// including the measure factor.
pub fn integrand_weight(t0: &BTreeSet<CoordId>, pi: &[CoordId]) -> WeightMonomial {
    let base: WeightMonomial = CoordId::all()
        .filter(|c| !t0.contains(c))
        .map(coordinate_weight)
        .sum();
    let extra: WeightMonomial = pi.iter().map(|&c| coordinate_weight(c)).sum();
    base + extra + haar_weight()
}

pub fn pi_verifies(t0: &BTreeSet<CoordId>, pi: &[CoordId]) -> bool {
    integrand_weight(t0, pi).s().iter().all(|&e| e < 0)
}

/// Smallest multiset over `t1` making every s-exponent negative; among
/// multisets of equal size the lexicographically first is returned.
pub fn find_pi_with(
    t0: &BTreeSet<CoordId>,
    t1: &BTreeSet<CoordId>,
    cap: usize,
) -> Result<Vec<CoordId>, CuspError> {
    let base = integrand_weight(t0, &[]);
    let items: Vec<(CoordId, [i64; 7])> =
        t1.iter().map(|&c| (c, coordinate_weight(c).s())).collect();
    for size in 0..=cap {
        let mut choice = Vec::with_capacity(size);
        if search(&items, 0, size, base.s(), &mut choice) {
            return Ok(choice);
        }
    }
    Err(CuspError::NoFactorFound)
}

fn search(
    items: &[(CoordId, [i64; 7])],
    start: usize,
    left: usize,
    acc: [i64; 7],
    choice: &mut Vec<CoordId>,
) -> bool {
    if left == 0 {
        return acc.iter().all(|&e| e < 0);
    }
    for k in start..items.len() {
        let next: [i64; 7] = std::array::from_fn(|i| acc[i] + items[k].1[i]);
        choice.push(items[k].0);
        if search(items, k, left - 1, next, choice) {
            return true;
        }
        choice.pop();
    }
    false
}

pub fn find_pi(node: &CaseNode) -> Result<Vec<CoordId>, CuspError> {
    if node.t1.is_empty() {
        return Err(CuspError::NoFactorFound);
    }
    find_pi_with(&node.t0, &node.t1, DEFAULT_PI_CAP)
}

/// Exponent (40 - |T0| + #pi)/40 of the bound, once pi is checked.
pub fn case_bound(node: &CaseNode, pi: &[CoordId]) -> Result<Ratio<i64>, CuspError> {
    if !pi_verifies(&node.t0, pi) {
        return Err(CuspError::FactorFails);
    }
    Ok(Ratio::new(
        (40 - node.t0.len() + pi.len()) as i64,
        40,
    ))
}

fn label_for(depth: usize, pos: usize, count: usize) -> String {
    if count == 1 {
        depth.to_string()
    } else {
        format!("{}{}", depth, (b'a' + pos as u8) as char)
    }
}

/// Breadth-first dissection from T0 = {}, one level per extra vanishing
/// coordinate, pruning reducible patterns and merging equal T0 sets.
pub fn generate_atlas() -> Atlas {
    let mut levels: Vec<Vec<BTreeSet<CoordId>>> = vec![vec![BTreeSet::new()]];
    let mut raw_edges: Vec<(BTreeSet<CoordId>, BTreeSet<CoordId>)> = Vec::new();
    loop {
        let current = levels.last().expect("root level");
        let mut next: BTreeSet<Vec<CoordId>> = BTreeSet::new();
        for t0 in current {
            for t in minimal_coordinates(t0) {
                let mut child = t0.clone();
                child.insert(t);
                if reducible_by_vanishing(&child) {
                    continue;
                }
                raw_edges.push((t0.clone(), child.clone()));
                next.insert(child.into_iter().collect());
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next.into_iter().map(|v| v.into_iter().collect()).collect());
    }

    let mut nodes = Vec::new();
    let mut index: BTreeMap<BTreeSet<CoordId>, usize> = BTreeMap::new();
    for (depth, level) in levels.iter().enumerate() {
        for (pos, t0) in level.iter().enumerate() {
            let t1 = minimal_coordinates(t0);
            let pi = find_pi_with(t0, &t1, DEFAULT_PI_CAP).unwrap_or_default();
            index.insert(t0.clone(), nodes.len());
            nodes.push(CaseNode {
                label: label_for(depth, pos, level.len()),
                bound_numerator: 40 - t0.len() + pi.len(),
                t0: t0.clone(),
                t1,
                pi,
                depth,
            });
        }
    }
    let edges: BTreeSet<(usize, usize)> = raw_edges
        .iter()
        .map(|(p, c)| (index[p], index[c]))
        .collect();
    Atlas {
        nodes,
        edges: edges.into_iter().collect(),
    }
}
