use std::collections::VecDeque;

use super::pairing::{blocks_cross, Pairing};

/// One connected component: the points it occupies and the component itself
/// relabelled onto `{1, ..., support.len()}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub support: Vec<usize>,
    pub component: Pairing,
}

/// Connected components of a pairing, ordered by smallest point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: Vec<Component>,
}

impl Decomposition {
    /// Rebuilds the original pairing from the components.
    pub fn reassemble(&self) -> Pairing {
        let mut blocks: Vec<(usize, usize)> = self
            .parts
            .iter()
            .flat_map(|part| {
                part.component
                    .blocks()
                    .iter()
                    .map(|&(a, b)| (part.support[a - 1], part.support[b - 1]))
            })
            .collect();
        blocks.sort_unstable();
        Pairing::from_canonical(blocks)
    }

    /// `(half-size, crossings)` of each component.
    pub fn types(&self) -> Vec<(usize, usize)> {
        self.parts
            .iter()
            .map(|p| (p.component.n(), super::crossing_number(&p.component)))
            .collect()
    }
}

fn crossing_graph(p: &Pairing) -> Vec<Vec<usize>> {
    let b = p.blocks();
    let mut adj = vec![Vec::new(); b.len()];
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if blocks_cross(b[i], b[j]) {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    adj
}

fn components_of(p: &Pairing) -> Vec<Vec<usize>> {
    let adj = crossing_graph(p);
    let mut label = vec![usize::MAX; adj.len()];
    let mut comps = Vec::new();
    for start in 0..adj.len() {
        if label[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![start];
        label[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if label[v] == usize::MAX {
                    label[v] = id;
                    members.push(v);
                    queue.push_back(v);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps
}

/// True when the chord-crossing graph is connected.
pub fn is_connected(p: &Pairing) -> bool {
    components_of(p).len() == 1
}

/// Splits a pairing into the connected components of its crossing graph.
pub fn decompose(p: &Pairing) -> Decomposition {
    let blocks = p.blocks();
    let parts: Vec<Component> = components_of(p)
        .into_iter()
        .map(|members| {
            let mut support: Vec<usize> = members
                .iter()
                .flat_map(|&i| [blocks[i].0, blocks[i].1])
                .collect();
            support.sort_unstable();
            let local = |x: usize| support.binary_search(&x).unwrap() + 1;
            let relabelled = members
                .iter()
                .map(|&i| (local(blocks[i].0), local(blocks[i].1)))
                .collect();
            Component {
                component: Pairing::from_canonical(relabelled),
                support,
            }
        })
        .collect();
    let supports: Vec<&[usize]> = parts.iter().map(|c| c.support.as_slice()).collect();
    assert!(
        is_noncrossing(&supports),
        "component supports of {p} interleave"
    );
    Decomposition { parts }
}

/// True when no two blocks interleave as `x < y < x' < y'`.
pub fn is_noncrossing(blocks: &[&[usize]]) -> bool {
    let mut label = Vec::new();
    for (id, block) in blocks.iter().enumerate() {
        label.extend(block.iter().map(|&x| (x, id)));
    }
    label.sort_unstable();
    for a in 0..blocks.len() {
        for b in a + 1..blocks.len() {
            let runs = label
                .iter()
                .filter(|(_, id)| *id == a || *id == b)
                .map(|&(_, id)| id)
                .fold(Vec::new(), |mut runs: Vec<usize>, id| {
                    if runs.last() != Some(&id) {
                        runs.push(id);
                    }
                    runs
                });
            if runs.len() > 3 {
                return false;
            }
        }
    }
    true
}
