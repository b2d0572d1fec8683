use crate::error::{FibrationError, Result};
use crate::model::FiberKind;

/// Dual graph of a candidate fiber: self-intersections and simple edges.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiberGraph {
    pub self_ints: Vec<i64>,
    pub edges: Vec<(usize, usize)>,
}

impl FiberGraph {
    fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.self_ints.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }
}

fn reject(msg: impl Into<String>) -> FibrationError {
    FibrationError::NotAFiber(msg.into())
}

/// Walks from `start` away from `from` until a leaf, returning the visited vertices.
fn arm(adj: &[Vec<usize>], from: usize, start: usize) -> Result<Vec<usize>> {
    let mut out = vec![start];
    let (mut prev, mut cur) = (from, start);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&x| x != prev).collect();
        match next.as_slice() {
            [] => return Ok(out),
            [n] => {
                prev = cur;
                cur = *n;
                out.push(cur);
            }
            _ => return Err(reject("branching away from the centre")),
        }
    }
}

/// Classifies a fiber graph, `section` being the vertex meeting the section.
///
/// Accepts exactly the shapes I-1, I-2 and II of (−1)- and (−2)-curves with
/// the section meeting a multiplicity-1 end (I-1, II) or the root (I-2).
pub fn classify_fiber_graph(graph: &FiberGraph, section: usize) -> Result<FiberKind> {
    let n = graph.self_ints.len();
    if n < 2 {
        return Err(reject("fewer than two components"));
    }
    if section >= n {
        return Err(reject("section vertex out of range"));
    }
    if let Some(s) = graph.self_ints.iter().find(|&&s| s != -1 && s != -2) {
        return Err(reject(format!("component of self-intersection {s}")));
    }
    let mut seen_edges = std::collections::BTreeSet::new();
    for &(a, b) in &graph.edges {
        if a >= n || b >= n || a == b || !seen_edges.insert((a.min(b), a.max(b))) {
            return Err(reject("edges must be simple and distinct"));
        }
    }
    if graph.edges.len() + 1 != n {
        return Err(reject("not a tree"));
    }
    let adj = graph.neighbors();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(reject("not connected"));
    }
    let minus_one = |v: usize| graph.self_ints[v] == -1;
    let centres: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    match centres.as_slice() {
        [] => {
            let ends: Vec<usize> = (0..n).filter(|&v| adj[v].len() == 1).collect();
            let path = arm(&adj, usize::MAX, ends[0])?;
            let interior_ok = path[1..n - 1].iter().all(|&v| !minus_one(v));
            if minus_one(path[0]) && minus_one(path[n - 1]) && interior_ok {
                return Ok(if adj[section].len() == 1 {
                    FiberKind::I1
                } else {
                    FiberKind::I2
                });
            }
            let shape: Vec<bool> = path.iter().map(|&v| minus_one(v)).collect();
            if shape == [false, true, false] && adj[section].len() == 1 {
                return Ok(FiberKind::II);
            }
            Err(reject("chain without (−1)-curves in a fiber position"))
        }
        [c] if adj[*c].len() == 3 && !minus_one(*c) => {
            let arms = adj[*c]
                .iter()
                .map(|&s| arm(&adj, *c, s))
                .collect::<Result<Vec<_>>>()?;
            let leaves: Vec<&Vec<usize>> = arms
                .iter()
                .filter(|a| a.len() == 1 && !minus_one(a[0]))
                .collect();
            let tails: Vec<&Vec<usize>> = arms
                .iter()
                .filter(|a| {
                    let last = a.len() - 1;
                    minus_one(a[last]) && a[..last].iter().all(|&v| !minus_one(v))
                })
                .collect();
            if leaves.len() >= 2 && tails.len() == 1 && tails[0].len() + leaves.len() == n - 1 {
                if leaves.iter().any(|l| l[0] == section) {
                    return Ok(FiberKind::II);
                }
                return Err(reject("section does not meet a multiplicity-1 leaf"));
            }
            Err(reject("branch point with the wrong arms"))
        }
        _ => Err(reject("more than one branch point")),
    }
}
