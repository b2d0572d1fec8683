use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{DynkinError, Result};
use crate::lattice::{Dp2Lattice, LatticeClass};

struct RootGraph {
    roots: &'static [LatticeClass],
    dots: Vec<Vec<i64>>,
    /// For each root, the roots meeting it with intersection 1, in lexicographic order.
    neighbors: Vec<Vec<usize>>,
}

fn root_graph() -> &'static RootGraph {
    static GRAPH: OnceLock<RootGraph> = OnceLock::new();
    GRAPH.get_or_init(|| {
        let roots = Dp2Lattice.roots();
        let dots: Vec<Vec<i64>> = roots
            .iter()
            .map(|a| roots.iter().map(|b| a.dot(b)).collect())
            .collect();
        let neighbors = dots
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &d)| d == 1)
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        RootGraph {
            roots,
            dots,
            neighbors,
        }
    })
}

fn check_length(n: usize) -> Result<()> {
    if (1..=7).contains(&n) {
        Ok(())
    } else {
        Err(DynkinError::InvalidInput(format!(
            "chain length must be in 1..=7, got {n}"
        )))
    }
}

/// Whether the classes are roots forming an A_n chain: consecutive ones meet
/// once, all others are orthogonal.
pub fn is_chain(chain: &[LatticeClass]) -> bool {
    let lat = Dp2Lattice;
    chain.iter().all(|r| lat.is_root(r))
        && chain.iter().enumerate().all(|(j, a)| {
            chain
                .iter()
                .enumerate()
                .skip(j + 1)
                .all(|(k, b)| a.dot(b) == i64::from(k == j + 1))
        })
}

/// Lazy depth-first enumeration of ordered A_n chains of roots.
///
/// Chains come out in lexicographic order of their root indices. The counts grow
/// quickly (1 935 360 ordered A₅ chains), so prefer iterating over collecting.
pub struct ChainEmbeddings {
    n: usize,
    chain: Vec<usize>,
    cursors: Vec<usize>,
    all: Vec<usize>,
}

pub fn chain_embeddings(n: usize) -> Result<ChainEmbeddings> {
    check_length(n)?;
    let g = root_graph();
    Ok(ChainEmbeddings {
        n,
        chain: Vec::with_capacity(n),
        cursors: vec![0; n],
        all: (0..g.roots.len()).collect(),
    })
}

/// All ordered A_n chains, collected. Memory heavy for `n ≥ 5`.
pub fn find_chain_embeddings(n: usize) -> Result<Vec<Vec<LatticeClass>>> {
    Ok(chain_embeddings(n)?.collect())
}

impl Iterator for ChainEmbeddings {
    type Item = Vec<LatticeClass>;

    fn next(&mut self) -> Option<Self::Item> {
        let g = root_graph();
        loop {
            let depth = self.chain.len();
            if depth == self.n {
                let out = self.chain.iter().map(|&i| g.roots[i]).collect();
                self.chain.pop();
                return Some(out);
            }
            let cands: &[usize] = if depth == 0 {
                &self.all
            } else {
                &g.neighbors[self.chain[depth - 1]]
            };
            let mut extended = false;
            while self.cursors[depth] < cands.len() {
                let j = cands[self.cursors[depth]];
                self.cursors[depth] += 1;
                let fits = depth == 0 || self.chain[..depth - 1].iter().all(|&k| g.dots[k][j] == 0);
                if fits {
                    self.chain.push(j);
                    if depth + 1 < self.n {
                        self.cursors[depth + 1] = 0;
                    }
                    extended = true;
                    break;
                }
            }
            if !extended {
                if depth == 0 {
                    return None;
                }
                self.chain.pop();
            }
        }
    }
}

/// A uniformly started random walk that extends a chain one root at a time,
/// restarting on dead ends.
pub fn sample_chain_embedding<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<Vec<LatticeClass>> {
    check_length(n)?;
    let g = root_graph();
    loop {
        let mut chain = vec![rng.gen_range(0..g.roots.len())];
        while chain.len() < n {
            let last = *chain.last().unwrap();
            let options: Vec<usize> = g.neighbors[last]
                .iter()
                .copied()
                .filter(|&j| chain[..chain.len() - 1].iter().all(|&k| g.dots[k][j] == 0))
                .collect();
            match options.choose(rng) {
                Some(&j) => chain.push(j),
                None => break,
            }
        }
        if chain.len() == n {
            return Ok(chain.into_iter().map(|i| g.roots[i]).collect());
        }
    }
}
