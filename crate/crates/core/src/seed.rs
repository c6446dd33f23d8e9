//! Seeds and matrix mutation.
//!
//! A seed is a finite index set with a frozen subset and a skew-symmetric
//! integer exchange matrix. Index labels are opaque strings, never
//! positions: seeds derived from surfaces need stable geometric labels, and
//! mutation never renames.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeedError {
    #[error("duplicate index label {0:?}")]
    DuplicateIndex(String),
    #[error("frozen label {0:?} is not an index")]
    FrozenNotIndex(String),
    #[error("exchange matrix is {rows}x{cols}, expected {n}x{n}")]
    BadShape { rows: usize, cols: usize, n: usize },
    #[error("exchange matrix is not skew-symmetric at ({i}, {j})")]
    NotSkewSymmetric { i: usize, j: usize },
    #[error("unknown index {0:?}")]
    UnknownIndex(String),
    #[error("cannot mutate at frozen index {0:?}")]
    FrozenMutation(String),
}

/// Seed: ordered index labels, frozen subset, skew-symmetric exchange
/// matrix indexed by label position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seed {
    indices: Vec<String>,
    frozen: BTreeSet<String>,
    eps: Vec<Vec<i64>>,
}

impl Seed {
    pub fn new<I, S, F, T>(indices: I, frozen: F, eps: Vec<Vec<i64>>) -> Result<Self, SeedError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        F: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let indices: Vec<String> = indices.into_iter().map(Into::into).collect();
        let frozen: BTreeSet<String> = frozen.into_iter().map(Into::into).collect();
        let seed = Seed {
            indices,
            frozen,
            eps,
        };
        seed.validate()?;
        Ok(seed)
    }

    /// Seed with indices "1".."n", no frozen indices.
    pub fn unfrozen(eps: Vec<Vec<i64>>) -> Result<Self, SeedError> {
        let n = eps.len();
        Self::new(
            (1..=n).map(|i| i.to_string()),
            Vec::<String>::new(),
            eps,
        )
    }

    /// The A2 seed with exchange matrix [[0,1],[-1,0]].
    pub fn a2() -> Self {
        Self::unfrozen(vec![vec![0, 1], vec![-1, 0]]).unwrap()
    }

    /// The A3 seed with the path orientation 1 -> 2 -> 3.
    pub fn a3() -> Self {
        Self::unfrozen(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap()
    }

    pub fn validate(&self) -> Result<(), SeedError> {
        let n = self.indices.len();
        let mut seen = BTreeSet::new();
        for label in &self.indices {
            if !seen.insert(label) {
                return Err(SeedError::DuplicateIndex(label.clone()));
            }
        }
        for f in &self.frozen {
            if !seen.contains(f) {
                return Err(SeedError::FrozenNotIndex(f.clone()));
            }
        }
        if self.eps.len() != n || self.eps.iter().any(|r| r.len() != n) {
            return Err(SeedError::BadShape {
                rows: self.eps.len(),
                cols: self.eps.first().map(|r| r.len()).unwrap_or(0),
                n,
            });
        }
        for i in 0..n {
            for j in 0..=i {
                if self.eps[i][j] != -self.eps[j][i] {
                    return Err(SeedError::NotSkewSymmetric { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[String] {
        &self.indices
    }

    pub fn frozen(&self) -> &BTreeSet<String> {
        &self.frozen
    }

    pub fn is_frozen(&self, label: &str) -> bool {
        self.frozen.contains(label)
    }

    /// Non-frozen labels in index order (the set J).
    pub fn non_frozen(&self) -> impl Iterator<Item = &String> {
        self.indices.iter().filter(|l| !self.frozen.contains(*l))
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.indices.iter().position(|l| l == label)
    }

    pub fn eps_at(&self, i: usize, j: usize) -> i64 {
        self.eps[i][j]
    }

    pub fn eps(&self, i: &str, j: &str) -> Result<i64, SeedError> {
        let pi = self
            .position(i)
            .ok_or_else(|| SeedError::UnknownIndex(i.to_string()))?;
        let pj = self
            .position(j)
            .ok_or_else(|| SeedError::UnknownIndex(j.to_string()))?;
        Ok(self.eps[pi][pj])
    }

    pub fn matrix(&self) -> &Vec<Vec<i64>> {
        &self.eps
    }

    /// Matrix mutation in the direction `k`: entries touching `k` flip sign,
    /// the rest pick up `(|e_ik| e_kj + e_ik |e_kj|) / 2`. The numerator is
    /// always even; this is asserted rather than truncated so sign errors
    /// cannot slip through as off-by-one matrices.
    pub fn mutate(&self, k: &str) -> Result<Seed, SeedError> {
        let kp = self
            .position(k)
            .ok_or_else(|| SeedError::UnknownIndex(k.to_string()))?;
        if self.is_frozen(k) {
            return Err(SeedError::FrozenMutation(k.to_string()));
        }
        let n = self.size();
        let mut eps = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                eps[i][j] = if i == kp || j == kp {
                    -self.eps[i][j]
                } else {
                    let t = self.eps[i][kp].abs() * self.eps[kp][j]
                        + self.eps[i][kp] * self.eps[kp][j].abs();
                    assert!(t % 2 == 0, "mutation numerator must be even");
                    self.eps[i][j] + t / 2
                };
            }
        }
        let out = Seed {
            indices: self.indices.clone(),
            frozen: self.frozen.clone(),
            eps,
        };
        debug_assert!(out.validate().is_ok());
        Ok(out)
    }

    /// Left-to-right composition of mutations.
    pub fn mutate_sequence<'a, I>(&self, ks: I) -> Result<Seed, SeedError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut s = self.clone();
        for k in ks {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Canonical form under index permutations that fix the frozen/non-frozen
    /// split: the lexicographically minimal flattened matrix, with all
    /// non-frozen indices listed first. Exponential worst case, fine at desk
    /// scale.
    pub fn canonical_form(&self) -> CanonicalSeed {
        // Stable block reorder: non-frozen first.
        let mut order: Vec<usize> = (0..self.size())
            .filter(|&i| !self.frozen.contains(&self.indices[i]))
            .collect();
        let split = order.len();
        order.extend((0..self.size()).filter(|&i| self.frozen.contains(&self.indices[i])));

        let base: Vec<Vec<i64>> = order
            .iter()
            .map(|&i| order.iter().map(|&j| self.eps[i][j]).collect())
            .collect();

        let n = self.size();
        let mut best: Option<Vec<i64>> = None;
        let mut best_perm: Vec<usize> = (0..n).collect();
        // DFS over block-respecting permutations with prefix pruning:
        // perm[new_pos] = old_pos (into `base`).
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn flat_row(base: &[Vec<i64>], perm: &[usize], row: usize, upto: usize) -> Vec<i64> {
            (0..upto).map(|c| base[perm[row]][perm[c]]).collect()
        }
        fn dfs(
            base: &[Vec<i64>],
            split: usize,
            n: usize,
            pos: usize,
            perm: &mut Vec<usize>,
            used: &mut Vec<bool>,
            best: &mut Option<Vec<i64>>,
            best_perm: &mut Vec<usize>,
        ) {
            if pos == n {
                let flat: Vec<i64> = (0..n)
                    .flat_map(|r| flat_row(base, perm, r, n))
                    .collect();
                if best.as_ref().map(|b| flat < *b).unwrap_or(true) {
                    *best = Some(flat);
                    *best_perm = perm.clone();
                }
                return;
            }
            let candidates: Vec<usize> = if pos < split {
                (0..split).filter(|&c| !used[c]).collect()
            } else {
                (split..n).filter(|&c| !used[c]).collect()
            };
            for c in candidates {
                perm[pos] = c;
                used[c] = true;
                // Prune: compare the square prefix against the incumbent.
                let ok = match best {
                    None => true,
                    Some(b) => {
                        let mut cmp = std::cmp::Ordering::Equal;
                        'outer: for r in 0..=pos {
                            for cc in 0..=pos {
                                let mine = base[perm[r]][perm[cc]];
                                let theirs = b[r * n + cc];
                                cmp = mine.cmp(&theirs);
                                if cmp != std::cmp::Ordering::Equal {
                                    break 'outer;
                                }
                            }
                        }
                        cmp != std::cmp::Ordering::Greater
                    }
                };
                if ok {
                    dfs(base, split, n, pos + 1, perm, used, best, best_perm);
                }
                used[c] = false;
                perm[pos] = usize::MAX;
            }
        }
        dfs(
            &base,
            split,
            n,
            0,
            &mut perm,
            &mut used,
            &mut best,
            &mut best_perm,
        );
        let best_flat = best.unwrap_or_default();
        CanonicalSeed {
            non_frozen: split,
            size: n,
            matrix: best_flat,
        }
    }

    /// Breadth-first exploration of the mutation class up to
    /// index-permutation isomorphism. Stops after `max_nodes` distinct
    /// canonical forms and sets the truncation flag.
    pub fn mutation_class(&self, max_nodes: usize) -> MutationClassGraph {
        assert!(max_nodes >= 1, "max_nodes must be at least 1");
        let mut nodes: Vec<Seed> = Vec::new();
        let mut keys: Vec<CanonicalSeed> = Vec::new();
        let mut edges: Vec<MutationEdge> = Vec::new();
        let mut queue = VecDeque::new();
        let mut truncated = false;

        let start_key = self.canonical_form();
        keys.push(start_key);
        nodes.push(self.clone());
        queue.push_back(0usize);

        while let Some(at) = queue.pop_front() {
            let seed = nodes[at].clone();
            let labels: Vec<String> = seed.non_frozen().cloned().collect();
            for k in labels {
                let next = seed.mutate(&k).expect("non-frozen index");
                let key = next.canonical_form();
                let found = keys.iter().position(|x| *x == key);
                let to = match found {
                    Some(i) => i,
                    None => {
                        if nodes.len() >= max_nodes {
                            truncated = true;
                            continue;
                        }
                        keys.push(key);
                        nodes.push(next);
                        queue.push_back(nodes.len() - 1);
                        nodes.len() - 1
                    }
                };
                edges.push(MutationEdge {
                    from: at,
                    direction: k.clone(),
                    to,
                });
            }
        }
        MutationClassGraph {
            nodes,
            edges,
            truncated,
        }
    }
}

/// Canonical representative of a seed modulo block-respecting index
/// permutations; comparing these answers isomorphism queries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalSeed {
    pub non_frozen: usize,
    pub size: usize,
    pub matrix: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationEdge {
    pub from: usize,
    pub direction: String,
    pub to: usize,
}

/// Mutation class as a graph over canonical forms, in deterministic BFS
/// order.
#[derive(Debug, Clone)]
pub struct MutationClassGraph {
    pub nodes: Vec<Seed>,
    pub edges: Vec<MutationEdge>,
    pub truncated: bool,
}

impl MutationClassGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "indices: {:?}", self.indices)?;
        writeln!(f, "frozen:  {:?}", self.frozen)?;
        for row in &self.eps {
            writeln!(f, "  {:?}", row)?;
        }
        Ok(())
    }
}
