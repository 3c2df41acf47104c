use crate::error::{check_len, Error, Result};

/// Symmetric conflict relation over links, stored both as a dense bit matrix
/// (constant-time queries) and as adjacency lists (cheap neighbor sweeps).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    n: usize,
    adjacent: Vec<bool>,
    neighbors: Vec<Vec<usize>>,
}

impl ConflictGraph {
    /// Graph with no conflicts.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adjacent: vec![false; n * n],
            neighbors: vec![Vec::new(); n],
        }
    }

    /// Collocated network: every pair of distinct links conflicts.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.link(i, j);
            }
        }
        g
    }

    /// Builds a graph from 0-based undirected edges. Duplicate edges are
    /// ignored; self-loops and out-of-range indices are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::Config(format!(
                    "conflict edge ({i}, {j}) out of range for {n} links"
                )));
            }
            if i == j {
                return Err(Error::Config(format!(
                    "conflict edge ({i}, {i}) is a self-loop"
                )));
            }
            if !g.adjacent[i * n + j] {
                g.link(i, j);
            }
        }
        Ok(g)
    }

    /// Builds a graph from a dense 0/1 matrix; it must be symmetric with a
    /// zero diagonal.
    pub fn from_matrix(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.len();
        let mut g = Self::empty(n);
        for (i, row) in rows.iter().enumerate() {
            check_len("conflict matrix row", row.len(), n)?;
            if row[i] {
                return Err(Error::Config(format!(
                    "conflict matrix has g[{i}][{i}] = 1"
                )));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::Config(format!(
                        "conflict matrix is not symmetric at ({i}, {j})"
                    )));
                }
                if rows[i][j] {
                    g.link(i, j);
                }
            }
        }
        Ok(g)
    }

    fn link(&mut self, i: usize, j: usize) {
        self.adjacent[i * self.n + j] = true;
        self.adjacent[j * self.n + i] = true;
        self.neighbors[i].push(j);
        self.neighbors[j].push(i);
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn conflicts(&self, i: usize, j: usize) -> bool {
        self.adjacent[i * self.n + j]
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// True iff every pair of distinct links conflicts.
    pub fn is_collocated(&self) -> bool {
        self.neighbors.iter().all(|nb| nb.len() + 1 == self.n)
    }

    /// No two chosen links conflict.
    pub fn is_independent(&self, chosen: &[bool]) -> bool {
        (0..self.n)
            .filter(|&i| chosen[i])
            .all(|i| self.neighbors[i].iter().all(|&j| !chosen[j]))
    }

    /// Independent, and no unchosen link could be added without a conflict.
    pub fn is_maximal_independent(&self, chosen: &[bool]) -> bool {
        self.is_independent(chosen)
            && (0..self.n)
                .filter(|&i| !chosen[i])
                .all(|i| self.neighbors[i].iter().any(|&j| chosen[j]))
    }
}
