//! Undirected coupling graphs: built-in generators and the edge-list format.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CouplingGraph {
    name: String,
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl CouplingGraph {
    /// Build from unordered pairs; duplicates collapse, self-loops and
    /// out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Domain(format!("self-loop on node {u}")));
            }
            for w in [u, v] {
                crate::error::check_index(w, n)?;
            }
            set.insert((u.min(v), u.max(v)));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &set {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(CouplingGraph {
            name: "custom".into(),
            n,
            edges: set,
            adjacency,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// BFS hop distances from `root`; `None` for unreachable nodes.
    pub fn distances_from(&self, root: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[root] = Some(0);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Nodes with no path to `root`.
    pub fn unreachable_from(&self, root: usize) -> Vec<usize> {
        self.distances_from(root)
            .iter()
            .enumerate()
            .filter_map(|(v, d)| d.is_none().then_some(v))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.unreachable_from(0).is_empty()
    }

    /// Largest hop distance from `root`, or `None` if the graph is disconnected.
    pub fn eccentricity(&self, root: usize) -> Option<usize> {
        self.distances_from(root)
            .into_iter()
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }

    /// Edge-list text: `name=` and `n=` headers, then one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("name={}\nn={}\n", self.name, self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parse `u v` lines; `#` starts a comment, an optional `n=<count>` line
    /// fixes the node count (otherwise 1 + the largest index) and an optional
    /// `name=<label>` line names the graph.
    pub fn load_edge_list(text: &str) -> Result<Self> {
        let mut declared: Option<usize> = None;
        let mut name = None;
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(label) = line.strip_prefix("name=") {
                name = Some(label.trim().to_string());
                continue;
            }
            if let Some(count) = line.strip_prefix("n=") {
                let count = count
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| err(format!("bad node count: {e}")))?;
                declared = Some(count);
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [a, b] = fields.as_slice() else {
                return Err(err(format!("expected two indices, got {line:?}")));
            };
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|e| err(format!("bad index {s:?}: {e}")))
            };
            let (u, v) = (parse(a)?, parse(b)?);
            if u == v {
                return Err(err(format!("self-loop on node {u}")));
            }
            if let Some(count) = declared {
                if u.max(v) >= count {
                    return Err(err(format!("index {} exceeds n={count}", u.max(v))));
                }
            }
            pairs.push((u, v, line_no));
        }
        let inferred = pairs
            .iter()
            .map(|&(u, v, _)| u.max(v) + 1)
            .max()
            .unwrap_or(0);
        let n = declared.unwrap_or(inferred);
        if let Some(&(u, v, line)) = pairs.iter().find(|&&(u, v, _)| u.max(v) >= n) {
            return Err(Error::Parse {
                line,
                message: format!("edge ({u}, {v}) exceeds n={n}"),
            });
        }
        let g = CouplingGraph::new(n, pairs.into_iter().map(|(u, v, _)| (u, v)))?;
        Ok(match name {
            Some(label) => g.with_name(label),
            None => g,
        })
    }
}

/// Complete graph on `n` nodes.
pub fn full(n: usize) -> CouplingGraph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    CouplingGraph::new(n, edges)
        .expect("complete graph is well formed")
        .with_name(format!("full-{n}"))
}

/// Path graph `0 - 1 - … - (n-1)`.
pub fn line(n: usize) -> CouplingGraph {
    CouplingGraph::new(n, (1..n).map(|v| (v - 1, v)))
        .expect("path graph is well formed")
        .with_name(format!("line-{n}"))
}

/// Axis-aligned grid with row-major indexing (last extent varies fastest).
pub fn grid(dims: &[usize]) -> CouplingGraph {
    let n: usize = dims.iter().product();
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for (k, &extent) in dims.iter().enumerate() {
            let coord = (u / strides[k]) % extent;
            if coord + 1 < extent {
                edges.push((u, u + strides[k]));
            }
        }
    }
    let label = dims
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join("x");
    CouplingGraph::new(n, edges)
        .expect("grid is well formed")
        .with_name(format!("grid-{label}"))
}

/// 156-qubit heavy-hex lattice with fez-style indexing.
///
/// Eight rows of 16 chained qubits start at `20·r`; between rows `r` and
/// `r+1` sit four bridge qubits `20·r + 16 ..= 20·r + 19`, each joining the
/// same column of both rows. Bridge columns are `3, 7, 11, 15` below even rows
/// and `1, 5, 9, 13` below odd rows.
pub fn heavy_hex_156() -> CouplingGraph {
    const ROWS: usize = 8;
    const ROW_LEN: usize = 16;
    const STRIDE: usize = 20;
    let mut edges = Vec::new();
    for r in 0..ROWS {
        let base = STRIDE * r;
        for c in 0..ROW_LEN - 1 {
            edges.push((base + c, base + c + 1));
        }
        if r + 1 < ROWS {
            let offsets = if r % 2 == 0 {
                [3, 7, 11, 15]
            } else {
                [1, 5, 9, 13]
            };
            for (k, col) in offsets.into_iter().enumerate() {
                let bridge = base + ROW_LEN + k;
                edges.push((base + col, bridge));
                edges.push((bridge, base + STRIDE + col));
            }
        }
    }
    CouplingGraph::new(ROWS * ROW_LEN + (ROWS - 1) * 4, edges)
        .expect("heavy-hex lattice is well formed")
        .with_name("heavy-hex-156 (fez-style)")
}
