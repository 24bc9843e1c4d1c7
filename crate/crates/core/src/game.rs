//! Graphs, Cartesian products and Lights Out! on them.
//!
//! Pressing a vertex toggles its neighbours (open switching) or its
//! neighbours and itself (closed switching). Over GF(2) a configuration `b`
//! can be cleared exactly when `M x = b` is solvable, where `M` is the
//! adjacency matrix (open) or adjacency plus identity (closed).
//!
//! Vertex `(i, j)` of `G x H`, with `i` in `G` (on `m` vertices) and `j` in
//! `H`, has index `j * m + i`. This agrees with the column-stacking used by
//! [`Matrix::sylvester_operator`], so the open switching matrix of `G x H`
//! is exactly the Sylvester operator of `(A_G, A_H)` over GF(2).

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gfmat::{Matrix, RankProfile};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            vertex_count: n,
            edges: BTreeSet::new(),
        }
    }

    /// Builds a simple graph; rejects loops, duplicate edges and endpoints
    /// outside `0..n`. Edges may be given in either orientation.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
        }
        if u >= self.vertex_count || v >= self.vertex_count {
            return Err(Error::InvalidGraph(format!(
                "edge ({u}, {v}) out of range for {} vertices",
                self.vertex_count
            )));
        }
        if !self.edges.insert((u.min(v), u.max(v))) {
            return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Star on `n` vertices: centre 0 joined to leaves `1..n`.
    pub fn star(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (0, i))).expect("valid star")
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).expect("valid complete graph")
    }

    /// `P_m x P_n`.
    pub fn grid(m: usize, n: usize) -> Self {
        cartesian_product(&Graph::path(m), &Graph::path(n))
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::new(10, outer.chain(spokes).chain(inner)).expect("valid Petersen graph")
    }

    /// Erdős–Rényi graph: each pair is an edge independently with
    /// probability `edge_probability`.
    pub fn random<R: Rng + ?Sized>(n: usize, edge_probability: f64, rng: &mut R) -> Self {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(edge_probability) {
                    g.edges.insert((i, j));
                }
            }
        }
        g
    }

    /// Builds a graph from a family spec such as `path:5`, `grid:5x5`,
    /// `petersen` or `file:graphs/foo.txt`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let bad = || Error::GraphSpec(spec.to_string());
        let (family, arg) = match spec.split_once(':') {
            Some((f, a)) => (f, Some(a)),
            None => (spec, None),
        };
        let size = |a: Option<&str>| -> Result<usize> {
            a.and_then(|s| s.trim().parse::<usize>().ok()).filter(|&n| n >= 1).ok_or_else(bad)
        };
        match family.trim() {
            "path" => Ok(Graph::path(size(arg)?)),
            "cycle" => Graph::cycle(size(arg)?).map_err(|_| bad()),
            "star" => Ok(Graph::star(size(arg)?)),
            "complete" => Ok(Graph::complete(size(arg)?)),
            "grid" => {
                let (m, n) = arg.and_then(|a| a.split_once('x')).ok_or_else(bad)?;
                Ok(Graph::grid(size(Some(m))?, size(Some(n))?))
            }
            "petersen" if arg.is_none() => Ok(Graph::petersen()),
            "file" => match arg {
                Some(path) if !path.is_empty() => Graph::read_file(path),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        parse_graph_text(&text, &path.display().to_string())
    }

    /// Text form accepted by [`parse_graph_text`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.vertex_count);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Open- or closed-neighbourhood switching matrix over `field`.
    pub fn switching_matrix(&self, mode: Mode, field: Field) -> Matrix {
        let n = self.vertex_count;
        let mut m = Matrix::zeros(field, n, n);
        for &(u, v) in &self.edges {
            m.set(u, v, 1);
            m.set(v, u, 1);
        }
        if mode == Mode::Closed {
            for i in 0..n {
                m.set(i, i, 1);
            }
        }
        m
    }

    pub fn adjacency(&self, field: Field) -> Matrix {
        self.switching_matrix(Mode::Open, field)
    }

    /// Adjacency matrix as integers, for the integer charpoly oracle.
    pub fn adjacency_integers(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count;
        let mut a = vec![vec![0i64; n]; n];
        for &(u, v) in &self.edges {
            a[u][v] = 1;
            a[v][u] = 1;
        }
        a
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::from_spec(s)
    }
}

/// Parses the graph file format: first line `n`, then one `u v` edge per
/// line with `u < v < n`. `#` starts a comment; blank lines are ignored.
/// Errors carry 1-based line and column numbers.
pub fn parse_graph_text(text: &str, source: &str) -> Result<Graph> {
    let err = |line: usize, column: usize, message: String| Error::GraphFile {
        path: source.to_string(),
        line,
        column,
        message,
    };
    let mut graph: Option<Graph> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push((s + 1, &content[s..pos]));
                    start = None;
                }
                _ => {}
            }
        }
        if tokens.is_empty() {
            continue;
        }
        let number = |(col, tok): (usize, &str)| {
            tok.parse::<usize>()
                .map_err(|_| err(line_no, col, format!("expected a nonnegative integer, found `{tok}`")))
        };
        match &mut graph {
            None => {
                if tokens.len() != 1 {
                    return Err(err(line_no, tokens[1].0, "expected only the vertex count".into()));
                }
                graph = Some(Graph::empty(number(tokens[0])?));
            }
            Some(g) => {
                if tokens.len() != 2 {
                    let col = tokens.get(2).map_or(1, |t| t.0);
                    return Err(err(line_no, col, "expected an edge `u v`".into()));
                }
                let u = number(tokens[0])?;
                let v = number(tokens[1])?;
                if u >= v {
                    return Err(err(line_no, tokens[0].0, format!("edge endpoints must satisfy u < v, got {u} {v}")));
                }
                if v >= g.vertex_count {
                    return Err(err(
                        line_no,
                        tokens[1].0,
                        format!("vertex {v} out of range for {} vertices", g.vertex_count),
                    ));
                }
                if !g.edges.insert((u, v)) {
                    return Err(err(line_no, tokens[0].0, format!("duplicate edge {u} {v}")));
                }
            }
        }
    }
    graph.ok_or_else(|| err(last_line.max(1), 1, "missing vertex count".into()))
}

/// `G x H` with vertex `(i, j)` at index `j * |G| + i`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let m = g.vertex_count;
    let n = h.vertex_count;
    let mut out = Graph::empty(m * n);
    for j in 0..n {
        for &(u, v) in &g.edges {
            out.edges.insert((j * m + u, j * m + v));
        }
    }
    for &(u, v) in &h.edges {
        for i in 0..m {
            out.edges.insert((u * m + i, v * m + i));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Open,
    Closed,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Open => "open",
            Mode::Closed => "closed",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "open" => Ok(Mode::Open),
            "closed" => Ok(Mode::Closed),
            other => Err(format!("unknown mode `{other}` (expected open or closed)")),
        }
    }
}

/// A graph, a switching mode and an initial light configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LightsInstance {
    graph: Graph,
    mode: Mode,
    config: Vec<u8>,
}

/// Buttons to press, one 0/1 entry per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PressVector(pub Vec<u8>);

/// One press vector clearing the board plus a basis of the press vectors
/// that change nothing. Every solution is the particular one plus a
/// combination of the basis, so there are `2^kernel.len()` of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PressSolution {
    pub particular: PressVector,
    pub kernel: Vec<PressVector>,
}

impl PressSolution {
    /// Every solution; intended for small kernels only.
    pub fn enumerate(&self) -> Vec<PressVector> {
        assert!(self.kernel.len() < 24, "kernel too large to enumerate");
        (0u32..1 << self.kernel.len())
            .map(|mask| {
                let mut x = self.particular.0.clone();
                for (k, v) in self.kernel.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        for (xi, vi) in x.iter_mut().zip(&v.0) {
                            *xi ^= vi;
                        }
                    }
                }
                PressVector(x)
            })
            .collect()
    }
}

impl LightsInstance {
    pub fn new(graph: Graph, mode: Mode, config: Vec<u8>) -> Result<Self> {
        if config.len() != graph.vertex_count {
            return Err(Error::DimensionMismatch(format!(
                "configuration has {} lights, graph has {} vertices",
                config.len(),
                graph.vertex_count
            )));
        }
        if let Some(&bad) = config.iter().find(|&&b| b > 1) {
            return Err(Error::EntryOutOfRange { value: bad as u64, p: 2 });
        }
        Ok(LightsInstance { graph, mode, config })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn config(&self) -> &[u8] {
        &self.config
    }

    fn matrix(&self) -> Matrix {
        self.graph.switching_matrix(self.mode, Field::GF2)
    }

    fn rhs(&self) -> Vec<u32> {
        self.config.iter().map(|&b| b as u32).collect()
    }

    pub fn is_solvable(&self) -> bool {
        self.solve_presses().is_some()
    }

    pub fn solve_presses(&self) -> Option<PressSolution> {
        let m = self.matrix();
        let x = m.solve(&self.rhs()).expect("dimensions checked at construction")?;
        let to_press = |v: Vec<u32>| PressVector(v.into_iter().map(|b| b as u8).collect());
        Some(PressSolution {
            particular: to_press(x),
            kernel: m.kernel_basis().into_iter().map(to_press).collect(),
        })
    }

    /// Lights after pressing `x` starting from the initial configuration.
    pub fn apply(&self, x: &PressVector) -> Vec<u8> {
        let m = self.matrix();
        let xs: Vec<u32> = x.0.iter().map(|&b| b as u32).collect();
        let toggled = m.mul_vec(&xs).expect("press vector length");
        self.config.iter().zip(toggled).map(|(&b, t)| b ^ t as u8).collect()
    }
}

/// `(r, nu)`: rank and nullity of the switching matrix over GF(2). There
/// are `2^r` clearable configurations, each cleared by `2^nu` press sets.
pub fn count_exponents(g: &Graph, mode: Mode) -> (usize, usize) {
    let RankProfile { rank, nullity, .. } = g.switching_matrix(mode, Field::GF2).rank_profile();
    (rank, nullity)
}

/// Solves `AX - XB = C` through the vectorised system. Returns one solution
/// when the system is consistent.
pub fn sylvester_solve(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<Option<Matrix>> {
    a.field().check_same(c.field())?;
    let op = Matrix::sylvester_operator(a, b)?;
    let (m, n) = (a.rows(), b.rows());
    if c.rows() != m || c.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side is {}x{}, expected {m}x{n}",
            c.rows(),
            c.cols()
        )));
    }
    let rhs = vectorize(c);
    Ok(op.solve(&rhs)?.map(|x| unvectorize(a.field(), &x, m, n)))
}

/// Column-stacking `vec`.
pub fn vectorize(x: &Matrix) -> Vec<u32> {
    (0..x.cols()).flat_map(|j| (0..x.rows()).map(move |i| x.get(i, j))).collect()
}

pub fn unvectorize(field: Field, v: &[u32], rows: usize, cols: usize) -> Matrix {
    assert_eq!(v.len(), rows * cols, "vector length does not match shape");
    Matrix::from_fn(field, rows, cols, |i, j| v[j * rows + i])
}
