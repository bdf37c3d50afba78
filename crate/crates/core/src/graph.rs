//! Simple undirected graphs, the edge-list text format, and the generators
//! for the families studied here (paths, cycles, complete and circulant
//! graphs).
//!
//! Vertices are labelled `1..=n` at every public boundary (file format,
//! error messages, accessor arguments) and `0..n` internally.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, ParseErrorKind, Result};

/// A simple undirected graph on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    // 0-indexed, stored with the smaller endpoint first
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from 1-indexed edges, rejecting self-loops, duplicates
    /// and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("vertex count must be positive".into()));
        }
        let mut graph = Graph {
            n,
            edges: BTreeSet::new(),
        };
        for (i, j) in edges {
            graph.insert_edge(i, j)?;
        }
        Ok(graph)
    }

    fn insert_edge(&mut self, i: usize, j: usize) -> Result<()> {
        for v in [i, j] {
            if v == 0 || v > self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if i == j {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {i}")));
        }
        let key = (i.min(j) - 1, i.max(j) - 1);
        if !self.edges.insert(key) {
            return Err(Error::InvalidGraph(format!(
                "duplicate edge {{{},{}}}",
                key.0 + 1,
                key.1 + 1
            )));
        }
        Ok(())
    }

    /// Returns a copy with the (1-indexed) edge `{i, j}` added.
    pub fn with_edge(&self, i: usize, j: usize) -> Result<Self> {
        let mut g = self.clone();
        g.insert_edge(i, j)?;
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as 1-indexed pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(i, j)| (i + 1, j + 1))
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i == 0 || j == 0 {
            return false;
        }
        self.edges.contains(&(i.min(j) - 1, i.max(j) - 1))
    }

    /// Vertex degrees, indexed by `vertex - 1`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    /// Breadth-first search from vertex 1; true iff every vertex is reached.
    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency_lists();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == self.n
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// The positive-semidefinite Laplacian `D - A`.
    pub fn laplacian(&self) -> DMatrix<f64> {
        let mut l = DMatrix::zeros(self.n, self.n);
        for &(i, j) in &self.edges {
            l[(i, j)] = -1.0;
            l[(j, i)] = -1.0;
            l[(i, i)] += 1.0;
            l[(j, j)] += 1.0;
        }
        l
    }

    /// Serializes to the edge-list text format accepted by [`parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n={}\n", self.n);
        for (i, j) in self.edges() {
            out.push_str(&format!("{i} {j}\n"));
        }
        out
    }
}

/// Parses the edge-list format: a `n=<int>` header line followed by one
/// `<i> <j>` pair per line. `#` starts a comment, blank lines are skipped and
/// both LF and CRLF line endings are accepted. Line numbers in errors are
/// 1-based.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(idx, raw)| {
            let content = raw.split('#').next().unwrap_or("").trim();
            (idx + 1, content)
        })
        .filter(|(_, content)| !content.is_empty());

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, ParseErrorKind::MissingHeader))?;
    let n = parse_header(header).ok_or_else(|| {
        Error::parse(header_line, ParseErrorKind::BadHeader(header.to_string()))
    })?;

    let mut graph = Graph {
        n,
        edges: BTreeSet::new(),
    };
    for (line, content) in lines {
        let malformed = || Error::parse(line, ParseErrorKind::Malformed(content.to_string()));
        let mut fields = content.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(malformed());
        };
        let i: usize = a.parse().map_err(|_| malformed())?;
        let j: usize = b.parse().map_err(|_| malformed())?;
        for v in [i, j] {
            if v == 0 || v > n {
                return Err(Error::parse(line, ParseErrorKind::OutOfRange { vertex: v, n }));
            }
        }
        if i == j {
            return Err(Error::parse(line, ParseErrorKind::SelfLoop(i)));
        }
        if !graph.edges.insert((i.min(j) - 1, i.max(j) - 1)) {
            return Err(Error::parse(
                line,
                ParseErrorKind::DuplicateEdge(i.min(j), i.max(j)),
            ));
        }
    }
    Ok(graph)
}

fn parse_header(header: &str) -> Option<usize> {
    let (key, value) = header.split_once('=')?;
    if key.trim() != "n" {
        return None;
    }
    value.trim().parse().ok().filter(|&n| n > 0)
}

/// A named graph family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorSpec {
    Path { n: usize },
    Cycle { n: usize },
    Complete { n: usize },
    /// `Ci(n, l)`: each vertex joined to its `l` nearest neighbours on both
    /// sides of the ring. Requires `1 <= l` and `2l < n`.
    Circulant { n: usize, l: usize },
}

impl GeneratorSpec {
    pub fn vertex_count(&self) -> usize {
        match *self {
            GeneratorSpec::Path { n }
            | GeneratorSpec::Cycle { n }
            | GeneratorSpec::Complete { n }
            | GeneratorSpec::Circulant { n, .. } => n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidGenerator(msg));
        match *self {
            GeneratorSpec::Path { n } | GeneratorSpec::Complete { n } if n == 0 => {
                bad("n must be positive".into())
            }
            GeneratorSpec::Cycle { n } if n < 3 => bad(format!("cycle needs n >= 3, got {n}")),
            GeneratorSpec::Circulant { l: 0, .. } => {
                bad("circulant needs l >= 1".into())
            }
            GeneratorSpec::Circulant { n, l } if 2 * l >= n => {
                bad(format!("circulant needs 2l < n, got n={n}, l={l}"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Path { n } => write!(f, "path:{n}"),
            GeneratorSpec::Cycle { n } => write!(f, "cycle:{n}"),
            GeneratorSpec::Complete { n } => write!(f, "complete:{n}"),
            GeneratorSpec::Circulant { n, l } => write!(f, "circulant:{n},{l}"),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    /// Parses `path:n`, `cycle:n`, `complete:n` or `circulant:n,l`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGenerator(format!("cannot parse `{s}`"));
        let (kind, args) = s.trim().split_once(':').ok_or_else(bad)?;
        let nums = args
            .split(',')
            .map(|a| a.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        let spec = match (kind.trim(), nums.as_slice()) {
            ("path", &[n]) => GeneratorSpec::Path { n },
            ("cycle", &[n]) => GeneratorSpec::Cycle { n },
            ("complete", &[n]) => GeneratorSpec::Complete { n },
            ("circulant", &[n, l]) => GeneratorSpec::Circulant { n, l },
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Builds the graph described by `spec`.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.vertex_count();
    let mut edges = BTreeSet::new();
    match *spec {
        GeneratorSpec::Path { n } => {
            edges.extend((0..n.saturating_sub(1)).map(|i| (i, i + 1)));
        }
        GeneratorSpec::Complete { n } => {
            for i in 0..n {
                edges.extend((i + 1..n).map(|j| (i, j)));
            }
        }
        GeneratorSpec::Cycle { n } => circulant_edges(n, 1, &mut edges),
        GeneratorSpec::Circulant { n, l } => circulant_edges(n, l, &mut edges),
    }
    Ok(Graph { n, edges })
}

fn circulant_edges(n: usize, l: usize, edges: &mut BTreeSet<(usize, usize)>) {
    for i in 0..n {
        for s in 1..=l {
            let j = (i + s) % n;
            edges.insert((i.min(j), i.max(j)));
        }
    }
}

/// Random connected graph: a uniformly attached random spanning tree plus
/// every remaining pair independently with probability `extra_edge_prob`.
pub fn random_connected<R: Rng + ?Sized>(n: usize, extra_edge_prob: f64, rng: &mut R) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidGraph("vertex count must be positive".into()));
    }
    if !(0.0..=1.0).contains(&extra_edge_prob) {
        return Err(Error::Domain(format!(
            "edge probability {extra_edge_prob} outside [0, 1]"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = BTreeSet::new();
    for k in 1..n {
        let parent = order[rng.random_range(0..k)];
        let child = order[k];
        edges.insert((parent.min(child), parent.max(child)));
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < extra_edge_prob {
                edges.insert((i, j));
            }
        }
    }
    Ok(Graph { n, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn parse_err(text: &str) -> (usize, ParseErrorKind) {
        match parse_edge_list(text) {
            Err(Error::Parse { line, kind }) => (line, kind),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_single_edge() {
        let g = parse_edge_list("n=2\n1 2\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2)]);
    }

    #[test]
    fn parses_path_with_comments_and_crlf() {
        let g = parse_edge_list("# P3\r\nn=3\r\n1 2 # first\r\n\r\n2 3\r\n").unwrap();
        assert_eq!(g, generate(&GeneratorSpec::Path { n: 3 }).unwrap());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(parse_err("n=3\n1 1\n"), (2, ParseErrorKind::SelfLoop(1)));
        assert_eq!(
            parse_err("n=3\n1 2\n2 1\n"),
            (3, ParseErrorKind::DuplicateEdge(1, 2))
        );
        assert_eq!(
            parse_err("n=3\n1 2\n\n2 4\n"),
            (4, ParseErrorKind::OutOfRange { vertex: 4, n: 3 })
        );
        assert_eq!(parse_err("n=3\n0 2\n").0, 2);
        assert!(matches!(parse_err("n=3\n1 2 3\n"), (2, ParseErrorKind::Malformed(_))));
        assert!(matches!(parse_err("n=3\n1 x\n"), (2, ParseErrorKind::Malformed(_))));
        assert!(matches!(parse_err("3\n1 2\n"), (1, ParseErrorKind::BadHeader(_))));
        assert!(matches!(parse_err("n=0\n"), (1, ParseErrorKind::BadHeader(_))));
        assert_eq!(parse_err("# only a comment\n"), (1, ParseErrorKind::MissingHeader));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = generate(&GeneratorSpec::Circulant { n: 9, l: 3 }).unwrap();
        assert_eq!(parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn circulant_5_2_is_k5() {
        let ci = generate(&GeneratorSpec::Circulant { n: 5, l: 2 }).unwrap();
        assert_eq!(ci, generate(&GeneratorSpec::Complete { n: 5 }).unwrap());
        assert!(ci.degrees().iter().all(|&d| d == 4));
    }

    #[test]
    fn circulant_l1_is_cycle() {
        let ci = generate(&GeneratorSpec::Circulant { n: 6, l: 1 }).unwrap();
        let cycle = generate(&GeneratorSpec::Cycle { n: 6 }).unwrap();
        assert_eq!(ci, cycle);
        assert_eq!(cycle.edge_count(), 6);
    }

    #[test]
    fn path_two_is_single_edge() {
        let g = generate(&GeneratorSpec::Path { n: 2 }).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2)]);
    }

    #[test]
    fn circulant_rejects_wide_neighbourhood() {
        for (n, l) in [(4, 2), (10, 5), (10, 7), (5, 0)] {
            assert!(matches!(
                generate(&GeneratorSpec::Circulant { n, l }),
                Err(Error::InvalidGenerator(_))
            ));
        }
    }

    #[test]
    fn generator_spec_strings() {
        let spec: GeneratorSpec = "circulant:10,2".parse().unwrap();
        assert_eq!(spec, GeneratorSpec::Circulant { n: 10, l: 2 });
        assert_eq!(spec.to_string(), "circulant:10,2");
        assert_eq!("complete:5".parse::<GeneratorSpec>().unwrap(), GeneratorSpec::Complete { n: 5 });
        assert!("circulant:10,5".parse::<GeneratorSpec>().is_err());
        assert!("star:4".parse::<GeneratorSpec>().is_err());
        assert!("path:".parse::<GeneratorSpec>().is_err());
    }

    #[test]
    fn connectivity() {
        assert!(generate(&GeneratorSpec::Path { n: 3 }).unwrap().is_connected());
        assert!(!Graph::new(2, []).unwrap().is_connected());
        assert!(generate(&GeneratorSpec::Circulant { n: 10, l: 2 }).unwrap().is_connected());
        assert!(!Graph::new(4, [(1, 2), (3, 4)]).unwrap().is_connected());
        assert!(Graph::new(1, []).unwrap().is_connected());
    }

    #[test]
    fn laplacian_examples() {
        let k2 = generate(&GeneratorSpec::Complete { n: 2 }).unwrap().laplacian();
        assert_eq!(k2, DMatrix::from_row_slice(2, 2, &[1.0, -1.0, -1.0, 1.0]));
        let p3 = generate(&GeneratorSpec::Path { n: 3 }).unwrap().laplacian();
        assert_eq!(
            p3,
            DMatrix::from_row_slice(3, 3, &[1.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 1.0])
        );
        let c4 = generate(&GeneratorSpec::Circulant { n: 4, l: 1 }).unwrap().laplacian();
        assert!(c4.diagonal().iter().all(|&d| d == 2.0));
    }

    #[test]
    fn graph_new_validates() {
        assert!(Graph::new(3, [(1, 1)]).is_err());
        assert!(Graph::new(3, [(1, 2), (2, 1)]).is_err());
        assert!(matches!(
            Graph::new(3, [(1, 4)]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        ));
        assert!(Graph::new(0, []).is_err());
    }

    #[test]
    fn random_connected_graphs_are_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..40 {
            let g = random_connected(n, 0.05, &mut rng).unwrap();
            assert!(g.is_connected());
            assert!(g.edge_count() >= n - 1);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn circulant_params() -> impl Strategy<Value = (usize, usize)> {
            (5usize..=200).prop_flat_map(|n| (Just(n), 1..=(n - 1) / 2))
        }

        proptest! {
            #[test]
            fn circulant_is_2l_regular((n, l) in circulant_params()) {
                let g = generate(&GeneratorSpec::Circulant { n, l }).unwrap();
                prop_assert!(g.degrees().iter().all(|&d| d == 2 * l));
                prop_assert_eq!(g.edge_count(), n * l);
            }

            #[test]
            fn laplacian_rows_sum_to_zero(n in 1usize..60, p in 0.0f64..0.5, seed in any::<u64>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let g = random_connected(n, p, &mut rng).unwrap();
                let l = g.laplacian();
                prop_assert_eq!(&l, &l.transpose());
                for row in l.row_iter() {
                    prop_assert_eq!(row.sum(), 0.0);
                }
            }

            #[test]
            fn densest_circulant_is_connected_and_regular(half in 2usize..100) {
                // 2l + 1 = n - 1, i.e. n even and l = n/2 - 1
                let n = 2 * half;
                let l = half - 1;
                let g = generate(&GeneratorSpec::Circulant { n, l }).unwrap();
                prop_assert!(g.is_connected());
                let deg = g.degrees();
                prop_assert!(deg.iter().all(|&d| d == deg[0]));
            }
        }
    }
}
