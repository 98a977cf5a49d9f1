//! Side-information graphs.
//!
//! Vertex `i` stores one symbol and can read the symbols of its
//! out-neighborhood `N(i)`. Vertices are 1-based in files and reports,
//! 0-based in the API. Neighbor lists are kept sorted and duplicate-free;
//! self-loops are rejected.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StorageGraph {
    adj: Vec<Vec<usize>>,
}

impl StorageGraph {
    /// Builds a graph from 0-based neighbor lists. Lists are sorted and
    /// deduplicated; out-of-range entries and self-loops are rejected.
    pub fn new(n: usize, neighbors: Vec<Vec<usize>>) -> Result<Self> {
        if neighbors.len() != n {
            return Err(Error::LengthMismatch {
                left: neighbors.len(),
                right: n,
            });
        }
        let mut adj = neighbors;
        for (i, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            for &j in list.iter() {
                if j >= n {
                    return Err(Error::VertexOutOfRange { vertex: j + 1, n });
                }
                if j == i {
                    return Err(Error::SelfLoop { vertex: i + 1 });
                }
            }
        }
        Ok(StorageGraph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Sorted 0-based out-neighborhood of vertex `i`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum()
    }

    /// Directed edges `(i, j)` in row-major order, 0-based.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().map(move |&j| (i, j)))
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    pub fn is_symmetric(&self) -> bool {
        self.edges().all(|(i, j)| self.has_edge(j, i))
    }

    /// Canonical file form: `n m` header, then each directed edge 1-based
    /// in row-major order.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.edge_count());
        for (i, j) in self.edges() {
            out.push_str(&format!("{} {}\n", i + 1, j + 1));
        }
        out
    }
}

/// Parses the graph file format.
///
/// `#` starts a comment; blank lines are skipped. The header is
/// `n m [undirected]` followed by exactly `m` lines `u v` (1-based,
/// meaning `v` is in `N(u)`). With the `undirected` flag each line adds
/// both directions. Duplicate edges collapse.
pub fn parse_graph(text: &str) -> Result<StorageGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(no, l)| (no + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_no, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "empty graph file".into(),
    })?;
    let mut parts = header.split_whitespace();
    let parse_num = |tok: Option<&str>, line: usize| -> Result<usize> {
        tok.ok_or(Error::Parse {
            line,
            msg: "expected `n m [undirected]`".into(),
        })?
        .parse()
        .map_err(|_| Error::Parse {
            line,
            msg: "expected a number".into(),
        })
    };
    let n = parse_num(parts.next(), header_no)?;
    let m = parse_num(parts.next(), header_no)?;
    let undirected = match parts.next() {
        None => false,
        Some("undirected") => true,
        Some(other) => {
            return Err(Error::Parse {
                line: header_no,
                msg: format!("unexpected header token `{other}`"),
            })
        }
    };
    if n == 0 {
        return Err(Error::Parse {
            line: header_no,
            msg: "graph needs at least one vertex".into(),
        });
    }

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for _ in 0..m {
        let (line_no, line) = lines.next().ok_or(Error::Parse {
            line: header_no,
            msg: format!("expected {m} edge lines"),
        })?;
        let mut parts = line.split_whitespace();
        let u = parse_num(parts.next(), line_no)?;
        let v = parse_num(parts.next(), line_no)?;
        if parts.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                msg: "expected `u v`".into(),
            });
        }
        for &x in &[u, v] {
            if x == 0 || x > n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop { vertex: u });
        }
        adj[u - 1].push(v - 1);
        if undirected {
            adj[v - 1].push(u - 1);
        }
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::Parse {
            line: line_no,
            msg: "trailing content after the declared edges".into(),
        });
    }
    StorageGraph::new(n, adj)
}

/// Directed cycle neighborhoods `N(i) = {i-1, i+1}` mod `n`; needs
/// `n >= 3` so the two neighbors are distinct non-loops.
pub fn cycle_graph(n: usize) -> Result<StorageGraph> {
    if n < 3 {
        return Err(Error::BadSize {
            family: "cycle",
            n,
            min: 3,
        });
    }
    let adj = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
    StorageGraph::new(n, adj)
}

/// Every vertex sees all others.
pub fn complete_graph(n: usize) -> Result<StorageGraph> {
    if n < 1 {
        return Err(Error::BadSize {
            family: "complete",
            n,
            min: 1,
        });
    }
    let adj = (0..n)
        .map(|i| (0..n).filter(|&j| j != i).collect())
        .collect();
    StorageGraph::new(n, adj)
}

/// No vertex sees anything.
pub fn empty_graph(n: usize) -> Result<StorageGraph> {
    if n < 1 {
        return Err(Error::BadSize {
            family: "empty",
            n,
            min: 1,
        });
    }
    StorageGraph::new(n, vec![Vec::new(); n])
}

/// The 5-vertex demonstration graph used throughout the tests: vertex 1
/// sees everyone, the rest see two or three vertices each. Symmetric,
/// 14 directed edges.
pub fn fig1_graph() -> StorageGraph {
    let one_based = [
        vec![2usize, 3, 4, 5],
        vec![1, 3],
        vec![1, 2, 4],
        vec![1, 3, 5],
        vec![1, 4],
    ];
    let adj = one_based
        .iter()
        .map(|l| l.iter().map(|&v| v - 1).collect())
        .collect();
    StorageGraph::new(5, adj).expect("fixed graph is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn parse_fig1_file() {
        let text = "5 14\n1 2\n1 3\n1 4\n1 5\n2 1\n2 3\n3 1\n3 2\n3 4\n4 1\n4 3\n4 5\n5 1\n5 4\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g, fig1_graph());
        assert_eq!(g.neighbors(0), &[1, 2, 3, 4]);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.neighbors(2), &[0, 1, 3]);
        assert_eq!(g.neighbors(3), &[0, 2, 4]);
        assert_eq!(g.neighbors(4), &[0, 3]);
        assert_eq!(g.edge_count(), 14);
    }

    #[test]
    fn parse_single_vertex() {
        let g = parse_graph("1 0\n").unwrap();
        assert_eq!(g.n(), 1);
        assert!(g.neighbors(0).is_empty());
    }

    #[test]
    fn parse_comments_blank_lines_duplicates() {
        let text = "# a cycle\n\n3 4 # header\n1 2\n1 2\n2 3\n3 1\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.neighbors(1), &[2]);
        assert_eq!(g.neighbors(2), &[0]);
    }

    #[test]
    fn parse_undirected_flag() {
        let g = parse_graph("3 2 undirected\n1 2\n2 3\n").unwrap();
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.neighbors(2), &[1]);
        assert!(g.is_symmetric());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(
            parse_graph("2 1\n1 1\n"),
            Err(Error::SelfLoop { vertex: 1 })
        ));
        assert!(matches!(
            parse_graph("2 1\n1 3\n"),
            Err(Error::VertexOutOfRange { vertex: 3, n: 2 })
        ));
        assert!(matches!(
            parse_graph("2 2\n1 2\n"),
            Err(Error::Parse { .. })
        ));
        match parse_graph("2 1\n1 2\n2 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected trailing-content error, got {other:?}"),
        }
        match parse_graph("3 1\nx y\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn generators() {
        let pentagon = cycle_graph(5).unwrap();
        assert_eq!(pentagon.neighbors(0), &[1, 4]);
        assert_eq!(pentagon.neighbors(2), &[1, 3]);
        assert!(matches!(cycle_graph(2), Err(Error::BadSize { .. })));

        let k3 = complete_graph(3).unwrap();
        assert_eq!(k3.neighbors(1), &[0, 2]);
        assert_eq!(k3.edge_count(), 6);

        let e2 = empty_graph(2).unwrap();
        assert_eq!(e2.edge_count(), 0);
    }

    #[test]
    fn symmetry_examples() {
        assert!(cycle_graph(5).unwrap().is_symmetric());
        assert!(fig1_graph().is_symmetric());
        assert!(!parse_graph("2 1\n1 2\n").unwrap().is_symmetric());
    }

    #[test]
    fn file_round_trip() {
        let mut rng = SplitMix64::new(3);
        let mut graphs = vec![
            cycle_graph(5).unwrap(),
            complete_graph(4).unwrap(),
            empty_graph(1).unwrap(),
            fig1_graph(),
        ];
        for _ in 0..20 {
            let n = 1 + rng.below(5) as usize;
            let adj = (0..n)
                .map(|i| (0..n).filter(|&j| j != i && rng.coin()).collect())
                .collect();
            graphs.push(StorageGraph::new(n, adj).unwrap());
        }
        for g in graphs {
            assert_eq!(parse_graph(&g.to_file_string()).unwrap(), g);
        }
    }
}
