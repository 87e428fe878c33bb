//! METIS adjacency format and plain-text solution files.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::graph::{Vertex, Weight, WeightedGraph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetisErrorKind {
    #[error("missing header")]
    MissingHeader,
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("unsupported format code {0}")]
    BadFormat(String),
    #[error("malformed token `{0}`")]
    BadToken(String),
    #[error("negative vertex weight {0}")]
    NegativeWeight(String),
    #[error("missing vertex weight")]
    MissingWeight,
    #[error("neighbor {0} out of range 1..={1}")]
    OutOfRange(usize, usize),
    #[error("self-loop")]
    SelfLoop,
    #[error("duplicate neighbor {0}")]
    Duplicate(usize),
    #[error("vertex {0} lists {1} but {1} does not list {0}")]
    Asymmetric(usize, usize),
    #[error("header declares {declared} edges, found {found}")]
    EdgeCount { declared: usize, found: usize },
    #[error("expected {0} vertex lines, found {1}")]
    VertexCount(usize, usize),
    #[error("extra content after the last vertex line")]
    TrailingContent,
    #[error("odd number of entries in an edge-weighted line")]
    OddEdgeWeights,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct MetisError {
    pub line: usize,
    pub kind: MetisErrorKind,
}

#[derive(Debug, Error)]
pub enum ReadError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Metis { path: String, source: MetisError },
    #[error("{path}: line {line}: malformed vertex id `{token}`")]
    Solution {
        path: String,
        line: usize,
        token: String,
    },
}

/// A parsed graph plus whether the file carried vertex weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetisGraph {
    pub graph: WeightedGraph,
    pub has_vertex_weights: bool,
}

fn err(line: usize, kind: MetisErrorKind) -> MetisError {
    MetisError { line, kind }
}

fn parse_num(line: usize, tok: &str) -> Result<usize, MetisError> {
    tok.parse()
        .map_err(|_| err(line, MetisErrorKind::BadToken(tok.to_string())))
}

/// Parses METIS text. Vertex ids are 1-based in the file. Format code `10` or
/// `11` prefixes each vertex line with its weight; codes `1` and `11` interleave
/// edge weights, which are ignored. Without vertex weights all weights are 1.
pub fn parse_metis(text: &str) -> Result<MetisGraph, MetisError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim_start().starts_with('%'));
    let (hline, header) = lines
        .by_ref()
        .find(|(_, l)| !l.trim().is_empty())
        .ok_or(err(1, MetisErrorKind::MissingHeader))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if !(2..=4).contains(&fields.len()) {
        return Err(err(hline, MetisErrorKind::BadHeader(header.trim().to_string())));
    }
    let n = fields[0]
        .parse::<usize>()
        .map_err(|_| err(hline, MetisErrorKind::BadHeader(header.trim().to_string())))?;
    let m = fields[1]
        .parse::<usize>()
        .map_err(|_| err(hline, MetisErrorKind::BadHeader(header.trim().to_string())))?;
    let fmt = fields.get(2).copied().unwrap_or("0");
    let (vertex_weights, edge_weights) = match fmt {
        "0" | "00" | "000" => (false, false),
        "1" | "01" | "001" => (false, true),
        "10" | "010" => (true, false),
        "11" | "011" => (true, true),
        other => return Err(err(hline, MetisErrorKind::BadFormat(other.to_string()))),
    };
    if fields.len() == 4 && fields[3] != "1" {
        return Err(err(hline, MetisErrorKind::BadFormat(format!("{fmt} {}", fields[3]))));
    }

    let mut adj: Vec<Vec<Vertex>> = Vec::with_capacity(n);
    let mut weights: Vec<Weight> = Vec::with_capacity(n);
    let mut line_of = Vec::with_capacity(n);
    let mut last_line = hline;
    for (lno, line) in lines.by_ref() {
        if adj.len() == n {
            if line.trim().is_empty() {
                continue;
            }
            return Err(err(lno, MetisErrorKind::TrailingContent));
        }
        last_line = lno;
        let mut toks = line.split_whitespace();
        let w = if vertex_weights {
            let t = toks.next().ok_or(err(lno, MetisErrorKind::MissingWeight))?;
            if t.starts_with('-') {
                return Err(err(lno, MetisErrorKind::NegativeWeight(t.to_string())));
            }
            t.parse::<Weight>()
                .map_err(|_| err(lno, MetisErrorKind::BadToken(t.to_string())))?
        } else {
            1
        };
        let rest: Vec<&str> = toks.collect();
        if edge_weights && rest.len() % 2 == 1 {
            return Err(err(lno, MetisErrorKind::OddEdgeWeights));
        }
        let step = if edge_weights { 2 } else { 1 };
        let v = adj.len();
        let mut list = Vec::with_capacity(rest.len() / step);
        for tok in rest.iter().step_by(step) {
            let u = parse_num(lno, tok)?;
            if u == 0 || u > n {
                return Err(err(lno, MetisErrorKind::OutOfRange(u, n)));
            }
            if u - 1 == v {
                return Err(err(lno, MetisErrorKind::SelfLoop));
            }
            list.push(u - 1);
        }
        let mut sorted = list.clone();
        sorted.sort_unstable();
        if let Some(d) = sorted.windows(2).find(|p| p[0] == p[1]) {
            return Err(err(lno, MetisErrorKind::Duplicate(d[0] + 1)));
        }
        adj.push(sorted);
        weights.push(w);
        line_of.push(lno);
    }
    if adj.len() < n {
        return Err(err(last_line, MetisErrorKind::VertexCount(n, adj.len())));
    }
    for v in 0..n {
        for &u in &adj[v] {
            if adj[u].binary_search(&v).is_err() {
                return Err(err(line_of[v], MetisErrorKind::Asymmetric(v + 1, u + 1)));
            }
        }
    }
    let found = adj.iter().map(Vec::len).sum::<usize>() / 2;
    if found != m {
        return Err(err(hline, MetisErrorKind::EdgeCount { declared: m, found }));
    }
    let graph = WeightedGraph::from_adjacency(adj, weights).expect("validated above");
    Ok(MetisGraph {
        graph,
        has_vertex_weights: vertex_weights,
    })
}

/// METIS text for `g`, with vertex weights when `weighted`.
pub fn write_metis(g: &WeightedGraph, weighted: bool) -> String {
    let mut out = String::new();
    if weighted {
        writeln!(out, "{} {} 10", g.n(), g.m()).unwrap();
    } else {
        writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    }
    for v in 0..g.n() {
        let mut first = true;
        if weighted {
            write!(out, "{}", g.weight(v)).unwrap();
            first = false;
        }
        for &u in g.neighbors(v) {
            if !first {
                out.push(' ');
            }
            write!(out, "{}", u + 1).unwrap();
            first = false;
        }
        out.push('\n');
    }
    out
}

pub fn read_metis(path: &Path) -> Result<MetisGraph, ReadError> {
    let text = std::fs::read_to_string(path).map_err(|source| ReadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_metis(&text).map_err(|source| ReadError::Metis {
        path: path.display().to_string(),
        source,
    })
}

/// One vertex id per line, ascending.
pub fn write_solution(vertices: &[Vertex]) -> String {
    let mut vs = vertices.to_vec();
    vs.sort_unstable();
    let mut out = String::new();
    for v in vs {
        writeln!(out, "{v}").unwrap();
    }
    out
}

pub fn parse_solution(text: &str, path: &str) -> Result<Vec<Vertex>, ReadError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        out.push(t.parse().map_err(|_| ReadError::Solution {
            path: path.to_string(),
            line: i + 1,
            token: t.to_string(),
        })?);
    }
    Ok(out)
}

pub fn read_solution(path: &Path) -> Result<Vec<Vertex>, ReadError> {
    let text = std::fs::read_to_string(path).map_err(|source| ReadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_solution(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn kind(text: &str) -> (usize, MetisErrorKind) {
        let e = parse_metis(text).unwrap_err();
        (e.line, e.kind)
    }

    #[test]
    fn parses_unweighted_path() {
        let g = parse_metis("4 3\n2\n1 3\n2 4\n3\n").unwrap();
        assert_eq!(g.graph, generators::path(4));
        assert!(!g.has_vertex_weights);
    }

    #[test]
    fn parses_weights_comments_and_isolated_vertices() {
        let g = parse_metis("% comment\n3 1 10\n5 2\n7 1\n% mid\n9\n").unwrap();
        assert_eq!(g.graph.weights(), &[5, 7, 9]);
        assert_eq!(g.graph.m(), 1);
        assert!(g.has_vertex_weights);
        let iso = parse_metis("3 0\n\n\n\n").unwrap();
        assert_eq!(iso.graph.n(), 3);
        let ew = parse_metis("2 1 11\n4 2 9\n6 1 9\n").unwrap();
        assert_eq!(ew.graph.weights(), &[4, 6]);
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        assert_eq!(kind("3 2\n2\n1\n1\n"), (4, MetisErrorKind::Asymmetric(3, 1)));
        assert_eq!(kind(""), (1, MetisErrorKind::MissingHeader));
        assert_eq!(kind("x 1\n"), (1, MetisErrorKind::BadHeader("x 1".into())));
        assert_eq!(kind("2 1 7\n2\n1\n"), (1, MetisErrorKind::BadFormat("7".into())));
        assert_eq!(
            kind("2 2\n2\n1\n"),
            (1, MetisErrorKind::EdgeCount { declared: 2, found: 1 })
        );
        assert_eq!(kind("2 1 10\n-1 2\n1 1\n"), (2, MetisErrorKind::NegativeWeight("-1".into())));
        assert_eq!(kind("2 0\n1\n\n"), (2, MetisErrorKind::SelfLoop));
        assert_eq!(kind("2 0\n3\n\n"), (2, MetisErrorKind::OutOfRange(3, 2)));
        assert_eq!(kind("2 1\n2 2\n1\n"), (2, MetisErrorKind::Duplicate(2)));
        assert_eq!(kind("3 0\n\n"), (2, MetisErrorKind::VertexCount(3, 1)));
        assert_eq!(kind("1 0\n\n5\n"), (3, MetisErrorKind::TrailingContent));
    }

    #[test]
    fn round_trip() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g = generators::gnp(30, 0.1, &mut rng);
            let g = generators::with_random_weights(&g, 1, 200, &mut rng);
            let text = write_metis(&g, true);
            assert_eq!(parse_metis(&text).unwrap().graph, g);
            assert_eq!(write_metis(&parse_metis(&text).unwrap().graph, true), text);
            let unit = parse_metis(&write_metis(&g, false)).unwrap().graph;
            assert_eq!(unit.with_weights(g.weights().to_vec()).unwrap(), g);
        }
    }

    #[test]
    fn solution_files() {
        let text = write_solution(&[5, 0, 3]);
        assert_eq!(text, "0\n3\n5\n");
        assert_eq!(parse_solution(&text, "s").unwrap(), vec![0, 3, 5]);
        assert!(parse_solution("1\nx\n", "s").is_err());
    }
}
