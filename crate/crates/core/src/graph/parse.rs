use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum GraphFormat {
    /// `n <count>` header, then one `i j` pair per line.
    EdgeList,
    Graph6,
}

impl FromStr for GraphFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edge_list" | "edge-list" | "edges" => Ok(GraphFormat::EdgeList),
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            other => Err(format!("unknown graph format `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed input `{text}`")]
    Malformed { line: usize, text: String },
    #[error("missing `n <count>` header")]
    MissingHeader,
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: loop edge at vertex {vertex}")]
    LoopEdge { line: usize, vertex: usize },
    #[error("invalid graph6 data: {0}")]
    Graph6(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parses a graph in the given format. Duplicate edges collapse.
pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, ParseError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => parse_graph6(text),
    }
}

fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let malformed = |line: usize, text: &str| ParseError::Malformed { line, text: text.to_string() };
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", count] => count.parse::<usize>().map_err(|_| malformed(hline, header))?,
        _ => return Err(ParseError::MissingHeader),
    };
    let mut g = Graph::empty(n)?;
    for (line, l) in lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        let [a, b] = parts.as_slice() else {
            return Err(malformed(line, l));
        };
        let a: usize = a.parse().map_err(|_| malformed(line, l))?;
        let b: usize = b.parse().map_err(|_| malformed(line, l))?;
        for v in [a, b] {
            if v == 0 || v > n {
                return Err(ParseError::VertexOutOfRange { line, vertex: v, n });
            }
        }
        if a == b {
            return Err(ParseError::LoopEdge { line, vertex: a });
        }
        g.add_edge(a, b)?;
    }
    Ok(g)
}

fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let data = text.trim();
    let data = data.strip_prefix(">>graph6<<").unwrap_or(data);
    let bytes = data.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(ParseError::Graph6("byte outside 63..=126".into()));
    }
    let (n, body) = match bytes {
        [] => return Err(ParseError::Graph6("empty input".into())),
        [126, 126, ..] => return Err(ParseError::Graph6("graphs this large are unsupported".into())),
        [126, rest @ ..] if rest.len() >= 3 => {
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, &rest[3..])
        }
        [126, ..] => return Err(ParseError::Graph6("truncated size field".into())),
        [first, rest @ ..] => ((first - 63) as usize, rest),
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooLarge(n).into());
    }
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if body.len() != needed {
        return Err(ParseError::Graph6(format!("expected {needed} data bytes, found {}", body.len())));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                g.add_edge(i + 1, j + 1)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Edge-list text accepted by [`parse_graph`].
pub fn render_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (a, b) in g.edges() {
        let _ = writeln!(out, "{a} {b}");
    }
    out
}

/// Standard graph6 encoding (no header).
pub fn render_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut bytes = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + 63);
    } else {
        bytes.push(126);
        for shift in [12, 6, 0] {
            bytes.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i + 1, j + 1) {
                acc |= 1 << (5 - k % 6);
            }
            k += 1;
            if k % 6 == 0 {
                bytes.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        bytes.push(acc + 63);
    }
    String::from_utf8(bytes).expect("graph6 is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn edge_list_examples() {
        let g = parse_graph("n 2\n1 2", GraphFormat::EdgeList).unwrap();
        assert_eq!(g.edges(), vec![(1, 2)]);

        let g = parse_graph("n 4\n1 4\n2 4\n3 4\n2 3", GraphFormat::EdgeList).unwrap();
        assert_eq!(g.edges(), vec![(1, 4), (2, 3), (2, 4), (3, 4)]);

        let g = parse_graph("n 3\n1 2\n1 2", GraphFormat::EdgeList).unwrap();
        assert_eq!((g.n(), g.edges()), (3, vec![(1, 2)]));
    }

    #[test]
    fn edge_list_errors_are_distinct() {
        assert_eq!(
            parse_graph("n 3\n1 x", GraphFormat::EdgeList),
            Err(ParseError::Malformed { line: 2, text: "1 x".into() })
        );
        assert_eq!(
            parse_graph("n 3\n1 2 3", GraphFormat::EdgeList),
            Err(ParseError::Malformed { line: 2, text: "1 2 3".into() })
        );
        assert_eq!(
            parse_graph("n 3\n1 4", GraphFormat::EdgeList),
            Err(ParseError::VertexOutOfRange { line: 2, vertex: 4, n: 3 })
        );
        assert_eq!(parse_graph("n 3\n2 2", GraphFormat::EdgeList), Err(ParseError::LoopEdge { line: 2, vertex: 2 }));
        assert_eq!(parse_graph("1 2", GraphFormat::EdgeList), Err(ParseError::MissingHeader));
    }

    #[test]
    fn graph6_known_strings() {
        // K4 is "C~", the 5-cycle 1-2-3-4-5-1 is "Dhc".
        assert!(parse_graph("C~", GraphFormat::Graph6).unwrap().is_complete());
        let c5 = parse_graph("Dhc", GraphFormat::Graph6).unwrap();
        assert_eq!(c5, crate::graph::cycle(5));
        assert!(parse_graph("C~~", GraphFormat::Graph6).is_err());
        assert!(parse_graph("C \n", GraphFormat::Graph6).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..=12).prop_flat_map(|n| {
            proptest::collection::vec((1..=n, 1..=n), 0..30)
                .prop_map(move |pairs| Graph::from_edges(n, pairs.into_iter().filter(|(a, b)| a != b)).unwrap())
        })
    }

    proptest! {
        #[test]
        fn round_trips(g in arb_graph()) {
            prop_assert_eq!(&parse_graph(&render_edge_list(&g), GraphFormat::EdgeList).unwrap(), &g);
            prop_assert_eq!(&parse_graph(&render_graph6(&g), GraphFormat::Graph6).unwrap(), &g);
        }
    }
}
