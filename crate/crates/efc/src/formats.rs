//! Readers for graph, matrix and decomposition-tree files.

use std::fs;
use std::path::{Path, PathBuf};

use efc_core::decomposition::{DecompositionError, DecompositionTree, Part, PartKind};
use efc_core::matroid::{r10, BinaryMatroid, Graph, MatroidError};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

pub fn read_file(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.to_path_buf(), source })
}

/// Non-blank lines with `#` comments stripped, numbered from 1.
pub fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// `e <name> <u> <v>` per line; vertices are implicit.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut g = Graph::new();
    for (n, line) in content_lines(text) {
        let t: Vec<&str> = line.split_whitespace().collect();
        match t.as_slice() {
            ["e", name, u, v] => {
                g.add_edge(name, u, v).map_err(|e| syntax(n, e.to_string()))?;
            }
            _ => return Err(syntax(n, format!("expected `e <name> <u> <v>`, got `{line}`"))),
        }
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    for e in g.edges() {
        out.push_str(&format!("e {} {} {}\n", e.name, g.vertices()[e.u], g.vertices()[e.v]));
    }
    out
}

/// `elements: <n1> <n2> ...` followed by one row of 0/1 characters per line.
pub fn parse_matrix(text: &str) -> Result<BinaryMatroid, FormatError> {
    let mut lines = content_lines(text);
    let (n, header) = lines.next().ok_or_else(|| syntax(1, "empty matrix file"))?;
    let names = header
        .strip_prefix("elements:")
        .ok_or_else(|| syntax(n, "expected `elements: <names>`"))?
        .split_whitespace()
        .collect::<Vec<_>>();
    let mut rows = Vec::new();
    for (n, line) in lines {
        if let Some(c) = line.chars().find(|c| !matches!(c, '0' | '1') && !c.is_whitespace()) {
            return Err(syntax(n, format!("unexpected character `{c}` in a matrix row")));
        }
        rows.push(line);
    }
    Ok(BinaryMatroid::from_strings(&names, &rows)?)
}

pub fn write_matrix(m: &BinaryMatroid) -> String {
    let mut out = format!("elements: {}\n", m.elements().join(" "));
    for r in m.rows() {
        out.extend((0..m.len()).map(|i| if r.get(i) { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

/// A decomposition tree: `node <id> <kind> <payload-file>` and
/// `edge <a> <b> <shared>...` lines, with zero, one or three shared
/// elements per edge. Payload paths are relative to `base`; an `r10` node
/// without a payload gets the standard copy of R10.
pub fn parse_tree(text: &str, base: &Path) -> Result<DecompositionTree, FormatError> {
    let mut t = DecompositionTree::new();
    for (n, line) in content_lines(text) {
        let tok: Vec<&str> = line.split_whitespace().collect();
        match tok.as_slice() {
            ["node", id, kind, rest @ ..] if rest.len() <= 1 => {
                let kind = PartKind::parse(kind).ok_or_else(|| syntax(n, format!("unknown part kind `{kind}`")))?;
                let payload = |p: &str| read_file(&base.join(p));
                let part = match (kind, rest) {
                    (PartKind::Graphic, [p]) => Part::graphic(parse_graph(&payload(p)?)?),
                    (PartKind::Cographic, [p]) => Part::cographic(parse_graph(&payload(p)?)?),
                    (PartKind::Binary, [p]) => Part::binary(parse_matrix(&payload(p)?)?),
                    (PartKind::R10, [p]) => Part::r10(parse_matrix(&payload(p)?)?)?,
                    (PartKind::R10, []) => Part::r10(r10())?,
                    _ => return Err(syntax(n, format!("`{}` node needs a payload file", kind.as_str()))),
                };
                t.add_node(id, part).map_err(|e| syntax(n, e.to_string()))?;
            }
            ["edge", a, b, shared @ ..] => {
                t.add_edge(a, b, shared).map_err(|e| syntax(n, e.to_string()))?;
            }
            _ => return Err(syntax(n, format!("expected a `node` or `edge` line, got `{line}`"))),
        }
    }
    t.validate()?;
    Ok(t)
}

/// What an input file holds, guessed from its first content line.
pub fn sniff_kind(text: &str) -> Option<&'static str> {
    let (_, first) = content_lines(text).next()?;
    let word = first.split_whitespace().next()?;
    match word {
        "e" => Some("graphic"),
        "node" | "edge" => Some("dectree"),
        _ if first.starts_with("elements:") => Some("binary"),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = Graph::complete(4);
        let back = parse_graph(&write_graph(&g)).unwrap();
        assert_eq!(back.edge_names(), g.edge_names());
        assert_eq!(back.vertices(), g.vertices());
    }

    #[test]
    fn matrix_round_trip() {
        let m = r10();
        let back = parse_matrix(&write_matrix(&m)).unwrap();
        assert_eq!(back.elements(), m.elements());
        assert_eq!(back.rows(), m.rows());
    }

    #[test]
    fn comments_and_errors() {
        let g = parse_graph("# triangle\ne a 1 2\n\ne b 2 3 # tail\ne c 1 3\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(matches!(parse_graph("e a 1\n"), Err(FormatError::Syntax { line: 1, .. })));
        assert!(matches!(parse_graph("e a 1 1\n"), Err(FormatError::Syntax { line: 1, .. })));
        assert!(matches!(parse_matrix("elements: a b\n12\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(parse_matrix("elements: a b\n1\n").is_err());
    }

    #[test]
    fn sniffing() {
        assert_eq!(sniff_kind("# g\ne a 1 2\n"), Some("graphic"));
        assert_eq!(sniff_kind("elements: a\n1\n"), Some("binary"));
        assert_eq!(sniff_kind("node a r10\n"), Some("dectree"));
        assert_eq!(sniff_kind("var x\n"), None);
    }

    #[test]
    fn tree_with_builtin_r10() {
        let t = parse_tree("node a r10\n", Path::new(".")).unwrap();
        assert_eq!(t.nodes().len(), 1);
        assert!(parse_tree("node a graphic\n", Path::new(".")).is_err());
        assert!(parse_tree("edge a b x\n", Path::new(".")).is_err());
    }
}
