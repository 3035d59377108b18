//! Text formats: edge lists and level-sequence dumps.
//!
//! Edge list: the first significant line is `n`, every following one is `u v` (1-based).
//! Blank lines and lines starting with `#` are skipped.

use std::io::Write;
use std::path::Path;

use fforge_core::enumeration::LevelSequence;
use fforge_core::Tree;

use crate::{Error, Result};

fn significant_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_label(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse { line, msg: format!("expected a vertex label, found {tok:?}") })
}

pub fn parse_edge_list(text: &str) -> Result<Tree> {
    let mut lines = significant_lines(text);
    let (line, header) = lines.next().ok_or(Error::Parse { line: 0, msg: "empty edge list".into() })?;
    let n = parse_label(header, line)?;
    let mut edges = Vec::new();
    for (line, body) in lines {
        let toks: Vec<_> = body.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::Parse { line, msg: format!("expected `u v`, found {body:?}") });
        }
        edges.push((parse_label(toks[0], line)?, parse_label(toks[1], line)?));
    }
    Ok(Tree::from_edges(n, &edges)?)
}

pub fn read_edge_list(path: &Path) -> Result<Tree> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
    parse_edge_list(&text)
}

pub fn write_edge_list(tree: &Tree, mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "{}", tree.order())?;
    for (u, v) in tree.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

pub fn format_level_sequence(seq: &LevelSequence) -> String {
    seq.levels().iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub fn parse_level_sequence(line: &str) -> Result<LevelSequence> {
    let levels = line
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse { line: 1, msg: format!("bad level {t:?}") }))
        .collect::<Result<Vec<usize>>>()?;
    Ok(LevelSequence::new(levels)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_any_order() {
        let t = parse_edge_list("# P4\n4\n\n3 4\n1 2\n  # middle\n2 3\n").unwrap();
        assert_eq!(t, Tree::path(4).unwrap());
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("3\n1 2 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("3\n1 x\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("4\n1 2\n3 4\n"), Err(Error::Core(fforge_core::Error::NotATree(_)))));
    }

    #[test]
    fn write_then_read() {
        let t = Tree::rose(fforge_core::RoseParams::new(3, 4, 2).unwrap()).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&t, &mut buf).unwrap();
        assert_eq!(parse_edge_list(std::str::from_utf8(&buf).unwrap()).unwrap(), t);
    }

    #[test]
    fn level_sequence_lines() {
        let seq = parse_level_sequence("1 2 3 2").unwrap();
        assert_eq!(format_level_sequence(&seq), "1 2 3 2");
        assert!(parse_level_sequence("1 3").is_err());
        assert!(parse_level_sequence("1 a").is_err());
    }
}
