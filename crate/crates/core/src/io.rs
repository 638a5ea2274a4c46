//! Text formats for matrices and partitions.
//!
//! Matrix file:
//!
//! ```text
//! field gf2
//! labels x1 x2 x3 x4 x5
//! 1 0 1 0 0
//! 0 1 0 1 1
//! ```
//!
//! The `labels` line is optional (default `x1 .. xn`). Partition file:
//!
//! ```text
//! universe x1 x2 x3 x4 x5
//! block x1 x3
//! block x2 x4 x5
//! ```
//!
//! Blank lines and lines starting with `#` are ignored in both formats.

use crate::error::{Error, Result};
use crate::fields::{FieldElement, FieldSpec};
use crate::linalg::ExactMatrix;
use crate::roughsets::Partition;
use crate::sets::{ElementSet, Universe};

/// Which kind of object a file holds, judged by its first keyword.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Matrix,
    Partition,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn detect_kind(text: &str) -> Result<InputKind> {
    match content_lines(text).next() {
        Some((_, l)) if l.split_whitespace().next() == Some("field") => Ok(InputKind::Matrix),
        Some((_, l)) if l.split_whitespace().next() == Some("universe") => Ok(InputKind::Partition),
        Some((n, _)) => Err(parse_error(n, "expected `field <tag>` or `universe <ids>`")),
        None => Err(parse_error(1, "empty input")),
    }
}

pub fn parse_matrix(text: &str) -> Result<ExactMatrix> {
    let mut lines = content_lines(text).peekable();
    let (n, header) = lines.next().ok_or_else(|| parse_error(1, "empty input"))?;
    let mut words = header.split_whitespace();
    if words.next() != Some("field") {
        return Err(parse_error(n, "expected `field <tag>`"));
    }
    let tag = words
        .next()
        .ok_or_else(|| parse_error(n, "missing field tag"))?;
    if words.next().is_some() {
        return Err(parse_error(n, "trailing tokens after field tag"));
    }
    let spec: FieldSpec = tag
        .parse()
        .map_err(|e: Error| parse_error(n, e.to_string()))?;

    let mut labels = None;
    if let Some(&(n, line)) = lines.peek() {
        let mut words = line.split_whitespace();
        if words.next() == Some("labels") {
            let universe = Universe::new(words).map_err(|e| parse_error(n, e.to_string()))?;
            labels = Some((n, universe));
            lines.next();
        }
    }

    let mut entries = Vec::new();
    let mut width = None;
    let mut rows = 0;
    for (n, line) in lines {
        let row = line
            .split_whitespace()
            .map(|tok| FieldElement::parse(spec, tok))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| parse_error(n, e.to_string()))?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(parse_error(
                    n,
                    format!("row has {} entries, expected {w}", row.len()),
                ))
            }
            Some(_) => {}
        }
        entries.extend(row);
        rows += 1;
    }
    let cols = width.ok_or_else(|| parse_error(n, "matrix has no rows"))?;
    let labels = match labels {
        Some((n, l)) if l.len() != cols => {
            return Err(parse_error(
                n,
                format!("{} labels for {cols} columns", l.len()),
            ))
        }
        Some((_, l)) => Some(l),
        None => None,
    };
    ExactMatrix::new(spec, rows, cols, entries, labels)
}

/// Serializes a matrix in the format accepted by [`parse_matrix`].
pub fn write_matrix(matrix: &ExactMatrix) -> String {
    let mut out = format!("field {}\nlabels {}\n", matrix.spec(), matrix.labels());
    for r in 0..matrix.rows() {
        let row: Vec<String> = matrix.row(r).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_partition(text: &str) -> Result<Partition> {
    let mut lines = content_lines(text);
    let (n, header) = lines.next().ok_or_else(|| parse_error(1, "empty input"))?;
    let mut words = header.split_whitespace();
    if words.next() != Some("universe") {
        return Err(parse_error(n, "expected `universe <ids>`"));
    }
    let universe = Universe::new(words).map_err(|e| parse_error(n, e.to_string()))?;
    let mut blocks = Vec::new();
    let mut last = n;
    for (n, line) in lines {
        last = n;
        let mut words = line.split_whitespace();
        if words.next() != Some("block") {
            return Err(parse_error(n, "expected `block <ids>`"));
        }
        let block = words
            .map(|w| universe.index_of(w))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| parse_error(n, e.to_string()))?;
        blocks.push(block);
    }
    Partition::new(&universe, blocks).map_err(|e| parse_error(last, e.to_string()))
}

/// Serializes a partition in the format accepted by [`parse_partition`].
pub fn write_partition(partition: &Partition) -> String {
    let mut out = format!("universe {}\n", partition.universe());
    for block in partition.block_sets() {
        out.push_str(&format!("block {block}\n"));
    }
    out
}

/// Parses a set literal: labels separated by commas and/or whitespace. The
/// empty string, `{}` and `-` denote the empty set.
pub fn parse_set(universe: &Universe, literal: &str) -> Result<ElementSet> {
    let trimmed = literal.trim().trim_start_matches('{').trim_end_matches('}');
    if trimmed.trim() == "-" {
        return Ok(universe.empty_set());
    }
    let labels: Vec<&str> = trimmed
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    universe.subset(&labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_BLOCK_MATRIX: &str = "field gf2\nlabels x1 x2 x3 x4 x5\n1 0 1 0 0\n0 1 0 1 1\n";
    const TWO_BLOCK_PARTITION: &str = "universe x1 x2 x3 x4 x5\nblock x1 x3\nblock x2 x4 x5\n";

    #[test]
    fn matrix_roundtrip() {
        let m = parse_matrix(TWO_BLOCK_MATRIX).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 5);
        assert_eq!(write_matrix(&m), TWO_BLOCK_MATRIX);
    }

    #[test]
    fn matrix_defaults_and_comments() {
        let m = parse_matrix("# sign flip\nfield q\n\n1 -1 1\n1 -1 1\n").unwrap();
        assert_eq!(m.labels().labels(), ["x1", "x2", "x3"]);
        assert_eq!(m.get(0, 1).to_string(), "-1");
        let r = parse_matrix("field q\n7/2 1\n").unwrap();
        assert_eq!(r.get(0, 0).to_string(), "7/2");
    }

    #[test]
    fn matrix_errors() {
        let ragged = parse_matrix("field q\n1 2\n1\n").unwrap_err();
        assert!(matches!(ragged, Error::Parse { line: 3, .. }), "{ragged:?}");
        assert!(matches!(
            parse_matrix("field gf4\n1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_matrix("field gf3\n7/2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_matrix("field q\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_matrix("labels a\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_matrix("field q\nlabels a b\n1 2 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_matrix("field q\nlabels a a\n1 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn partition_roundtrip() {
        let p = parse_partition(TWO_BLOCK_PARTITION).unwrap();
        assert_eq!(p.block_count(), 2);
        assert_eq!(write_partition(&p), TWO_BLOCK_PARTITION);
        let shuffled =
            parse_partition("universe x1 x2 x3 x4 x5\nblock x5 x2 x4\nblock x3 x1\n").unwrap();
        assert_eq!(shuffled, p);
    }

    #[test]
    fn partition_errors() {
        assert!(parse_partition("universe a b\nblock a\n").is_err());
        assert!(parse_partition("universe a b\nblock a b\nblock b\n").is_err());
        assert!(parse_partition("universe a b\nblock a c\n").is_err());
        assert!(parse_partition("universe a b\nrow a b\n").is_err());
        assert!(parse_partition("field q\n").is_err());
    }

    #[test]
    fn kinds() {
        assert_eq!(detect_kind(TWO_BLOCK_MATRIX).unwrap(), InputKind::Matrix);
        assert_eq!(
            detect_kind(TWO_BLOCK_PARTITION).unwrap(),
            InputKind::Partition
        );
        assert!(detect_kind("1 2 3").is_err());
        assert!(detect_kind("").is_err());
    }

    #[test]
    fn set_literals() {
        let u = Universe::with_size(5).unwrap();
        assert_eq!(parse_set(&u, "x1,x2,x3").unwrap().members(), [0, 1, 2]);
        assert_eq!(parse_set(&u, "{x3 x1}").unwrap().members(), [0, 2]);
        assert!(parse_set(&u, "").unwrap().is_empty());
        assert!(parse_set(&u, "{}").unwrap().is_empty());
        assert!(parse_set(&u, "-").unwrap().is_empty());
        assert!(parse_set(&u, "x9").is_err());
    }
}
