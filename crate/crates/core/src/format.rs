//! Text file format for digraphs.
//!
//! Line 1 is `digraph <n>`; every following non-comment line is one arc
//! `<u> <v>` with 0-based vertices. Lines starting with `#` are ignored.
//! Duplicate arc lines are an error on read; writing emits arcs sorted, so
//! output is byte-identical across runs.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::digraph::{Digraph, DigraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: duplicate arc ({u}, {v})")]
    DuplicateArc { line: usize, u: usize, v: usize },
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}

pub fn parse_digraph(text: &str) -> Result<Digraph, FormatError> {
    let mut order: Option<usize> = None;
    let mut arcs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        match order {
            None => {
                let rest = content.strip_prefix("digraph").ok_or_else(|| {
                    FormatError::Syntax {
                        line,
                        message: format!("expected header `digraph <n>`, found `{content}`"),
                    }
                })?;
                let n: usize = rest.trim().parse().map_err(|_| FormatError::Syntax {
                    line,
                    message: format!("invalid vertex count `{}`", rest.trim()),
                })?;
                order = Some(n);
            }
            Some(_) => {
                let mut parts = content.split_whitespace();
                let (u, v) = match (parts.next(), parts.next(), parts.next()) {
                    (Some(a), Some(b), None) => {
                        let parse = |s: &str| {
                            s.parse::<usize>().map_err(|_| FormatError::Syntax {
                                line,
                                message: format!("invalid vertex `{s}`"),
                            })
                        };
                        (parse(a)?, parse(b)?)
                    }
                    _ => {
                        return Err(FormatError::Syntax {
                            line,
                            message: format!("expected `<u> <v>`, found `{content}`"),
                        })
                    }
                };
                if !arcs.insert((u, v)) {
                    return Err(FormatError::DuplicateArc { line, u, v });
                }
            }
        }
    }
    let order = order.ok_or(FormatError::Syntax {
        line: 0,
        message: "missing `digraph <n>` header".into(),
    })?;
    Ok(Digraph::from_arc_list(order, arcs)?)
}

pub fn write_digraph(g: &Digraph) -> String {
    let mut out = format!("digraph {}\n", g.order());
    for (u, v) in g.arcs() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_a_digraph() {
        let g = Digraph::from_arc_list(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let text = write_digraph(&g);
        assert_eq!(parse_digraph(&text).unwrap(), g);
        assert_eq!(write_digraph(&parse_digraph(&text).unwrap()), text);
    }

    #[test]
    fn ignores_comments_and_blank_lines() {
        let text = "# a comment\ndigraph 2\n\n0 1\n# another\n1 0\n";
        let g = parse_digraph(text).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.arc_count(), 2);
    }

    #[test]
    fn rejects_duplicate_arc_lines() {
        let text = "digraph 2\n0 1\n0 1\n";
        assert!(matches!(
            parse_digraph(text),
            Err(FormatError::DuplicateArc { line: 3, u: 0, v: 1 })
        ));
    }

    #[test]
    fn rejects_bad_header_and_bad_arcs() {
        assert!(matches!(
            parse_digraph("graph 3\n"),
            Err(FormatError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_digraph("digraph 3\n0\n"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_digraph("digraph 2\n0 0\n"),
            Err(FormatError::Digraph(DigraphError::Loop(0)))
        ));
        assert!(parse_digraph("").is_err());
    }
}
