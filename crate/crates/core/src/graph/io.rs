//! Edge-list text format.
//!
//! ```text
//! # optional comments
//! V 4
//! 0 1
//! 1 2
//! ```
//!
//! The `V <count>` header is optional; without it the vertex count is one more
//! than the largest id seen.

use std::fmt;
use std::str::FromStr;

use super::{Graph, GraphError};

fn parse_id(token: &str, line: usize) -> Result<usize, GraphError> {
    if token.starts_with('-') {
        return Err(GraphError::Parse {
            line,
            message: format!("negative vertex id `{token}`"),
        });
    }
    token.parse().map_err(|_| GraphError::Parse {
        line,
        message: format!("expected a vertex id, found `{token}`"),
    })
}

impl Graph {
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut declared: Option<usize> = None;
        let mut edges = Vec::new();
        let mut max_id: Option<usize> = None;
        let mut seen_content = false;

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            if tokens[0] == "V" {
                if seen_content {
                    return Err(GraphError::Parse {
                        line,
                        message: "header `V <count>` must precede all edges".into(),
                    });
                }
                if tokens.len() != 2 {
                    return Err(GraphError::Parse {
                        line,
                        message: "header must be `V <count>`".into(),
                    });
                }
                declared = Some(parse_id(tokens[1], line)?);
                seen_content = true;
                continue;
            }
            seen_content = true;
            if tokens.len() != 2 {
                return Err(GraphError::Parse {
                    line,
                    message: format!("expected `<tail> <head>`, found {} tokens", tokens.len()),
                });
            }
            let tail = parse_id(tokens[0], line)?;
            let head = parse_id(tokens[1], line)?;
            if let Some(count) = declared {
                for v in [tail, head] {
                    if v >= count {
                        return Err(GraphError::Parse {
                            line,
                            message: format!("vertex {v} exceeds declared count {count}"),
                        });
                    }
                }
            }
            max_id = Some(max_id.map_or(tail.max(head), |m| m.max(tail).max(head)));
            edges.push((tail, head));
        }

        let vertex_count = declared.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
        Graph::new(vertex_count, edges)
    }

    /// Serializes with an explicit header so isolated vertices survive a round trip.
    pub fn to_edge_list(&self) -> String {
        self.to_string()
    }
}

impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Graph::parse_edge_list(s)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "V {}", self.vertex_count)?;
        for e in &self.edges {
            writeln!(f, "{} {}", e.tail, e.head)?;
        }
        Ok(())
    }
}
