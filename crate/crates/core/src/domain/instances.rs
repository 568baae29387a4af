//! Plain-text instance files.
//!
//! One instance per line: whitespace-separated tiles in cell order, with an
//! optional leading index (detected from the token count). Blank lines and
//! lines starting with `#` are ignored.

use thiserror::Error;

use super::tile::{TileError, TileState};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: invalid token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: expected {expected} or {} values, found {found}", expected + 1)]
    WrongCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: TileError,
    },
    #[error(transparent)]
    Board(#[from] TileError),
}

impl ParseError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::BadToken { line, .. }
            | ParseError::WrongCount { line, .. }
            | ParseError::Invalid { line, .. } => Some(*line),
            ParseError::Board(_) => None,
        }
    }
}

/// Parses every instance in `text` for a `width` x `height` board.
pub fn parse_instances(text: &str, width: usize, height: usize) -> Result<Vec<TileState>, ParseError> {
    TileState::goal(width, height)?;
    let cells = width * height;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let values = body
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u64>().map_err(|_| ParseError::BadToken {
                    line,
                    token: tok.to_string(),
                })
            })
            .collect::<Result<Vec<u64>, _>>()?;
        let tiles = match values.len() {
            n if n == cells => &values[..],
            n if n == cells + 1 => &values[1..],
            found => {
                return Err(ParseError::WrongCount {
                    line,
                    expected: cells,
                    found,
                })
            }
        };
        let tiles = tiles
            .iter()
            .map(|&v| {
                u8::try_from(v).map_err(|_| ParseError::Invalid {
                    line,
                    source: TileError::OutOfRange(u8::MAX),
                })
            })
            .collect::<Result<Vec<u8>, _>>()?;
        let state = TileState::from_tiles(width, height, &tiles)
            .map_err(|source| ParseError::Invalid { line, source })?;
        out.push(state);
    }
    Ok(out)
}

/// Formats instances one per line, preceded by `header` lines as comments.
pub fn format_instances(states: &[TileState], header: &[String]) -> String {
    let mut out = String::new();
    for h in header {
        out.push_str("# ");
        out.push_str(h);
        out.push('\n');
    }
    for s in states {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    out
}

/// Header line recorded in generated instance files.
pub fn generated_header(seed: u64, walk: usize) -> String {
    format!("seed={seed} walk={walk}")
}
