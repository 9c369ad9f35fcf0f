//! Plain-text edge log: a `round,square,circle` header followed by one
//! decimal record per line.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::process::{RoundRecord, VertexId};

pub const HEADER: &str = "round,square,circle";

pub fn write_edge_log<W: Write>(mut out: W, records: &[RoundRecord]) -> Result<()> {
    writeln!(out, "{HEADER}")?;
    for r in records {
        writeln!(out, "{},{},{}", r.round, r.square, r.circle)?;
    }
    out.flush()?;
    Ok(())
}

pub fn edge_log_string(records: &[RoundRecord]) -> String {
    let mut buf = Vec::with_capacity(records.len() * 16 + HEADER.len() + 1);
    write_edge_log(&mut buf, records).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

/// Reads an edge log. Blank lines are skipped; anything else that is not a
/// well-formed record is an error.
pub fn read_edge_log<R: BufRead>(input: R) -> Result<Vec<RoundRecord>> {
    let mut records = Vec::new();
    let mut saw_header = false;
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        if !saw_header {
            if line.trim() != HEADER {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected header {HEADER:?}"),
                });
            }
            saw_header = true;
            continue;
        }
        let mut fields = line.split(',');
        let mut next = |name: &str| -> Result<u64> {
            let f = fields.next().ok_or_else(|| Error::Parse {
                line: lineno,
                message: format!("missing field {name}"),
            })?;
            f.trim().parse::<u64>().map_err(|e| Error::Parse {
                line: lineno,
                message: format!("bad {name} {f:?}: {e}"),
            })
        };
        let round = next("round")?;
        let square = next("square")?;
        let circle = next("circle")?;
        if fields.next().is_some() {
            return Err(Error::Parse {
                line: lineno,
                message: "too many fields".into(),
            });
        }
        let vertex = |v: u64| -> Result<VertexId> {
            u32::try_from(v)
                .map(VertexId::new)
                .map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("vertex {v} exceeds u32"),
                })
        };
        records.push(RoundRecord {
            round,
            square: vertex(square)?,
            circle: vertex(circle)?,
        });
    }
    if !saw_header {
        return Err(Error::Parse {
            line: 0,
            message: "empty edge log".into(),
        });
    }
    Ok(records)
}

/// Smallest `n` that contains every vertex of the log.
pub fn min_vertex_count(records: &[RoundRecord]) -> usize {
    records
        .iter()
        .map(|r| r.square.index().max(r.circle.index()) + 1)
        .max()
        .unwrap_or(1)
}
