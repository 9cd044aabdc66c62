use super::{Boundary, MorseDiagram, Slice, SliceKind};
use crate::error::{OqaError, Result};

/// Parses the slice grammar: one slice per line or ` / `-separated, `#` comments, and an optional
/// `boundary: closed|open|open_down` item (default `closed`) before the first slice.
pub fn parse_diagram(text: &str) -> Result<MorseDiagram> {
    let mut boundary = None;
    let mut slices = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for item in line.split('/') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let err = |msg: String| OqaError::Syntax { line: lineno + 1, msg };
            if let Some(rest) = item.strip_prefix("boundary:") {
                if boundary.is_some() || !slices.is_empty() {
                    return Err(err("boundary must be given once, before the first slice".into()));
                }
                let b = rest.trim();
                boundary = Some(Boundary::from_token(b).ok_or_else(|| err(format!("unknown boundary `{b}`")))?);
                continue;
            }
            let mut tokens = item.split_whitespace();
            let name = tokens.next().unwrap_or_default();
            let kind = SliceKind::from_token(name).ok_or_else(|| err(format!("unknown slice `{name}`")))?;
            let pos = tokens
                .next()
                .ok_or_else(|| err(format!("`{name}` needs a position")))?
                .parse::<usize>()
                .map_err(|e| err(format!("bad position in `{item}`: {e}")))?;
            if let Some(extra) = tokens.next() {
                return Err(err(format!("unexpected `{extra}` after `{name} {pos}`")));
            }
            slices.push(Slice::new(kind, pos));
        }
    }
    MorseDiagram::new(boundary.unwrap_or(Boundary::Closed), slices)
}
