//! PD text and structured (JSON) I/O.
//!
//! Grammar: `term := "X[" int "," int "," int "," int "]" | "O"`, terms
//! separated by whitespace, `#` starts a comment running to end of line.

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, EdgeId, Orientation};
use crate::error::{KnotError, Result};

fn syntax(offset: usize, message: impl Into<String>) -> KnotError {
    KnotError::Syntax {
        offset,
        message: message.into(),
    }
}

/// Parses PD text; the result is validated.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut codes: Vec<[EdgeId; 4]> = Vec::new();
    let mut loops = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' | b'\r' | b'\n' | b',' | b';' => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'O' => {
                loops += 1;
                i += 1;
                if i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'#' {
                    return Err(syntax(i, "expected whitespace after O"));
                }
            }
            b'X' => {
                let open = i + 1;
                if bytes.get(open) != Some(&b'[') {
                    return Err(syntax(i, "expected '[' after X"));
                }
                let close = text[open..]
                    .find(']')
                    .map(|k| open + k)
                    .ok_or_else(|| syntax(open, "unclosed '['"))?;
                let inner = &text[open + 1..close];
                if inner.contains('[') || inner.contains('X') {
                    return Err(syntax(open, "unclosed '['"));
                }
                let mut slots = [0; 4];
                let mut count = 0;
                let mut pos = open + 1;
                for part in inner.split(',') {
                    let trimmed = part.trim();
                    if count == 4 {
                        return Err(syntax(pos, "more than four slots"));
                    }
                    slots[count] = trimmed
                        .parse()
                        .map_err(|_| syntax(pos, format!("bad edge label {trimmed:?}")))?;
                    count += 1;
                    pos += part.len() + 1;
                }
                if count != 4 {
                    return Err(syntax(open, "expected four slots"));
                }
                codes.push(slots);
                i = close + 1;
            }
            _ => {
                return Err(syntax(i, format!("unexpected character {:?}", text[i..].chars().next().unwrap())));
            }
        }
    }
    Diagram::from_pd(&codes, loops).checked()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Pd,
    Structured,
}

#[derive(Serialize, Deserialize)]
struct StructuredDiagram {
    format: u32,
    free_loops: usize,
    crossings: Vec<[EdgeId; 4]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    orientation: Option<Vec<bool>>,
}

pub fn emit_pd(d: &Diagram) -> String {
    let mut terms: Vec<String> = d
        .crossings()
        .iter()
        .map(|c| {
            let [a, b, x, y] = c.slots;
            format!("X[{a},{b},{x},{y}]")
        })
        .collect();
    terms.extend(std::iter::repeat("O".to_string()).take(d.free_loops()));
    terms.join(" ")
}

/// Structured form with key order (format, free_loops, crossings, orientation).
pub fn emit_structured(d: &Diagram, orientation: Option<&Orientation>) -> String {
    let s = StructuredDiagram {
        format: 1,
        free_loops: d.free_loops(),
        crossings: d.crossings().iter().map(|c| c.slots).collect(),
        orientation: orientation.map(|o| o.reversed.clone()),
    };
    serde_json::to_string(&s).expect("plain data serializes")
}

pub fn emit(d: &Diagram, format: Format) -> Result<String> {
    d.topology()?;
    Ok(match format {
        Format::Pd => emit_pd(d),
        Format::Structured => emit_structured(d, None),
    })
}

pub fn parse_structured(text: &str) -> Result<(Diagram, Option<Orientation>)> {
    let s: StructuredDiagram = serde_json::from_str(text).map_err(|e| {
        syntax(
            e.column().saturating_sub(1),
            format!("structured input: {e}"),
        )
    })?;
    if s.format != 1 {
        return Err(syntax(0, format!("unsupported format {}", s.format)));
    }
    let d = Diagram::from_pd(&s.crossings, s.free_loops).checked()?;
    Ok((d, s.orientation.map(|reversed| Orientation { reversed })))
}

/// Either syntax, chosen by the first non-blank character.
pub fn parse_any(text: &str) -> Result<Diagram> {
    if text.trim_start().starts_with('{') {
        Ok(parse_structured(text)?.0)
    } else {
        parse_pd(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn parses_trefoil_and_unknot() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        let u = parse_pd("O").unwrap();
        assert_eq!((u.crossing_count(), u.free_loops()), (0, 1));
        assert_eq!(emit_pd(&u), "O");
    }

    #[test]
    fn unclosed_bracket_reports_its_offset() {
        match parse_pd("X[1,4,2,5] X[3,6,4") {
            Err(KnotError::Syntax { offset, .. }) => assert_eq!(offset, 12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn comments_and_bad_tokens() {
        assert!(parse_pd("# a comment\nX[1,4,2,5] X[3,6,4,1] X[5,2,6,3] # tail").is_ok());
        assert!(matches!(parse_pd("X[1,4,2]"), Err(KnotError::Syntax { .. })));
        assert!(matches!(parse_pd("Y"), Err(KnotError::Syntax { offset: 0, .. })));
        assert!(matches!(
            parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,1]"),
            Err(KnotError::InvalidDiagram(_))
        ));
    }

    #[test]
    fn structured_round_trip_is_byte_stable() {
        let d = parse_pd(TREFOIL).unwrap();
        let s = emit(&d, Format::Structured).unwrap();
        assert_eq!(
            s,
            r#"{"format":1,"free_loops":0,"crossings":[[1,4,2,5],[3,6,4,1],[5,2,6,3]]}"#
        );
        let (back, o) = parse_structured(&s).unwrap();
        assert_eq!(back, d);
        assert!(o.is_none());
        assert_eq!(parse_any(&s).unwrap(), d);
    }
}
