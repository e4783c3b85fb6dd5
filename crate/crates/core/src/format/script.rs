//! Move scripts: one `move <kind> <actor> <target> [sign=+1|-1]` per line.
//! The target is `-` for moves that take none; the sign defaults to `+1`.

use super::{significant_lines, syntax, utf8_error_line, Cursor, ParseError, ParseErrorKind};
use crate::id::{Id, Sign};
use crate::moves::{MoveKind, MoveRequest};

pub fn parse_script(input: &[u8]) -> Result<Vec<MoveRequest>, ParseError> {
    let text = std::str::from_utf8(input).map_err(|e| ParseError {
        line: utf8_error_line(input, e.valid_up_to()),
        column: 1,
        kind: ParseErrorKind::Syntax {
            expected: "UTF-8 text".into(),
            found: "invalid byte sequence".into(),
        },
    })?;
    significant_lines(text)
        .iter()
        .map(|l| {
            let mut c = Cursor::new(l);
            c.keyword("move")?;
            let t = c.next("move kind")?;
            let kind: MoveKind = t
                .text
                .parse()
                .map_err(|_| syntax(l.number, t.column, "move kind like `slide_2_2`", t.text))?;
            let (actor, _) = c.id()?;
            let t = c.next("target id or `-`")?;
            let target = if t.text == "-" {
                None
            } else {
                Some(
                    Id::new(t.text)
                        .map_err(|_| syntax(l.number, t.column, "target id or `-`", t.text))?,
                )
            };
            let mut sign = Sign::Plus;
            if let Some(t) = c.peek() {
                sign = t
                    .text
                    .strip_prefix("sign=")
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| syntax(l.number, t.column, "`sign=+1` or `sign=-1`", t.text))?;
                c.next("sign")?;
            }
            c.end()?;
            if kind.needs_target() && target.is_none() {
                return Err(super::semantic(
                    l.number,
                    1,
                    format!("{kind} needs a target"),
                ));
            }
            Ok(MoveRequest::new(kind, actor, target, sign))
        })
        .collect()
}

pub fn serialize_script(script: &[MoveRequest]) -> String {
    script.iter().map(|r| format!("{r}\n")).collect()
}
