//! Presentations as text: `gens <n>`, then one relator per line written
//! with letters `g1`, `g1^-1`, ...; `1` is the empty relator.

use super::{significant_lines, syntax, utf8_error_line, Cursor, ParseError, ParseErrorKind};
use crate::groups::{Presentation, Word};

fn parse_letter(
    line: usize,
    column: usize,
    text: &str,
    generators: usize,
) -> Result<i32, ParseError> {
    let expected = "letter like `g1` or `g1^-1`";
    let (body, inverse) = match text.strip_suffix("^-1") {
        Some(b) => (b, true),
        None => (text.strip_suffix("^1").unwrap_or(text), false),
    };
    let k: usize = body
        .strip_prefix('g')
        .filter(|n| n.chars().all(|c| c.is_ascii_digit()) && !n.is_empty())
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| syntax(line, column, expected, text))?;
    if k == 0 || k > generators {
        return Err(super::semantic(
            line,
            column,
            format!("generator g{k} out of range 1..={generators}"),
        ));
    }
    let k = k as i32;
    Ok(if inverse { -k } else { k })
}

pub fn parse_presentation(input: &[u8]) -> Result<Presentation, ParseError> {
    let text = std::str::from_utf8(input).map_err(|e| ParseError {
        line: utf8_error_line(input, e.valid_up_to()),
        column: 1,
        kind: ParseErrorKind::Syntax {
            expected: "UTF-8 text".into(),
            found: "invalid byte sequence".into(),
        },
    })?;
    let lines = significant_lines(text);
    let Some((header, body)) = lines.split_first() else {
        return Err(syntax(1, 1, "header `gens <n>`", ""));
    };
    let mut c = Cursor::new(header);
    c.keyword("gens")?;
    let t = c.next("generator count")?;
    let generators: usize = super::parse_int(header.number, t.column, t.text, "generator count")?;
    if generators > i32::MAX as usize {
        return Err(syntax(
            header.number,
            t.column,
            "a smaller generator count",
            t.text,
        ));
    }
    c.end()?;
    let mut relators = Vec::new();
    for l in body {
        if l.tokens.len() == 1 && l.tokens[0].text == "1" {
            relators.push(Word::empty());
            continue;
        }
        let word = l
            .tokens
            .iter()
            .map(|t| parse_letter(l.number, t.column, t.text, generators))
            .collect::<Result<Vec<_>, _>>()?;
        relators.push(Word(word));
    }
    Ok(Presentation::new(generators, relators))
}

pub fn serialize_presentation(p: &Presentation) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let p = parse_presentation(b"gens 2\ng1 g1 g2^-1 g2^-1 g2^-1\n1\n").unwrap();
        assert_eq!(p.relators.len(), 2);
        assert!(p.relators[1].is_empty());
        assert_eq!(
            parse_presentation(serialize_presentation(&p).as_bytes()).unwrap(),
            p
        );
    }

    #[test]
    fn errors() {
        let e = parse_presentation(b"gens 1\ng2\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        assert!(parse_presentation(b"gens x\n").is_err());
        assert!(parse_presentation(b"gens 1\ng1^2\n").is_err());
        assert!(parse_presentation(b"gens 1\ng0\n").is_err());
        assert!(parse_presentation(b"gens 1\ng+1\n").is_err());
        assert_eq!(
            parse_presentation(b"gens 0\n").unwrap(),
            Presentation::free(0)
        );
    }
}
