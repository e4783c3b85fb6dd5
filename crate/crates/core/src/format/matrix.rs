//! Integer grids: a `rows cols` header line, then one row per line.

use num_bigint::BigInt;

use super::{significant_lines, syntax, utf8_error_line, ParseError, ParseErrorKind};
use crate::matrix::IntegerMatrix;

pub fn parse_matrix(input: &[u8]) -> Result<IntegerMatrix, ParseError> {
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
        return Err(syntax(1, 1, "header `<rows> <cols>`", ""));
    };
    let dims: Vec<usize> = header
        .tokens
        .iter()
        .map(|t| super::parse_int(header.number, t.column, t.text, "dimension"))
        .collect::<Result<_, _>>()?;
    let [rows, cols] = dims[..] else {
        let t = &header.tokens[header.tokens.len().min(2).saturating_sub(1)];
        return Err(syntax(
            header.number,
            t.column,
            "header `<rows> <cols>`",
            t.text,
        ));
    };
    if body.len() != rows {
        let (line, found) = match body.get(rows) {
            Some(extra) => (extra.number, extra.tokens[0].text),
            None => (body.last().map_or(header.number, |l| l.number) + 1, ""),
        };
        return Err(syntax(line, 1, format!("{rows} rows"), found));
    }
    let mut m = IntegerMatrix::zeros(rows, cols);
    for (i, l) in body.iter().enumerate() {
        if l.tokens.len() != cols {
            let col = l.tokens.get(cols).map_or(1, |t| t.column);
            let found = l.tokens.get(cols).map_or("", |t| t.text);
            return Err(syntax(l.number, col, format!("{cols} entries"), found));
        }
        for (j, t) in l.tokens.iter().enumerate() {
            let digits = t.text.strip_prefix('+').unwrap_or(t.text);
            m[(i, j)] = digits
                .parse::<BigInt>()
                .ok()
                .filter(|_| !digits.starts_with('+'))
                .ok_or_else(|| syntax(l.number, t.column, "integer", t.text))?;
        }
    }
    Ok(m)
}

pub fn serialize_matrix(m: &IntegerMatrix) -> String {
    m.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let m = parse_matrix(b"2 3 # header\n1 -2 3\n0 0 12345678901234567890123\n").unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 3));
        assert_eq!(parse_matrix(serialize_matrix(&m).as_bytes()).unwrap(), m);
    }

    #[test]
    fn errors() {
        assert_eq!(parse_matrix(b"2 2\n1 0\n").unwrap_err().line, 3);
        assert_eq!(parse_matrix(b"1 2\n1 x\n").unwrap_err().column, 3);
        assert!(parse_matrix(b"1\n").is_err());
        assert!(parse_matrix(b"").is_err());
        let empty = parse_matrix(b"0 0\n").unwrap();
        assert_eq!(empty.rows(), 0);
    }
}
