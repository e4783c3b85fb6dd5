//! Line tokenizer shared by the text formats.

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    /// 1-based character column.
    pub column: usize,
}

/// A significant (non-blank, comment-stripped) line.
#[derive(Clone, Debug)]
pub(crate) struct Line<'a> {
    pub number: usize,
    pub tokens: Vec<Token<'a>>,
}

/// Splits on whitespace, except inside `{...}` and `[...]` groups. `#`
/// starts a comment.
pub(crate) fn tokenize_line(text: &str) -> Vec<Token<'_>> {
    let text = match text.find('#') {
        Some(i) => &text[..i],
        None => text,
    };
    let mut tokens = Vec::new();
    let mut depth = 0usize;
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in text.char_indices().enumerate() {
        match ch {
            '{' | '[' => depth += 1,
            '}' | ']' => depth = depth.saturating_sub(1),
            _ => {}
        }
        if ch.is_whitespace() && depth == 0 {
            if let Some((b, c)) = start.take() {
                tokens.push(Token {
                    text: &text[b..byte],
                    column: c + 1,
                });
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if let Some((b, c)) = start {
        tokens.push(Token {
            text: &text[b..],
            column: c + 1,
        });
    }
    tokens
}

pub(crate) fn significant_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| Line {
            number: i + 1,
            tokens: tokenize_line(l),
        })
        .filter(|l| !l.tokens.is_empty())
        .collect()
}

/// Line number (1-based) of the first invalid UTF-8 byte.
pub(crate) fn utf8_error_line(bytes: &[u8], valid_up_to: usize) -> usize {
    bytes[..valid_up_to].iter().filter(|&&b| b == b'\n').count() + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_keep_spaces() {
        let toks = tokenize_line("3handle s1 1a={d1:1, d2:2}  2b={} # note");
        let texts: Vec<_> = toks.iter().map(|t| t.text).collect();
        assert_eq!(texts, ["3handle", "s1", "1a={d1:1, d2:2}", "2b={}"]);
        assert_eq!(toks[2].column, 12);
    }

    #[test]
    fn comment_only_line_is_blank() {
        assert!(tokenize_line("   # nothing").is_empty());
    }
}
