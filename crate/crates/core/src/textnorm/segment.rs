use serde::{Deserialize, Serialize};

/// Half-open range of character (Unicode scalar) offsets into a document's text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Self { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    /// Returns the substring of `text` covered by this span, or `None` when
    /// the span runs past the end of the text.
    pub fn slice<'a>(&self, text: &'a str) -> Option<&'a str> {
        let begin = byte_offset(text, self.start)?;
        let end = byte_offset(text, self.end)?;
        text.get(begin..end)
    }
}

fn byte_offset(text: &str, char_index: usize) -> Option<usize> {
    if char_index == 0 {
        return Some(0);
    }
    match text.char_indices().nth(char_index) {
        Some((byte, _)) => Some(byte),
        None if text.chars().count() == char_index => Some(text.len()),
        None => None,
    }
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

/// Splits text into sentences. A sentence ends at `.`, `!` or `?` when the
/// next character is whitespace or the end of the text; an unterminated tail
/// is its own sentence. Whitespace between sentences belongs to no sentence.
pub fn split_sentences(text: &str) -> Vec<(Span, &str)> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let byte_at = |i: usize| chars.get(i).map_or(text.len(), |&(b, _)| b);

    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let mut last_non_ws = 0;

    for (i, &(_, c)) in chars.iter().enumerate() {
        if c.is_whitespace() {
            continue;
        }
        last_non_ws = i;
        let begin = *start.get_or_insert(i);
        let at_boundary = chars.get(i + 1).is_none_or(|&(_, next)| next.is_whitespace());
        if is_terminator(c) && at_boundary {
            out.push((Span::new(begin, i + 1), &text[byte_at(begin)..byte_at(i + 1)]));
            start = None;
        }
    }
    if let Some(begin) = start {
        let end = last_non_ws + 1;
        out.push((Span::new(begin, end), &text[byte_at(begin)..byte_at(end)]));
    }
    out
}
