use crate::error::Result;

/// Abbreviations whose trailing period never ends a sentence.
pub const DEFAULT_ABBREVIATIONS: &[&str] = &[
    "e.g.", "i.e.", "et al.", "vs.", "cf.", "fig.", "eq.", "approx.", "dr.", "mr.", "mrs.", "ms.", "prof.", "st.",
    "inc.", "ltd.", "co.", "jr.", "sr.", "vol.", "pp.",
];

/// Lowercase abbreviation list consulted by [`split_sentences_with`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Abbreviations(Vec<String>);

impl Default for Abbreviations {
    fn default() -> Self {
        Abbreviations(DEFAULT_ABBREVIATIONS.iter().map(|s| s.to_string()).collect())
    }
}

impl Abbreviations {
    pub fn new<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Abbreviations(
            entries
                .into_iter()
                .map(|s| s.as_ref().trim().to_lowercase())
                .filter(|s| !s.is_empty())
                .collect(),
        )
    }

    /// One abbreviation per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        Ok(Abbreviations::new(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        ))
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    /// Whether `head` (text up to and including a period) ends with a listed
    /// abbreviation that starts on a word boundary.
    fn suppresses(&self, head: &str) -> bool {
        let lower = head.to_lowercase();
        self.0.iter().any(|abbr| {
            lower
                .strip_suffix(abbr.as_str())
                .is_some_and(|before| before.chars().next_back().is_none_or(|c| !c.is_alphanumeric()))
        })
    }
}

/// Sentences of a text, as trimmed slices of the original.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceSplit<'a> {
    pub sentences: Vec<&'a str>,
}

impl SentenceSplit<'_> {
    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }
}

pub fn split_sentences(text: &str) -> SentenceSplit<'_> {
    split_sentences_with(text, &Abbreviations::default())
}

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | ')' | ']' | '\u{201D}' | '\u{2019}' | '*')
}

fn is_opener(c: char) -> bool {
    matches!(c, '"' | '\'' | '(' | '[' | '\u{201C}' | '\u{2018}' | '*')
}

/// Splits on `.`, `!`, `?` (plus any closing quotes or brackets) when followed
/// by whitespace and an uppercase letter or digit, or by the end of the text.
/// A period closing a listed abbreviation never splits. Spans without any
/// word character are dropped, so a text with at least one word always yields
/// at least one sentence.
pub fn split_sentences_with<'a>(text: &'a str, abbreviations: &Abbreviations) -> SentenceSplit<'a> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut sentences = Vec::new();
    let mut start = 0usize;
    let mut i = 0usize;

    while i < chars.len() {
        let (pos, c) = chars[i];
        if !is_terminator(c) {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < chars.len() && (is_terminator(chars[j].1) || is_closer(chars[j].1)) {
            j += 1;
        }
        let mut k = j;
        while k < chars.len() && chars[k].1.is_whitespace() {
            k += 1;
        }
        let boundary = if k == chars.len() {
            true
        } else if k > j {
            let mut m = k;
            while m < chars.len() && is_opener(chars[m].1) {
                m += 1;
            }
            m < chars.len() && (chars[m].1.is_uppercase() || chars[m].1.is_ascii_digit())
        } else {
            false
        };
        let abbreviated = c == '.' && abbreviations.suppresses(&text[..pos + c.len_utf8()]);

        if boundary && !abbreviated {
            let end = chars.get(j).map_or(text.len(), |&(p, _)| p);
            push_span(&mut sentences, &text[start..end]);
            start = end;
        }
        i = j;
    }
    push_span(&mut sentences, &text[start..]);

    SentenceSplit { sentences }
}

fn push_span<'a>(out: &mut Vec<&'a str>, span: &'a str) {
    let span = span.trim();
    if span.chars().any(char::is_alphanumeric) {
        out.push(span);
    }
}
