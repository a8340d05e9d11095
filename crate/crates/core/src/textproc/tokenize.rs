use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Controls how raw text is cut into word tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct TokenPolicy {
    /// Keep tokens made only of digits ("2019", "1,302").
    pub keep_numbers: bool,
    /// Bind letters across an intra-word hyphen ("top-tier").
    pub bind_hyphens: bool,
    /// Bind letters across an intra-word apostrophe ("yule's").
    pub bind_apostrophes: bool,
    /// Treat non-ASCII letters ("é", "ñ") as word characters. When false they
    /// act as separators.
    pub keep_diacritics: bool,
}

impl Default for TokenPolicy {
    fn default() -> Self {
        TokenPolicy {
            keep_numbers: true,
            bind_hyphens: true,
            bind_apostrophes: true,
            keep_diacritics: true,
        }
    }
}

impl TokenPolicy {
    /// Version tag of the tokenization rules, recorded in reports.
    pub const VERSION: &'static str = "tokenize-v1";

    /// Parses a plain-text policy file: one `key = value` entry per line,
    /// `#` starts a comment. Unlisted keys keep their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut policy = TokenPolicy::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("token policy line {}: expected key = value", lineno + 1)))?;
            let value = bool::from_str(value.trim()).map_err(|_| {
                Error::Config(format!(
                    "token policy line {}: `{}` is not true/false",
                    lineno + 1,
                    value.trim()
                ))
            })?;
            match key.trim() {
                "keep_numbers" => policy.keep_numbers = value,
                "bind_hyphens" => policy.bind_hyphens = value,
                "bind_apostrophes" => policy.bind_apostrophes = value,
                "keep_diacritics" => policy.keep_diacritics = value,
                other => {
                    return Err(Error::Config(format!(
                        "token policy line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(policy)
    }

    fn is_word_char(&self, c: char) -> bool {
        if c.is_ascii() {
            c.is_ascii_alphanumeric()
        } else {
            self.keep_diacritics && (c.is_alphanumeric() || is_combining_mark(c))
        }
    }

    fn joiner(&self, c: char) -> Option<char> {
        match c {
            '-' | '\u{2010}' | '\u{2011}' if self.bind_hyphens => Some('-'),
            '\'' | '\u{2019}' if self.bind_apostrophes => Some('\''),
            _ => None,
        }
    }
}

fn is_combining_mark(c: char) -> bool {
    matches!(c, '\u{0300}'..='\u{036F}')
}

/// Lowercased word tokens of a text.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TokenStream {
    pub tokens: Vec<String>,
    /// Characters (Unicode scalar values) in the source text.
    pub source_char_count: usize,
}

impl TokenStream {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().map(String::as_str)
    }
}

/// True when every word character of the token is a digit.
pub fn is_numeric_token(token: &str) -> bool {
    let mut any = false;
    for c in token.chars() {
        if c.is_alphabetic() {
            return false;
        }
        any |= c.is_numeric();
    }
    any
}

/// Splits `text` into lowercase word tokens.
///
/// A token is a maximal run of word characters. Hyphens and apostrophes
/// between two word characters bind when the policy says so, and `.`/`,`
/// between two ASCII digits bind as digit-group separators ("1,302").
/// Curly apostrophes and Unicode hyphens are normalized to their ASCII forms.
pub fn tokenize(text: &str, policy: &TokenPolicy) -> TokenStream {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut current = String::new();

    for (i, &c) in chars.iter().enumerate() {
        if policy.is_word_char(c) {
            current.extend(c.to_lowercase());
            continue;
        }
        if !current.is_empty() {
            let prev = chars[i - 1];
            let next = chars.get(i + 1).copied();
            let next_is_word = next.is_some_and(|n| policy.is_word_char(n));
            if next_is_word {
                if let Some(j) = policy.joiner(c) {
                    current.push(j);
                    continue;
                }
                let digit_group =
                    matches!(c, '.' | ',') && prev.is_ascii_digit() && next.is_some_and(|n| n.is_ascii_digit());
                if digit_group {
                    current.push(c);
                    continue;
                }
            }
            push_token(&mut tokens, std::mem::take(&mut current), policy);
        }
    }
    if !current.is_empty() {
        push_token(&mut tokens, current, policy);
    }

    TokenStream {
        tokens,
        source_char_count: chars.len(),
    }
}

fn push_token(tokens: &mut Vec<String>, token: String, policy: &TokenPolicy) {
    if policy.keep_numbers || !is_numeric_token(&token) {
        tokens.push(token);
    }
}
