//! Rule-based English syllable estimation.
//!
//! The base rule counts maximal vowel runs (`a e i o u y`) and drops a
//! terminal silent `e`, except in a consonant + `le` ending ("table"). A few
//! suffix rules refine it:
//!
//! * `-ment(s)`, `-ness`, `-less`, `-ful`, `-ly` are counted as one syllable
//!   on top of their stem, so the stem's own silent `e` is dropped
//!   ("man·age·ment", "late·ly").
//! * `-ed` is silent unless it follows `t`/`d` or a consonant + `l`
//!   ("showed" vs. "wanted", "sampled").
//! * `-es` is silent unless it follows a sibilant (`s x z ch sh c g`) or `i`
//!   ("compares" vs. "changes", "strategies").
//! * `ia`, `io`, `iu`, `ua` inside a vowel run are two syllables except after
//!   the consonants that palatalize them ("vari·ance", "an·nu·al", but
//!   "na·tion", "so·cial", "qual·i·ty").
//!
//! Hyphenated tokens are the sum of their parts. Parts containing a digit
//! count as one syllable, as do parts with no vowel (acronyms such as "mb").

use serde::Serialize;

/// Version tag of the syllable rules, recorded in reports.
pub const SYLLABLE_RULES_VERSION: &str = "syllables-v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyllableCount {
    pub word: String,
    pub syllables: usize,
}

pub fn count_syllables(word: &str) -> SyllableCount {
    SyllableCount {
        word: word.to_string(),
        syllables: syllables(word),
    }
}

/// Syllable estimate for a single token; always at least 1.
pub fn syllables(word: &str) -> usize {
    let total: usize = word
        .split(['-', '\u{2010}', '\u{2011}'])
        .filter(|p| !p.is_empty())
        .map(part_syllables)
        .sum();
    total.max(1)
}

fn part_syllables(part: &str) -> usize {
    if part.chars().any(|c| c.is_numeric()) {
        return 1;
    }
    let folded: Vec<u8> = part
        .chars()
        .filter(|c| !matches!(c, '\'' | '\u{2019}'))
        .flat_map(char::to_lowercase)
        .filter_map(fold_ascii)
        .collect();
    if folded.is_empty() {
        return 1;
    }
    stem_syllables(&folded)
}

/// Maps a letter to a lowercase ASCII letter, folding common accented vowels
/// and consonants; anything else is dropped.
fn fold_ascii(c: char) -> Option<u8> {
    if c.is_ascii_lowercase() {
        return Some(c as u8);
    }
    let base = match c {
        'à' | 'á' | 'â' | 'ã' | 'ä' | 'å' | 'ā' => b'a',
        'è' | 'é' | 'ê' | 'ë' | 'ē' | 'ě' => b'e',
        'ì' | 'í' | 'î' | 'ï' | 'ī' => b'i',
        'ò' | 'ó' | 'ô' | 'õ' | 'ö' | 'ø' | 'ō' => b'o',
        'ù' | 'ú' | 'û' | 'ü' | 'ū' | 'ů' => b'u',
        'ý' | 'ÿ' => b'y',
        'ç' | 'č' | 'ć' => b'c',
        'ñ' | 'ň' => b'n',
        'š' | 'ś' => b's',
        'ž' | 'ź' | 'ż' => b'z',
        'ř' => b'r',
        'ł' => b'l',
        'ß' => b's',
        c if c.is_alphabetic() => b'x',
        _ => return None,
    };
    Some(base)
}

fn is_vowel(b: u8) -> bool {
    matches!(b, b'a' | b'e' | b'i' | b'o' | b'u' | b'y')
}

fn is_consonant(b: u8) -> bool {
    b.is_ascii_lowercase() && !is_vowel(b)
}

const SUFFIXES: &[&[u8]] = &[b"ments", b"ment", b"ness", b"less", b"ful", b"ly"];

fn stem_syllables(w: &[u8]) -> usize {
    let n = w.len();
    if n > 3 && w.ends_with(b"ed") {
        let before = w[n - 3];
        let voiced = matches!(before, b't' | b'd') || (before == b'l' && n > 4 && is_consonant(w[n - 4]));
        if !voiced && vowel_groups(&w[..n - 2]) >= 1 {
            return stem_syllables(&w[..n - 2]);
        }
    }
    if n > 3 && w.ends_with(b"es") && !sibilant_before_es(w) && vowel_groups(&w[..n - 1]) > 1 {
        return stem_syllables(&w[..n - 1]);
    }
    for suffix in SUFFIXES {
        if let Some(stem) = w.strip_suffix(*suffix) {
            if vowel_groups(stem) >= 1 {
                return stem_syllables(stem) + 1;
            }
        }
    }
    let mut count = vowel_groups(w);
    let consonant_le = n > 2 && w.ends_with(b"le") && is_consonant(w[n - 3]);
    if count > 1 && w.ends_with(b"e") && !consonant_le {
        count -= 1;
    }
    count.max(1)
}

fn sibilant_before_es(w: &[u8]) -> bool {
    let stem = &w[..w.len() - 2];
    stem.ends_with(b"ch")
        || stem.ends_with(b"sh")
        || matches!(stem.last(), Some(b's' | b'x' | b'z' | b'c' | b'g' | b'i'))
}

/// Maximal vowel runs, with hiatus pairs counted as two.
fn vowel_groups(w: &[u8]) -> usize {
    let mut count = 0;
    let mut i = 0;
    while i < w.len() {
        if !is_vowel(w[i]) {
            i += 1;
            continue;
        }
        let start = i;
        while i < w.len() && is_vowel(w[i]) {
            i += 1;
        }
        count += 1 + usize::from(has_hiatus(w, start, i));
    }
    count
}

fn has_hiatus(w: &[u8], start: usize, end: usize) -> bool {
    let run = &w[start..end];
    for (pair, blockers) in [
        (b"ia", &b"tscxg"[..]),
        (b"io", &b"tscxg"[..]),
        (b"ua", &b"qg"[..]),
        (b"iu", &b"tscxg"[..]),
    ] {
        if let Some(offset) = run.windows(2).position(|win| win == pair) {
            let at = start + offset;
            let blocked = at > 0 && blockers.contains(&w[at - 1]);
            if !blocked {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_examples() {
        assert_eq!(syllables("cat"), 1);
        assert_eq!(syllables("management"), 3);
        assert_eq!(syllables("table"), 2);
        assert_eq!(syllables("like"), 1);
    }

    #[test]
    fn suffix_rules() {
        assert_eq!(syllables("showed"), 1);
        assert_eq!(syllables("wanted"), 2);
        assert_eq!(syllables("sampled"), 2);
        assert_eq!(syllables("compares"), 2);
        assert_eq!(syllables("changes"), 2);
        assert_eq!(syllables("strategies"), 3);
        assert_eq!(syllables("lately"), 2);
        assert_eq!(syllables("statement"), 2);
        assert_eq!(syllables("cement"), 2);
    }

    #[test]
    fn hiatus() {
        assert_eq!(syllables("variance"), 3);
        assert_eq!(syllables("annual"), 3);
        assert_eq!(syllables("nation"), 2);
        assert_eq!(syllables("social"), 2);
        assert_eq!(syllables("quality"), 3);
    }

    #[test]
    fn non_alphabetic_and_acronyms() {
        assert_eq!(syllables("2019"), 1);
        assert_eq!(syllables("1,302"), 1);
        assert_eq!(syllables("mb"), 1);
        assert_eq!(syllables("covid19"), 1);
        assert_eq!(syllables("'"), 1);
    }

    #[test]
    fn compounds_and_apostrophes() {
        assert_eq!(syllables("top-tier"), 2);
        assert_eq!(syllables("readability-demanding"), 8);
        assert_eq!(syllables("yule's"), 1);
        assert_eq!(syllables("2010-2017"), 2);
    }

    #[test]
    fn accented_letters_fold() {
        assert_eq!(syllables("café"), syllables("cafe"));
        assert_eq!(syllables("naïve"), syllables("naive"));
    }

    #[test]
    fn record_type() {
        let c = count_syllables("table");
        assert_eq!((c.word.as_str(), c.syllables), ("table", 2));
    }
}
