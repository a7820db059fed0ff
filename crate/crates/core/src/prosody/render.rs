//! Text renderings of the two output levels and the prosodic-structure
//! grammar.
//!
//! PS grammar: `[` syllable (` ` syllable)* `]`, where a syllable is
//! `LABEL TEXT` and the extrametrical final one is wrapped as
//! `⟨LABEL TEXT⟩`. LABEL is `σw`, `σs` or `σs′`; TEXT is the syllable's IPA.

use thiserror::Error;

use super::syllable::{Label, ProsodicWord};

pub const STRESS_MARK: char = 'ˈ';
const EXTRA_OPEN: char = '⟨';
const EXTRA_CLOSE: char = '⟩';

/// Syllables as a bracketed list. With `labels = false` each syllable is
/// prefixed by a bare `σ`; syllables listed in `omit_nucleus` are shown
/// without their vowel.
pub fn render_syllables(w: &ProsodicWord, labels: bool, omit_nucleus: &[usize]) -> String {
    let items: Vec<String> = w
        .syllables
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut text: String = s.onset.iter().map(|p| p.ipa()).collect();
            if !omit_nucleus.contains(&i) {
                text.push_str(&s.nucleus.ipa());
            }
            text.extend(s.coda.iter().map(|p| p.ipa()));
            let item = if labels { format!("{} {text}", s.label) } else { format!("σ{text}") };
            if s.extrametrical {
                format!("{EXTRA_OPEN}{item}{EXTRA_CLOSE}")
            } else {
                item
            }
        })
        .collect();
    format!("[{}]", items.join(" "))
}

/// The PS level: syllable division, labels, extrametricality.
pub fn render_ps(w: &ProsodicWord) -> String {
    render_syllables(w, true, &[])
}

/// The phoneme level: IPA with the stress mark before the stressed syllable.
pub fn render_phoneme(w: &ProsodicWord) -> String {
    let mut out = String::new();
    for s in &w.syllables {
        if s.stressed {
            out.push(STRESS_MARK);
        }
        out.push_str(&s.text());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsSyllable {
    pub label: Label,
    pub text: String,
    pub extrametrical: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("bad PS string {input:?}: {message}")]
pub struct PsParseError {
    pub input: String,
    pub message: String,
}

pub fn parse_ps(input: &str) -> Result<Vec<PsSyllable>, PsParseError> {
    let err = |message: &str| PsParseError { input: input.to_string(), message: message.to_string() };
    let inner = input
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| err("missing surrounding brackets"))?;
    let tokens: Vec<&str> = inner.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(err("no syllables"));
    }
    if !tokens.len().is_multiple_of(2) {
        return Err(err("expected label/text pairs"));
    }
    let mut out = Vec::with_capacity(tokens.len() / 2);
    for pair in tokens.chunks(2) {
        let (label_tok, opened) = match pair[0].strip_prefix(EXTRA_OPEN) {
            Some(rest) => (rest, true),
            None => (pair[0], false),
        };
        let (text, closed) = match pair[1].strip_suffix(EXTRA_CLOSE) {
            Some(rest) => (rest, true),
            None => (pair[1], false),
        };
        if opened != closed {
            return Err(err("unbalanced extrametricality brackets"));
        }
        let label = label_tok.parse::<Label>().map_err(|m| err(&m))?;
        if text.is_empty() || text.contains(STRESS_MARK) {
            return Err(err("syllable text must be nonempty IPA without stress marks"));
        }
        out.push(PsSyllable { label, text: text.to_string(), extrametrical: opened });
    }
    if out.iter().rev().skip(1).any(|s| s.extrametrical) {
        return Err(err("only the final syllable can be extrametrical"));
    }
    Ok(out)
}

/// Index of the syllable carrying `ˈ` in `phoneme`, aligned on the PS
/// syllable texts. `None` when the phoneme string has no stress mark or its
/// segments do not line up with the syllables.
pub fn stressed_syllable(phoneme: &str, syllables: &[PsSyllable]) -> Option<usize> {
    let (before, _) = phoneme.split_once(STRESS_MARK)?;
    let mut offset = 0;
    for (i, s) in syllables.iter().enumerate() {
        if offset == before.len() {
            return Some(i);
        }
        offset += s.text.len();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let s = "[σs kəs ⟨σs rət̪⟩]";
        let p = parse_ps(s).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p[0], PsSyllable { label: Label::Strong, text: "kəs".into(), extrametrical: false });
        assert!(p[1].extrametrical);
        assert_eq!(parse_ps("[σw aː σs′ saːn]").unwrap()[1].label, Label::Superstrong);
    }

    #[test]
    fn parse_rejects_malformed() {
        assert!(parse_ps("σs kəs").is_err());
        assert!(parse_ps("[σs]").is_err());
        assert!(parse_ps("[σx kə]").is_err());
        assert!(parse_ps("[⟨σs kə⟩ σs rət̪]").is_err());
        assert!(parse_ps("[⟨σs kə σs rət̪]").is_err());
        assert!(parse_ps("[]").is_err());
    }

    #[test]
    fn stress_alignment() {
        let p = parse_ps("[σw saː σs laː ⟨σs naː⟩]").unwrap();
        assert_eq!(stressed_syllable("saːˈlaːnaː", &p), Some(1));
        assert_eq!(stressed_syllable("ˈsaːlaːnaː", &p), Some(0));
        assert_eq!(stressed_syllable("saːlaːnaː", &p), None);
        assert_eq!(stressed_syllable("saːlˈaːnaː", &p), None);
    }
}
