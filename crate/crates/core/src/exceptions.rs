//! Whole-word exception lexicon consulted before the rule cascade.
//!
//! File format: UTF-8, tab-separated, `#` starts a comment line.
//!
//! ```text
//! grapheme  variety(SFH|SCH|Both)  phoneme_out  ps_out  category  note  [alternate]
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::phonology::Variety;
use crate::prosody::{parse_ps, STRESS_MARK};

pub const STARTER_EXCEPTIONS: &str = include_str!("../data/exceptions.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarietyScope {
    Sfh,
    Sch,
    Both,
}

impl VarietyScope {
    pub fn covers(self, v: Variety) -> bool {
        matches!((self, v), (VarietyScope::Both, _) | (VarietyScope::Sfh, Variety::Sfh) | (VarietyScope::Sch, Variety::Sch))
    }
}

impl FromStr for VarietyScope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sfh" => Ok(VarietyScope::Sfh),
            "sch" => Ok(VarietyScope::Sch),
            "both" => Ok(VarietyScope::Both),
            _ => Err(format!("unknown variety {s:?} (expected SFH, SCH or Both)")),
        }
    }
}

impl fmt::Display for VarietyScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VarietyScope::Sfh => "SFH",
            VarietyScope::Sch => "SCH",
            VarietyScope::Both => "Both",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    PrefixCompound,
    Imperative,
    OoCorrespondence,
    NasalDiacritic,
    Loanword,
    Other,
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "prefix-compound" => Category::PrefixCompound,
            "imperative" => Category::Imperative,
            "oo-correspondence" => Category::OoCorrespondence,
            "nasal-diacritic" => Category::NasalDiacritic,
            "loanword" => Category::Loanword,
            "other" => Category::Other,
            _ => return Err(format!("unknown category {s:?}")),
        })
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::PrefixCompound => "prefix-compound",
            Category::Imperative => "imperative",
            Category::OoCorrespondence => "oo-correspondence",
            Category::NasalDiacritic => "nasal-diacritic",
            Category::Loanword => "loanword",
            Category::Other => "other",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionEntry {
    pub grapheme: String,
    pub variety: VarietyScope,
    pub phoneme_out: String,
    pub ps_out: String,
    pub category: Category,
    pub note: String,
    pub alternate: Option<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExceptionsError {
    #[error("exceptions line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("exceptions line {line}: duplicate entry for ({grapheme}, {variety})")]
    Duplicate { line: usize, grapheme: String, variety: VarietyScope },
    #[error("cannot read exceptions file {path}: {message}")]
    Io { path: String, message: String },
}

/// Immutable after loading.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExceptionLexicon {
    entries: BTreeMap<(String, VarietyScope), ExceptionEntry>,
}

fn strip_stress(s: &str) -> String {
    s.chars().filter(|&c| c != STRESS_MARK).collect()
}

fn check_phoneme(s: &str) -> Result<(), String> {
    if s.is_empty() {
        return Err("empty phoneme".into());
    }
    if s.chars().filter(|&c| c == STRESS_MARK).count() > 1 {
        return Err("more than one stress mark".into());
    }
    Ok(())
}

impl ExceptionLexicon {
    pub fn starter() -> ExceptionLexicon {
        STARTER_EXCEPTIONS.parse().expect("bundled exceptions file is well-formed")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<ExceptionLexicon, ExceptionsError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| ExceptionsError::Io { path: path.display().to_string(), message: e.to_string() })?;
        text.parse()
    }

    /// Entry for this exact variety first, then one marked `Both`.
    pub fn lookup(&self, grapheme: &str, variety: Variety) -> Option<&ExceptionEntry> {
        let exact = match variety {
            Variety::Sfh => VarietyScope::Sfh,
            Variety::Sch => VarietyScope::Sch,
        };
        self.entries
            .get(&(grapheme.to_string(), exact))
            .or_else(|| self.entries.get(&(grapheme.to_string(), VarietyScope::Both)))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &ExceptionEntry> {
        self.entries.values()
    }
}

impl FromStr for ExceptionLexicon {
    type Err = ExceptionsError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lexicon = ExceptionLexicon::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let err = |column: usize, message: String| ExceptionsError::Parse { line, column, message };
            let cols: Vec<&str> = raw.split('\t').map(str::trim).collect();
            if !(6..=7).contains(&cols.len()) {
                return Err(err(1, format!("expected 6 or 7 tab-separated columns, found {}", cols.len())));
            }
            let grapheme = cols[0];
            if grapheme.is_empty() {
                return Err(err(1, "empty grapheme".into()));
            }
            let variety: VarietyScope = cols[1].parse().map_err(|m| err(2, m))?;
            check_phoneme(cols[2]).map_err(|m| err(3, m))?;
            let syllables = parse_ps(cols[3]).map_err(|e| err(4, e.message))?;
            let ps_segments: String = syllables.iter().map(|s| s.text.as_str()).collect();
            if ps_segments != strip_stress(cols[2]) {
                return Err(err(4, format!("PS segments {ps_segments:?} do not match phoneme {:?}", cols[2])));
            }
            let category: Category = cols[4].parse().map_err(|m| err(5, m))?;
            let alternate = match cols.get(6) {
                Some(a) if !a.is_empty() => {
                    check_phoneme(a).map_err(|m| err(7, m))?;
                    Some(a.to_string())
                }
                _ => None,
            };
            let entry = ExceptionEntry {
                grapheme: grapheme.to_string(),
                variety,
                phoneme_out: cols[2].to_string(),
                ps_out: cols[3].to_string(),
                category,
                note: cols[5].to_string(),
                alternate,
            };
            let key = (entry.grapheme.clone(), variety);
            if lexicon.entries.contains_key(&key) {
                return Err(ExceptionsError::Duplicate { line, grapheme: entry.grapheme, variety });
            }
            lexicon.entries.insert(key, entry);
        }
        Ok(lexicon)
    }
}
