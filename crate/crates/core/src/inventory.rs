//! Grapheme-to-phone inventory table.
//!
//! The table is data, not code: a tab-separated file with one record per
//! consonant letter or independent vowel. The bundled default is compiled
//! in; [`Inventory::from_path`] loads an override.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::script::{compose_nukta, Consonant};

pub const DEFAULT_INVENTORY: &str = include_str!("../data/inventory.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Velar,
    Palatal,
    Retroflex,
    Dental,
    Labial,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Manner {
    Stop,
    Affricate,
    Nasal,
    Fricative,
    Approximant,
    Flap,
}

impl Manner {
    pub fn is_sonorant(self) -> bool {
        matches!(self, Manner::Nasal | Manner::Approximant | Manner::Flap)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Length {
    Short,
    Long,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhoneKind {
    Consonant { place: Place, manner: Manner },
    Vowel { length: Length, nasal: bool },
}

/// One IPA segment. Vowel symbols are stored bare; length and nasality are
/// features and are added back by [`Phone::ipa`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Phone {
    symbol: String,
    kind: PhoneKind,
}

const LENGTH_MARK: char = 'ː';
const NASAL_TILDE: char = '\u{0303}';

impl Phone {
    pub fn consonant(symbol: &str, place: Place, manner: Manner) -> Phone {
        Phone { symbol: symbol.to_string(), kind: PhoneKind::Consonant { place, manner } }
    }

    pub fn vowel(symbol: &str, length: Length) -> Phone {
        Phone { symbol: symbol.to_string(), kind: PhoneKind::Vowel { length, nasal: false } }
    }

    pub fn schwa() -> Phone {
        Phone::vowel("ə", Length::Short)
    }

    /// Homorganic nasal stop for a place of articulation.
    pub fn homorganic_nasal(place: Place) -> Option<Phone> {
        let symbol = match place {
            Place::Velar => "ŋ",
            Place::Palatal => "ɲ",
            Place::Retroflex => "ɳ",
            Place::Dental => "n",
            Place::Labial => "m",
            Place::Other => return None,
        };
        Some(Phone::consonant(symbol, place, Manner::Nasal))
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn kind(&self) -> PhoneKind {
        self.kind
    }

    pub fn is_vowel(&self) -> bool {
        matches!(self.kind, PhoneKind::Vowel { .. })
    }

    pub fn is_consonant(&self) -> bool {
        !self.is_vowel()
    }

    pub fn place(&self) -> Option<Place> {
        match self.kind {
            PhoneKind::Consonant { place, .. } => Some(place),
            PhoneKind::Vowel { .. } => None,
        }
    }

    pub fn manner(&self) -> Option<Manner> {
        match self.kind {
            PhoneKind::Consonant { manner, .. } => Some(manner),
            PhoneKind::Vowel { .. } => None,
        }
    }

    pub fn length(&self) -> Option<Length> {
        match self.kind {
            PhoneKind::Vowel { length, .. } => Some(length),
            PhoneKind::Consonant { .. } => None,
        }
    }

    pub fn is_nasalized(&self) -> bool {
        matches!(self.kind, PhoneKind::Vowel { nasal: true, .. })
    }

    /// Plain (oral) short schwa.
    pub fn is_schwa(&self) -> bool {
        self.symbol == "ə" && self.kind == PhoneKind::Vowel { length: Length::Short, nasal: false }
    }

    pub fn with_length(&self, length: Length) -> Phone {
        let mut p = self.clone();
        if let PhoneKind::Vowel { length: l, .. } = &mut p.kind {
            *l = length;
        }
        p
    }

    pub fn nasalized(&self) -> Phone {
        let mut p = self.clone();
        if let PhoneKind::Vowel { nasal, .. } = &mut p.kind {
            *nasal = true;
        }
        p
    }

    pub fn ipa(&self) -> String {
        let mut s = self.symbol.clone();
        if let PhoneKind::Vowel { length, nasal } = self.kind {
            if nasal {
                s = nasalize_symbol(&s);
            }
            if length == Length::Long {
                s.push(LENGTH_MARK);
            }
        }
        s
    }
}

/// Adds a tilde, using the precomposed (NFC) letter where one exists.
fn nasalize_symbol(symbol: &str) -> String {
    let precomposed = match symbol {
        "a" => "ã",
        "e" => "ẽ",
        "i" => "ĩ",
        "o" => "õ",
        "u" => "ũ",
        _ => return format!("{symbol}{NASAL_TILDE}"),
    };
    precomposed.to_string()
}

impl fmt::Display for Phone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ipa())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InventoryError {
    #[error("inventory line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("inventory line {line}: duplicate entry for {grapheme:?}")]
    Duplicate { line: usize, grapheme: char },
    #[error("cannot read inventory {path}: {message}")]
    Io { path: String, message: String },
}

/// Devanagari letter to phone mapping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inventory {
    consonants: BTreeMap<char, Phone>,
    vowels: BTreeMap<char, Vec<Phone>>,
}

impl Default for Inventory {
    fn default() -> Self {
        DEFAULT_INVENTORY.parse().expect("bundled inventory is well-formed")
    }
}

fn parse_codepoints(field: &str) -> Option<char> {
    let cps: Vec<char> = field
        .split_whitespace()
        .map(|t| t.strip_prefix("U+").and_then(|h| u32::from_str_radix(h, 16).ok()).and_then(char::from_u32))
        .collect::<Option<_>>()?;
    match cps.as_slice() {
        [c] => Some(*c),
        [base, '\u{093C}'] => compose_nukta(*base),
        _ => None,
    }
}

fn parse_place(s: &str) -> Option<Place> {
    Some(match s {
        "velar" => Place::Velar,
        "palatal" => Place::Palatal,
        "retroflex" => Place::Retroflex,
        "dental" => Place::Dental,
        "labial" => Place::Labial,
        "other" => Place::Other,
        _ => return None,
    })
}

fn parse_manner(s: &str) -> Option<Manner> {
    Some(match s {
        "stop" => Manner::Stop,
        "affricate" => Manner::Affricate,
        "nasal" => Manner::Nasal,
        "fricative" => Manner::Fricative,
        "approximant" => Manner::Approximant,
        "flap" => Manner::Flap,
        _ => return None,
    })
}

impl FromStr for Inventory {
    type Err = InventoryError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut inv = Inventory { consonants: BTreeMap::new(), vowels: BTreeMap::new() };
        let mut pending_vowels = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim_end();
            if body.trim().is_empty() {
                continue;
            }
            let err = |message: &str| InventoryError::Parse { line, message: message.to_string() };
            let cols: Vec<&str> = body.split('\t').map(str::trim).collect();
            if cols.len() < 4 {
                return Err(err("expected at least 4 tab-separated columns"));
            }
            let grapheme = parse_codepoints(cols[0]).ok_or_else(|| err("bad codepoint field"))?;
            match cols[1] {
                "consonant" => {
                    let place = parse_place(cols[3]).ok_or_else(|| err("unknown place"))?;
                    let manner = cols
                        .get(4)
                        .and_then(|m| parse_manner(m))
                        .ok_or_else(|| err("missing or unknown manner"))?;
                    if cols[2].is_empty() {
                        return Err(err("empty ipa"));
                    }
                    let phone = Phone::consonant(cols[2], place, manner);
                    if inv.consonants.insert(grapheme, phone).is_some() {
                        return Err(InventoryError::Duplicate { line, grapheme });
                    }
                }
                "vowel" => pending_vowels.push((line, grapheme, cols[2].to_string(), cols[3].to_string())),
                _ => return Err(err("kind must be consonant or vowel")),
            }
        }
        // Vowels may prefix consonant segments, so resolve them after all consonants.
        for (line, grapheme, ipa, feature) in pending_vowels {
            let err = |message: String| InventoryError::Parse { line, message };
            let length = match feature.as_str() {
                "short" => Length::Short,
                "long" => Length::Long,
                other => return Err(err(format!("unknown vowel length {other:?}"))),
            };
            let segs: Vec<&str> = ipa.split_whitespace().collect();
            let Some((nucleus, prefix)) = segs.split_last() else {
                return Err(err("empty ipa".into()));
            };
            let mut phones = Vec::new();
            for seg in prefix {
                let c = inv
                    .consonants
                    .values()
                    .find(|p| p.symbol() == *seg)
                    .ok_or_else(|| err(format!("unknown consonant segment {seg:?}")))?;
                phones.push(c.clone());
            }
            let bare = nucleus.trim_end_matches(LENGTH_MARK);
            if (bare.len() != nucleus.len()) != (length == Length::Long) {
                return Err(err("length mark disagrees with length column".into()));
            }
            phones.push(Phone::vowel(bare, length));
            if inv.vowels.insert(grapheme, phones).is_some() {
                return Err(InventoryError::Duplicate { line, grapheme });
            }
        }
        Ok(inv)
    }
}

impl Inventory {
    pub fn from_path(path: impl AsRef<Path>) -> Result<Inventory, InventoryError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| InventoryError::Io { path: path.display().to_string(), message: e.to_string() })?;
        text.parse()
    }

    pub fn consonant(&self, c: Consonant) -> Option<&Phone> {
        self.consonants.get(&c.0)
    }

    /// Phones for an independent vowel letter (usually one, two for ऋ).
    pub fn vowel(&self, letter: char) -> Option<&[Phone]> {
        self.vowels.get(&letter).map(Vec::as_slice)
    }

    pub fn consonant_count(&self) -> usize {
        self.consonants.len()
    }

    pub fn vowel_count(&self) -> usize {
        self.vowels.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_inventory_covers_hindi() {
        let inv = Inventory::default();
        assert!(inv.consonant_count() >= 40);
        assert_eq!(inv.vowel_count(), 13);
        assert_eq!(inv.consonant(Consonant('त')).unwrap().ipa(), "t̪");
        assert_eq!(inv.consonant(Consonant('\u{095E}')).unwrap().ipa(), "f");
        let ri: Vec<String> = inv.vowel('ऋ').unwrap().iter().map(Phone::ipa).collect();
        assert_eq!(ri, ["r", "i"]);
        assert_eq!(inv.vowel('आ').unwrap()[0].ipa(), "aː");
    }

    #[test]
    fn ipa_rendering_adds_features() {
        let a = Phone::vowel("a", Length::Long).nasalized();
        assert_eq!(a.ipa(), "ãː");
        assert!(Phone::schwa().is_schwa());
        assert!(!Phone::schwa().nasalized().is_schwa());
    }

    #[test]
    fn malformed_rows_report_line() {
        let err = "U+0915\tconsonant\tk\tvelar\n".parse::<Inventory>().unwrap_err();
        assert!(matches!(err, InventoryError::Parse { line: 1, .. }));
        let err = "# c\nU+0915\tconsonant\tk\tvelar\tstop\nU+0915\tconsonant\tk\tvelar\tstop\n"
            .parse::<Inventory>()
            .unwrap_err();
        assert_eq!(err, InventoryError::Duplicate { line: 3, grapheme: 'क' });
    }

    #[test]
    fn length_column_must_match_mark() {
        let err = "U+0906\tvowel\taː\tshort\n".parse::<Inventory>().unwrap_err();
        assert!(matches!(err, InventoryError::Parse { line: 1, .. }));
    }
}
