//! Segmental rules: akshara-to-IPA correspondence (R1-3), final schwa
//! deletion (R4), final vowel lengthening (R5) and internal schwa deletion
//! (R11).
//!
//! Internal schwa deletion targets schwas in weak syllables, so it needs the
//! metrical frame built by the prosody module; [`internal_schwa_deletion`]
//! builds that frame itself when called on a bare phoneme string.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::inventory::{Inventory, Length, Manner, Phone};
use crate::prosody;
use crate::script::{AksharaToken, NasalMark, Vowel};

/// Standard Formal Hindi or Standard Colloquial Hindi. SCH runs every SFH
/// rule plus final vowel lengthening and internal schwa deletion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Variety {
    Sfh,
    #[default]
    Sch,
}

impl Variety {
    pub fn lengthens_final_vowels(self) -> bool {
        self == Variety::Sch
    }

    pub fn deletes_internal_schwa(self) -> bool {
        self == Variety::Sch
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variety::Sfh => "SFH",
            Variety::Sch => "SCH",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown variety {0:?} (expected SFH or SCH)")]
pub struct UnknownVariety(pub String);

impl FromStr for Variety {
    type Err = UnknownVariety;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "SFH" => Ok(Variety::Sfh),
            "SCH" => Ok(Variety::Sch),
            _ => Err(UnknownVariety(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhonemeString {
    pub phones: Vec<Phone>,
    pub variety: Variety,
}

impl PhonemeString {
    pub fn new(phones: Vec<Phone>, variety: Variety) -> Self {
        PhonemeString { phones, variety }
    }

    pub fn vowel_count(&self) -> usize {
        self.phones.iter().filter(|p| p.is_vowel()).count()
    }
}

impl fmt::Display for PhonemeString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.phones.iter().try_for_each(|p| write!(f, "{p}"))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PhonologyError {
    #[error("unsupported {what} in akshara {token} (offset {offset}); list the word in the exceptions file")]
    Unsupported { what: &'static str, token: usize, offset: usize },
    #[error("no inventory entry for {0:?}")]
    MissingInventory(char),
    #[error("word has no vowel")]
    NoVowel,
}

/// What a bindu stands for in context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BinduRealization {
    /// Homorganic nasal consonant, placed after the vowel.
    Consonant(Phone),
    /// Nasalization of the vowel carrying the bindu.
    NasalVowel,
}

/// Resolves a bindu from the phone that follows it: before a stop or
/// affricate it is the homorganic nasal, elsewhere (fricatives, sonorants,
/// vowels, word end) it nasalizes the vowel.
pub fn resolve_bindu(next: Option<&Phone>) -> BinduRealization {
    match next.and_then(|p| p.manner().zip(p.place())) {
        Some((Manner::Stop | Manner::Affricate, place)) => match Phone::homorganic_nasal(place) {
            Some(n) => BinduRealization::Consonant(n),
            None => BinduRealization::NasalVowel,
        },
        _ => BinduRealization::NasalVowel,
    }
}

/// R1-3: maps akshara tokens to phones through the inventory table.
pub fn to_phonemes(
    tokens: &[AksharaToken],
    inventory: &Inventory,
    variety: Variety,
) -> Result<PhonemeString, PhonologyError> {
    let mut per_token: Vec<Vec<Phone>> = Vec::with_capacity(tokens.len());
    for (i, t) in tokens.iter().enumerate() {
        let offset = t.source_span.start;
        if t.visarga {
            return Err(PhonologyError::Unsupported { what: "visarga", token: i, offset });
        }
        if t.digit.is_some() {
            return Err(PhonologyError::Unsupported { what: "digit", token: i, offset });
        }
        let mut phones = Vec::new();
        for c in &t.consonants {
            phones.push(inventory.consonant(*c).ok_or(PhonologyError::MissingInventory(c.0))?.clone());
        }
        match t.vowel {
            Some(Vowel::Inherent) => phones.push(Phone::schwa()),
            Some(Vowel::Letter(v)) => {
                phones.extend_from_slice(inventory.vowel(v).ok_or(PhonologyError::MissingInventory(v))?)
            }
            None => {}
        }
        if t.nasal == NasalMark::Chandrabindu {
            nasalize_last_vowel(&mut phones);
        }
        per_token.push(phones);
    }

    for i in 0..tokens.len() {
        if tokens[i].nasal != NasalMark::Bindu {
            continue;
        }
        let next = per_token.get(i + 1).and_then(|p| p.first()).cloned();
        match resolve_bindu(next.as_ref()) {
            BinduRealization::Consonant(n) => per_token[i].push(n),
            BinduRealization::NasalVowel => nasalize_last_vowel(&mut per_token[i]),
        }
    }

    let phones: Vec<Phone> = per_token.into_iter().flatten().collect();
    if !phones.iter().any(Phone::is_vowel) {
        return Err(PhonologyError::NoVowel);
    }
    Ok(PhonemeString::new(phones, variety))
}

fn nasalize_last_vowel(phones: &mut [Phone]) {
    if let Some(v) = phones.iter_mut().rev().find(|p| p.is_vowel()) {
        *v = v.nasalized();
    }
}

/// R4: drops a word-final oral schwa unless it is the only vowel.
pub fn final_schwa_deletion(p: &PhonemeString) -> PhonemeString {
    let mut out = p.clone();
    if out.vowel_count() > 1 && out.phones.last().is_some_and(Phone::is_schwa) {
        out.phones.pop();
    }
    out
}

/// R5 (SCH only): word-final short /i/ and /u/ become long.
pub fn final_vowel_lengthening(p: &PhonemeString, variety: Variety) -> PhonemeString {
    let mut out = p.clone();
    if !variety.lengthens_final_vowels() {
        return out;
    }
    if let Some(last) = out.phones.last_mut() {
        if last.length() == Some(Length::Short) && matches!(last.symbol(), "i" | "u") {
            *last = last.with_length(Length::Long);
        }
    }
    out
}

/// R11 (SCH only) on a bare phoneme string: builds the metrical frame
/// (syllables, weights, extrametricality, relabeling), deletes the weak
/// internal schwas and flattens the result back to phones.
pub fn internal_schwa_deletion(p: &PhonemeString, variety: Variety) -> PhonemeString {
    if !variety.deletes_internal_schwa() {
        return p.clone();
    }
    let Ok(word) = prosody::syllabify_lexical(p) else {
        return p.clone();
    };
    let word = prosody::relabel_upgrade(&prosody::relabel_downgrade(&prosody::mark_extrametrical(
        &prosody::label_weights(&word),
    )));
    let targets = prosody::internal_schwa_targets(&word);
    let mut phones = Vec::with_capacity(p.phones.len());
    for (i, s) in word.syllables.iter().enumerate() {
        phones.extend(s.onset.iter().cloned());
        if !targets.contains(&i) {
            phones.push(s.nucleus.clone());
        }
        phones.extend(s.coda.iter().cloned());
    }
    PhonemeString::new(phones, p.variety)
}
