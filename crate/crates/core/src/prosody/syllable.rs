use std::fmt;
use std::str::FromStr;

use crate::inventory::{Length, Phone};
use crate::phonology::{PhonemeString, Variety};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Weight {
    /// CV
    Light,
    /// CVV, CVC
    Heavy,
    /// CVVC, CVCC
    Superheavy,
}

impl Weight {
    pub fn of(nucleus: &Phone, coda_len: usize) -> Weight {
        let long = nucleus.length() == Some(Length::Long);
        match (long, coda_len) {
            (false, 0) => Weight::Light,
            (true, 0) | (false, 1) => Weight::Heavy,
            _ => Weight::Superheavy,
        }
    }
}

/// Metrical label. Ordered by prominence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// σw
    Weak,
    /// σs
    Strong,
    /// σs′
    Superstrong,
}

impl Label {
    pub fn from_weight(w: Weight) -> Label {
        match w {
            Weight::Light => Label::Weak,
            Weight::Heavy => Label::Strong,
            Weight::Superheavy => Label::Superstrong,
        }
    }

    pub fn is_strong(self) -> bool {
        self != Label::Weak
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Weak => "σw",
            Label::Strong => "σs",
            Label::Superstrong => "σs′",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "σw" => Ok(Label::Weak),
            "σs" => Ok(Label::Strong),
            "σs′" | "σs'" => Ok(Label::Superstrong),
            _ => Err(format!("unknown syllable label {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Syllable {
    pub onset: Vec<Phone>,
    pub nucleus: Phone,
    pub coda: Vec<Phone>,
    pub weight: Weight,
    pub label: Label,
    pub extrametrical: bool,
    pub stressed: bool,
}

impl Syllable {
    /// New syllable, weight computed and label taken from weight.
    pub fn new(onset: Vec<Phone>, nucleus: Phone, coda: Vec<Phone>) -> Syllable {
        let weight = Weight::of(&nucleus, coda.len());
        Syllable {
            onset,
            nucleus,
            coda,
            weight,
            label: Label::from_weight(weight),
            extrametrical: false,
            stressed: false,
        }
    }

    pub fn phones(&self) -> impl Iterator<Item = &Phone> {
        self.onset.iter().chain(std::iter::once(&self.nucleus)).chain(self.coda.iter())
    }

    pub fn text(&self) -> String {
        self.phones().map(Phone::ipa).collect()
    }

    pub(crate) fn recompute_weight(&mut self) {
        self.weight = Weight::of(&self.nucleus, self.coda.len());
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProsodicWord {
    pub syllables: Vec<Syllable>,
    pub variety: Variety,
}

impl ProsodicWord {
    pub fn phones(&self) -> impl Iterator<Item = &Phone> {
        self.syllables.iter().flat_map(Syllable::phones)
    }

    pub fn to_phoneme_string(&self) -> PhonemeString {
        PhonemeString::new(self.phones().cloned().collect(), self.variety)
    }

    pub fn is_monosyllabic(&self) -> bool {
        self.syllables.len() == 1
    }

    pub fn stressed_index(&self) -> Option<usize> {
        self.syllables.iter().position(|s| s.stressed)
    }

    /// Indices of syllables that count for stress.
    pub fn metrical_indices(&self) -> Vec<usize> {
        (0..self.syllables.len()).filter(|&i| !self.syllables[i].extrametrical).collect()
    }

    pub fn labels(&self) -> Vec<Label> {
        self.syllables.iter().map(|s| s.label).collect()
    }

    /// Structural invariants that hold after every rule: weight law, segment
    /// classes, extrametricality only word-finally, a stressed syllable is
    /// never extrametrical, at most one stress.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.syllables.len();
        if n == 0 {
            return Err("word without syllables".into());
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if !s.nucleus.is_vowel() {
                return Err(format!("syllable {i}: nucleus is not a vowel"));
            }
            if s.onset.iter().chain(&s.coda).any(Phone::is_vowel) {
                return Err(format!("syllable {i}: vowel in onset or coda"));
            }
            if s.weight != Weight::of(&s.nucleus, s.coda.len()) {
                return Err(format!("syllable {i}: weight {:?} disagrees with its segments", s.weight));
            }
            if s.extrametrical && (i + 1 != n || n < 2) {
                return Err(format!("syllable {i}: extrametrical but not word-final"));
            }
            if s.stressed && s.extrametrical {
                return Err(format!("syllable {i}: stressed and extrametrical"));
            }
        }
        if self.syllables.iter().filter(|s| s.stressed).count() > 1 {
            return Err("more than one stressed syllable".into());
        }
        Ok(())
    }
}
