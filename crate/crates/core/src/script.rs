//! Devanagari validation and akshara segmentation.
//!
//! A word is scanned once into [`AksharaToken`]s: a consonant cluster
//! (0-3 letters joined by halant) with its vowel, nasal diacritic and
//! visarga. Independent vowels open a consonant-less token. ZWJ and ZWNJ
//! are accepted anywhere and dropped, but stay inside the source span of
//! the token they occur in so that spans always tile the input.

use std::fmt;
use std::ops::Range;

use thiserror::Error;

const ZWNJ: char = '\u{200C}';
const ZWJ: char = '\u{200D}';
const NUKTA: char = '\u{093C}';

/// Largest consonant cluster a single akshara may carry (CCCV).
pub const MAX_CLUSTER: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharClass {
    IndependentVowel,
    ConsonantLetter,
    Matra,
    Halant,
    Bindu,
    Chandrabindu,
    Visarga,
    Nukta,
    Digit,
    /// ZWJ / ZWNJ: accepted, carries no orthographic content.
    Joiner,
    Other,
}

/// A character of the accepted input set together with its class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DevChar {
    pub codepoint: char,
    pub klass: CharClass,
}

impl DevChar {
    /// Classifies `c`; `None` when it lies outside the Devanagari block
    /// and is not a joiner.
    pub fn classify(c: char) -> Option<DevChar> {
        let klass = match c {
            ZWJ | ZWNJ => CharClass::Joiner,
            '\u{0901}' => CharClass::Chandrabindu,
            '\u{0902}' => CharClass::Bindu,
            '\u{0903}' => CharClass::Visarga,
            '\u{0905}'..='\u{090B}' | '\u{090D}' | '\u{090F}' | '\u{0910}' | '\u{0911}'
            | '\u{0913}' | '\u{0914}' => CharClass::IndependentVowel,
            '\u{0929}' | '\u{0931}' | '\u{0933}' | '\u{0934}' => CharClass::Other,
            '\u{0915}'..='\u{0939}' | '\u{0958}'..='\u{095E}' => CharClass::ConsonantLetter,
            NUKTA => CharClass::Nukta,
            '\u{093E}'..='\u{0943}' | '\u{0945}' | '\u{0947}' | '\u{0948}' | '\u{0949}'
            | '\u{094B}' | '\u{094C}' => CharClass::Matra,
            '\u{094D}' => CharClass::Halant,
            '\u{0966}'..='\u{096F}' => CharClass::Digit,
            '\u{0900}'..='\u{097F}' => CharClass::Other,
            _ => return None,
        };
        Some(DevChar { codepoint: c, klass })
    }
}

/// Independent vowel letter that a matra stands for.
pub fn matra_vowel(matra: char) -> Option<char> {
    Some(match matra {
        '\u{093E}' => 'आ',
        '\u{093F}' => 'इ',
        '\u{0940}' => 'ई',
        '\u{0941}' => 'उ',
        '\u{0942}' => 'ऊ',
        '\u{0943}' => 'ऋ',
        '\u{0945}' => 'ऍ',
        '\u{0947}' => 'ए',
        '\u{0948}' => 'ऐ',
        '\u{0949}' => 'ऑ',
        '\u{094B}' => 'ओ',
        '\u{094C}' => 'औ',
        _ => return None,
    })
}

/// Precomposed nukta letter for `base + U+093C`, if Hindi uses one.
pub fn compose_nukta(base: char) -> Option<char> {
    Some(match base {
        'क' => '\u{0958}',
        'ख' => '\u{0959}',
        'ग' => '\u{095A}',
        'ज' => '\u{095B}',
        'ड' => '\u{095C}',
        'ढ' => '\u{095D}',
        'फ' => '\u{095E}',
        _ => return None,
    })
}

/// A consonant letter, nukta-resolved to its precomposed codepoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Consonant(pub char);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vowel {
    /// The schwa implied by a bare consonant letter.
    Inherent,
    /// Identified by its independent letter, whether written as the letter
    /// or as a matra.
    Letter(char),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum NasalMark {
    #[default]
    None,
    Bindu,
    Chandrabindu,
}

/// One orthographic syllable unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AksharaToken {
    pub consonants: Vec<Consonant>,
    pub vowel: Option<Vowel>,
    pub nasal: NasalMark,
    pub visarga: bool,
    pub explicit_halant: bool,
    /// Set for a Devanagari digit token (no consonants, no vowel).
    pub digit: Option<char>,
    /// Character (not byte) offsets into the input.
    pub source_span: Range<usize>,
}

impl AksharaToken {
    pub fn is_independent_vowel(&self) -> bool {
        self.consonants.is_empty() && matches!(self.vowel, Some(Vowel::Letter(_)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    Empty,
    OutOfRange(char),
    Unsupported(char),
    MatraWithoutConsonant,
    HalantWithoutConsonant,
    NuktaWithoutConsonant,
    NuktaOnUnsupportedBase(char),
    NasalWithoutVowel,
    VisargaWithoutVowel,
    BothNasalMarks,
    DuplicateDiacritic(char),
    ClusterTooLong,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Character offset of the offending codepoint.
    pub offset: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = self.offset;
        match &self.kind {
            ViolationKind::Empty => write!(f, "empty word"),
            ViolationKind::OutOfRange(c) => {
                write!(f, "character {c:?} (U+{:04X}) outside Devanagari at offset {at}", *c as u32)
            }
            ViolationKind::Unsupported(c) => {
                write!(f, "unsupported character {c:?} (U+{:04X}) at offset {at}", *c as u32)
            }
            ViolationKind::MatraWithoutConsonant => write!(f, "matra without consonant at offset {at}"),
            ViolationKind::HalantWithoutConsonant => write!(f, "halant without consonant at offset {at}"),
            ViolationKind::NuktaWithoutConsonant => write!(f, "nukta without consonant at offset {at}"),
            ViolationKind::NuktaOnUnsupportedBase(c) => write!(f, "nukta on {c:?} at offset {at}"),
            ViolationKind::NasalWithoutVowel => write!(f, "nasal sign without vowel at offset {at}"),
            ViolationKind::VisargaWithoutVowel => write!(f, "visarga without vowel at offset {at}"),
            ViolationKind::BothNasalMarks => write!(f, "bindu and chandrabindu on one akshara at offset {at}"),
            ViolationKind::DuplicateDiacritic(c) => write!(f, "repeated diacritic {c:?} at offset {at}"),
            ViolationKind::ClusterTooLong => {
                write!(f, "consonant cluster longer than {MAX_CLUSTER} at offset {at}")
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("malformed input {word:?}: {}", .violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct MalformedInput {
    pub word: String,
    pub violations: Vec<Violation>,
}

/// What the previous significant character was, inside the open token.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Last {
    Consonant,
    Halant,
    Vowel,
    Mark,
}

struct Builder {
    token: AksharaToken,
    last: Last,
}

impl Builder {
    fn new(start: usize, last: Last) -> Self {
        Builder {
            token: AksharaToken {
                consonants: Vec::new(),
                vowel: None,
                nasal: NasalMark::None,
                visarga: false,
                explicit_halant: false,
                digit: None,
                source_span: start..start,
            },
            last,
        }
    }

    fn finish(mut self, end: usize) -> AksharaToken {
        let t = &mut self.token;
        if self.last == Last::Halant {
            t.explicit_halant = true;
        } else if !t.consonants.is_empty() && t.vowel.is_none() {
            t.vowel = Some(Vowel::Inherent);
        }
        t.source_span.end = end;
        self.token
    }

    fn bears_vowel(&self) -> bool {
        self.token.digit.is_none() && matches!(self.last, Last::Consonant | Last::Vowel | Last::Mark)
    }
}

fn scan(text: &str) -> (Vec<AksharaToken>, Vec<Violation>) {
    let mut tokens = Vec::new();
    let mut violations = Vec::new();
    let mut cur: Option<Builder> = None;
    let mut len = 0;

    let close = |cur: &mut Option<Builder>, at: usize, tokens: &mut Vec<AksharaToken>| {
        if let Some(b) = cur.take() {
            tokens.push(b.finish(at));
        }
    };

    for (i, c) in text.chars().enumerate() {
        len = i + 1;
        let Some(dc) = DevChar::classify(c) else {
            violations.push(Violation { offset: i, kind: ViolationKind::OutOfRange(c) });
            continue;
        };
        match dc.klass {
            CharClass::Joiner => {}
            CharClass::ConsonantLetter => {
                let joins = cur.as_ref().is_some_and(|b| b.last == Last::Halant);
                if joins {
                    let b = cur.as_mut().unwrap();
                    if b.token.consonants.len() == MAX_CLUSTER {
                        violations.push(Violation { offset: i, kind: ViolationKind::ClusterTooLong });
                    }
                    b.token.consonants.push(Consonant(c));
                    b.last = Last::Consonant;
                } else {
                    close(&mut cur, i, &mut tokens);
                    // The first token also covers any leading joiners.
                    let start = if tokens.is_empty() { 0 } else { i };
                    let mut b = Builder::new(start, Last::Consonant);
                    b.token.consonants.push(Consonant(c));
                    cur = Some(b);
                }
            }
            CharClass::Nukta => match cur.as_mut() {
                Some(b) if b.last == Last::Consonant => {
                    let last = b.token.consonants.last_mut().expect("consonant present");
                    match compose_nukta(last.0) {
                        Some(composed) => last.0 = composed,
                        None => violations.push(Violation {
                            offset: i,
                            kind: ViolationKind::NuktaOnUnsupportedBase(last.0),
                        }),
                    }
                }
                _ => violations.push(Violation { offset: i, kind: ViolationKind::NuktaWithoutConsonant }),
            },
            CharClass::Matra => match cur.as_mut() {
                Some(b) if b.last == Last::Consonant => {
                    b.token.vowel = matra_vowel(c).map(Vowel::Letter);
                    b.last = Last::Vowel;
                }
                Some(b) if b.last == Last::Vowel && !b.token.consonants.is_empty() => {
                    violations.push(Violation { offset: i, kind: ViolationKind::DuplicateDiacritic(c) })
                }
                _ => violations.push(Violation { offset: i, kind: ViolationKind::MatraWithoutConsonant }),
            },
            CharClass::Halant => match cur.as_mut() {
                Some(b) if b.last == Last::Consonant => b.last = Last::Halant,
                _ => violations.push(Violation { offset: i, kind: ViolationKind::HalantWithoutConsonant }),
            },
            CharClass::Bindu | CharClass::Chandrabindu => {
                let mark = if dc.klass == CharClass::Bindu {
                    NasalMark::Bindu
                } else {
                    NasalMark::Chandrabindu
                };
                match cur.as_mut() {
                    Some(b) if b.bears_vowel() && !b.token.visarga => {
                        match b.token.nasal {
                            NasalMark::None => b.token.nasal = mark,
                            prev if prev == mark => violations
                                .push(Violation { offset: i, kind: ViolationKind::DuplicateDiacritic(c) }),
                            _ => violations.push(Violation { offset: i, kind: ViolationKind::BothNasalMarks }),
                        }
                        b.last = Last::Mark;
                    }
                    _ => violations.push(Violation { offset: i, kind: ViolationKind::NasalWithoutVowel }),
                }
            }
            CharClass::Visarga => match cur.as_mut() {
                Some(b) if b.bears_vowel() => {
                    if b.token.visarga {
                        violations.push(Violation { offset: i, kind: ViolationKind::DuplicateDiacritic(c) });
                    }
                    b.token.visarga = true;
                    b.last = Last::Mark;
                }
                _ => violations.push(Violation { offset: i, kind: ViolationKind::VisargaWithoutVowel }),
            },
            CharClass::IndependentVowel => {
                close(&mut cur, i, &mut tokens);
                let start = if tokens.is_empty() { 0 } else { i };
                let mut b = Builder::new(start, Last::Vowel);
                b.token.vowel = Some(Vowel::Letter(c));
                cur = Some(b);
            }
            CharClass::Digit => {
                close(&mut cur, i, &mut tokens);
                let start = if tokens.is_empty() { 0 } else { i };
                let mut b = Builder::new(start, Last::Mark);
                b.token.digit = Some(c);
                cur = Some(b);
            }
            CharClass::Other => {
                violations.push(Violation { offset: i, kind: ViolationKind::Unsupported(c) })
            }
        }
    }
    close(&mut cur, len, &mut tokens);
    if let Some(last) = tokens.last_mut() {
        last.source_span.end = len;
    }
    if tokens.is_empty() && violations.is_empty() {
        violations.push(Violation { offset: 0, kind: ViolationKind::Empty });
    }
    (tokens, violations)
}

/// Checks `text` against the accepted character set and diacritic placement
/// rules. An empty result means the word can be segmented.
pub fn validate(text: &str) -> Vec<Violation> {
    scan(text).1
}

/// Splits a validated word into akshara tokens.
pub fn segment(text: &str) -> Result<Vec<AksharaToken>, MalformedInput> {
    let (tokens, violations) = scan(text);
    if violations.is_empty() {
        Ok(tokens)
    } else {
        Err(MalformedInput { word: text.to_string(), violations })
    }
}
