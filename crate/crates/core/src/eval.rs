//! Scoring against a gold-annotated word list.
//!
//! Gold file: UTF-8 TSV, `#` comments,
//!
//! ```text
//! grapheme  variety  gold_phoneme  gold_ps  categories(comma-joined)  [note]
//! ```
//!
//! Every record is scored for ATS correspondence whether tagged or not.
//! Each category compares only its own projection of the output:
//!
//! | category            | projection                                            |
//! |---------------------|-------------------------------------------------------|
//! | ATS correspondence  | segments, stress removed                              |
//! | PS structure        | syllable texts, labels, extrametricality, stress slot |
//! | schwa deletion      | kept/deleted flag per underlying schwa                |
//! | nasal               | nasal consonants and nasalized vowels, in order       |
//! | anusvara/anunasika  | nasal codas and nasalized vowels, in order            |
//!
//! Words answered by the exceptions lexicon are left out of the count.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::compiler::{CompileError, Compiled};
use crate::phonology::Variety;
use crate::prosody::{parse_ps, stressed_syllable, PsSyllable, RuleId, StepState, STRESS_MARK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EvalCategory {
    Nasal,
    PsStructure,
    SchwaDeletion,
    AnusvaraAnunasika,
    AtsCorrespondence,
}

impl EvalCategory {
    pub const ALL: [EvalCategory; 5] = [
        EvalCategory::Nasal,
        EvalCategory::PsStructure,
        EvalCategory::SchwaDeletion,
        EvalCategory::AnusvaraAnunasika,
        EvalCategory::AtsCorrespondence,
    ];

    /// Tag used in gold files.
    pub fn tag(self) -> &'static str {
        match self {
            EvalCategory::Nasal => "Nasal",
            EvalCategory::PsStructure => "PSStructure",
            EvalCategory::SchwaDeletion => "SchwaDeletion",
            EvalCategory::AnusvaraAnunasika => "AnusvaraAnunasika",
            EvalCategory::AtsCorrespondence => "ATSCorrespondence",
        }
    }

    /// Row title in the report table.
    pub fn title(self) -> &'static str {
        match self {
            EvalCategory::Nasal => "Nasal",
            EvalCategory::PsStructure => "PS Structure",
            EvalCategory::SchwaDeletion => "Schwa Deletion",
            EvalCategory::AnusvaraAnunasika => "Anusvara/Anunasika",
            EvalCategory::AtsCorrespondence => "ATS Correspondence",
        }
    }

    fn key(self) -> &'static str {
        match self {
            EvalCategory::Nasal => "nasal",
            EvalCategory::PsStructure => "ps_structure",
            EvalCategory::SchwaDeletion => "schwa_deletion",
            EvalCategory::AnusvaraAnunasika => "anusvara_anunasika",
            EvalCategory::AtsCorrespondence => "ats_correspondence",
        }
    }
}

impl FromStr for EvalCategory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EvalCategory::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| format!("unknown category {s:?}"))
    }
}

impl fmt::Display for EvalCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldRecord {
    pub grapheme: String,
    pub variety: Variety,
    pub gold_phoneme: String,
    pub gold_ps: String,
    /// Sorted, deduplicated, always contains ATS correspondence.
    pub categories: Vec<EvalCategory>,
    pub note: String,
}

impl GoldRecord {
    pub fn has(&self, c: EvalCategory) -> bool {
        self.categories.contains(&c)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GoldError {
    #[error("gold line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("gold line {line}: {message}")]
    UnknownCategory { line: usize, message: String },
    #[error("cannot read gold file {path}: {message}")]
    Io { path: String, message: String },
}

pub fn parse_gold(text: &str) -> Result<Vec<GoldRecord>, GoldError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let perr = |message: String| GoldError::Parse { line, message };
        let cols: Vec<&str> = raw.split('\t').map(str::trim).collect();
        if !(5..=6).contains(&cols.len()) {
            return Err(perr(format!("expected 5 or 6 tab-separated columns, found {}", cols.len())));
        }
        if cols[0].is_empty() {
            return Err(perr("empty grapheme".into()));
        }
        let variety: Variety = cols[1].parse().map_err(|e: crate::phonology::UnknownVariety| perr(e.to_string()))?;
        if cols[2].is_empty() {
            return Err(perr("empty gold phoneme".into()));
        }
        parse_ps(cols[3]).map_err(|e| perr(e.to_string()))?;
        let mut categories = vec![EvalCategory::AtsCorrespondence];
        for tag in cols[4].split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let c = tag.parse().map_err(|message| GoldError::UnknownCategory { line, message })?;
            categories.push(c);
        }
        categories.sort();
        categories.dedup();
        out.push(GoldRecord {
            grapheme: cols[0].to_string(),
            variety,
            gold_phoneme: cols[2].to_string(),
            gold_ps: cols[3].to_string(),
            categories,
            note: cols.get(5).map(|s| s.to_string()).unwrap_or_default(),
        });
    }
    Ok(out)
}

pub fn load_gold(path: impl AsRef<Path>) -> Result<Vec<GoldRecord>, GoldError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| GoldError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_gold(&text)
}

// ---- projections -------------------------------------------------------

const VOWEL_BASES: &str = "əaiueoɛɔæãẽĩõũ";
const PRECOMPOSED_NASAL: &str = "ãẽĩõũ";
const NASAL_CONSONANTS: &str = "mnɳɲŋ";

fn is_modifier(c: char) -> bool {
    matches!(c, 'ː' | 'ʰ' | '\u{0300}'..='\u{036F}')
}

/// Splits IPA into segments: a base character plus its modifiers.
/// Stress marks are dropped.
pub fn ipa_segments(ipa: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for c in ipa.chars().filter(|&c| c != STRESS_MARK) {
        match out.last_mut() {
            Some(last) if is_modifier(c) => last.push(c),
            _ => out.push(c.to_string()),
        }
    }
    out
}

fn base(seg: &str) -> char {
    seg.chars().next().unwrap_or(' ')
}

fn is_vowel_segment(seg: &str) -> bool {
    VOWEL_BASES.contains(base(seg))
}

fn is_nasal_vowel(seg: &str) -> bool {
    is_vowel_segment(seg) && (PRECOMPOSED_NASAL.contains(base(seg)) || seg.contains('\u{0303}'))
}

fn is_nasal_consonant(seg: &str) -> bool {
    NASAL_CONSONANTS.contains(base(seg))
}

pub fn ats_projection(phoneme: &str) -> String {
    phoneme.chars().filter(|&c| c != STRESS_MARK).collect()
}

pub fn nasal_projection(phoneme: &str) -> Vec<String> {
    ipa_segments(phoneme).into_iter().filter(|s| is_nasal_vowel(s) || is_nasal_consonant(s)).collect()
}

/// Nasal consonants not followed by a vowel, and nasalized vowels: the two
/// ways a bindu or chandrabindu surfaces.
pub fn anusvara_projection(phoneme: &str) -> Vec<String> {
    let segs = ipa_segments(phoneme);
    segs.iter()
        .enumerate()
        .filter(|(i, s)| {
            is_nasal_vowel(s) || (is_nasal_consonant(s) && !segs.get(i + 1).is_some_and(|n| is_vowel_segment(n)))
        })
        .map(|(_, s)| s.clone())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsProjection {
    pub syllables: Vec<PsSyllable>,
    pub stressed: Option<usize>,
}

pub fn ps_projection(phoneme: &str, ps: &str) -> Option<PsProjection> {
    let syllables = parse_ps(ps).ok()?;
    let stressed = stressed_syllable(phoneme, &syllables);
    Some(PsProjection { syllables, stressed })
}

/// For each schwa of `underlying`, whether it survives in `surface`.
/// Alignment is a longest common subsequence over segments; ties prefer
/// matching the earlier underlying segment.
pub fn schwa_projection(underlying: &str, surface: &str) -> Vec<bool> {
    let u = ipa_segments(underlying);
    let s = ipa_segments(surface);
    let (n, m) = (u.len(), s.len());
    // lcs[i][j] = LCS length of u[i..] and s[j..]
    let mut lcs = vec![vec![0usize; m + 1]; n + 1];
    for i in (0..n).rev() {
        for j in (0..m).rev() {
            lcs[i][j] = if same_phone(&u[i], &s[j]) {
                lcs[i + 1][j + 1] + 1
            } else {
                lcs[i + 1][j].max(lcs[i][j + 1])
            };
        }
    }
    let mut kept = vec![false; n];
    let (mut i, mut j) = (0, 0);
    while i < n && j < m {
        if same_phone(&u[i], &s[j]) && lcs[i][j] == lcs[i + 1][j + 1] + 1 {
            kept[i] = true;
            i += 1;
            j += 1;
        } else if lcs[i + 1][j] >= lcs[i][j + 1] {
            i += 1;
        } else {
            j += 1;
        }
    }
    u.iter().zip(kept).filter(|(seg, _)| base(seg) == 'ə').map(|(_, k)| k).collect()
}

/// Equal up to length (final lengthening turns i into iː).
fn same_phone(a: &str, b: &str) -> bool {
    let strip = |s: &str| s.chars().filter(|&c| c != 'ː').collect::<String>();
    strip(a) == strip(b)
}

fn underlying_form(c: &Compiled) -> Option<String> {
    let step = c.trace.as_ref()?.step(RuleId::R1To3)?;
    match &step.state {
        StepState::Segmental(p) => Some(p.to_string()),
        StepState::Prosodic(w) => Some(w.to_phoneme_string().to_string()),
    }
}

/// Whether `out` is wrong for category `c` relative to `gold`.
pub fn is_wrong(c: EvalCategory, gold: &GoldRecord, out: &Compiled) -> bool {
    match c {
        EvalCategory::AtsCorrespondence => ats_projection(&gold.gold_phoneme) != ats_projection(&out.phoneme),
        EvalCategory::Nasal => nasal_projection(&gold.gold_phoneme) != nasal_projection(&out.phoneme),
        EvalCategory::AnusvaraAnunasika => {
            anusvara_projection(&gold.gold_phoneme) != anusvara_projection(&out.phoneme)
        }
        EvalCategory::PsStructure => {
            let g = ps_projection(&gold.gold_phoneme, &gold.gold_ps);
            g.is_none() || g != ps_projection(&out.phoneme, &out.ps)
        }
        EvalCategory::SchwaDeletion => match underlying_form(out) {
            Some(u) => schwa_projection(&u, &gold.gold_phoneme) != schwa_projection(&u, &out.phoneme),
            // No derivation to align against: fall back to the segments.
            None => ats_projection(&gold.gold_phoneme) != ats_projection(&out.phoneme),
        },
    }
}

// ---- report ------------------------------------------------------------

/// Percentage with two decimals, held as hundredths of a percent.
///
/// Rounded up, except that any error keeps it below 100.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Accuracy(pub u64);

impl Accuracy {
    pub fn of(considered: usize, wrong: usize) -> Accuracy {
        assert!(considered > 0 && wrong <= considered, "accuracy of {wrong}/{considered}");
        let (c, w) = (considered as u64, wrong as u64);
        let up = (10_000 * (c - w)).div_ceil(c);
        Accuracy(if w > 0 { up.min(9_999) } else { up })
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 100.0
    }
}

impl fmt::Display for Accuracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 10_000 {
            f.write_str("100")
        } else {
            write!(f, "{}.{:02}", self.0 / 100, self.0 % 100)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CategoryScore {
    pub category: EvalCategory,
    pub considered: usize,
    pub wrong: usize,
}

impl CategoryScore {
    pub fn accuracy(&self) -> Accuracy {
        Accuracy::of(self.considered, self.wrong)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Miss {
    pub grapheme: String,
    pub variety: Variety,
    pub categories: Vec<EvalCategory>,
    /// Phoneme and PS produced, or the error message.
    pub got: Result<(String, String), String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EvalReport {
    /// Only categories with at least one record, in table order.
    pub categories: Vec<CategoryScore>,
    /// Words scored; a word is right overall when both levels match exactly.
    pub words: usize,
    pub words_wrong: usize,
    pub excluded: usize,
    pub misses: Vec<Miss>,
}

impl EvalReport {
    pub fn score(&self, c: EvalCategory) -> Option<&CategoryScore> {
        self.categories.iter().find(|s| s.category == c)
    }

    pub fn overall(&self) -> Option<Accuracy> {
        (self.words > 0).then(|| Accuracy::of(self.words, self.words_wrong))
    }

    pub fn min_accuracy(&self) -> Option<Accuracy> {
        self.categories.iter().map(CategoryScore::accuracy).min()
    }

    /// Flat `key=value` lines.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        for s in &self.categories {
            let k = s.category.key();
            out.push_str(&format!("{k}.words={}\n{k}.wrong={}\n{k}.accuracy={}\n", s.considered, s.wrong, s.accuracy()));
        }
        out.push_str(&format!("overall.words={}\noverall.wrong={}\n", self.words, self.words_wrong));
        if let Some(a) = self.overall() {
            out.push_str(&format!("overall.accuracy={a}\n"));
        }
        out.push_str(&format!("excluded={}\n", self.excluded));
        out
    }
}

/// Scores `compile` on every gold record.
pub fn evaluate<F>(gold: &[GoldRecord], compile: F) -> EvalReport
where
    F: Fn(&str, Variety) -> Result<Compiled, CompileError>,
{
    let mut counts: Vec<(usize, usize)> = vec![(0, 0); EvalCategory::ALL.len()];
    let mut report = EvalReport::default();
    for g in gold {
        let out = compile(&g.grapheme, g.variety);
        if out.as_ref().is_ok_and(Compiled::from_exception) {
            report.excluded += 1;
            continue;
        }
        let mut missed = Vec::new();
        for &c in &g.categories {
            let wrong = match &out {
                Ok(o) => is_wrong(c, g, o),
                Err(_) => true,
            };
            let slot = &mut counts[c as usize];
            slot.0 += 1;
            if wrong {
                slot.1 += 1;
                missed.push(c);
            }
        }
        report.words += 1;
        let exact = out.as_ref().is_ok_and(|o| o.phoneme == g.gold_phoneme && o.ps == g.gold_ps);
        if !exact {
            report.words_wrong += 1;
        }
        if !exact || !missed.is_empty() {
            report.misses.push(Miss {
                grapheme: g.grapheme.clone(),
                variety: g.variety,
                categories: missed,
                got: out.map(|o| (o.phoneme, o.ps)).map_err(|e| e.to_string()),
            });
        }
    }
    report.categories = EvalCategory::ALL
        .into_iter()
        .zip(counts)
        .filter(|(_, (considered, _))| *considered > 0)
        .map(|(category, (considered, wrong))| CategoryScore { category, considered, wrong })
        .collect();
    report
}

/// Fixed-width table: Phenomena, #Words, #Wrong, Percentage Accuracy.
pub fn report(r: &EvalReport) -> String {
    let row = |a: &str, b: &str, c: &str, d: &str| format!("{a:<20} {b:>8} {c:>8} {d:>20}\n");
    let mut out = row("Phenomena", "#Words", "#Wrong", "Percentage Accuracy");
    for s in &r.categories {
        out.push_str(&row(
            s.category.title(),
            &s.considered.to_string(),
            &s.wrong.to_string(),
            &s.accuracy().to_string(),
        ));
    }
    if let Some(a) = r.overall() {
        out.push_str(&row("Overall", &r.words.to_string(), &r.words_wrong.to_string(), &a.to_string()));
    }
    out
}
