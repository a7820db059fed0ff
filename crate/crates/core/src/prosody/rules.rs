//! R6-R12 and R14-15 over prosodic words.

use thiserror::Error;

use super::syllable::{Label, ProsodicWord, Syllable};
use crate::inventory::Phone;
use crate::phonology::PhonemeString;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProsodyError {
    #[error("cannot syllabify a string without vowels")]
    NoNucleus,
    #[error("no strong metrical syllable left for stress in {0}")]
    NoStressCandidate(String),
}

/// Where a consonant in a medial cluster came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClusterOrigin {
    /// Written in the orthography (ligature, bindu nasal, word edge).
    #[default]
    Lexical,
    /// Left without a vowel by internal schwa deletion.
    Stranded,
}

/// Word-internal onsets: a single consonant, or an obstruent followed by /r/.
fn is_legal_medial_onset(cluster: &[Phone]) -> bool {
    match cluster {
        [c] => c.is_consonant(),
        [a, b] => a.manner().is_some_and(|m| !m.is_sonorant()) && b.symbol() == "r",
        _ => false,
    }
}

/// R6. Every vowel heads a syllable. Word-initial and word-final consonants
/// attach to the edge syllables. A medial cluster gives its stranded
/// consonants (and anything before them) to the preceding coda and splits
/// the rest by the longest legal onset.
pub fn syllabify(p: &PhonemeString, origins: &[ClusterOrigin]) -> Result<ProsodicWord, ProsodyError> {
    let phones = &p.phones;
    let vowels: Vec<usize> = (0..phones.len()).filter(|&i| phones[i].is_vowel()).collect();
    if vowels.is_empty() {
        return Err(ProsodyError::NoNucleus);
    }
    let origin = |i: usize| origins.get(i).copied().unwrap_or_default();

    // Split point for each gap between consecutive vowels: index of the
    // first onset consonant of the following syllable.
    let mut splits = Vec::with_capacity(vowels.len() - 1);
    for w in vowels.windows(2) {
        let (start, end) = (w[0] + 1, w[1]);
        let min_split = (start..end).rev().find(|&i| origin(i) == ClusterOrigin::Stranded).map_or(start, |i| i + 1);
        let split = (min_split..end)
            .find(|&s| is_legal_medial_onset(&phones[s..end]))
            .unwrap_or(end);
        splits.push(split);
    }

    let mut syllables = Vec::with_capacity(vowels.len());
    for (k, &v) in vowels.iter().enumerate() {
        let onset_start = if k == 0 { 0 } else { splits[k - 1] };
        let coda_end = if k + 1 == vowels.len() { phones.len() } else { splits[k] };
        syllables.push(Syllable::new(
            phones[onset_start..v].to_vec(),
            phones[v].clone(),
            phones[v + 1..coda_end].to_vec(),
        ));
    }
    Ok(ProsodicWord { syllables, variety: p.variety })
}

/// [`syllabify`] with every consonant orthographic.
pub fn syllabify_lexical(p: &PhonemeString) -> Result<ProsodicWord, ProsodyError> {
    syllabify(p, &[])
}

/// R7: weight grades and their initial labels.
pub fn label_weights(w: &ProsodicWord) -> ProsodicWord {
    let mut out = w.clone();
    for s in &mut out.syllables {
        s.recompute_weight();
        s.label = Label::from_weight(s.weight);
    }
    out
}

/// R8: a word-final Heavy syllable of a polysyllable is extrametrical.
pub fn mark_extrametrical(w: &ProsodicWord) -> ProsodicWord {
    let mut out = w.clone();
    let n = out.syllables.len();
    if n >= 2 {
        let last = &mut out.syllables[n - 1];
        last.extrametrical = last.label == Label::Strong;
    }
    out
}

/// R9: resolves clashes between adjacent strong metrical syllables by
/// demoting the σs member (the left one when both are σs). σs′ is never
/// demoted. Runs left to right until no clash remains.
pub fn relabel_downgrade(w: &ProsodicWord) -> ProsodicWord {
    let mut out = w.clone();
    let metrical = out.metrical_indices();
    loop {
        let clash = metrical.windows(2).find_map(|pair| {
            let (a, b) = (out.syllables[pair[0]].label, out.syllables[pair[1]].label);
            match (a, b) {
                (Label::Strong, Label::Strong | Label::Superstrong) => Some(pair[0]),
                (Label::Superstrong, Label::Strong) => Some(pair[1]),
                _ => None,
            }
        });
        match clash {
            Some(i) => out.syllables[i].label = Label::Weak,
            None => return out,
        }
    }
}

/// R10: when no metrical syllable is strong, promotes the penultimate
/// metrical syllable (or the only one). Monosyllables are left alone.
pub fn relabel_upgrade(w: &ProsodicWord) -> ProsodicWord {
    let mut out = w.clone();
    if out.is_monosyllabic() {
        return out;
    }
    let metrical = out.metrical_indices();
    if metrical.iter().any(|&i| out.syllables[i].label.is_strong()) {
        return out;
    }
    let target = match metrical.len() {
        0 => return out,
        1 => metrical[0],
        n => metrical[n - 2],
    };
    out.syllables[target].label = Label::Strong;
    out
}

/// R11: syllables whose schwa is deleted. A candidate is a non-initial,
/// non-final σw syllable with an oral /ə/ nucleus, a one-consonant onset and
/// no coda, preceded by an open syllable and followed by a one-consonant
/// onset (V C _ C V). Scans right to left; a deletion closes the preceding
/// syllable, which blocks it in turn.
pub fn internal_schwa_targets(w: &ProsodicWord) -> Vec<usize> {
    let syl = &w.syllables;
    let n = syl.len();
    if n < 3 {
        return Vec::new();
    }
    let mut closed: Vec<bool> = syl.iter().map(|s| !s.coda.is_empty()).collect();
    let mut targets = Vec::new();
    for i in (1..n - 1).rev() {
        let s = &syl[i];
        let deletable = s.label == Label::Weak
            && !s.stressed
            && s.nucleus.is_schwa()
            && s.onset.len() == 1
            && !closed[i]
            && !closed[i - 1]
            && syl[i + 1].onset.len() == 1;
        if deletable {
            targets.push(i);
            closed[i - 1] = true;
        }
    }
    targets.reverse();
    targets
}

/// R12: drops the nuclei listed in `deleted` and syllabifies again, with the
/// stranded onsets forced into the preceding coda. Labels and
/// extrametricality carry over from the surviving syllables.
pub fn resyllabify(w: &ProsodicWord, deleted: &[usize]) -> Result<ProsodicWord, ProsodyError> {
    let mut phones = Vec::new();
    let mut origins = Vec::new();
    let mut survivors = Vec::new();
    for (i, s) in w.syllables.iter().enumerate() {
        let gone = deleted.contains(&i);
        let onset_origin = if gone { ClusterOrigin::Stranded } else { ClusterOrigin::Lexical };
        for c in &s.onset {
            phones.push(c.clone());
            origins.push(onset_origin);
        }
        if !gone {
            phones.push(s.nucleus.clone());
            origins.push(ClusterOrigin::Lexical);
            survivors.push(s);
        }
        for c in &s.coda {
            phones.push(c.clone());
            origins.push(ClusterOrigin::Lexical);
        }
    }
    let mut out = syllabify(&PhonemeString::new(phones, w.variety), &origins)?;
    for (new, old) in out.syllables.iter_mut().zip(survivors) {
        new.label = old.label;
        new.extrametrical = old.extrametrical;
        new.stressed = old.stressed;
    }
    Ok(out)
}

/// R14-15: stresses the rightmost metrical syllable with the highest label
/// (σs′ over σs). Monosyllables carry no stress.
pub fn assign_stress(w: &ProsodicWord) -> Result<ProsodicWord, ProsodyError> {
    let mut out = w.clone();
    for s in &mut out.syllables {
        s.stressed = false;
    }
    if out.is_monosyllabic() {
        return Ok(out);
    }
    let metrical = out.metrical_indices();
    let best = metrical.iter().map(|&i| out.syllables[i].label).max();
    let target = match best {
        Some(label) if label.is_strong() => {
            *metrical.iter().rev().find(|&&i| out.syllables[i].label == label).expect("label present")
        }
        _ => return Err(ProsodyError::NoStressCandidate(super::render_ps(w))),
    };
    out.syllables[target].stressed = true;
    Ok(out)
}
