//! Synthetic words of up to four syllables built from onset {∅, C} ×
//! nucleus {ə, aː} × coda {∅, C, CC}, and a direct statement of the stress
//! rule to check the cascade against:
//!
//! * one syllable: no stress;
//! * otherwise a final Heavy is extrametrical;
//! * among the rest, the rightmost Superheavy wins, else the rightmost
//!   Heavy, else the penultimate one (or the only one).

use hindi_pls::inventory::{Length, Manner, Phone, Place};
use hindi_pls::prosody::{assign_stress, label_weights, mark_extrametrical, relabel_downgrade, relabel_upgrade, Syllable, Weight};
use hindi_pls::{ProsodicWord, Variety};

#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub onset: bool,
    pub long: bool,
    pub coda: usize,
}

fn shapes() -> Vec<Shape> {
    let mut v = Vec::new();
    for onset in [false, true] {
        for long in [false, true] {
            for coda in 0..=2 {
                v.push(Shape { onset, long, coda });
            }
        }
    }
    v
}

/// All words of 1 to `max` syllables.
pub fn all_words(max: usize) -> Vec<Vec<Shape>> {
    let shapes = shapes();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Shape>> = vec![vec![]];
    for _ in 0..max {
        layer = layer
            .iter()
            .flat_map(|w| {
                shapes.iter().map(move |s| {
                    let mut w = w.clone();
                    w.push(*s);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn build(word: &[Shape]) -> ProsodicWord {
    let k = Phone::consonant("k", Place::Velar, Manner::Stop);
    let s = Phone::consonant("s", Place::Dental, Manner::Fricative);
    let syllables = word
        .iter()
        .map(|sh| {
            let onset = if sh.onset { vec![k.clone()] } else { vec![] };
            let nucleus = if sh.long { Phone::vowel("a", Length::Long) } else { Phone::schwa() };
            Syllable::new(onset, nucleus, vec![s.clone(); sh.coda])
        })
        .collect();
    ProsodicWord { syllables, variety: Variety::Sch }
}

fn weight(sh: &Shape) -> Weight {
    match (sh.long, sh.coda) {
        (false, 0) => Weight::Light,
        (true, 0) | (false, 1) => Weight::Heavy,
        _ => Weight::Superheavy,
    }
}

pub fn oracle(word: &[Shape]) -> Option<usize> {
    let n = word.len();
    if n == 1 {
        return None;
    }
    let metrical = if weight(&word[n - 1]) == Weight::Heavy { n - 1 } else { n };
    let rightmost = |w: Weight| (0..metrical).rev().find(|&i| weight(&word[i]) == w);
    rightmost(Weight::Superheavy)
        .or_else(|| rightmost(Weight::Heavy))
        .or(Some(metrical.saturating_sub(2)))
}

pub fn system(word: &[Shape]) -> Option<usize> {
    let w = build(word);
    let w = relabel_upgrade(&relabel_downgrade(&mark_extrametrical(&label_weights(&w))));
    assign_stress(&w).expect("stress assignable").stressed_index()
}
