//! Prosodic structure: syllabification, weight labels, extrametricality,
//! relabeling, internal schwa deletion on the metrical frame,
//! resyllabification and stress.
//!
//! [`derive`] runs the whole cascade on one word and records a
//! [`DerivationTrace`] with one row per rule, in application order:
//!
//! ```text
//! R1-3   akshara-IPA correspondence
//! R4     final schwa deletion
//! R5     final vowel lengthening        (SCH)
//! R6     syllabification
//! R7     labeling by weight
//! R8     extrametricality
//! R9     downgrading (clash)
//! R10    upgrading
//! R11    internal schwa deletion        (SCH)
//! R12    resyllabification
//! R14-15 leveling and stress marks
//! ```
//!
//! There is no R13.

mod render;
mod rules;
mod syllable;

use std::fmt;

use thiserror::Error;

pub use render::{parse_ps, render_phoneme, render_ps, render_syllables, stressed_syllable, PsParseError, PsSyllable, STRESS_MARK};
pub use rules::{
    assign_stress, internal_schwa_targets, label_weights, mark_extrametrical, relabel_downgrade, relabel_upgrade,
    resyllabify, syllabify, syllabify_lexical, ClusterOrigin, ProsodyError,
};
pub use syllable::{Label, ProsodicWord, Syllable, Weight};

use crate::inventory::Inventory;
use crate::phonology::{self, PhonemeString, PhonologyError, Variety};
use crate::script::AksharaToken;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleId {
    R1To3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
    R12,
    R14To15,
}

impl RuleId {
    pub const ALL: [RuleId; 11] = [
        RuleId::R1To3,
        RuleId::R4,
        RuleId::R5,
        RuleId::R6,
        RuleId::R7,
        RuleId::R8,
        RuleId::R9,
        RuleId::R10,
        RuleId::R11,
        RuleId::R12,
        RuleId::R14To15,
    ];

    pub fn code(self) -> &'static str {
        match self {
            RuleId::R1To3 => "R1-3",
            RuleId::R4 => "R4",
            RuleId::R5 => "R5",
            RuleId::R6 => "R6",
            RuleId::R7 => "R7",
            RuleId::R8 => "R8",
            RuleId::R9 => "R9",
            RuleId::R10 => "R10",
            RuleId::R11 => "R11",
            RuleId::R12 => "R12",
            RuleId::R14To15 => "R14-15",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RuleId::R1To3 => "Akshara-IPA Correspondence",
            RuleId::R4 => "Final Schwa Deletion",
            RuleId::R5 => "Final Vowel Lengthening",
            RuleId::R6 => "Syllabification",
            RuleId::R7 => "Syllable Labeling by Weight",
            RuleId::R8 => "Syllable Extrametricality",
            RuleId::R9 => "Syllable Relabeling, Downgrading",
            RuleId::R10 => "Syllable Relabeling, Upgrading",
            RuleId::R11 => "Internal Schwa Deletion",
            RuleId::R12 => "Resyllabification",
            RuleId::R14To15 => "Leveling and Stress Mark Assignment",
        }
    }
}

/// The form a rule produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepState {
    Segmental(PhonemeString),
    Prosodic(ProsodicWord),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: RuleId,
    pub snapshot: String,
    pub applied: bool,
    pub state: StepState,
}

impl TraceStep {
    /// The snapshot, or `DNA` when the rule did not apply.
    pub fn cell(&self) -> &str {
        if self.applied {
            &self.snapshot
        } else {
            "DNA"
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DerivationTrace {
    pub steps: Vec<TraceStep>,
}

impl DerivationTrace {
    pub fn step(&self, rule: RuleId) -> Option<&TraceStep> {
        self.steps.iter().find(|s| s.rule == rule)
    }
}

impl fmt::Display for DerivationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{} {} → {}", s.rule.code(), s.rule.name(), s.cell())?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeriveError {
    #[error(transparent)]
    Phonology(#[from] PhonologyError),
    #[error(transparent)]
    Prosody(#[from] ProsodyError),
}

/// Runs the rule cascade on a segmented word.
pub fn derive(
    tokens: &[AksharaToken],
    inventory: &Inventory,
    variety: Variety,
) -> Result<(ProsodicWord, DerivationTrace), DeriveError> {
    let mut trace = DerivationTrace::default();
    let seg = |trace: &mut DerivationTrace, rule, p: &PhonemeString, applied, slashes: bool| {
        let snapshot = if slashes { format!("/{p}/") } else { format!("[{p}]") };
        trace.steps.push(TraceStep { rule, snapshot, applied, state: StepState::Segmental(p.clone()) });
    };

    let p13 = phonology::to_phonemes(tokens, inventory, variety)?;
    seg(&mut trace, RuleId::R1To3, &p13, true, true);
    let p4 = phonology::final_schwa_deletion(&p13);
    seg(&mut trace, RuleId::R4, &p4, p4 != p13, false);
    let p5 = phonology::final_vowel_lengthening(&p4, variety);
    seg(&mut trace, RuleId::R5, &p5, p5 != p4, false);

    let pro = |trace: &mut DerivationTrace, rule, w: &ProsodicWord, applied, snapshot: String| {
        trace.steps.push(TraceStep { rule, snapshot, applied, state: StepState::Prosodic(w.clone()) });
    };

    let w6 = syllabify_lexical(&p5)?;
    pro(&mut trace, RuleId::R6, &w6, true, render_syllables(&w6, false, &[]));
    let w7 = label_weights(&w6);
    pro(&mut trace, RuleId::R7, &w7, true, render_ps(&w7));
    let w8 = mark_extrametrical(&w7);
    pro(&mut trace, RuleId::R8, &w8, w8 != w7, render_ps(&w8));
    let w9 = relabel_downgrade(&w8);
    pro(&mut trace, RuleId::R9, &w9, w9 != w8, render_ps(&w9));
    let w10 = relabel_upgrade(&w9);
    pro(&mut trace, RuleId::R10, &w10, w10 != w9, render_ps(&w10));

    let targets = if variety.deletes_internal_schwa() { internal_schwa_targets(&w10) } else { Vec::new() };
    let deleted = !targets.is_empty();
    pro(&mut trace, RuleId::R11, &w10, deleted, render_syllables(&w10, true, &targets));
    let w12 = if deleted { resyllabify(&w10, &targets)? } else { w10.clone() };
    pro(&mut trace, RuleId::R12, &w12, deleted, render_ps(&w12));

    let w15 = assign_stress(&w12)?;
    pro(&mut trace, RuleId::R14To15, &w15, true, format!("[{}]", render_phoneme(&w15)));
    Ok((w15, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::segment;

    fn run(word: &str, variety: Variety) -> (ProsodicWord, DerivationTrace) {
        derive(&segment(word).unwrap(), &Inventory::default(), variety).unwrap()
    }

    fn cells(trace: &DerivationTrace) -> Vec<&str> {
        trace.steps.iter().map(TraceStep::cell).collect()
    }

    #[test]
    fn kasrat_trace() {
        let (w, t) = run("कसरत", Variety::Sch);
        assert_eq!(
            cells(&t),
            [
                "/kəsərət̪ə/",
                "[kəsərət̪]",
                "DNA",
                "[σkə σsə σrət̪]",
                "[σw kə σw sə σs rət̪]",
                "[σw kə σw sə ⟨σs rət̪⟩]",
                "DNA",
                "[σs kə σw sə ⟨σs rət̪⟩]",
                "[σs kə σw s ⟨σs rət̪⟩]",
                "[σs kəs ⟨σs rət̪⟩]",
                "[ˈkəsrət̪]",
            ]
        );
        assert_eq!(render_phoneme(&w), "ˈkəsrət̪");
        assert_eq!(render_ps(&w), "[σs kəs ⟨σs rət̪⟩]");
    }

    #[test]
    fn trace_display_format() {
        let (_, t) = run("कसरत", Variety::Sch);
        let text = t.to_string();
        assert!(text.contains("R8 Syllable Extrametricality → [σw kə σw sə ⟨σs rət̪⟩]\n"));
        assert!(text.contains("R9 Syllable Relabeling, Downgrading → DNA\n"));
        assert_eq!(text.lines().count(), 11);
    }

    #[test]
    fn sfh_skips_colloquial_rules() {
        let (w, t) = run("कसरत", Variety::Sfh);
        assert!(!t.step(RuleId::R5).unwrap().applied);
        assert!(!t.step(RuleId::R11).unwrap().applied);
        assert_eq!(render_phoneme(&w), "ˈkəsərət̪");
    }

    #[test]
    fn degenerate_single_vowel() {
        let (w, _) = run("आ", Variety::Sch);
        assert_eq!(render_ps(&w), "[σs aː]");
        assert_eq!(render_phoneme(&w), "aː");
    }
}
