//! Per-input invariant checks shared by the property suites and the
//! acceptance run. Each returns a description of the first violation.

use hindi_pls::inventory::Phone;
use hindi_pls::pls::{emit, parse, PlsDocument};
use hindi_pls::prosody::{parse_ps, render_phoneme, render_ps, stressed_syllable, RuleId, StepState, STRESS_MARK};
use hindi_pls::script::{segment, validate};
use hindi_pls::{derive, DerivationTrace, Inventory, ProsodicWord, Variety};

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub fn run(word: &str, variety: Variety) -> Result<(ProsodicWord, DerivationTrace), String> {
    let tokens = segment(word).map_err(|e| e.to_string())?;
    derive(&tokens, &Inventory::default(), variety).map_err(|e| format!("{word}: {e}"))
}

fn word_at(trace: &DerivationTrace, rule: RuleId) -> &ProsodicWord {
    match &trace.step(rule).expect("every rule has a row").state {
        StepState::Prosodic(w) => w,
        StepState::Segmental(_) => unreachable!("{} is prosodic", rule.code()),
    }
}

pub fn segmentation_round_trip(w: &str) -> Check {
    ensure!(validate(w).is_empty(), "{w}: {:?}", validate(w));
    let tokens = segment(w).map_err(|e| e.to_string())?;
    let back = super::render_tokens(&tokens);
    ensure!(back == w, "{w} re-rendered as {back}");
    let n = w.chars().count();
    ensure!(tokens.first().map(|t| t.source_span.start) == Some(0), "{w}: span does not start at 0");
    ensure!(tokens.last().map(|t| t.source_span.end) == Some(n), "{w}: span does not cover input");
    ensure!(tokens.windows(2).all(|p| p[0].source_span.end == p[1].source_span.start), "{w}: spans not contiguous");
    Ok(())
}

pub fn weight_law(w: &str, variety: Variety) -> Check {
    let (_, trace) = run(w, variety)?;
    for (rule, pw) in super::prosodic_states(&trace.steps) {
        pw.check_invariants().map_err(|e| format!("{w} after {}: {e}", rule.code()))?;
    }
    Ok(())
}

pub fn single_stress(w: &str, variety: Variety) -> Check {
    let (pw, _) = run(w, variety)?;
    let stressed = pw.syllables.iter().filter(|s| s.stressed).count();
    let marks = render_phoneme(&pw).matches(STRESS_MARK).count();
    let want = if pw.is_monosyllabic() { 0 } else { 1 };
    ensure!(stressed == want && marks == want, "{w}: {stressed} stressed syllables, {marks} marks");
    Ok(())
}

pub fn extrametrical_unstressed(w: &str, variety: Variety) -> Check {
    let (pw, _) = run(w, variety)?;
    ensure!(pw.syllables.iter().all(|s| !(s.stressed && s.extrametrical)), "{w}: stressed extrametrical syllable");
    let ps = parse_ps(&render_ps(&pw)).map_err(|e| e.to_string())?;
    ensure!(stressed_syllable(&render_phoneme(&pw), &ps) == pw.stressed_index(), "{w}: levels disagree on stress");
    Ok(())
}

/// Positions in `after` where a phone of `before` was removed.
fn deletions(before: &[Phone], after: &[Phone]) -> Result<Vec<(usize, usize)>, String> {
    let mut out = Vec::new();
    let mut j = 0;
    for (i, p) in before.iter().enumerate() {
        if j < after.len() && after[j] == *p {
            j += 1;
        } else {
            out.push((i, j));
        }
    }
    if j != after.len() {
        return Err("resyllabified form is not a subsequence".into());
    }
    Ok(out)
}

fn consonant_run_through(phones: &[Phone], gap: usize) -> usize {
    let left = phones[..gap].iter().rev().take_while(|p| p.is_consonant()).count();
    let right = phones[gap..].iter().take_while(|p| p.is_consonant()).count();
    left + right
}

/// Internal schwa deletion removes only schwas, never the first or last
/// vowel, and never leaves three consonants in a row at a deletion site.
pub fn schwa_deletion_conservative(w: &str) -> Check {
    let (_, trace) = run(w, Variety::Sch)?;
    let before: Vec<Phone> = word_at(&trace, RuleId::R10).phones().cloned().collect();
    let after: Vec<Phone> = word_at(&trace, RuleId::R12).phones().cloned().collect();
    let vowels: Vec<usize> = (0..before.len()).filter(|&i| before[i].is_vowel()).collect();
    for (i, gap) in deletions(&before, &after).map_err(|e| format!("{w}: {e}"))? {
        ensure!(before[i].is_schwa(), "{w}: deleted {}", before[i]);
        ensure!(Some(&i) != vowels.first() && Some(&i) != vowels.last(), "{w}: edge vowel deleted");
        ensure!(consonant_run_through(&after, gap) <= 2, "{w}: new consonant cluster at {gap}");
    }
    Ok(())
}

pub fn sfh_subset_of_sch(w: &str) -> Check {
    let (sfh, t_sfh) = run(w, Variety::Sfh)?;
    let (sch, t_sch) = run(w, Variety::Sch)?;
    let applied = |t: &DerivationTrace, r| t.step(r).is_some_and(|s| s.applied);
    ensure!(!applied(&t_sfh, RuleId::R5) && !applied(&t_sfh, RuleId::R11), "{w}: colloquial rule ran in SFH");
    for rule in [RuleId::R1To3, RuleId::R4] {
        ensure!(t_sfh.step(rule).map(|s| s.cell()) == t_sch.step(rule).map(|s| s.cell()), "{w}: {} differs", rule.code());
    }
    if !applied(&t_sch, RuleId::R5) && !applied(&t_sch, RuleId::R11) {
        ensure!(render_phoneme(&sfh) == render_phoneme(&sch), "{w}: varieties differ with no colloquial rule");
    }
    ensure!(sch.phones().count() <= sfh.phones().count(), "{w}: SCH longer than SFH");
    Ok(())
}

pub fn pls_round_trip(doc: &PlsDocument) -> Check {
    let xml = emit(doc);
    let parsed = parse(&xml).map_err(|e| e.to_string())?;
    ensure!(&parsed.document == doc, "document changed in round trip");
    ensure!(emit(&parsed.document) == xml, "re-emission differs");
    Ok(())
}
