//! W3C Pronunciation Lexicon Specification 1.0 documents.
//!
//! Each lexeme carries one `<grapheme>`, the stress-marked IPA `<phoneme>`,
//! the prosodic structure as `<phoneme alphabet="x-PS">`, then one
//! `<phoneme>` per alternate pronunciation. Output is UTF-8 with LF line
//! endings and two-space indentation. In PS text the syllable sign, the
//! label prime and the extrametricality brackets are written as character
//! references.

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;
use thiserror::Error;

use crate::compiler::Compiled;

pub const PLS_NAMESPACE: &str = "http://www.w3.org/2005/01/pronunciation-lexicon";
pub const PLS_VERSION: &str = "1.0";
pub const IPA_ALPHABET: &str = "ipa";
pub const PS_ALPHABET: &str = "x-PS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForeignPhoneme {
    pub alphabet: String,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlsLexeme {
    pub grapheme: String,
    pub phoneme_ipa: String,
    pub phoneme_ps: Option<String>,
    pub alternates: Vec<String>,
    /// Phonemes in other alphabets (e.g. x-SAMPA), kept verbatim.
    pub foreign: Vec<ForeignPhoneme>,
}

impl PlsLexeme {
    pub fn new(grapheme: &str, phoneme_ipa: &str, phoneme_ps: &str) -> Self {
        PlsLexeme {
            grapheme: grapheme.to_string(),
            phoneme_ipa: phoneme_ipa.to_string(),
            phoneme_ps: Some(phoneme_ps.to_string()),
            alternates: Vec::new(),
            foreign: Vec::new(),
        }
    }
}

impl From<&Compiled> for PlsLexeme {
    fn from(c: &Compiled) -> Self {
        PlsLexeme {
            grapheme: c.grapheme.clone(),
            phoneme_ipa: c.phoneme.clone(),
            phoneme_ps: Some(c.ps.clone()),
            alternates: c.alternates.clone(),
            foreign: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlsDocument {
    pub lang: String,
    pub alphabet: String,
    pub version: String,
    pub lexemes: Vec<PlsLexeme>,
}

impl Default for PlsDocument {
    fn default() -> Self {
        PlsDocument {
            lang: "hi".into(),
            alphabet: IPA_ALPHABET.into(),
            version: PLS_VERSION.into(),
            lexemes: Vec::new(),
        }
    }
}

impl PlsDocument {
    pub fn with_lexemes(lexemes: Vec<PlsLexeme>) -> Self {
        PlsDocument { lexemes, ..PlsDocument::default() }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlsError {
    #[error("malformed XML: {0}")]
    Xml(String),
    #[error("malformed PLS document: {0}")]
    Malformed(String),
}

impl From<quick_xml::Error> for PlsError {
    fn from(e: quick_xml::Error) -> Self {
        PlsError::Xml(e.to_string())
    }
}

fn escape_into(out: &mut String, text: &str, attribute: bool, ps: bool) {
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' if attribute => out.push_str("&quot;"),
            'σ' | '′' | '⟨' | '⟩' if ps => out.push_str(&format!("&#x{:X};", c as u32)),
            c => out.push(c),
        }
    }
}

fn phoneme_line(out: &mut String, alphabet: Option<&str>, text: &str, ps: bool) {
    out.push_str("    <phoneme");
    if let Some(a) = alphabet {
        out.push_str(" alphabet=\"");
        escape_into(out, a, true, false);
        out.push('"');
    }
    out.push('>');
    escape_into(out, text, false, ps);
    out.push_str("</phoneme>\n");
}

/// Serializes a document. Deterministic: same document, same bytes.
pub fn emit(doc: &PlsDocument) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<lexicon version=\"");
    escape_into(&mut out, &doc.version, true, false);
    out.push_str(&format!("\" xmlns=\"{PLS_NAMESPACE}\" alphabet=\""));
    escape_into(&mut out, &doc.alphabet, true, false);
    out.push_str("\" xml:lang=\"");
    escape_into(&mut out, &doc.lang, true, false);
    out.push_str("\">\n");
    for lx in &doc.lexemes {
        out.push_str("  <lexeme>\n    <grapheme>");
        escape_into(&mut out, &lx.grapheme, false, false);
        out.push_str("</grapheme>\n");
        phoneme_line(&mut out, None, &lx.phoneme_ipa, false);
        if let Some(ps) = &lx.phoneme_ps {
            phoneme_line(&mut out, Some(PS_ALPHABET), ps, true);
        }
        for alt in &lx.alternates {
            phoneme_line(&mut out, None, alt, false);
        }
        for f in &lx.foreign {
            phoneme_line(&mut out, Some(&f.alphabet), &f.text, false);
        }
        out.push_str("  </lexeme>\n");
    }
    out.push_str("</lexicon>\n");
    out
}

/// A parsed document plus non-fatal notes (unknown alphabets, ignored
/// elements).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub document: PlsDocument,
    pub warnings: Vec<String>,
}

fn local_name(e: &BytesStart<'_>) -> String {
    String::from_utf8_lossy(e.local_name().as_ref()).into_owned()
}

fn attribute(e: &BytesStart<'_>, key: &str) -> Result<Option<String>, PlsError> {
    for attr in e.attributes() {
        let attr = attr.map_err(|err| PlsError::Xml(err.to_string()))?;
        if attr.key.as_ref() == key.as_bytes() {
            return Ok(Some(attr.unescape_value()?.into_owned()));
        }
    }
    Ok(None)
}

/// Text content of the element just opened; nested elements are an error.
fn read_text(reader: &mut Reader<&[u8]>, name: &str) -> Result<String, PlsError> {
    let mut text = String::new();
    loop {
        match reader.read_event()? {
            Event::Text(t) => text.push_str(&t.unescape()?),
            Event::CData(c) => text.push_str(&String::from_utf8_lossy(&c)),
            Event::Comment(_) => {}
            Event::End(_) => return Ok(text),
            Event::Start(e) | Event::Empty(e) => {
                return Err(PlsError::Malformed(format!("unexpected <{}> inside <{name}>", local_name(&e))))
            }
            Event::Eof => return Err(PlsError::Malformed(format!("unterminated <{name}>"))),
            _ => {}
        }
    }
}

fn skip_element(reader: &mut Reader<&[u8]>) -> Result<(), PlsError> {
    let mut depth = 1usize;
    while depth > 0 {
        match reader.read_event()? {
            Event::Start(_) => depth += 1,
            Event::End(_) => depth -= 1,
            Event::Eof => return Err(PlsError::Malformed("unterminated element".into())),
            _ => {}
        }
    }
    Ok(())
}

struct PhonemeSink<'a> {
    doc_alphabet: &'a str,
    lexeme: PlsLexeme,
    has_ipa: bool,
}

impl PhonemeSink<'_> {
    fn push(&mut self, alphabet: Option<String>, text: String, warnings: &mut Vec<String>) {
        let alphabet = alphabet.unwrap_or_else(|| self.doc_alphabet.to_string());
        match alphabet.as_str() {
            IPA_ALPHABET if !self.has_ipa => {
                self.lexeme.phoneme_ipa = text;
                self.has_ipa = true;
            }
            IPA_ALPHABET => self.lexeme.alternates.push(text),
            PS_ALPHABET if self.lexeme.phoneme_ps.is_none() => self.lexeme.phoneme_ps = Some(text),
            PS_ALPHABET => warnings.push(format!("{}: extra x-PS phoneme ignored", self.lexeme.grapheme)),
            other => {
                warnings.push(format!("{}: alphabet {other:?} passed through unchanged", self.lexeme.grapheme));
                self.lexeme.foreign.push(ForeignPhoneme { alphabet: other.to_string(), text });
            }
        }
    }
}

fn parse_lexeme(reader: &mut Reader<&[u8]>, doc_alphabet: &str, warnings: &mut Vec<String>) -> Result<PlsLexeme, PlsError> {
    let mut sink = PhonemeSink {
        doc_alphabet,
        lexeme: PlsLexeme {
            grapheme: String::new(),
            phoneme_ipa: String::new(),
            phoneme_ps: None,
            alternates: Vec::new(),
            foreign: Vec::new(),
        },
        has_ipa: false,
    };
    let mut graphemes = 0;
    loop {
        match reader.read_event()? {
            Event::Start(e) => match local_name(&e).as_str() {
                "grapheme" => {
                    let g = read_text(reader, "grapheme")?;
                    if graphemes == 0 {
                        sink.lexeme.grapheme = g;
                    } else {
                        warnings.push(format!("{}: extra grapheme {g:?} ignored", sink.lexeme.grapheme));
                    }
                    graphemes += 1;
                }
                "phoneme" => {
                    let alphabet = attribute(&e, "alphabet")?;
                    let text = read_text(reader, "phoneme")?;
                    sink.push(alphabet, text, warnings);
                }
                "alias" | "example" => skip_element(reader)?,
                other => {
                    warnings.push(format!("element <{other}> inside <lexeme> ignored"));
                    skip_element(reader)?;
                }
            },
            Event::Empty(e) => {
                if local_name(&e) == "phoneme" {
                    let alphabet = attribute(&e, "alphabet")?;
                    sink.push(alphabet, String::new(), warnings);
                }
            }
            Event::End(_) => break,
            Event::Eof => return Err(PlsError::Malformed("unterminated <lexeme>".into())),
            _ => {}
        }
    }
    if sink.lexeme.grapheme.is_empty() {
        return Err(PlsError::Malformed("lexeme without grapheme".into()));
    }
    if !sink.has_ipa {
        return Err(PlsError::Malformed(format!("lexeme {:?} has no IPA phoneme", sink.lexeme.grapheme)));
    }
    Ok(sink.lexeme)
}

fn parse_root(e: &BytesStart<'_>) -> Result<PlsDocument, PlsError> {
    if local_name(e) != "lexicon" {
        return Err(PlsError::Malformed(format!("root element is <{}>, expected <lexicon>", local_name(e))));
    }
    let version = attribute(e, "version")?.ok_or_else(|| PlsError::Malformed("<lexicon> lacks version".into()))?;
    if version != PLS_VERSION {
        return Err(PlsError::Malformed(format!("unsupported PLS version {version:?}")));
    }
    if let Some(ns) = attribute(e, "xmlns")? {
        if ns != PLS_NAMESPACE {
            return Err(PlsError::Malformed(format!("unexpected namespace {ns:?}")));
        }
    }
    let alphabet = attribute(e, "alphabet")?.ok_or_else(|| PlsError::Malformed("<lexicon> lacks alphabet".into()))?;
    let lang = attribute(e, "xml:lang")?.ok_or_else(|| PlsError::Malformed("<lexicon> lacks xml:lang".into()))?;
    Ok(PlsDocument { lang, alphabet, version, lexemes: Vec::new() })
}

pub fn parse(xml: &str) -> Result<Parsed, PlsError> {
    let mut reader = Reader::from_str(xml);
    reader.config_mut().trim_text(true);
    let mut warnings = Vec::new();

    let mut doc = loop {
        match reader.read_event()? {
            Event::Start(e) => break parse_root(&e)?,
            Event::Empty(e) => {
                let doc = parse_root(&e)?;
                expect_eof(&mut reader)?;
                return Ok(Parsed { document: doc, warnings });
            }
            Event::Eof => return Err(PlsError::Malformed("no root element".into())),
            Event::Text(_) => return Err(PlsError::Malformed("text before root element".into())),
            _ => {}
        }
    };
    if doc.alphabet != IPA_ALPHABET {
        warnings.push(format!("document alphabet {:?} is not ipa", doc.alphabet));
    }

    loop {
        match reader.read_event()? {
            Event::Start(e) => match local_name(&e).as_str() {
                "lexeme" => {
                    let lx = parse_lexeme(&mut reader, &doc.alphabet, &mut warnings)?;
                    doc.lexemes.push(lx);
                }
                "meta" | "metadata" => skip_element(&mut reader)?,
                other => {
                    warnings.push(format!("element <{other}> inside <lexicon> ignored"));
                    skip_element(&mut reader)?;
                }
            },
            Event::Empty(_) => {}
            Event::End(_) => break,
            Event::Eof => return Err(PlsError::Malformed("unterminated <lexicon>".into())),
            Event::Text(_) => return Err(PlsError::Malformed("stray text inside <lexicon>".into())),
            _ => {}
        }
    }
    expect_eof(&mut reader)?;
    Ok(Parsed { document: doc, warnings })
}

fn expect_eof(reader: &mut Reader<&[u8]>) -> Result<(), PlsError> {
    loop {
        match reader.read_event()? {
            Event::Eof => return Ok(()),
            Event::Comment(_) | Event::PI(_) => {}
            _ => return Err(PlsError::Malformed("content after root element".into())),
        }
    }
}
