//! The line-oriented trisection description format.
//!
//! ```text
//! trisection v1
//! name standard
//! genus 1
//! k 1
//! map 1
//!   a1 -> x1
//!   b1 -> 1
//!   cuts: b1
//! map 2
//!   ...
//! target: x1 x1
//! target-gens: 1
//! ```
//!
//! `#` starts a comment. Map blocks may come in any order but each sector
//! appears exactly once and every surface generator gets one image line.

use std::fmt::Write as _;

use thiserror::Error;
use trisection_core::presentation::Presentation;
use trisection_core::surface::{HandlebodyMap, MapError};
use trisection_core::trisection::{GroupTrisection, TrisectionError};
use trisection_core::word::{parse_symbol, Alphabet, Family, Word, WordError};

pub const VERSION: &str = "v1";

/// Largest genus or target generator count accepted from text.
pub const MAX_RANK: u32 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `trisection {VERSION}` header")]
    MissingHeader,
    #[error("unsupported format version `{0}`")]
    UnsupportedVersion(String),
    #[error("unrecognized line")]
    UnexpectedLine,
    #[error("`{0}` given twice")]
    Duplicate(String),
    #[error("`{0}` must be given before this line")]
    MissingField(&'static str),
    #[error("expected a nonnegative integer at most {MAX_RANK}")]
    BadInteger,
    #[error("sector must be 1, 2 or 3")]
    BadSector,
    #[error("generator line outside a map block")]
    OutsideMap,
    #[error("left-hand side must be a surface generator a<i> or b<i>")]
    BadGenerator,
    #[error("{0}")]
    Word(WordError),
    #[error("{symbol} exceeds genus {genus}")]
    RankMismatch { symbol: String, genus: u32 },
    #[error("expected {expected} cut words, found {found}")]
    CutCount { expected: usize, found: usize },
    #[error("k = {k} exceeds genus {genus}")]
    RankExceedsGenus { genus: u32, k: u32 },
    #[error("map {0} is missing")]
    MissingMap(usize),
    #[error("map {sector} has no image for {symbol}")]
    MissingImage { sector: usize, symbol: String },
    #[error("target relator uses x{generator} but target-gens is {count}")]
    TargetRange { generator: u32, count: u32 },
}

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// A parsed file: the trisection plus its optional name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrisectionDocument {
    pub name: Option<String>,
    pub trisection: GroupTrisection,
}

#[derive(Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn at(self, offset: usize) -> Pos {
        Pos { line: self.line, column: self.column + offset }
    }

    fn err(self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, column: self.column, kind }
    }
}

#[derive(Default)]
struct MapBlock {
    pos: Option<Pos>,
    images: Vec<Option<Word>>,
    cuts: Option<(Pos, Vec<Word>)>,
}

#[derive(Default)]
struct Builder {
    header: bool,
    name: Option<String>,
    genus: Option<(Pos, u32)>,
    k: Option<(Pos, u32)>,
    maps: [MapBlock; 3],
    current: Option<usize>,
    target: Option<(Pos, Vec<(Pos, Word)>)>,
    target_gens: Option<(Pos, u32)>,
}

fn column_of(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn parse_int(text: &str, pos: Pos) -> Result<u32, ParseError> {
    let t = text.trim();
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return Err(pos.err(ParseErrorKind::BadInteger));
    }
    t.parse::<u32>().ok().filter(|&n| n <= MAX_RANK).ok_or(pos.err(ParseErrorKind::BadInteger))
}

fn word_error(e: WordError, pos: Pos, text: &str) -> ParseError {
    match e {
        WordError::BadToken { offset, .. } => pos.at(text[..offset].chars().count()).err(ParseErrorKind::Word(e)),
        e => pos.err(ParseErrorKind::Word(e)),
    }
}

/// Splits a comma-separated word list. A blank list is empty.
fn parse_words(text: &str, pos: Pos, alphabet: Alphabet) -> Result<Vec<(Pos, Word)>, ParseError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut start = 0;
    for piece in text.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        let piece_pos = pos.at(text[..start + lead].chars().count());
        let trimmed = piece.trim();
        if trimmed.is_empty() {
            return Err(piece_pos.err(ParseErrorKind::Word(WordError::BadToken {
                offset: 0,
                token: String::new(),
            })));
        }
        let w = Word::parse(trimmed, alphabet).map_err(|e| word_error(e, piece_pos, trimmed))?;
        out.push((piece_pos, w));
        start += piece.len() + 1;
    }
    Ok(out)
}

impl Builder {
    fn genus(&self, pos: Pos) -> Result<u32, ParseError> {
        self.genus.map(|(_, g)| g).ok_or(pos.err(ParseErrorKind::MissingField("genus")))
    }

    fn line(&mut self, raw: &str, number: usize) -> Result<(), ParseError> {
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            return Ok(());
        }
        let start = content.len() - content.trim_start().len();
        let pos = Pos { line: number, column: column_of(raw, start) };
        let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
        // column of `rest` within the line
        let rest_pos = |rest: &str| pos.at(trimmed[..trimmed.len() - rest.len()].chars().count());

        if !self.header {
            if keyword != "trisection" {
                return Err(pos.err(ParseErrorKind::MissingHeader));
            }
            let version = rest.trim();
            if version != VERSION {
                return Err(rest_pos(rest.trim_start()).err(ParseErrorKind::UnsupportedVersion(version.into())));
            }
            self.header = true;
            return Ok(());
        }

        if keyword == "name" {
            if self.name.is_some() {
                return Err(pos.err(ParseErrorKind::Duplicate("name".into())));
            }
            if rest.trim().is_empty() {
                return Err(pos.err(ParseErrorKind::MissingField("name")));
            }
            self.name = Some(rest.trim().into());
            return Ok(());
        }
        if let Some(rest) = trimmed.strip_prefix("cuts:") {
            let sector = self.current.ok_or(pos.err(ParseErrorKind::OutsideMap))?;
            let g = self.genus(pos)?;
            let words = parse_words(rest, rest_pos(rest), Alphabet::Surface)?;
            for (p, w) in &words {
                if w.max_generator() > 2 * g {
                    let symbol = Word::generator(Alphabet::Surface, w.max_generator()).to_string();
                    return Err(p.err(ParseErrorKind::RankMismatch { symbol, genus: g }));
                }
            }
            let block = &mut self.maps[sector];
            if block.cuts.is_some() {
                return Err(pos.err(ParseErrorKind::Duplicate("cuts".into())));
            }
            block.cuts = Some((pos, words.into_iter().map(|(_, w)| w).collect()));
            return Ok(());
        }
        if let Some(rest) = trimmed.strip_prefix("target-gens:") {
            if self.target_gens.is_some() {
                return Err(pos.err(ParseErrorKind::Duplicate("target-gens".into())));
            }
            self.target_gens = Some((pos, parse_int(rest, rest_pos(rest))?));
            self.current = None;
            return Ok(());
        }
        if let Some(rest) = trimmed.strip_prefix("target:") {
            if self.target.is_some() {
                return Err(pos.err(ParseErrorKind::Duplicate("target".into())));
            }
            self.target = Some((pos, parse_words(rest, rest_pos(rest), Alphabet::Handle)?));
            self.current = None;
            return Ok(());
        }
        if let Some((lhs, rhs)) = trimmed.split_once("->") {
            return self.image(pos, lhs, rhs, rest_pos(rhs));
        }

        match keyword {
            "trisection" => Err(pos.err(ParseErrorKind::Duplicate("trisection".into()))),
            "genus" | "k" => {
                let slot = if keyword == "genus" { &mut self.genus } else { &mut self.k };
                if slot.is_some() {
                    return Err(pos.err(ParseErrorKind::Duplicate(keyword.into())));
                }
                *slot = Some((pos, parse_int(rest, rest_pos(rest.trim_start()))?));
                Ok(())
            }
            "map" => {
                let g = self.genus(pos)?;
                let n = rest.trim();
                let sector = match n {
                    "1" => 0,
                    "2" => 1,
                    "3" => 2,
                    _ => return Err(rest_pos(rest.trim_start()).err(ParseErrorKind::BadSector)),
                };
                let block = &mut self.maps[sector];
                if block.pos.is_some() {
                    return Err(pos.err(ParseErrorKind::Duplicate(format!("map {n}"))));
                }
                block.pos = Some(pos);
                block.images = vec![None; 2 * g as usize];
                self.current = Some(sector);
                Ok(())
            }
            _ => Err(pos.err(ParseErrorKind::UnexpectedLine)),
        }
    }

    fn image(&mut self, pos: Pos, lhs: &str, rhs: &str, rhs_pos: Pos) -> Result<(), ParseError> {
        let sector = self.current.ok_or(pos.err(ParseErrorKind::OutsideMap))?;
        let g = self.genus(pos)?;
        let symbol_text = lhs.trim();
        let generator = parse_symbol(symbol_text)
            .filter(|s| !s.inverse && matches!(s.family, Family::A | Family::B))
            .ok_or(pos.err(ParseErrorKind::BadGenerator))?;
        if generator.index > g {
            return Err(pos.err(ParseErrorKind::RankMismatch { symbol: symbol_text.into(), genus: g }));
        }
        let slot = Alphabet::Surface.generator(generator.family, generator.index).expect("surface family") as usize - 1;
        let word_pos = rhs_pos.at(rhs.len() - rhs.trim_start().len());
        let text = rhs.trim();
        let w = Word::parse(text, Alphabet::Handle).map_err(|e| word_error(e, word_pos, text))?;
        if w.max_generator() > g {
            let symbol = Word::generator(Alphabet::Handle, w.max_generator()).to_string();
            return Err(word_pos.err(ParseErrorKind::RankMismatch { symbol, genus: g }));
        }
        let block = &mut self.maps[sector];
        if block.images[slot].is_some() {
            return Err(pos.err(ParseErrorKind::Duplicate(symbol_text.into())));
        }
        block.images[slot] = Some(w);
        Ok(())
    }

    fn finish(self, last: Pos) -> Result<TrisectionDocument, ParseError> {
        if !self.header {
            return Err(last.err(ParseErrorKind::MissingHeader));
        }
        let (_, genus) = self.genus.ok_or(last.err(ParseErrorKind::MissingField("genus")))?;
        let (k_pos, k) = self.k.ok_or(last.err(ParseErrorKind::MissingField("k")))?;
        if k > genus {
            return Err(k_pos.err(ParseErrorKind::RankExceedsGenus { genus, k }));
        }
        let mut maps = Vec::with_capacity(3);
        for (s, block) in self.maps.into_iter().enumerate() {
            let pos = block.pos.ok_or(last.err(ParseErrorKind::MissingMap(s + 1)))?;
            let mut images = Vec::with_capacity(block.images.len());
            for (i, w) in block.images.into_iter().enumerate() {
                let symbol = Word::generator(Alphabet::Surface, i as u32 + 1).to_string();
                images.push(w.ok_or(pos.err(ParseErrorKind::MissingImage { sector: s + 1, symbol }))?);
            }
            let (cut_pos, cuts) = match block.cuts {
                Some((p, c)) => (p, Some(c)),
                None => (pos, None),
            };
            let m = HandlebodyMap::new(genus, images, cuts).map_err(|e| match e {
                MapError::WrongCutCount { expected, found } => cut_pos.err(ParseErrorKind::CutCount { expected, found }),
                other => unreachable!("checked while parsing: {other}"),
            })?;
            maps.push(m);
        }
        let target = match (self.target, self.target_gens) {
            (None, None) => None,
            (rels, gens) => {
                let count = gens.map_or(genus, |(_, n)| n);
                let rels = rels.map(|(_, r)| r).unwrap_or_default();
                for (p, w) in &rels {
                    if w.max_generator() > count {
                        return Err(p.err(ParseErrorKind::TargetRange { generator: w.max_generator(), count }));
                    }
                }
                Some(
                    Presentation::new(Alphabet::Handle, count, rels.into_iter().map(|(_, w)| w))
                        .expect("relators range-checked"),
                )
            }
        };
        let maps: [HandlebodyMap; 3] = maps.try_into().expect("three sectors");
        let trisection = GroupTrisection::new(genus, k, maps, target).map_err(|e| match e {
            TrisectionError::RankExceedsGenus { genus, k } => k_pos.err(ParseErrorKind::RankExceedsGenus { genus, k }),
            other => unreachable!("checked while parsing: {other}"),
        })?;
        Ok(TrisectionDocument { name: self.name, trisection })
    }
}

/// Parses a document. Only structure is checked here; the cube conditions
/// are left to verification.
pub fn parse_document(text: &str) -> Result<TrisectionDocument, ParseError> {
    let mut b = Builder::default();
    let mut lines = 0;
    for (i, line) in text.lines().enumerate() {
        b.line(line, i + 1)?;
        lines = i + 1;
    }
    b.finish(Pos { line: lines.max(1), column: 1 })
}

pub fn parse_trisection(text: &str) -> Result<GroupTrisection, ParseError> {
    parse_document(text).map(|d| d.trisection)
}

fn write_words(out: &mut String, words: &[Word]) {
    for (i, w) in words.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{w}");
    }
}

fn serialize(name: Option<&str>, t: &GroupTrisection) -> String {
    let mut out = format!("trisection {VERSION}\n");
    if let Some(name) = name {
        let _ = writeln!(out, "name {}", name.trim());
    }
    let _ = writeln!(out, "genus {}\nk {}", t.genus(), t.k());
    for (s, m) in t.maps().iter().enumerate() {
        let _ = writeln!(out, "map {}", s + 1);
        for (g, w) in m.images().images().iter().enumerate() {
            let _ = writeln!(out, "  {} -> {w}", Word::generator(Alphabet::Surface, g as u32 + 1));
        }
        if let Some(cuts) = m.cuts() {
            out.push_str("  cuts:");
            if !cuts.is_empty() {
                out.push(' ');
            }
            write_words(&mut out, cuts);
            out.push('\n');
        }
    }
    if let Some(p) = t.target() {
        let p = p.densified();
        if !p.relators().is_empty() {
            out.push_str("target: ");
            write_words(&mut out, p.relators());
            out.push('\n');
        }
        let _ = writeln!(out, "target-gens: {}", p.generator_count());
    }
    out
}

/// Canonical text of the cube alone (no name).
pub fn serialize_trisection(t: &GroupTrisection) -> String {
    serialize(None, t)
}

pub fn serialize_document(d: &TrisectionDocument) -> String {
    serialize(d.name.as_deref().filter(|n| !n.trim().is_empty()), &d.trisection)
}

/// Parses the `presentation { gens: x1 x2  rels: "x1", "x2 x1^-1" }` form
/// produced by `Display` on presentations. Generators must be `x1..xn`.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let pos = Pos { line: 1, column: 1 };
    let bad = |offset: usize| pos.at(offset).err(ParseErrorKind::UnexpectedLine);
    let t = text.trim();
    let body = t.strip_prefix("presentation").map(str::trim_start).and_then(|b| b.strip_prefix('{'));
    let body = body.and_then(|b| b.trim_end().strip_suffix('}')).ok_or(bad(0))?;
    let (gens, rels) = body.split_once("rels:").ok_or(bad(0))?;
    let gens = gens.trim().strip_prefix("gens:").ok_or(bad(0))?;
    let mut count = 0u32;
    for tok in gens.split_whitespace() {
        let expected = format!("x{}", count + 1);
        if tok != expected || count >= MAX_RANK {
            return Err(bad(0));
        }
        count += 1;
    }
    let mut relators = Vec::new();
    for piece in rels.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let inner = piece.strip_prefix('"').and_then(|p| p.strip_suffix('"')).ok_or(bad(0))?;
        let w = Word::parse(inner, Alphabet::Handle).map_err(|e| pos.err(ParseErrorKind::Word(e)))?;
        if w.max_generator() > count {
            return Err(pos.err(ParseErrorKind::TargetRange { generator: w.max_generator(), count }));
        }
        relators.push(w);
    }
    Ok(Presentation::new(Alphabet::Handle, count, relators).expect("relators range-checked"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use trisection_core::trisection::{builtin, stabilize, standard_trivial_31, trivial_00, BUILTIN_NAMES};

    const STANDARD: &str = "trisection v1
genus 3
k 1
map 1
  a1 -> 1
  b1 -> x1
  a2 -> x2
  b2 -> 1
  a3 -> x3
  b3 -> 1
  cuts: a1, b2, b3
map 2
  a1 -> x1
  b1 -> 1
  a2 -> 1
  b2 -> x2
  a3 -> x3
  b3 -> 1
  cuts: b1, a2, b3
map 3
  a1 -> x1
  b1 -> 1
  a2 -> x2
  b2 -> 1
  a3 -> 1
  b3 -> x3
  cuts: b1, b2, a3
target-gens: 0
";

    #[test]
    fn standard_document() {
        assert_eq!(serialize_trisection(&standard_trivial_31()), STANDARD);
        assert_eq!(parse_trisection(STANDARD).unwrap(), standard_trivial_31());
        assert_eq!(serialize_trisection(&stabilize(&trivial_00())), STANDARD);
    }

    #[test]
    fn trivial_document() {
        let text = serialize_trisection(&trivial_00());
        assert_eq!(text, "trisection v1\ngenus 0\nk 0\nmap 1\nmap 2\nmap 3\ntarget-gens: 0\n");
        assert_eq!(parse_trisection(&text).unwrap(), trivial_00());
    }

    #[test]
    fn catalogue_round_trips() {
        for name in BUILTIN_NAMES {
            let t = builtin(name).unwrap();
            let text = serialize_trisection(&t);
            assert_eq!(parse_trisection(&text).unwrap(), t, "{name}");
            assert_eq!(serialize_trisection(&parse_trisection(&text).unwrap()), text);
        }
    }

    #[test]
    fn canonicalizes_free_form_input() {
        let messy = "# comment\n\ntrisection v1   \nname  my cube # trailing\nk 1\ngenus 1\nmap 2\n b1 -> 1\n a1 -> x1 x1^-1 x1\n  cuts:b1\nmap 1\n  b1->1\n  a1 -> x1\n  cuts: b1\nmap 3\n  a1 -> x1\n  b1 -> 1\n  cuts: b1\ntarget-gens: 1\n";
        let doc = parse_document(messy).unwrap();
        assert_eq!(doc.name.as_deref(), Some("my cube"));
        assert_eq!(doc.trisection, builtin("s1xs3_11").unwrap());
        assert!(serialize_document(&doc).starts_with("trisection v1\nname my cube\ngenus 1\n"));
    }

    #[test]
    fn cuts_are_optional() {
        let text: String = STANDARD.lines().filter(|l| !l.contains("cuts")).map(|l| format!("{l}\n")).collect();
        let t = parse_trisection(&text).unwrap();
        assert!(t.maps().iter().all(|m| m.cuts().is_none()));
    }

    fn error(text: &str) -> ParseError {
        parse_trisection(text).unwrap_err()
    }

    #[test]
    fn errors_carry_positions() {
        let e = error(&STANDARD.replace("  b3 -> 1\n  cuts: a1", "  b4 -> x1\n  cuts: a1"));
        assert_eq!((e.line, e.column), (10, 3));
        assert!(matches!(e.kind, ParseErrorKind::RankMismatch { .. }));

        let e = error(&STANDARD.replace("a2 -> x2\n  b2 -> 1\n  a3 -> x3", "a2 -> x4\n  b2 -> 1\n  a3 -> x3"));
        assert_eq!((e.line, e.column), (7, 9));
        assert_eq!(e.kind, ParseErrorKind::RankMismatch { symbol: "x4".into(), genus: 3 });

        let e = error(&STANDARD.replace("cuts: a1, b2, b3", "cuts: a1, b2"));
        assert_eq!(e.line, 11);
        assert_eq!(e.kind, ParseErrorKind::CutCount { expected: 3, found: 2 });

        let e = error(&STANDARD.replace("k 1", "k 4"));
        assert_eq!((e.line, e.kind), (3, ParseErrorKind::RankExceedsGenus { genus: 3, k: 4 }));

        let e = error(&STANDARD.replace("b1 -> x1", "b1 -> x1 y2"));
        assert_eq!((e.line, e.column), (6, 12));

        assert_eq!(error("trisection v2\n").kind, ParseErrorKind::UnsupportedVersion("v2".into()));
        assert_eq!(error("genus 1\n").kind, ParseErrorKind::MissingHeader);
        assert_eq!(error("").kind, ParseErrorKind::MissingHeader);
        assert_eq!(error("trisection v1\nmap 1\n").kind, ParseErrorKind::MissingField("genus"));
        assert_eq!(error("trisection v1\nname   \n").kind, ParseErrorKind::MissingField("name"));
        assert_eq!(
            error(&STANDARD.replace("  a3 -> 1\n  b3 -> x3\n", "")).kind,
            ParseErrorKind::MissingImage { sector: 3, symbol: "a3".into() }
        );
        assert_eq!(error(&STANDARD.replace("map 3", "map 2")).kind, ParseErrorKind::Duplicate("map 2".into()));
        assert_eq!(error("trisection v1\ngenus 99999999999\n").kind, ParseErrorKind::BadInteger);
    }

    #[test]
    fn targets() {
        let text = STANDARD.replace("target-gens: 0", "target: x1 x1, x2^-1 x1\ntarget-gens: 2");
        let t = parse_trisection(&text).unwrap();
        assert_eq!(t.target().unwrap().relators().len(), 2);
        let e = error(&STANDARD.replace("target-gens: 0", "target: x3\ntarget-gens: 2"));
        assert_eq!((e.line, e.column), (28, 9));
        // default generator count is the genus
        let t = parse_trisection(&STANDARD.replace("target-gens: 0", "target: x3")).unwrap();
        assert_eq!(t.target().unwrap().generator_count(), 3);
        let t = parse_trisection(&STANDARD.replace("target-gens: 0\n", "")).unwrap();
        assert!(t.target().is_none());
    }

    #[test]
    fn presentation_text_round_trip() {
        let p = parse_presentation("presentation { gens: x1 x2  rels: \"x1\", \"x2 x1^-1\" }").unwrap();
        assert_eq!(p.to_string(), "presentation { gens: x1 x2  rels: \"x1\", \"x1^-1 x2\" }");
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
        let empty = parse_presentation("presentation { gens:  rels: }").unwrap();
        assert_eq!(empty.generator_count(), 0);
        assert!(parse_presentation("presentation { gens: x2  rels: }").is_err());
    }
}
