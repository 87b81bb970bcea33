//! Identity file grammar and exporters.
//!
//! A text line is `lhs = [-] tok tok ...`; `#` starts a comment.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::filter::{FilteredEntry, FilteredIdentitySet};
use crate::miner::RawIdentitySet;
use crate::token::Token;
use crate::word::{Identity, Sign, SignedWord};
use crate::Error;

fn parse_err(column: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line: 0, column, msg: msg.into() }
}

/// Parses one identity. Columns in errors are 1-based character positions.
pub fn parse_identity_line(text: &str) -> Result<Identity, Error> {
    let text = text.split('#').next().unwrap_or("");
    let eq = text.find('=').ok_or_else(|| parse_err(text.chars().count() + 1, "missing '='"))?;
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    let mut col = 0;
    let mut start = None;
    for (i, ch) in text.char_indices().chain(std::iter::once((text.len(), ' '))) {
        col += 1;
        if ch.is_whitespace() || ch == '=' {
            if let Some((c, s)) = start.take() {
                tokens.push((c, &text[s..i]));
            }
            if ch == '=' {
                tokens.push((col, "="));
            }
        } else if start.is_none() {
            start = Some((col, i));
        }
    }
    let split = tokens.iter().position(|&(_, t)| t == "=").expect("'=' was found");
    let (lhs_part, rest) = (&tokens[..split], &tokens[split + 1..]);
    let eq_col = text[..eq].chars().count() + 1;
    let (lhs_col, lhs_text) = match lhs_part {
        [one] => *one,
        [] => return Err(parse_err(1, "missing lhs")),
        [_, (c, _), ..] => return Err(parse_err(*c, "lhs must be a single token")),
    };
    let mut grouped = false;
    let mut plain_axis = None;
    let mut read = |c: usize, s: &str| -> Result<Token, Error> {
        let (t, pattern) = Token::parse_with_pattern(s).map_err(|_| parse_err(c, format!("unknown token {s}")))?;
        grouped |= pattern;
        if !pattern && t.kind().axis().is_some() && plain_axis.is_none() {
            plain_axis = Some(c);
        }
        Ok(t)
    };
    let lhs = read(lhs_col, lhs_text)?;
    let mut sign = Sign::Plus;
    let mut rhs = rest;
    if let [(_, "-"), tail @ ..] = rhs {
        sign = Sign::Minus;
        rhs = tail;
    }
    if rhs.is_empty() {
        return Err(parse_err(eq_col + 1, "empty rhs"));
    }
    let mut out = Vec::with_capacity(rhs.len());
    for &(c, s) in rhs {
        if s == "=" {
            return Err(parse_err(c, "second '='"));
        }
        out.push(read(c, s)?);
    }
    if grouped {
        if let Some(c) = plain_axis {
            return Err(parse_err(c, "pattern axes A B C cannot be mixed with X Y Z"));
        }
    }
    Ok(Identity { lhs, rhs: SignedWord::new(sign, out), grouped })
}

/// Canonical one-line rendering.
pub fn format_identity(id: &Identity) -> String {
    let name = |t: &Token| if id.grouped { t.pattern_name() } else { t.to_string() };
    let mut s = format!("{} =", name(&id.lhs));
    if id.rhs.sign == Sign::Minus {
        s.push_str(" -");
    }
    if id.rhs.tokens.is_empty() {
        s.push_str(" I");
    }
    for t in &id.rhs.tokens {
        let _ = write!(s, " {}", name(t));
    }
    s
}

/// Parses a word such as `"H X H"` or `"- X1 Y"`; `I` alone is the empty word.
pub fn parse_word(text: &str) -> Result<SignedWord, Error> {
    let mut parts = text.split_whitespace().peekable();
    let mut sign = Sign::Plus;
    if parts.peek() == Some(&"-") {
        sign = Sign::Minus;
        parts.next();
    }
    let tokens = parts
        .map(|p| p.parse::<Token>().map_err(|_| Error::Token(p.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SignedWord::new(sign, tokens))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format, Error> {
        match s.to_ascii_lowercase().as_str() {
            "text" | "txt" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Argument(format!("unknown format {other}"))),
        }
    }
}

impl Format {
    /// Guess from a file extension; anything unknown is text.
    pub fn from_path(p: &Path) -> Format {
        p.extension().and_then(|e| e.to_str()).and_then(|e| e.parse().ok()).unwrap_or(Format::Text)
    }
}

/// One identity with the metadata carried by json and csv files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub lhs: String,
    pub sign: i8,
    pub rhs: String,
    pub length: usize,
    pub grouped: bool,
    #[serde(default)]
    pub origin_length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

/// An identity and the mined length it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub identity: Identity,
    pub origin_len: usize,
    pub provenance: Vec<String>,
}

impl Entry {
    pub fn plain(identity: Identity) -> Entry {
        let origin_len = identity.len();
        Entry { identity, origin_len, provenance: vec![] }
    }
}

impl From<&FilteredEntry> for Entry {
    fn from(e: &FilteredEntry) -> Entry {
        Entry {
            identity: e.identity.clone(),
            origin_len: e.origin_len,
            provenance: e.provenance.iter().map(|s| s.name().to_string()).collect(),
        }
    }
}

pub fn raw_entries(s: &RawIdentitySet) -> Vec<Entry> {
    s.identities.iter().cloned().map(Entry::plain).collect()
}

pub fn filtered_entries(s: &FilteredIdentitySet) -> Vec<Entry> {
    s.entries.iter().map(Entry::from).collect()
}

fn record(e: &Entry) -> Record {
    let id = &e.identity;
    let name = |t: &Token| if id.grouped { t.pattern_name() } else { t.to_string() };
    Record {
        lhs: name(&id.lhs),
        sign: id.rhs.sign.as_i8(),
        rhs: id.rhs.tokens.iter().map(name).collect::<Vec<_>>().join(" "),
        length: id.len(),
        grouped: id.grouped,
        origin_length: Some(e.origin_len),
        provenance: (!e.provenance.is_empty()).then(|| e.provenance.join(" ")),
    }
}

fn from_record(r: &Record) -> Result<Entry, Error> {
    let line = format!("{} = {}{}", r.lhs, if r.sign < 0 { "- " } else { "" }, r.rhs);
    let identity = parse_identity_line(&line)?;
    let origin_len = r.origin_length.unwrap_or(identity.len());
    let provenance = r.provenance.as_deref().map(|p| p.split_whitespace().map(str::to_string).collect()).unwrap_or_default();
    Ok(Entry { identity, origin_len, provenance })
}

/// Serializes entries in the given order. Text has one identity per line.
pub fn export(entries: &[Entry], format: Format) -> Result<Vec<u8>, Error> {
    match format {
        Format::Text => {
            let mut s = String::new();
            for e in entries {
                s.push_str(&format_identity(&e.identity));
                s.push('\n');
            }
            Ok(s.into_bytes())
        }
        Format::Json => {
            let recs: Vec<Record> = entries.iter().map(record).collect();
            serde_json::to_vec_pretty(&recs).map_err(|e| Error::Format(e.to_string()))
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.write_record(["lhs", "sign", "rhs", "length", "grouped", "origin_length", "provenance"])
                .map_err(|e| Error::Format(e.to_string()))?;
            for e in entries {
                let r = record(e);
                w.write_record([
                    r.lhs,
                    r.sign.to_string(),
                    r.rhs,
                    r.length.to_string(),
                    r.grouped.to_string(),
                    e.origin_len.to_string(),
                    r.provenance.unwrap_or_default(),
                ])
                .map_err(|e| Error::Format(e.to_string()))?;
            }
            w.into_inner().map_err(|e| Error::Format(e.to_string()))
        }
    }
}

/// Reads entries back. Text line numbers are reported in parse errors.
pub fn import(data: &str, format: Format) -> Result<Vec<Entry>, Error> {
    match format {
        Format::Text => {
            let mut out = Vec::new();
            for (i, line) in data.lines().enumerate() {
                let body = line.split('#').next().unwrap_or("").trim();
                if body.is_empty() {
                    continue;
                }
                let id = parse_identity_line(line).map_err(|e| e.at_line(i + 1))?;
                out.push(Entry::plain(id));
            }
            Ok(out)
        }
        Format::Json => {
            let recs: Vec<Record> = serde_json::from_str(data).map_err(|e| Error::Format(e.to_string()))?;
            recs.iter().map(from_record).collect()
        }
        Format::Csv => {
            let mut rd = csv::Reader::from_reader(data.as_bytes());
            let mut out = Vec::new();
            for r in rd.deserialize::<Record>() {
                let r = r.map_err(|e| Error::Format(e.to_string()))?;
                out.push(from_record(&r)?);
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::token::{Kind, H, S, T, X, Z};

    #[test]
    fn parse_examples() {
        let id = parse_identity_line("Z = H X H").unwrap();
        assert_eq!(id, Identity::new(Z, SignedWord::plus(vec![H, X, H])));
        let id = parse_identity_line("Y3 = - H X").unwrap();
        assert_eq!(id, Identity::new(Token::sub(Kind::Ry, 3), SignedWord::new(Sign::Minus, vec![H, X])));
        match parse_identity_line("Q = H") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 1),
            other => panic!("{other:?}"),
        }
        match parse_identity_line("Z = H Q2") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 7),
            other => panic!("{other:?}"),
        }
        assert!(parse_identity_line("Z H").is_err());
        assert!(parse_identity_line("Z = ").is_err());
        assert!(parse_identity_line("Z = -").is_err());
        assert!(parse_identity_line("A = X B").is_err());
        assert_eq!(parse_identity_line("  Z=H   X  H # note").unwrap(), Identity::new(Z, SignedWord::plus(vec![H, X, H])));
    }

    #[test]
    fn format_examples() {
        let aa = parse_identity_line("I = A A").unwrap();
        assert!(aa.grouped);
        assert_eq!(format_identity(&aa), "I = A A");
        let id = Identity::new(Token::sub(Kind::Rz, 1), SignedWord::new(Sign::Minus, vec![Token::sub(Kind::Ph, 3), S]));
        assert_eq!(format_identity(&id), "Z1 = - P3 S");
        assert_eq!(format_identity(&Identity::new(S, SignedWord::plus(vec![T, T]))), "S = T T");
    }

    #[test]
    fn export_roundtrip() {
        let ids = ["I = A A", "Z1 = - P3 S", "A2 = - B C"].map(|l| Entry::plain(parse_identity_line(l).unwrap()));
        for f in [Format::Text, Format::Json, Format::Csv] {
            let bytes = export(&ids, f).unwrap();
            let back = import(std::str::from_utf8(&bytes).unwrap(), f).unwrap();
            assert_eq!(back.iter().map(|e| &e.identity).collect::<Vec<_>>(), ids.iter().map(|e| &e.identity).collect::<Vec<_>>());
        }
        assert_eq!(export(&[], Format::Json).unwrap(), b"[]");
        assert!("yaml".parse::<Format>().is_err());
    }
}
