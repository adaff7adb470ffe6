//! Text payload for [`CodedMessage`].
//!
//! ```text
//! QBLK1;scheme=lucas;nrule=half;dim=4;alpha=default
//! 54,9,10,16
//! 140,29,28,28
//! -462,2,19,16
//! -616,6,28,0
//! ```
//!
//! Every line ends with `\n`. Integers are plain signed decimal with no
//! padding, no `+` and no `-0`; anything else is rejected so that parsing
//! and serializing are exact inverses.

use std::fmt::Write as _;

use crate::alphabet::AlphabetRegistry;
use crate::codec::{CodedMessage, FRow, Scheme};
use crate::error::{Error, Result};
use crate::layout::NRule;

pub const MAGIC: &str = "QBLK1";

pub fn serialize(coded: &CodedMessage) -> String {
    let mut out = String::with_capacity(64 + coded.rows.len() * 16);
    let _ = writeln!(
        out,
        "{MAGIC};scheme={};nrule={};dim={};alpha={}",
        coded.scheme, coded.n_rule, coded.dim, coded.alphabet_id
    );
    for row in &coded.rows {
        let _ = writeln!(out, "{row}");
    }
    out
}

fn malformed(line: usize, msg: impl Into<String>) -> Error {
    Error::MalformedPayload {
        line,
        msg: msg.into(),
    }
}

fn parse_int(s: &str, line: usize) -> Result<i64> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    let canonical = !digits.is_empty()
        && digits.bytes().all(|b| b.is_ascii_digit())
        && (digits == "0" || !digits.starts_with('0'))
        && s != "-0";
    if !canonical {
        return Err(malformed(line, format!("bad integer {s:?}")));
    }
    s.parse()
        .map_err(|_| malformed(line, format!("integer {s:?} out of range")))
}

fn field<'a>(part: Option<&'a str>, key: &str, line: usize) -> Result<&'a str> {
    part.and_then(|p| p.strip_prefix(key)?.strip_prefix('='))
        .ok_or_else(|| malformed(line, format!("expected {key}=...")))
}

/// Parses a payload. Only alphabets present in `registry` are accepted.
pub fn parse(text: &str, registry: &AlphabetRegistry) -> Result<CodedMessage> {
    let body = text
        .strip_suffix('\n')
        .ok_or_else(|| malformed(text.lines().count().max(1), "missing final newline"))?;
    let mut lines = body.split('\n');
    let header = lines.next().unwrap_or_default();

    let mut parts = header.split(';');
    if parts.next() != Some(MAGIC) {
        return Err(malformed(1, format!("expected magic {MAGIC}")));
    }
    let scheme = match field(parts.next(), "scheme", 1)? {
        "lucas" => Scheme::LucasBlocking,
        "mine" => Scheme::Minesweeper,
        other => return Err(malformed(1, format!("unknown scheme {other:?}"))),
    };
    let n_rule = match field(parts.next(), "nrule", 1)? {
        "half" => NRule::Half,
        "tas" => NRule::Tas,
        other => return Err(malformed(1, format!("unknown nrule {other:?}"))),
    };
    let dim = parse_int(field(parts.next(), "dim", 1)?, 1)?;
    let alphabet_id = field(parts.next(), "alpha", 1)?;
    if parts.next().is_some() {
        return Err(malformed(1, "trailing header fields"));
    }
    if alphabet_id.is_empty() || alphabet_id.chars().any(char::is_whitespace) {
        return Err(malformed(1, format!("bad alphabet id {alphabet_id:?}")));
    }
    registry.get(alphabet_id)?;
    let dim = usize::try_from(dim)
        .map_err(|_| Error::HeaderMismatch(format!("dim={dim} is negative")))?;

    let mut rows = Vec::new();
    for (k, line) in lines.enumerate() {
        let lineno = k + 2;
        let mut fields = line.split(',');
        let mut next = || -> Result<i64> {
            let f = fields
                .next()
                .ok_or_else(|| malformed(lineno, "expected 4 fields"))?;
            parse_int(f, lineno)
        };
        let row = FRow::new(next()?, next()?, next()?, next()?);
        if fields.next().is_some() {
            return Err(malformed(lineno, "expected 4 fields"));
        }
        rows.push(row);
    }

    let coded = CodedMessage {
        scheme,
        n_rule,
        dim,
        alphabet_id: alphabet_id.to_string(),
        rows,
    };
    coded.check_header()?;
    Ok(coded)
}
