//! Profile ingestion.
//!
//! One tuple per line: positive integers separated by commas and/or
//! whitespace, an optional trailing `m=<int>`, an optional leading
//! `label:`, and `#` comments. Blank lines are skipped.

use parkgame_core::{Error as CoreError, PreferenceProfile};
use thiserror::Error;

/// Syntax error; columns count characters from 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// A syntactically valid line, not yet checked against `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawProfile {
    pub line: usize,
    pub label: Option<String>,
    pub prefs: Vec<u32>,
    pub spots: Option<usize>,
}

impl RawProfile {
    /// Spots used when the line has no `m=` suffix: `default_m`, else `n`.
    pub fn resolved_spots(&self, default_m: Option<usize>) -> usize {
        self.spots.or(default_m).unwrap_or(self.prefs.len())
    }

    pub fn validate(&self, default_m: Option<usize>) -> Result<PreferenceProfile, CoreError> {
        PreferenceProfile::new(self.prefs.clone(), self.resolved_spots(default_m))
    }
}

/// Error from [`parse_profile`]: syntax (usage) or domain.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Domain(#[from] CoreError),
}

/// Parses a single tuple such as `"1,4,3,3,1,2,7"` or `"1 1 2 m=3"`.
pub fn parse_profile(text: &str) -> Result<PreferenceProfile, InputError> {
    let mut raws = parse_document(text)?;
    match raws.len() {
        1 => Ok(raws.remove(0).validate(None)?),
        0 => Err(ParseError {
            line: 1,
            column: 1,
            message: "no preference tuple found".into(),
        }
        .into()),
        _ => Err(ParseError {
            line: raws[1].line,
            column: 1,
            message: "expected a single tuple".into(),
        }
        .into()),
    }
}

/// Parses every non-blank, non-comment line.
pub fn parse_document(text: &str) -> Result<Vec<RawProfile>, ParseError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(raw) = parse_line(line, i + 1)? {
            out.push(raw);
        }
    }
    Ok(out)
}

fn parse_line(line: &str, line_no: usize) -> Result<Option<RawProfile>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let end = chars.iter().position(|&c| c == '#').unwrap_or(chars.len());
    let body = &chars[..end];
    let err = |column: usize, message: String| ParseError {
        line: line_no,
        column,
        message,
    };

    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < body.len() && body[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == body.len() {
        return Ok(None);
    }

    let mut label = None;
    if let Some(colon) = body.iter().position(|&c| c == ':') {
        let text: String = body[pos..colon].iter().collect();
        let text = text.trim();
        if text.is_empty() {
            return Err(err(colon + 1, "empty label before ':'".into()));
        }
        label = Some(text.to_string());
        pos = colon + 1;
    }

    let mut prefs = Vec::new();
    let mut spots = None;
    let mut expect_entry = true;
    loop {
        skip_ws(&mut pos);
        if pos == body.len() {
            break;
        }
        let c = body[pos];
        if c == ',' {
            if expect_entry {
                return Err(err(pos + 1, "empty entry".into()));
            }
            expect_entry = true;
            pos += 1;
            continue;
        }
        if spots.is_some() {
            return Err(err(pos + 1, "nothing may follow the m= suffix".into()));
        }
        let start = pos;
        while pos < body.len() && !body[pos].is_whitespace() && body[pos] != ',' {
            pos += 1;
        }
        let token: String = body[start..pos].iter().collect();
        if let Some(value) = token.strip_prefix("m=") {
            if prefs.is_empty() {
                return Err(err(start + 1, "m= must follow the preferences".into()));
            }
            if expect_entry {
                return Err(err(start + 1, "trailing ',' before m=".into()));
            }
            spots = Some(parse_number::<usize>(value).map_err(|m| err(start + 3, m))?);
        } else {
            prefs.push(parse_number::<u32>(&token).map_err(|m| err(start + 1, m))?);
        }
        expect_entry = false;
    }
    if prefs.is_empty() {
        return Err(err(pos + 1, "expected at least one preference".into()));
    }
    if expect_entry {
        return Err(err(pos + 1, "trailing ','".into()));
    }
    Ok(Some(RawProfile {
        line: line_no,
        label,
        prefs,
        spots,
    }))
}

fn parse_number<T: std::str::FromStr>(token: &str) -> Result<T, String> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("expected a nonnegative integer, found '{token}'"));
    }
    token
        .parse()
        .map_err(|_| format!("integer '{token}' is too large"))
}
