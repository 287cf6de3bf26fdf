//! Reader for the bundled table files.
//!
//! Format: `#` starts a comment; `@rows a b` gives the row offsets `j` over
//! which every entry is instantiated; `@count n` asserts the number of
//! entries. Each remaining line is one entry, either `form` or
//! `printed => corrected` when the printed entry is a misprint.

use crate::error::{Error, Result};
use crate::forms::LinearForm;

use super::TableEntry;

pub(crate) fn parse_table(name: &str, text: &str, rank: usize) -> Result<Vec<TableEntry>> {
    let bad = |line: &str, reason: &str| Error::Parse {
        input: format!("{name}: {line}"),
        reason: reason.to_string(),
    };
    let mut rows: Option<(usize, usize)> = None;
    let mut count: Option<usize> = None;
    let mut entries = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("@rows") {
            let nums: Vec<usize> = rest
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| bad(line, "bad row bound")))
                .collect::<Result<_>>()?;
            if nums.len() != 2 || nums[0] == 0 || nums[0] > nums[1] {
                return Err(bad(line, "expected `@rows first last`"));
            }
            rows = Some((nums[0], nums[1]));
            continue;
        }
        if let Some(rest) = line.strip_prefix("@count") {
            count = Some(rest.trim().parse().map_err(|_| bad(line, "bad count"))?);
            continue;
        }
        let (first, last) = rows.ok_or_else(|| bad(line, "entry before `@rows`"))?;
        let (printed_s, corrected_s) = match line.split_once("=>") {
            Some((p, c)) => (p.trim(), c.trim()),
            None => (line, line),
        };
        let printed = LinearForm::parse(printed_s, rank, Some(1))?;
        let form = LinearForm::parse(corrected_s, rank, Some(1))?;
        entries.push(TableEntry {
            form,
            printed,
            rows: first..=last,
        });
    }
    if let Some(c) = count {
        if c != entries.len() {
            return Err(Error::Parse {
                input: name.to_string(),
                reason: format!("expected {c} entries, found {}", entries.len()),
            });
        }
    }
    Ok(entries)
}
