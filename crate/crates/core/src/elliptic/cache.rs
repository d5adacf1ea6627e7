//! On-disk trace tables.
//!
//! ```text
//! # farey-lt trace-cache v1
//! # family=<A coeffs>;<B coeffs> p=<p> hash=<FNV-1a-64 of "A=..;B=..">
//! v,a_or_BAD        (p rows, v = 0..p-1)
//! ```

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use super::{CurveFamily, TraceEntry, TraceTable};
use crate::error::{Error, Result};

const MAGIC: &str = "# farey-lt trace-cache v1";

fn header(family: &CurveFamily, p: u64) -> String {
    format!(
        "# family={};{} p={} hash={}",
        family.a_poly(),
        family.b_poly(),
        p,
        family.id()
    )
}

impl TraceTable {
    /// Serializes the table in the trace-cache format.
    pub fn to_cache_string(&self, family: &CurveFamily) -> String {
        debug_assert_eq!(self.family_id, family.id());
        let mut out = String::with_capacity(12 * self.entries.len() + 64);
        out.push_str(MAGIC);
        out.push('\n');
        out.push_str(&header(family, self.p));
        out.push('\n');
        for (v, e) in self.entries.iter().enumerate() {
            let _ = match e {
                TraceEntry::Good(a) => writeln!(out, "{v},{a}"),
                TraceEntry::Bad => writeln!(out, "{v},BAD"),
            };
        }
        out
    }
}

/// Parses cache text, checking that it belongs to `family` at the prime `p`.
pub fn parse_trace_cache(text: &str, family: &CurveFamily, p: u64) -> Result<TraceTable> {
    let bad = |msg: String| Error::Parse(format!("trace cache: {msg}"));
    let mut lines = text.lines();
    if lines.next() != Some(MAGIC) {
        return Err(bad("missing version line".into()));
    }
    let expected = header(family, p);
    match lines.next() {
        Some(h) if h == expected => {}
        Some(h) => return Err(bad(format!("header {h:?} does not match {expected:?}"))),
        None => return Err(bad("missing header".into())),
    }
    let mut entries = Vec::with_capacity(p as usize);
    for (i, line) in lines.enumerate() {
        let (v, a) = line
            .split_once(',')
            .ok_or_else(|| bad(format!("malformed row {line:?}")))?;
        if v != i.to_string() {
            return Err(bad(format!("row {i} labelled {v:?}")));
        }
        let entry = if a == "BAD" {
            TraceEntry::Bad
        } else {
            let a: i32 = a.parse().map_err(|_| bad(format!("bad trace {a:?}")))?;
            if !super::within_hasse(a as i64, p) {
                return Err(Error::HasseViolation { p, trace: a as i64 });
            }
            TraceEntry::Good(a)
        };
        entries.push(entry);
    }
    if entries.len() as u64 != p {
        return Err(bad(format!("expected {p} rows, found {}", entries.len())));
    }
    Ok(TraceTable { p, family_id: family.id(), entries })
}

pub fn cache_file_name(family: &CurveFamily, p: u64) -> String {
    format!("trace-{:016x}-p{p}.csv", family.id())
}

/// Reads `dir/<cache_file_name>`; `Ok(None)` if it does not exist.
pub fn read_trace_cache(dir: &Path, family: &CurveFamily, p: u64) -> Result<Option<TraceTable>> {
    let path = dir.join(cache_file_name(family, p));
    match fs::read_to_string(&path) {
        Ok(text) => parse_trace_cache(&text, family, p).map(Some),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Writes the table to a temporary file in `dir` and renames it into place.
pub fn write_trace_cache(dir: &Path, family: &CurveFamily, table: &TraceTable) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(cache_file_name(family, table.p));
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        cache_file_name(family, table.p),
        std::process::id()
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(table.to_cache_string(family).as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, &path)?;
    Ok(path)
}
