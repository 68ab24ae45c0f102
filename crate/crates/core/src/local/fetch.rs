//! Optional HTTP client for local-field tables.
//!
//! The endpoint is queried as `GET {endpoint}?p=<p>&max_degree=<n>` and must
//! answer with a body in the table format. A `X-Source-Version` header (or a
//! `# source-version: <v>` comment line) names the upstream revision; the
//! file is cached as `p<p>_n<n>_<version>.tbl` and never rewritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use super::field::parse_local_fields;
use super::LocalError;

#[derive(Clone, Debug)]
pub struct FetchConfig {
    pub endpoint: String,
    pub cache_dir: PathBuf,
    pub timeout: Duration,
}

impl FetchConfig {
    pub fn new(endpoint: impl Into<String>, cache_dir: impl Into<PathBuf>) -> Self {
        FetchConfig {
            endpoint: endpoint.into(),
            cache_dir: cache_dir.into(),
            timeout: Duration::from_secs(30),
        }
    }
}

fn cache_prefix(p: u64, max_degree: u32) -> String {
    format!("p{}_n{}_", p, max_degree)
}

fn sanitize(version: &str) -> String {
    let s: String = version
        .trim()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' })
        .collect();
    if s.is_empty() {
        "unversioned".into()
    } else {
        s
    }
}

pub fn cached_table(cache_dir: &Path, p: u64, max_degree: u32) -> Option<PathBuf> {
    let prefix = cache_prefix(p, max_degree);
    let mut hits: Vec<PathBuf> = fs::read_dir(cache_dir)
        .ok()?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|path| {
            path.file_name()
                .and_then(|n| n.to_str())
                .map_or(false, |n| n.starts_with(&prefix) && n.ends_with(".tbl"))
        })
        .collect();
    hits.sort();
    hits.pop()
}

fn io_err(path: &Path, e: std::io::Error) -> LocalError {
    LocalError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

pub fn fetch_local_fields(
    cfg: &FetchConfig,
    p: u64,
    max_degree: u32,
) -> Result<PathBuf, LocalError> {
    if let Some(hit) = cached_table(&cfg.cache_dir, p, max_degree) {
        return Ok(hit);
    }
    let response = ureq::AgentBuilder::new()
        .timeout(cfg.timeout)
        .build()
        .get(&cfg.endpoint)
        .query("p", &p.to_string())
        .query("max_degree", &max_degree.to_string())
        .call()
        .map_err(|e| LocalError::NetworkError(e.to_string()))?;
    let header_version = response.header("X-Source-Version").map(str::to_string);
    let body = response
        .into_string()
        .map_err(|e| LocalError::NetworkError(e.to_string()))?;

    let table = parse_local_fields(&body)
        .map_err(|e| LocalError::SchemaMismatch(e.to_string()))?;
    if table.is_empty() {
        return Err(LocalError::SchemaMismatch("no records".into()));
    }
    if let Some(r) = table.records.iter().find(|r| r.p != p || r.n > max_degree) {
        return Err(LocalError::SchemaMismatch(format!(
            "record for p = {}, n = {} outside the request",
            r.p, r.n
        )));
    }
    let version = header_version.or_else(|| {
        body.lines()
            .filter_map(|l| l.trim().strip_prefix('#'))
            .filter_map(|l| l.trim().strip_prefix("source-version:"))
            .map(str::to_string)
            .next()
    });
    let version = sanitize(version.as_deref().unwrap_or(""));

    fs::create_dir_all(&cfg.cache_dir).map_err(|e| io_err(&cfg.cache_dir, e))?;
    let target = cfg
        .cache_dir
        .join(format!("{}{}.tbl", cache_prefix(p, max_degree), version));
    let mut tmp = tempfile::NamedTempFile::new_in(&cfg.cache_dir)
        .map_err(|e| io_err(&cfg.cache_dir, e))?;
    tmp.write_all(body.as_bytes()).map_err(|e| io_err(&target, e))?;
    tmp.persist(&target).map_err(|e| io_err(&target, e.error))?;
    Ok(target)
}
