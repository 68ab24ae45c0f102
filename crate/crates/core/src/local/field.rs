use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use super::LocalError;
use crate::algebra::numtheory::is_prime_u64;

/// Invariants of a finite extension of Q_p: degree n = e f, discriminant
/// exponent c, and the order of its automorphism group over Q_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LocalFieldRec {
    pub p: u64,
    pub n: u32,
    pub e: u32,
    pub f: u32,
    pub c: u32,
    pub aut: u32,
}

impl LocalFieldRec {
    pub fn is_tame(&self) -> bool {
        self.e as u64 % self.p != 0
    }

    pub fn check(&self) -> Result<(), String> {
        if !is_prime_u64(self.p) {
            return Err(format!("{} is not prime", self.p));
        }
        if self.e == 0 || self.f == 0 || self.n == 0 {
            return Err("degrees must be positive".into());
        }
        if self.n != self.e * self.f {
            return Err(format!("n = {} but e f = {}", self.n, self.e * self.f));
        }
        if self.aut == 0 || self.n % self.aut != 0 {
            return Err(format!("aut = {} does not divide n = {}", self.aut, self.n));
        }
        if self.is_tame() && self.c != self.f * (self.e - 1) {
            return Err(format!(
                "tame field with c = {} but f (e - 1) = {}",
                self.c,
                self.f * (self.e - 1)
            ));
        }
        if !self.is_tame() && self.c < self.f * self.e {
            return Err(format!("wild field with c = {} below f e", self.c));
        }
        Ok(())
    }
}

/// Validated records, kept in file order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LocalFieldTable {
    pub records: Vec<LocalFieldRec>,
}

impl LocalFieldTable {
    pub fn new(records: Vec<LocalFieldRec>) -> Result<Self, LocalError> {
        for (index, r) in records.iter().enumerate() {
            r.check()
                .map_err(|reason| LocalError::InvariantViolation { index, reason })?;
        }
        Ok(LocalFieldTable { records })
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.records.iter().map(|r| r.p).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    pub fn for_prime(&self, p: u64) -> Vec<LocalFieldRec> {
        self.records.iter().filter(|r| r.p == p).copied().collect()
    }

    pub fn grouped(&self) -> BTreeMap<(u64, u32), Vec<LocalFieldRec>> {
        let mut out: BTreeMap<(u64, u32), Vec<LocalFieldRec>> = BTreeMap::new();
        for r in &self.records {
            out.entry((r.p, r.n)).or_default().push(*r);
        }
        out
    }
}

pub fn parse_local_fields(text: &str) -> Result<LocalFieldTable, LocalError> {
    let mut records = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let nums: Result<Vec<u64>, _> = content.split_whitespace().map(str::parse).collect();
        let nums = nums.map_err(|_| LocalError::ParseError {
            line,
            message: format!("non-integer field in {:?}", content),
        })?;
        if nums.len() != 6 {
            return Err(LocalError::ParseError {
                line,
                message: format!("expected 6 integers, found {}", nums.len()),
            });
        }
        let small = |x: u64| {
            u32::try_from(x).map_err(|_| LocalError::ParseError {
                line,
                message: format!("value {} out of range", x),
            })
        };
        records.push(LocalFieldRec {
            p: nums[0],
            n: small(nums[1])?,
            e: small(nums[2])?,
            f: small(nums[3])?,
            c: small(nums[4])?,
            aut: small(nums[5])?,
        });
    }
    LocalFieldTable::new(records)
}

pub fn load_local_fields(path: &Path) -> Result<LocalFieldTable, LocalError> {
    let text = std::fs::read_to_string(path).map_err(|e| LocalError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_local_fields(&text)
}

pub fn format_local_fields(records: &[LocalFieldRec]) -> String {
    let mut s = String::from("# p n e f c aut\n");
    for r in records {
        s.push_str(&format!("{} {} {} {} {} {}\n", r.p, r.n, r.e, r.f, r.c, r.aut));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_violation_reports_index() {
        let text = "# p n e f c aut\n7 1 1 1 0 1\n7 4 2 1 1 2\n";
        assert_eq!(
            parse_local_fields(text),
            Err(LocalError::InvariantViolation {
                index: 1,
                reason: "n = 4 but e f = 2".into()
            })
        );
    }

    #[test]
    fn empty_file() {
        assert!(parse_local_fields("").unwrap().is_empty());
        assert!(parse_local_fields("# p n e f c aut\n").unwrap().is_empty());
    }

    #[test]
    fn bad_token() {
        assert!(matches!(
            parse_local_fields("7 1 1 x 0 1"),
            Err(LocalError::ParseError { line: 1, .. })
        ));
    }
}
