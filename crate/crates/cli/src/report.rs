use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::campaign::{Campaign, Check, Instance};
use crate::{CliError, TOOL_VERSION};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceLabel {
    pub i: usize,
    pub j: usize,
    pub group: String,
}

impl From<&Instance> for InstanceLabel {
    fn from(inst: &Instance) -> Self {
        Self {
            i: inst.i,
            j: inst.j,
            group: inst.group.clone(),
        }
    }
}

/// One check on one instance. Maps are ordered so serialization is stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: Check,
    pub instance: InstanceLabel,
    pub status: Status,
    pub summary: String,
    #[serde(default)]
    pub dimensions: BTreeMap<String, usize>,
    #[serde(default)]
    pub ranks: BTreeMap<String, usize>,
    #[serde(default)]
    pub betti: BTreeMap<String, Vec<usize>>,
    /// Exact rationals rendered as strings.
    #[serde(default)]
    pub norms: BTreeMap<String, String>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl CheckRecord {
    pub fn new(check: Check, instance: &Instance) -> Self {
        Self {
            check,
            instance: instance.into(),
            status: Status::Fail,
            summary: String::new(),
            dimensions: BTreeMap::new(),
            ranks: BTreeMap::new(),
            betti: BTreeMap::new(),
            norms: BTreeMap::new(),
            notes: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timestamps {
    pub started_unix_ms: u64,
    pub finished_unix_ms: u64,
    /// Wall time of each result, in result order.
    pub elapsed_ms: Vec<u64>,
}

impl Timestamps {
    pub fn now_ms() -> u64 {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_millis() as u64)
            .unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub campaign: Campaign,
    pub results: Vec<CheckRecord>,
    pub input_digest: String,
    /// SHA-256 over every field above; `timestamps` is excluded.
    pub digest: String,
    pub timestamps: Timestamps,
}

#[derive(Serialize)]
struct Digested<'a> {
    schema_version: u32,
    tool_version: &'a str,
    campaign: &'a Campaign,
    results: &'a [CheckRecord],
    input_digest: &'a str,
}

fn sha256_hex(bytes: &[u8]) -> String {
    let out = Sha256::digest(bytes);
    out.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

pub fn input_digest(campaign: &Campaign) -> String {
    let payload = serde_json::json!({
        "campaign": campaign,
        "groups": campaign.group_tables(),
    });
    sha256_hex(payload.to_string().as_bytes())
}

impl Report {
    pub fn assemble(campaign: &Campaign, results: Vec<CheckRecord>, timestamps: Timestamps) -> Report {
        let mut r = Report {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            campaign: campaign.clone(),
            results,
            input_digest: input_digest(campaign),
            digest: String::new(),
            timestamps,
        };
        r.digest = r.compute_digest();
        r
    }

    pub fn compute_digest(&self) -> String {
        let d = Digested {
            schema_version: self.schema_version,
            tool_version: &self.tool_version,
            campaign: &self.campaign,
            results: &self.results,
            input_digest: &self.input_digest,
        };
        sha256_hex(serde_json::to_string(&d).expect("serializable").as_bytes())
    }

    pub fn count(&self, status: Status) -> usize {
        self.results.iter().filter(|r| r.status == status).count()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Parses a stored report and checks its schema version and digest.
    pub fn from_json(text: &str) -> Result<Report, CliError> {
        let r: Report = serde_json::from_str(text).map_err(|e| CliError::MalformedReport(e.to_string()))?;
        if r.schema_version != SCHEMA_VERSION {
            return Err(CliError::MalformedReport(format!(
                "schema version {} (expected {SCHEMA_VERSION})",
                r.schema_version
            )));
        }
        if r.timestamps.elapsed_ms.len() != r.results.len() {
            return Err(CliError::MalformedReport("timestamps do not match results".into()));
        }
        let expected = r.compute_digest();
        if r.digest != expected {
            return Err(CliError::MalformedReport(format!(
                "digest mismatch: stored {}, computed {expected}",
                r.digest
            )));
        }
        Ok(r)
    }

    /// Deterministic text: a header, one line per check, and a tally.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let checks: Vec<&str> = self.campaign.checks.iter().map(|c| c.as_str()).collect();
        let _ = writeln!(
            s,
            "morita {} (report schema {})",
            self.tool_version, self.schema_version
        );
        let _ = writeln!(
            s,
            "campaign: {} instances, checks {}, n_max {}, size limit {}",
            self.campaign.instances.len(),
            checks.join(","),
            self.campaign.n_max,
            self.campaign.size_limit
        );
        for r in &self.results {
            let _ = writeln!(
                s,
                "{} {:<13} i={} j={} G={:<4} {}",
                r.status.as_str(),
                r.check.as_str(),
                r.instance.i,
                r.instance.j,
                r.instance.group,
                r.summary
            );
        }
        let _ = writeln!(
            s,
            "total: {} pass, {} fail, {} skipped",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        );
        let _ = writeln!(s, "digest {}", self.digest);
        s
    }
}
