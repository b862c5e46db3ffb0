use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use morita_core::structures::{FiniteGroup, StructureError};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::checks::run_check;
use crate::report::{CheckRecord, Report, Timestamps};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Lemma1,
    Split,
    SelfInduced,
    MoritaMatrix,
    MoritaBrandt,
    Homology,
    Diagonal,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Lemma1,
        Check::Split,
        Check::SelfInduced,
        Check::MoritaMatrix,
        Check::MoritaBrandt,
        Check::Homology,
        Check::Diagonal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Check::Lemma1 => "lemma1",
            Check::Split => "split",
            Check::SelfInduced => "self_induced",
            Check::MoritaMatrix => "morita_matrix",
            Check::MoritaBrandt => "morita_brandt",
            Check::Homology => "homology",
            Check::Diagonal => "diagonal",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Check {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| {
            let names: Vec<&str> = Check::ALL.iter().map(|c| c.as_str()).collect();
            CliError::Config(format!("unknown check {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

/// One `(|I|, |J|, G)` point of the campaign grid.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Instance {
    pub i: usize,
    pub j: usize,
    pub group: String,
    #[serde(skip)]
    pub group_data: Option<FiniteGroup>,
}

/// Equality ignores the cached table, which is not serialized.
impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        (self.i, self.j, &self.group) == (other.i, other.j, &other.group)
    }
}

impl Eq for Instance {}

impl Instance {
    pub fn group(&self) -> &FiniteGroup {
        self.group_data.as_ref().expect("instance group resolved")
    }

    pub fn label(&self) -> String {
        format!("i={} j={} G={}", self.i, self.j, self.group)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Campaign {
    pub instances: Vec<Instance>,
    pub checks: Vec<Check>,
    pub n_max: usize,
    pub size_limit: u64,
}

impl Campaign {
    /// Cartesian product `i × j × groups`, in that nesting order.
    pub fn new(
        i_sizes: &[usize],
        j_sizes: &[usize],
        groups: &[FiniteGroup],
        checks: Vec<Check>,
        n_max: usize,
        size_limit: u64,
    ) -> Result<Campaign, CliError> {
        if checks.is_empty() {
            return Err(CliError::Config("no checks requested".into()));
        }
        if i_sizes.is_empty() || j_sizes.is_empty() || groups.is_empty() {
            return Err(CliError::Config("empty instance grid".into()));
        }
        if i_sizes.iter().chain(j_sizes).any(|&n| n == 0) {
            return Err(CliError::Config(StructureError::EmptyIndexSet.to_string()));
        }
        let mut checks = checks;
        let mut seen = std::collections::HashSet::new();
        checks.retain(|c| seen.insert(*c));
        let mut instances = Vec::new();
        for &i in i_sizes {
            for &j in j_sizes {
                for g in groups {
                    instances.push(Instance {
                        i,
                        j,
                        group: g.name().to_string(),
                        group_data: Some(g.clone()),
                    });
                }
            }
        }
        Ok(Campaign {
            instances,
            checks,
            n_max,
            size_limit,
        })
    }

    /// Every distinct group with its Cayley table, for the input digest.
    pub fn group_tables(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .instances
            .iter()
            .map(|inst| (inst.group.clone(), inst.group().to_cayley_text()))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Runs every check on every instance with at most `jobs` worker threads.
/// Results are ordered by instance, then by check, regardless of scheduling.
pub fn run_campaign(campaign: &Campaign, jobs: usize) -> Result<Report, CliError> {
    let started = Timestamps::now_ms();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let tasks: Vec<(&Instance, Check)> = campaign
        .instances
        .iter()
        .flat_map(|inst| campaign.checks.iter().map(move |&c| (inst, c)))
        .collect();
    let outcomes: Vec<(CheckRecord, u64)> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(inst, check)| {
                let t = Instant::now();
                let rec = run_check(check, inst, campaign.n_max, campaign.size_limit as u128);
                (rec, t.elapsed().as_millis() as u64)
            })
            .collect()
    });
    let (results, elapsed): (Vec<CheckRecord>, Vec<u64>) = outcomes.into_iter().unzip();
    let timestamps = Timestamps {
        started_unix_ms: started,
        finished_unix_ms: Timestamps::now_ms(),
        elapsed_ms: elapsed,
    };
    Ok(Report::assemble(campaign, results, timestamps))
}
