use serde::Serialize;

use super::{hochschild_table, HomologyError};
use crate::bimodules::{induced_completion, is_induced, BimoduleRef};
use crate::structures::AlgebraRef;

#[derive(Clone, Debug, Serialize)]
pub struct VanishingEntry {
    pub module: String,
    pub module_dim: usize,
    /// Dimension actually used, after any induced completion.
    pub tested_dim: usize,
    pub routed_through_completion: bool,
    pub homology_betti: Vec<usize>,
    pub cohomology_betti: Vec<usize>,
    pub h0_dim: Option<usize>,
    pub passed: bool,
    pub notes: Vec<String>,
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingReport {
    pub algebra: String,
    pub n_max: usize,
    pub entries: Vec<VanishingEntry>,
}

impl VanishingReport {
    /// Every non-skipped entry vanishes in degrees `1..=n_max`.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed || e.skipped.is_some())
    }

    pub fn any_skipped(&self) -> bool {
        self.entries.iter().any(|e| e.skipped.is_some())
    }
}

const H0_NOTE: &str = "H_0 is finite-dimensional, so the quotient seminorm is a norm";

/// Checks `H_n(A,E) = 0` and `H^n(A,E*) = 0` for `1 ≤ n ≤ n_max` on each
/// module. Modules that are not two-sided induced are replaced by
/// `A ⊗_A E ⊗_A A` first.
pub fn vanishing_suite(
    a: &AlgebraRef,
    modules: &[BimoduleRef],
    n_max: usize,
    size_limit: u128,
) -> Result<VanishingReport, HomologyError> {
    let mut entries = Vec::with_capacity(modules.len());
    for e in modules {
        let mut notes = Vec::new();
        let induced = is_induced(e)?.two_sided;
        let tested = if induced {
            e.clone()
        } else {
            notes.push(format!(
                "{} is not two-sided induced; tested A⊗_A E⊗_A A instead",
                e.name()
            ));
            induced_completion(a, e)?
        };
        let mut entry = VanishingEntry {
            module: e.name().to_string(),
            module_dim: e.dim(),
            tested_dim: tested.dim(),
            routed_through_completion: !induced,
            homology_betti: Vec::new(),
            cohomology_betti: Vec::new(),
            h0_dim: None,
            passed: false,
            notes,
            skipped: None,
        };
        match hochschild_table(a, &tested, n_max, size_limit) {
            Ok(t) => {
                entry.homology_betti = t.homology.iter().map(|h| h.betti).collect();
                entry.cohomology_betti = t.cohomology.iter().map(|h| h.betti).collect();
                entry.h0_dim = Some(entry.homology_betti[0]);
                entry.passed = entry.homology_betti[1..].iter().all(|&b| b == 0)
                    && entry.cohomology_betti[1..].iter().all(|&b| b == 0);
                entry.notes.push(H0_NOTE.into());
            }
            Err(err @ HomologyError::SizeLimit { .. }) => entry.skipped = Some(err.to_string()),
            Err(err) => return Err(err),
        }
        entries.push(entry);
    }
    Ok(VanishingReport {
        algebra: a.name().to_string(),
        n_max,
        entries,
    })
}
