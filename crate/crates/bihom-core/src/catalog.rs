//! Built-in machine-readable catalog: the twenty two-dimensional
//! diagonal families plus three worked three-dimensional examples, with
//! a batch verification runner that oracle-confirms every failure.

use serde::{Deserialize, Serialize};

use crate::algebra::BiHomAlgebra;
use crate::document::{load_algebra, AlgebraDocument};
use crate::error::{Error, Result};
use crate::numeric::confirm_failures;
use crate::report::Report;
use crate::rng::Rng;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub source: String,
    pub editorial_notes: Vec<String>,
    pub document: AlgebraDocument,
}

macro_rules! entry_files {
    ($($name:literal),* $(,)?) => {
        [$(include_str!(concat!("../data/catalog/", $name, ".json"))),*]
    };
}

const ENTRY_JSON: [&str; 23] = entry_files![
    "alg1", "alg2", "alg3", "alg4", "alg5", "alg6", "alg7", "alg8", "alg9", "alg10", "alg11",
    "alg12", "alg13", "alg14", "alg15", "alg16", "alg17", "alg18", "alg19", "alg20", "ex2_10",
    "ex2_11", "ex2_12",
];

/// All 23 entries, in id order.
pub fn catalog_entries() -> Vec<CatalogEntry> {
    let mut entries: Vec<CatalogEntry> = ENTRY_JSON
        .iter()
        .map(|text| serde_json::from_str(text).expect("embedded catalog entry parses"))
        .collect();
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    entries
}

pub fn catalog_entry(id: &str) -> Result<CatalogEntry> {
    catalog_entries()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

pub fn catalog_algebra(id: &str) -> Result<BiHomAlgebra> {
    load_algebra(&catalog_entry(id)?.document)
}

fn entry_seed(global: u64, id: &str) -> u64 {
    // stable per-entry stream, independent of scheduling
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^ global
}

fn verify_entry(entry: &CatalogEntry, seed: u64) -> Result<(String, Report)> {
    let algebra = load_algebra(&entry.document)?;
    let mut report = crate::axioms::verify_bihom_poisson(&algebra)?;
    let mut rng = Rng::new(entry_seed(seed, &entry.id));
    confirm_failures(&algebra, &mut report, &mut rng, 3)?;
    Ok((entry.id.clone(), report))
}

/// Verify one entry or all of them, with every symbolic FAIL re-checked
/// by the numeric oracle at 3 random pole-free points respecting the
/// nonzero assumptions. Results are ordered by id regardless of the
/// worker count.
pub fn catalog_verify(selector: &str, seed: u64, jobs: usize) -> Result<Vec<(String, Report)>> {
    let entries: Vec<CatalogEntry> = if selector == "all" {
        catalog_entries()
    } else {
        vec![catalog_entry(selector)?]
    };
    let jobs = jobs.max(1).min(entries.len().max(1));
    if jobs <= 1 || entries.len() <= 1 {
        return entries.iter().map(|e| verify_entry(e, seed)).collect();
    }
    let chunk = entries.len().div_ceil(jobs);
    let mut results: Vec<Vec<Result<(String, Report)>>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for part in entries.chunks(chunk) {
            handles.push(scope.spawn(move || {
                part.iter()
                    .map(|e| verify_entry(e, seed))
                    .collect::<Vec<_>>()
            }));
        }
        for h in handles {
            results.push(h.join().expect("catalog worker panicked"));
        }
    });
    results.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::dump_algebra;
    use crate::report::Verdict;

    #[test]
    fn exactly_23_entries_with_unique_ids() {
        let entries = catalog_entries();
        assert_eq!(entries.len(), 23);
        let mut ids: Vec<&str> = entries.iter().map(|e| e.id.as_str()).collect();
        ids.dedup();
        assert_eq!(ids.len(), 23);
        assert!(matches!(catalog_entry("alg99"), Err(Error::UnknownId(_))));
    }

    #[test]
    fn every_entry_loads_and_round_trips() {
        for entry in catalog_entries() {
            let algebra = load_algebra(&entry.document)
                .unwrap_or_else(|e| panic!("{} fails to load: {e}", entry.id));
            let dumped = dump_algebra(&algebra);
            assert_eq!(dumped, entry.document, "round trip changed {}", entry.id);
        }
    }

    #[test]
    fn alg1_matches_stated_structure() {
        let a = catalog_algebra("alg1").unwrap();
        let mu = a.mu().unwrap();
        assert_eq!(mu.constants[0][0][0].to_string(), "c11_1");
        assert_eq!(mu.constants[1][1][1].to_string(), "c22_2");
        let bk = a.bracket().unwrap();
        assert_eq!(bk.constants[0][0][0].to_string(), "d11_1");
        assert_eq!(bk.constants[1][0][0].to_string(), "d21_1");
        assert!(a.alpha.entries[0][0].is_zero());
        assert!(a.alpha.entries[1][1].is_one());
        assert_eq!(a.alpha, a.beta);
    }

    #[test]
    fn alg20_matches_stated_structure() {
        let a = catalog_algebra("alg20").unwrap();
        let mu = a.mu().unwrap();
        assert_eq!(mu.constants[0][0][0].to_string(), "c11_1");
        let bk = a.bracket().unwrap();
        assert_eq!(bk.constants[1][0][1].to_string(), "d21_2");
        assert!(bk.constants[1][1][1].is_one());
        assert!(a.alpha.is_identity());
        assert!(a.beta.entries[0][0].is_one());
        assert!(a.beta.entries[1][1].is_zero());
    }

    #[test]
    fn division_families_carry_assumptions() {
        let e6 = catalog_entry("alg6").unwrap();
        assert_eq!(e6.document.assumptions_nonzero, vec!["b11"]);
        let e13 = catalog_entry("alg13").unwrap();
        assert_eq!(e13.document.assumptions_nonzero, vec!["a11"]);
        let zero_completed = catalog_entry("ex2_11").unwrap();
        assert!(zero_completed
            .editorial_notes
            .iter()
            .any(|n| n.contains("zero-completed")));
    }

    /// The stated alpha of the second worked example is incompatible
    /// with multiplicativity of its product: alpha(mu(e1,e2)) = l1 e2
    /// while mu(alpha(e1), alpha(e2)) = mu(e2,e2) = 0.
    #[test]
    fn ex2_11_multiplicativity_finding() {
        let a = catalog_algebra("ex2_11").unwrap();
        let report = crate::axioms::check_multiplicativity(&a).unwrap();
        let check = report.check("multiplicativity").unwrap();
        assert_eq!(check.verdict, Verdict::Fail);
        assert_eq!(check.witness.as_ref().unwrap(), &vec![1, 2]);
        assert_eq!(check.detail.as_deref(), Some("alpha with mu"));
        let residual = check.residual.as_ref().unwrap();
        assert!(residual[0].is_zero());
        assert_eq!(residual[1].to_string(), "l1");
        assert!(residual[2].is_zero());
    }

    #[test]
    fn report_json_round_trips() {
        let (_, report) = &catalog_verify("ex2_11", 7, 1).unwrap()[0];
        let text = report.to_json().to_string();
        let reparsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(reparsed, report.to_json());
        assert_eq!(reparsed["overall"], "FAIL");
    }

    #[test]
    fn alg1_and_alg4_verify() {
        for id in ["alg1", "alg4"] {
            let reports = catalog_verify(id, 7, 1).unwrap();
            assert_eq!(reports.len(), 1);
            let (rid, report) = &reports[0];
            assert_eq!(rid, id);
            assert!(report.passed(), "{id} failed:\n{}", report.to_text());
            assert_eq!(report.checks.len(), 7);
        }
    }

    #[test]
    fn verify_all_failures_are_confirmed() {
        let reports = catalog_verify("all", 7, 2).unwrap();
        assert_eq!(reports.len(), 23);
        // id-ordered regardless of worker count
        let ids: Vec<&String> = reports.iter().map(|(id, _)| id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
        for (id, report) in &reports {
            for check in &report.checks {
                if check.verdict == Verdict::Fail {
                    let oracle = check.oracle.as_ref().unwrap_or_else(|| {
                        panic!("{id}: FAIL on {} lacks oracle data", check.identity)
                    });
                    assert!(
                        oracle.agreed(),
                        "{id}: symbolic FAIL on {} not reproduced numerically",
                        check.identity
                    );
                }
            }
        }
    }
}
