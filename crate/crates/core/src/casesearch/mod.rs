//! Computer refutations of individual cycle types.
//!
//! Every search is a list of independent tasks indexed `0..total`. Tasks run
//! in chunks on the rayon pool; after each chunk the records are appended to
//! a line-delimited log and a checkpoint is written, so an interrupted run
//! resumes to the same final report.

pub mod golay7;
pub mod p59;
pub mod subsets;
pub mod theorem;

use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use golay7::{golay_mod7_test, Golay7Report, SubsetA28};
pub use p59::{
    build_p59_candidate, doubling_orbits, equivalence_moves, p59_orbit_representatives, p59_sweep,
    P59Candidate, P59Family, P59_MODULUS,
};
pub use subsets::{fixed_point_sweep, SubsetPlan, SubsetSweepOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TaskStatus {
    /// Every case of the task has an explicit refuting vector.
    Refuted,
    /// The budget ran out on at least one case.
    Unresolved,
}

/// One line of a sweep log.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskRecord {
    pub id: u64,
    pub label: String,
    pub status: TaskStatus,
    /// Weight of the refuting vector (the lightest one when a task covers several cases).
    pub witness_weight: Option<usize>,
    pub iterations: u64,
    pub attempts: u32,
    /// Number of cases covered (1 unless subsets are swept in blocks).
    pub cases: u64,
    pub refuted_cases: u64,
    /// Cases in which a tracked weight occurs.
    #[serde(default)]
    pub flagged_cases: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub case: String,
    pub params: serde_json::Value,
    pub master_seed: u64,
    pub total: u64,
    pub completed: u64,
    pub refuted: u64,
    pub unresolved: u64,
    pub cases: u64,
    pub refuted_cases: u64,
    pub flagged_cases: u64,
    /// `(task id, witness weight)` for every refuted task.
    pub witnesses: Vec<(u64, usize)>,
    pub unresolved_ids: Vec<u64>,
    /// Number of tasks done in index order; the resume point.
    pub cursor: u64,
}

impl SweepReport {
    pub fn new(case: &str, params: serde_json::Value, master_seed: u64, total: u64) -> Self {
        SweepReport {
            case: case.to_string(),
            params,
            master_seed,
            total,
            completed: 0,
            refuted: 0,
            unresolved: 0,
            cases: 0,
            refuted_cases: 0,
            flagged_cases: 0,
            witnesses: Vec::new(),
            unresolved_ids: Vec::new(),
            cursor: 0,
        }
    }

    pub fn absorb(&mut self, r: &TaskRecord) {
        self.completed += 1;
        self.cases += r.cases;
        self.refuted_cases += r.refuted_cases;
        self.flagged_cases += r.flagged_cases;
        match r.status {
            TaskStatus::Refuted => {
                self.refuted += 1;
                if let Some(w) = r.witness_weight {
                    self.witnesses.push((r.id, w));
                }
            }
            TaskStatus::Unresolved => {
                self.unresolved += 1;
                self.unresolved_ids.push(r.id);
            }
        }
        self.cursor = self.cursor.max(r.id + 1);
    }

    pub fn is_complete(&self) -> bool {
        self.completed == self.total
    }

    pub fn flagged(&self) -> u64 {
        self.flagged_cases
    }

    pub fn all_refuted(&self) -> bool {
        self.is_complete() && self.unresolved == 0
    }

    /// Counts of refuting weights, ascending.
    pub fn weight_histogram(&self) -> Vec<(usize, u64)> {
        let mut h = std::collections::BTreeMap::new();
        for &(_, w) in &self.witnesses {
            *h.entry(w).or_insert(0u64) += 1;
        }
        h.into_iter().collect()
    }
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    report: SweepReport,
    log_bytes: u64,
}

/// Execution settings shared by all sweeps.
#[derive(Clone, Debug)]
pub struct SweepRunner {
    /// Tasks per checkpoint.
    pub chunk: u64,
    pub checkpoint: Option<PathBuf>,
    pub log: Option<PathBuf>,
    pub resume: bool,
    /// Stop (leaving a checkpoint) once this many tasks are done.
    pub stop_after: Option<u64>,
}

impl Default for SweepRunner {
    fn default() -> Self {
        SweepRunner {
            chunk: 100,
            checkpoint: None,
            log: None,
            resume: false,
            stop_after: None,
        }
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

impl SweepRunner {
    /// Runs `task(i)` for `i` in `0..total`.
    pub fn run<F>(
        &self,
        case: &str,
        params: serde_json::Value,
        master_seed: u64,
        total: u64,
        task: F,
    ) -> Result<SweepReport>
    where
        F: Fn(u64) -> TaskRecord + Sync,
    {
        let mut report = SweepReport::new(case, params, master_seed, total);
        let mut log_bytes = 0u64;
        if self.resume {
            if let Some(cp) = self.checkpoint.as_ref().filter(|p| p.exists()) {
                let saved: Checkpoint = serde_json::from_slice(&fs::read(cp)?)?;
                let same = saved.report.case == report.case
                    && saved.report.params == report.params
                    && saved.report.master_seed == master_seed
                    && saved.report.total == total;
                if !same {
                    return Err(Error::Checkpoint(format!(
                        "{} belongs to a different run",
                        cp.display()
                    )));
                }
                report = saved.report;
                log_bytes = saved.log_bytes;
            }
        }
        let mut log = match &self.log {
            Some(path) => {
                let file = if report.cursor > 0 {
                    let f = OpenOptions::new().write(true).open(path)?;
                    f.set_len(log_bytes)?;
                    let mut f = f;
                    std::io::Seek::seek(&mut f, std::io::SeekFrom::End(0))?;
                    f
                } else {
                    File::create(path)?
                };
                Some(file)
            }
            None => None,
        };
        let limit = self.stop_after.map_or(total, |s| s.min(total));
        let chunk = self.chunk.max(1);
        while report.cursor < limit {
            let end = (report.cursor + chunk).min(limit);
            let records: Vec<TaskRecord> = (report.cursor..end).into_par_iter().map(&task).collect();
            for r in &records {
                report.absorb(r);
                if let Some(f) = log.as_mut() {
                    let mut line = serde_json::to_vec(r)?;
                    line.push(b'\n');
                    f.write_all(&line)?;
                    log_bytes += line.len() as u64;
                }
            }
            if let Some(f) = log.as_mut() {
                f.flush()?;
            }
            if let Some(cp) = &self.checkpoint {
                let state = Checkpoint {
                    report: report.clone(),
                    log_bytes,
                };
                write_atomic(cp, &serde_json::to_vec_pretty(&state)?)?;
            }
        }
        if report.is_complete() {
            if let Some(f) = log.as_mut() {
                let footer = serde_json::json!({ "summary": &report });
                writeln!(f, "{}", serde_json::to_string(&footer)?)?;
            }
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy(i: u64) -> TaskRecord {
        let refuted = i % 7 != 3;
        TaskRecord {
            id: i,
            label: format!("t{i}"),
            status: if refuted {
                TaskStatus::Refuted
            } else {
                TaskStatus::Unresolved
            },
            witness_weight: refuted.then_some((i % 5) as usize + 10),
            iterations: i,
            attempts: 1,
            cases: 1,
            refuted_cases: refuted as u64,
            flagged_cases: 0,
            detail: None,
        }
    }

    #[test]
    fn resume_matches_fresh_run() {
        let dir = tempfile::tempdir().unwrap();
        let params = serde_json::json!({"toy": true});
        let fresh = SweepRunner {
            chunk: 4,
            log: Some(dir.path().join("fresh.jsonl")),
            ..Default::default()
        }
        .run("toy", params.clone(), 1, 30, toy)
        .unwrap();

        let cp = dir.path().join("cp.json");
        let log = dir.path().join("resumed.jsonl");
        let mut runner = SweepRunner {
            chunk: 4,
            checkpoint: Some(cp.clone()),
            log: Some(log.clone()),
            resume: true,
            stop_after: Some(13),
        };
        let partial = runner.run("toy", params.clone(), 1, 30, toy).unwrap();
        assert_eq!(partial.completed, 13);
        assert!(!partial.is_complete());
        runner.stop_after = None;
        let resumed = runner.run("toy", params.clone(), 1, 30, toy).unwrap();
        assert_eq!(resumed, fresh);
        assert_eq!(
            fs::read(dir.path().join("fresh.jsonl")).unwrap(),
            fs::read(&log).unwrap()
        );
        assert_eq!(fresh.refuted + fresh.unresolved, fresh.completed);

        let other = runner.run("toy", params, 2, 30, toy);
        assert!(matches!(other, Err(Error::Checkpoint(_))));
    }
}
