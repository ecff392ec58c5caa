//! Run directories: the recorded config plus deterministic result files.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use sdaut::casesearch::{SweepReport, SweepRunner};

use crate::args::{Command, ExecArgs};

pub const CONFIG_FILE: &str = "config.json";
pub const CHECKPOINT_FILE: &str = "checkpoint.json";
pub const REPLAY_DIR: &str = "replay";

/// Everything needed to rerun a command.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    #[serde(flatten)]
    pub command: Command,
}

pub struct RunDir {
    pub path: PathBuf,
}

impl RunDir {
    /// Creates the directory and writes `config.json` into it.
    pub fn create(path: PathBuf, config: &RunConfig) -> Result<Self> {
        fs::create_dir_all(&path).with_context(|| format!("creating {}", path.display()))?;
        let dir = RunDir { path };
        dir.write_json(CONFIG_FILE, config)?;
        Ok(dir)
    }

    pub fn file(&self, name: &str) -> PathBuf {
        self.path.join(name)
    }

    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write_text(name, &text)
    }

    pub fn write_text(&self, name: &str, text: &str) -> Result<()> {
        let path = self.file(name);
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
    }

    pub fn runner(&self, exec: &ExecArgs, log_name: &str) -> SweepRunner {
        SweepRunner {
            chunk: exec.chunk,
            checkpoint: Some(exec.checkpoint.clone().unwrap_or_else(|| self.file(CHECKPOINT_FILE))),
            log: Some(self.file(log_name)),
            resume: exec.resume,
            stop_after: exec.stop_after,
        }
    }
}

pub fn read_config(dir: &Path) -> Result<RunConfig> {
    let path = dir.join(CONFIG_FILE);
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Result files of a run: everything except the config, checkpoint and replay directory.
pub fn result_files(dir: &Path) -> Result<Vec<String>> {
    let mut names = Vec::new();
    for entry in fs::read_dir(dir)? {
        let entry = entry?;
        if !entry.file_type()?.is_file() {
            continue;
        }
        let name = entry.file_name().to_string_lossy().into_owned();
        if name != CONFIG_FILE && name != CHECKPOINT_FILE && !name.ends_with(".tmp") {
            names.push(name);
        }
    }
    names.sort();
    Ok(names)
}

pub fn print_report(r: &SweepReport) {
    println!("case {}  (seed {})", r.case, r.master_seed);
    println!("  tasks      {:>10} / {}", r.completed, r.total);
    println!("  refuted    {:>10}", r.refuted);
    println!("  unresolved {:>10}", r.unresolved);
    if r.cases != r.completed {
        println!("  cases      {:>10}  ({} refuted)", r.cases, r.refuted_cases);
    }
    if r.flagged_cases > 0 {
        println!("  flagged    {:>10}", r.flagged_cases);
    }
    let hist = r.weight_histogram();
    if !hist.is_empty() {
        let parts: Vec<String> = hist.iter().map(|(w, c)| format!("{w}:{c}")).collect();
        println!("  witness weights  {}", parts.join("  "));
    }
    if !r.unresolved_ids.is_empty() {
        let shown: Vec<String> = r.unresolved_ids.iter().take(10).map(u64::to_string).collect();
        let more = if r.unresolved_ids.len() > 10 { " ..." } else { "" };
        println!("  unresolved ids   {}{more}", shown.join(" "));
    }
}
