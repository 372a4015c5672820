//! JSON and Markdown renderings of a run.
//!
//! Reports carry no timestamps, so identical configurations give
//! byte-identical files unless `--timings` is set.

use std::fmt::Write as _;

use clap::ValueEnum;
use racah_core::oracle::{IndependenceReport, MutationReport};
use racah_core::relations::{Status, VerifyReport};
use serde::Serialize;

/// Share of mutations the oracle must catch.
const MUTATION_FLOOR: f64 = 0.95;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Serialize)]
pub struct RunConfig {
    pub command: String,
    pub model: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frame: Option<String>,
    /// Inclusive dimension range.
    pub n: (usize, usize),
    pub mode: String,
    pub samples: usize,
    pub seed: u64,
    pub points: usize,
    pub tower: Option<usize>,
    pub zero_momenta: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub test_functions: Option<usize>,
}

pub enum Outcome {
    Sweep { config: RunConfig, results: Vec<VerifyReport> },
    Oracle { config: RunConfig, results: Vec<VerifyReport>, mutations: Vec<MutationReport> },
    Independence { config: RunConfig, results: Vec<IndependenceReport> },
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    tool_version: &'static str,
    config: &'a RunConfig,
    results: &'a [T],
    #[serde(skip_serializing_if = "Option::is_none")]
    mutation_control: Option<&'a [MutationReport]>,
}

fn sweep_ok(results: &[VerifyReport]) -> bool {
    results.iter().all(|r| matches!(r.status, Status::Pass | Status::Skipped))
}

fn rank_ok(r: &IndependenceReport) -> bool {
    r.rank.conclusive && r.rank.observed == r.rank.expected
}

fn rank_note(r: &IndependenceReport) -> String {
    if !r.rank.conclusive {
        format!("inconclusive: maximum rank {} is below {}", r.rank.observed, r.rank.expected)
    } else if r.rank.observed != r.rank.expected {
        format!("rank {} exceeds the expected {}", r.rank.observed, r.rank.expected)
    } else {
        "ok".into()
    }
}

fn status_label(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skipped",
        Status::Error => "ERROR",
    }
}

impl Outcome {
    pub fn sweep(config: RunConfig, results: Vec<VerifyReport>) -> Outcome {
        Outcome::Sweep { config, results }
    }

    fn config(&self) -> &RunConfig {
        match self {
            Outcome::Sweep { config, .. } | Outcome::Oracle { config, .. } | Outcome::Independence { config, .. } => config,
        }
    }

    pub fn ok(&self) -> bool {
        match self {
            Outcome::Sweep { results, .. } => sweep_ok(results),
            Outcome::Oracle { results, mutations, .. } => sweep_ok(results) && mutations.iter().all(|m| m.rate >= MUTATION_FLOOR),
            Outcome::Independence { results, .. } => results.iter().all(rank_ok),
        }
    }

    /// One line for the terminal.
    pub fn summary(&self) -> String {
        let verdict = if self.ok() { "ok" } else { "FAILED" };
        let cmd = &self.config().command;
        match self {
            Outcome::Sweep { results, .. } | Outcome::Oracle { results, .. } => {
                let count = |s| results.iter().filter(|r| r.status == s).count();
                let instances: usize = results.iter().map(|r| r.instances).sum();
                format!(
                    "{cmd}: {verdict}: {} relations, {} pass, {} fail, {} error, {} skipped ({instances} instances)",
                    results.len(),
                    count(Status::Pass),
                    count(Status::Fail),
                    count(Status::Error),
                    count(Status::Skipped)
                )
            }
            Outcome::Independence { results, .. } => {
                let bad: Vec<String> =
                    results.iter().filter(|r| !rank_ok(r)).map(|r| format!("{} n={}: {}", r.model, r.n, rank_note(r))).collect();
                let mut line = format!("{cmd}: {verdict}: {} rank checks", results.len());
                if !bad.is_empty() {
                    let _ = write!(line, "; {}", bad.join("; "));
                }
                line
            }
        }
    }

    pub fn render(&self, format: Format) -> serde_json::Result<String> {
        match format {
            Format::Json => self.json(),
            Format::Md => Ok(self.markdown()),
        }
    }

    fn json(&self) -> serde_json::Result<String> {
        let version = env!("CARGO_PKG_VERSION");
        let mut text = match self {
            Outcome::Sweep { config, results } => {
                serde_json::to_string_pretty(&Document { tool_version: version, config, results, mutation_control: None })
            }
            Outcome::Oracle { config, results, mutations } => serde_json::to_string_pretty(&Document {
                tool_version: version,
                config,
                results,
                mutation_control: (!mutations.is_empty()).then_some(mutations.as_slice()),
            }),
            Outcome::Independence { config, results } => {
                serde_json::to_string_pretty(&Document { tool_version: version, config, results, mutation_control: None })
            }
        }?;
        text.push('\n');
        Ok(text)
    }

    fn markdown(&self) -> String {
        let c = self.config();
        let mut out = String::new();
        let _ = writeln!(out, "# racah {}\n", c.command);
        let frame = c.frame.as_deref().map(|f| format!(", frame `{f}`")).unwrap_or_default();
        let _ = writeln!(
            out,
            "model `{}`{frame}, n {}..={}, mode `{}`, samples {}, seed {}, points {}\n",
            c.model, c.n.0, c.n.1, c.mode, c.samples, c.seed, c.points
        );
        match self {
            Outcome::Sweep { results, .. } => sweep_table(&mut out, results),
            Outcome::Oracle { results, mutations, .. } => {
                sweep_table(&mut out, results);
                for m in mutations {
                    let _ = writeln!(out, "\nmutation control: caught {}/{} ({:.1}%)", m.caught, m.attempted, 100.0 * m.rate);
                }
            }
            Outcome::Independence { results, .. } => {
                out.push_str("| model | n | set | size | expected | observed | per point | verdict |\n");
                out.push_str("|---|---|---|---|---|---|---|---|\n");
                for r in results {
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {} | {} | {} | {:?} | {} |",
                        r.model,
                        r.n,
                        r.set,
                        r.size,
                        r.rank.expected,
                        r.rank.observed,
                        r.rank.per_point,
                        rank_note(r)
                    );
                }
            }
        }
        let _ = writeln!(out, "\n{}", self.summary());
        out
    }
}

fn sweep_table(out: &mut String, results: &[VerifyReport]) {
    out.push_str("| relation | n | status | passed | mode | note |\n");
    out.push_str("|---|---|---|---|---|---|\n");
    for r in results {
        let note = match (&r.skipped, r.failures.first()) {
            (Some(why), _) => why.clone(),
            (None, Some(f)) => format!("{:?}: {}", f.tuple, f.residual.chars().take(120).collect::<String>()),
            (None, None) => String::new(),
        };
        let mode = match r.mode {
            racah_core::relations::IndexMode::Exhaustive => "exhaustive",
            racah_core::relations::IndexMode::Sampled => "sampled",
        };
        let _ = writeln!(
            out,
            "| `{}` | {} | {} | {}/{} | {} | {} |",
            r.id,
            r.n,
            status_label(r.status),
            r.passed,
            r.instances,
            mode,
            note.replace('|', "\\|")
        );
    }
}
