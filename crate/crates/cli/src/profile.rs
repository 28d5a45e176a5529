//! Performance profiles: for each algorithm, the fraction of instances on
//! which its metric is within a factor `τ` of the best algorithm's.

use std::collections::{BTreeMap, BTreeSet};
use std::io::BufRead;

use anyhow::{bail, Context};
use serde::Serialize;

use crate::record::{RunRecord, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Value,
    Runtime,
    Memory,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::Value, Metric::Runtime, Metric::Memory];

    fn of(self, r: &RunRecord) -> f64 {
        match self {
            Metric::Value => r.value.unwrap_or(0) as f64,
            Metric::Runtime => r.runtime_ms,
            Metric::Memory => r.peak_memory_bytes as f64,
        }
    }
}

pub const DEFAULT_TAUS: &[f64] = &[1.0, 1.01, 1.05, 1.1, 1.25, 1.5, 2.0, 4.0, 10.0, 100.0];

/// One CSV row; `tau` is `None` for the failure ("F") column, whose
/// fraction is the share of instances the algorithm failed on.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfilePoint {
    pub metric: Metric,
    pub tau: Option<f64>,
    pub algorithm: String,
    pub fraction: f64,
}

pub fn read_records(reader: impl BufRead) -> anyhow::Result<Vec<RunRecord>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).with_context(|| format!("record on line {}", i + 1))?);
    }
    Ok(out)
}

fn solved(r: &RunRecord) -> bool {
    r.status != Status::Failed
}

pub fn compute_profile(records: &[RunRecord], taus: &[f64]) -> anyhow::Result<Vec<ProfilePoint>> {
    let mut by_algo: BTreeMap<&str, BTreeMap<&str, &RunRecord>> = BTreeMap::new();
    for r in records {
        let runs = by_algo.entry(r.algorithm.name()).or_default();
        if runs.insert(&r.instance, r).is_some() {
            bail!("duplicate record for {} on {}", r.algorithm.name(), r.instance);
        }
    }
    let Some(first) = by_algo.values().next() else {
        bail!("no records");
    };
    let instances: BTreeSet<&str> = first.keys().copied().collect();
    for (algo, runs) in &by_algo {
        let set: BTreeSet<&str> = runs.keys().copied().collect();
        if set != instances {
            let diff: Vec<_> = set.symmetric_difference(&instances).collect();
            bail!("instance sets differ for {algo}: {diff:?}");
        }
    }
    let total = instances.len() as f64;

    let mut points = Vec::new();
    for metric in Metric::ALL {
        let best: BTreeMap<&str, Option<f64>> = instances
            .iter()
            .map(|&i| {
                let b = by_algo
                    .values()
                    .map(|runs| runs[i])
                    .filter(|r| solved(r))
                    .map(|r| metric.of(r))
                    .min_by(f64::total_cmp);
                (i, b)
            })
            .collect();
        for (algo, runs) in &by_algo {
            for &tau in taus {
                let within = instances
                    .iter()
                    .filter(|&&i| {
                        let r = runs[i];
                        let Some(b) = best[i] else { return false };
                        if !solved(r) {
                            return false;
                        }
                        let q = metric.of(r);
                        if b == 0.0 {
                            q == 0.0
                        } else {
                            q / b <= tau
                        }
                    })
                    .count();
                points.push(ProfilePoint {
                    metric,
                    tau: Some(tau),
                    algorithm: algo.to_string(),
                    fraction: within as f64 / total,
                });
            }
            let failed = runs.values().filter(|r| !solved(r)).count();
            points.push(ProfilePoint {
                metric,
                tau: None,
                algorithm: algo.to_string(),
                fraction: failed as f64 / total,
            });
        }
    }
    Ok(points)
}

pub fn write_csv(points: &[ProfilePoint], writer: impl std::io::Write) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["metric", "tau", "algorithm", "fraction"])?;
    for p in points {
        let metric = serde_json::to_value(p.metric)?;
        let tau = p.tau.map_or_else(|| "F".to_string(), |t| t.to_string());
        w.write_record([metric.as_str().unwrap(), &tau, &p.algorithm, &p.fraction.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
