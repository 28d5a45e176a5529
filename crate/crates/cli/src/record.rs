use serde::{Deserialize, Serialize};
use serde_json::Value;

use hypercut::reduce::RuleStat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Heicut,
    HeicutLp,
    Trimmer,
    Bip,
    Exact,
    Oracle,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Heicut => "heicut",
            Algorithm::HeicutLp => "heicut-lp",
            Algorithm::Trimmer => "trimmer",
            Algorithm::Bip => "bip",
            Algorithm::Exact => "exact",
            Algorithm::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    TimeoutWithIncumbent,
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::TimeoutWithIncumbent => 0,
            Status::Failed => 1,
        }
    }
}

/// Settings a run was started with.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub use_lp: bool,
    pub threshold: usize,
    pub solver: String,
    pub lp_iterations: usize,
    pub time_limit_s: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub algorithm: Algorithm,
    pub value: Option<u64>,
    pub status: Status,
    pub reason: Option<String>,
    pub provenance: Option<String>,
    pub runtime_ms: f64,
    pub peak_memory_bytes: u64,
    pub seed: u64,
    pub vertices: usize,
    pub edges: usize,
    pub pins: usize,
    pub config: ConfigEcho,
    pub round_stats: Vec<RuleStat>,
}

/// Required top-level keys and the JSON types they may take.
const SCHEMA: &[(&str, &[&str])] = &[
    ("instance", &["string"]),
    ("algorithm", &["string"]),
    ("value", &["uint", "null"]),
    ("status", &["string"]),
    ("reason", &["string", "null"]),
    ("provenance", &["string", "null"]),
    ("runtime_ms", &["number"]),
    ("peak_memory_bytes", &["uint"]),
    ("seed", &["uint"]),
    ("vertices", &["uint"]),
    ("edges", &["uint"]),
    ("pins", &["uint"]),
    ("config", &["object"]),
    ("round_stats", &["array"]),
];

fn type_matches(v: &Value, ty: &str) -> bool {
    match ty {
        "string" => v.is_string(),
        "uint" => v.is_u64(),
        "number" => v.is_number(),
        "null" => v.is_null(),
        "object" => v.is_object(),
        "array" => v.is_array(),
        _ => false,
    }
}

/// Checks a parsed record against the record schema, including the
/// status/value consistency rules.
pub fn validate_record(v: &Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("record is not an object")?;
    for (key, types) in SCHEMA {
        let field = obj.get(*key).ok_or_else(|| format!("missing `{key}`"))?;
        if !types.iter().any(|t| type_matches(field, t)) {
            return Err(format!("`{key}` has the wrong type"));
        }
    }
    if let Some(extra) = obj.keys().find(|k| !SCHEMA.iter().any(|(s, _)| s == k)) {
        return Err(format!("unexpected key `{extra}`"));
    }
    let status = obj["status"].as_str().unwrap();
    match status {
        "failed" if !obj["value"].is_null() => return Err("failed record claims a value".into()),
        "ok" | "timeout-with-incumbent" if obj["value"].is_null() => {
            return Err(format!("{status} record has no value"))
        }
        "ok" | "timeout-with-incumbent" | "failed" => {}
        other => return Err(format!("unknown status `{other}`")),
    }
    serde_json::from_value::<RunRecord>(v.clone()).map_err(|e| e.to_string())?;
    Ok(())
}
