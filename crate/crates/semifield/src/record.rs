//! Line-delimited JSON output records.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// One line of `--json` output: the subcommand, the arguments that produced
/// it, and the command-specific fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub argv: Vec<String>,
    #[serde(flatten)]
    pub body: Map<String, Value>,
    /// Wall-clock time, present only when `--timings` was given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl RunRecord {
    pub fn new(command: &str, argv: &[String], body: Value) -> Self {
        let body = match body {
            Value::Object(map) => map,
            other => Map::from_iter([("result".to_string(), other)]),
        };
        RunRecord {
            command: command.to_string(),
            argv: argv.to_vec(),
            body,
            elapsed_ms: None,
        }
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.body.get(key)
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn from_line(line: &str) -> serde_json::Result<Self> {
        serde_json::from_str(line)
    }

    /// Run the recorded arguments again and check that every record comes
    /// back with the same fields, timings aside.
    pub fn replays(records: &[RunRecord]) -> bool {
        let Some(first) = records.first() else {
            return true;
        };
        let mut argv = vec!["semifield".to_string()];
        argv.extend(first.argv.iter().cloned());
        let (mut out, mut err) = (Vec::new(), Vec::new());
        crate::cli::run(&argv, &mut out, &mut err);
        let again = parse_records(&String::from_utf8_lossy(&out));
        let strip = |rs: &[RunRecord]| -> Vec<RunRecord> {
            rs.iter()
                .cloned()
                .map(|mut r| {
                    r.elapsed_ms = None;
                    r.body.remove("elapsed_ms");
                    r
                })
                .collect()
        };
        matches!(again, Ok(a) if strip(&a) == strip(records))
    }
}

/// Parse `--json` output, one record per nonempty line.
pub fn parse_records(text: &str) -> serde_json::Result<Vec<RunRecord>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(RunRecord::from_line)
        .collect()
}
