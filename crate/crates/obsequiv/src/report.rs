//! Report envelope: every machine-readable report embeds the tool version,
//! the full invocation, and the seed, so a run can be reproduced from its
//! output alone. Reports carry no timestamps; identical invocations write
//! byte-identical content.

use serde::Serialize;

/// The envelope wrapped around every report payload.
#[derive(Clone, Debug, Serialize)]
pub struct Report<P: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub invocation: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub payload: P,
}

impl<P: Serialize> Report<P> {
    /// Wraps a payload with the current process invocation.
    pub fn new(seed: Option<u64>, payload: P) -> Self {
        Self::with_invocation(std::env::args().collect(), seed, payload)
    }

    pub fn with_invocation(invocation: Vec<String>, seed: Option<u64>, payload: P) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            invocation,
            seed,
            payload,
        }
    }

    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize infallibly");
        s.push('\n');
        s
    }
}
