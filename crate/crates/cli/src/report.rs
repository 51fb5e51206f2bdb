use std::time::Instant;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// A command's machine-readable output. Keys serialize in sorted order, and
/// everything nondeterministic lives under `timings_ms`.
pub struct Report {
    pub command: Value,
    pub input_digest: Option<String>,
    pub results: Value,
    pub timings_ms: Map<String, Value>,
    /// Human-readable rendering of `results`.
    pub text: String,
}

impl Report {
    pub fn new(command: Value, input: Option<&[u8]>) -> Self {
        Self {
            command,
            input_digest: input.map(digest),
            results: Value::Null,
            timings_ms: Map::new(),
            text: String::new(),
        }
    }

    pub fn time<T>(&mut self, key: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings_ms
            .insert(key.to_string(), json!(start.elapsed().as_secs_f64() * 1e3));
        out
    }

    pub fn to_json(&self) -> String {
        let v = json!({
            "command": self.command,
            "input_digest": self.input_digest,
            "results": self.results,
            "timings_ms": self.timings_ms,
            "version": env!("CARGO_PKG_VERSION"),
        });
        serde_json::to_string_pretty(&v).expect("report values are finite")
    }
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

/// 12 significant digits, trailing zeros dropped.
pub fn sig(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..=14).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{v:.11e}")
    }
}

pub fn sig_list(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|&x| sig(x)).collect();
    format!("[{}]", parts.join(", "))
}

/// 1-based node list rendered as a cycle, e.g. `1 -> 2 -> 1`.
pub fn cycle_text(nodes: &[usize]) -> String {
    let mut parts: Vec<String> = nodes.iter().map(|i| (i + 1).to_string()).collect();
    if let Some(first) = parts.first().cloned() {
        parts.push(first);
    }
    parts.join(" -> ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(4.898979485566356), "4.89897948557");
        assert_eq!(sig(1.0), "1");
        assert_eq!(sig(0.25), "0.25");
        assert_eq!(sig(195.0), "195");
        assert_eq!(sig(0.0), "0");
        assert_eq!(sig(1e-9), "1.00000000000e-9");
        assert_eq!(sig(0.259921049894873), "0.259921049895");
    }

    #[test]
    fn cycles_are_one_based() {
        assert_eq!(cycle_text(&[0, 1]), "1 -> 2 -> 1");
        assert_eq!(cycle_text(&[2]), "3 -> 3");
    }
}
