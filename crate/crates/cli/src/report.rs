//! Verification reports with machine-readable verdict lines.
//!
//! Stdout is byte-deterministic for fixed arguments and `--seed`: verdict
//! lines carry no timing. Wall-clock duration goes to stderr.

use std::time::Duration;

use serde::Serialize;

/// One failing trial with its serialized inputs, enough to reproduce.
#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub trial: u64,
    pub counterexample: serde_json::Value,
}

/// Outcome of one verified property.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub property: String,
    /// Fingerprint of the inputs (seed/triangulation plus parameters).
    pub fingerprint: String,
    pub trials: u64,
    pub skipped: u64,
    /// Failures in trial order; the first is the reported counterexample.
    pub failures: Vec<Failure>,
    pub duration: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn verdict_line(&self) -> String {
        format!(
            "VERDICT property={} fingerprint={} trials={} skipped={} failures={} status={}",
            self.property,
            self.fingerprint,
            self.trials,
            self.skipped,
            self.failures.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }

    /// Prints the verdict line and failure details to stdout and the
    /// timing to stderr.
    pub fn emit(&self) {
        println!("{}", self.verdict_line());
        for f in self.failures.iter().take(5) {
            println!(
                "COUNTEREXAMPLE trial={} input={}",
                f.trial,
                serde_json::to_string(&f.counterexample).expect("serializable")
            );
        }
        eprintln!(
            "# property {} took {} ms",
            self.property,
            self.duration.as_millis()
        );
    }
}

/// FNV-1a 64-bit hash, hex-encoded: a stable input fingerprint.
pub fn fingerprint(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("{:016x}", h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_tracks_failures() {
        let mut r = VerificationReport {
            property: "demo".into(),
            fingerprint: fingerprint(b"demo"),
            trials: 10,
            skipped: 0,
            failures: vec![],
            duration: Duration::from_millis(1),
        };
        assert_eq!(r.exit_code(), 0);
        assert!(r.verdict_line().ends_with("status=PASS"));
        r.failures.push(Failure {
            trial: 3,
            counterexample: serde_json::json!({"k": "1"}),
        });
        assert_eq!(r.exit_code(), 1);
        assert!(r.verdict_line().contains("failures=1"));
        assert!(r.verdict_line().ends_with("status=FAIL"));
    }

    #[test]
    fn fingerprint_is_stable() {
        assert_eq!(fingerprint(b""), "cbf29ce484222325");
        assert_eq!(fingerprint(b"abc"), fingerprint(b"abc"));
        assert_ne!(fingerprint(b"abc"), fingerprint(b"abd"));
    }
}
