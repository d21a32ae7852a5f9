//! The versioned JSON envelope around a [`Rank3Report`].

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analyzer::Rank3Report;
use crate::error::{Error, Result};
use crate::perm::text::format_group_file;
use crate::perm::PermGroup;

/// Bumped on any change to the report fields.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

pub const TOOL_NAME: &str = "rank3kit";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonReport {
    pub schema_version: u32,
    pub tool: String,
    pub tool_version: String,
    /// `sha256:` followed by the hex digest of the input text.
    pub input_digest: String,
    pub report: Rank3Report,
}

pub fn input_digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// Digest of the canonical group-file text of a group's generators, for
/// groups that were constructed rather than read.
pub fn group_digest(group: &PermGroup) -> String {
    input_digest(format_group_file(group.degree(), group.generators()).as_bytes())
}

impl JsonReport {
    pub fn new(report: Rank3Report, input_digest: String) -> Self {
        JsonReport {
            schema_version: REPORT_SCHEMA_VERSION,
            tool: TOOL_NAME.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest,
            report,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// Parses a report, rejecting unknown fields and other schema versions.
    pub fn from_json(text: &str) -> Result<Self> {
        let r: JsonReport = serde_json::from_str(text)?;
        if r.schema_version != REPORT_SCHEMA_VERSION {
            return Err(Error::Json(format!(
                "report schema {} (this build reads {REPORT_SCHEMA_VERSION})",
                r.schema_version
            )));
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analyzer::analyze;
    use crate::linear::examples::{build_affine_example, AffineExample};
    use crate::perm::DEFAULT_ENUMERATION_CAP as CAP;

    #[test]
    fn round_trip_and_unknown_fields() {
        let g = build_affine_example(AffineExample::G2).unwrap();
        let r = JsonReport::new(analyze(&g, CAP).unwrap(), group_digest(&g));
        let text = r.to_json().unwrap();
        assert_eq!(JsonReport::from_json(&text).unwrap(), r);
        let tampered = text.replacen("\"tool\"", "\"extra\": 1,\n  \"tool\"", 1);
        assert!(JsonReport::from_json(&tampered).is_err());
        let nested = text.replacen("\"rank\"", "\"bogus\": true,\n    \"rank\"", 1);
        assert!(JsonReport::from_json(&nested).is_err());
    }

    #[test]
    fn digest_is_stable() {
        assert_eq!(
            input_digest(b"degree 3\n(1,2,3)\n"),
            input_digest(b"degree 3\n(1,2,3)\n")
        );
        assert!(input_digest(b"").starts_with("sha256:e3b0c442"));
    }
}
