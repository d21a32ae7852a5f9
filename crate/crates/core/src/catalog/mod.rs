//! A catalog of named groups with claimed properties. Verification never
//! trusts a claim: every property is recomputed from the generators and
//! compared field by field.

pub mod construct;

use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::analyzer::{analyze, Rank3Class, Rank3Report};
use crate::error::{Error, Result};
use crate::perm::text::{format_image_line, parse_generators, parse_permutation};
use crate::perm::PermGroup;

pub const CATALOG_SCHEMA_VERSION: u32 = 1;

/// Vendored generator files, regenerated by [`construct`] in the tests.
pub const HYPEROVAL_FILE: &str = include_str!("../../data/catalog/3.S6-deg18.grp");
pub const GOLAY_FILE: &str = include_str!("../../data/catalog/2.M12-deg24.grp");

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claims {
    pub order: Option<u128>,
    pub rank: Option<usize>,
    pub subdegrees: Option<Vec<usize>>,
    /// `(|B|, n)`.
    pub block_data: Option<(usize, usize)>,
    pub semiprimitive: Option<bool>,
    pub innately_transitive: Option<bool>,
    pub class: Option<Rank3Class>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mismatch {
    pub field: String,
    pub claimed: String,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Status {
    Unverified,
    Verified { at_unix: u64, tool_version: String },
    Mismatch { at_unix: u64, tool_version: String, mismatches: Vec<Mismatch> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    /// 1-indexed image lines (`img: …`) or cycle strings.
    pub generators: Vec<String>,
    pub claims: Claims,
    pub provenance: String,
    pub status: Status,
}

impl CatalogEntry {
    pub fn from_group_file(name: &str, text: &str, claims: Claims, provenance: &str) -> Result<Self> {
        let (degree, gens) = parse_generators(text)?;
        Ok(CatalogEntry {
            name: name.to_string(),
            degree,
            generators: gens.iter().map(format_image_line).collect(),
            claims,
            provenance: provenance.to_string(),
            status: Status::Unverified,
        })
    }

    pub fn group(&self) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| parse_permutation(g, self.degree))
            .collect::<Result<Vec<_>>>()?;
        if gens.is_empty() {
            return Err(Error::InvalidArgument(format!("entry `{}` has no generators", self.name)));
        }
        PermGroup::new(self.degree, gens)
    }

    pub fn is_verified(&self) -> bool {
        matches!(self.status, Status::Verified { .. })
    }
}

/// Field-by-field comparison of claims against a fresh report.
pub fn compare_claims(claims: &Claims, report: &Rank3Report) -> Vec<Mismatch> {
    let mut out = Vec::new();
    let mut check = |field: &str, claimed: Option<String>, computed: String| {
        if let Some(c) = claimed {
            if c != computed {
                out.push(Mismatch {
                    field: field.to_string(),
                    claimed: c,
                    computed,
                });
            }
        }
    };
    let show = |x: Option<bool>| x.map_or("unknown".to_string(), |b| b.to_string());
    let flags = report.flags;
    check("order", claims.order.map(|x| x.to_string()), report.order.to_string());
    check("rank", claims.rank.map(|x| x.to_string()), report.rank.to_string());
    check(
        "subdegrees",
        claims.subdegrees.as_ref().map(|x| format!("{x:?}")),
        format!("{:?}", report.subdegrees),
    );
    check(
        "block_data",
        claims.block_data.map(|x| format!("{x:?}")),
        report.block_data().map_or("none".into(), |x| format!("{x:?}")),
    );
    check(
        "semiprimitive",
        claims.semiprimitive.map(|x| x.to_string()),
        show(flags.map(|f| f.semiprimitive)),
    );
    check(
        "innately_transitive",
        claims.innately_transitive.map(|x| x.to_string()),
        show(flags.map(|f| f.innately_transitive)),
    );
    check("class", claims.class.map(|x| x.to_string()), report.class.to_string());
    out
}

#[derive(Debug, Clone)]
pub struct Verification {
    pub report: Rank3Report,
    pub mismatches: Vec<Mismatch>,
}

impl Verification {
    pub fn verified(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn now_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

/// Recomputes every claimed property and updates the entry's status.
/// A mismatch is a result, not an error; capacity limits are errors.
pub fn verify_entry(entry: &mut CatalogEntry, cap: u128) -> Result<Verification> {
    let group = entry.group()?;
    let report = analyze(&group, cap)?;
    if let Some(skip) = report.capacity_skips.first() {
        return Err(Error::capacity(format!("verification of `{}` ({skip})", entry.name), cap));
    }
    let mismatches = compare_claims(&entry.claims, &report);
    let tool_version = env!("CARGO_PKG_VERSION").to_string();
    entry.status = if mismatches.is_empty() {
        Status::Verified {
            at_unix: now_unix(),
            tool_version,
        }
    } else {
        Status::Mismatch {
            at_unix: now_unix(),
            tool_version,
            mismatches: mismatches.clone(),
        }
    };
    Ok(Verification { report, mismatches })
}

/// The whole catalog, stored as one JSON document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Catalog {
    pub schema_version: u32,
    pub entries: Vec<CatalogEntry>,
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog {
            schema_version: CATALOG_SCHEMA_VERSION,
            entries: Vec::new(),
        }
    }
}

impl Catalog {
    /// Loads a catalog; a missing file is an empty catalog.
    pub fn load(path: &Path) -> Result<Self> {
        match std::fs::read_to_string(path) {
            Ok(text) => {
                let cat: Catalog = serde_json::from_str(&text)?;
                if cat.schema_version != CATALOG_SCHEMA_VERSION {
                    return Err(Error::Json(format!(
                        "catalog schema {} (this build reads {CATALOG_SCHEMA_VERSION})",
                        cat.schema_version
                    )));
                }
                Ok(cat)
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Catalog::default()),
            Err(e) => Err(e.into()),
        }
    }

    /// Writes to a sibling temporary file, then renames over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)? + "\n";
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(format!(".tmp{}", std::process::id()));
        std::fs::write(&tmp, text)?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn get_mut(&mut self, name: &str) -> Option<&mut CatalogEntry> {
        self.entries.iter_mut().find(|e| e.name == name)
    }

    /// Inserts or replaces by name, keeping entries sorted by name.
    pub fn upsert(&mut self, entry: CatalogEntry) {
        match self.get_mut(&entry.name) {
            Some(e) => *e = entry,
            None => {
                self.entries.push(entry);
                self.entries.sort_by(|a, b| a.name.cmp(&b.name));
            }
        }
    }
}

/// The two exceptional groups with their expected properties.
pub fn builtin_entries() -> Result<Vec<CatalogEntry>> {
    let common = |order, subdegrees: Vec<usize>, block| Claims {
        order: Some(order),
        rank: Some(3),
        subdegrees: Some(subdegrees),
        block_data: Some(block),
        semiprimitive: Some(true),
        innately_transitive: Some(false),
        class: Some(Rank3Class::A),
    };
    Ok(vec![
        CatalogEntry::from_group_file(
            "3.S6-deg18",
            HYPEROVAL_FILE,
            common(2160, vec![1, 2, 15], (3, 6)),
            "stabilizer in GammaL_3(4) of the 18 vectors over a hyperoval of PG(2,4); data/catalog/3.S6-deg18.grp",
        )?,
        CatalogEntry::from_group_file(
            "2.M12-deg24",
            GOLAY_FILE,
            common(190_080, vec![1, 1, 22], (2, 12)),
            "monomial automorphisms of the extended ternary Golay code on the vectors +-e_i; data/catalog/2.M12-deg24.grp",
        )?,
    ])
}

pub fn builtin_entry(name: &str) -> Result<Option<CatalogEntry>> {
    Ok(builtin_entries()?.into_iter().find(|e| e.name == name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::text::parse_group_file;
    use crate::perm::DEFAULT_ENUMERATION_CAP as CAP;

    #[test]
    fn vendored_files_match_constructions() {
        let hyper = parse_group_file(HYPEROVAL_FILE).unwrap();
        assert!(hyper.same_group(&construct::hyperoval_triple_cover().unwrap()));
        let golay = parse_group_file(GOLAY_FILE).unwrap();
        assert!(golay.same_group(&construct::golay_double_cover().unwrap()));
    }

    #[test]
    fn hyperoval_entry_verifies() {
        let mut entry = builtin_entry("3.S6-deg18").unwrap().unwrap();
        let v = verify_entry(&mut entry, CAP).unwrap();
        assert!(v.verified(), "{:?}", v.mismatches);
        assert!(entry.is_verified());
        assert_eq!(v.report.imprimitivity.as_ref().unwrap().kernel_order, 3);
    }

    #[test]
    fn wrong_claim_is_listed() {
        let mut entry = builtin_entry("3.S6-deg18").unwrap().unwrap();
        entry.claims.order = Some(1080);
        entry.claims.rank = Some(4);
        let v = verify_entry(&mut entry, CAP).unwrap();
        let fields: Vec<&str> = v.mismatches.iter().map(|m| m.field.as_str()).collect();
        assert_eq!(fields, ["order", "rank"]);
        assert!(matches!(entry.status, Status::Mismatch { .. }));
    }

    #[test]
    fn catalog_round_trip() {
        let dir = std::env::temp_dir().join(format!("rank3kit-cat-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("catalog.json");
        let mut cat = Catalog::load(&path).unwrap();
        assert!(cat.entries.is_empty());
        for e in builtin_entries().unwrap() {
            cat.upsert(e);
        }
        cat.save(&path).unwrap();
        let back = Catalog::load(&path).unwrap();
        assert_eq!(back, cat);
        assert_eq!(back.entries[0].name, "2.M12-deg24");
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
