use serde::Serialize;

/// Outcome of a single property check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The check was not run to completion because an enumeration cap was hit.
    Unverified,
}

/// A named property verdict with an optional witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Pass, witness: Vec::new(), note: None }
    }

    pub fn fail(name: impl Into<String>, witness: Vec<String>) -> Self {
        Check { name: name.into(), status: Status::Fail, witness, note: None }
    }

    pub fn unverified(name: impl Into<String>, note: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Unverified, witness: Vec::new(), note: Some(note.into()) }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool) -> Self {
        if ok {
            Check::pass(name)
        } else {
            Check::fail(name, Vec::new())
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// Limits on exhaustive enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of subset evaluations in literal all-subsets scans.
    pub subset_scan: u64,
    /// Maximum size of enumerated families (opens, subspaces, maps, hom-sets).
    pub enumeration: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { subset_scan: 1 << 20, enumeration: 1 << 20 }
    }
}

impl Caps {
    pub fn uniform(cap: u64) -> Self {
        Caps { subset_scan: cap, enumeration: cap }
    }

    pub(crate) fn check(&self, what: &str, needed: u128) -> crate::Result<()> {
        if needed > self.enumeration as u128 {
            Err(crate::Error::CapExceeded { what: what.to_string(), needed, cap: self.enumeration })
        } else {
            Ok(())
        }
    }
}
