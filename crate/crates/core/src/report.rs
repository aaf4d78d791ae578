//! Named residual reports.

use std::fmt;

/// One named residual.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub name: String,
    pub value: f64,
}

/// A list of named max-abs residuals, one per checked identity.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct IdentityReport {
    pub entries: Vec<Residual>,
}

impl IdentityReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, value: f64) {
        self.entries.push(Residual {
            name: name.into(),
            value,
        });
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|r| r.name == name).map(|r| r.value)
    }

    /// Largest residual, or 0 for an empty report.
    pub fn max(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, r| m.max(r.value))
    }

    /// Worst entry by value.
    pub fn worst(&self) -> Option<&Residual> {
        self.entries
            .iter()
            .max_by(|a, b| a.value.total_cmp(&b.value))
    }

    pub fn all_below(&self, tol: f64) -> bool {
        self.entries.iter().all(|r| r.value < tol)
    }

    /// Entry-wise maximum with another report of the same shape.
    pub fn merge_max(&mut self, other: &IdentityReport) {
        for r in &other.entries {
            match self.entries.iter_mut().find(|e| e.name == r.name) {
                Some(e) => e.value = e.value.max(r.value),
                None => self.entries.push(r.clone()),
            }
        }
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries.iter().map(|r| r.name.len()).max().unwrap_or(0);
        for r in &self.entries {
            writeln!(f, "{:<width$}  {:.16e}", r.name, r.value, width = width)?;
        }
        Ok(())
    }
}
