use std::fmt;

use serde::Serialize;

/// One failed law together with the concrete tuple that breaks it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at ({})", self.law, self.witness.join(", "))
    }
}

/// Outcome of an exhaustive law check. `ok` holds exactly when no
/// violation was recorded.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        ValidationReport {
            ok: true,
            violations: Vec::new(),
        }
    }

    pub fn push<S: ToString>(&mut self, law: &str, witness: impl IntoIterator<Item = S>) {
        self.ok = false;
        self.violations.push(Violation {
            law: law.to_string(),
            witness: witness.into_iter().map(|s| s.to_string()).collect(),
        });
    }

    /// Folds another report in, prefixing its law names.
    pub fn absorb(&mut self, prefix: &str, other: ValidationReport) {
        for v in other.violations {
            self.ok = false;
            self.violations.push(Violation {
                law: format!("{prefix}{}", v.law),
                witness: v.witness,
            });
        }
    }

    pub fn has_law(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn into_result(self) -> crate::Result<()> {
        if self.ok {
            Ok(())
        } else {
            Err(crate::Error::Validation(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return write!(f, "ok");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "; {v}")?;
        }
        Ok(())
    }
}
