use serde::Serialize;

/// One violated rule, with the atoms, triple or nodes that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: &'static str,
    pub subject: Vec<String>,
    pub message: String,
}

/// Outcome of a structural check. `ok()` holds exactly when no violation
/// was recorded.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, rule: &'static str, subject: Vec<String>, message: impl Into<String>) {
        self.violations.push(Violation {
            rule,
            subject,
            message: message.into(),
        });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    pub fn first_with_rule(&self, rule: &str) -> Option<&Violation> {
        self.violations.iter().find(|v| v.rule == rule)
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}] ({}) {}", v.rule, v.subject.join(", "), v.message)?;
        }
        Ok(())
    }
}
