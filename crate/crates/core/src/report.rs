use serde::Serialize;

/// One named check with an optional counterexample certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Structured pass/fail record. Failures are content, not errors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub title: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> Self {
        VerificationReport { title: title.into(), passed: true, checks: Vec::new() }
    }

    /// Records a check; `witness` is `None` when it passed.
    pub fn record(&mut self, name: impl Into<String>, witness: Option<Vec<usize>>) {
        let passed = witness.is_none();
        self.passed &= passed;
        self.checks.push(Check { name: name.into(), passed, witness, note: None });
    }

    pub fn record_with_note(
        &mut self,
        name: impl Into<String>,
        witness: Option<Vec<usize>>,
        note: impl Into<String>,
    ) {
        self.record(name, witness);
        self.checks.last_mut().unwrap().note = Some(note.into());
    }

    pub fn record_bool(&mut self, name: impl Into<String>, passed: bool) {
        self.passed &= passed;
        self.checks.push(Check { name: name.into(), passed, witness: None, note: None });
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
