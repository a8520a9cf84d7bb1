use serde::{Deserialize, Serialize};

/// Outcome of an exhaustive theorem check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.violations.len() < 200 {
            self.violations.push(msg());
        }
    }

    pub fn fail(&mut self, msg: String) {
        self.checked += 1;
        self.violations.push(msg);
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        for v in other.violations {
            if self.violations.len() < 200 {
                self.violations.push(v);
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn finish(mut self) -> Self {
        self.violations.sort();
        self
    }
}

impl std::iter::Sum for Report {
    fn sum<I: Iterator<Item = Report>>(iter: I) -> Self {
        let mut r = Report::new();
        for x in iter {
            r.merge(x);
        }
        r
    }
}
