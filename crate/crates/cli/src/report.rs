use serde_json::{Map, Value};
use unialg::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// The property holds or the computation finished.
    Done,
    /// The property fails; the report carries a witness.
    Refuted,
    Usage,
    Budget,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Done => 0,
            Outcome::Refuted => 1,
            Outcome::Usage => 2,
            Outcome::Budget => 3,
        }
    }

    pub fn from_bool(holds: bool) -> Self {
        if holds {
            Outcome::Done
        } else {
            Outcome::Refuted
        }
    }

    pub fn from_error(e: &Error) -> Self {
        if e.is_budget() {
            Outcome::Budget
        } else if matches!(e, Error::VerificationFailed(_)) {
            Outcome::Refuted
        } else {
            Outcome::Usage
        }
    }

    fn name(self) -> &'static str {
        match self {
            Outcome::Done => "ok",
            Outcome::Refuted => "refuted",
            Outcome::Usage => "usage-error",
            Outcome::Budget => "budget-exhausted",
        }
    }
}

/// Text lines for people and a JSON object for programs.
pub struct Report {
    pub outcome: Outcome,
    lines: Vec<String>,
    fields: Map<String, Value>,
    error: bool,
}

impl Report {
    pub fn new(outcome: Outcome) -> Self {
        Report {
            outcome,
            lines: Vec::new(),
            fields: Map::new(),
            error: false,
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        let s = s.into();
        if s.starts_with("error:") {
            self.error = true;
        }
        self.lines.push(s);
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.fields.insert(key.to_string(), v.into());
    }

    pub fn print(&self, json: bool) {
        if json {
            let mut obj = Map::new();
            obj.insert("status".into(), self.outcome.name().into());
            obj.insert("exit_code".into(), self.outcome.code().into());
            for (k, v) in &self.fields {
                obj.insert(k.clone(), v.clone());
            }
            obj.insert("lines".into(), self.lines.clone().into());
            println!("{}", Value::Object(obj));
        } else if self.error {
            for l in &self.lines {
                eprintln!("{}", l);
            }
        } else {
            for l in &self.lines {
                println!("{}", l);
            }
        }
    }
}
