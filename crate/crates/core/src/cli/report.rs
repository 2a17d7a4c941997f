use serde::Serialize;
use serde_json::Value;

/// Process exit status of a command.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    /// Tame, verified, or the computation succeeded.
    Affirmative,
    /// A sound negative answer: not tame, not an automorphism, not verified.
    Negative,
    InputError,
    Breach,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Affirmative => 0,
            Status::Negative => 1,
            Status::InputError => 2,
            Status::Breach => 3,
        }
    }
}

/// Machine-readable result of one command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub ring: String,
    pub inputs: Vec<String>,
    pub outcome: String,
    pub payload: Value,
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: &str, ring: &str, inputs: Vec<String>, status: Status, outcome: &str, payload: Value) -> Report {
        Report { command: command.into(), ring: ring.into(), inputs, outcome: outcome.into(), payload, exit_code: status.code() }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}
