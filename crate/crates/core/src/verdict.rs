use std::fmt;

use serde::Serialize;

/// Outcome of a finite-horizon check.
///
/// `Yes` and `No` carry checkable evidence. `Unknown` records the horizon that was
/// exhausted; it is never a claim in either direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "evidence", rename_all = "snake_case")]
pub enum Verdict<Y = (), N = ()> {
    Yes(Y),
    No(N),
    Unknown(Undecided),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Undecided {
    pub horizon: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Yes => "yes",
            Status::No => "no",
            Status::Unknown => "unknown",
        })
    }
}

impl<Y, N> Verdict<Y, N> {
    pub fn unknown(horizon: usize, reason: impl Into<String>) -> Self {
        Verdict::Unknown(Undecided { horizon, reason: reason.into() })
    }

    pub fn status(&self) -> Status {
        match self {
            Verdict::Yes(_) => Status::Yes,
            Verdict::No(_) => Status::No,
            Verdict::Unknown(_) => Status::Unknown,
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }

    pub fn yes(self) -> Option<Y> {
        match self {
            Verdict::Yes(y) => Some(y),
            _ => None,
        }
    }

    pub fn no(self) -> Option<N> {
        match self {
            Verdict::No(n) => Some(n),
            _ => None,
        }
    }
}
