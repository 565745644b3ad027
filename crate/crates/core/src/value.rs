use std::fmt;

use serde::{Deserialize, Serialize};

/// A string number: always `0` or `∞`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StringValue {
    Zero,
    Infinite,
}

impl StringValue {
    pub fn from_zero(is_zero: bool) -> Self {
        if is_zero {
            StringValue::Zero
        } else {
            StringValue::Infinite
        }
    }

    pub fn is_zero(self) -> bool {
        self == StringValue::Zero
    }

    /// `0 ⊞ 0 = 0`, otherwise `∞`.
    pub fn plus(self, other: StringValue) -> StringValue {
        StringValue::from_zero(self.is_zero() && other.is_zero())
    }

    pub fn symbol(self) -> &'static str {
        match self {
            StringValue::Zero => "0",
            StringValue::Infinite => "∞",
        }
    }
}

impl fmt::Display for StringValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A string number that a rule set may leave undecided.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    Zero,
    Infinite,
    Unknown,
}

impl Verdict {
    pub fn known(self) -> Option<StringValue> {
        match self {
            Verdict::Zero => Some(StringValue::Zero),
            Verdict::Infinite => Some(StringValue::Infinite),
            Verdict::Unknown => None,
        }
    }

    pub fn is_known(self) -> bool {
        self != Verdict::Unknown
    }

    /// `Zero ⊞ Zero = Zero`, anything `⊞ Infinite = Infinite`, otherwise `Unknown`.
    pub fn plus(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Infinite, _) | (_, Verdict::Infinite) => Verdict::Infinite,
            (Verdict::Zero, Verdict::Zero) => Verdict::Zero,
            _ => Verdict::Unknown,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Verdict::Zero => "0",
            Verdict::Infinite => "∞",
            Verdict::Unknown => "?",
        }
    }

    /// Lower-case token used in JSON output.
    pub fn token(self) -> &'static str {
        match self {
            Verdict::Zero => "zero",
            Verdict::Infinite => "infinite",
            Verdict::Unknown => "unknown",
        }
    }
}

impl From<StringValue> for Verdict {
    fn from(v: StringValue) -> Self {
        match v {
            StringValue::Zero => Verdict::Zero,
            StringValue::Infinite => Verdict::Infinite,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}
