//! Three-valued verdicts for theorem validators.

use std::fmt;

/// Validators distinguish "hypothesis unmet" from "verified": `Vacuous`
/// when the hypothesis fails, `Pass` when hypothesis and conclusion hold,
/// `Fail` when the hypothesis holds and the conclusion does not. A `Fail`
/// from a proved statement indicates a bug.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Vacuous,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Vacuous => "VACUOUS",
        }
    }

    pub fn from_rule(hypothesis: bool, conclusion: bool) -> Verdict {
        if !hypothesis {
            Verdict::Vacuous
        } else if conclusion {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
