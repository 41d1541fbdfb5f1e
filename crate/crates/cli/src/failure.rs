use std::fmt;

use sqrt_coulomb::Error;

/// Exit status paired with a diagnostic.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

pub const USAGE: i32 = 1;
pub const CONVERGENCE: i32 = 2;
pub const VERIFY: i32 = 3;

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: USAGE, message: message.into() }
    }

    pub fn convergence(message: impl Into<String>) -> Self {
        Self { code: CONVERGENCE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Argument(_) | Error::Domain(_) => USAGE,
            Error::Convergence(_) | Error::Numeric(_) | Error::Consistency(_) => CONVERGENCE,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::usage(format!("cannot write output: {e}"))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}
