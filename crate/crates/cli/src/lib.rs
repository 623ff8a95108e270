//! Support code for the `semiop` command-line tool: matrix files, number
//! formatting and the exit-code contract.

pub mod matrix_file;

use std::fmt;

use semiop::{Complex, Error};

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    PropertyFailure = 1,
    Usage = 2,
    BadPositive = 3,
    NotMember = 4,
    Io = 5,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

/// An error carrying the exit code it should produce.
#[derive(Debug)]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            exit: Exit::Usage,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            exit: Exit::Io,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::NotHermitian { .. } | Error::NotPositive { .. } => Exit::BadPositive,
            Error::NotMember { .. } => Exit::NotMember,
            Error::NoConvergence { .. } => Exit::PropertyFailure,
            _ => Exit::Usage,
        };
        Self {
            exit,
            message: e.to_string(),
        }
    }
}

/// `x` to 12 significant digits, trailing zeros dropped (like C's `%.12g`).
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mantissa.to_string()))
    }
}

fn trim(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    t.to_string()
}

pub fn complex12(z: Complex) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", sig12(z.re), sign, sig12(z.im.abs()))
}

pub fn vector12(v: &[Complex]) -> String {
    let parts: Vec<String> = v.iter().map(|z| complex12(*z)).collect();
    format!("[{}]", parts.join(", "))
}
